#pragma once

#include <Eigen/Dense>

#include <array>

#include "engel/errors.hpp"

namespace engel {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

/// Default tolerance for all rank tests and residual checks. Reads the
/// ENGEL_TOL environment variable once (must parse to a positive double),
/// otherwise 1e-9.
double tol_alg();

/// The six basic invariants T1..T6 of a left-invariant Engel structure.
struct EngelConstants {
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double t4 = 0.0;
    double t5 = 0.0;
    double t6 = 0.0;

    std::array<double, 6> as_array() const { return {t1, t2, t3, t4, t5, t6}; }
    static EngelConstants from_array(const std::array<double, 6>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
};

/// Full structure-constant tensor c^k_ij of a 4-dimensional algebra,
/// antisymmetric in the lower indices by construction. Indices are 0-based in
/// code; the math convention i,j,k in {1..4} maps to {0..3}.
class BracketTable {
public:
    BracketTable() {
        for (auto& m : c_) m.setZero();
    }

    double c(int i, int j, int k) const { return c_[k](i, j); }

    /// Sets c^k_ij = value and c^k_ji = -value.
    void set(int i, int j, int k, double value) {
        c_[k](i, j) = value;
        c_[k](j, i) = -value;
    }

    /// [v, w]^k = sum_ij c^k_ij v^i w^j.
    Vec4 bracket(const Vec4& v, const Vec4& w) const {
        Vec4 out;
        for (int k = 0; k < 4; ++k) out(k) = v.dot(c_[k] * w);
        return out;
    }

    /// Matrix of ad_u: [ad_u]^k_j = sum_i u^i c^k_ij, i.e. [u, e_j]^k.
    Mat4 ad(const Vec4& u) const {
        Mat4 out;
        for (int k = 0; k < 4; ++k) out.row(k) = u.transpose() * c_[k];
        return out;
    }

    /// Max |c^k_ij + c^k_ji| over all entries; zero for well-formed tables.
    double antisymmetry_residual() const;

private:
    std::array<Mat4, 4> c_;  // c_[k](i,j) = c^k_ij
};

/// The standard nilpotent Engel algebra [e1,e2]=e3, [e1,e3]=e4.
BracketTable nilpotent_engel_table();

/// Rank-2 distribution with a positive-definite metric, plus the orientation
/// choices that remove the Z2 x Z2 frame ambiguity.
struct DistributionData {
    Vec4 d1 = Vec4::Unit(0);
    Vec4 d2 = Vec4::Unit(1);
    Mat2 metric = Mat2::Identity();  // metric on span(d1,d2) in the (d1,d2) basis
    int orient_m = 1;                // +-1, orientation of the ambient frame
    int orient_d = 1;                // +-1, orientation of the distribution
};

/// Canonical frame (x1..x4) expressed in the input basis, together with the
/// recovered invariants.
struct CanonicalFrame {
    Vec4 x1, x2, x3, x4;
    EngelConstants constants;
};

/// Dimensions (dim D, dim D^2, dim D^3); the structure is Engel iff (2,3,4).
struct GrowthVector {
    int d1 = 0;
    int d2 = 0;
    int d3 = 0;
    bool operator==(const GrowthVector&) const = default;
};

/// [v, w] in the given table.
inline Vec4 bracket(const BracketTable& table, const Vec4& v, const Vec4& w) {
    return table.bracket(v, w);
}

/// Max over basis triples of the infinity norm of the cyclic double-bracket
/// sum; zero exactly when the table is a genuine Lie algebra.
double jacobi_residual(const BracketTable& table);

GrowthVector growth_vector(const BracketTable& table, const DistributionData& dist,
                           double tol = tol_alg());

inline bool is_engel(const BracketTable& table, const DistributionData& dist,
                     double tol = tol_alg()) {
    return growth_vector(table, dist, tol) == GrowthVector{2, 3, 4};
}

/// Unit (w.r.t. the metric) vector in D spanning the kernel of the Levi form
/// on D^2. The sign of the returned direction is arbitrary.
///
/// Throws NotEngelError if the growth vector is not (2,3,4) and
/// KernelNotInDError if the numerical kernel leaves D (corrupt input).
Vec4 levi_kernel(const BracketTable& table, const DistributionData& dist,
                 double tol = tol_alg());

/// Extracts the canonical frame: x2 along the Levi kernel, x1 its metric
/// orthogonal complement in D, x3 = [x1,x2], x4 = [x1,x3], with signs fixed so
/// the orientations of (x1..x4) and (x1,x2) match orient_m and orient_d.
/// The constants are recovered from [x1,x4] and [x2,x3] in the frame basis.
CanonicalFrame canonical_frame(const BracketTable& table, const DistributionData& dist,
                               double tol = tol_alg());

/// Frame derivatives of the invariants entering the general structure
/// equations. All default to zero (the left-invariant case).
struct FrameDerivatives {
    double x1_t2 = 0.0, x1_t4 = 0.0, x1_t6 = 0.0;     // X1(T2), X1(T4), X1(T6)
    double x11_t2 = 0.0, x11_t4 = 0.0, x11_t6 = 0.0;  // X1^2(T2), X1^2(T4), X1^2(T6)
    double x2_t1 = 0.0, x2_t3 = 0.0, x2_t5 = 0.0;     // X2(T1), X2(T3), X2(T5)
    double x3_t1 = 0.0;                               // X3(T1)
};

struct DerivedConstants {
    double c1_14 = 0.0;  // C^1_14
    double c3_34 = 0.0;  // C^3_34
    double c2_34 = 0.0;  // C^2_34
    double c1_34 = 0.0;  // C^1_34
    double c4_34 = 0.0;  // C^4_34
    double c3_24 = 0.0;  // C^3_24
};

/// Evaluates the derived structure functions from the invariants and their
/// frame derivatives. With all derivatives zero this reproduces the
/// left-invariant coefficients A/2 = T1T4/2, B = T2T5-T3T4, C = T1T2T4/2-T3T6.
DerivedConstants derived_constants(const EngelConstants& t,
                                   const FrameDerivatives& d = {});

/// Builds the full left-invariant bracket table from the invariants.
/// Throws JacobiViolatedError (with the six residuals) if the restriction
/// system fails at the given tolerance.
BracketTable structure_constants_from_T(const EngelConstants& t, double tol = tol_alg());

}  // namespace engel
