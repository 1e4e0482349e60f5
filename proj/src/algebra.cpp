#include "engel/algebra.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "engel/classify.hpp"

namespace engel {

double tol_alg() {
    static const double tol = [] {
        if (const char* env = std::getenv("ENGEL_TOL")) {
            char* end = nullptr;
            double v = std::strtod(env, &end);
            if (end != env && std::isfinite(v) && v > 0.0) return v;
        }
        return 1e-9;
    }();
    return tol;
}

double BracketTable::antisymmetry_residual() const {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k)
        worst = std::max(worst, (c_[k] + c_[k].transpose()).cwiseAbs().maxCoeff());
    return worst;
}

BracketTable nilpotent_engel_table() {
    BracketTable t;
    t.set(0, 1, 2, 1.0);  // [e1,e2] = e3
    t.set(0, 2, 3, 1.0);  // [e1,e3] = e4
    return t;
}

double jacobi_residual(const BracketTable& table) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            for (int k = j + 1; k < 4; ++k) {
                Vec4 ei = Vec4::Unit(i), ej = Vec4::Unit(j), ek = Vec4::Unit(k);
                Vec4 cyc = table.bracket(table.bracket(ei, ej), ek) +
                           table.bracket(table.bracket(ej, ek), ei) +
                           table.bracket(table.bracket(ek, ei), ej);
                worst = std::max(worst, cyc.cwiseAbs().maxCoeff());
            }
        }
    }
    return worst;
}

namespace {

int svd_rank(const Eigen::MatrixXd& m, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return rank;
}

}  // namespace

GrowthVector growth_vector(const BracketTable& table, const DistributionData& dist,
                           double tol) {
    const Vec4& d1 = dist.d1;
    const Vec4& d2 = dist.d2;
    Vec4 w = table.bracket(d1, d2);

    Eigen::Matrix<double, 4, 2> m1;
    m1 << d1, d2;
    Eigen::Matrix<double, 4, 3> m2;
    m2 << d1, d2, w;
    Eigen::Matrix<double, 4, 5> m3;
    m3 << d1, d2, w, table.bracket(d1, w), table.bracket(d2, w);

    return {svd_rank(m1, tol), svd_rank(m2, tol), svd_rank(m3, tol)};
}

namespace {

void require_engel(const BracketTable& table, const DistributionData& dist, double tol) {
    GrowthVector g = growth_vector(table, dist, tol);
    if (!(g == GrowthVector{2, 3, 4})) {
        std::ostringstream msg;
        msg << "growth vector (" << g.d1 << "," << g.d2 << "," << g.d3
            << ") is not (2,3,4)";
        throw NotEngelError(msg.str());
    }
}

// Coordinates of the Levi kernel of D^2 in the (d1, d2) basis.
Vec2 kernel_coords(const BracketTable& table, const DistributionData& dist, double tol) {
    const Vec4& d1 = dist.d1;
    const Vec4& d2 = dist.d2;
    Vec4 b3 = table.bracket(d1, d2);

    // Complete (d1, d2, b3) to a basis of R^4 by the orthogonal complement.
    Eigen::Matrix<double, 4, 3> span;
    span << d1, d2, b3;
    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(span, Eigen::ComputeFullU);
    Vec4 b4 = svd.matrixU().col(3);

    Mat4 basis;
    basis << d1, d2, b3, b4;
    Eigen::PartialPivLU<Mat4> lu(basis);

    // Levi form of D^2 valued in TM/D^2: the b4 coefficient of the brackets.
    std::array<Vec4, 3> b = {d1, d2, b3};
    Eigen::Matrix3d levi = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            double q = lu.solve(table.bracket(b[i], b[j]))(3);
            levi(i, j) = q;
            levi(j, i) = -q;
        }
    }

    Eigen::JacobiSVD<Eigen::Matrix3d> ksvd(levi, Eigen::ComputeFullV);
    Eigen::Vector3d kappa = ksvd.matrixV().col(2);
    Vec4 k = kappa(0) * d1 + kappa(1) * d2 + kappa(2) * b3;

    // Project onto D and verify the kernel did not leave the distribution.
    Eigen::Matrix<double, 4, 2> dmat;
    dmat << d1, d2;
    Vec2 coords = dmat.colPivHouseholderQr().solve(k);
    double residual = (k - dmat * coords).norm();
    if (residual > tol * k.norm())
        throw KernelNotInDError("Levi-form kernel leaves the distribution");
    return coords;
}

Vec2 metric_normalize(const Vec2& coords, const Mat2& metric) {
    double n2 = coords.dot(metric * coords);
    return coords / std::sqrt(n2);
}

}  // namespace

Vec4 levi_kernel(const BracketTable& table, const DistributionData& dist, double tol) {
    require_engel(table, dist, tol);
    Vec2 coords = metric_normalize(kernel_coords(table, dist, tol), dist.metric);
    return coords(0) * dist.d1 + coords(1) * dist.d2;
}

CanonicalFrame canonical_frame(const BracketTable& table, const DistributionData& dist,
                               double tol) {
    require_engel(table, dist, tol);

    Vec2 u = metric_normalize(kernel_coords(table, dist, tol), dist.metric);

    // Metric-orthogonal complement of the kernel inside D. The lower
    // triangular Cholesky factor turns the metric into Euclidean geometry:
    // coords v with v^T G u = 0 and v^T G v = 1.
    Eigen::LLT<Mat2> llt(dist.metric);
    if (llt.info() != Eigen::Success)
        throw InvalidParamsError("distribution metric is not positive definite");
    Mat2 lt = llt.matrixL().transpose();
    Vec2 ut = lt * u;  // unit by construction
    Vec2 vt(-ut(1), ut(0));
    Vec2 v = lt.triangularView<Eigen::Upper>().solve(vt);

    Vec4 x1 = v(0) * dist.d1 + v(1) * dist.d2;
    Vec4 x2 = u(0) * dist.d1 + u(1) * dist.d2;

    // Z2 x Z2 sign fixing: flipping x1 flips the D-orientation only, flipping
    // x2 flips both, so exactly one choice matches (orient_d, orient_m).
    auto frame_dets = [&](const Vec4& a, const Vec4& b, Vec4& x3, Vec4& x4, double& det_d,
                          double& det_m) {
        x3 = table.bracket(a, b);
        x4 = table.bracket(a, x3);
        Mat2 coords2;
        coords2 << v, u;  // (x1, x2) in the (d1, d2) basis before sign flips
        det_d = coords2.determinant();
        Mat4 full;
        full << a, b, x3, x4;
        det_m = full.determinant();
    };

    Vec4 x3, x4;
    double det_d = 0.0, det_m = 0.0;
    frame_dets(x1, x2, x3, x4, det_d, det_m);

    double s_d = static_cast<double>(dist.orient_d) * det_d;
    double s_m = static_cast<double>(dist.orient_m) * det_m;
    double s1 = 1.0, s2 = 1.0;
    if (s_d < 0.0 && s_m > 0.0) {
        s1 = -1.0;
    } else if (s_d < 0.0 && s_m < 0.0) {
        s2 = -1.0;
    } else if (s_d > 0.0 && s_m < 0.0) {
        s1 = -1.0;
        s2 = -1.0;
    }
    x1 *= s1;
    x2 *= s2;
    x3 = table.bracket(x1, x2);
    x4 = table.bracket(x1, x3);

    Mat4 check;
    check << x1, x2, x3, x4;
    double det2 = s1 * s2 * det_d;
    if (det2 * dist.orient_d <= 0.0 || check.determinant() * dist.orient_m <= 0.0)
        throw OrientationConflictError("no sign choice matches both orientations");

    Eigen::PartialPivLU<Mat4> lu(check);
    Vec4 c14 = lu.solve(table.bracket(x1, x4));
    Vec4 c23 = lu.solve(table.bracket(x2, x3));
    if (std::abs(c23(3)) > tol * (1.0 + c23.norm()))
        throw KernelNotInDError("[x2,x3] has an x4 component; kernel extraction failed");

    CanonicalFrame frame;
    frame.x1 = x1;
    frame.x2 = x2;
    frame.x3 = x3;
    frame.x4 = x4;
    frame.constants = {c14(3), c23(2), c14(2), c23(1), c14(1), c23(0)};
    return frame;
}

DerivedConstants derived_constants(const EngelConstants& t, const FrameDerivatives& d) {
    DerivedConstants out;
    out.c1_14 = 0.5 * (t.t1 * t.t4 + t.t1 * d.x1_t2 - 3.0 * d.x1_t4 + d.x2_t3 + d.x3_t1 -
                       d.x11_t2);
    out.c3_34 = -0.5 * (t.t1 * t.t4 + t.t1 * d.x1_t2 - d.x1_t4 + d.x2_t3 - d.x3_t1 -
                        d.x11_t2);
    out.c2_34 = t.t2 * t.t5 - t.t3 * t.t4 - t.t1 * d.x1_t4 - d.x2_t5 + d.x11_t4;
    out.c1_34 = t.t2 * out.c1_14 - t.t6 * t.t3 - t.t1 * d.x1_t6 + d.x11_t6;
    out.c4_34 = t.t4 + 2.0 * d.x1_t2 - d.x2_t1;
    out.c3_24 = t.t4 + d.x1_t2;
    return out;
}

BracketTable structure_constants_from_T(const EngelConstants& t, double tol) {
    auto residuals = jacobi_restrictions(t);
    for (double r : residuals) {
        if (std::abs(r) > tol)
            throw JacobiViolatedError(residuals,
                                      "constants violate the Jacobi restriction system");
    }

    double a = t.t1 * t.t4;
    double b = t.t2 * t.t5 - t.t3 * t.t4;
    double c = 0.5 * t.t1 * t.t2 * t.t4 - t.t3 * t.t6;

    BracketTable out;
    out.set(0, 1, 2, 1.0);  // [X1,X2] = X3
    out.set(0, 2, 3, 1.0);  // [X1,X3] = X4
    // [X1,X4] = A/2 X1 + T5 X2 + T3 X3 + T1 X4
    out.set(0, 3, 0, 0.5 * a);
    out.set(0, 3, 1, t.t5);
    out.set(0, 3, 2, t.t3);
    out.set(0, 3, 3, t.t1);
    // [X2,X3] = T6 X1 + T4 X2 + T2 X3
    out.set(1, 2, 0, t.t6);
    out.set(1, 2, 1, t.t4);
    out.set(1, 2, 2, t.t2);
    // [X2,X4] = T4 X3 + T2 X4
    out.set(1, 3, 2, t.t4);
    out.set(1, 3, 3, t.t2);
    // [X3,X4] = C X1 + B X2 - A/2 X3 + T4 X4
    out.set(2, 3, 0, c);
    out.set(2, 3, 1, b);
    out.set(2, 3, 2, -0.5 * a);
    out.set(2, 3, 3, t.t4);
    return out;
}

}  // namespace engel
