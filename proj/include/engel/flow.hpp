#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "engel/algebra.hpp"

namespace engel {

/// Covector coordinates h_i = <lambda, X_i> of an extremal lift.
struct VerticalState {
    double h1 = 0.0;
    double h2 = 0.0;
    double h3 = 0.0;
    double h4 = 0.0;

    Vec4 as_vec() const { return {h1, h2, h3, h4}; }
    static VerticalState from_vec(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }
};

enum class Method { rk4, rk45_adaptive };

struct IntegratorConfig {
    Method method = Method::rk4;
    double step = 1e-3;      // fixed step (rk4) / initial step (rk45)
    double rel_tol = 1e-10;  // adaptive only
    double abs_tol = 1e-12;  // adaptive only
    double t_max = 10.0;
    double min_step = 1e-12;  // adaptive underflow guard

    void validate() const;  // throws InvalidParamsError
};

/// Time-stamped vertical states together with the 4x4 adjoint-transport
/// matrix M(t), M(0) = I, integrated from M' = -M ad_u^T with
/// u = h1 e1 + h2 e2. The products -M(t) h(t) are the right-invariant
/// momenta (constant along the normal flow).
struct Trajectory {
    std::vector<double> times;
    std::vector<VerticalState> states;
    std::vector<Mat4> transport;

    std::size_t size() const { return times.size(); }
};

/// Right-hand side of the normal (vertical) Hamiltonian system for
/// left-invariant constants.
VerticalState normal_rhs(const EngelConstants& t, const VerticalState& h);

/// Integrates the normal system together with the adjoint transport.
/// Validates the constants (JacobiViolatedError) and the config
/// (InvalidParamsError); adaptive runs may throw StepRejectedError.
Trajectory integrate(const EngelConstants& t, const VerticalState& h0,
                     const IntegratorConfig& cfg);

inline double hamiltonian(const VerticalState& h) {
    return 0.5 * (h.h1 * h.h1 + h.h2 * h.h2);
}

/// h4' = h4 + T4 h1 - T3 h2, the momentum of the type-III center element.
/// Throws NotTypeIIIError unless T1 = T2 = T5 = 0.
double center_momentum(const EngelConstants& t, const VerticalState& h,
                       double tol = tol_alg());

/// G = h3^2/2 - h4' h2 + (T3+T6)/4 (h1^2-h2^2) + T4 h1 h2 (type III only).
double integral_G(const EngelConstants& t, const VerticalState& h,
                  double tol = tol_alg());

/// r(t) = -transport(t) h(t), one 4-vector per sample; each component is a
/// right-invariant momentum, constant up to integration error.
std::vector<Vec4> right_momenta(const Trajectory& traj);

/// The 5x8 matrix of differentials (dH, dG, dh4', dh1R, dh2R) at the group
/// identity in the coordinates (h1,h2,h3,h4',x1..x4), plus the determinant of
/// the minor formed by columns 1,3,4,5,6 (equal to h1 h3^3).
struct IndependenceWitness {
    Eigen::Matrix<double, 5, 8> differentials;
    double minor_det = 0.0;
};

IndependenceWitness independence_matrix(const EngelConstants& t, const VerticalState& h,
                                        double h4p, double tol = tol_alg());

/// Family-I constants admitting polynomial first integrals of orders n+1 and
/// m+1: T1 = n+m-1, T3 = n+m-nm, T5 = -nm (all other invariants zero).
EngelConstants type1_constants(int n, int m);

/// The polynomial first integrals (F1, F2) for the type-I structure with
/// parameters m > n >= 0. Throws InvalidParamsError on bad (n, m).
std::pair<double, double> type1_integrals(int n, int m, const VerticalState& h);

/// Abnormal right-hand side (u1 = 0, control u2) for left-invariant
/// constants; on the locus h1 = h2 = h3 = 0 it reduces to h4' = u2 T2 h4.
VerticalState abnormal_rhs(const EngelConstants& t, const VerticalState& h, double u2);

/// Normalized drifts max_t |F(t)-F(0)| / (1+|F(0)|) of the monitored first
/// integrals along a trajectory. G and h4' are reported only for type-III
/// constants.
struct ConservationReport {
    double h_drift = 0.0;
    std::optional<double> g_drift;
    std::optional<double> h4p_drift;
    std::array<double, 4> momentum_drift = {0.0, 0.0, 0.0, 0.0};

    double max_drift() const;
};

ConservationReport conservation_report(const EngelConstants& t, const Trajectory& traj,
                                       double tol = tol_alg());

}  // namespace engel
