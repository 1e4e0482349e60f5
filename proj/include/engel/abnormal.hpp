#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "engel/flow.hpp"

namespace engel {

/// Coefficients (A1..A4) of the field pushed forward along an abnormal curve,
/// expressed in the canonical frame.
struct JacobiState {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double a4 = 0.0;
};

struct JacobiTrajectory {
    std::vector<double> times;
    std::vector<JacobiState> states;

    std::size_t size() const { return times.size(); }
};

/// Time profiles of T2 and T6 along an abnormal curve, either callables or
/// sampled grids with linear interpolation. The T2 derivative is taken from
/// the supplied callable when present, otherwise by finite differences
/// (central differences on the sample grid, one-sided at the endpoints).
class CoefficientProfile {
public:
    using Fn = std::function<double(double)>;

    static CoefficientProfile from_functions(Fn t2, Fn t6, double horizon,
                                             Fn t2_dot = nullptr);
    static CoefficientProfile from_samples(std::vector<double> times, std::vector<double> t2,
                                           std::vector<double> t6);
    static CoefficientProfile constant(const EngelConstants& t, double horizon);

    double t2(double t) const;
    double t6(double t) const;
    double t2_dot(double t) const;

    /// Delta_gamma(t) = T6(t) + T2'(t)/2 - T2(t)^2/4. Throws OutOfDomainError
    /// outside [t_min, t_max].
    double delta(double t) const;

    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }

private:
    CoefficientProfile() = default;
    void check_domain(double t) const;
    double interp(const std::vector<double>& values, double t) const;

    Fn t2_fn_, t6_fn_, t2_dot_fn_;
    std::vector<double> grid_, t2_samples_, t6_samples_, t2_dot_samples_;
    double t_min_ = 0.0;
    double t_max_ = 0.0;
    bool sampled_ = false;
};

/// Strict abnormality criterion: |T4| > tol.
inline bool is_strict(const EngelConstants& t, double tol = tol_alg()) {
    return std::abs(t.t4) > tol;
}

/// Delta = T6 - T2^2/4 (constant-coefficient case).
inline double delta_const(const EngelConstants& t) {
    return t.t6 - 0.25 * t.t2 * t.t2;
}

inline double delta_profile(const CoefficientProfile& p, double t) { return p.delta(t); }

/// All conjugate times pi*k/sqrt(Delta) <= horizon; empty when Delta <= tol.
std::vector<double> conjugate_times_const(const EngelConstants& t, double horizon,
                                          double tol = tol_alg());

/// Integrates a1' = -T6 a3, a2' = -T4 a3, a3' = a1 - T2 a3, a4' = -T2 a4.
JacobiTrajectory jacobi_flow(const EngelConstants& t, const JacobiState& a0,
                             const IntegratorConfig& cfg);

/// Shooting on the reduced system a1' = -T6(t) a3, a3' = a1 - T2(t) a3 from
/// (1, 0): returns the sign-change zeros of a3 on (0, horizon], each refined
/// by bisection to 1e-10. Tangential (double) zeros are not detected; a
/// near-tangential zero with a1 also small is reported on stderr.
std::vector<double> conjugate_shoot(const CoefficientProfile& p, double horizon,
                                    const IntegratorConfig& cfg);

enum class Verdict { minimizer, not_minimizer, inconclusive };

const char* to_string(Verdict v);

struct MinimalityVerdict {
    Verdict verdict = Verdict::inconclusive;
    std::optional<double> first_conjugate;
    std::string basis;  // which criterion decided
};

/// Constant-coefficient verdict for the restriction of the abnormal geodesic
/// to [0, tau]. Delta <= tol counts as nonpositive; tau exactly at the first
/// conjugate time is already non-minimizing.
MinimalityVerdict minimality_verdict(const EngelConstants& t, double tau,
                                     double tol = tol_alg());

/// Variable-coefficient verdict; strictness cannot be read off a (T2, T6)
/// profile and must be supplied by the caller.
MinimalityVerdict minimality_verdict(const CoefficientProfile& p, double tau, bool strict,
                                     const IntegratorConfig& cfg, double tol = tol_alg());

}  // namespace engel
