#include "engel/abnormal.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

#include "rk_internal.hpp"

namespace engel {

CoefficientProfile CoefficientProfile::from_functions(Fn t2, Fn t6, double horizon,
                                                      Fn t2_dot) {
    if (!t2 || !t6) throw InvalidParamsError("profile requires T2 and T6 callables");
    if (!(horizon > 0.0)) throw InvalidParamsError("profile horizon must be positive");
    CoefficientProfile p;
    p.t2_fn_ = std::move(t2);
    p.t6_fn_ = std::move(t6);
    p.t2_dot_fn_ = std::move(t2_dot);
    p.t_min_ = 0.0;
    p.t_max_ = horizon;
    return p;
}

CoefficientProfile CoefficientProfile::from_samples(std::vector<double> times,
                                                    std::vector<double> t2,
                                                    std::vector<double> t6) {
    if (times.size() < 2 || times.size() != t2.size() || times.size() != t6.size())
        throw InvalidParamsError("sampled profile needs >= 2 rows of equal length");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(t2[i]) || !std::isfinite(t6[i]))
            throw InvalidParamsError("profile samples must be finite");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw InvalidParamsError("profile sample times must be strictly increasing");
    }

    CoefficientProfile p;
    p.sampled_ = true;
    p.grid_ = std::move(times);
    p.t2_samples_ = std::move(t2);
    p.t6_samples_ = std::move(t6);
    p.t_min_ = p.grid_.front();
    p.t_max_ = p.grid_.back();

    // Central differences for T2', one-sided (second order) at the endpoints.
    std::size_t n = p.grid_.size();
    p.t2_dot_samples_.resize(n);
    const auto& g = p.grid_;
    const auto& f = p.t2_samples_;
    if (n == 2) {
        double slope = (f[1] - f[0]) / (g[1] - g[0]);
        p.t2_dot_samples_[0] = p.t2_dot_samples_[1] = slope;
    } else {
        double h0 = g[1] - g[0], h1 = g[2] - g[1];
        p.t2_dot_samples_[0] = (-(2.0 * h0 + h1) / (h0 * (h0 + h1))) * f[0] +
                               ((h0 + h1) / (h0 * h1)) * f[1] -
                               (h0 / (h1 * (h0 + h1))) * f[2];
        double hm = g[n - 2] - g[n - 3], hn = g[n - 1] - g[n - 2];
        p.t2_dot_samples_[n - 1] = (hn / (hm * (hm + hn))) * f[n - 3] -
                                   ((hm + hn) / (hm * hn)) * f[n - 2] +
                                   ((2.0 * hn + hm) / (hn * (hm + hn))) * f[n - 1];
        for (std::size_t i = 1; i + 1 < n; ++i)
            p.t2_dot_samples_[i] = (f[i + 1] - f[i - 1]) / (g[i + 1] - g[i - 1]);
    }
    return p;
}

CoefficientProfile CoefficientProfile::constant(const EngelConstants& t, double horizon) {
    double t2 = t.t2, t6 = t.t6;
    return from_functions([t2](double) { return t2; }, [t6](double) { return t6; },
                          horizon, [](double) { return 0.0; });
}

void CoefficientProfile::check_domain(double t) const {
    double slack = 1e-12 * (1.0 + std::abs(t_max_));
    if (t < t_min_ - slack || t > t_max_ + slack)
        throw OutOfDomainError("time outside the profile domain");
}

double CoefficientProfile::interp(const std::vector<double>& values, double t) const {
    if (t <= grid_.front()) return values.front();
    if (t >= grid_.back()) return values.back();
    auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
    std::size_t lo = hi - 1;
    double w = (t - grid_[lo]) / (grid_[hi] - grid_[lo]);
    return (1.0 - w) * values[lo] + w * values[hi];
}

double CoefficientProfile::t2(double t) const {
    return sampled_ ? interp(t2_samples_, t) : t2_fn_(t);
}

double CoefficientProfile::t6(double t) const {
    return sampled_ ? interp(t6_samples_, t) : t6_fn_(t);
}

double CoefficientProfile::t2_dot(double t) const {
    if (sampled_) return interp(t2_dot_samples_, t);
    if (t2_dot_fn_) return t2_dot_fn_(t);
    // Symmetric difference quotient, shifted one-sided near the endpoints.
    double e = 6e-6 * (1.0 + std::abs(t));
    double lo = std::max(t - e, t_min_);
    double hi = std::min(t + e, t_max_);
    return (t2_fn_(hi) - t2_fn_(lo)) / (hi - lo);
}

double CoefficientProfile::delta(double t) const {
    check_domain(t);
    double v2 = t2(t);
    return t6(t) + 0.5 * t2_dot(t) - 0.25 * v2 * v2;
}

std::vector<double> conjugate_times_const(const EngelConstants& t, double horizon,
                                          double tol) {
    if (!(horizon > 0.0)) throw InvalidParamsError("horizon must be positive");
    double delta = delta_const(t);
    std::vector<double> out;
    if (delta <= tol) return out;
    double period = std::numbers::pi / std::sqrt(delta);
    for (int k = 1; k * period <= horizon; ++k) out.push_back(k * period);
    return out;
}

JacobiTrajectory jacobi_flow(const EngelConstants& t, const JacobiState& a0,
                             const IntegratorConfig& cfg) {
    cfg.validate();
    auto rhs = [&t](double, const Vec4& a) -> Vec4 {
        return {-t.t6 * a(2), -t.t4 * a(2), a(0) - t.t2 * a(2), -t.t2 * a(3)};
    };

    JacobiTrajectory traj;
    auto emit = [&](double time, const Vec4& a) {
        traj.times.push_back(time);
        traj.states.push_back({a(0), a(1), a(2), a(3)});
    };
    Vec4 y0(a0.a1, a0.a2, a0.a3, a0.a4);
    if (cfg.method == Method::rk4)
        detail::rk4_drive(rhs, y0, cfg.t_max, cfg.step, emit);
    else
        detail::rkf45_drive(rhs, y0, cfg.t_max, cfg, emit);
    return traj;
}

namespace {

Vec2 shoot_rhs(const CoefficientProfile& p, double t, const Vec2& z) {
    return {-p.t6(t) * z(1), z(0) - p.t2(t) * z(1)};
}

// a3 at time t, integrating from a stored grid state with substeps no larger
// than the base step.
double a3_from(const CoefficientProfile& p, double t0, Vec2 z, double t, double step) {
    double span = t - t0;
    if (span <= 0.0) return z(1);
    int nsub = std::max(1, static_cast<int>(std::ceil(span / step)));
    double dt = span / nsub;
    auto rhs = [&p](double tt, const Vec2& zz) { return shoot_rhs(p, tt, zz); };
    for (int i = 0; i < nsub; ++i) z = detail::rk4_step(rhs, t0 + i * dt, z, dt);
    return z(1);
}

}  // namespace

std::vector<double> conjugate_shoot(const CoefficientProfile& p, double horizon,
                                    const IntegratorConfig& cfg) {
    if (!(horizon > 0.0)) throw InvalidParamsError("horizon must be positive");
    double step = cfg.step;
    if (!(step > 0.0) || step >= horizon)
        throw InvalidParamsError("shooting step must satisfy 0 < step < horizon");

    std::vector<double> grid_t;
    std::vector<Vec2> grid_z;
    auto rhs = [&p](double tt, const Vec2& zz) { return shoot_rhs(p, tt, zz); };
    auto emit = [&](double t, const Vec2& z) {
        grid_t.push_back(t);
        grid_z.push_back(z);
    };
    detail::rk4_drive(rhs, Vec2(1.0, 0.0), horizon, step, emit);

    std::vector<double> zeros;
    int prev_sign = 0;  // a3(0) = 0 by the boundary condition; skip it
    for (std::size_t i = 1; i < grid_t.size(); ++i) {
        double a3 = grid_z[i](1);
        int sign = (a3 > 0.0) - (a3 < 0.0);
        if (sign == 0) {
            zeros.push_back(grid_t[i]);
            prev_sign = 0;
            continue;
        }
        if (prev_sign != 0 && sign != prev_sign) {
            double lo = grid_t[i - 1], hi = grid_t[i];
            double t0 = grid_t[i - 1];
            Vec2 z0 = grid_z[i - 1];
            double f_lo = z0(1);
            while (hi - lo > 1e-10) {
                double mid = 0.5 * (lo + hi);
                double f_mid = a3_from(p, t0, z0, mid, step);
                if ((f_mid > 0.0) == (f_lo > 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            double z = 0.5 * (lo + hi);
            zeros.push_back(z);
            double a1_here = std::abs(grid_z[i](0));
            if (a1_here < 1e-8)
                std::cerr << "warning: near-tangential conjugate point at t = " << z
                          << " (a1 ~ " << a1_here << ")\n";
        }
        prev_sign = sign;
    }
    return zeros;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::minimizer: return "minimizer";
        case Verdict::not_minimizer: return "not_minimizer";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

MinimalityVerdict minimality_verdict(const EngelConstants& t, double tau, double tol) {
    if (!(tau > 0.0)) throw InvalidParamsError("tau must be positive");
    double delta = delta_const(t);
    if (delta <= tol)
        return {Verdict::minimizer, std::nullopt, "nonpositive-delta"};

    double first = std::numbers::pi / std::sqrt(delta);
    if (!is_strict(t, tol))
        return {Verdict::inconclusive, first, "conjugate-point-without-strictness"};
    if (tau < first)
        return {Verdict::minimizer, first, "strict-below-first-conjugate-time"};
    return {Verdict::not_minimizer, first, "strict-conjugate-point-reached"};
}

MinimalityVerdict minimality_verdict(const CoefficientProfile& p, double tau, bool strict,
                                     const IntegratorConfig& cfg, double tol) {
    if (!(tau > 0.0)) throw InvalidParamsError("tau must be positive");
    double slack = 1e-12 * (1.0 + std::abs(p.t_max()));
    if (tau > p.t_max() + slack)
        throw OutOfDomainError("tau exceeds the profile horizon");

    // Range of Delta_gamma on [0, tau], sampled on the integration grid.
    double inf = std::numeric_limits<double>::infinity();
    double sup = -inf;
    long n = std::max(2L, static_cast<long>(std::ceil(tau / cfg.step)));
    for (long i = 0; i <= n; ++i) {
        double d = p.delta(tau * static_cast<double>(i) / static_cast<double>(n));
        inf = std::min(inf, d);
        sup = std::max(sup, d);
    }

    if (sup <= tol) return {Verdict::minimizer, std::nullopt, "nonpositive-delta"};

    if (strict && inf > tol && tau >= std::numbers::pi / std::sqrt(inf)) {
        // Sturm comparison bounds the first conjugate time by pi/sqrt(inf).
        auto zeros = conjugate_shoot(p, tau, cfg);
        double first = zeros.empty() ? std::numbers::pi / std::sqrt(inf) : zeros.front();
        return {Verdict::not_minimizer, first, "positive-delta-comparison"};
    }

    auto zeros = conjugate_shoot(p, tau, cfg);
    if (zeros.empty())
        return {Verdict::minimizer, std::nullopt, "shooting-no-conjugate-points"};
    if (strict)
        return {Verdict::not_minimizer, zeros.front(), "shooting-conjugate-point"};
    return {Verdict::inconclusive, zeros.front(), "conjugate-point-without-strictness"};
}

}  // namespace engel
