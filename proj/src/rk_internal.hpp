#pragma once

#include <algorithm>
#include <cmath>

#include "engel/errors.hpp"
#include "engel/flow.hpp"

namespace engel::detail {

template <class Vec, class Rhs>
Vec rk4_step(const Rhs& f, double t, const Vec& y, double dt) {
    Vec k1 = f(t, y);
    Vec k2 = f(t + 0.5 * dt, Vec(y + (0.5 * dt) * k1));
    Vec k3 = f(t + 0.5 * dt, Vec(y + (0.5 * dt) * k2));
    Vec k4 = f(t + dt, Vec(y + dt * k3));
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Fixed-step rk4 from 0 to t_max; emit(t, y) is called for every grid point
/// including t = 0. Grid times are i*step (bit-reproducible), with one
/// trailing partial step when t_max is not a multiple of step.
template <class Vec, class Rhs, class Emit>
void rk4_drive(const Rhs& f, Vec y, double t_max, double step, const Emit& emit) {
    emit(0.0, y);
    const double tiny = 1e-12 * std::max(1.0, t_max);
    long n_full = static_cast<long>(std::floor(t_max / step + tiny));
    double t = 0.0;
    for (long i = 1; i <= n_full; ++i) {
        y = rk4_step(f, t, y, step);
        t = static_cast<double>(i) * step;
        emit(t, y);
    }
    double rest = t_max - t;
    if (rest > tiny) {
        y = rk4_step(f, t, y, rest);
        emit(t_max, y);
    }
}

/// Fehlberg 4(5) with standard step control; advances on the 5th-order
/// solution. Throws StepRejectedError when the controller underflows
/// min_step before reaching t_max.
template <class Vec, class Rhs, class Emit>
void rkf45_drive(const Rhs& f, Vec y, double t_max, const IntegratorConfig& cfg,
                 const Emit& emit) {
    emit(0.0, y);
    double t = 0.0;
    double dt = cfg.step;
    const double tiny = 1e-14 * std::max(1.0, t_max);

    while (t < t_max - tiny) {
        dt = std::min(dt, t_max - t);
        Vec k1 = f(t, y);
        Vec k2 = f(t + dt / 4.0, Vec(y + (dt / 4.0) * k1));
        Vec k3 = f(t + 3.0 * dt / 8.0, Vec(y + dt * (3.0 / 32.0 * k1 + 9.0 / 32.0 * k2)));
        Vec k4 = f(t + 12.0 * dt / 13.0,
                   Vec(y + dt * (1932.0 / 2197.0 * k1 - 7200.0 / 2197.0 * k2 +
                                 7296.0 / 2197.0 * k3)));
        Vec k5 = f(t + dt, Vec(y + dt * (439.0 / 216.0 * k1 - 8.0 * k2 +
                                         3680.0 / 513.0 * k3 - 845.0 / 4104.0 * k4)));
        Vec k6 = f(t + dt / 2.0,
                   Vec(y + dt * (-8.0 / 27.0 * k1 + 2.0 * k2 - 3544.0 / 2565.0 * k3 +
                                 1859.0 / 4104.0 * k4 - 11.0 / 40.0 * k5)));

        Vec y5 = y + dt * (16.0 / 135.0 * k1 + 6656.0 / 12825.0 * k3 +
                           28561.0 / 56430.0 * k4 - 9.0 / 50.0 * k5 + 2.0 / 55.0 * k6);
        Vec y4 = y + dt * (25.0 / 216.0 * k1 + 1408.0 / 2565.0 * k3 +
                           2197.0 / 4104.0 * k4 - 1.0 / 5.0 * k5);

        double err = (y5 - y4).template lpNorm<Eigen::Infinity>();
        double scale = cfg.abs_tol +
                       cfg.rel_tol * std::max(y.template lpNorm<Eigen::Infinity>(),
                                              y5.template lpNorm<Eigen::Infinity>());
        if (err <= scale) {
            t += dt;
            y = y5;
            emit(t, y);
        }
        double factor = (err > 0.0) ? 0.9 * std::pow(scale / err, 0.2) : 4.0;
        dt *= std::clamp(factor, 0.2, 4.0);
        if (dt < cfg.min_step)
            throw StepRejectedError("adaptive step control underflowed the minimum step");
    }
}

}  // namespace engel::detail
