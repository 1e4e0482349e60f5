// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion carries a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "engel/abnormal.hpp"
#include "engel/classify.hpp"
#include "engel/flow.hpp"

using namespace engel;

namespace {

constexpr double pi = std::numbers::pi;

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

double uniform(std::mt19937& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

EngelConstants sample_family(std::mt19937& rng, Family f) {
    std::map<std::string, double> params;
    for (const auto& name : free_parameters(f)) params[name] = uniform(rng, -2.0, 2.0);
    if (f == Family::V) {
        double t1 = uniform(rng, 0.5, 2.0);
        params["T1"] = (uniform(rng, 0.0, 1.0) < 0.5) ? -t1 : t1;
    }
    return build_family(f, params);
}

IntegratorConfig rk4_cfg(double t_max, double step) {
    IntegratorConfig cfg;
    cfg.step = step;
    cfg.t_max = t_max;
    return cfg;
}

// 1. Family builders on a 5-point grid per free parameter: residuals < 1e-12
//    and classify returns the family tag.
bool criterion_classification(std::string& detail) {
    const double grid[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
    const double grid_v1[5] = {-2.0, -1.0, 0.5, 1.0, 2.0};  // family V keeps T1 != 0
    double worst = 0.0;
    int points = 0;
    for (Family f : {Family::I, Family::II, Family::III, Family::IV, Family::V}) {
        auto names = free_parameters(f);
        std::vector<std::size_t> idx(names.size(), 0);
        while (true) {
            std::map<std::string, double> params;
            for (std::size_t i = 0; i < names.size(); ++i) {
                bool is_v_t1 = (f == Family::V && names[i] == "T1");
                params[names[i]] = is_v_t1 ? grid_v1[idx[i]] : grid[idx[i]];
            }
            EngelConstants t = build_family(f, params);
            ++points;
            for (double r : jacobi_restrictions(t)) worst = std::max(worst, std::abs(r));
            auto fams = classify(t);
            if (std::find(fams.begin(), fams.end(), f) == fams.end()) {
                detail = "classify missed family " + std::string(to_string(f));
                return false;
            }
            std::size_t k = 0;
            for (; k < idx.size(); ++k) {
                if (++idx[k] < 5) break;
                idx[k] = 0;
            }
            if (k == idx.size()) break;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d grid points, max residual %.2e", points, worst);
    detail = buf;
    return worst < 1e-12;
}

// 2. structure_constants_from_T then canonical_frame is the identity on the
//    invariants (200 random draws), also under a rotated presentation.
bool criterion_roundtrip(std::string& detail) {
    std::mt19937 rng(1234);
    const Family fams[5] = {Family::I, Family::II, Family::III, Family::IV, Family::V};
    double worst = 0.0;
    for (int it = 0; it < 200; ++it) {
        EngelConstants t = sample_family(rng, fams[it % 5]);
        BracketTable table = structure_constants_from_T(t);

        CanonicalFrame f = canonical_frame(table, DistributionData{});
        auto got = f.constants.as_array();
        auto want = t.as_array();
        for (int i = 0; i < 6; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));

        double theta = uniform(rng, 0.0, 2.0 * pi);
        DistributionData rotated;
        rotated.d1 = std::cos(theta) * Vec4::Unit(0) + std::sin(theta) * Vec4::Unit(1);
        rotated.d2 = -std::sin(theta) * Vec4::Unit(0) + std::cos(theta) * Vec4::Unit(1);
        auto got_rot = canonical_frame(table, rotated).constants.as_array();
        for (int i = 0; i < 6; ++i) worst = std::max(worst, std::abs(got_rot[i] - want[i]));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "200 draws, max recovery error %.2e", worst);
    detail = buf;
    return worst <= 1e-10;
}

// 3. Super-integrability: drifts of H, G, h4', and the right momenta below
//    1e-7 at rk4 step 1e-3 on [0,10]; halving onto that step is >= 12x better.
bool criterion_superintegrability(std::string& detail) {
    const double points[3][3] = {{1.0, 1.0, 1.0}, {-1.0, 0.0, 1.0}, {1.0, 1.0, -1.0}};
    VerticalState h0{0.6, 0.8, 0.1, 0.2};
    double worst_drift = 0.0;
    double worst_ratio = 1e300;
    for (const auto& p : points) {
        EngelConstants t =
            build_family(Family::III, {{"T3", p[0]}, {"T4", p[1]}, {"T6", p[2]}});
        ConservationReport fine =
            conservation_report(t, integrate(t, h0, rk4_cfg(10.0, 1e-3)));
        double drifts[7] = {fine.h_drift,          *fine.g_drift,
                            *fine.h4p_drift,       fine.momentum_drift[0],
                            fine.momentum_drift[1], fine.momentum_drift[2],
                            fine.momentum_drift[3]};
        for (double d : drifts) worst_drift = std::max(worst_drift, d);

        // Order check on a halving pair above the roundoff floor; at 1e-3 the
        // drift is already ~1e-12 and halving further only measures noise.
        ConservationReport rich_coarse =
            conservation_report(t, integrate(t, h0, rk4_cfg(10.0, 4e-3)));
        ConservationReport rich_fine =
            conservation_report(t, integrate(t, h0, rk4_cfg(10.0, 2e-3)));
        worst_ratio =
            std::min(worst_ratio, rich_coarse.max_drift() / rich_fine.max_drift());
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max drift %.2e, min halving ratio %.1f", worst_drift,
                  worst_ratio);
    detail = buf;
    return worst_drift < 1e-7 && worst_ratio >= 12.0;
}

// 4. The independence minor determinant equals h1 h3^3.
bool criterion_independence(std::string& detail) {
    std::mt19937 rng(99);
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
        EngelConstants t = sample_family(rng, Family::III);
        VerticalState h{uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                        uniform(rng, -2, 2)};
        double h4p = uniform(rng, -2, 2);
        double det = independence_matrix(t, h, h4p).minor_det;
        worst = std::max(worst, std::abs(det - h.h1 * h.h3 * h.h3 * h.h3));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "100 samples, max |det - h1 h3^3| = %.2e", worst);
    detail = buf;
    return worst <= 1e-12;
}

// 5. Shooting zeros match pi k / sqrt(Delta) for Delta in {0.25, 1, 4, 9}.
bool criterion_conjugate_times(std::string& detail) {
    double worst = 0.0;
    for (double delta : {0.25, 1.0, 4.0, 9.0}) {
        EngelConstants t;
        t.t6 = delta;
        CoefficientProfile p = CoefficientProfile::constant(t, 10.0);
        auto zeros = conjugate_shoot(p, 10.0, rk4_cfg(10.0, 1e-3));
        std::size_t expected = static_cast<std::size_t>(
            std::floor(10.0 * std::sqrt(delta) / pi));
        if (zeros.size() != expected) {
            detail = "wrong zero count for Delta = " + std::to_string(delta);
            return false;
        }
        for (std::size_t k = 0; k < zeros.size(); ++k)
            worst = std::max(worst,
                             std::abs(zeros[k] - pi * static_cast<double>(k + 1) /
                                                      std::sqrt(delta)));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max deviation from pi k / sqrt(Delta): %.2e", worst);
    detail = buf;
    return worst < 1e-6;
}

// 6. Strictness: |T4| > tol on type III exactly, never on family I; verdicts
//    only report not_minimizer under strictness.
bool criterion_strictness(std::string& detail) {
    std::mt19937 rng(55);
    for (int it = 0; it < 100; ++it) {
        EngelConstants t3 = sample_family(rng, Family::III);
        if (is_strict(t3) != (std::abs(t3.t4) > tol_alg())) {
            detail = "strictness disagrees with |T4| on type III";
            return false;
        }
        EngelConstants t1 = sample_family(rng, Family::I);
        if (is_strict(t1)) {
            detail = "family-I sample flagged strict";
            return false;
        }
        double tau = uniform(rng, 0.1, 10.0);
        if (minimality_verdict(t1, tau).verdict == Verdict::not_minimizer) {
            detail = "non-strict structure earned not_minimizer";
            return false;
        }
        MinimalityVerdict v = minimality_verdict(t3, tau);
        if (v.verdict == Verdict::not_minimizer && !is_strict(t3)) {
            detail = "non-strict type III earned not_minimizer";
            return false;
        }
    }
    detail = "100 samples per family";
    return true;
}

// 7. Type-I polynomial integrals drift below 1e-8 along integrated flows.
bool criterion_type1(std::string& detail) {
    const int orders[3][2] = {{0, 1}, {1, 2}, {2, 3}};
    double worst = 0.0;
    for (auto [n, m] : orders) {
        EngelConstants t = type1_constants(n, m);
        Trajectory traj = integrate(t, {0.6, 0.8, 0.1, 0.2}, rk4_cfg(10.0, 1e-3));
        auto [f1_0, f2_0] = type1_integrals(n, m, traj.states.front());
        for (const auto& h : traj.states) {
            auto [f1, f2] = type1_integrals(n, m, h);
            worst = std::max(worst, std::abs(f1 - f1_0) / (1.0 + std::abs(f1_0)));
            worst = std::max(worst, std::abs(f2 - f2_0) / (1.0 + std::abs(f2_0)));
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max normalized drift %.2e", worst);
    detail = buf;
    return worst < 1e-8;
}

// 8. The Sturm substitution y = a3 exp(int T2/2) satisfies y'' + Delta y = 0
//    for T2(t) = 2t, T6 = 0 on [0,1] (centered second differences).
bool criterion_sturm(std::string& detail) {
    CoefficientProfile p = CoefficientProfile::from_functions(
        [](double t) { return 2.0 * t; }, [](double) { return 0.0; }, 1.0,
        [](double) { return 2.0; });

    const double dt = 1e-3;
    const int n = 1000;
    std::vector<double> a3(n + 1);
    double y1 = 1.0, y3 = 0.0;
    a3[0] = y3;
    for (int i = 0; i < n; ++i) {
        double t = i * dt;
        auto f = [&p](double tt, double v1, double v3) {
            return std::pair<double, double>{-p.t6(tt) * v3, v1 - p.t2(tt) * v3};
        };
        auto [k1a, k1c] = f(t, y1, y3);
        auto [k2a, k2c] = f(t + dt / 2, y1 + dt / 2 * k1a, y3 + dt / 2 * k1c);
        auto [k3a, k3c] = f(t + dt / 2, y1 + dt / 2 * k2a, y3 + dt / 2 * k2c);
        auto [k4a, k4c] = f(t + dt, y1 + dt * k3a, y3 + dt * k3c);
        y1 += dt / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
        y3 += dt / 6 * (k1c + 2 * k2c + 2 * k3c + k4c);
        a3[i + 1] = y3;
    }

    std::vector<double> y(n + 1);
    for (int i = 0; i <= n; ++i) {
        double t = i * dt;
        y[i] = a3[i] * std::exp(0.5 * t * t);
    }
    double worst = 0.0;
    for (int i = 1; i < n; ++i) {
        double t = i * dt;
        double ydd = (y[i - 1] - 2.0 * y[i] + y[i + 1]) / (dt * dt);
        worst = std::max(worst, std::abs(ydd + p.delta(t) * y[i]));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max residual of y'' + Delta y: %.2e", worst);
    detail = buf;
    return worst < 1e-6;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"classification-residuals", 1.0, criterion_classification},
        {"canonical-frame-round-trip", 5.0, criterion_roundtrip},
        {"super-integrability-drifts", 10.0, criterion_superintegrability},
        {"independence-witness", 1.0, criterion_independence},
        {"conjugate-times", 2.0, criterion_conjugate_times},
        {"strictness", 1.0, criterion_strictness},
        {"type1-integrals", 5.0, criterion_type1},
        {"sturm-transformation", 1.0, criterion_sturm},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto& c = criteria[i];
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_budget = seconds < c.budget_seconds;
        bool pass = ok && in_budget;
        failures += !pass;
        std::printf("[%s] %zu %s: %s (%.2f s / budget %.0f s)\n", pass ? "PASS" : "FAIL",
                    i + 1, c.name.c_str(), detail.c_str(), seconds, c.budget_seconds);
    }
    return failures == 0 ? 0 : 1;
}
