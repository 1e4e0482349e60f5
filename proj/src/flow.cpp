#include "engel/flow.hpp"

#include <cmath>

#include "engel/classify.hpp"
#include "rk_internal.hpp"

namespace engel {

void IntegratorConfig::validate() const {
    if (!(step > 0.0)) throw InvalidParamsError("integrator step must be positive");
    if (!(t_max > 0.0)) throw InvalidParamsError("t_max must be positive");
    if (!(step < t_max)) throw InvalidParamsError("integrator step must be below t_max");
    if (method == Method::rk45_adaptive && (!(rel_tol > 0.0) || !(abs_tol > 0.0)))
        throw InvalidParamsError("adaptive tolerances must be positive");
}

VerticalState normal_rhs(const EngelConstants& t, const VerticalState& h) {
    double c1_14 = 0.5 * t.t1 * t.t4;
    VerticalState d;
    d.h1 = -h.h2 * h.h3;
    d.h2 = h.h1 * h.h3;
    d.h3 = h.h1 * h.h4 + h.h2 * (t.t6 * h.h1 + t.t4 * h.h2 + t.t2 * h.h3);
    d.h4 = h.h1 * (c1_14 * h.h1 + t.t5 * h.h2 + t.t3 * h.h3 + t.t1 * h.h4) +
           h.h2 * (t.t4 * h.h3 + t.t2 * h.h4);
    return d;
}

namespace {

using FlowVec = Eigen::Matrix<double, 20, 1>;  // (h, transport columns)

FlowVec pack(const Vec4& h, const Mat4& m) {
    FlowVec y;
    y.head<4>() = h;
    Eigen::Map<Mat4>(y.data() + 4) = m;
    return y;
}

bool is_type3(const EngelConstants& t, double tol) {
    return std::abs(t.t1) <= tol && std::abs(t.t2) <= tol && std::abs(t.t5) <= tol;
}

void require_type3(const EngelConstants& t, double tol) {
    if (!is_type3(t, tol)) throw NotTypeIIIError("type III requires T1 = T2 = T5 = 0");
}

}  // namespace

Trajectory integrate(const EngelConstants& t, const VerticalState& h0,
                     const IntegratorConfig& cfg) {
    cfg.validate();
    BracketTable table = structure_constants_from_T(t);

    auto rhs = [&](double, const FlowVec& y) -> FlowVec {
        Vec4 h = y.head<4>();
        Eigen::Map<const Mat4> m(y.data() + 4);
        Vec4 u(h(0), h(1), 0.0, 0.0);
        Vec4 hdot = normal_rhs(t, VerticalState::from_vec(h)).as_vec();
        Mat4 mdot = -m * table.ad(u).transpose();
        return pack(hdot, mdot);
    };

    Trajectory traj;
    auto emit = [&](double time, const FlowVec& y) {
        traj.times.push_back(time);
        traj.states.push_back(VerticalState::from_vec(y.head<4>()));
        traj.transport.emplace_back(Eigen::Map<const Mat4>(y.data() + 4));
    };

    FlowVec y0 = pack(h0.as_vec(), Mat4::Identity());
    if (cfg.method == Method::rk4)
        detail::rk4_drive(rhs, y0, cfg.t_max, cfg.step, emit);
    else
        detail::rkf45_drive(rhs, y0, cfg.t_max, cfg, emit);
    return traj;
}

double center_momentum(const EngelConstants& t, const VerticalState& h, double tol) {
    require_type3(t, tol);
    return h.h4 + t.t4 * h.h1 - t.t3 * h.h2;
}

double integral_G(const EngelConstants& t, const VerticalState& h, double tol) {
    double h4p = center_momentum(t, h, tol);
    return 0.5 * h.h3 * h.h3 - h4p * h.h2 +
           0.25 * (t.t3 + t.t6) * (h.h1 * h.h1 - h.h2 * h.h2) + t.t4 * h.h1 * h.h2;
}

std::vector<Vec4> right_momenta(const Trajectory& traj) {
    std::vector<Vec4> out;
    out.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
        out.push_back(-traj.transport[i] * traj.states[i].as_vec());
    return out;
}

IndependenceWitness independence_matrix(const EngelConstants& t, const VerticalState& h,
                                        double h4p, double tol) {
    require_type3(t, tol);
    double half_sum = 0.5 * (t.t3 + t.t6);

    Eigen::Matrix<double, 5, 8> m = Eigen::Matrix<double, 5, 8>::Zero();
    // dH
    m(0, 0) = h.h1;
    m(0, 1) = h.h2;
    // dG
    m(1, 0) = half_sum * h.h1 + t.t4 * h.h2;
    m(1, 1) = -h4p - half_sum * h.h2 + t.t4 * h.h1;
    m(1, 2) = h.h3;
    m(1, 3) = -h.h2;
    // dh4'
    m(2, 3) = 1.0;
    // dh1R
    m(3, 0) = -1.0;
    m(3, 5) = -h.h3;
    m(3, 6) = -h4p + t.t4 * h.h1 - t.t3 * h.h2;
    // dh2R
    m(4, 1) = -1.0;
    m(4, 4) = h.h3;
    m(4, 6) = -t.t6 * h.h1 - t.t4 * h.h2;

    Eigen::Matrix<double, 5, 5> minor;
    const int cols[5] = {0, 2, 3, 4, 5};
    for (int j = 0; j < 5; ++j) minor.col(j) = m.col(cols[j]);

    return {m, minor.determinant()};
}

EngelConstants type1_constants(int n, int m) {
    if (n < 0 || m <= n) throw InvalidParamsError("type-I parameters require m > n >= 0");
    EngelConstants t;
    t.t1 = static_cast<double>(n + m - 1);
    t.t3 = static_cast<double>(n + m - n * m);
    t.t5 = static_cast<double>(-n * m);
    return t;
}

std::pair<double, double> type1_integrals(int n, int m, const VerticalState& h) {
    if (n < 0 || m <= n) throw InvalidParamsError("type-I parameters require m > n >= 0");
    double dn = n, dm = m;
    double u = (h.h3 + h.h4 - (h.h2 + h.h3) * dn) / ((1.0 + dm) * (dm - dn));
    double v = (h.h4 + dm * dn * h.h2 - (dm + dn) * h.h3) / ((1.0 + dm) * (1.0 + dn));
    double w = (dm * (h.h2 + h.h3) - h.h3 - h.h4) / ((1.0 + dn) * (dm - dn));
    return {u * std::pow(v, dm), w * std::pow(v, dn)};
}

VerticalState abnormal_rhs(const EngelConstants& t, const VerticalState& h, double u2) {
    VerticalState d;
    d.h1 = -u2 * h.h3;
    d.h2 = 0.0;
    d.h3 = u2 * (t.t6 * h.h1 + t.t4 * h.h2 + t.t2 * h.h3);
    d.h4 = u2 * (t.t4 * h.h3 + t.t2 * h.h4);
    return d;
}

double ConservationReport::max_drift() const {
    double worst = h_drift;
    if (g_drift) worst = std::max(worst, *g_drift);
    if (h4p_drift) worst = std::max(worst, *h4p_drift);
    for (double d : momentum_drift) worst = std::max(worst, d);
    return worst;
}

ConservationReport conservation_report(const EngelConstants& t, const Trajectory& traj,
                                       double tol) {
    if (traj.size() == 0) throw InvalidParamsError("empty trajectory");
    bool type3 = is_type3(t, tol);

    auto drift = [](double value, double ref) {
        return std::abs(value - ref) / (1.0 + std::abs(ref));
    };

    ConservationReport rep;
    double h_ref = hamiltonian(traj.states.front());
    double g_ref = 0.0, h4p_ref = 0.0;
    if (type3) {
        g_ref = integral_G(t, traj.states.front(), tol);
        h4p_ref = center_momentum(t, traj.states.front(), tol);
        rep.g_drift = 0.0;
        rep.h4p_drift = 0.0;
    }
    auto momenta = right_momenta(traj);
    Vec4 r_ref = momenta.front();

    for (std::size_t i = 0; i < traj.size(); ++i) {
        const VerticalState& h = traj.states[i];
        rep.h_drift = std::max(rep.h_drift, drift(hamiltonian(h), h_ref));
        if (type3) {
            *rep.g_drift = std::max(*rep.g_drift, drift(integral_G(t, h, tol), g_ref));
            *rep.h4p_drift =
                std::max(*rep.h4p_drift, drift(center_momentum(t, h, tol), h4p_ref));
        }
        for (int k = 0; k < 4; ++k)
            rep.momentum_drift[k] =
                std::max(rep.momentum_drift[k], drift(momenta[i](k), r_ref(k)));
    }
    return rep;
}

}  // namespace engel
