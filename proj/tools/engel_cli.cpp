// Command-line front end: classification, frame extraction, normal flows,
// first integrals, conjugate points and minimality verdicts, plus batch
// sweeps. All reports are JSON (CSV for time series) and byte-reproducible.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "engel/abnormal.hpp"
#include "engel/classify.hpp"
#include "engel/flow.hpp"
#include "engel/io.hpp"

using nlohmann::json;
using namespace engel;

namespace {

constexpr const char* kVersion = "engel 1.0.0";

EngelConstants parse_t(const std::string& csv) {
    std::array<double, 6> vals{};
    std::stringstream ss(csv);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= 6) throw InvalidParamsError("--t takes exactly 6 comma-separated values");
        try {
            vals[i++] = std::stod(tok);
        } catch (const std::exception&) {
            throw InvalidParamsError("--t: cannot parse '" + tok + "' as a number");
        }
    }
    if (i != 6) throw InvalidParamsError("--t takes exactly 6 comma-separated values");
    return EngelConstants::from_array(vals);
}

std::map<std::string, double> parse_params(const std::string& s) {
    std::map<std::string, double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw InvalidParamsError("--params entries must look like T1=2.0");
        std::string key = tok.substr(0, eq);
        try {
            out[key] = std::stod(tok.substr(eq + 1));
        } catch (const std::exception&) {
            throw InvalidParamsError("--params: cannot parse value of " + key);
        }
    }
    return out;
}

VerticalState parse_h0(const std::string& csv) {
    std::array<double, 4> vals{};
    std::stringstream ss(csv);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= 4) throw InvalidParamsError("--h0 takes exactly 4 comma-separated values");
        try {
            vals[i++] = std::stod(tok);
        } catch (const std::exception&) {
            throw InvalidParamsError("--h0: cannot parse '" + tok + "' as a number");
        }
    }
    if (i != 4) throw InvalidParamsError("--h0 takes exactly 4 comma-separated values");
    return {vals[0], vals[1], vals[2], vals[3]};
}

// Resolves constants from either --t or --family/--params.
EngelConstants resolve_constants(const std::string& t_csv, const std::string& family,
                                 const std::string& params) {
    if (!t_csv.empty() && !family.empty())
        throw InvalidParamsError("--t and --family are mutually exclusive");
    if (!t_csv.empty()) return parse_t(t_csv);
    if (!family.empty()) return build_family(family_from_string(family), parse_params(params));
    throw InvalidParamsError("either --t or --family/--params is required");
}

CoefficientProfile load_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<double> ts, t2s, t6s;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ','))
            throw IoError("profile rows need three columns t,T2,T6");
        try {
            double tv = std::stod(a);
            double v2 = std::stod(b);
            double v6 = std::stod(c);
            ts.push_back(tv);
            t2s.push_back(v2);
            t6s.push_back(v6);
        } catch (const std::exception&) {
            if (ts.empty()) continue;  // header row
            throw IoError("profile: cannot parse row '" + line + "'");
        }
    }
    if (ts.size() < 2) throw IoError("profile needs at least two sample rows");
    return CoefficientProfile::from_samples(std::move(ts), std::move(t2s), std::move(t6s));
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json to_json(const EngelConstants& t) { return t.as_array(); }

json to_json(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }

json table_to_json(const BracketTable& t) {
    json c = json::array();
    for (int i = 0; i < 4; ++i) {
        json ci = json::array();
        for (int j = 0; j < 4; ++j) {
            json cij = json::array();
            for (int k = 0; k < 4; ++k) cij.push_back(t.c(i, j, k));
            ci.push_back(cij);
        }
        c.push_back(ci);
    }
    return c;
}

json verdict_to_json(const MinimalityVerdict& v) {
    json out;
    out["verdict"] = to_string(v.verdict);
    out["first_conjugate"] = v.first_conjugate ? json(*v.first_conjugate) : json(nullptr);
    out["basis"] = v.basis;
    return out;
}

json diagnosis_to_json(const AlgebraDiagnosis& d) {
    return {{"D", d.d_invariant}, {"kind", to_string(d.kind)}, {"center", to_json(d.center)}};
}

json conservation_to_json(const ConservationReport& rep) {
    json out;
    out["H_drift"] = rep.h_drift;
    out["G_drift"] = rep.g_drift ? json(*rep.g_drift) : json(nullptr);
    out["h4p_drift"] = rep.h4p_drift ? json(*rep.h4p_drift) : json(nullptr);
    out["momentum_drift"] = rep.momentum_drift;
    out["max_drift"] = rep.max_drift();
    return out;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw IoError("cannot write " + output_path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

json classify_report(const EngelConstants& t, bool force_diagnosis = false) {
    json out;
    out["t"] = to_json(t);
    out["residuals"] = jacobi_restrictions(t);
    auto fams = classify(t);
    json names = json::array();
    bool type3 = false;
    for (Family f : fams) {
        names.push_back(to_string(f));
        type3 |= (f == Family::III);
    }
    out["families"] = names;
    out["diagnosis"] =
        (type3 || force_diagnosis) ? diagnosis_to_json(diagnose_type3(t)) : json(nullptr);
    return out;
}

struct FlowArgs {
    std::string t_csv, family, params, h0_csv = "0.6,0.8,0.1,0.2";
    std::string method = "rk4", out_format = "json", output;
    double t_max = 10.0, step = 1e-3, rel_tol = 1e-10, abs_tol = 1e-12;
};

IntegratorConfig flow_config(const FlowArgs& a) {
    IntegratorConfig cfg;
    if (a.method == "rk4")
        cfg.method = Method::rk4;
    else if (a.method == "rk45")
        cfg.method = Method::rk45_adaptive;
    else
        throw InvalidParamsError("--method must be rk4 or rk45");
    cfg.step = a.step;
    cfg.t_max = a.t_max;
    cfg.rel_tol = a.rel_tol;
    cfg.abs_tol = a.abs_tol;
    return cfg;
}

std::string flow_csv(const EngelConstants& t, const Trajectory& traj) {
    bool type3 = std::abs(t.t1) <= tol_alg() && std::abs(t.t2) <= tol_alg() &&
                 std::abs(t.t5) <= tol_alg();
    auto momenta = right_momenta(traj);
    std::ostringstream out;
    out << "t,h1,h2,h3,h4,H,G,h4p,r1,r2,r3,r4\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const VerticalState& h = traj.states[i];
        out << fmt17(traj.times[i]) << ',' << fmt17(h.h1) << ',' << fmt17(h.h2) << ','
            << fmt17(h.h3) << ',' << fmt17(h.h4) << ',' << fmt17(hamiltonian(h)) << ',';
        if (type3)
            out << fmt17(integral_G(t, h)) << ',' << fmt17(center_momentum(t, h));
        else
            out << ',';
        for (int k = 0; k < 4; ++k) out << ',' << fmt17(momenta[i](k));
        out << '\n';
    }
    return out.str();
}

json flow_json(const EngelConstants& t, const Trajectory& traj) {
    bool type3 = std::abs(t.t1) <= tol_alg() && std::abs(t.t2) <= tol_alg() &&
                 std::abs(t.t5) <= tol_alg();
    auto momenta = right_momenta(traj);
    json out;
    out["t"] = to_json(t);
    out["times"] = traj.times;
    json hs = json::array(), rs = json::array(), hams = json::array();
    json gs = json::array(), h4ps = json::array();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const VerticalState& h = traj.states[i];
        hs.push_back({h.h1, h.h2, h.h3, h.h4});
        rs.push_back(to_json(momenta[i]));
        hams.push_back(hamiltonian(h));
        if (type3) {
            gs.push_back(integral_G(t, h));
            h4ps.push_back(center_momentum(t, h));
        }
    }
    out["h"] = hs;
    out["H"] = hams;
    out["G"] = type3 ? gs : json(nullptr);
    out["h4p"] = type3 ? h4ps : json(nullptr);
    out["right_momenta"] = rs;
    out["conservation"] = conservation_to_json(conservation_report(t, traj));
    return out;
}

// ---- sweep -----------------------------------------------------------------

struct SweepPoint {
    EngelConstants t;
    VerticalState h0;
};

std::vector<SweepPoint> sweep_grid(const json& cfg, unsigned seed) {
    std::vector<EngelConstants> ts;
    if (cfg.contains("family")) {
        Family fam = family_from_string(cfg.at("family").get<std::string>());
        const json& grid = cfg.at("params");
        std::vector<std::string> names = free_parameters(fam);
        std::vector<std::vector<double>> values;
        for (const auto& n : names) {
            if (!grid.contains(n))
                throw InvalidParamsError("sweep params missing " + n);
            values.push_back(grid.at(n).get<std::vector<double>>());
        }
        std::vector<std::size_t> idx(names.size(), 0);
        while (true) {
            std::map<std::string, double> p;
            for (std::size_t i = 0; i < names.size(); ++i) p[names[i]] = values[i][idx[i]];
            ts.push_back(build_family(fam, p));
            std::size_t k = 0;
            for (; k < idx.size(); ++k) {
                if (++idx[k] < values[k].size()) break;
                idx[k] = 0;
            }
            if (k == idx.size()) break;
        }
    } else if (cfg.contains("t_list")) {
        for (const auto& row : cfg.at("t_list")) {
            auto a = row.get<std::array<double, 6>>();
            ts.push_back(EngelConstants::from_array(a));
        }
    } else {
        return {};
    }

    std::vector<VerticalState> h0s;
    if (cfg.contains("h0"))
        for (const auto& row : cfg.at("h0")) {
            auto a = row.get<std::array<double, 4>>();
            h0s.push_back({a[0], a[1], a[2], a[3]});
        }
    if (cfg.contains("random_h0")) {
        const json& r = cfg.at("random_h0");
        int count = r.at("count").get<int>();
        double radius = r.value("radius", 1.0);
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> dist(-radius, radius);
        for (int i = 0; i < count; ++i)
            h0s.push_back({dist(rng), dist(rng), dist(rng), dist(rng)});
    }
    if (h0s.empty() && !ts.empty())
        throw InvalidParamsError("sweep config needs h0 or random_h0");

    std::vector<SweepPoint> out;
    for (const auto& t : ts)
        for (const auto& h : h0s) out.push_back({t, h});
    return out;
}

json run_sweep(const json& cfg, unsigned seed, int jobs) {
    auto points = sweep_grid(cfg, seed);
    IntegratorConfig icfg;
    icfg.t_max = cfg.value("t_max", 10.0);
    icfg.step = cfg.value("step", 1e-3);
    icfg.method = cfg.value("method", std::string("rk4")) == "rk45" ? Method::rk45_adaptive
                                                                    : Method::rk4;

    std::vector<json> rows(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            const SweepPoint& p = points[i];
            json row;
            row["t"] = to_json(p.t);
            row["h0"] = {p.h0.h1, p.h0.h2, p.h0.h3, p.h0.h4};
            try {
                Trajectory traj = integrate(p.t, p.h0, icfg);
                row["conservation"] = conservation_to_json(conservation_report(p.t, traj));
            } catch (const Error& e) {
                row["error"] = {{"code", e.code()}, {"message", e.what()}};
            }
            rows[i] = std::move(row);
        }
    };

    unsigned n_threads = jobs > 0 ? static_cast<unsigned>(jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<std::size_t>(n_threads, std::max<std::size_t>(points.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    json out;
    out["seed"] = seed;
    out["points"] = rows;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"left-invariant sub-Riemannian Engel structures"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string t_csv, family, params, output, input_path, profile_path;
    std::string h0_csv = "0.6,0.8,0.1,0.2";
    FlowArgs flow_args;
    double horizon = 10.0, tau = 1.0, shoot_step = 1e-3;
    bool strict_flag = false;
    int n_order = 0, m_order = 1;
    unsigned seed = 0;
    int jobs = 0;
    std::string config_path;

    bool diagnose_flag = false;
    auto* c_classify = app.add_subcommand("classify", "families and restriction residuals");
    c_classify->add_option("--t", t_csv, "constants t1,t2,t3,t4,t5,t6");
    c_classify->add_option("--family", family, "family tag I..V");
    c_classify->add_option("--params", params, "free parameters, e.g. T1=2,T2=1");
    c_classify->add_flag("--diagnose", diagnose_flag,
                         "force the type-III algebra diagnosis (errors otherwise)");
    c_classify->add_option("--output", output, "write the report to a file");

    auto* c_build = app.add_subcommand("build", "construct family constants and their algebra");
    c_build->add_option("--family", family, "family tag I..V")->required();
    c_build->add_option("--params", params, "free parameters, e.g. T3=1,T4=1,T6=1");
    c_build->add_option("--output", output, "write the report to a file");

    auto* c_frame = app.add_subcommand("frame", "canonical frame of an algebra document");
    c_frame->add_option("--input", input_path, "algebra JSON document");
    c_frame->add_option("--t", t_csv, "constants (uses the built-in presentation)");
    c_frame->add_option("--family", family, "family tag I..V");
    c_frame->add_option("--params", params, "free parameters");
    c_frame->add_option("--output", output, "write the report to a file");

    auto* c_flow = app.add_subcommand("flow", "integrate the normal vertical flow");
    c_flow->add_option("--t", flow_args.t_csv, "constants t1..t6");
    c_flow->add_option("--family", flow_args.family, "family tag I..V");
    c_flow->add_option("--params", flow_args.params, "free parameters");
    c_flow->add_option("--h0", flow_args.h0_csv, "initial covector h1,h2,h3,h4");
    c_flow->add_option("--t-max", flow_args.t_max, "integration horizon");
    c_flow->add_option("--step", flow_args.step, "step size");
    c_flow->add_option("--method", flow_args.method, "rk4 or rk45");
    c_flow->add_option("--rel-tol", flow_args.rel_tol, "adaptive relative tolerance");
    c_flow->add_option("--abs-tol", flow_args.abs_tol, "adaptive absolute tolerance");
    c_flow->add_option("--out", flow_args.out_format, "csv or json");
    c_flow->add_option("--output", flow_args.output, "write the report to a file");

    auto* c_integrals = app.add_subcommand("integrals", "type-I polynomial first integrals");
    c_integrals->add_option("--n", n_order, "lower order parameter")->required();
    c_integrals->add_option("--m", m_order, "upper order parameter")->required();
    c_integrals->add_option("--h0", h0_csv, "covector h1,h2,h3,h4");
    c_integrals->add_option("--t-max", flow_args.t_max, "also integrate and report drift");
    c_integrals->add_option("--step", flow_args.step, "step size");
    c_integrals->add_option("--output", output, "write the report to a file");

    auto* c_conj = app.add_subcommand("conjugate", "conjugate times of the abnormal geodesic");
    c_conj->add_option("--t", t_csv, "constants t1..t6");
    c_conj->add_option("--family", family, "family tag I..V");
    c_conj->add_option("--params", params, "free parameters");
    c_conj->add_option("--profile", profile_path, "CSV profile with columns t,T2,T6");
    c_conj->add_option("--horizon", horizon, "search horizon")->required();
    c_conj->add_option("--step", shoot_step, "shooting step size");
    c_conj->add_flag("--strict", strict_flag, "treat the profile curve as strictly abnormal");
    c_conj->add_option("--output", output, "write the report to a file");

    auto* c_verdict = app.add_subcommand("verdict", "minimality of the abnormal restriction");
    c_verdict->add_option("--t", t_csv, "constants t1..t6");
    c_verdict->add_option("--family", family, "family tag I..V");
    c_verdict->add_option("--params", params, "free parameters");
    c_verdict->add_option("--profile", profile_path, "CSV profile with columns t,T2,T6");
    c_verdict->add_option("--tau", tau, "endpoint of the restriction")->required();
    c_verdict->add_option("--step", shoot_step, "shooting step size");
    c_verdict->add_flag("--strict", strict_flag, "treat the profile curve as strictly abnormal");
    c_verdict->add_option("--output", output, "write the report to a file");

    auto* c_sweep = app.add_subcommand("sweep", "batch conservation report over a grid");
    c_sweep->add_option("--config", config_path, "sweep configuration JSON")->required();
    c_sweep->add_option("--seed", seed, "seed for randomized initial covectors");
    c_sweep->add_option("--jobs", jobs, "worker threads (default: hardware)");
    c_sweep->add_option("--output", output, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*c_classify) {
            emit(classify_report(resolve_constants(t_csv, family, params), diagnose_flag)
                     .dump(2),
                 output);
        } else if (*c_build) {
            EngelConstants t = build_family(family_from_string(family), parse_params(params));
            json out = classify_report(t);
            out["family"] = family;
            out["c"] = table_to_json(structure_constants_from_T(t));
            emit(out.dump(2), output);
        } else if (*c_frame) {
            BracketTable table;
            DistributionData dist;
            if (!input_path.empty()) {
                std::tie(table, dist) = load_algebra_file(input_path);
            } else {
                table = structure_constants_from_T(resolve_constants(t_csv, family, params));
                dist = DistributionData{};
            }
            GrowthVector g = growth_vector(table, dist);
            json out;
            out["growth"] = {g.d1, g.d2, g.d3};
            CanonicalFrame f = canonical_frame(table, dist);
            out["kernel"] = to_json(levi_kernel(table, dist));
            out["x1"] = to_json(f.x1);
            out["x2"] = to_json(f.x2);
            out["x3"] = to_json(f.x3);
            out["x4"] = to_json(f.x4);
            out["t"] = to_json(f.constants);
            emit(out.dump(2), output);
        } else if (*c_flow) {
            EngelConstants t =
                resolve_constants(flow_args.t_csv, flow_args.family, flow_args.params);
            Trajectory traj = integrate(t, parse_h0(flow_args.h0_csv), flow_config(flow_args));
            if (flow_args.out_format == "csv")
                emit(flow_csv(t, traj), flow_args.output);
            else if (flow_args.out_format == "json")
                emit(flow_json(t, traj).dump(2), flow_args.output);
            else
                throw InvalidParamsError("--out must be csv or json");
        } else if (*c_integrals) {
            EngelConstants t = type1_constants(n_order, m_order);
            VerticalState h0 = parse_h0(h0_csv);
            auto [f1, f2] = type1_integrals(n_order, m_order, h0);
            json out;
            out["n"] = n_order;
            out["m"] = m_order;
            out["t"] = to_json(t);
            out["h0"] = {h0.h1, h0.h2, h0.h3, h0.h4};
            out["F1"] = f1;
            out["F2"] = f2;
            if (c_integrals->count("--t-max")) {
                IntegratorConfig cfg;
                cfg.t_max = flow_args.t_max;
                cfg.step = flow_args.step;
                Trajectory traj = integrate(t, h0, cfg);
                double w1 = 0.0, w2 = 0.0;
                for (const auto& h : traj.states) {
                    auto [g1, g2] = type1_integrals(n_order, m_order, h);
                    w1 = std::max(w1, std::abs(g1 - f1) / (1.0 + std::abs(f1)));
                    w2 = std::max(w2, std::abs(g2 - f2) / (1.0 + std::abs(f2)));
                }
                out["drift"] = {{"F1", w1}, {"F2", w2}};
            }
            emit(out.dump(2), output);
        } else if (*c_conj) {
            json out;
            IntegratorConfig cfg;
            cfg.step = shoot_step;
            cfg.t_max = horizon;
            if (!profile_path.empty()) {
                CoefficientProfile p = load_profile_csv(profile_path);
                auto zeros = conjugate_shoot(p, horizon, cfg);
                out["delta"] = nullptr;
                double dmin = p.delta(p.t_min()), dmax = dmin;
                long n = std::max(2L, static_cast<long>(std::ceil(horizon / cfg.step)));
                for (long i = 0; i <= n; ++i) {
                    double d = p.delta(p.t_min() +
                                       (std::min(horizon, p.t_max()) - p.t_min()) *
                                           static_cast<double>(i) / static_cast<double>(n));
                    dmin = std::min(dmin, d);
                    dmax = std::max(dmax, d);
                }
                out["delta_min"] = dmin;
                out["delta_max"] = dmax;
                out["strict"] = strict_flag;
                out["conjugate_times"] = zeros;
                out["verdict"] =
                    verdict_to_json(minimality_verdict(p, horizon, strict_flag, cfg));
            } else {
                EngelConstants t = resolve_constants(t_csv, family, params);
                out["delta"] = delta_const(t);
                out["strict"] = is_strict(t);
                out["conjugate_times"] = conjugate_times_const(t, horizon);
                out["verdict"] = verdict_to_json(minimality_verdict(t, horizon));
            }
            emit(out.dump(2), output);
        } else if (*c_verdict) {
            json out;
            out["tau"] = tau;
            if (!profile_path.empty()) {
                CoefficientProfile p = load_profile_csv(profile_path);
                IntegratorConfig cfg;
                cfg.step = shoot_step;
                cfg.t_max = tau;
                out["strict"] = strict_flag;
                json v = verdict_to_json(minimality_verdict(p, tau, strict_flag, cfg));
                out.update(v);
            } else {
                EngelConstants t = resolve_constants(t_csv, family, params);
                out["delta"] = delta_const(t);
                out["strict"] = is_strict(t);
                out.update(verdict_to_json(minimality_verdict(t, tau)));
            }
            emit(out.dump(2), output);
        } else if (*c_sweep) {
            std::ifstream in(config_path);
            if (!in) throw IoError("cannot open " + config_path);
            json cfg;
            try {
                cfg = json::parse(in);
            } catch (const json::exception& e) {
                throw IoError(std::string("invalid sweep config: ") + e.what());
            }
            emit(run_sweep(cfg, seed, jobs).dump(2), output);
        }
    } catch (const JacobiViolatedError& e) {
        json err = {{"error",
                     {{"code", e.code()}, {"message", e.what()}, {"residuals", e.residuals()}}}};
        std::cout << err.dump(2) << '\n';
        return 2;
    } catch (const Error& e) {
        json err = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
        std::cout << err.dump(2) << '\n';
        return 2;
    } catch (const std::exception& e) {
        json err = {{"error", {{"code", "Internal"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << '\n';
        return 2;
    }
    return 0;
}
