#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "engel/abnormal.hpp"
#include "engel/classify.hpp"
#include "engel/flow.hpp"
#include "engel/io.hpp"

namespace py = pybind11;
using namespace engel;

namespace {

VerticalState to_state(const std::array<double, 4>& h) { return {h[0], h[1], h[2], h[3]}; }

std::array<double, 4> from_state(const VerticalState& h) { return {h.h1, h.h2, h.h3, h.h4}; }

IntegratorConfig make_config(double t_max, double step, const std::string& method,
                             double rel_tol, double abs_tol) {
    IntegratorConfig cfg;
    cfg.t_max = t_max;
    cfg.step = step;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    if (method == "rk4")
        cfg.method = Method::rk4;
    else if (method == "rk45")
        cfg.method = Method::rk45_adaptive;
    else
        throw InvalidParamsError("method must be 'rk4' or 'rk45'");
    return cfg;
}

py::dict verdict_dict(const MinimalityVerdict& v) {
    py::dict out;
    out["verdict"] = std::string(to_string(v.verdict));
    out["first_conjugate"] =
        v.first_conjugate ? py::cast(*v.first_conjugate) : py::none().cast<py::object>();
    out["basis"] = v.basis;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "left-invariant sub-Riemannian Engel structures";

    static py::exception<Error> engel_error(m, "EngelError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            std::string msg = "[" + e.code() + "] " + e.what();
#if defined(PYBIND11_VERSION_HEX) && PYBIND11_VERSION_HEX >= 0x020C0000
            py::set_error(engel_error, msg.c_str());
#else
            engel_error(msg.c_str());
#endif
        }
    });

    py::class_<EngelConstants>(m, "EngelConstants")
        .def(py::init<double, double, double, double, double, double>(), py::arg("t1") = 0.0,
             py::arg("t2") = 0.0, py::arg("t3") = 0.0, py::arg("t4") = 0.0,
             py::arg("t5") = 0.0, py::arg("t6") = 0.0)
        .def(py::init([](const std::array<double, 6>& a) {
            return EngelConstants::from_array(a);
        }))
        .def_readwrite("t1", &EngelConstants::t1)
        .def_readwrite("t2", &EngelConstants::t2)
        .def_readwrite("t3", &EngelConstants::t3)
        .def_readwrite("t4", &EngelConstants::t4)
        .def_readwrite("t5", &EngelConstants::t5)
        .def_readwrite("t6", &EngelConstants::t6)
        .def("as_tuple",
             [](const EngelConstants& t) {
                 auto a = t.as_array();
                 return py::make_tuple(a[0], a[1], a[2], a[3], a[4], a[5]);
             })
        .def("__repr__", [](const EngelConstants& t) {
            auto a = t.as_array();
            std::string s = "EngelConstants(";
            for (int i = 0; i < 6; ++i)
                s += (i ? ", " : "") + std::to_string(a[i]);
            return s + ")";
        });
    py::implicitly_convertible<py::sequence, EngelConstants>();

    py::class_<BracketTable>(m, "BracketTable")
        .def(py::init<>())
        .def("c", &BracketTable::c, py::arg("i"), py::arg("j"), py::arg("k"))
        .def("set", &BracketTable::set)
        .def("bracket", &BracketTable::bracket)
        .def("tensor", [](const BracketTable& t) {
            std::vector<std::vector<std::vector<double>>> out(
                4, std::vector<std::vector<double>>(4, std::vector<double>(4)));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k) out[i][j][k] = t.c(i, j, k);
            return out;
        });

    py::class_<DistributionData>(m, "DistributionData")
        .def(py::init<>())
        .def(py::init([](const Vec4& d1, const Vec4& d2, const Mat2& metric, int orient_m,
                         int orient_d) {
                 DistributionData dist;
                 dist.d1 = d1;
                 dist.d2 = d2;
                 dist.metric = metric;
                 dist.orient_m = orient_m;
                 dist.orient_d = orient_d;
                 return dist;
             }),
             py::arg("d1"), py::arg("d2"), py::arg("metric") = Mat2::Identity(),
             py::arg("orient_m") = 1, py::arg("orient_d") = 1)
        .def_readwrite("d1", &DistributionData::d1)
        .def_readwrite("d2", &DistributionData::d2)
        .def_readwrite("metric", &DistributionData::metric)
        .def_readwrite("orient_m", &DistributionData::orient_m)
        .def_readwrite("orient_d", &DistributionData::orient_d);

    py::class_<CanonicalFrame>(m, "CanonicalFrame")
        .def_readonly("x1", &CanonicalFrame::x1)
        .def_readonly("x2", &CanonicalFrame::x2)
        .def_readonly("x3", &CanonicalFrame::x3)
        .def_readonly("x4", &CanonicalFrame::x4)
        .def_readonly("constants", &CanonicalFrame::constants);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_property_readonly("states",
                               [](const Trajectory& t) {
                                   std::vector<std::array<double, 4>> out;
                                   out.reserve(t.size());
                                   for (const auto& h : t.states) out.push_back(from_state(h));
                                   return out;
                               })
        .def_readonly("transport", &Trajectory::transport)
        .def("__len__", &Trajectory::size);

    py::class_<CoefficientProfile>(m, "CoefficientProfile")
        .def_static("from_functions", &CoefficientProfile::from_functions, py::arg("t2"),
                    py::arg("t6"), py::arg("horizon"), py::arg("t2_dot") = nullptr)
        .def_static("from_samples", &CoefficientProfile::from_samples, py::arg("times"),
                    py::arg("t2"), py::arg("t6"))
        .def_static("constant", &CoefficientProfile::constant, py::arg("t"),
                    py::arg("horizon"))
        .def("t2", &CoefficientProfile::t2)
        .def("t6", &CoefficientProfile::t6)
        .def("t2_dot", &CoefficientProfile::t2_dot)
        .def("delta", &CoefficientProfile::delta)
        .def_property_readonly("t_min", &CoefficientProfile::t_min)
        .def_property_readonly("t_max", &CoefficientProfile::t_max);

    // algebra
    m.def("tol_alg", &tol_alg);
    m.def("nilpotent_engel_table", &nilpotent_engel_table);
    m.def("bracket", &bracket, py::arg("table"), py::arg("v"), py::arg("w"));
    m.def("jacobi_residual", &jacobi_residual);
    m.def(
        "growth_vector",
        [](const BracketTable& t, const DistributionData& d) {
            GrowthVector g = growth_vector(t, d);
            return py::make_tuple(g.d1, g.d2, g.d3);
        },
        py::arg("table"), py::arg("dist") = DistributionData{});
    m.def(
        "levi_kernel",
        [](const BracketTable& t, const DistributionData& d) { return levi_kernel(t, d); },
        py::arg("table"), py::arg("dist") = DistributionData{});
    m.def(
        "canonical_frame",
        [](const BracketTable& t, const DistributionData& d) {
            return canonical_frame(t, d);
        },
        py::arg("table"), py::arg("dist") = DistributionData{});
    m.def(
        "structure_constants_from_t",
        [](const EngelConstants& t) { return structure_constants_from_T(t); }, py::arg("t"));
    m.def(
        "derived_constants",
        [](const EngelConstants& t) {
            DerivedConstants d = derived_constants(t);
            py::dict out;
            out["c1_14"] = d.c1_14;
            out["c3_34"] = d.c3_34;
            out["c2_34"] = d.c2_34;
            out["c1_34"] = d.c1_34;
            out["c4_34"] = d.c4_34;
            out["c3_24"] = d.c3_24;
            return out;
        },
        py::arg("t"));
    m.def("load_algebra_file", &load_algebra_file);

    // classification
    m.def("jacobi_restrictions", &jacobi_restrictions);
    m.def(
        "classify",
        [](const EngelConstants& t) {
            std::vector<std::string> out;
            for (Family f : classify(t)) out.emplace_back(to_string(f));
            return out;
        },
        py::arg("t"));
    m.def(
        "build_family",
        [](const std::string& tag, const std::map<std::string, double>& params) {
            return build_family(family_from_string(tag), params);
        },
        py::arg("family"), py::arg("params"));
    m.def("free_parameters",
          [](const std::string& tag) { return free_parameters(family_from_string(tag)); });
    m.def(
        "diagnose_type3",
        [](const EngelConstants& t) {
            AlgebraDiagnosis d = diagnose_type3(t);
            py::dict out;
            out["D"] = d.d_invariant;
            out["kind"] = std::string(to_string(d.kind));
            out["center"] = d.center;
            return out;
        },
        py::arg("t"));

    // normal flow
    m.def(
        "normal_rhs",
        [](const EngelConstants& t, const std::array<double, 4>& h) {
            return from_state(normal_rhs(t, to_state(h)));
        },
        py::arg("t"), py::arg("h"));
    m.def(
        "hamiltonian",
        [](const std::array<double, 4>& h) { return hamiltonian(to_state(h)); },
        py::arg("h"));
    m.def(
        "center_momentum",
        [](const EngelConstants& t, const std::array<double, 4>& h) {
            return center_momentum(t, to_state(h));
        },
        py::arg("t"), py::arg("h"));
    m.def(
        "integral_g",
        [](const EngelConstants& t, const std::array<double, 4>& h) {
            return integral_G(t, to_state(h));
        },
        py::arg("t"), py::arg("h"));
    m.def(
        "integrate",
        [](const EngelConstants& t, const std::array<double, 4>& h0, double t_max,
           double step, const std::string& method, double rel_tol, double abs_tol) {
            return integrate(t, to_state(h0), make_config(t_max, step, method, rel_tol, abs_tol));
        },
        py::arg("t"), py::arg("h0"), py::arg("t_max") = 10.0, py::arg("step") = 1e-3,
        py::arg("method") = "rk4", py::arg("rel_tol") = 1e-10, py::arg("abs_tol") = 1e-12);
    m.def("right_momenta", &right_momenta);
    m.def(
        "conservation_report",
        [](const EngelConstants& t, const Trajectory& traj) {
            ConservationReport rep = conservation_report(t, traj);
            py::dict out;
            out["H_drift"] = rep.h_drift;
            out["G_drift"] = rep.g_drift ? py::cast(*rep.g_drift) : py::none().cast<py::object>();
            out["h4p_drift"] =
                rep.h4p_drift ? py::cast(*rep.h4p_drift) : py::none().cast<py::object>();
            out["momentum_drift"] = rep.momentum_drift;
            out["max_drift"] = rep.max_drift();
            return out;
        },
        py::arg("t"), py::arg("trajectory"));
    m.def(
        "independence_matrix",
        [](const EngelConstants& t, const std::array<double, 4>& h, double h4p) {
            IndependenceWitness w = independence_matrix(t, to_state(h), h4p);
            return py::make_tuple(w.differentials, w.minor_det);
        },
        py::arg("t"), py::arg("h"), py::arg("h4p"));
    m.def("type1_constants", &type1_constants, py::arg("n"), py::arg("m"));
    m.def(
        "type1_integrals",
        [](int n, int m, const std::array<double, 4>& h) {
            return type1_integrals(n, m, to_state(h));
        },
        py::arg("n"), py::arg("m"), py::arg("h"));
    m.def(
        "abnormal_rhs",
        [](const EngelConstants& t, const std::array<double, 4>& h, double u2) {
            return from_state(abnormal_rhs(t, to_state(h), u2));
        },
        py::arg("t"), py::arg("h"), py::arg("u2") = 1.0);

    // abnormal geodesics and conjugate points
    m.def(
        "is_strict", [](const EngelConstants& t) { return is_strict(t); }, py::arg("t"));
    m.def("delta_const", &delta_const);
    m.def("delta_profile", &delta_profile, py::arg("profile"), py::arg("t"));
    m.def(
        "conjugate_times_const",
        [](const EngelConstants& t, double horizon) {
            return conjugate_times_const(t, horizon);
        },
        py::arg("t"), py::arg("horizon"));
    m.def(
        "jacobi_flow",
        [](const EngelConstants& t, const std::array<double, 4>& a0, double t_max,
           double step) {
            JacobiTrajectory traj =
                jacobi_flow(t, {a0[0], a0[1], a0[2], a0[3]}, make_config(t_max, step, "rk4", 1e-10, 1e-12));
            std::vector<std::array<double, 4>> states;
            states.reserve(traj.size());
            for (const auto& s : traj.states) states.push_back({s.a1, s.a2, s.a3, s.a4});
            return py::make_tuple(traj.times, states);
        },
        py::arg("t"), py::arg("a0"), py::arg("t_max") = 10.0, py::arg("step") = 1e-3);
    m.def(
        "conjugate_shoot",
        [](const CoefficientProfile& p, double horizon, double step) {
            IntegratorConfig cfg;
            cfg.step = step;
            cfg.t_max = horizon;
            return conjugate_shoot(p, horizon, cfg);
        },
        py::arg("profile"), py::arg("horizon"), py::arg("step") = 1e-3);
    m.def(
        "minimality_verdict",
        [](const EngelConstants& t, double tau) {
            return verdict_dict(minimality_verdict(t, tau));
        },
        py::arg("t"), py::arg("tau"));
    m.def(
        "minimality_verdict_profile",
        [](const CoefficientProfile& p, double tau, bool strict, double step) {
            IntegratorConfig cfg;
            cfg.step = step;
            cfg.t_max = tau;
            return verdict_dict(minimality_verdict(p, tau, strict, cfg));
        },
        py::arg("profile"), py::arg("tau"), py::arg("strict") = false,
        py::arg("step") = 1e-3);

    m.attr("__version__") = "1.0.0";
}
