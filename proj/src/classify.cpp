#include "engel/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace engel {

const char* to_string(Family f) {
    switch (f) {
        case Family::I: return "I";
        case Family::II: return "II";
        case Family::III: return "III";
        case Family::IV: return "IV";
        case Family::V: return "V";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    if (name == "I") return Family::I;
    if (name == "II") return Family::II;
    if (name == "III") return Family::III;
    if (name == "IV") return Family::IV;
    if (name == "V") return Family::V;
    throw InvalidParamsError("unknown family '" + name + "' (expected I..V)");
}

std::vector<std::string> free_parameters(Family f) {
    switch (f) {
        case Family::I: return {"T1", "T3", "T5"};
        case Family::II: return {"T1", "T2", "T3"};
        case Family::III: return {"T3", "T4", "T6"};
        case Family::IV: return {"T2", "T6"};
        case Family::V: return {"T1", "T2", "T3"};
    }
    return {};
}

std::array<double, 6> jacobi_restrictions(const EngelConstants& t) {
    return {
        t.t1 * t.t6 + 2.0 * t.t2 * t.t4,
        t.t1 * t.t1 * t.t4 + 4.0 * t.t2 * t.t5,
        t.t1 * t.t3 * t.t4 - t.t1 * t.t2 * t.t5 + 2.0 * t.t4 * t.t5,
        t.t1 * t.t4 * t.t4 - t.t1 * t.t1 * t.t2 * t.t4 + 2.0 * t.t1 * t.t3 * t.t6 +
            2.0 * t.t5 * t.t6,
        t.t1 * t.t4 * t.t4 + 4.0 * t.t2 * t.t2 * t.t5 - 4.0 * t.t2 * t.t3 * t.t4 +
            2.0 * t.t5 * t.t6,
        t.t1 * t.t2 * t.t2 * t.t4 + t.t1 * t.t4 * t.t6 - 2.0 * t.t2 * t.t3 * t.t6,
    };
}

namespace {

void require_jacobi(const EngelConstants& t, double tol) {
    auto res = jacobi_restrictions(t);
    if (std::any_of(res.begin(), res.end(),
                    [tol](double r) { return std::abs(r) > tol; }))
        throw JacobiViolatedError(res, "constants violate the Jacobi restriction system");
}

struct FamilyVRhs {
    double t4, t5, t6;
};

FamilyVRhs family_v_rhs(double t1, double t2, double t3) {
    double p = t1 * t1 + 4.0 * t3;
    return {0.5 * t2 * p / t1, -t1 * t1 * t1 / 8.0 - 0.5 * t1 * t3,
            -t2 * t2 * p / (t1 * t1)};
}

}  // namespace

std::vector<Family> classify(const EngelConstants& t, double tol) {
    require_jacobi(t, tol);

    auto zero = [tol](double x) { return std::abs(x) <= tol; };
    auto matches = [tol](double x, double rhs) {
        return std::abs(x - rhs) <= tol * (1.0 + std::abs(rhs));
    };

    std::vector<Family> out;
    if (zero(t.t2) && zero(t.t4) && zero(t.t6)) out.push_back(Family::I);
    if (zero(t.t4) && zero(t.t5) && zero(t.t6)) out.push_back(Family::II);
    if (zero(t.t1) && zero(t.t2) && zero(t.t5)) out.push_back(Family::III);
    if (zero(t.t1) && zero(t.t3) && zero(t.t4) && zero(t.t5)) out.push_back(Family::IV);
    if (!zero(t.t1)) {
        FamilyVRhs rhs = family_v_rhs(t.t1, t.t2, t.t3);
        if (matches(t.t4, rhs.t4) && matches(t.t5, rhs.t5) && matches(t.t6, rhs.t6))
            out.push_back(Family::V);
    }
    if (out.empty())
        throw UnclassifiableError("constants satisfy the restrictions but match no family");
    return out;
}

EngelConstants build_family(Family f, const std::map<std::string, double>& params,
                            double tol) {
    auto expected = free_parameters(f);
    if (params.size() != expected.size()) {
        std::ostringstream msg;
        msg << "family " << to_string(f) << " takes exactly " << expected.size()
            << " parameters (";
        for (std::size_t i = 0; i < expected.size(); ++i)
            msg << (i ? "," : "") << expected[i];
        msg << ")";
        throw InvalidParamsError(msg.str());
    }
    for (const auto& name : expected)
        if (!params.count(name))
            throw InvalidParamsError("missing parameter " + name + " for family " +
                                     to_string(f));
    auto get = [&](const char* name) { return params.at(name); };

    EngelConstants t;
    switch (f) {
        case Family::I:
            t.t1 = get("T1");
            t.t3 = get("T3");
            t.t5 = get("T5");
            break;
        case Family::II:
            t.t1 = get("T1");
            t.t2 = get("T2");
            t.t3 = get("T3");
            break;
        case Family::III:
            t.t3 = get("T3");
            t.t4 = get("T4");
            t.t6 = get("T6");
            break;
        case Family::IV:
            t.t2 = get("T2");
            t.t6 = get("T6");
            break;
        case Family::V: {
            t.t1 = get("T1");
            t.t2 = get("T2");
            t.t3 = get("T3");
            if (std::abs(t.t1) <= tol)
                throw InvalidParamsError("family V requires T1 != 0");
            FamilyVRhs rhs = family_v_rhs(t.t1, t.t2, t.t3);
            t.t4 = rhs.t4;
            t.t5 = rhs.t5;
            t.t6 = rhs.t6;
            break;
        }
    }
    return t;
}

const char* to_string(AlgebraKind k) {
    switch (k) {
        case AlgebraKind::so3_extension: return "so3_extension";
        case AlgebraKind::sl2_extension: return "sl2_extension";
        case AlgebraKind::trivial_extension_euclidean: return "trivial_extension_euclidean";
        case AlgebraKind::trivial_extension_poincare: return "trivial_extension_poincare";
        case AlgebraKind::solvable_nontrivial_extension:
            return "solvable_nontrivial_extension";
    }
    return "?";
}

AlgebraDiagnosis diagnose_type3(const EngelConstants& t, double tol) {
    if (std::abs(t.t1) > tol || std::abs(t.t2) > tol || std::abs(t.t5) > tol)
        throw NotTypeIIIError("type III requires T1 = T2 = T5 = 0");

    AlgebraDiagnosis out;
    out.d_invariant = t.t4 * t.t4 + t.t3 * t.t6;
    out.center = Vec4(t.t4, -t.t3, 0.0, 1.0);

    double scale = 1.0 + t.t4 * t.t4 + std::abs(t.t3 * t.t6);
    bool d_zero = std::abs(out.d_invariant) <= tol * scale;
    if (!d_zero) {
        out.kind = (out.d_invariant < 0.0 && t.t3 < -tol) ? AlgebraKind::so3_extension
                                                          : AlgebraKind::sl2_extension;
    } else if (std::abs(t.t4) <= tol && std::abs(t.t6) <= tol && t.t3 > tol) {
        out.kind = AlgebraKind::trivial_extension_euclidean;
    } else if (std::abs(t.t4) <= tol && std::abs(t.t6) <= tol && t.t3 < -tol) {
        out.kind = AlgebraKind::trivial_extension_poincare;
    } else {
        // Covers T4 != 0 and the degenerate T3 = 0 corners, all of which are
        // non-split central extensions of solvable algebras.
        out.kind = AlgebraKind::solvable_nontrivial_extension;
    }
    return out;
}

}  // namespace engel
