#pragma once

#include <map>
#include <string>
#include <vector>

#include "engel/algebra.hpp"

namespace engel {

enum class Family { I, II, III, IV, V };

const char* to_string(Family f);
Family family_from_string(const std::string& name);

/// Names of the unconstrained invariants of a family ("T1", "T3", ...).
std::vector<std::string> free_parameters(Family f);

/// The six left-hand sides of the Jacobi restriction system, in order:
///   T1T6 + 2T2T4,
///   T1^2T4 + 4T2T5,
///   T1T3T4 - T1T2T5 + 2T4T5,
///   T1T4^2 - T1^2T2T4 + 2T1T3T6 + 2T5T6,
///   T1T4^2 + 4T2^2T5 - 4T2T3T4 + 2T5T6,
///   T1T2^2T4 + T1T4T6 - 2T2T3T6.
std::array<double, 6> jacobi_restrictions(const EngelConstants& t);

/// Every family whose restriction column the constants satisfy. Overlaps are
/// all reported; the result is nonempty for any valid left-invariant
/// structure. Throws JacobiViolatedError if the restriction system fails and
/// UnclassifiableError if no family matches.
std::vector<Family> classify(const EngelConstants& t, double tol = tol_alg());

/// Fills the constrained invariants of a family from its free parameters.
/// Family V computes T4 = T2(T1^2+4T3)/(2T1), T5 = -T1^3/8 - T1T3/2,
/// T6 = -T2^2(T1^2+4T3)/T1^2 and requires T1 != 0.
EngelConstants build_family(Family f, const std::map<std::string, double>& params,
                            double tol = tol_alg());

enum class AlgebraKind {
    so3_extension,
    sl2_extension,
    trivial_extension_euclidean,
    trivial_extension_poincare,
    solvable_nontrivial_extension,
};

const char* to_string(AlgebraKind k);

/// Underlying Lie algebra of a type-III structure: central extension by
/// X4' = X4 + T4X1 - T3X2, semisimple iff D = T4^2 + T3T6 != 0.
struct AlgebraDiagnosis {
    double d_invariant = 0.0;
    AlgebraKind kind = AlgebraKind::solvable_nontrivial_extension;
    Vec4 center = Vec4::Zero();  // coefficients of X4' in the canonical frame
};

/// Throws NotTypeIIIError unless T1 = T2 = T5 = 0 (within tol).
AlgebraDiagnosis diagnose_type3(const EngelConstants& t, double tol = tol_alg());

}  // namespace engel
