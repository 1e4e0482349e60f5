#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "engel/abnormal.hpp"
#include "engel/classify.hpp"
#include "test_util.hpp"

using namespace engel;

namespace {

bool contains(const std::vector<Family>& fams, Family f) {
    return std::find(fams.begin(), fams.end(), f) != fams.end();
}

}  // namespace

TEST_CASE("restriction system evaluation") {
    SUBCASE("zero constants") {
        for (double r : jacobi_restrictions(EngelConstants{})) CHECK(r == 0.0);
    }
    SUBCASE("T1 = T4 = 1") {
        EngelConstants t;
        t.t1 = 1.0;
        t.t4 = 1.0;
        std::array<double, 6> want = {0.0, 1.0, 0.0, 1.0, 1.0, 0.0};
        auto got = jacobi_restrictions(t);
        for (int i = 0; i < 6; ++i) CHECK(got[i] == doctest::Approx(want[i]));
    }
    SUBCASE("family-V builder output") {
        EngelConstants t = build_family(Family::V, {{"T1", 2.0}, {"T2", 1.0}, {"T3", 0.0}});
        for (double r : jacobi_restrictions(t)) CHECK(std::abs(r) < 1e-12);
    }
}

TEST_CASE("classification of the worked examples") {
    SUBCASE("T2 = 1 lies in families II and IV") {
        EngelConstants t;
        t.t2 = 1.0;
        auto fams = classify(t);
        CHECK(fams.size() == 2);
        CHECK(contains(fams, Family::II));
        CHECK(contains(fams, Family::IV));
    }
    SUBCASE("T4 = T6 = 1 is exactly type III") {
        EngelConstants t;
        t.t4 = 1.0;
        t.t6 = 1.0;
        auto fams = classify(t);
        CHECK(fams.size() == 1);
        CHECK(fams.front() == Family::III);
    }
    SUBCASE("T5 = 1 is exactly type I") {
        EngelConstants t;
        t.t5 = 1.0;
        auto fams = classify(t);
        CHECK(fams.size() == 1);
        CHECK(fams.front() == Family::I);
    }
    SUBCASE("restriction violations are rejected") {
        EngelConstants t;
        t.t1 = 1.0;
        t.t4 = 1.0;
        CHECK_THROWS_AS(classify(t), JacobiViolatedError);
    }
}

TEST_CASE("family builders") {
    SUBCASE("type III") {
        EngelConstants t = build_family(Family::III, {{"T3", 1.0}, {"T4", 1.0}, {"T6", 1.0}});
        auto a = t.as_array();
        std::array<double, 6> want = {0.0, 0.0, 1.0, 1.0, 0.0, 1.0};
        for (int i = 0; i < 6; ++i) CHECK(a[i] == want[i]);
    }
    SUBCASE("type V at (2, 0, 0)") {
        EngelConstants t = build_family(Family::V, {{"T1", 2.0}, {"T2", 0.0}, {"T3", 0.0}});
        CHECK(t.t4 == doctest::Approx(0.0));
        CHECK(t.t5 == doctest::Approx(-1.0));
        CHECK(t.t6 == doctest::Approx(0.0));
    }
    SUBCASE("type I") {
        EngelConstants t = build_family(Family::I, {{"T1", 1.0}, {"T3", 1.0}, {"T5", 1.0}});
        auto a = t.as_array();
        std::array<double, 6> want = {1.0, 0.0, 1.0, 0.0, 1.0, 0.0};
        for (int i = 0; i < 6; ++i) CHECK(a[i] == want[i]);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(build_family(Family::III, {{"T3", 1.0}}), InvalidParamsError);
        CHECK_THROWS_AS(build_family(Family::IV,
                                     {{"T2", 1.0}, {"T6", 1.0}, {"T1", 0.0}}),
                        InvalidParamsError);
        CHECK_THROWS_AS(build_family(Family::V, {{"T1", 0.0}, {"T2", 1.0}, {"T3", 1.0}}),
                        InvalidParamsError);
    }
}

TEST_CASE("every family builder output classifies as its own family") {
    std::mt19937 rng(71);
    for (int it = 0; it < 100; ++it) {
        Family f = testutil::sample_family_tag(rng);
        EngelConstants t = testutil::sample_family(rng, f);
        auto res = jacobi_restrictions(t);
        for (double r : res) CHECK(std::abs(r) < 1e-12);
        auto fams = classify(t);
        CHECK(!fams.empty());
        CHECK(contains(fams, f));
    }
}

TEST_CASE("family I is never strictly abnormal") {
    std::mt19937 rng(73);
    for (int it = 0; it < 50; ++it) {
        EngelConstants t = testutil::sample_family(rng, Family::I);
        CHECK(t.t4 == 0.0);
        CHECK(!is_strict(t));
    }
}

TEST_CASE("type-III diagnosis") {
    SUBCASE("compact semisimple quotient") {
        EngelConstants t{0.0, 0.0, -1.0, 0.0, 0.0, 1.0};
        AlgebraDiagnosis d = diagnose_type3(t);
        CHECK(d.d_invariant == doctest::Approx(-1.0));
        CHECK(d.kind == AlgebraKind::so3_extension);
    }
    SUBCASE("split semisimple quotient") {
        EngelConstants t{0.0, 0.0, 1.0, 1.0, 0.0, 1.0};
        AlgebraDiagnosis d = diagnose_type3(t);
        CHECK(d.d_invariant == doctest::Approx(2.0));
        CHECK(d.kind == AlgebraKind::sl2_extension);
    }
    SUBCASE("degenerate solvable case") {
        EngelConstants t{0.0, 0.0, 1.0, 1.0, 0.0, -1.0};
        AlgebraDiagnosis d = diagnose_type3(t);
        CHECK(d.d_invariant == doctest::Approx(0.0));
        CHECK(d.kind == AlgebraKind::solvable_nontrivial_extension);
    }
    SUBCASE("trivial extensions") {
        EngelConstants eu{0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
        CHECK(diagnose_type3(eu).kind == AlgebraKind::trivial_extension_euclidean);
        EngelConstants po{0.0, 0.0, -1.0, 0.0, 0.0, 0.0};
        CHECK(diagnose_type3(po).kind == AlgebraKind::trivial_extension_poincare);
    }
    SUBCASE("non type-III input is rejected") {
        EngelConstants t;
        t.t1 = 1.0;
        CHECK_THROWS_AS(diagnose_type3(t), NotTypeIIIError);
    }
}

TEST_CASE("the diagnosed center commutes with the whole algebra") {
    std::mt19937 rng(79);
    for (int it = 0; it < 40; ++it) {
        EngelConstants t = testutil::sample_family(rng, Family::III);
        BracketTable table = structure_constants_from_T(t);
        Vec4 center = diagnose_type3(t).center;
        for (int i = 0; i < 4; ++i)
            CHECK(table.bracket(Vec4::Unit(i), center).norm() < 1e-12);
    }
}
