#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "engel/classify.hpp"
#include "engel/io.hpp"

using namespace engel;
using nlohmann::json;

namespace {

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

}  // namespace

TEST_CASE("algebra document round trip") {
    BracketTable table = structure_constants_from_T(
        build_family(Family::III, {{"T3", 1.0}, {"T4", 1.0}, {"T6", -1.0}}));
    json doc = {{"c", table_to_json(table)},
                {"d1", {1.0, 0.0, 0.0, 0.0}},
                {"d2", {0.0, 1.0, 0.0, 0.0}},
                {"metric", {{2.0, 0.5}, {0.5, 1.0}}},
                {"orient_M", -1},
                {"orient_D", 1}};
    std::istringstream in(doc.dump());
    auto [parsed, dist] = load_algebra_json(in);

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) CHECK(parsed.c(i, j, k) == table.c(i, j, k));
    CHECK(dist.orient_m == -1);
    CHECK(dist.orient_d == 1);
    CHECK(dist.metric(0, 1) == 0.5);
}

TEST_CASE("missing fields fall back to the canonical presentation") {
    json doc = {{"c", table_to_json(nilpotent_engel_table())}};
    std::istringstream in(doc.dump());
    auto [table, dist] = load_algebra_json(in);
    CHECK((dist.d1 - Vec4::Unit(0)).norm() == 0.0);
    CHECK((dist.d2 - Vec4::Unit(1)).norm() == 0.0);
    CHECK((dist.metric - Mat2::Identity()).norm() == 0.0);
    CHECK(dist.orient_m == 1);
    CHECK(growth_vector(table, dist) == GrowthVector{2, 3, 4});
}

TEST_CASE("malformed documents are rejected") {
    SUBCASE("not json") {
        std::istringstream in("not json");
        CHECK_THROWS_AS(load_algebra_json(in), IoError);
    }
    SUBCASE("missing tensor") {
        std::istringstream in("{}");
        CHECK_THROWS_AS(load_algebra_json(in), IoError);
    }
    SUBCASE("broken antisymmetry") {
        json c = table_to_json(nilpotent_engel_table());
        c[1][0][2] = 5.0;  // should be -c[0][1][2]
        json doc = {{"c", c}};
        std::istringstream in(doc.dump());
        CHECK_THROWS_AS(load_algebra_json(in), IoError);
    }
    SUBCASE("nonzero diagonal") {
        json c = table_to_json(nilpotent_engel_table());
        c[2][2][0] = 1.0;
        json doc = {{"c", c}};
        std::istringstream in(doc.dump());
        CHECK_THROWS_AS(load_algebra_json(in), IoError);
    }
    SUBCASE("indefinite metric") {
        json doc = {{"c", table_to_json(nilpotent_engel_table())},
                    {"metric", {{1.0, 0.0}, {0.0, -1.0}}}};
        std::istringstream in(doc.dump());
        CHECK_THROWS_AS(load_algebra_json(in), IoError);
    }
    SUBCASE("dependent distribution vectors") {
        json doc = {{"c", table_to_json(nilpotent_engel_table())},
                    {"d1", {1.0, 0.0, 0.0, 0.0}},
                    {"d2", {2.0, 0.0, 0.0, 0.0}}};
        std::istringstream in(doc.dump());
        CHECK_THROWS_AS(load_algebra_json(in), IoError);
    }
}
