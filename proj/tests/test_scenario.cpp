#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cellalloc/errors.hpp"
#include "cellalloc/scenario.hpp"

using namespace cellalloc;

namespace {

const UserSpec* find_user(const Scenario& s, const std::string& id) {
    for (const UserSpec& u : s.users) {
        if (u.id == id) {
            return &u;
        }
    }
    return nullptr;
}

} // namespace

TEST_CASE("three-cell roster layout") {
    const Scenario s = builtin_table1();
    CHECK(s.cells == 3);
    CHECK(s.sectors == 3);
    CHECK(s.users.size() == 54);
    CHECK(s.delta == 1e-3);
    CHECK(s.max_iterations == 1000);

    std::map<std::pair<int, int>, int> census;
    for (const UserSpec& u : s.users) {
        census[{u.cell, u.sector}] += 1;
    }
    CHECK(census.size() == 9);
    for (const auto& [key, n] : census) {
        CHECK(n == 6);
    }

    const UserSpec* a7 = find_user(s, "A7");
    REQUIRE(a7 != nullptr);
    CHECK(a7->cell == 1);
    CHECK(a7->sector == 2);
    CHECK(a7->kind == UtilityKind::Sigmoidal);
    CHECK(a7->a == 3.0);
    CHECK(a7->b == 10.0);

    const UserSpec* c18 = find_user(s, "C18");
    REQUIRE(c18 != nullptr);
    CHECK(c18->cell == 3);
    CHECK(c18->sector == 3);
    CHECK(c18->kind == UtilityKind::Logarithmic);
    CHECK(c18->k == 18.0);
}

TEST_CASE("unbalanced variant drops direction-1 elastic users") {
    const Scenario s = builtin_table1_unbalanced();
    CHECK(s.users.size() == 45);
    CHECK(find_user(s, "A4") == nullptr);
    CHECK(find_user(s, "A1") != nullptr);
    CHECK(find_user(s, "B10") != nullptr);
    CHECK_NOTHROW(validate_scenario(s));
    for (const UserSpec& u : s.users) {
        if (u.sector == 1) {
            CHECK(u.kind == UtilityKind::Sigmoidal);
        }
    }
}

TEST_CASE("document round-trip is lossless") {
    for (const Scenario& s : {builtin_table1(), builtin_table1_unbalanced()}) {
        const std::string text = write_scenario(s);
        CHECK(!text.empty());
        CHECK(text.back() == '\n');
        const Scenario back = parse_scenario(text);
        CHECK(back == s);
        CHECK(write_scenario(back) == text);
    }
}

TEST_CASE("round-trip preserves explicit rate caps and odd values") {
    Scenario s;
    s.cells = 1;
    s.sectors = 2;
    s.delta = 3.25e-5;
    s.initial_bid = 0.1;
    s.damping = 0.62;
    s.log_r_max = 77.5;
    s.users.push_back({"u1", 1, 1, UtilityKind::Logarithmic, 0.0, 0.0, 1.7, 42.125});
    s.users.push_back({"u2", 1, 2, UtilityKind::Sigmoidal, 2.5, 13.75, 0.0, std::nullopt});
    const Scenario back = parse_scenario(write_scenario(s));
    CHECK(back == s);
    REQUIRE(back.users[0].r_max.has_value());
    CHECK(*back.users[0].r_max == 42.125);
    CHECK(!back.users[1].r_max.has_value());
    CHECK(user_utility(back, back.users[0]).r_max == 42.125);
}

TEST_CASE("rate cap defaults come from the scenario") {
    Scenario s;
    s.sectors = 1;
    s.log_r_max = 50.0;
    s.users.push_back({"u1", 1, 1, UtilityKind::Logarithmic, 0.0, 0.0, 2.0, std::nullopt});
    CHECK(user_utility(s, s.users[0]).r_max == 50.0);
    s.users[0].r_max = 25.0;
    CHECK(user_utility(s, s.users[0]).r_max == 25.0);
}

TEST_CASE("parse errors name the offending user") {
    nlohmann::json doc = nlohmann::json::parse(write_scenario(builtin_table1()));
    for (auto& u : doc["users"]) {
        if (u["id"] == "A4") {
            u.erase("k");
        }
    }
    try {
        (void)parse_scenario(doc.dump());
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("A4") != std::string::npos);
    }

    CHECK_THROWS_AS((void)parse_scenario("{not json"), ValidationError);
    CHECK_THROWS_AS((void)parse_scenario("[]"), ValidationError);
}

TEST_CASE("out-of-range sector index is rejected with the user named") {
    Scenario s = builtin_table1();
    s.users[0].sector = 4;
    try {
        validate_scenario(s);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(s.users[0].id) != std::string::npos);
        CHECK(msg.find("sector") != std::string::npos);
    }
}

TEST_CASE("a direction with no users anywhere is rejected") {
    Scenario s;
    s.cells = 1;
    s.sectors = 2;
    s.users.push_back({"u1", 1, 1, UtilityKind::Logarithmic, 0.0, 0.0, 1.0, std::nullopt});
    s.users.push_back({"u2", 1, 1, UtilityKind::Logarithmic, 0.0, 0.0, 2.0, std::nullopt});
    try {
        validate_scenario(s);
        FAIL("expected an empty-direction error");
    } catch (const EmptyDirection& e) {
        CHECK(std::string(e.what()).find("direction 2") != std::string::npos);
    }
}

TEST_CASE("validation rejects malformed fields") {
    Scenario s = builtin_table1();
    s.users[1].id = s.users[0].id;
    CHECK_THROWS_AS(validate_scenario(s), ValidationError);

    s = builtin_table1();
    s.damping = 1.5;
    CHECK_THROWS_AS(validate_scenario(s), ValidationError);
    s.damping = 0.0;
    CHECK_THROWS_AS(validate_scenario(s), ValidationError);

    s = builtin_table1();
    s.delta = 0.0;
    CHECK_THROWS_AS(validate_scenario(s), ValidationError);

    s = builtin_table1();
    s.users[2].id = "";
    CHECK_THROWS_AS(validate_scenario(s), ValidationError);

    s = builtin_table1();
    s.users[3].k = -1.0;
    CHECK_THROWS_AS(validate_scenario(s), ValidationError);
}

TEST_CASE("fingerprints identify documents") {
    const std::string f1 = scenario_fingerprint(builtin_table1());
    const std::string f2 = scenario_fingerprint(builtin_table1_unbalanced());
    CHECK(f1.size() == 16);
    CHECK(f1 == scenario_fingerprint(builtin_table1()));
    CHECK(f1 != f2);
}

TEST_CASE("identifier ordering is natural") {
    CHECK(natural_id_less("A7", "A10"));
    CHECK(natural_id_less("A2", "A10"));
    CHECK(!natural_id_less("A10", "A7"));
    CHECK(natural_id_less("A18", "B1"));
    CHECK(natural_id_less("A7", "A7b"));
    CHECK(natural_id_less("alpha", "beta"));
    CHECK(!natural_id_less("A7", "A7"));

    std::vector<std::string> ids;
    for (const UserSpec& u : builtin_table1().users) {
        ids.push_back(u.id);
    }
    std::sort(ids.begin(), ids.end(), natural_id_less);
    CHECK(ids.front() == "A1");
    CHECK(ids[1] == "A2");
    CHECK(ids[9] == "A10");
    CHECK(ids.back() == "C18");
}
