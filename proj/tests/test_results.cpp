#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cellalloc/engine.hpp"
#include "cellalloc/errors.hpp"
#include "cellalloc/oracle.hpp"
#include "cellalloc/results.hpp"
#include "cellalloc/scenario.hpp"

using namespace cellalloc;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

const SweepResult& table1_sweep() {
    static const SweepResult sweep = run_sweep(builtin_table1(), {550.0, 600.0}, {});
    return sweep;
}

} // namespace

TEST_CASE("empty sweep produces a bare header") {
    SweepResult sweep;
    CHECK(to_rates_csv(sweep, 1) == "R\n");
    CHECK_THROWS_AS((void)to_rates_csv(sweep, 0), DomainError);
}

TEST_CASE("rates table lists direction members in id order") {
    const SweepResult& sweep = table1_sweep();
    const std::string csv = to_rates_csv(sweep, 2);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 3);

    const auto header = split_fields(lines[0]);
    REQUIRE(header.size() == 19);
    CHECK(header[0] == "R");
    CHECK(header[1] == "A7");
    CHECK(header[6] == "A12");
    CHECK(header[18] == "C12");

    const auto row = split_fields(lines[2]);
    REQUIRE(row.size() == 19);
    CHECK(row[0] == "600");
    const double a7 = std::stod(row[1]);
    CHECK(std::abs(a7 - 11.350) <= 0.02 * 11.350);

    // Values are written with enough digits to reconstruct the double.
    const ConvergenceReport& rep = sweep.runs[1].second;
    double expected = 0.0;
    for (std::size_t i = 0; i < rep.user_ids.size(); ++i) {
        if (rep.user_ids[i] == "A7") {
            expected = rep.rates[i];
        }
    }
    CHECK(std::abs(a7 - expected) <= 1e-11 * std::abs(expected));

    CHECK_THROWS_AS((void)to_rates_csv(sweep, 4), DomainError);
    CHECK(csv.find("\r") == std::string::npos);
    CHECK(csv.back() == '\n');
}

TEST_CASE("sector table carries grants, prices, and round counts") {
    const SweepResult& sweep = table1_sweep();
    const std::string csv = to_sector_csv(sweep);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "R,R1,R2,R3,p1,p2,p3,iterations");

    const auto row = split_fields(lines[2]);
    REQUIRE(row.size() == 8);
    CHECK(row[0] == "600");

    const double r1 = std::stod(row[1]);
    const double r2 = std::stod(row[2]);
    const double r3 = std::stod(row[3]);
    CHECK(std::abs(r1 - 192.57) <= 0.02 * 192.57);
    CHECK(std::abs(r1 + r2 + r3 - 600.0) <= 1e-6);

    const double p1 = std::stod(row[4]);
    const double p2 = std::stod(row[5]);
    const double p3 = std::stod(row[6]);
    CHECK(std::abs(p1 - 0.051357) <= 0.02 * 0.051357);
    CHECK(std::abs(p2 - p1) <= 1e-9 * p1);
    CHECK(std::abs(p3 - p1) <= 1e-9 * p1);

    const int iters = std::stoi(row[7]);
    CHECK(iters == sweep.runs[1].second.iterations);
}

TEST_CASE("unbalanced roster shifts the direction-1 grant") {
    const SweepResult sweep = run_sweep(builtin_table1_unbalanced(), {600.0}, {});
    const auto row = split_fields(split_lines(to_sector_csv(sweep))[1]);
    const double r1 = std::stod(row[1]);
    CHECK(std::abs(r1 - 130.96) <= 0.02 * 130.96);
}

TEST_CASE("oracle diff table stays within tolerance at a converged point") {
    Scenario s = builtin_table1();
    s.delta = 1e-4;
    const SweepResult sweep = run_sweep(s, {550.0, 600.0}, {});
    std::vector<OracleSolution> oracles;
    for (const auto& [total, rep] : sweep.runs) {
        oracles.push_back(solve_centralized(s, total));
    }
    const std::string csv = to_oracle_csv(sweep, oracles);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "R,rate_diff,price_diff,sector_diff");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = split_fields(lines[i]);
        REQUIRE(row.size() == 4);
        for (std::size_t j = 1; j < row.size(); ++j) {
            CHECK(std::stod(row[j]) <= 1e-3);
        }
    }

    oracles.pop_back();
    CHECK_THROWS_AS((void)to_oracle_csv(sweep, oracles), DomainError);
}

TEST_CASE("tables are byte-stable across repeated rendering and worker counts") {
    const SweepResult& sweep = table1_sweep();
    CHECK(to_sector_csv(sweep) == to_sector_csv(sweep));
    CHECK(to_rates_csv(sweep, 1) == to_rates_csv(sweep, 1));

    EngineOptions parallel;
    parallel.workers = 8;
    const SweepResult redo = run_sweep(builtin_table1(), {550.0, 600.0}, parallel);
    CHECK(to_sector_csv(redo) == to_sector_csv(sweep));
    for (int l = 1; l <= 3; ++l) {
        CHECK(to_rates_csv(redo, l) == to_rates_csv(sweep, l));
    }
}
