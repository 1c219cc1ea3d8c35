#ifndef CELLALLOC_SCENARIO_HPP
#define CELLALLOC_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "cellalloc/utility.hpp"

namespace cellalloc {

// One user as declared in a scenario document. r_max is only meaningful for
// logarithmic users; when absent the scenario-wide log_r_max applies.
struct UserSpec {
    std::string id;
    int cell = 1;
    int sector = 1;
    UtilityKind kind = UtilityKind::Logarithmic;
    double a = 0.0;
    double b = 0.0;
    double k = 0.0;
    std::optional<double> r_max;

    bool operator==(const UserSpec&) const = default;
};

struct Scenario {
    int cells = 1;
    int sectors = 1;
    double delta = 1e-3;
    int max_iterations = 1000;
    double initial_bid = 1.0;
    double damping = 1.0;
    double log_r_max = 100.0;
    std::vector<UserSpec> users;

    bool operator==(const Scenario&) const = default;
};

// Resolves the user's utility, filling in the scenario default r_max.
UtilityFunction user_utility(const Scenario& s, const UserSpec& user);

// Throws ValidationError on bounds violations, duplicate ids, bad utility
// parameters, or a direction with no users in any cell.
void validate_scenario(const Scenario& s);

// Built-in reference roster: 3 cells x 3 sectors x 6 users, three sigmoidal
// then three logarithmic per (cell, sector).
Scenario builtin_table1();

// The same roster with the nine sector-1 logarithmic users (A4-A6, B4-B6,
// C4-C6) removed.
Scenario builtin_table1_unbalanced();

Scenario parse_scenario(const std::string& text);
std::string write_scenario(const Scenario& s);

// FNV-1a hash of the canonical scenario document, as 16 hex digits.
std::string scenario_fingerprint(const Scenario& s);

// Orders "A7" before "A10": alphabetic prefix first, then the numeric suffix
// by value. Falls back to plain string order for ids without a suffix.
bool natural_id_less(const std::string& lhs, const std::string& rhs);

} // namespace cellalloc

#endif
