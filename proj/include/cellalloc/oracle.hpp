#ifndef CELLALLOC_ORACLE_HPP
#define CELLALLOC_ORACLE_HPP

#include <string>
#include <vector>

#include "cellalloc/engine.hpp"
#include "cellalloc/scenario.hpp"

namespace cellalloc {

// Centralized solution of the global allocation problem: one market-clearing
// price equalized across directions, per-user rates from inverting the
// first-order condition, sector rates by grouping.
struct OracleSolution {
    std::vector<std::string> user_ids;
    std::vector<int> user_sectors;
    std::vector<double> rates;
    double price = 0.0;
    std::vector<double> sector_rates;
};

// Inverts log_deriv(u, r) = price on its own code path (closed form for the
// logarithmic family, safeguarded Newton for the sigmoidal), independent of
// the bidding agents' bisection.
double oracle_rate(const UtilityFunction& u, double price);

// Bisects the clearing price until total demand matches total_rate within
// 1e-9 relative, bypassing the proportional split rule entirely.
OracleSolution solve_centralized(const Scenario& scenario, double total_rate);

struct DiffSummary {
    double max_rate_diff = 0.0;
    double max_price_diff = 0.0;
    double max_sector_diff = 0.0;
};

// Per-user and per-direction agreement maxima between a distributed run and
// the centralized solution. Rosters must match.
DiffSummary compare(const ConvergenceReport& report, const OracleSolution& oracle);

} // namespace cellalloc

#endif
