#ifndef CELLALLOC_RESULTS_HPP
#define CELLALLOC_RESULTS_HPP

#include <string>
#include <vector>

#include "cellalloc/engine.hpp"
#include "cellalloc/oracle.hpp"

namespace cellalloc {

// Per-user rate curves for one direction: header `R,<user-id>,...` with ids
// ascending, one row per swept R. At least 9 significant digits per value.
std::string to_rates_csv(const SweepResult& sweep, int direction);

// Sector rates, shadow prices (unscaled), and round counts:
// header `R,R1..RL,p1..pL,iterations`, one row per swept R.
std::string to_sector_csv(const SweepResult& sweep);

// Distributed-vs-centralized agreement per swept R. rate_diff and sector_diff
// are normalized by max(1, centralized value); price_diff is relative.
std::string to_oracle_csv(const SweepResult& sweep, const std::vector<OracleSolution>& oracles);

} // namespace cellalloc

#endif
