#ifndef CELLALLOC_ENGINE_HPP
#define CELLALLOC_ENGINE_HPP

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cellalloc/scenario.hpp"

namespace cellalloc {

// Outcome of one bidding run. Per-user vectors are aligned and ordered by
// natural user id; per-direction vectors are indexed by sector - 1.
struct ConvergenceReport {
    int iterations = 0;
    std::vector<std::string> user_ids;
    std::vector<int> user_cells;
    std::vector<int> user_sectors;
    std::vector<double> rates;
    std::vector<double> prices;
    std::vector<double> sector_rates;
    std::vector<double> direction_bids;
    std::optional<std::vector<std::vector<double>>> bid_history;
};

struct EngineOptions {
    // UE subproblems within a round may be solved on this many threads;
    // results are identical for any count.
    int workers = 1;
    bool record_history = false;
    // When set, receives one JSON line per protocol message.
    std::ostream* trace = nullptr;
};

ConvergenceReport run_to_convergence(const Scenario& scenario, double total_rate,
                                     const EngineOptions& options = {});

struct SweepResult {
    std::vector<std::pair<double, ConvergenceReport>> runs;
    std::string fingerprint;
};

// Independent runs over a strictly increasing list of total rates.
SweepResult run_sweep(const Scenario& scenario, const std::vector<double>& total_rates,
                      const EngineOptions& options = {});

} // namespace cellalloc

#endif
