#ifndef CELLALLOC_MME_HPP
#define CELLALLOC_MME_HPP

#include <vector>

namespace cellalloc {

struct MmeState {
    double total_rate = 0.0;
    std::vector<double> direction_bids;
    std::vector<double> prev_direction_bids;
    std::vector<double> sector_rates;
    double delta = 1e-3;
};

// Column sums of the per-cell aggregate matrix (rows = cells in ascending
// order, columns = directions): W^l = sum_k W_k^l.
std::vector<double> total_direction_bids(const std::vector<std::vector<double>>& per_cell);

// Proportional split R^l = W^l * R / sum(W).
std::vector<double> allocate_sector_rates(const std::vector<double>& direction_bids,
                                          double total_rate);

// True once every direction's bid moved less than delta since last round.
bool check_convergence(const MmeState& state);

} // namespace cellalloc

#endif
