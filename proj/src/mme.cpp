#include "cellalloc/mme.hpp"

#include <cmath>

#include "cellalloc/errors.hpp"

namespace cellalloc {

std::vector<double> total_direction_bids(const std::vector<std::vector<double>>& per_cell) {
    if (per_cell.empty()) {
        throw ProtocolError("need at least one cell row");
    }
    const std::size_t directions = per_cell.front().size();
    std::vector<double> totals(directions, 0.0);
    for (const auto& row : per_cell) {
        if (row.size() != directions) {
            throw ProtocolError("ragged per-cell bid matrix");
        }
        for (std::size_t l = 0; l < directions; ++l) {
            totals[l] += row[l];
        }
    }
    return totals;
}

std::vector<double> allocate_sector_rates(const std::vector<double>& direction_bids,
                                          double total_rate) {
    if (std::isnan(total_rate) || total_rate <= 0.0) {
        throw ProtocolError("total rate must be > 0");
    }
    double sum = 0.0;
    for (double w : direction_bids) {
        if (std::isnan(w) || w <= 0.0) {
            throw ProtocolError("direction bid must be > 0 for proportional split");
        }
        sum += w;
    }
    if (sum <= 0.0) {
        throw ProtocolError("total bid must be > 0 for proportional split");
    }
    std::vector<double> rates(direction_bids.size());
    for (std::size_t l = 0; l < direction_bids.size(); ++l) {
        rates[l] = direction_bids[l] * total_rate / sum;
    }
    return rates;
}

bool check_convergence(const MmeState& state) {
    if (state.direction_bids.size() != state.prev_direction_bids.size()) {
        throw ProtocolError("direction bid history length mismatch");
    }
    for (std::size_t l = 0; l < state.direction_bids.size(); ++l) {
        if (std::abs(state.direction_bids[l] - state.prev_direction_bids[l]) >= state.delta) {
            return false;
        }
    }
    return true;
}

} // namespace cellalloc
