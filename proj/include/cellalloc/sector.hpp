#ifndef CELLALLOC_SECTOR_HPP
#define CELLALLOC_SECTOR_HPP

#include <vector>

namespace cellalloc {

// Per (cell, sector) bookkeeping inside the engine's round loop.
struct SectorState {
    int cell = 1;
    int sector = 1;
    double aggregated_bid = 0.0;
    double price = 0.0;
};

// Exact left-to-right sum of member bids, already ordered by user id.
// Empty sectors aggregate to zero.
double aggregate_bids(const std::vector<double>& bids);

// Shadow price of a direction: total bid over all cells divided by the rate
// the MME granted that direction.
double compute_price(double total_direction_bid, double sector_rate);

} // namespace cellalloc

#endif
