#include "cellalloc/sector.hpp"

#include <cmath>

#include "cellalloc/errors.hpp"

namespace cellalloc {

double aggregate_bids(const std::vector<double>& bids) {
    double total = 0.0;
    for (double b : bids) {
        if (std::isnan(b) || b <= 0.0) {
            throw ProtocolError("non-positive bid reached aggregation");
        }
        total += b;
    }
    return total;
}

double compute_price(double total_direction_bid, double sector_rate) {
    if (std::isnan(total_direction_bid) || total_direction_bid <= 0.0) {
        throw ProtocolError("direction bid must be > 0 to price a sector");
    }
    if (std::isnan(sector_rate) || sector_rate <= 0.0) {
        throw ProtocolError("sector rate must be > 0 to price a sector");
    }
    return total_direction_bid / sector_rate;
}

} // namespace cellalloc
