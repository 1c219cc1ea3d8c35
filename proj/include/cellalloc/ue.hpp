#ifndef CELLALLOC_UE_HPP
#define CELLALLOC_UE_HPP

#include "cellalloc/utility.hpp"

namespace cellalloc {

struct BidUpdate {
    double rate = 0.0;
    double bid = 0.0;
};

// Rate maximizing ln U(r) - price * r: the unique root of
// log_deriv(utility, r) = price. bracket_cap bounds the runaway guard on the
// bracketing search; the engine passes the total rate budget.
double solve_rate(const UtilityFunction& utility, double price, double bracket_cap);

// solve_rate plus the matching payment offer bid = price * rate.
BidUpdate make_bid(const UtilityFunction& utility, double price, double bracket_cap);

} // namespace cellalloc

#endif
