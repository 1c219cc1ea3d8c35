#include "cellalloc/ue.hpp"

#include <cmath>

#include "cellalloc/errors.hpp"

namespace cellalloc {

double solve_rate(const UtilityFunction& utility, double price, double bracket_cap) {
    if (std::isnan(price) || price <= 0.0) {
        throw DomainError("price must be > 0");
    }
    if (std::isnan(bracket_cap) || bracket_cap <= 0.0) {
        throw DomainError("bracket_cap must be > 0");
    }

    // log_deriv is strictly decreasing from +inf to 0, so doubling the upper
    // end eventually brackets the root. The cap only guards against a broken
    // utility implementation.
    const double runaway = std::ldexp(bracket_cap, 60);
    double lo = 1e-12;
    double hi = 1.0;
    while (log_deriv(utility, hi) >= price) {
        hi *= 2.0;
        if (hi > runaway) {
            throw InternalError("rate bracket expansion exceeded 2^60 * bracket_cap");
        }
    }
    while (log_deriv(utility, lo) <= price) {
        lo *= 0.5;
        if (lo < 1e-300) {
            throw InternalError("rate bracket shrank below representable range");
        }
    }

    for (int i = 0; i < 200 && (hi - lo) > 1e-10 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (log_deriv(utility, mid) > price) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

BidUpdate make_bid(const UtilityFunction& utility, double price, double bracket_cap) {
    const double rate = solve_rate(utility, price, bracket_cap);
    return BidUpdate{rate, price * rate};
}

} // namespace cellalloc
