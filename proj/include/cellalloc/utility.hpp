#ifndef CELLALLOC_UTILITY_HPP
#define CELLALLOC_UTILITY_HPP

namespace cellalloc {

enum class UtilityKind { Sigmoidal, Logarithmic };

// One user's satisfaction curve. Sigmoidal models rate-sensitive real-time
// traffic (a = steepness, b = inflection rate); Logarithmic models elastic
// traffic (k = curvature), normalized so U(r_max) = 1.
struct UtilityFunction {
    UtilityKind kind = UtilityKind::Logarithmic;
    double a = 0.0;
    double b = 0.0;
    double k = 0.0;
    double r_max = 100.0;

    static UtilityFunction sigmoidal(double a, double b);
    static UtilityFunction logarithmic(double k, double r_max = 100.0);

    bool operator==(const UtilityFunction&) const = default;
};

// U(r) in [0,1], U(0) = 0 exactly.
double eval_utility(const UtilityFunction& u, double r);

// ln U(r), computed without forming a possibly-underflowed U. r must be > 0.
double log_utility(const UtilityFunction& u, double r);

// d/dr ln U(r). Strictly positive and non-increasing; diverges as r -> 0+.
double log_deriv(const UtilityFunction& u, double r);

} // namespace cellalloc

#endif
