#include "cellalloc/utility.hpp"

#include <cmath>
#include <string>

#include "cellalloc/errors.hpp"

namespace cellalloc {

namespace {

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// ln(1 + e^x) without overflowing for large positive x.
double softplus(double x) {
    if (x > 0.0) {
        return x + std::log1p(std::exp(-x));
    }
    return std::log1p(std::exp(x));
}

// ln(1 - e^-t) for t > 0, accurate over the whole range.
double log1mexp(double t) {
    static const double kLn2 = std::log(2.0);
    if (t > kLn2) {
        return std::log1p(-std::exp(-t));
    }
    return std::log(-std::expm1(-t));
}

void check_params(const UtilityFunction& u) {
    if (u.kind == UtilityKind::Sigmoidal) {
        if (!(u.a > 0.0) || !(u.b > 0.0)) {
            throw ParameterError("sigmoidal utility requires a > 0 and b > 0");
        }
    } else {
        if (!(u.k > 0.0) || !(u.r_max > 0.0)) {
            throw ParameterError("logarithmic utility requires k > 0 and r_max > 0");
        }
    }
}

void check_rate(double r, bool allow_zero) {
    if (std::isnan(r) || (allow_zero ? r < 0.0 : r <= 0.0)) {
        throw DomainError("rate " + std::to_string(r) +
                          (allow_zero ? " must be >= 0" : " must be > 0"));
    }
}

} // namespace

UtilityFunction UtilityFunction::sigmoidal(double a, double b) {
    UtilityFunction u;
    u.kind = UtilityKind::Sigmoidal;
    u.a = a;
    u.b = b;
    check_params(u);
    return u;
}

UtilityFunction UtilityFunction::logarithmic(double k, double r_max) {
    UtilityFunction u;
    u.kind = UtilityKind::Logarithmic;
    u.k = k;
    u.r_max = r_max;
    check_params(u);
    return u;
}

double eval_utility(const UtilityFunction& u, double r) {
    check_params(u);
    check_rate(r, true);
    if (u.kind == UtilityKind::Sigmoidal) {
        // Normalized logistic c*(sigma(r) - d) rearranged so e^(a*b) is never
        // formed: equal to (1 - e^(-a r)) * sigma(a (r - b)).
        return -std::expm1(-u.a * r) * sigmoid(u.a * (r - u.b));
    }
    return std::log1p(u.k * r) / std::log1p(u.k * u.r_max);
}

double log_utility(const UtilityFunction& u, double r) {
    check_params(u);
    check_rate(r, false);
    if (u.kind == UtilityKind::Sigmoidal) {
        return log1mexp(u.a * r) - softplus(u.a * (u.b - r));
    }
    return std::log(std::log1p(u.k * r)) - std::log(std::log1p(u.k * u.r_max));
}

double log_deriv(const UtilityFunction& u, double r) {
    check_params(u);
    check_rate(r, false);
    if (u.kind == UtilityKind::Sigmoidal) {
        // a/(e^(a r) - 1) + a*sigma(a (b - r)); expm1 saturates to +inf for
        // huge a*r, which correctly sends the first term to zero.
        return u.a / std::expm1(u.a * r) + u.a * sigmoid(u.a * (u.b - r));
    }
    const double t = std::log1p(u.k * r);
    return u.k / ((1.0 + u.k * r) * t);
}

} // namespace cellalloc
