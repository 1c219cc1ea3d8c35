#include "cellalloc/oracle.hpp"

#include <algorithm>
#include <cmath>

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

// Principal branch of u * e^u = x for x > 0, by Halley iteration.
double lambert_w(double x) {
    double u = std::log1p(x);
    for (int it = 0; it < 40; ++it) {
        const double eu = std::exp(u);
        const double f = u * eu - x;
        const double denom = eu * (u + 1.0) - (u + 2.0) * f / (2.0 * u + 2.0);
        const double step = f / denom;
        u -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(u))) {
            break;
        }
    }
    return u;
}

double sigmoidal_rate(const UtilityFunction& u, double price) {
    double lo = 1e-12;
    double hi = std::max(1.0, 2.0 * u.b);
    while (log_deriv(u, hi) >= price) {
        hi *= 2.0;
        if (hi > 1e18) {
            throw InternalError("oracle rate bracket ran away");
        }
    }
    while (log_deriv(u, lo) <= price) {
        lo *= 0.5;
        if (lo < 1e-300) {
            throw InternalError("oracle rate bracket collapsed");
        }
    }
    // Newton on g(r) - price with bisection safeguard; g' is analytic.
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double e1 = std::expm1(u.a * r);
        const double em1 = -std::expm1(-u.a * r);
        const double s = sigmoid(u.a * (u.b - r));
        const double g = u.a / e1 + u.a * s;
        if (g > price) {
            lo = r;
        } else {
            hi = r;
        }
        const double gp = -u.a * u.a / (e1 * em1) - u.a * u.a * s * (1.0 - s);
        double next = r - (g - price) / gp;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double moved = std::abs(next - r);
        r = next;
        if (moved <= 1e-14 * r) {
            break;
        }
    }
    return r;
}

} // namespace

double oracle_rate(const UtilityFunction& u, double price) {
    if (std::isnan(price) || price <= 0.0) {
        throw DomainError("price must be > 0");
    }
    if (u.kind == UtilityKind::Logarithmic) {
        return std::expm1(lambert_w(u.k / price)) / u.k;
    }
    return sigmoidal_rate(u, price);
}

OracleSolution solve_centralized(const Scenario& scenario, double total_rate) {
    validate_scenario(scenario);
    if (std::isnan(total_rate) || total_rate <= 0.0) {
        throw DomainError("total rate must be > 0");
    }

    struct Entry {
        std::string id;
        int sector;
        UtilityFunction utility;
    };
    std::vector<Entry> entries;
    entries.reserve(scenario.users.size());
    for (const UserSpec& u : scenario.users) {
        entries.push_back(Entry{u.id, u.sector, user_utility(scenario, u)});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return natural_id_less(a.id, b.id);
    });

    std::vector<double> rates(entries.size(), 0.0);
    auto demand = [&](double p) {
        double total = 0.0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            rates[i] = oracle_rate(entries[i].utility, p);
            total += rates[i];
        }
        return total;
    };

    double hi = 1.0;
    while (demand(hi) >= total_rate) {
        hi *= 2.0;
        if (hi > 1e15) {
            throw InternalError("clearing price bracket ran away");
        }
    }
    double lo = 1e-9;
    while (demand(lo) <= total_rate) {
        lo *= 0.5;
        if (lo < 1e-300) {
            throw InternalError("clearing price bracket collapsed");
        }
    }

    const double tolerance = 1e-9 * total_rate;
    double price = 0.0;
    bool matched = false;
    for (int it = 0; it < 200; ++it) {
        price = 0.5 * (lo + hi);
        const double d = demand(price);
        if (std::abs(d - total_rate) <= tolerance) {
            matched = true;
            break;
        }
        if (d > total_rate) {
            lo = price;
        } else {
            hi = price;
        }
    }
    if (!matched) {
        throw InternalError("clearing price bisection did not meet tolerance");
    }

    OracleSolution solution;
    solution.price = price;
    solution.rates = rates;
    solution.sector_rates.assign(static_cast<std::size_t>(scenario.sectors), 0.0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        solution.user_ids.push_back(entries[i].id);
        solution.user_sectors.push_back(entries[i].sector);
        solution.sector_rates[static_cast<std::size_t>(entries[i].sector - 1)] += rates[i];
    }
    return solution;
}

DiffSummary compare(const ConvergenceReport& report, const OracleSolution& oracle) {
    if (report.user_ids != oracle.user_ids) {
        throw DomainError("report and oracle cover different user rosters");
    }
    if (report.sector_rates.size() != oracle.sector_rates.size()) {
        throw DomainError("report and oracle cover different direction counts");
    }
    DiffSummary diff;
    for (std::size_t i = 0; i < report.rates.size(); ++i) {
        diff.max_rate_diff =
            std::max(diff.max_rate_diff, std::abs(report.rates[i] - oracle.rates[i]));
    }
    for (double p : report.prices) {
        diff.max_price_diff = std::max(diff.max_price_diff, std::abs(p - oracle.price));
    }
    for (std::size_t l = 0; l < report.sector_rates.size(); ++l) {
        diff.max_sector_diff = std::max(
            diff.max_sector_diff, std::abs(report.sector_rates[l] - oracle.sector_rates[l]));
    }
    return diff;
}

} // namespace cellalloc
