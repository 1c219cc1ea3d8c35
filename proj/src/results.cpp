#include "cellalloc/results.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cellalloc/errors.hpp"

namespace cellalloc {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

} // namespace

std::string to_rates_csv(const SweepResult& sweep, int direction) {
    if (direction < 1) {
        throw DomainError("direction must be >= 1");
    }
    std::string out = "R";
    if (sweep.runs.empty()) {
        out += "\n";
        return out;
    }
    const ConvergenceReport& first = sweep.runs.front().second;
    if (direction > static_cast<int>(first.prices.size())) {
        throw DomainError("direction " + std::to_string(direction) + " out of range");
    }
    std::vector<std::size_t> columns;
    for (std::size_t i = 0; i < first.user_ids.size(); ++i) {
        if (first.user_sectors[i] == direction) {
            columns.push_back(i);
        }
    }
    for (std::size_t i : columns) {
        out += ",";
        out += first.user_ids[i];
    }
    out += "\n";
    for (const auto& [rate, report] : sweep.runs) {
        out += fmt(rate);
        for (std::size_t i : columns) {
            out += ",";
            out += fmt(report.rates[i]);
        }
        out += "\n";
    }
    return out;
}

std::string to_sector_csv(const SweepResult& sweep) {
    std::string out = "R";
    const std::size_t directions =
        sweep.runs.empty() ? 0 : sweep.runs.front().second.prices.size();
    for (std::size_t l = 1; l <= directions; ++l) {
        out += ",R" + std::to_string(l);
    }
    for (std::size_t l = 1; l <= directions; ++l) {
        out += ",p" + std::to_string(l);
    }
    out += ",iterations\n";
    for (const auto& [rate, report] : sweep.runs) {
        out += fmt(rate);
        for (double r : report.sector_rates) {
            out += ",";
            out += fmt(r);
        }
        for (double p : report.prices) {
            out += ",";
            out += fmt(p);
        }
        out += "," + std::to_string(report.iterations) + "\n";
    }
    return out;
}

std::string to_oracle_csv(const SweepResult& sweep, const std::vector<OracleSolution>& oracles) {
    if (sweep.runs.size() != oracles.size()) {
        throw DomainError("sweep and oracle solution counts differ");
    }
    std::string out = "R,rate_diff,price_diff,sector_diff\n";
    for (std::size_t n = 0; n < sweep.runs.size(); ++n) {
        const ConvergenceReport& report = sweep.runs[n].second;
        const OracleSolution& oracle = oracles[n];
        if (report.user_ids != oracle.user_ids) {
            throw DomainError("sweep and oracle cover different user rosters");
        }
        double rate_diff = 0.0;
        for (std::size_t i = 0; i < report.rates.size(); ++i) {
            rate_diff = std::max(rate_diff, std::abs(report.rates[i] - oracle.rates[i]) /
                                                std::max(1.0, oracle.rates[i]));
        }
        double price_diff = 0.0;
        for (double p : report.prices) {
            price_diff = std::max(price_diff, std::abs(p - oracle.price) / oracle.price);
        }
        double sector_diff = 0.0;
        for (std::size_t l = 0; l < report.sector_rates.size(); ++l) {
            sector_diff = std::max(sector_diff,
                                   std::abs(report.sector_rates[l] - oracle.sector_rates[l]) /
                                       std::max(1.0, oracle.sector_rates[l]));
        }
        out += fmt(sweep.runs[n].first);
        out += "," + fmt(rate_diff) + "," + fmt(price_diff) + "," + fmt(sector_diff) + "\n";
    }
    return out;
}

} // namespace cellalloc
