#include "cellalloc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "cellalloc/errors.hpp"
#include "cellalloc/mme.hpp"
#include "cellalloc/sector.hpp"
#include "cellalloc/ue.hpp"

namespace cellalloc {

namespace {

struct Participant {
    std::string id;
    int cell;
    int sector;
    UtilityFunction utility;
};

std::string sector_agent_name(int cell, int sector) {
    return "cell" + std::to_string(cell) + ".sector" + std::to_string(sector);
}

void trace_message(std::ostream* out, int round, const std::string& sender,
                   const std::string& receiver, const char* variant,
                   nlohmann::ordered_json payload) {
    if (!out) {
        return;
    }
    nlohmann::ordered_json rec;
    rec["round"] = round;
    rec["sender"] = sender;
    rec["receiver"] = receiver;
    rec["variant"] = variant;
    rec["payload"] = std::move(payload);
    *out << rec.dump() << '\n';
}

// Runs fn(begin, end) over [0, n) on the requested number of threads. The
// work items are independent; any exception is re-thrown on the caller.
void parallel_for(int n, int workers, const std::function<void(int, int)>& fn) {
    if (workers <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    const int used = std::min(workers, n);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const int chunk = (n + used - 1) / used;
    for (int t = 0; t < used; ++t) {
        const int begin = t * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace

ConvergenceReport run_to_convergence(const Scenario& scenario, double total_rate,
                                     const EngineOptions& options) {
    validate_scenario(scenario);
    if (std::isnan(total_rate) || total_rate <= 0.0) {
        throw DomainError("total rate must be > 0");
    }
    if (options.workers < 1) {
        throw DomainError("workers must be >= 1");
    }

    const int cells = scenario.cells;
    const int directions = scenario.sectors;
    std::vector<Participant> users;
    users.reserve(scenario.users.size());
    for (const UserSpec& u : scenario.users) {
        users.push_back(Participant{u.id, u.cell, u.sector, user_utility(scenario, u)});
    }
    std::sort(users.begin(), users.end(), [](const Participant& a, const Participant& b) {
        return natural_id_less(a.id, b.id);
    });
    const int count = static_cast<int>(users.size());

    // Membership per (cell, sector); the global sort keeps each list in
    // ascending user-id order, which pins the aggregation order.
    std::vector<std::vector<int>> members(static_cast<std::size_t>(cells * directions));
    for (int i = 0; i < count; ++i) {
        members[static_cast<std::size_t>((users[i].cell - 1) * directions +
                                         (users[i].sector - 1))].push_back(i);
    }

    const double theta = scenario.damping;
    std::vector<double> bids(static_cast<std::size_t>(count), scenario.initial_bid);
    std::vector<double> new_bids(static_cast<std::size_t>(count), 0.0);
    std::vector<double> prev_totals(static_cast<std::size_t>(directions), 0.0);
    std::vector<std::vector<double>> history;
    std::vector<double> member_bids;

    for (int round = 1; round <= scenario.max_iterations; ++round) {
        if (options.trace) {
            for (int c = 1; c <= cells; ++c) {
                for (int l = 1; l <= directions; ++l) {
                    const auto& idx =
                        members[static_cast<std::size_t>((c - 1) * directions + (l - 1))];
                    for (int i : idx) {
                        trace_message(options.trace, round, users[i].id,
                                      sector_agent_name(c, l), "bid_submit",
                                      {{"user", users[i].id}, {"bid", bids[i]}});
                    }
                }
            }
        }
        std::vector<std::vector<double>> per_cell(
            static_cast<std::size_t>(cells),
            std::vector<double>(static_cast<std::size_t>(directions), 0.0));
        for (int c = 1; c <= cells; ++c) {
            for (int l = 1; l <= directions; ++l) {
                const auto& idx = members[static_cast<std::size_t>((c - 1) * directions + (l - 1))];
                member_bids.clear();
                for (int i : idx) {
                    member_bids.push_back(bids[static_cast<std::size_t>(i)]);
                }
                per_cell[c - 1][l - 1] = aggregate_bids(member_bids);
                if (options.trace) {
                    trace_message(options.trace, round, sector_agent_name(c, l), "mme",
                                  "sector_aggregate",
                                  {{"cell", c}, {"sector", l}, {"W", per_cell[c - 1][l - 1]}});
                }
            }
        }

        const std::vector<double> totals = total_direction_bids(per_cell);
        history.push_back(totals);
        const bool stop = check_convergence(
            MmeState{total_rate, totals, prev_totals, {}, scenario.delta});

        const std::vector<double> sector_rates = allocate_sector_rates(totals, total_rate);
        std::vector<double> prices(static_cast<std::size_t>(directions));
        for (int l = 0; l < directions; ++l) {
            prices[l] = compute_price(totals[l], sector_rates[l]);
        }

        if (stop) {
            if (options.trace) {
                for (int c = 1; c <= cells; ++c) {
                    for (int l = 1; l <= directions; ++l) {
                        trace_message(options.trace, round, "mme", sector_agent_name(c, l),
                                      "stop", nlohmann::ordered_json::object());
                    }
                }
                for (int c = 1; c <= cells; ++c) {
                    for (int l = 1; l <= directions; ++l) {
                        trace_message(options.trace, round, sector_agent_name(c, l),
                                      sector_agent_name(c, l) + ".users", "stop",
                                      nlohmann::ordered_json::object());
                    }
                }
            }
            ConvergenceReport report;
            report.iterations = round;
            report.user_ids.reserve(users.size());
            for (const Participant& u : users) {
                report.user_ids.push_back(u.id);
                report.user_cells.push_back(u.cell);
                report.user_sectors.push_back(u.sector);
            }
            report.rates.resize(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i) {
                // Converged bids restated as rates at the final price, so the
                // per-direction totals close exactly: sum w_i / p_l = R^l.
                report.rates[i] = bids[i] / prices[users[i].sector - 1];
            }
            report.prices = prices;
            report.sector_rates = sector_rates;
            report.direction_bids = totals;
            if (options.record_history) {
                report.bid_history = history;
            }
            return report;
        }

        if (options.trace) {
            for (int c = 1; c <= cells; ++c) {
                for (int l = 1; l <= directions; ++l) {
                    trace_message(options.trace, round, "mme", sector_agent_name(c, l),
                                  "mme_response",
                                  {{"sector", l},
                                   {"R", sector_rates[l - 1]},
                                   {"W", totals[l - 1]}});
                }
            }
            for (int c = 1; c <= cells; ++c) {
                for (int l = 1; l <= directions; ++l) {
                    trace_message(options.trace, round, sector_agent_name(c, l),
                                  sector_agent_name(c, l) + ".users", "price_broadcast",
                                  {{"sector", l}, {"p", prices[l - 1]}});
                }
            }
        }

        parallel_for(count, options.workers, [&](int begin, int end) {
            for (int i = begin; i < end; ++i) {
                const double price = prices[users[i].sector - 1];
                const BidUpdate update = make_bid(users[i].utility, price, total_rate);
                new_bids[i] = update.bid;
            }
        });
        for (int i = 0; i < count; ++i) {
            bids[i] = (1.0 - theta) * bids[i] + theta * new_bids[i];
        }
        prev_totals = totals;
    }

    throw NonConvergence("no convergence within " + std::to_string(scenario.max_iterations) +
                             " rounds (R=" + std::to_string(total_rate) +
                             ", delta=" + std::to_string(scenario.delta) +
                             ", damping=" + std::to_string(theta) + ")",
                         total_rate, scenario.max_iterations, std::move(history));
}

SweepResult run_sweep(const Scenario& scenario, const std::vector<double>& total_rates,
                      const EngineOptions& options) {
    if (total_rates.empty()) {
        throw DomainError("sweep needs at least one total rate");
    }
    for (std::size_t i = 0; i < total_rates.size(); ++i) {
        if (std::isnan(total_rates[i]) || total_rates[i] <= 0.0) {
            throw DomainError("sweep rates must be > 0");
        }
        if (i > 0 && total_rates[i] <= total_rates[i - 1]) {
            throw DomainError("sweep rates must be strictly increasing");
        }
    }
    SweepResult result;
    result.fingerprint = scenario_fingerprint(scenario);
    result.runs.reserve(total_rates.size());
    for (double rate : total_rates) {
        result.runs.emplace_back(rate, run_to_convergence(scenario, rate, options));
    }
    return result;
}

} // namespace cellalloc
