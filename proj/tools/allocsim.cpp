#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cellalloc/engine.hpp"
#include "cellalloc/errors.hpp"
#include "cellalloc/oracle.hpp"
#include "cellalloc/results.hpp"
#include "cellalloc/scenario.hpp"

namespace {

using namespace cellalloc;

struct CommonFlags {
    std::string scenario_path;
    std::string builtin_name;
    double delta = 0.0;
    int max_iter = 0;
    double damping = 0.0;
    double initial_bid = 0.0;
    int workers = 1;
    std::string format = "text";
    std::string trace_path;
    CLI::Option* delta_opt = nullptr;
    CLI::Option* max_iter_opt = nullptr;
    CLI::Option* damping_opt = nullptr;
    CLI::Option* initial_bid_opt = nullptr;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    auto* source = cmd->add_option_group("scenario source");
    source->add_option("--scenario", f.scenario_path, "Scenario JSON file");
    source->add_option("--builtin", f.builtin_name, "Built-in scenario name")
        ->check(CLI::IsMember({"table1", "table1-unbalanced"}));
    source->require_option(1);

    f.delta_opt = cmd->add_option("--delta", f.delta, "Convergence threshold on direction bids")
                      ->check(CLI::PositiveNumber);
    f.max_iter_opt =
        cmd->add_option("--max-iter", f.max_iter, "Round budget")->check(CLI::PositiveNumber);
    f.damping_opt = cmd->add_option("--damping", f.damping, "Bid damping factor in (0,1]")
                        ->check(CLI::Range(1e-9, 1.0));
    f.initial_bid_opt = cmd->add_option("--initial-bid", f.initial_bid, "First-round bid")
                            ->check(CLI::PositiveNumber);
    cmd->add_option("--workers", f.workers, "Threads for the per-round UE solves")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", f.format, "Report format")
        ->check(CLI::IsMember({"text", "csv"}));
    cmd->add_option("--trace", f.trace_path, "Write a JSONL message log to this path");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read scenario file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Scenario load_scenario(const CommonFlags& f) {
    Scenario s;
    if (!f.scenario_path.empty()) {
        s = parse_scenario(read_file(f.scenario_path));
    } else if (f.builtin_name == "table1") {
        s = builtin_table1();
    } else {
        s = builtin_table1_unbalanced();
    }

    auto apply = [&](const CLI::Option* opt, const char* name, auto& field, auto value) {
        if (opt && opt->count() > 0) {
            if (field != value) {
                std::cerr << "warning: " << name << " overrides scenario value " << field
                          << " with " << value << "\n";
            }
            field = value;
        }
    };
    apply(f.delta_opt, "--delta", s.delta, f.delta);
    apply(f.max_iter_opt, "--max-iter", s.max_iterations, f.max_iter);
    apply(f.damping_opt, "--damping", s.damping, f.damping);
    apply(f.initial_bid_opt, "--initial-bid", s.initial_bid, f.initial_bid);
    validate_scenario(s);
    return s;
}

// Holds the optional trace stream open for the duration of a run.
struct TraceFile {
    std::ofstream stream;
    std::ostream* open(const std::string& path) {
        if (path.empty()) {
            return nullptr;
        }
        stream.open(path, std::ios::binary);
        if (!stream) {
            throw ValidationError("cannot write trace file '" + path + "'");
        }
        return &stream;
    }
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    out << text;
    out.flush();
    if (!out.good()) {
        throw ValidationError("short write to '" + path + "'");
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

void print_run_text(std::ostream& out, const Scenario& s, double rate,
                    const ConvergenceReport& report) {
    out << "scenario " << scenario_fingerprint(s) << ": " << s.users.size() << " users, "
        << s.cells << " cells, " << s.sectors << " sectors\n";
    out << "R = " << fmt(rate) << ", converged in " << report.iterations << " rounds\n";
    for (std::size_t l = 0; l < report.prices.size(); ++l) {
        out << "direction " << l + 1 << ": R^l = " << fmt(report.sector_rates[l])
            << ", p = " << fmt(report.prices[l]) << ", W = " << fmt(report.direction_bids[l])
            << "\n";
    }
    out << "user rates:\n";
    for (std::size_t i = 0; i < report.user_ids.size(); ++i) {
        out << "  " << report.user_ids[i] << " (cell " << report.user_cells[i] << ", sector "
            << report.user_sectors[i] << "): " << fmt(report.rates[i]) << "\n";
    }
}

void print_run_csv(std::ostream& out, const ConvergenceReport& report) {
    out << "user,cell,sector,rate\n";
    for (std::size_t i = 0; i < report.user_ids.size(); ++i) {
        out << report.user_ids[i] << "," << report.user_cells[i] << ","
            << report.user_sectors[i] << "," << fmt(report.rates[i]) << "\n";
    }
}

std::vector<double> sweep_points(const std::string& spec) {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    int consumed = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%n", &start, &stop, &step, &consumed) != 3 ||
        consumed != static_cast<int>(spec.size())) {
        throw ValidationError("--sweep expects start:stop:step, got '" + spec + "'");
    }
    if (!(start > 0.0) || !(step > 0.0)) {
        throw ValidationError("--sweep start and step must be > 0");
    }
    if (start > stop) {
        throw ValidationError("--sweep start exceeds stop");
    }
    std::vector<double> points;
    const long long count = static_cast<long long>((stop - start) / step + 1e-9);
    for (long long i = 0; i <= count; ++i) {
        points.push_back(start + step * static_cast<double>(i));
    }
    return points;
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed rate allocation for sectored cellular networks"};
    app.require_subcommand(1);

    auto* cmd_run = app.add_subcommand("run", "Run the bidding protocol at one total rate");
    CommonFlags run_flags;
    double run_rate = 0.0;
    add_common_flags(cmd_run, run_flags);
    cmd_run->add_option("--rate", run_rate, "Total rate budget R")
        ->required()
        ->check(CLI::PositiveNumber);

    auto* cmd_sweep = app.add_subcommand("sweep", "Run a sweep over total rates, writing CSVs");
    CommonFlags sweep_flags;
    std::string sweep_spec;
    std::string sweep_out;
    bool sweep_oracle = false;
    add_common_flags(cmd_sweep, sweep_flags);
    cmd_sweep->add_option("--sweep", sweep_spec, "Rate range start:stop:step")->required();
    cmd_sweep->add_option("--out", sweep_out, "Output directory")->required();
    cmd_sweep->add_flag("--oracle", sweep_oracle,
                        "Also compare against the centralized solution");

    auto* cmd_oracle = app.add_subcommand(
        "oracle-check", "Compare the protocol against the centralized solution");
    CommonFlags oracle_flags;
    double oracle_rate_flag = 0.0;
    add_common_flags(cmd_oracle, oracle_flags);
    cmd_oracle->add_option("--rate", oracle_rate_flag, "Total rate budget R")
        ->required()
        ->check(CLI::PositiveNumber);

    auto* cmd_scenario = app.add_subcommand("scenario", "Write a built-in scenario document");
    std::string scenario_builtin;
    std::string scenario_out;
    cmd_scenario->add_option("--builtin", scenario_builtin, "Built-in scenario name")
        ->required()
        ->check(CLI::IsMember({"table1", "table1-unbalanced"}));
    cmd_scenario->add_option("--out", scenario_out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (cmd_run->parsed()) {
        return run_guarded([&] {
            const Scenario s = load_scenario(run_flags);
            TraceFile trace;
            EngineOptions opt;
            opt.workers = run_flags.workers;
            opt.trace = trace.open(run_flags.trace_path);
            const ConvergenceReport report = run_to_convergence(s, run_rate, opt);
            if (run_flags.format == "csv") {
                print_run_csv(std::cout, report);
            } else {
                print_run_text(std::cout, s, run_rate, report);
            }
            return 0;
        });
    }

    if (cmd_sweep->parsed()) {
        return run_guarded([&] {
            const Scenario s = load_scenario(sweep_flags);
            const std::vector<double> points = sweep_points(sweep_spec);
            TraceFile trace;
            EngineOptions opt;
            opt.workers = sweep_flags.workers;
            opt.trace = trace.open(sweep_flags.trace_path);
            const SweepResult sweep = run_sweep(s, points, opt);

            std::error_code ec;
            std::filesystem::create_directories(sweep_out, ec);
            const auto dir = std::filesystem::path(sweep_out);
            write_text_file((dir / "sector.csv").string(), to_sector_csv(sweep));
            for (int l = 1; l <= s.sectors; ++l) {
                write_text_file((dir / ("rates_sector_" + std::to_string(l) + ".csv")).string(),
                                to_rates_csv(sweep, l));
            }
            if (sweep_oracle) {
                std::vector<OracleSolution> oracles;
                oracles.reserve(points.size());
                for (double rate : points) {
                    oracles.push_back(solve_centralized(s, rate));
                }
                write_text_file((dir / "oracle_diff.csv").string(),
                                to_oracle_csv(sweep, oracles));
            }
            std::cerr << "wrote " << (1 + s.sectors + (sweep_oracle ? 1 : 0)) << " files to "
                      << sweep_out << " (" << points.size() << " rate points)\n";
            return 0;
        });
    }

    if (cmd_oracle->parsed()) {
        return run_guarded([&] {
            const Scenario s = load_scenario(oracle_flags);
            TraceFile trace;
            EngineOptions opt;
            opt.workers = oracle_flags.workers;
            opt.trace = trace.open(oracle_flags.trace_path);
            const ConvergenceReport report = run_to_convergence(s, oracle_rate_flag, opt);
            const OracleSolution oracle = solve_centralized(s, oracle_rate_flag);

            bool rates_ok = true;
            double worst_rate = 0.0;
            for (std::size_t i = 0; i < report.rates.size(); ++i) {
                const double diff = std::abs(report.rates[i] - oracle.rates[i]);
                worst_rate = std::max(worst_rate, diff);
                if (diff > std::max(1e-3, 1e-3 * oracle.rates[i])) {
                    rates_ok = false;
                }
            }
            double worst_price = 0.0;
            for (double p : report.prices) {
                worst_price = std::max(worst_price, std::abs(p - oracle.price) / oracle.price);
            }
            const bool ok = rates_ok && worst_price <= 1e-3;

            std::cout << "R = " << fmt(oracle_rate_flag) << "\n";
            std::cout << "distributed price = " << fmt(report.prices.front())
                      << ", centralized price = " << fmt(oracle.price)
                      << " (relative diff " << fmt(worst_price) << ")\n";
            std::cout << "max |rate difference| = " << fmt(worst_rate) << "\n";
            std::cout << "agreement within max(1e-3, 1e-3*rate) and 1e-3 on price: "
                      << (ok ? "yes" : "NO") << "\n";
            return ok ? 0 : 2;
        });
    }

    return run_guarded([&] {
        const Scenario s = scenario_builtin == "table1" ? builtin_table1()
                                                        : builtin_table1_unbalanced();
        write_text_file(scenario_out, write_scenario(s));
        return 0;
    });
}
