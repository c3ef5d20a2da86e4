// Command-line laboratory for exact witness searches over finite dyadic
// universes: richness certification, partition pipelines, block-structure
// verification, and product constructions, all driven by JSON scenarios.
//
// Usage:
//   crlab <task> --scenario FILE [--threads N] [--csv FILE] [--no-timing]
//                [--trace] [--seed S] [--budget B]
//   crlab run    --scenario FILE [...]        (task taken from the file)
//
// The report is printed to stdout as JSON.  Exit codes: 0 for a positive
// outcome (witness found / certified / holds), 1 for a well-formed negative
// outcome (absent / refuted / violated), 2 for input or domain errors (the
// report then carries an "error" object).

#include "crlab/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct CommonArgs {
    std::string scenario_path;
    unsigned threads = 1;
    std::string csv_path;
    bool no_timing = false;
    bool trace = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> budget;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario_path, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--threads", args.threads, "Worker threads (results are thread-count independent)")
        ->check(CLI::Range(1u, 256u));
    cmd->add_option("--csv", args.csv_path, "Write the tabular view of the report to this file");
    cmd->add_flag("--no-timing", args.no_timing, "Omit the timing block from the report");
    cmd->add_flag("--trace", args.trace, "Include per-stage trace lines in the report");
    cmd->add_option("--seed", args.seed, "Seed for corpus generation (generate-corpus only)");
    cmd->add_option("--budget", args.budget, "Override the enumeration budget");
}

int run_command(const std::string& expected_task, const CommonArgs& args) {
    crlab::Json scenario;
    try {
        std::ifstream in(args.scenario_path);
        if (!in) throw crlab::BadScenario("cannot open '" + args.scenario_path + "'");
        scenario = crlab::Json::parse(in);
    } catch (const crlab::Json::parse_error& e) {
        crlab::Json rep{{"tool", crlab::kToolVersion},
                        {"status", "error"},
                        {"error", {{"code", "BadScenario"}, {"message", e.what()}}}};
        std::cout << rep.dump(2) << "\n";
        return 2;
    } catch (const crlab::Error& e) {
        crlab::Json rep{{"tool", crlab::kToolVersion},
                        {"status", "error"},
                        {"error", {{"code", e.code()}, {"message", e.what()}}}};
        std::cout << rep.dump(2) << "\n";
        return 2;
    }

    crlab::RunOptions opts;
    opts.policy.threads = args.threads;
    opts.include_timing = !args.no_timing;
    opts.trace = args.trace;
    opts.seed = args.seed;
    opts.budget = args.budget;

    crlab::RunResult rr = crlab::run_scenario(scenario, expected_task, opts);
    std::cout << rr.report.dump(2) << "\n";

    if (!args.csv_path.empty() && rr.exit_code != 2) {
        try {
            std::ofstream out(args.csv_path);
            out << crlab::emit_csv(rr.report);
        } catch (const crlab::Error& e) {
            std::cerr << "csv export failed: " << e.what() << "\n";
            return 2;
        }
    }
    return rr.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact witness laboratory over finite dyadic universes"};
    app.set_version_flag("--version", crlab::kToolVersion);
    app.require_subcommand(1);

    static const std::vector<std::string> kTasks = {
        "find-witness",    "find-j-witness",  "certify-r",      "refute-cr",
        "translate-witness", "partition-witness", "verify-ip-star", "verify-theta-star",
        "empirical-l",     "product-witness", "check-tree",     "check-family",
        "generate-corpus"};

    std::vector<std::pair<CLI::App*, CommonArgs>> cmds;
    cmds.reserve(kTasks.size() + 1);
    for (const auto& t : kTasks) {
        cmds.emplace_back(app.add_subcommand(t, "Run a '" + t + "' scenario"), CommonArgs{});
        add_common(cmds.back().first, cmds.back().second);
    }
    cmds.emplace_back(app.add_subcommand("run", "Run a scenario, task taken from the file"),
                      CommonArgs{});
    add_common(cmds.back().first, cmds.back().second);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < cmds.size(); ++i) {
        if (!cmds[i].first->parsed()) continue;
        std::string expected = i < kTasks.size() ? kTasks[i] : "";
        return run_command(expected, cmds[i].second);
    }
    return 2;
}
