// trustnet command line: one-shot trust computations, scenario validation,
// and full society simulations with figure-data export.
//
// Exit codes: 0 success, 1 validation/usage error, 2 I/O error. Diagnostics
// go to stderr (TRUSTNET_LOG controls verbosity); stdout stays
// machine-readable.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "trustnet/aggregate.hpp"
#include "trustnet/errors.hpp"
#include "trustnet/log.hpp"
#include "trustnet/scenario.hpp"
#include "trustnet/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

nlohmann::ordered_json trust_report_to_json(const trustnet::TrustReport& report) {
    nlohmann::ordered_json root;
    root["trust"] = report.trust;
    root["own_component"] = report.own_component;
    root["witness_component"] = report.witness_component;
    root["agr"] = report.agr;
    root["deviation"] = report.deviation;
    root["per_witness"] = nlohmann::ordered_json::array();
    for (const trustnet::WitnessContribution& w : report.per_witness) {
        nlohmann::ordered_json entry;
        entry["witness"] = w.witness;
        entry["raw_score"] = w.raw_score;
        entry["theta"] = w.theta;
        entry["weighted_score"] = w.weighted_score;
        root["per_witness"].push_back(std::move(entry));
    }
    return root;
}

trustnet::AgrStrategy parse_strategy_flag(const std::string& text) {
    return text == "pooled" ? trustnet::AgrStrategy::pooled
                            : trustnet::AgrStrategy::mean_weighted;
}

int run_compute(const std::filesystem::path& scenario_path,
                const std::optional<std::string>& strategy_override) {
    trustnet::Scenario scenario = trustnet::load_scenario(scenario_path);
    trustnet::ensure_valid(scenario);
    if (strategy_override) {
        scenario.query.strategy = parse_strategy_flag(*strategy_override);
    }

    const trustnet::ReferralGraph graph = trustnet::build_graph(scenario);
    const trustnet::Ledger ledger = trustnet::build_ledger(scenario);
    const trustnet::WeightTable weights = trustnet::build_weight_table(scenario);
    const trustnet::WitnessQuery query{scenario.query.requester, scenario.query.target,
                                       scenario.query.depth_limit};
    const trustnet::TrustReport report =
        trustnet::trust_query(graph, ledger, weights, trustnet::build_records(scenario), query,
                              scenario.query.weights, scenario.query.strategy);

    trustnet::log_debug("strategy: " + std::string(trustnet::to_string(scenario.query.strategy)));
    std::cout << trust_report_to_json(report).dump(2) << '\n';
    return kExitOk;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw trustnet::IoError("cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        throw trustnet::IoError("failed while writing " + path.string());
    }
}

int run_simulate(const std::filesystem::path& scenario_path, const std::filesystem::path& out_dir,
                 unsigned seeds) {
    const trustnet::Scenario scenario = trustnet::load_scenario(scenario_path);
    trustnet::ensure_valid(scenario);
    if (!scenario.simulation) {
        throw trustnet::ScenarioError(
            "scenario.simulation: missing required field (nothing to simulate)");
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw trustnet::IoError("cannot create output directory " + out_dir.string() +
                                (ec ? ": " + ec.message() : ""));
    }

    const std::uint64_t base_seed = scenario.simulation->seed;
    std::vector<std::future<trustnet::SimResult>> runs;
    runs.reserve(seeds);
    for (unsigned i = 0; i < seeds; ++i) {
        runs.push_back(std::async(std::launch::async, [&scenario, base_seed, i] {
            return trustnet::run_scenario(scenario, base_seed + i);
        }));
    }

    for (unsigned i = 0; i < seeds; ++i) {
        const trustnet::SimResult result = runs[i].get();
        const std::uint64_t seed = base_seed + i;
        const std::filesystem::path run_dir =
            seeds == 1 ? out_dir : out_dir / ("seed_" + std::to_string(seed));
        std::filesystem::create_directories(run_dir, ec);
        if (ec || !std::filesystem::is_directory(run_dir)) {
            throw trustnet::IoError("cannot create output directory " + run_dir.string());
        }
        write_text_file(run_dir / "result.json", result.to_json());
        trustnet::export_figures(result, run_dir);

        const trustnet::RoundQueryResult& last = result.rounds.back();
        std::cout << "seed " << seed << ": rounds=" << result.summary.rounds
                  << " final_trust=" << last.report.trust
                  << " deviation_flags=" << result.summary.deviation_flag_count << " -> "
                  << (run_dir / "result.json").string() << '\n';
    }
    return kExitOk;
}

int run_validate(const std::filesystem::path& scenario_path) {
    const trustnet::Scenario scenario = trustnet::load_scenario(scenario_path);
    const std::vector<std::string> findings = trustnet::validate(scenario);
    if (findings.empty()) {
        std::cout << "valid\n";
        return kExitOk;
    }
    for (const std::string& finding : findings) {
        std::cerr << finding << '\n';
    }
    return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trust metrics over agent societies: composite trust scores from self-reported "
                 "reputation and credibility-weighted witness ratings"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::optional<std::string> agr_override;
    CLI::App* compute = app.add_subcommand("compute", "run one trust query and print the report");
    compute->add_option("scenario", scenario_arg, "scenario file (JSON)")->required();
    compute
        ->add_option("--agr", agr_override,
                     "aggregation strategy override: pooled|mean-weighted")
        ->check(CLI::IsMember({"pooled", "mean-weighted", "mean_weighted"}));

    std::string sim_scenario_arg;
    std::string out_dir_arg;
    unsigned seeds = 1;
    CLI::App* simulate =
        app.add_subcommand("simulate", "run the scenario's simulation and export results");
    simulate->add_option("scenario", sim_scenario_arg, "scenario file (JSON)")->required();
    simulate->add_option("--out", out_dir_arg, "output directory")->required();
    simulate->add_option("--seeds", seeds, "number of independent seeds to run")
        ->check(CLI::PositiveNumber);

    std::string validate_arg;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "check a scenario file against all invariants");
    validate_cmd->add_option("scenario", validate_arg, "scenario file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (compute->parsed()) {
            return run_compute(scenario_arg, agr_override);
        }
        if (simulate->parsed()) {
            return run_simulate(sim_scenario_arg, out_dir_arg, seeds);
        }
        return run_validate(validate_arg);
    } catch (const trustnet::IoError& err) {
        std::cerr << err.what() << '\n';
        return kExitIo;
    } catch (const trustnet::ScenarioError& err) {
        std::cerr << err.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& err) {
        std::cerr << err.what() << '\n';
        return kExitValidation;
    }
}
