#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "support.hpp"

namespace {

namespace fs = std::filesystem;

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

CommandResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path out_path =
        fs::temp_directory_path() / ("trustnet_cli_out_" + std::to_string(counter));
    const fs::path err_path =
        fs::temp_directory_path() / ("trustnet_cli_err_" + std::to_string(counter));
    ++counter;

    const std::string command = env_prefix + std::string(TRUSTNET_CLI_PATH) + " " + args + " > " +
                                out_path.string() + " 2> " + err_path.string();
    const int status = std::system(command.c_str());

    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return result;
}

const fs::path kScenarioDir = TRUSTNET_SCENARIO_DIR;

}  // namespace

TEST_CASE("compute on the bundled worked example") {
    const CommandResult result = run_cli("compute " + (kScenarioDir / "table1.json").string());
    REQUIRE(result.exit_code == 0);

    const auto report = nlohmann::json::parse(result.out);
    CHECK(std::abs(report.at("trust").get<double>() - 0.430) <= 0.005);
    CHECK(std::abs(report.at("own_component").get<double>() - 0.278) <= 0.003);
    CHECK(std::abs(report.at("witness_component").get<double>() - 0.153) <= 0.003);
    CHECK(report.at("per_witness").size() == 5);
}

TEST_CASE("compute with the strategy override") {
    const CommandResult result =
        run_cli("compute " + (kScenarioDir / "table1.json").string() + " --agr mean-weighted");
    REQUIRE(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.out);
    CHECK(std::abs(report.at("trust").get<double>() - 0.476) <= 0.005);
}

TEST_CASE("compute with no witnesses and no guarantee yields zero") {
    const fs::path path = fs::temp_directory_path() / "trustnet_cli_bare.json";
    write_file(path, R"({
      "agents": [{"id": "a"}, {"id": "b", "reputation": 5, "transactions": 9}],
      "query": {"requester": "a", "target": "b"}
    })");
    const CommandResult result = run_cli("compute " + path.string());
    REQUIRE(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.out);
    CHECK(report.at("trust").get<double>() == 0.0);
    fs::remove(path);
}

TEST_CASE("malformed scenarios exit 1 and name the field") {
    const fs::path path = fs::temp_directory_path() / "trustnet_cli_bad.json";
    write_file(path, R"({"agents": [{"id": "a", "reliability": "high"}],
                         "query": {"requester": "a", "target": "b"}})");
    const CommandResult result = run_cli("compute " + path.string());
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("reliability") != std::string::npos);
    CHECK(result.out.empty());
    fs::remove(path);
}

TEST_CASE("missing scenario files exit 2") {
    const CommandResult result = run_cli("compute /nonexistent/trustnet_scenario.json");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("cannot open") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("compute").exit_code == 1);
    CHECK(run_cli("frobnicate x.json").exit_code == 1);
    CHECK(run_cli("compute x.json --agr median").exit_code == 1);
}

TEST_CASE("validate subcommand") {
    CHECK(run_cli("validate " + (kScenarioDir / "table1.json").string()).exit_code == 0);
    CHECK(run_cli("validate " + (kScenarioDir / "liar_vs_honest.json").string()).exit_code == 0);
    CHECK(run_cli("validate " + (kScenarioDir / "random_society_50.json").string()).exit_code ==
          0);

    const fs::path path = fs::temp_directory_path() / "trustnet_cli_weights.json";
    write_file(path, R"({
      "agents": [{"id": "a"}, {"id": "b"}],
      "query": {"requester": "a", "target": "b", "own_weight": 0.6, "witness_weight": 0.6}
    })");
    const CommandResult bad_weights = run_cli("validate " + path.string());
    CHECK(bad_weights.exit_code == 1);
    CHECK(bad_weights.err.find("own_weight+witness_weight") != std::string::npos);
    fs::remove(path);

    const fs::path edge_path = fs::temp_directory_path() / "trustnet_cli_edge.json";
    write_file(edge_path, R"({
      "agents": [{"id": "a"}, {"id": "b"}],
      "edges": [["a", "ghost"]],
      "query": {"requester": "a", "target": "b"}
    })");
    const CommandResult bad_edge = run_cli("validate " + edge_path.string());
    CHECK(bad_edge.exit_code == 1);
    CHECK(bad_edge.err.find("ghost") != std::string::npos);
    fs::remove(edge_path);
}

TEST_CASE("simulate writes deterministic results and figures") {
    const fs::path dir_a = fs::temp_directory_path() / "trustnet_cli_sim_a";
    const fs::path dir_b = fs::temp_directory_path() / "trustnet_cli_sim_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    const std::string scenario = (kScenarioDir / "liar_vs_honest.json").string();
    const CommandResult first = run_cli("simulate " + scenario + " --out " + dir_a.string());
    REQUIRE(first.exit_code == 0);
    CHECK(first.out.find("seed 7") != std::string::npos);
    REQUIRE(fs::exists(dir_a / "result.json"));
    REQUIRE(fs::exists(dir_a / "fig2.csv"));
    REQUIRE(fs::exists(dir_a / "fig3.csv"));

    const CommandResult second = run_cli("simulate " + scenario + " --out " + dir_b.string());
    REQUIRE(second.exit_code == 0);
    CHECK(read_file(dir_a / "result.json") == read_file(dir_b / "result.json"));
    CHECK(read_file(dir_a / "fig2.csv") == read_file(dir_b / "fig2.csv"));

    const auto result = nlohmann::json::parse(read_file(dir_a / "result.json"));
    const auto& trajectories = result.at("weight_trajectories").at("buyer");
    CHECK(trajectories.at("liar_witness").back().get<double>() < 0.5);
    CHECK(trajectories.at("honest_witness").back().get<double>() >
          trajectories.at("liar_witness").back().get<double>());
    CHECK(result.at("rng_algorithm") == "splitmix64");

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("simulate across several seeds") {
    const fs::path dir = fs::temp_directory_path() / "trustnet_cli_seeds";
    fs::remove_all(dir);
    const CommandResult result = run_cli(
        "simulate " + (kScenarioDir / "liar_vs_honest.json").string() + " --out " + dir.string() +
        " --seeds 3");
    REQUIRE(result.exit_code == 0);
    for (int seed = 7; seed <= 9; ++seed) {
        CHECK(fs::exists(dir / ("seed_" + std::to_string(seed)) / "result.json"));
        CHECK(fs::exists(dir / ("seed_" + std::to_string(seed)) / "fig2.csv"));
    }
    fs::remove_all(dir);
}

TEST_CASE("the 50-agent society simulates end to end") {
    const fs::path dir = fs::temp_directory_path() / "trustnet_cli_r50";
    fs::remove_all(dir);
    const CommandResult result = run_cli(
        "simulate " + (kScenarioDir / "random_society_50.json").string() + " --out " +
        dir.string());
    REQUIRE(result.exit_code == 0);
    const auto json = nlohmann::json::parse(read_file(dir / "result.json"));
    CHECK(json.at("summary").at("rounds") == 40);
    fs::remove_all(dir);
}

TEST_CASE("unusable output locations exit 2") {
    const fs::path blocker = fs::temp_directory_path() / "trustnet_cli_blocker";
    write_file(blocker, "x");
    const CommandResult result =
        run_cli("simulate " + (kScenarioDir / "liar_vs_honest.json").string() + " --out " +
                (blocker / "out").string());
    CHECK(result.exit_code == 2);
    fs::remove(blocker);
}

TEST_CASE("TRUSTNET_LOG adds stderr diagnostics but stdout stays machine-readable") {
    const CommandResult result = run_cli("compute " + (kScenarioDir / "table1.json").string(),
                                         "TRUSTNET_LOG=debug ");
    REQUIRE(result.exit_code == 0);
    CHECK(!result.err.empty());
    CHECK(nlohmann::json::parse(result.out).is_object());

    const CommandResult quiet = run_cli("compute " + (kScenarioDir / "table1.json").string());
    CHECK(quiet.err.empty());
}
