#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "antipt/cli.hpp"

using namespace antipt::cli;
namespace fs = std::filesystem;

namespace {

std::string temp_file(const std::string& name) {
    return (fs::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("parse_config: positional command with flags") {
    const auto cfg = parse_config({"phase-diagram", "--omega", "0.5", "--grid_count", "11"});
    CHECK(cfg.command == Command::phase_diagram);
    CHECK(cfg.omega == 0.5);
    CHECK(cfg.grid_count == 11);
    CHECK(cfg.grid_min == -4.8);  // command default survives
}

TEST_CASE("parse_config: --command flag form") {
    const auto cfg = parse_config({"--command", "supermodes-vs-r0", "--omega", "0.5"});
    CHECK(cfg.command == Command::supermodes_vs_r0);
    CHECK(cfg.omega == 0.5);
}

TEST_CASE("parse_config: usage errors name the offender") {
    CHECK_THROWS_AS(parse_config({}), UsageError);
    CHECK_THROWS_AS(parse_config({"no-such-command"}), UsageError);
    CHECK_THROWS_AS(parse_config({"dynamics", "--bogus", "1"}), UsageError);
    CHECK_THROWS_AS(parse_config({"dynamics", "--omega"}), UsageError);

    bool threw = false;
    try {
        parse_config({"dynamics", "--omega", "abc"});
    } catch (const UsageError& e) {
        threw = true;
        CHECK(std::string(e.what()).find("omega") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("parse_config: config file supplies a full run, flags override") {
    const std::string path = temp_file("antipt_cli_cfg.json");
    {
        std::ofstream out(path);
        out << R"({"command":"dynamics","omega":0.1,"gamma":0.1,"gamma_prime":0.02})";
    }
    const auto cfg = parse_config({"--config", path});
    CHECK(cfg.command == Command::dynamics);
    CHECK(cfg.omega == 0.1);
    CHECK(cfg.gamma == 0.1);
    CHECK(cfg.gamma_prime == 0.02);

    const auto overridden = parse_config({"--config", path, "--gamma_prime", "0"});
    CHECK(overridden.gamma_prime == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("parse_config: config file rejects unknown keys and bad types") {
    const std::string path = temp_file("antipt_cli_bad.json");
    {
        std::ofstream out(path);
        out << R"({"command":"dynamics","loudness":11})";
    }
    bool threw = false;
    try {
        parse_config({"--config", path});
    } catch (const UsageError& e) {
        threw = true;
        CHECK(std::string(e.what()).find("loudness") != std::string::npos);
    }
    CHECK(threw);

    {
        std::ofstream out(path);
        out << R"({"command":"dynamics","omega":"loud"})";
    }
    CHECK_THROWS_AS(parse_config({"--config", path}), UsageError);
    {
        std::ofstream out(path);
        out << "[1,2,3]";
    }
    CHECK_THROWS_AS(parse_config({"--config", path}), UsageError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(parse_config({"--config", path}), UsageError);
}

TEST_CASE("run: CSV is deterministic and self-describing") {
    RunConfig cfg = parse_config({"mirror-spectrum", "--grid_count", "101"});
    cfg.out = temp_file("antipt_cli_a.csv");
    run(cfg);
    const std::string first = slurp(cfg.out);

    cfg.out = temp_file("antipt_cli_b.csv");
    run(cfg);
    const std::string second = slurp(cfg.out);
    CHECK(first == second);
    CHECK(!first.empty());

    // one metadata comment, then the header row
    std::istringstream lines(first);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# config: {", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "delta,R,T,arg_r");
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 101);

    std::remove(temp_file("antipt_cli_a.csv").c_str());
    std::remove(temp_file("antipt_cli_b.csv").c_str());
}

TEST_CASE("run: every table command produces its documented columns") {
    const struct {
        const char* args[2];
        std::size_t columns;
    } cases[] = {
        {{"mirror-spectrum", "101"}, 4},  {{"r0-curve", "51"}, 2},
        {{"phase-diagram", "25"}, 9},     {{"supermodes-vs-r0", "15"}, 6},
        {{"coupling-map", "21"}, 3},      {{"coupling-vs-w", "15"}, 5},
        {{"eta-curve", "21"}, 3},         {{"transmission", "101"}, 5},
        {{"polaritons", "11"}, 10},       {{"linewidth-scan", "13"}, 2},
    };
    for (const auto& c : cases) {
        RunConfig cfg = parse_config({c.args[0], "--grid_count", c.args[1]});
        cfg.out = temp_file("antipt_cli_cols.csv");
        const auto table = run(cfg);
        CHECK(table.header.size() == c.columns);
        for (const auto& row : table.rows) CHECK(row.size() == c.columns);
        std::remove(cfg.out.c_str());
    }

    RunConfig dyn = parse_config({"dynamics", "--t_max", "5", "--t_count", "51"});
    dyn.out = temp_file("antipt_cli_dyn.csv");
    const auto table = run(dyn);
    CHECK(table.header.size() == 7);
    CHECK(table.rows.size() == 51);
    std::remove(dyn.out.c_str());
}

TEST_CASE("run: physics errors leave no output file") {
    RunConfig cfg = parse_config({"coupling-vs-w"});
    cfg.grid_min = 4.5;  // outside the protected window
    cfg.grid_max = 5.0;
    cfg.out = temp_file("antipt_cli_fail.csv");
    std::remove(cfg.out.c_str());
    CHECK_THROWS(run(cfg));
    CHECK_FALSE(fs::exists(cfg.out));
}
