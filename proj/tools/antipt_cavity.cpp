#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "antipt/checks.hpp"
#include "antipt/cli.hpp"
#include "antipt/numerics.hpp"

namespace {

int run_validate() {
    const auto results = antipt::checks::run_all();
    int failures = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failures;
        std::printf("%s %s %.6g %.6g%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.measured, r.tolerance, r.note.empty() ? "" : "  # ",
                    r.note.c_str());
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::fputs(antipt::cli::usage_text(), args.empty() ? stderr : stdout);
        return args.empty() ? 1 : 0;
    }

    antipt::cli::RunConfig config;
    try {
        config = antipt::cli::parse_config(args);
    } catch (const antipt::cli::UsageError& e) {
        std::fprintf(stderr, "error: %s\n\n%s", e.what(), antipt::cli::usage_text());
        return 1;
    }

    try {
        if (config.command == antipt::cli::Command::validate) return run_validate();
        const auto table = antipt::cli::run(config);
        std::printf("wrote %s (%zu rows)\n", antipt::cli::output_path(config).c_str(),
                    table.rows.size());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error [%s]: %s\n", antipt::cli::command_name(config.command),
                     e.what());
        return 2;
    }
}
