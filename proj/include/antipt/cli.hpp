#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace antipt::cli {

/// Command-line / config-file mistakes; the binary maps these to exit 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& message) : std::runtime_error(message) {}
};

enum class Command {
    mirror_spectrum,
    r0_curve,
    phase_diagram,
    supermodes_vs_r0,
    coupling_map,
    coupling_vs_w,
    eta_curve,
    transmission,
    polaritons,
    linewidth_scan,
    dynamics,
    validate,
};

const char* command_name(Command c);

/// Fully resolved run request. Numeric fields default per command; flags
/// override config-file values which override the defaults.
struct RunConfig {
    Command command = Command::validate;
    double omega = 0.0;
    double gamma = 0.2;
    double delta_omega = 0.0;
    double gamma_prime = 0.0;
    double x_p = 0.25;
    double grid_min = 0.0;
    double grid_max = 1.0;
    int grid_count = 2;
    double t_max = 75.0;
    double dt = 0.005;
    int t_count = 1501;
    std::string out;  // empty: "<command>.csv"
};

struct ResultTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::string metadata;  // resolved config as a JSON object
};

/// Parses `<command> [--key value ...] [--config file] [--out path]`.
/// Unknown keys, malformed numbers and unreadable config files raise
/// UsageError naming the offender.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes a table command and writes its CSV (computed fully before the
/// file is opened, so failures leave no partial output). The validate
/// command is handled by the binary, not here.
ResultTable run(const RunConfig& config);

/// CSV text exactly as written to disk: one `# config: {...}` comment line,
/// a column-name row, then data with 12 significant digits.
std::string format_csv(const ResultTable& table);

std::string output_path(const RunConfig& config);

const char* usage_text();

}  // namespace antipt::cli
