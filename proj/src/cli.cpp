#include "antipt/cli.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "antipt/dynamics.hpp"
#include "antipt/model.hpp"
#include "antipt/nonhermitian.hpp"
#include "antipt/numerics.hpp"
#include "antipt/polaritons.hpp"
#include "antipt/scattering.hpp"

namespace antipt::cli {

namespace {

struct CommandInfo {
    Command command;
    const char* name;
    RunConfig defaults;
};

RunConfig make_defaults(Command c, double omega, double gamma, double delta_omega,
                        double gamma_prime, double grid_min, double grid_max, int grid_count) {
    RunConfig r;
    r.command = c;
    r.omega = omega;
    r.gamma = gamma;
    r.delta_omega = delta_omega;
    r.gamma_prime = gamma_prime;
    r.grid_min = grid_min;
    r.grid_max = grid_max;
    r.grid_count = grid_count;
    return r;
}

const std::vector<CommandInfo>& command_table() {
    static const std::vector<CommandInfo> table = [] {
        std::vector<CommandInfo> t;
        t.push_back({Command::mirror_spectrum, "mirror-spectrum",
                     make_defaults(Command::mirror_spectrum, 0.0, 0.2, 0.0, 0.0, -5.0, 5.0, 1001)});
        t.push_back({Command::r0_curve, "r0-curve",
                     make_defaults(Command::r0_curve, 0.0, 0.2, 0.0, 0.0, -6.0, 6.0, 1201)});
        t.push_back({Command::phase_diagram, "phase-diagram",
                     make_defaults(Command::phase_diagram, 0.0, 0.2, 0.0, 0.0, -4.8, 4.8, 961)});
        t.push_back({Command::supermodes_vs_r0, "supermodes-vs-r0",
                     make_defaults(Command::supermodes_vs_r0, 0.0, 0.2, 0.0, 0.0, 0.3, 1.0, 701)});
        t.push_back({Command::coupling_map, "coupling-map",
                     make_defaults(Command::coupling_map, 0.0, 0.2, 0.0, 0.0, 0.005, 0.995, 199)});
        t.push_back({Command::coupling_vs_w, "coupling-vs-w",
                     make_defaults(Command::coupling_vs_w, 0.0, 0.2, 0.0, 0.0, 0.02, 3.98, 199)});
        t.push_back({Command::eta_curve, "eta-curve",
                     make_defaults(Command::eta_curve, 0.0, 0.2, 0.0, 0.0, 0.01, 1.0, 100)});
        t.push_back({Command::transmission, "transmission",
                     make_defaults(Command::transmission, 0.2, 0.2, 0.0, 0.0, -1.5, 1.5, 2001)});
        t.push_back({Command::polaritons, "polaritons",
                     make_defaults(Command::polaritons, 0.0, 0.005, 0.0, 0.0, 0.05, 3.95, 391)});
        t.push_back({Command::linewidth_scan, "linewidth-scan",
                     make_defaults(Command::linewidth_scan, 0.2, 0.2, 0.0, 0.0, 0.02, 0.5, 97)});
        t.push_back({Command::dynamics, "dynamics",
                     make_defaults(Command::dynamics, 0.1, 0.1, 0.0, 0.0, 0.0, 1.0, 2)});
        t.push_back({Command::validate, "validate",
                     make_defaults(Command::validate, 0.0, 0.2, 0.0, 0.0, 0.0, 1.0, 2)});
        return t;
    }();
    return table;
}

const CommandInfo& info_for(const std::string& name) {
    for (const auto& info : command_table())
        if (name == info.name) return info;
    throw UsageError("unknown command '" + name + "'");
}

const CommandInfo& info_for(Command c) {
    for (const auto& info : command_table())
        if (c == info.command) return info;
    throw UsageError("unknown command");
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError("invalid numeric value for " + key + ": '" + text + "'");
    }
}

int parse_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError("invalid integer value for " + key + ": '" + text + "'");
    }
}

enum class KeyKind { number, integer, text };

const std::map<std::string, KeyKind>& known_keys() {
    static const std::map<std::string, KeyKind> keys = {
        {"command", KeyKind::text},    {"out", KeyKind::text},
        {"omega", KeyKind::number},    {"gamma", KeyKind::number},
        {"delta_omega", KeyKind::number}, {"gamma_prime", KeyKind::number},
        {"x_p", KeyKind::number},      {"grid_min", KeyKind::number},
        {"grid_max", KeyKind::number}, {"grid_count", KeyKind::integer},
        {"t_max", KeyKind::number},    {"dt", KeyKind::number},
        {"t_count", KeyKind::integer},
    };
    return keys;
}

void apply_value(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "omega") config.omega = parse_double("omega", value);
    else if (key == "gamma") config.gamma = parse_double("gamma", value);
    else if (key == "delta_omega") config.delta_omega = parse_double("delta_omega", value);
    else if (key == "gamma_prime") config.gamma_prime = parse_double("gamma_prime", value);
    else if (key == "x_p") config.x_p = parse_double("x_p", value);
    else if (key == "grid_min") config.grid_min = parse_double("grid_min", value);
    else if (key == "grid_max") config.grid_max = parse_double("grid_max", value);
    else if (key == "grid_count") config.grid_count = parse_int("grid_count", value);
    else if (key == "t_max") config.t_max = parse_double("t_max", value);
    else if (key == "dt") config.dt = parse_double("dt", value);
    else if (key == "t_count") config.t_count = parse_int("t_count", value);
    else if (key == "out") config.out = value;
    else if (key != "command") throw UsageError("unknown option --" + key);
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a flat JSON object");

    std::map<std::string, std::string> values;
    for (const auto& [key, value] : j.items()) {
        const auto it = known_keys().find(key);
        if (it == known_keys().end())
            throw UsageError("unknown key '" + key + "' in config file");
        if (it->second == KeyKind::text) {
            if (!value.is_string())
                throw UsageError("key '" + key + "' in config file must be a string");
            values[key] = value.get<std::string>();
        } else {
            if (!value.is_number())
                throw UsageError("key '" + key + "' in config file must be a number");
            std::ostringstream os;
            os.precision(17);
            os << value.get<double>();
            values[key] = os.str();
        }
    }
    return values;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string metadata_json(const RunConfig& config) {
    nlohmann::json j;
    j["command"] = command_name(config.command);
    j["omega"] = config.omega;
    j["gamma"] = config.gamma;
    j["delta_omega"] = config.delta_omega;
    j["gamma_prime"] = config.gamma_prime;
    j["x_p"] = config.x_p;
    j["grid_min"] = config.grid_min;
    j["grid_max"] = config.grid_max;
    j["grid_count"] = config.grid_count;
    j["t_max"] = config.t_max;
    j["dt"] = config.dt;
    j["t_count"] = config.t_count;
    return j.dump();
}

scattering::SweepGrid grid_of(const RunConfig& config) {
    return {config.grid_min, config.grid_max, config.grid_count};
}

model::CavityConfig cavity_of(const RunConfig& config, bool include_probe) {
    model::CavityConfig c;
    c.omega = config.omega;
    c.probe_decay = config.gamma;
    c.probe_detuning = config.delta_omega;
    c.free_space_decay = config.gamma_prime;
    c.probe_position = config.x_p;
    c.include_probe = include_probe;
    return c;
}

ResultTable run_mirror_spectrum(const RunConfig& config) {
    ResultTable table;
    table.header = {"delta", "R", "T", "arg_r"};
    const auto chain = model::build_dimer(config.omega);
    for (const auto& p : scattering::sweep(chain, grid_of(config)))
        table.rows.push_back({p.delta, p.R, p.T, p.phase_r});
    return table;
}

ResultTable run_r0_curve(const RunConfig& config) {
    ResultTable table;
    table.header = {"w", "r0"};
    for (const double w : grid_of(config).values())
        table.rows.push_back({w, scattering::r0_closed(w)});
    return table;
}

ResultTable run_phase_diagram(const RunConfig& config) {
    ResultTable table;
    table.header = {"w", "re_e1", "re_e2", "re_e3", "re_e4",
                    "im_e1", "im_e2", "im_e3", "im_e4"};
    for (const double w : grid_of(config).values()) {
        const auto sp = numerics::eig(nonhermitian::build_hc(0.5 * w - 1.0));
        std::vector<double> row{w};
        for (int k = 0; k < 4; ++k) row.push_back(sp.values[k].real());
        for (int k = 0; k < 4; ++k) row.push_back(sp.values[k].imag());
        table.rows.push_back(std::move(row));
    }
    return table;
}

ResultTable run_supermodes_vs_r0(const RunConfig& config) {
    ResultTable table;
    table.header = {"r0", "w", "re_minus", "im_minus", "re_plus", "im_plus"};
    for (const double r0 : grid_of(config).values()) {
        const double w = scattering::invert_r0(r0, scattering::R0Branch::two_peak);
        const auto dec = nonhermitian::block_decompose(0.5 * w - 1.0);
        auto sp = numerics::eig(dec.h1);
        // slow-decay (largest Im) first; ties resolved by real part
        int slow = 0, fast = 1;
        if (sp.values[0].imag() < sp.values[1].imag() ||
            (sp.values[0].imag() == sp.values[1].imag() &&
             sp.values[0].real() > sp.values[1].real())) {
            slow = 1;
            fast = 0;
        }
        table.rows.push_back({r0, w, sp.values[slow].real(), sp.values[slow].imag(),
                              sp.values[fast].real(), sp.values[fast].imag()});
    }
    return table;
}

ResultTable run_coupling_map(const RunConfig& config) {
    ResultTable table;
    table.header = {"x_p", "re_g_r", "im_g_r"};
    for (const auto& [x, g] :
         nonhermitian::coupling_vs_position(config.omega, config.gamma, grid_of(config)))
        table.rows.push_back({x, g.real(), g.imag()});
    return table;
}

ResultTable run_coupling_vs_w(const RunConfig& config) {
    ResultTable table;
    table.header = {"w", "abs_g_r", "arg_g_r", "re_g_r", "im_g_r"};
    for (const double w : grid_of(config).values()) {
        model::CavityConfig c = cavity_of(config, true);
        c.omega = 0.5 * w - 1.0;
        const auto pc = nonhermitian::probe_couplings(c);
        table.rows.push_back(
            {w, std::abs(pc.g_r), std::arg(pc.g_r), pc.g_r.real(), pc.g_r.imag()});
    }
    return table;
}

ResultTable run_eta_curve(const RunConfig& config) {
    ResultTable table;
    table.header = {"r0", "eta_single_peak", "eta_two_peak"};
    for (const double r0 : grid_of(config).values())
        table.rows.push_back(
            {r0, nonhermitian::coupling_factor_from_r0(r0, scattering::R0Branch::single_peak),
             nonhermitian::coupling_factor_from_r0(r0, scattering::R0Branch::two_peak)});
    return table;
}

ResultTable run_transmission(const RunConfig& config) {
    ResultTable table;
    table.header = {"delta", "R", "T", "arg_r", "arg_t"};
    const auto chain = model::build_cavity(cavity_of(config, true));
    for (const auto& p : scattering::sweep(chain, grid_of(config)))
        table.rows.push_back({p.delta, p.R, p.T, p.phase_r, std::arg(p.t)});
    return table;
}

ResultTable run_polaritons(const RunConfig& config) {
    ResultTable table;
    table.header = {"w", "re_e1", "im_e1", "dark1", "re_e2", "im_e2", "dark2",
                    "re_e3", "im_e3", "dark3"};
    for (const double w : grid_of(config).values()) {
        model::CavityConfig c = cavity_of(config, true);
        c.omega = 0.5 * w - 1.0;
        const auto sp = polaritons::polariton_spectrum(c);
        std::vector<double> row{w};
        for (int k = 0; k < 3; ++k) {
            row.push_back(sp.energies[k].real());
            row.push_back(sp.energies[k].imag());
            row.push_back(sp.dark[k] ? 1.0 : 0.0);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

ResultTable run_linewidth_scan(const RunConfig& config) {
    ResultTable table;
    table.header = {"gamma", "linewidth"};
    const auto scan = polaritons::linewidth_vs_gamma(config.omega, grid_of(config));
    for (const auto& [gamma, lw] : scan.points) table.rows.push_back({gamma, lw});
    return table;
}

ResultTable run_dynamics(const RunConfig& config) {
    ResultTable table;
    table.header = {"time", "pop_m1", "pop_m2", "pop_m3", "pop_m4", "pop_probe",
                    "total_excitation"};
    const auto traj = dynamics::rabi_experiment(cavity_of(config, true), config.gamma_prime,
                                                config.t_max, config.t_count);
    for (const auto& p : traj) {
        std::vector<double> row{p.time};
        for (const double v : p.populations) row.push_back(v);
        row.push_back(p.total_excitation);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace

const char* command_name(Command c) { return info_for(c).name; }

const char* usage_text() {
    return
        "usage: antipt-cavity <command> [--key value ...] [--config file.json] [--out path]\n"
        "\n"
        "commands (sweep axis, default grid and parameters in brackets):\n"
        "  mirror-spectrum    dimer R/T vs detuning        [-5..5 x1001, omega 0]\n"
        "  r0-curve           on-resonance R0 vs W         [-6..6 x1201]\n"
        "  phase-diagram      cavity eigenvalues vs W      [-4.8..4.8 x961]\n"
        "  supermodes-vs-r0   supermode pair vs R0         [0.3..1 x701]\n"
        "  coupling-map       g_r vs probe position        [0.005..0.995 x199, omega 0, gamma 0.2]\n"
        "  coupling-vs-w      probe coupling vs W          [0.02..3.98 x199, gamma 0.2]\n"
        "  eta-curve          coupling factor vs R0        [0.01..1 x100]\n"
        "  transmission       cavity + probe R/T vs detuning\n"
        "                                                  [-1.5..1.5 x2001, omega 0.2, gamma 0.2]\n"
        "  polaritons         reduced eigenvalues vs W     [0.05..3.95 x391, gamma 0.005]\n"
        "  linewidth-scan     polariton decay vs gamma     [0.02..0.5 x97, omega 0.2]\n"
        "  dynamics           Rabi populations vs time     [t_max 75, dt 0.005, 1501 samples,\n"
        "                                                   omega 0.1, gamma 0.1]\n"
        "  validate           run the analytic self-check suite\n"
        "\n"
        "keys (unlisted parameters default to: delta_omega 0, gamma_prime 0, x_p 0.25):\n"
        "  --omega X        intra-mirror atomic coupling (units of Gamma)\n"
        "  --gamma X        probe waveguide decay\n"
        "  --delta_omega X  probe detuning\n"
        "  --gamma_prime X  uniform free-space loss\n"
        "  --x_p X          probe position in (0, 1), units of lambda0\n"
        "  --grid_min X --grid_max X --grid_count N   sweep axis of the command\n"
        "  --t_max X --dt X --t_count N               time grid (dynamics)\n"
        "  --config FILE    flat JSON object with the same keys; flags override it\n"
        "  --out PATH       output CSV (default <command>.csv)\n";
}

RunConfig parse_config(const std::vector<std::string>& args) {
    std::vector<std::pair<std::string, std::string>> flags;
    std::string positional_command;

    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) == 0) {
            const std::string key = a.substr(2);
            if (known_keys().find(key) == known_keys().end() && key != "config")
                throw UsageError("unknown option --" + key);
            if (i + 1 >= args.size()) throw UsageError("option --" + key + " requires a value");
            flags.emplace_back(key, args[++i]);
        } else if (positional_command.empty()) {
            positional_command = a;
        } else {
            throw UsageError("unexpected argument '" + a + "'");
        }
    }

    std::map<std::string, std::string> file_values;
    for (const auto& [key, value] : flags)
        if (key == "config") file_values = load_config_file(value);

    std::string command = positional_command;
    for (const auto& [key, value] : flags)
        if (key == "command") command = value;
    if (command.empty()) {
        const auto it = file_values.find("command");
        if (it != file_values.end()) command = it->second;
    }
    if (command.empty()) throw UsageError("missing required parameter 'command'");

    RunConfig config = info_for(command).defaults;
    for (const auto& [key, value] : file_values)
        if (key != "command") apply_value(config, key, value);
    for (const auto& [key, value] : flags)
        if (key != "config" && key != "command") apply_value(config, key, value);

    if (config.grid_count < 2) throw UsageError("grid_count must be at least 2");
    if (!(config.grid_min < config.grid_max))
        throw UsageError("grid_min must lie below grid_max");
    if (config.command == Command::dynamics) {
        if (!(config.t_max > 0.0)) throw UsageError("t_max must be positive");
        if (!(config.dt > 0.0)) throw UsageError("dt must be positive");
        if (config.t_count < 2) throw UsageError("t_count must be at least 2");
    }
    return config;
}

std::string format_csv(const ResultTable& table) {
    std::string text = "# config: " + table.metadata + "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) text += ",";
        text += table.header[i];
    }
    text += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) text += ",";
            text += fmt(row[i]);
        }
        text += "\n";
    }
    return text;
}

std::string output_path(const RunConfig& config) {
    return config.out.empty() ? std::string(command_name(config.command)) + ".csv" : config.out;
}

ResultTable run(const RunConfig& config) {
    ResultTable table;
    switch (config.command) {
        case Command::mirror_spectrum: table = run_mirror_spectrum(config); break;
        case Command::r0_curve: table = run_r0_curve(config); break;
        case Command::phase_diagram: table = run_phase_diagram(config); break;
        case Command::supermodes_vs_r0: table = run_supermodes_vs_r0(config); break;
        case Command::coupling_map: table = run_coupling_map(config); break;
        case Command::coupling_vs_w: table = run_coupling_vs_w(config); break;
        case Command::eta_curve: table = run_eta_curve(config); break;
        case Command::transmission: table = run_transmission(config); break;
        case Command::polaritons: table = run_polaritons(config); break;
        case Command::linewidth_scan: table = run_linewidth_scan(config); break;
        case Command::dynamics: table = run_dynamics(config); break;
        case Command::validate:
            throw NumericError("run: the validate command is handled by the binary");
    }
    table.metadata = metadata_json(config);

    const std::string path = output_path(config);
    const std::string text = format_csv(table);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw NumericError("cannot open output file '" + path + "'");
    file << text;
    file.close();
    if (!file) {
        std::remove(path.c_str());
        throw NumericError("failed writing output file '" + path + "'");
    }
    return table;
}

}  // namespace antipt::cli
