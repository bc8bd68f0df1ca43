// nmems: parameter sweeps and headline numbers for the NMEMS family.
//
//   nmems sweep --quantities concurrence,discord --p-max 0.25 --out out.csv
//   nmems sweep --spec run.cfg --theta-max pi/2
//   nmems preset fig3 [--out fig3.csv]
//   nmems headlines
//
// Exit status: 0 success, 1 rejected input, 2 I/O failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nmems/errors.hpp"
#include "nmems/sweep.hpp"

namespace {

constexpr int kExitRejected = 1;
constexpr int kExitIo = 2;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw nmems::IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_table(const nmems::SweepTable& table, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << nmems::to_csv(table);
    } else {
        nmems::emit_csv(table, path);
        std::cerr << "wrote " << table.rows.size() << " rows to " << path << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NMEMS parameter sweeps and headline numbers"};
    app.require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "Evaluate quantities over a (p, theta) grid");
    std::string spec_path;
    std::optional<std::string> p_min, p_max, p_steps, theta_min, theta_max, theta_steps,
        quantities, channel_mode, out;
    sweep->add_option("--spec", spec_path, "key = value file; flags override it");
    sweep->add_option("--p-min", p_min);
    sweep->add_option("--p-max", p_max);
    sweep->add_option("--p-steps", p_steps);
    sweep->add_option("--theta-min", theta_min, "radians, or e.g. pi/8");
    sweep->add_option("--theta-max", theta_max, "radians, or e.g. pi/4");
    sweep->add_option("--theta-steps", theta_steps);
    sweep->add_option("--quantities", quantities, "comma-separated quantity identifiers");
    sweep->add_option("--channel-mode", channel_mode, "paper_eq10 | correlated_eq9 | product");
    sweep->add_option("--out", out, "CSV path, '-' for stdout");

    auto* pre = app.add_subcommand("preset", "Run a figure preset");
    std::string preset_name;
    std::optional<std::string> preset_out;
    pre->add_option("name", preset_name, "fig1 | fig2 | fig3 | fig4")->required();
    pre->add_option("--out", preset_out, "CSV path, '-' for stdout (default <name>.csv)");

    auto* head = app.add_subcommand("headlines", "Print the headline numbers");

    auto* list = app.add_subcommand("quantities", "List quantity identifiers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitRejected;
    }

    try {
        if (*sweep) {
            nmems::SweepSpec spec;
            spec.output_path = "-";
            if (!spec_path.empty()) nmems::apply_spec_file(spec, read_file(spec_path));
            const std::pair<const char*, const std::optional<std::string>*> flags[] = {
                {"p-min", &p_min},         {"p-max", &p_max},
                {"p-steps", &p_steps},     {"theta-min", &theta_min},
                {"theta-max", &theta_max}, {"theta-steps", &theta_steps},
                {"quantities", &quantities}, {"channel-mode", &channel_mode},
                {"out", &out},
            };
            for (const auto& [key, value] : flags)
                if (*value) nmems::apply_spec_entry(spec, key, **value);
            write_table(nmems::run_sweep(spec), spec.output_path);
        } else if (*pre) {
            nmems::SweepSpec spec = nmems::preset(preset_name);
            if (preset_out) spec.output_path = *preset_out;
            write_table(nmems::run_sweep(spec), spec.output_path);
        } else if (*head) {
            std::cout << nmems::report_headlines();
        } else if (*list) {
            for (const auto& q : nmems::registered_quantities()) std::cout << q << "\n";
        }
    } catch (const nmems::RejectedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRejected;
    } catch (const nmems::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRejected;
    }
    return 0;
}
