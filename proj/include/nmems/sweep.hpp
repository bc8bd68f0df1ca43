#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nmems {

/// Which two-qubit noise map produces the damped state in `*_ad` columns.
enum class ChannelMode {
    paper_eq10,      // nmems_ad(p, theta), the published damped matrix
    correlated_eq9,  // apply_correlated_pair(adc(gamma), nmems(p))
    product          // apply_product_pair(adc(gamma), nmems(p))
};

std::string_view to_string(ChannelMode m);
ChannelMode parse_channel_mode(std::string_view s);

/// Every column identifier a sweep can request.
const std::vector<std::string>& registered_quantities();

struct SweepSpec {
    double p_min = 0.0;
    double p_max = 0.292;
    int p_steps = 293;
    double theta_min = 0.0;
    double theta_max = 0.78539816339744830962;  // pi/4
    int theta_steps = 46;
    std::vector<std::string> quantities;
    ChannelMode channel_mode = ChannelMode::paper_eq10;
    std::string output_path;

    /// Throws RejectedInput on bad ranges, zero steps, or an empty or
    /// unknown quantity list.
    void validate() const;

    /// Inclusive evenly spaced grid; a single step yields just the minimum.
    std::vector<double> p_grid() const;
    std::vector<double> theta_grid() const;
};

struct SweepRow {
    double p;
    double theta;
    std::vector<std::optional<double>> values;  // nullopt renders as NA
};

struct SweepTable {
    std::vector<std::string> quantities;
    std::vector<SweepRow> rows;
};

/// Evaluate one grid point. Undefined quantities come back as nullopt.
SweepRow evaluate_point(double p, double theta, const std::vector<std::string>& quantities,
                        ChannelMode mode);

/// Sequential reference: p outer, theta inner, both ascending.
SweepTable run_sweep_serial(const SweepSpec& spec);

/// OpenMP evaluation of the same grid. Row order matches run_sweep_serial.
/// `threads` <= 0 means sweep_thread_count().
SweepTable run_sweep(const SweepSpec& spec, int threads = 0);

/// NMEMS_THREADS if set (must be a positive integer), else the OpenMP default.
int sweep_thread_count();

/// `%.12g` with -0 folded to 0, or NA.
std::string format_value(std::optional<double> v);

std::string to_csv(const SweepTable& table);
/// Writes to_csv(table) to `path`; IoError naming the path on failure.
void emit_csv(const SweepTable& table, const std::string& path);
/// Inverse of to_csv. Throws RejectedInput on malformed text.
SweepTable parse_csv(std::string_view text);

/// Figure presets: "fig1".."fig4".
SweepSpec preset(std::string_view name);
const std::vector<std::string>& preset_names();

/// Radians, optionally written with pi: "0.5", "pi", "pi/4", "3pi/8", "3*pi/8".
double parse_angle(std::string_view text);

/// Apply `key = value` lines onto `spec`. Keys mirror the CLI flags without
/// the leading dashes; '#' starts a comment.
void apply_spec_file(SweepSpec& spec, std::string_view text);
void apply_spec_entry(SweepSpec& spec, std::string_view key, std::string_view value);

/// Bisect for the point in [lo, hi] where `pred` changes from pred(lo) to
/// its negation; requires pred(lo) != pred(hi).
double bisect_boundary(const std::function<bool(double)>& pred, double lo, double hi,
                       double tol = 1e-13);

struct Headlines {
    double entanglement_boundary;
    double teleportation_boundary;
    double w1_zero;
    double stabilizer_zero;
    double fidelity_p0;
    double discord_p0;
    double concurrence_p0;
    double crossing_lo;     // last grid p with concurrence > discord
    double crossing_hi;     // first grid p with concurrence < discord
    double crossing;        // bisected
    double chsh_max_entangled;  // max M over p in [0, 0.292]
    double chsh_max_all;        // max M over p in [0, 1]
    bool chsh_any_violation;
};

Headlines compute_headlines();
std::string report_headlines();

} // namespace nmems
