#include "nmems/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nmems/channel.hpp"
#include "nmems/errors.hpp"
#include "nmems/measures.hpp"
#include "nmems/states.hpp"
#include "nmems/witness.hpp"

namespace nmems {

std::string_view to_string(ChannelMode m) {
    switch (m) {
        case ChannelMode::paper_eq10: return "paper_eq10";
        case ChannelMode::correlated_eq9: return "correlated_eq9";
        case ChannelMode::product: return "product";
    }
    return "?";
}

ChannelMode parse_channel_mode(std::string_view s) {
    if (s == "paper_eq10") return ChannelMode::paper_eq10;
    if (s == "correlated_eq9") return ChannelMode::correlated_eq9;
    if (s == "product") return ChannelMode::product;
    throw RejectedInput("unknown channel mode '" + std::string(s) +
                        "' (expected paper_eq10, correlated_eq9 or product)");
}

namespace {

enum class Quantity {
    concurrence,
    concurrence_ad,
    concurrence_wootters,
    concurrence_wootters_ad,
    fidelity,
    fidelity_ad,
    fidelity_ad_closed,
    useful,
    witness_generic,
    witness_w1,
    witness_stabilizer,
    chsh,
    entropy,
    entropy_ad,
    mid,
    mid_raw,
    mid_dephasing,
    discord,
    discord_ad,
    discord_closed_form,
};

struct QuantityName {
    const char* name;
    Quantity q;
};

constexpr QuantityName kQuantities[] = {
    {"concurrence", Quantity::concurrence},
    {"concurrence_ad", Quantity::concurrence_ad},
    {"concurrence_wootters", Quantity::concurrence_wootters},
    {"concurrence_wootters_ad", Quantity::concurrence_wootters_ad},
    {"fidelity", Quantity::fidelity},
    {"fidelity_ad", Quantity::fidelity_ad},
    {"fidelity_ad_closed", Quantity::fidelity_ad_closed},
    {"useful", Quantity::useful},
    {"witness_generic", Quantity::witness_generic},
    {"witness_w1", Quantity::witness_w1},
    {"witness_stabilizer", Quantity::witness_stabilizer},
    {"chsh", Quantity::chsh},
    {"entropy", Quantity::entropy},
    {"entropy_ad", Quantity::entropy_ad},
    {"mid", Quantity::mid},
    {"mid_raw", Quantity::mid_raw},
    {"mid_dephasing", Quantity::mid_dephasing},
    {"discord", Quantity::discord},
    {"discord_ad", Quantity::discord_ad},
    {"discord_closed_form", Quantity::discord_closed_form},
};

std::optional<Quantity> lookup(std::string_view name) {
    for (const auto& q : kQuantities)
        if (name == q.name) return q.q;
    return std::nullopt;
}

// States at one grid point, built on first use.
class PointContext {
public:
    PointContext(double p, double theta, ChannelMode mode) : p_(p), theta_(theta), mode_(mode) {}

    double p() const { return p_; }
    double theta() const { return theta_; }

    const DensityMatrix& state() {
        if (!state_) state_ = nmems(p_);
        return *state_;
    }

    const DensityMatrix& damped() {
        if (!damped_) {
            switch (mode_) {
                case ChannelMode::paper_eq10: damped_ = nmems_ad(p_, theta_); break;
                case ChannelMode::correlated_eq9:
                    damped_ = apply_correlated_pair(adc(damping_gamma(theta_)), state());
                    break;
                case ChannelMode::product:
                    damped_ = apply_product_pair(adc(damping_gamma(theta_)), state());
                    break;
            }
        }
        return *damped_;
    }

private:
    double p_;
    double theta_;
    ChannelMode mode_;
    std::optional<DensityMatrix> state_;
    std::optional<DensityMatrix> damped_;
};

std::optional<double> evaluate_quantity(Quantity q, PointContext& ctx) {
    static const WitnessOperator w_generic = witness_generic(2);
    static const WitnessOperator w_one = witness_w1();
    static const WitnessOperator w_stab = witness_stabilizer();

    auto unit_only = [](const DensityMatrix& rho, auto&& f) -> std::optional<double> {
        if (!rho.is_unit()) return std::nullopt;
        return f(rho);
    };

    switch (q) {
        case Quantity::concurrence: return concurrence_x(x_params_of(ctx.state()));
        case Quantity::concurrence_ad: return concurrence_x(x_params_of(ctx.damped()));
        case Quantity::concurrence_wootters: return concurrence_wootters(ctx.state());
        case Quantity::concurrence_wootters_ad:
            return unit_only(ctx.damped(), [](const auto& r) { return concurrence_wootters(r); });
        case Quantity::fidelity: return teleportation_fidelity(ctx.state()).fidelity;
        case Quantity::fidelity_ad:
            return unit_only(ctx.damped(),
                             [](const auto& r) { return teleportation_fidelity(r).fidelity; });
        case Quantity::fidelity_ad_closed: return fidelity_paper_adc(ctx.p(), ctx.theta());
        case Quantity::useful: return teleportation_fidelity(ctx.state()).useful ? 1.0 : 0.0;
        case Quantity::witness_generic: return evaluate(w_generic, ctx.state()).expectation;
        case Quantity::witness_w1: return evaluate(w_one, ctx.state()).expectation;
        case Quantity::witness_stabilizer: return evaluate(w_stab, ctx.state()).expectation;
        case Quantity::chsh: return chsh_criterion(ctx.state()).m_value;
        case Quantity::entropy: return von_neumann_entropy(ctx.state());
        case Quantity::entropy_ad: return von_neumann_entropy(ctx.damped());
        case Quantity::mid:
            return von_neumann_entropy(ctx.damped(), EntropyInput::renormalized) -
                   von_neumann_entropy(ctx.state());
        case Quantity::mid_raw:
            return von_neumann_entropy(ctx.damped(), EntropyInput::raw) -
                   von_neumann_entropy(ctx.state());
        case Quantity::mid_dephasing: return mid_dephasing(ctx.state());
        case Quantity::discord: return discord_x(ctx.state()).discord;
        case Quantity::discord_ad:
            return unit_only(ctx.damped(), [](const auto& r) { return discord_x(r).discord; });
        case Quantity::discord_closed_form: return discord_closed_form(ctx.p()).value;
    }
    return std::nullopt;
}

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> out(static_cast<std::size_t>(steps));
    if (steps == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < steps; ++i) out[i] = lo + (hi - lo) * i / (steps - 1);
    out.back() = hi;
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw RejectedInput("cannot parse " + std::string(what) + " from '" + t + "'");
    }
    return v;
}

int parse_positive_int(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || v < 1) {
        throw RejectedInput(std::string(what) + " must be a positive integer, got '" + t + "'");
    }
    return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace

const std::vector<std::string>& registered_quantities() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& q : kQuantities) v.emplace_back(q.name);
        return v;
    }();
    return names;
}

void SweepSpec::validate() const {
    auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
    if (!in(p_min, 0.0, 1.0) || !in(p_max, 0.0, 1.0)) throw RejectedInput("p range must lie in [0, 1]");
    if (p_min > p_max) throw RejectedInput("p-min exceeds p-max");
    const double half_pi = std::numbers::pi / 2.0;
    if (!in(theta_min, 0.0, half_pi) || !in(theta_max, 0.0, half_pi)) {
        throw RejectedInput("theta range must lie in [0, pi/2]");
    }
    if (theta_min > theta_max) throw RejectedInput("theta-min exceeds theta-max");
    if (p_steps < 1 || theta_steps < 1) throw RejectedInput("step counts must be at least 1");
    if (quantities.empty()) throw RejectedInput("no quantities requested");
    for (const auto& q : quantities) {
        if (!lookup(q)) throw RejectedInput("unknown quantity '" + q + "'");
    }
}

std::vector<double> SweepSpec::p_grid() const { return linspace(p_min, p_max, p_steps); }
std::vector<double> SweepSpec::theta_grid() const {
    return linspace(theta_min, theta_max, theta_steps);
}

SweepRow evaluate_point(double p, double theta, const std::vector<std::string>& quantities,
                        ChannelMode mode) {
    PointContext ctx(p, theta, mode);
    SweepRow row{p, theta, {}};
    row.values.reserve(quantities.size());
    for (const auto& name : quantities) {
        const auto q = lookup(name);
        if (!q) throw RejectedInput("unknown quantity '" + name + "'");
        row.values.push_back(evaluate_quantity(*q, ctx));
    }
    return row;
}

SweepTable run_sweep_serial(const SweepSpec& spec) {
    spec.validate();
    SweepTable table{spec.quantities, {}};
    const auto thetas = spec.theta_grid();
    for (double p : spec.p_grid())
        for (double theta : thetas)
            table.rows.push_back(evaluate_point(p, theta, spec.quantities, spec.channel_mode));
    return table;
}

SweepTable run_sweep(const SweepSpec& spec, int threads) {
    spec.validate();
    if (threads <= 0) threads = sweep_thread_count();
    const auto ps = spec.p_grid();
    const auto thetas = spec.theta_grid();
    const std::size_t n_theta = thetas.size();
    const auto total = static_cast<std::ptrdiff_t>(ps.size() * n_theta);

    std::vector<std::optional<SweepRow>> slots(static_cast<std::size_t>(total));
    std::string first_error;
    bool failed = false;

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < total; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            slots[idx] = evaluate_point(ps[idx / n_theta], thetas[idx % n_theta], spec.quantities,
                                        spec.channel_mode);
        } catch (const std::exception& e) {
#pragma omp critical(nmems_sweep_error)
            {
                if (!failed) first_error = e.what();
                failed = true;
            }
        }
    }
    if (failed) throw NumericalFailure("sweep evaluation failed: " + first_error);

    SweepTable table{spec.quantities, {}};
    table.rows.reserve(slots.size());
    for (auto& s : slots) table.rows.push_back(std::move(*s));
    return table;
}

int sweep_thread_count() {
    if (const char* env = std::getenv("NMEMS_THREADS")) {
        return parse_positive_int(env, "NMEMS_THREADS");
    }
    return omp_get_max_threads();
}

std::string format_value(std::optional<double> v) {
    if (!v) return "NA";
    double x = *v;
    if (x == 0.0) x = 0.0;  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string to_csv(const SweepTable& table) {
    std::string out = "p,theta";
    for (const auto& q : table.quantities) out += "," + q;
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.values.size() != table.quantities.size()) {
            throw RejectedInput("row column count does not match the header");
        }
        out += format_value(row.p);
        out += ',';
        out += format_value(row.theta);
        for (const auto& v : row.values) {
            out += ',';
            out += format_value(v);
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const SweepTable& table, const std::string& path) {
    const std::string text = to_csv(table);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.close();
    if (!f) throw IoError("failed writing '" + path + "'");
}

SweepTable parse_csv(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(start));
            break;
        }
        lines.emplace_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    if (lines.empty()) throw RejectedInput("CSV is empty");
    const auto header = split(lines[0], ',');
    if (header.size() < 2 || header[0] != "p" || header[1] != "theta") {
        throw RejectedInput("CSV header must start with p,theta");
    }
    SweepTable table{{header.begin() + 2, header.end()}, {}};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i], ',');
        if (cells.size() != header.size()) {
            throw RejectedInput("CSV line " + std::to_string(i + 1) + " has " +
                                std::to_string(cells.size()) + " cells, expected " +
                                std::to_string(header.size()));
        }
        SweepRow row{parse_real(cells[0], "p"), parse_real(cells[1], "theta"), {}};
        for (std::size_t c = 2; c < cells.size(); ++c) {
            if (cells[c] == "NA")
                row.values.emplace_back(std::nullopt);
            else
                row.values.emplace_back(parse_real(cells[c], header[c]));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4"};
    return names;
}

SweepSpec preset(std::string_view name) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    constexpr double quarter_pi = std::numbers::pi / 4.0;
    SweepSpec s;
    // [0, 0.292) and [0, 0.25) at 1e-3 resolution, right end excluded.
    if (name == "fig1") {
        s.p_max = 0.291;
        s.p_steps = 292;
        s.theta_max = half_pi;
        s.theta_steps = 91;
        s.quantities = {"concurrence", "concurrence_ad"};
    } else if (name == "fig2") {
        s.p_max = 0.249;
        s.p_steps = 250;
        s.theta_max = half_pi;
        s.theta_steps = 91;
        s.quantities = {"fidelity", "fidelity_ad_closed"};
    } else if (name == "fig3") {
        s.p_max = 0.291;
        s.p_steps = 292;
        s.theta_max = quarter_pi;
        s.theta_steps = 46;
        s.quantities = {"mid", "fidelity_ad_closed"};
    } else if (name == "fig4") {
        s.p_max = 0.249;
        s.p_steps = 250;
        s.theta_max = 0.0;
        s.theta_steps = 1;
        s.quantities = {"concurrence", "discord", "fidelity"};
    } else {
        throw RejectedInput("unknown preset '" + std::string(name) + "' (expected fig1..fig4)");
    }
    s.output_path = std::string(name) + ".csv";
    return s;
}

double parse_angle(std::string_view text) {
    const std::string t = trim(text);
    const auto pi_pos = t.find("pi");
    if (pi_pos == std::string::npos) return parse_real(t, "angle");

    std::string coeff = trim(std::string_view(t).substr(0, pi_pos));
    if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
    double value = std::numbers::pi * (coeff.empty() ? 1.0 : parse_real(coeff, "angle"));

    std::string rest = trim(std::string_view(t).substr(pi_pos + 2));
    if (!rest.empty()) {
        if (rest.front() != '/') throw RejectedInput("cannot parse angle '" + t + "'");
        const double den = parse_real(std::string_view(rest).substr(1), "angle");
        if (den == 0.0) throw RejectedInput("angle '" + t + "' divides by zero");
        value /= den;
    }
    return value;
}

void apply_spec_entry(SweepSpec& spec, std::string_view key, std::string_view value) {
    if (key == "p-min")
        spec.p_min = parse_real(value, key);
    else if (key == "p-max")
        spec.p_max = parse_real(value, key);
    else if (key == "p-steps")
        spec.p_steps = parse_positive_int(value, key);
    else if (key == "theta-min")
        spec.theta_min = parse_angle(value);
    else if (key == "theta-max")
        spec.theta_max = parse_angle(value);
    else if (key == "theta-steps")
        spec.theta_steps = parse_positive_int(value, key);
    else if (key == "quantities") {
        spec.quantities.clear();
        for (auto& q : split(value, ','))
            if (!q.empty()) spec.quantities.push_back(std::move(q));
    } else if (key == "channel-mode")
        spec.channel_mode = parse_channel_mode(trim(value));
    else if (key == "out")
        spec.output_path = trim(value);
    else
        throw RejectedInput("unknown sweep setting '" + std::string(key) + "'");
}

void apply_spec_file(SweepSpec& spec, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw RejectedInput("spec line " + std::to_string(lineno) + ": expected key = value");
        }
        apply_spec_entry(spec, trim(std::string_view(body).substr(0, eq)),
                         std::string_view(body).substr(eq + 1));
    }
}

double bisect_boundary(const std::function<bool(double)>& pred, double lo, double hi,
                       double tol) {
    const bool at_lo = pred(lo);
    if (at_lo == pred(hi)) throw RejectedInput("bisect_boundary: predicate does not change sign");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid) == at_lo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Headlines compute_headlines() {
    const WitnessOperator w1 = witness_w1();
    const WitnessOperator w2 = witness_stabilizer();
    auto conc = [](double p) { return concurrence_x(x_params_of(nmems(p))); };
    auto disc = [](double p) { return discord_x(nmems(p)).discord; };

    Headlines h{};
    h.entanglement_boundary = bisect_boundary([&](double p) { return conc(p) > 0.0; }, 0.0, 1.0);
    h.teleportation_boundary =
        bisect_boundary([](double p) { return teleportation_fidelity(nmems(p)).useful; }, 0.0, 1.0);
    h.w1_zero = bisect_boundary([&](double p) { return evaluate(w1, nmems(p)).detected; }, 0.0, 1.0);
    h.stabilizer_zero =
        bisect_boundary([&](double p) { return evaluate(w2, nmems(p)).detected; }, 0.0, 1.0);
    h.fidelity_p0 = teleportation_fidelity(nmems(0.0)).fidelity;
    h.discord_p0 = disc(0.0);
    h.concurrence_p0 = conc(0.0);

    h.crossing_lo = 0.0;
    h.crossing_hi = 0.0;
    for (int i = 1; i <= 292; ++i) {
        const double p = i * 1e-3;
        if (conc(p) < disc(p)) {
            h.crossing_lo = (i - 1) * 1e-3;
            h.crossing_hi = p;
            break;
        }
    }
    h.crossing = bisect_boundary([&](double p) { return conc(p) > disc(p); }, h.crossing_lo,
                                 h.crossing_hi);

    h.chsh_max_entangled = 0.0;
    h.chsh_max_all = 0.0;
    h.chsh_any_violation = false;
    for (int i = 0; i <= 1000; ++i) {
        const double p = i * 1e-3;
        const ChshResult r = chsh_criterion(nmems(p));
        if (i <= 292) h.chsh_max_entangled = std::max(h.chsh_max_entangled, r.m_value);
        h.chsh_max_all = std::max(h.chsh_max_all, r.m_value);
        h.chsh_any_violation = h.chsh_any_violation || r.violates;
    }
    return h;
}

std::string report_headlines() {
    const Headlines h = compute_headlines();
    char buf[2048];
    std::snprintf(
        buf, sizeof buf,
        "entanglement boundary p* = %.6f (concurrence > 0 for p < p*; root of p^2 - 14p + 4)\n"
        "teleportation boundary p = %.6f (useful for p below)\n"
        "witness W_t1 zero crossing p = %.6f (2/7)\n"
        "witness W_t2 zero crossing p = %.6f (1/4)\n"
        "fidelity at p=0 = %.4f\n"
        "concurrence at p=0 = %.4f\n"
        "discord at p=0 = %.4f\n"
        "discord/concurrence crossing in [%.3f, %.3f], bisected p = %.6f\n"
        "CHSH max M over p in [0, 0.292] = %.6f (8/9), over p in [0, 1] = %.6f; violation: %s\n",
        h.entanglement_boundary, h.teleportation_boundary, h.w1_zero, h.stabilizer_zero,
        h.fidelity_p0, h.concurrence_p0, h.discord_p0, h.crossing_lo, h.crossing_hi, h.crossing,
        h.chsh_max_entangled, h.chsh_max_all, h.chsh_any_violation ? "yes" : "no");
    return std::string(buf) + describe(fidelity_discrepancy(0.0)) + "\n";
}

} // namespace nmems
