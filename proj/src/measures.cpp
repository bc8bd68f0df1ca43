#include "nmems/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "nmems/errors.hpp"

namespace nmems {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_unit(const DensityMatrix& rho, const char* who) {
    if (!rho.is_unit()) {
        throw RejectedInput(std::string(who) + ": requires a unit-trace state (trace " +
                            std::to_string(rho.trace_value()) + ")");
    }
}

void require_two_qubit(const DensityMatrix& rho, const char* who) {
    if (rho.dim() != 4) throw RejectedInput(std::string(who) + ": requires a 4x4 state");
}

const ComplexMatrix& sigma_y_pair() {
    static const ComplexMatrix yy = kron(pauli::y(), pauli::y());
    return yy;
}

void require_range(double v, double lo, double hi, const char* name) {
    if (!(v >= lo && v <= hi)) {
        throw RejectedInput(std::string(name) + " = " + std::to_string(v) + " out of range");
    }
}

} // namespace

double concurrence_x(const XStateParams& xp) {
    return 2.0 * std::max(std::abs(xp.c) - std::sqrt(std::max(xp.a * xp.e, 0.0)), 0.0);
}

double concurrence_wootters(const DensityMatrix& rho) {
    require_two_qubit(rho, "concurrence_wootters");
    require_unit(rho, "concurrence_wootters");
    const ComplexMatrix& yy = sigma_y_pair();
    const ComplexMatrix flipped = yy * conjugate(rho.matrix()) * yy;
    const ComplexMatrix root = psd_sqrt(rho.matrix());
    ComplexMatrix r = root * flipped * root;
    r = 0.5 * (r + dagger(r));
    const Spectrum s = hermitian_eigen(r);
    std::array<double, 4> l{};
    for (std::size_t i = 0; i < 4; ++i) l[i] = std::sqrt(clamp_eigenvalue(s.eigenvalues[i]));
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
    require_two_qubit(rho, "correlation_matrix");
    const std::array<ComplexMatrix, 3> sigma{pauli::x(), pauli::y(), pauli::z()};
    CorrelationMatrix out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.t[i][j] = trace(rho.matrix() * kron(sigma[i], sigma[j])).real();
    return out;
}

std::array<double, 3> correlation_gram_spectrum(const CorrelationMatrix& t) {
    ComplexMatrix gram(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += t.t[k][i] * t.t[k][j];
            gram(i, j) = s;
        }
    const Spectrum s = hermitian_eigen(gram);
    return {std::max(s.eigenvalues[0], 0.0), std::max(s.eigenvalues[1], 0.0),
            std::max(s.eigenvalues[2], 0.0)};
}

TeleportationFidelity teleportation_fidelity(const DensityMatrix& rho) {
    require_unit(rho, "teleportation_fidelity");
    const auto g = correlation_gram_spectrum(correlation_matrix(rho));
    const double n = std::sqrt(g[0]) + std::sqrt(g[1]) + std::sqrt(g[2]);
    const bool useful = n > 1.0 + 1e-12;
    return {useful ? 0.5 * (1.0 + n / 3.0) : 2.0 / 3.0, n, useful};
}

double fidelity_paper_adc_factored(double p, double theta) {
    require_range(p, 0.0, 1.0, "p");
    require_range(theta, 0.0, std::numbers::pi / 2.0, "theta");
    const double keep = 1.0 - damping_gamma(theta);
    return 0.5 + (1.0 - p) * keep / 9.0 + keep * std::sqrt(3.0 * p * (p + 2.0)) / 18.0;
}

double fidelity_paper_adc(double p, double theta) {
    require_range(p, 0.0, 1.0, "p");
    require_range(theta, 0.0, std::numbers::pi / 2.0, "theta");
    const double s2 = std::pow(std::sin(theta), 2);
    const double s4 = std::pow(std::sin(theta), 4);
    const double p2 = p * p;
    const double first = s4 * p2 - 2.0 * s4 * p + s4 - 2.0 * s2 * p2 + 4.0 * s2 * p - 2.0 * s2 +
                         p2 - 2.0 * p + 1.0;
    const double second = 3.0 * s4 * p2 + 6.0 * s4 * p - 6.0 * s2 * p2 - 12.0 * s2 * p +
                          3.0 * p2 + 6.0 * p;
    // Both radicands equal (1-gamma)^2 times a square in p. The literal
    // expansion cancels catastrophically as gamma -> 1, so agreement with the
    // factored form is checked on the radicands, not after the square root.
    const double keep = 1.0 - s2;
    const double first_factored = keep * keep * (1.0 - p) * (1.0 - p);
    const double second_factored = keep * keep * 3.0 * p * (p + 2.0);
    if (std::abs(first - first_factored) > 1e-12 || std::abs(second - second_factored) > 1e-12) {
        throw NumericalFailure("fidelity_paper_adc: literal and factored radicands differ");
    }
    const double value = 0.5 + std::sqrt(std::max(first, 0.0)) / 9.0 +
                         std::sqrt(std::max(second, 0.0)) / 18.0;
    return value;
}

FidelityDiscrepancy fidelity_discrepancy(double p) {
    return {p, (7.0 - 4.0 * p) / 9.0, fidelity_paper_adc(p, 0.0),
            teleportation_fidelity(nmems(p)).fidelity};
}

std::string describe(const FidelityDiscrepancy& d) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "fidelity discrepancy at p=%g: (7-4p)/9 = %.6f, damped formula at theta=0 = "
                  "%.6f, correlation-matrix criterion = %.6f",
                  d.p, d.undamped_closed_form, d.damped_formula_at_zero, d.general_criterion);
    return buf;
}

ChshResult chsh_criterion(const DensityMatrix& rho) {
    require_unit(rho, "chsh_criterion");
    const auto g = correlation_gram_spectrum(correlation_matrix(rho));
    const double m = g[0] + g[1];
    return {m, m > 1.0 + 1e-12};
}

double binary_entropy(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return -xlog2x(x) - xlog2x(1.0 - x);
}

double von_neumann_entropy(const DensityMatrix& rho, EntropyInput mode) {
    const Spectrum s = hermitian_eigen(rho.matrix());
    const double scale = mode == EntropyInput::renormalized ? 1.0 / rho.trace_value() : 1.0;
    double h = 0.0;
    for (double k : s.eigenvalues) h -= xlog2x(clamp_eigenvalue(k) * scale);
    return h;
}

double mid_paper(double p, double theta, EntropyInput mode) {
    const DensityMatrix damped = nmems_ad(p, theta);
    const DensityMatrix original = nmems(p);
    return von_neumann_entropy(damped, mode) - von_neumann_entropy(original, mode);
}

double mid_dephasing(const DensityMatrix& rho) {
    require_two_qubit(rho, "mid_dephasing");
    require_unit(rho, "mid_dephasing");
    static constexpr std::array<std::size_t, 2> dims{2, 2};
    static constexpr std::array<std::size_t, 1> keep_a{0};
    static constexpr std::array<std::size_t, 1> keep_b{1};

    auto local_basis = [](const ComplexMatrix& marginal) {
        const Spectrum s = hermitian_eigen(marginal);
        if (std::abs(s.eigenvalues[0] - s.eigenvalues[1]) < 1e-10) {
            return ComplexMatrix::identity(2);
        }
        return s.eigenvectors;
    };
    const ComplexMatrix u = kron(local_basis(partial_trace(rho.matrix(), dims, keep_a)),
                                 local_basis(partial_trace(rho.matrix(), dims, keep_b)));
    const ComplexMatrix rotated = dagger(u) * rho.matrix() * u;
    double dephased = 0.0;
    for (std::size_t i = 0; i < 4; ++i) dephased -= xlog2x(std::max(rotated(i, i).real(), 0.0));
    return dephased - von_neumann_entropy(rho);
}

DiscordBreakdown discord_x(const DensityMatrix& rho) {
    require_two_qubit(rho, "discord_x");
    require_unit(rho, "discord_x");
    const ComplexMatrix& m = rho.matrix();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool x_slot = i == j || i + j == 3;
            if (!x_slot && std::abs(m(i, j)) >= 1e-10) {
                throw RejectedInput("discord_x: state is not of the X form");
            }
        }

    const double t11 = m(0, 0).real();
    const double t33 = m(2, 2).real();
    const double t44 = m(3, 3).real();
    const double coherence = std::abs(m(0, 3)) + std::abs(m(1, 2));

    const Spectrum s = hermitian_eigen(m);
    DiscordBreakdown out{};
    double eps_sum = 0.0;  // sum eps log2 eps
    for (std::size_t i = 0; i < 4; ++i) {
        out.eps[i] = clamp_eigenvalue(s.eigenvalues[i]);
        eps_sum += xlog2x(out.eps[i]);
    }

    const double h13 = binary_entropy(t11 + t33);
    const double radial = 1.0 - 2.0 * (t33 + t44);
    out.d1 = binary_entropy((1.0 + std::sqrt(radial * radial + 4.0 * coherence * coherence)) / 2.0);
    double diag_entropy = 0.0;
    for (std::size_t i = 0; i < 4; ++i) diag_entropy -= xlog2x(std::max(m(i, i).real(), 0.0));
    out.d2 = diag_entropy - h13;
    out.q1 = h13 + eps_sum + out.d1;
    out.q2 = h13 + eps_sum + out.d2;
    out.discord = std::min(out.q1, out.q2);
    return out;
}

DiscordClosedForm discord_closed_form(double p) {
    require_range(p, 0.0, 1.0, "p");
    const double ln2 = std::numbers::ln2;
    const double x = (p + 2.0) / 6.0;
    const double y = (2.0 - 2.0 * p) / 3.0;
    const double z = (1.0 - p) / 3.0;
    const double t = (4.0 - p) / 6.0;
    const double r = p / 2.0;
    const double spread = (1.0 - p) * std::sqrt(5.0) / 6.0;

    DiscordClosedForm out{};
    out.t1 = 0.5 + spread;
    out.t2 = 0.5 - spread;
    out.branch1 = -(p + 2.0) * x / (6.0 * ln2) + xlnx(x) / ln2 + xlnx(y) / ln2 -
                  2.0 * xlnx(z) / ln2;
    out.branch2 = (p - 4.0) * t / (6.0 * ln2) - (p + 2.0) * std::log(x) / (6.0 * ln2) +
                  p * r / ln2 + xlnx(x) / ln2 + xlnx(y) / ln2 - xlnx(out.t1) / ln2 -
                  xlnx(out.t2) / ln2;
    out.value = std::min(out.branch1, out.branch2);
    return out;
}

DiscordResidual discord_residuals(double p) {
    const DiscordClosedForm cf = discord_closed_form(p);
    const DiscordBreakdown bd = discord_x(nmems(p));
    return {p, cf.branch1 - bd.q1, cf.branch2 - bd.q2, cf.value - bd.discord};
}

} // namespace nmems
