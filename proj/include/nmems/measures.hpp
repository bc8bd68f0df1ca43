#pragma once

#include <array>
#include <string>
#include <vector>

#include "nmems/matrix.hpp"
#include "nmems/states.hpp"

namespace nmems {

// ---------------------------------------------------------------------------
// Concurrence

/// 2 max(|c| - sqrt(a e), 0) for a state with only the inner coherence.
double concurrence_x(const XStateParams& xp);

/// Wootters' spin-flip concurrence, max(0, l1 - l2 - l3 - l4), with l_i the
/// square roots of the descending eigenvalues of sqrt(rho) rho~ sqrt(rho).
/// Rejects sub-normalized input.
double concurrence_wootters(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Correlation matrix quantities

/// t[i][j] = Re Tr(rho sigma_i (x) sigma_j), i, j over (x, y, z).
struct CorrelationMatrix {
    std::array<std::array<double, 3>, 3> t{};
    double operator()(int i, int j) const { return t[i][j]; }
};

CorrelationMatrix correlation_matrix(const DensityMatrix& rho);

/// Eigenvalues of T^T T, descending (squares of the singular values of T).
std::array<double, 3> correlation_gram_spectrum(const CorrelationMatrix& t);

struct TeleportationFidelity {
    double fidelity;   // (1 + N/3)/2 when useful, else the classical 2/3
    double n_value;    // sum of singular values of T
    bool useful;       // N > 1 + 1e-12
};

/// Optimal teleportation fidelity from the singular values of T.
TeleportationFidelity teleportation_fidelity(const DensityMatrix& rho);

/// Closed-form fidelity of the damped family exactly as published (the
/// long radical expression in sin(theta) and p). Also checks it against the
/// factored form 1/2 + (1-p)(1-gamma)/9 + (1-gamma) sqrt(3p(p+2))/18.
double fidelity_paper_adc(double p, double theta);
double fidelity_paper_adc_factored(double p, double theta);

/// The published damped-family fidelity does not reduce to (7-4p)/9 at
/// theta = 0. This records the three competing numbers at one p.
struct FidelityDiscrepancy {
    double p;
    double undamped_closed_form;   // (7-4p)/9
    double damped_formula_at_zero; // fidelity_paper_adc(p, 0)
    double general_criterion;      // teleportation_fidelity(nmems(p)).fidelity
};
FidelityDiscrepancy fidelity_discrepancy(double p);
std::string describe(const FidelityDiscrepancy& d);

struct ChshResult {
    double m_value;  // sum of the two largest eigenvalues of T^T T
    bool violates;   // m_value > 1 + 1e-12
};

/// Horodecki form of the CHSH test.
ChshResult chsh_criterion(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Entropies

enum class EntropyInput {
    raw,          // eigenvalues as they come, even if sum < 1
    renormalized  // divide by the trace first
};

/// -sum k log2 k over the eigenvalues, with 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho, EntropyInput mode = EntropyInput::raw);

/// -x log2 x - (1-x) log2 (1-x).
double binary_entropy(double x);

/// S(damped) - S(undamped) for the published damped family. The damped
/// matrix loses trace for theta > 0, so by default its entropy is taken
/// after renormalization; pass EntropyInput::raw for the literal
/// eigenvalue sum.
double mid_paper(double p, double theta, EntropyInput mode = EntropyInput::renormalized);

/// S(rho') - S(rho) where rho' is rho dephased in the product of the
/// marginal eigenbases. A degenerate marginal falls back to the
/// computational basis.
double mid_dephasing(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Discord

struct DiscordBreakdown {
    double q1;
    double q2;
    double d1;
    double d2;
    double discord;                // min(q1, q2)
    std::array<double, 4> eps;     // state eigenvalues, descending
};

/// Closed-form discord of an X state (diagonal, inner and corner
/// coherences only). Rejects non-X or non-unit input.
DiscordBreakdown discord_x(const DensityMatrix& rho);

/// The published two-branch expression for the family, evaluated with its
/// own substitutions. It is kept verbatim; use discord_residuals() to see
/// how far each branch sits from discord_x.
struct DiscordClosedForm {
    double t1;
    double t2;
    double branch1;
    double branch2;
    double value;  // min(branch1, branch2)
};
DiscordClosedForm discord_closed_form(double p);

struct DiscordResidual {
    double p;
    double branch1_minus_q1;
    double branch2_minus_q2;
    double value_minus_discord;
};
DiscordResidual discord_residuals(double p);

} // namespace nmems
