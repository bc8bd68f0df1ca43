#pragma once

#include "nmems/matrix.hpp"

namespace nmems {

enum class Normalization { unit, sub_normalized };

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kSubNormalizedThreshold = 1e-12;

/// A validated two-qubit (or general) quantum state. Construction checks
/// Hermiticity, positivity and the trace; the normalization tag is derived
/// from the measured trace rather than supplied by the caller.
class DensityMatrix {
public:
    /// Throws RejectedInput if `m` is not Hermitian, has an eigenvalue below
    /// -kNegativeEigenTol, or has trace outside (0, 1 + kTraceTol].
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    Normalization normalization() const noexcept { return normalization_; }
    bool is_unit() const noexcept { return normalization_ == Normalization::unit; }
    double trace_value() const noexcept { return trace_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }

    cplx operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

    /// Rescaled to unit trace.
    DensityMatrix renormalized() const;

private:
    ComplexMatrix matrix_;
    Normalization normalization_;
    double trace_;
};

/// Parameters of a state with support only on the diagonal and the inner
/// anti-diagonal |01><10| coherence, in basis order |00>,|01>,|10>,|11>.
struct XStateParams {
    double a = 0, b = 0, d = 0, e = 0;
    cplx c{};

    /// Non-negative populations and |c| <= sqrt(b d) (to tolerance).
    bool valid() const;
    ComplexMatrix to_matrix() const;
};

/// (|000> + |111>)/sqrt 2 as an 8x1 column.
ComplexMatrix ghz_state();
/// (|001> + |010> + |100>)/sqrt 3 as an 8x1 column.
ComplexMatrix w_state();
/// (|01> + |10>)/sqrt 2 as a 4x1 column.
ComplexMatrix psi_plus();

/// Tr_c of the projector onto a three-qubit ket, keeping qubits a and b.
ComplexMatrix reduce_to_ab(const ComplexMatrix& three_qubit_ket);

/// Mixture p Tr_c|GHZ><GHZ| + (1-p) Tr_c|W><W| built from partial traces.
ComplexMatrix nmems_mixture(double p);
/// The same family written out entrywise in the computational basis.
ComplexMatrix nmems_closed_form(double p);

/// The family for 0 <= p <= 1. Both constructions are evaluated and must
/// agree to 1e-12; otherwise NumericalFailure.
DensityMatrix nmems(double p);

/// Amplitude-damping image with gamma = sin^2(theta), entrywise:
///   (p+2)/6 top-left (unchanged), inner block scaled by (1-gamma),
///   bottom-right scaled by (1-gamma)^2.
/// This is not trace preserving for gamma > 0 and is tagged sub_normalized.
DensityMatrix nmems_ad(double p, double theta);

/// Extract (a, b, c, d, e). Rejects any state with a non-X entry (including
/// the |00><11| corner) of magnitude >= 1e-10.
XStateParams x_params_of(const DensityMatrix& rho);
XStateParams x_params_of(const ComplexMatrix& m);

double damping_gamma(double theta);

} // namespace nmems
