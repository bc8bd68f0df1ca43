#include "nmems/states.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nmems/errors.hpp"

namespace nmems {

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    if (!matrix_.is_square()) throw RejectedInput("density matrix must be square");
    const double defect = hermiticity_defect(matrix_);
    if (defect > kHermitianTol) {
        throw RejectedInput("density matrix is not Hermitian (defect " + std::to_string(defect) +
                            ")");
    }
    const Spectrum s = hermitian_eigen(matrix_);
    if (s.eigenvalues.back() < -kNegativeEigenTol) {
        throw RejectedInput("density matrix has negative eigenvalue " +
                            std::to_string(s.eigenvalues.back()));
    }
    trace_ = trace(matrix_).real();
    if (!(trace_ > 0.0) || trace_ > 1.0 + kTraceTol) {
        throw RejectedInput("density matrix trace " + std::to_string(trace_) +
                            " outside (0, 1]");
    }
    normalization_ =
        trace_ < 1.0 - kSubNormalizedThreshold ? Normalization::sub_normalized : Normalization::unit;
}

DensityMatrix DensityMatrix::renormalized() const {
    return DensityMatrix((1.0 / trace_) * matrix_);
}

bool XStateParams::valid() const {
    constexpr double tol = 1e-12;
    return a >= -tol && b >= -tol && d >= -tol && e >= -tol &&
           std::abs(c) <= std::sqrt(std::max(b, 0.0) * std::max(d, 0.0)) + tol;
}

ComplexMatrix XStateParams::to_matrix() const {
    ComplexMatrix m(4, 4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(1, 2) = c;
    m(2, 1) = std::conj(c);
    m(2, 2) = d;
    m(3, 3) = e;
    return m;
}

ComplexMatrix ghz_state() {
    ComplexMatrix k(8, 1);
    k(0, 0) = std::numbers::sqrt2 / 2.0;
    k(7, 0) = std::numbers::sqrt2 / 2.0;
    return k;
}

ComplexMatrix w_state() {
    ComplexMatrix k(8, 1);
    const double amp = 1.0 / std::sqrt(3.0);
    k(1, 0) = amp;  // |001>
    k(2, 0) = amp;  // |010>
    k(4, 0) = amp;  // |100>
    return k;
}

ComplexMatrix psi_plus() {
    ComplexMatrix k(4, 1);
    k(1, 0) = std::numbers::sqrt2 / 2.0;
    k(2, 0) = std::numbers::sqrt2 / 2.0;
    return k;
}

ComplexMatrix reduce_to_ab(const ComplexMatrix& three_qubit_ket) {
    static constexpr std::array<std::size_t, 3> dims{2, 2, 2};
    static constexpr std::array<std::size_t, 2> keep{0, 1};
    return partial_trace(outer(three_qubit_ket), dims, keep);
}

namespace {

void require_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw RejectedInput("p = " + std::to_string(p) + " outside [0, 1]");
    }
}

void require_angle(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0)) {
        throw RejectedInput("theta = " + std::to_string(theta) + " outside [0, pi/2]");
    }
}

} // namespace

double damping_gamma(double theta) {
    const double s = std::sin(theta);
    return s * s;
}

ComplexMatrix nmems_mixture(double p) {
    require_probability(p);
    static const ComplexMatrix ghz_ab = reduce_to_ab(ghz_state());
    static const ComplexMatrix w_ab = reduce_to_ab(w_state());
    return cplx(p) * ghz_ab + cplx(1.0 - p) * w_ab;
}

ComplexMatrix nmems_closed_form(double p) {
    require_probability(p);
    const double coh = (1.0 - p) / 3.0;
    ComplexMatrix m(4, 4);
    m(0, 0) = (p + 2.0) / 6.0;
    m(1, 1) = coh;
    m(1, 2) = coh;
    m(2, 1) = coh;
    m(2, 2) = coh;
    m(3, 3) = p / 2.0;
    return m;
}

DensityMatrix nmems(double p) {
    ComplexMatrix closed = nmems_closed_form(p);
    const double gap = max_abs_diff(closed, nmems_mixture(p));
    if (gap > 1e-12) {
        throw NumericalFailure("nmems: mixture and closed form disagree by " +
                               std::to_string(gap));
    }
    return DensityMatrix(std::move(closed));
}

DensityMatrix nmems_ad(double p, double theta) {
    require_probability(p);
    require_angle(theta);
    const double keep = 1.0 - damping_gamma(theta);
    const double coh = (1.0 - p) / 3.0 * keep;
    ComplexMatrix m(4, 4);
    m(0, 0) = (p + 2.0) / 6.0;
    m(1, 1) = coh;
    m(1, 2) = coh;
    m(2, 1) = coh;
    m(2, 2) = coh;
    m(3, 3) = p / 2.0 * keep * keep;
    return DensityMatrix(std::move(m));
}

XStateParams x_params_of(const ComplexMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) throw RejectedInput("x_params_of: expected a 4x4 matrix");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool x_slot = i == j || (i == 1 && j == 2) || (i == 2 && j == 1);
            if (!x_slot && std::abs(m(i, j)) >= 1e-10) {
                throw RejectedInput("x_params_of: entry (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) +
                                    ") is non-zero; state is not of the X form");
            }
        }
    return XStateParams{.a = m(0, 0).real(),
                        .b = m(1, 1).real(),
                        .d = m(2, 2).real(),
                        .e = m(3, 3).real(),
                        .c = m(1, 2)};
}

XStateParams x_params_of(const DensityMatrix& rho) { return x_params_of(rho.matrix()); }

} // namespace nmems
