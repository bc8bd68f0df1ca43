#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nmems {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sized for the small (<= 8x8) operators
/// used throughout the library; no attempt is made at blocking or sparsity.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    /// Row-wise literal, e.g. `ComplexMatrix{{1, 0}, {0, 1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const cplx> entries() const noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);

/// |v><v| for a column vector.
ComplexMatrix outer(const ComplexMatrix& ket);

/// Largest elementwise |a - b|. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest elementwise |a - a^dagger|.
double hermiticity_defect(const ComplexMatrix& a);

struct Spectrum {
    std::vector<double> eigenvalues;  // descending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kJacobiOffDiagTol = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kNegativeEigenTol = 1e-10;

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws RejectedInput for non-Hermitian input and
/// NumericalFailure if the off-diagonal mass does not fall below
/// kJacobiOffDiagTol within kJacobiMaxSweeps sweeps.
Spectrum hermitian_eigen(const ComplexMatrix& a);

/// Eigenvalues in [-kNegativeEigenTol, 0) are clamped to zero; anything
/// more negative is a rejected input.
double clamp_eigenvalue(double lambda);

ComplexMatrix psd_sqrt(const ComplexMatrix& a);

/// Reduced matrix over the subsystems listed in `keep` (any order; the
/// result follows ascending subsystem order).
ComplexMatrix partial_trace(const ComplexMatrix& a, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
} // namespace pauli

} // namespace nmems
