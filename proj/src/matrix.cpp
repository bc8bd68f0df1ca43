#include "nmems/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nmems/errors.hpp"

namespace nmems {

namespace {

void require_finite(std::span<const cplx> entries) {
    for (const auto& z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw RejectedInput("matrix entry is not finite");
        }
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw RejectedInput(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) +
                            "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw RejectedInput("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw RejectedInput("matrix dimensions must be positive");
    if (data_.size() != rows * cols) throw RejectedInput("entry count does not match rows x cols");
    require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ == 0 || cols_ == 0) throw RejectedInput("matrix dimensions must be positive");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw RejectedInput("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    require_finite(m.entries());
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw RejectedInput("multiply: inner dimensions differ (" + std::to_string(a.cols()) +
                            " vs " + std::to_string(b.rows()) + ")");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = std::conj(a(i, j));
    return out;
}

cplx trace(const ComplexMatrix& a) {
    if (!a.is_square()) throw RejectedInput("trace: matrix is not square");
    cplx t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

ComplexMatrix outer(const ComplexMatrix& ket) {
    if (ket.cols() != 1) throw RejectedInput("outer: expected a column vector");
    return multiply(ket, dagger(ket));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
    if (!a.is_square()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

namespace {

double max_off_diagonal(const ComplexMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

// Annihilates a(p,q) with the unitary U = D R, where D puts the phase of
// a(p,q) on column q and R is the real Jacobi rotation of the resulting
// real-symmetric 2x2 block. Applies A <- U^dagger A U and V <- V U.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cplx phase = apq / mag;  // e^{i phi}

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const cplx u_pp = c;
    const cplx u_pq = s;
    const cplx u_qp = -s * std::conj(phase);
    const cplx u_qq = c * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = akp * u_pp + akq * u_qp;
        a(k, q) = akp * u_pq + akq * u_qq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = vkp * u_pp + vkq * u_qp;
        v(k, q) = vkp * u_pq + vkq * u_qq;
    }
}

} // namespace

Spectrum hermitian_eigen(const ComplexMatrix& input) {
    if (!input.is_square()) throw RejectedInput("hermitian_eigen: matrix is not square");
    const double defect = hermiticity_defect(input);
    if (defect > kHermitianTol) {
        throw RejectedInput("hermitian_eigen: matrix is not Hermitian (defect " +
                            std::to_string(defect) + ")");
    }

    const std::size_t n = input.rows();
    // Symmetrize so roundoff-level asymmetry does not leak into the rotations.
    ComplexMatrix a = 0.5 * (input + dagger(input));
    ComplexMatrix v = ComplexMatrix::identity(n);

    int sweep = 0;
    while (max_off_diagonal(a) >= kJacobiOffDiagTol) {
        if (sweep++ == kJacobiMaxSweeps) {
            throw NumericalFailure("hermitian_eigen: no convergence after " +
                                   std::to_string(kJacobiMaxSweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    Spectrum out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

double clamp_eigenvalue(double lambda) {
    if (lambda >= 0.0) return lambda;
    if (lambda >= -kNegativeEigenTol) return 0.0;
    throw RejectedInput("eigenvalue " + std::to_string(lambda) + " is below the PSD tolerance");
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
    const Spectrum s = hermitian_eigen(a);
    const std::size_t n = a.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double root = std::sqrt(clamp_eigenvalue(s.eigenvalues[k]));
        if (root == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = root * s.eigenvectors(i, k);
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(s.eigenvectors(j, k));
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& a, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    if (!a.is_square()) throw RejectedInput("partial_trace: matrix is not square");
    if (dims.empty()) throw RejectedInput("partial_trace: no subsystem dimensions given");
    std::size_t total = 1;
    for (auto d : dims) {
        if (d == 0) throw RejectedInput("partial_trace: zero subsystem dimension");
        total *= d;
    }
    if (total != a.rows()) {
        throw RejectedInput("partial_trace: product of dims " + std::to_string(total) +
                            " does not match matrix size " + std::to_string(a.rows()));
    }
    if (keep.empty()) throw RejectedInput("partial_trace: keep set is empty");
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size()) throw RejectedInput("partial_trace: keep index out of range");
        if (kept[k]) throw RejectedInput("partial_trace: duplicate keep index");
        kept[k] = true;
    }

    const std::size_t m = dims.size();
    std::size_t kept_size = 1;
    for (std::size_t s = 0; s < m; ++s)
        if (kept[s]) kept_size *= dims[s];

    // Split a full index into (kept multi-index, traced multi-index), both
    // flattened in ascending subsystem order.
    auto split = [&](std::size_t full, std::size_t& kept_idx, std::size_t& traced_idx) {
        std::vector<std::size_t> digits(m);
        for (std::size_t s = m; s-- > 0;) {
            digits[s] = full % dims[s];
            full /= dims[s];
        }
        kept_idx = 0;
        traced_idx = 0;
        for (std::size_t s = 0; s < m; ++s) {
            if (kept[s])
                kept_idx = kept_idx * dims[s] + digits[s];
            else
                traced_idx = traced_idx * dims[s] + digits[s];
        }
    };

    ComplexMatrix out(kept_size, kept_size);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t ki, ti;
        split(i, ki, ti);
        for (std::size_t j = 0; j < total; ++j) {
            std::size_t kj, tj;
            split(j, kj, tj);
            if (ti == tj) out(ki, kj) += a(i, j);
        }
    }
    return out;
}

namespace pauli {
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
} // namespace pauli

} // namespace nmems
