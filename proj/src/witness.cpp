#include "nmems/witness.hpp"

#include <cmath>

#include "nmems/errors.hpp"

namespace nmems {

WitnessOperator witness_generic(int d) {
    if (d < 2) throw RejectedInput("witness_generic: d must be at least 2");
    const auto n = static_cast<std::size_t>(d);
    ComplexMatrix ket(n * n, 1);
    for (std::size_t i = 0; i < n; ++i) ket(i * n + i, 0) = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix w = cplx(1.0 / d) * ComplexMatrix::identity(n * n) - outer(ket);
    return {std::move(w), WitnessKind::teleportation_generic, "W_s(d=" + std::to_string(d) + ")"};
}

WitnessOperator witness_w1() {
    ComplexMatrix w = cplx(4.0 / 9.0) * ComplexMatrix::identity(4) - reduce_to_ab(w_state());
    return {std::move(w), WitnessKind::entanglement_W, "W_t1"};
}

WitnessOperator witness_stabilizer() {
    ComplexMatrix w = ComplexMatrix::identity(4) - kron(pauli::x(), pauli::x()) -
                      kron(pauli::y(), pauli::y());
    return {std::move(w), WitnessKind::teleportation_stabilizer, "W_t2"};
}

WitnessVerdict evaluate(const WitnessOperator& w, const DensityMatrix& rho) {
    if (w.matrix.rows() != rho.dim()) {
        throw RejectedInput("evaluate: witness is " + std::to_string(w.matrix.rows()) +
                            "-dimensional but state is " + std::to_string(rho.dim()));
    }
    const cplx t = trace(multiply(w.matrix, rho.matrix()));
    if (std::abs(t.imag()) >= 1e-10) {
        throw NumericalFailure("evaluate: Tr(W rho) has imaginary part " +
                               std::to_string(t.imag()));
    }
    return {t.real(), t.real() < 0.0, w.name};
}

} // namespace nmems
