#pragma once

#include <string>

#include "nmems/matrix.hpp"
#include "nmems/states.hpp"

namespace nmems {

enum class WitnessKind { teleportation_generic, entanglement_W, teleportation_stabilizer };

struct WitnessOperator {
    ComplexMatrix matrix;
    WitnessKind kind;
    std::string name;
};

struct WitnessVerdict {
    double expectation;
    bool detected;  // expectation < 0, strictly
    std::string witness_name;
};

/// (1/d) I - |psi+><psi+| on C^d (x) C^d with |psi+> = sum_i |ii> / sqrt d.
WitnessOperator witness_generic(int d);

/// (4/9) I - Tr_c|W><W|.
WitnessOperator witness_w1();

/// I - sx (x) sx - sy (x) sy.
WitnessOperator witness_stabilizer();

/// Re Tr(W rho). The imaginary part must vanish to 1e-10.
WitnessVerdict evaluate(const WitnessOperator& w, const DensityMatrix& rho);

} // namespace nmems
