#pragma once

#include <string>
#include <vector>

#include "nmems/matrix.hpp"
#include "nmems/states.hpp"

namespace nmems {

/// Ordered Kraus set. `trace_preserving()` is computed at construction as
/// sum_i K_i^dagger K_i == I to 1e-10.
class KrausChannel {
public:
    KrausChannel(std::vector<ComplexMatrix> operators, std::string label);

    const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }
    const std::string& label() const noexcept { return label_; }
    bool trace_preserving() const noexcept { return trace_preserving_; }
    std::size_t dim() const noexcept { return ops_.front().rows(); }

    /// max |sum K^dagger K - I|, the quantity behind trace_preserving().
    double completeness_defect() const;

private:
    std::vector<ComplexMatrix> ops_;
    std::string label_;
    bool trace_preserving_;
};

KrausChannel adc(double gamma);
KrausChannel gadc(double gamma, double lambda);

/// sum_i K_i rho K_i^dagger.
DensityMatrix apply_single(const KrausChannel& ch, const DensityMatrix& rho);

/// sum_i (E_i (x) E_i) rho (E_i (x) E_i)^dagger for a two-operator qubit
/// channel. Not trace preserving in general; the result carries the tag
/// matching its trace.
DensityMatrix apply_correlated_pair(const KrausChannel& ch, const DensityMatrix& rho);

/// sum_{i,j} (K_i (x) K_j) rho (K_i (x) K_j)^dagger, independent noise on
/// each qubit.
DensityMatrix apply_product_pair(const KrausChannel& ch, const DensityMatrix& rho);

} // namespace nmems
