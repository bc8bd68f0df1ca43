#include "nmems/channel.hpp"

#include <cmath>

#include "nmems/errors.hpp"

namespace nmems {

namespace {

ComplexMatrix sandwich_sum(const std::vector<ComplexMatrix>& ks, const ComplexMatrix& rho) {
    ComplexMatrix out(rho.rows(), rho.cols());
    for (const auto& k : ks) out += multiply(multiply(k, rho), dagger(k));
    return out;
}

void require_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw RejectedInput(std::string(name) + " = " + std::to_string(v) + " outside [0, 1]");
    }
}

} // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators, std::string label)
    : ops_(std::move(operators)), label_(std::move(label)) {
    if (ops_.empty()) throw RejectedInput("Kraus channel needs at least one operator");
    for (const auto& k : ops_) {
        if (!k.is_square() || k.rows() != ops_.front().rows()) {
            throw RejectedInput("Kraus operators must be square and share dimensions");
        }
    }
    trace_preserving_ = completeness_defect() <= 1e-10;
}

double KrausChannel::completeness_defect() const {
    ComplexMatrix sum(dim(), dim());
    for (const auto& k : ops_) sum += multiply(dagger(k), k);
    return max_abs_diff(sum, ComplexMatrix::identity(dim()));
}

KrausChannel adc(double gamma) {
    require_unit_interval(gamma, "gamma");
    ComplexMatrix e0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
    ComplexMatrix e1{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
    return KrausChannel({std::move(e0), std::move(e1)}, "ADC(gamma=" + std::to_string(gamma) + ")");
}

KrausChannel gadc(double gamma, double lambda) {
    require_unit_interval(gamma, "gamma");
    require_unit_interval(lambda, "lambda");
    const double a = std::sqrt(lambda);
    const double b = std::sqrt(1.0 - lambda);
    const double g = std::sqrt(gamma);
    const double h = std::sqrt(1.0 - gamma);
    ComplexMatrix e0{{a, 0.0}, {0.0, a * h}};
    ComplexMatrix e1{{0.0, a * g}, {0.0, 0.0}};
    ComplexMatrix e2{{b * h, 0.0}, {0.0, b}};
    ComplexMatrix e3{{0.0, 0.0}, {b * g, 0.0}};
    return KrausChannel({std::move(e0), std::move(e1), std::move(e2), std::move(e3)},
                        "GADC(gamma=" + std::to_string(gamma) +
                            ",lambda=" + std::to_string(lambda) + ")");
}

DensityMatrix apply_single(const KrausChannel& ch, const DensityMatrix& rho) {
    if (ch.dim() != rho.dim()) {
        throw RejectedInput("apply_single: channel acts on dimension " + std::to_string(ch.dim()) +
                            " but state has dimension " + std::to_string(rho.dim()));
    }
    return DensityMatrix(sandwich_sum(ch.operators(), rho.matrix()));
}

DensityMatrix apply_correlated_pair(const KrausChannel& ch, const DensityMatrix& rho) {
    if (ch.operators().size() != 2 || ch.dim() != 2) {
        throw RejectedInput("apply_correlated_pair: needs exactly two 2x2 Kraus operators");
    }
    if (rho.dim() != 4) throw RejectedInput("apply_correlated_pair: state must be 4x4");
    std::vector<ComplexMatrix> pair;
    for (const auto& k : ch.operators()) pair.push_back(kron(k, k));
    return DensityMatrix(sandwich_sum(pair, rho.matrix()));
}

DensityMatrix apply_product_pair(const KrausChannel& ch, const DensityMatrix& rho) {
    if (ch.dim() != 2) throw RejectedInput("apply_product_pair: Kraus operators must be 2x2");
    if (rho.dim() != 4) throw RejectedInput("apply_product_pair: state must be 4x4");
    std::vector<ComplexMatrix> pair;
    for (const auto& ki : ch.operators())
        for (const auto& kj : ch.operators()) pair.push_back(kron(ki, kj));
    return DensityMatrix(sandwich_sum(pair, rho.matrix()));
}

} // namespace nmems
