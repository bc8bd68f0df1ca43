#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nmems/channel.hpp"
#include "nmems/errors.hpp"
#include "oracles.hpp"

using namespace nmems;

namespace {

ComplexMatrix projector00() {
    ComplexMatrix m(4, 4);
    m(0, 0) = 1.0;
    return m;
}

} // namespace

TEST_CASE("adc") {
    const KrausChannel id = adc(0.0);
    CHECK(id.operators()[0] == ComplexMatrix::identity(2));
    CHECK(id.operators()[1] == ComplexMatrix(2, 2));
    CHECK(id.trace_preserving());

    const KrausChannel full = adc(1.0);
    CHECK(full.operators()[0] == (ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}));
    CHECK(full.operators()[1] == (ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}));

    CHECK(adc(0.3).trace_preserving());
    CHECK(adc(0.3).completeness_defect() < 1e-15);
    CHECK_THROWS_AS(adc(-0.1), RejectedInput);
    CHECK_THROWS_AS(adc(1.1), RejectedInput);
}

TEST_CASE("gadc") {
    const KrausChannel g = gadc(0.35, 1.0);
    const KrausChannel a = adc(0.35);
    CHECK(max_abs_diff(g.operators()[0], a.operators()[0]) == 0.0);
    CHECK(max_abs_diff(g.operators()[1], a.operators()[1]) == 0.0);
    CHECK(g.operators()[2] == ComplexMatrix(2, 2));
    CHECK(g.operators()[3] == ComplexMatrix(2, 2));

    std::mt19937_64 rng(8);
    const DensityMatrix rho(oracle::random_density(rng, 2));
    const DensityMatrix pumped = apply_single(gadc(1.0, 0.0), rho);
    CHECK(max_abs_diff(pumped.matrix(), ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}) < 1e-15);

    CHECK(gadc(0.4, 0.7).trace_preserving());
    CHECK_THROWS_AS(gadc(0.4, 1.5), RejectedInput);
    CHECK_THROWS_AS(gadc(-0.4, 0.5), RejectedInput);
}

TEST_CASE("completeness over 500 random parameters") {
    std::mt19937_64 rng(500);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double g = u(rng);
        const double l = u(rng);
        REQUIRE(gadc(g, l).completeness_defect() <= 1e-10);
        REQUIRE(adc(g).completeness_defect() <= 1e-10);
    }
}

TEST_CASE("KrausChannel rejects mixed dimensions") {
    CHECK_THROWS_AS(KrausChannel({ComplexMatrix::identity(2), ComplexMatrix::identity(4)}, "bad"),
                    RejectedInput);
    CHECK_FALSE(KrausChannel({ComplexMatrix::identity(2), ComplexMatrix::identity(2)}, "double")
                    .trace_preserving());
}

TEST_CASE("apply_single") {
    for (double g : {0.0, 0.2, 0.75, 1.0}) {
        const DensityMatrix excited(ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}});
        const DensityMatrix out = apply_single(adc(g), excited);
        CHECK(out(0, 0).real() == doctest::Approx(g));
        CHECK(out(1, 1).real() == doctest::Approx(1.0 - g));
    }

    std::mt19937_64 rng(12);
    const DensityMatrix rho(oracle::random_density(rng, 2));
    CHECK(max_abs_diff(apply_single(adc(0.0), rho).matrix(), rho.matrix()) < 1e-15);
    CHECK(max_abs_diff(apply_single(gadc(0.6, 1.0), rho).matrix(),
                       apply_single(adc(0.6), rho).matrix()) < 1e-15);

    CHECK_THROWS_AS(apply_single(adc(0.1), nmems::nmems(0.1)), RejectedInput);
}

TEST_CASE("adc composes as a semigroup") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix rho(oracle::random_density(rng, 2));
        const double g1 = u(rng);
        const double g2 = u(rng);
        const DensityMatrix twice = apply_single(adc(g2), apply_single(adc(g1), rho));
        const DensityMatrix once = apply_single(adc(1.0 - (1.0 - g1) * (1.0 - g2)), rho);
        REQUIRE(max_abs_diff(twice.matrix(), once.matrix()) < 1e-12);
    }
}

TEST_CASE("apply_correlated_pair") {
    std::mt19937_64 rng(4);
    const DensityMatrix rho(oracle::random_density(rng, 4));
    CHECK(max_abs_diff(apply_correlated_pair(adc(0.0), rho).matrix(), rho.matrix()) < 1e-15);

    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            const double p = i / 10.0;
            const double theta = j * (std::numbers::pi / 2.0) / 10.0;
            const double g = damping_gamma(theta);
            const DensityMatrix mapped = apply_correlated_pair(adc(g), nmems::nmems(p));
            const ComplexMatrix gap = mapped.matrix() - nmems_ad(p, theta).matrix();
            REQUIRE(max_abs_diff(gap, cplx(g * g * p / 2.0) * projector00()) < 1e-12);
        }

    for (double theta : {0.2, 0.7, 1.3})
        CHECK(max_abs_diff(apply_correlated_pair(adc(damping_gamma(theta)), nmems::nmems(0.0)).matrix(),
                           nmems_ad(0.0, theta).matrix()) < 1e-15);

    CHECK_THROWS_AS(apply_correlated_pair(gadc(0.2, 0.5), nmems::nmems(0.1)), RejectedInput);
}

TEST_CASE("apply_product_pair") {
    std::mt19937_64 rng(6);
    const DensityMatrix rho(oracle::random_density(rng, 4));
    CHECK(max_abs_diff(apply_product_pair(adc(0.0), rho).matrix(), rho.matrix()) < 1e-15);
    CHECK(max_abs_diff(apply_product_pair(adc(1.0), rho).matrix(), projector00()) < 1e-15);

    const DensityMatrix prod = apply_product_pair(adc(0.5), nmems::nmems(0.0));
    CHECK(prod.trace_value() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(prod.is_unit());
    const DensityMatrix corr = apply_correlated_pair(adc(0.5), nmems::nmems(0.0));
    CHECK(corr.trace_value() == doctest::Approx(2.0 / 3.0));
    CHECK(corr.normalization() == Normalization::sub_normalized);

    CHECK_THROWS_AS(apply_product_pair(KrausChannel({ComplexMatrix::identity(4)}, "4d"), rho),
                    RejectedInput);
}

TEST_CASE("product pair preserves trace and positivity") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const DensityMatrix rho(oracle::random_density(rng, 4));
        const KrausChannel ch = (i % 2 == 0) ? adc(u(rng)) : gadc(u(rng), u(rng));
        const DensityMatrix out = apply_product_pair(ch, rho);
        REQUIRE(std::abs(out.trace_value() - 1.0) < 1e-12);
        REQUIRE(hermitian_eigen(out.matrix()).eigenvalues.back() >= -1e-10);
    }
}
