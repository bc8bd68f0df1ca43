#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nmems/errors.hpp"
#include "nmems/measures.hpp"
#include "oracles.hpp"

using namespace nmems;
using std::numbers::pi;

namespace {

DensityMatrix bell() { return DensityMatrix(outer(psi_plus())); }
DensityMatrix maximally_mixed() { return DensityMatrix(cplx(0.25) * ComplexMatrix::identity(4)); }

double conc(double p) { return concurrence_x(x_params_of(nmems::nmems(p))); }

} // namespace

TEST_CASE("concurrence_x anchors") {
    CHECK(conc(0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(conc(7.0 - std::sqrt(45.0)) < 1e-12);
    CHECK(concurrence_x(x_params_of(nmems_ad(0.0, pi / 4.0))) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(concurrence_x(x_params_of(nmems_ad(0.0, pi / 2.0))) == 0.0);
}

TEST_CASE("concurrence_x follows the closed form for the family") {
    for (int i = 0; i <= 1000; ++i) {
        const double p = i * 1e-3;
        const double expected = 2.0 * std::max((1.0 - p) / 3.0 - std::sqrt(p * (p + 2.0) / 12.0), 0.0);
        REQUIRE(std::abs(conc(p) - expected) < 1e-14);
    }
}

TEST_CASE("damping scales concurrence by 1 - gamma") {
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 46; ++j) {
            const double p = i * 0.292 / 99.0;
            const double theta = j * (pi / 4.0) / 45.0;
            const double damped = concurrence_x(x_params_of(nmems_ad(p, theta)));
            REQUIRE(std::abs(damped - (1.0 - damping_gamma(theta)) * conc(p)) < 1e-12);
        }
}

TEST_CASE("concurrence_wootters") {
    CHECK(concurrence_wootters(bell()) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(concurrence_wootters(maximally_mixed()) < 1e-12);
    CHECK_THROWS_AS(concurrence_wootters(nmems_ad(0.1, 0.5)), RejectedInput);
}

TEST_CASE("Wootters and X-formula agree") {
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        REQUIRE(std::abs(concurrence_wootters(nmems::nmems(p)) - conc(p)) < 1e-9);
    }
    std::mt19937_64 rng(1000);
    for (int i = 0; i < 1000; ++i) {
        const XStateParams xp = oracle::random_x_state(rng);
        REQUIRE(xp.valid());
        const DensityMatrix rho(xp.to_matrix());
        REQUIRE(std::abs(concurrence_wootters(rho) - concurrence_x(xp)) < 1e-9);
    }
}

TEST_CASE("correlation_matrix") {
    for (double p : {0.0, 0.2, 0.7}) {
        const CorrelationMatrix t = correlation_matrix(nmems::nmems(p));
        CHECK(t(0, 0) == doctest::Approx(2.0 * (1.0 - p) / 3.0));
        CHECK(t(1, 1) == doctest::Approx(2.0 * (1.0 - p) / 3.0));
        CHECK(t(2, 2) == doctest::Approx((4.0 * p - 1.0) / 3.0));
        CHECK(std::abs(t(0, 1)) + std::abs(t(0, 2)) + std::abs(t(1, 2)) < 1e-15);
        // Tr(W_t2 rho) = 1 - Txx - Tyy.
        CHECK(1.0 - t(0, 0) - t(1, 1) == doctest::Approx((4.0 * p - 1.0) / 3.0));
    }
    const CorrelationMatrix z = correlation_matrix(maximally_mixed());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(z(i, j)) < 1e-15);
    const CorrelationMatrix b = correlation_matrix(bell());
    CHECK(b(0, 0) == doctest::Approx(1.0));
    CHECK(b(1, 1) == doctest::Approx(1.0));
    CHECK(b(2, 2) == doctest::Approx(-1.0));
}

TEST_CASE("correlation entries bounded for random states") {
    std::mt19937_64 rng(55);
    for (int k = 0; k < 200; ++k) {
        const CorrelationMatrix t = correlation_matrix(DensityMatrix(oracle::random_density(rng, 4)));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) REQUIRE(std::abs(t(i, j)) <= 1.0 + 1e-9);
    }
}

TEST_CASE("teleportation_fidelity") {
    const TeleportationFidelity f0 = teleportation_fidelity(nmems::nmems(0.0));
    CHECK(f0.fidelity == doctest::Approx(7.0 / 9.0).epsilon(1e-12));
    CHECK(f0.useful);

    for (int i = 0; i < 250; ++i) {
        const double p = i * 1e-3;
        const TeleportationFidelity f = teleportation_fidelity(nmems::nmems(p));
        REQUIRE(f.useful);
        REQUIRE(std::abs(f.fidelity - (7.0 - 4.0 * p) / 9.0) < 1e-10);
    }
    const TeleportationFidelity edge = teleportation_fidelity(nmems::nmems(0.25));
    CHECK(edge.n_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(edge.useful);
    CHECK(edge.fidelity == doctest::Approx(2.0 / 3.0));

    CHECK(teleportation_fidelity(bell()).fidelity == doctest::Approx(1.0));
    CHECK_THROWS_AS(teleportation_fidelity(nmems_ad(0.0, 0.5)), RejectedInput);
}

TEST_CASE("fidelity_paper_adc") {
    CHECK(std::abs(fidelity_paper_adc(0.0, 0.0) - 11.0 / 18.0) < 1e-12);
    CHECK(fidelity_paper_adc(0.0, pi / 2.0) == doctest::Approx(0.5).epsilon(1e-14));
    const double expected = 0.5 + 0.75 / 9.0 + std::sqrt(3.0 * 0.25 * 2.25) / 18.0;
    CHECK(fidelity_paper_adc(0.25, 0.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(fidelity_paper_adc(0.25, 0.0) == doctest::Approx(0.6555).epsilon(1e-4));

    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 90; ++j) {
            const double p = i / 100.0;
            const double theta = j * (pi / 2.0) / 90.0;
            REQUIRE(std::abs(fidelity_paper_adc(p, theta) - fidelity_paper_adc_factored(p, theta)) <
                    1e-7);
        }

    CHECK_THROWS_AS(fidelity_paper_adc(-0.1, 0.0), RejectedInput);
    CHECK_THROWS_AS(fidelity_paper_adc(0.1, 2.0), RejectedInput);
}

TEST_CASE("fidelity discrepancy at theta = 0") {
    const FidelityDiscrepancy d = fidelity_discrepancy(0.0);
    CHECK(d.undamped_closed_form == doctest::Approx(7.0 / 9.0));
    CHECK(d.damped_formula_at_zero == doctest::Approx(11.0 / 18.0));
    CHECK(d.general_criterion == doctest::Approx(7.0 / 9.0));
    CHECK(describe(d).find("0.611111") != std::string::npos);
}

TEST_CASE("chsh_criterion") {
    const ChshResult b = chsh_criterion(bell());
    CHECK(b.m_value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(b.violates);
    CHECK(chsh_criterion(nmems::nmems(0.0)).m_value == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    for (int i = 0; i <= 1000; ++i) REQUIRE_FALSE(chsh_criterion(nmems::nmems(i * 1e-3)).violates);
}

TEST_CASE("von_neumann_entropy") {
    CHECK(std::abs(von_neumann_entropy(bell())) < 1e-12);
    CHECK(von_neumann_entropy(maximally_mixed()) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(von_neumann_entropy(nmems::nmems(0.0)) ==
          doctest::Approx(oracle::shannon2({1.0 / 3.0, 2.0 / 3.0})).epsilon(1e-13));
    CHECK(von_neumann_entropy(nmems::nmems(0.0)) == doctest::Approx(0.9183).epsilon(1e-4));

    const DensityMatrix sub = nmems_ad(0.0, pi / 4.0);
    CHECK(von_neumann_entropy(sub, EntropyInput::raw) ==
          doctest::Approx(2.0 / 3.0 * std::log2(3.0)).epsilon(1e-13));
    CHECK(von_neumann_entropy(sub, EntropyInput::renormalized) == doctest::Approx(1.0).epsilon(1e-13));

    std::mt19937_64 rng(66);
    for (int i = 0; i < 200; ++i) {
        const double s = von_neumann_entropy(DensityMatrix(oracle::random_density(rng, 4)));
        REQUIRE(s >= 0.0);
        REQUIRE(s <= 2.0 + 1e-12);
    }
}

TEST_CASE("mid_paper") {
    for (int i = 0; i <= 100; ++i) {
        REQUIRE(mid_paper(i / 100.0, 0.0) == 0.0);
        REQUIRE(mid_paper(i / 100.0, 0.0, EntropyInput::raw) == 0.0);
    }
    const double base = oracle::shannon2({1.0 / 3.0, 2.0 / 3.0});
    CHECK(mid_paper(0.0, pi / 4.0) == doctest::Approx(1.0 - base).epsilon(1e-12));
    CHECK(mid_paper(0.0, pi / 4.0, EntropyInput::raw) ==
          doctest::Approx(2.0 / 3.0 * std::log2(3.0) - base).epsilon(1e-12));
}

TEST_CASE("mid_dephasing") {
    const std::array<double, 4> d{0.1, 0.2, 0.3, 0.4};
    CHECK(std::abs(mid_dephasing(DensityMatrix(ComplexMatrix::diagonal(d)))) < 1e-12);
    CHECK(mid_dephasing(bell()) == doctest::Approx(1.0).epsilon(1e-12));
    for (double p : {0.0, 0.1, 0.2, 0.5, 0.9}) {
        const double diag = oracle::shannon2({(p + 2) / 6, (1 - p) / 3, (1 - p) / 3, p / 2});
        const double spec = oracle::shannon2({(p + 2) / 6, 2 * (1 - p) / 3, p / 2});
        CHECK(mid_dephasing(nmems::nmems(p)) == doctest::Approx(diag - spec).epsilon(1e-12));
    }
}

TEST_CASE("discord_x anchors") {
    const DiscordBreakdown b = discord_x(nmems::nmems(0.0));
    const double h23 = oracle::shannon2({2.0 / 3.0, 1.0 / 3.0});
    const double t1 = 0.5 + std::sqrt(5.0) / 6.0;
    const double q1 = h23 - h23 + oracle::shannon2({t1, 1.0 - t1});
    CHECK(b.q1 == doctest::Approx(q1).epsilon(1e-12));
    CHECK(b.discord == b.q1);
    CHECK(b.discord == doctest::Approx(0.5500).epsilon(1e-4));
    CHECK(b.discord == std::min(b.q1, b.q2));
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        sum += b.eps[i];
        if (i) CHECK(b.eps[i] <= b.eps[i - 1]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    ComplexMatrix zero_zero(4, 4);
    zero_zero(0, 0) = 1.0;
    CHECK(std::abs(discord_x(DensityMatrix(zero_zero)).discord) < 1e-12);

    ComplexMatrix off = nmems_closed_form(0.1);
    off(0, 1) = 0.01;
    off(1, 0) = 0.01;
    CHECK_THROWS_AS(discord_x(DensityMatrix(off)), RejectedInput);
    CHECK_THROWS_AS(discord_x(nmems_ad(0.1, 0.4)), RejectedInput);
}

TEST_CASE("discord_x agrees with measurement search") {
    for (double p : {0.0, 0.03, 0.1, 0.2, 0.29, 0.6, 0.95}) {
        CAPTURE(p);
        CHECK(std::abs(discord_x(nmems::nmems(p)).discord - oracle::discord_brute_force(nmems_closed_form(p))) <
              1e-6);
    }
}

TEST_CASE("discord and concurrence on the entangled range") {
    double prev_c = 1e9, prev_d = 1e9;
    for (int i = 0; i < 292; ++i) {
        const double p = i * 1e-3;
        const double c = conc(p);
        const double d = discord_x(nmems::nmems(p)).discord;
        REQUIRE(c < prev_c);
        REQUIRE(d < prev_d);
        prev_c = c;
        prev_d = d;
        if (p <= 0.05) REQUIRE(c > d);
        if (p >= 0.08) REQUIRE(c < d);
    }
}

TEST_CASE("discord_closed_form") {
    const DiscordClosedForm z = discord_closed_form(0.0);
    CHECK(z.t1 == doctest::Approx(0.5 + std::sqrt(5.0) / 6.0));
    CHECK(z.t2 == doctest::Approx(0.5 - std::sqrt(5.0) / 6.0));
    const DiscordClosedForm one = discord_closed_form(1.0);
    CHECK(one.t1 == 0.5);
    CHECK(one.t2 == 0.5);
    CHECK(oracle::shannon2({one.t1, one.t2}) == 1.0);
    CHECK(z.value == std::min(z.branch1, z.branch2));
    CHECK_THROWS_AS(discord_closed_form(1.2), RejectedInput);

    // The published branches do not reproduce discord_x; the residual is
    // recorded rather than asserted away.
    const DiscordResidual r = discord_residuals(0.0);
    CHECK(std::abs(r.value_minus_discord) > 0.1);
    CHECK(std::isfinite(r.branch1_minus_q1));
    CHECK(std::isfinite(r.branch2_minus_q2));
}
