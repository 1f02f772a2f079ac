#include <catch2/catch_amalgamated.hpp>

#include "dhopf/errors.hpp"
#include "dhopf/lindstedt.hpp"

#include <cmath>
#include <random>

using namespace dhopf;
using Catch::Approx;

namespace {

LyapunovResult general_at(const TwoGeneParams& base, double fraction) {
    const auto eq = solve_equilibrium(base);
    const auto h = *hopf_point(LoopLinearization::from(base, eq));
    const auto p = base.with_delays(fraction * h.tau_c, (1.0 - fraction) * h.tau_c);
    return general_lyapunov(p, eq, h, taylor_coefficients(p, eq));
}

}  // namespace

TEST_CASE("canonical criticality coefficient is split invariant", "[lindstedt]") {
    const TwoGeneParams p;
    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto r = general_at(p, f);
        CHECK(r.T_coeff == Approx(0.69589401).margin(5e-9));
        CHECK(r.Omega2 == Approx(-6.83900535).margin(5e-8));
        CHECK(r.supercritical);
        CHECK(solvability_residual(r, 2.353110) < 1e-6);
    }
    CHECK(lyapunov_at_onset(p).T_coeff == Approx(general_at(p, 0.5).T_coeff).epsilon(1e-14));
}

TEST_CASE("solvability residual vanishes at the computed coefficients", "[lindstedt][property]") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> lg(std::log(0.3), std::log(5.0)), u(0.2, 0.8), uf(0, 1);
    int n = 0;
    for (int i = 0; i < 300 && n < 100; ++i) {
        TwoGeneParams p;
        p.kappa1 = std::exp(lg(rng));
        p.kappa2 = std::exp(lg(rng));
        p.gamma1 = 0.2 * std::exp(lg(rng));
        p.gamma2 = 0.2 * std::exp(lg(rng));
        p.lambda = std::exp(lg(rng));
        p.theta1 = u(rng) * p.M1();
        p.theta2 = u(rng) * p.M2();
        const auto eq = solve_equilibrium(p);
        const auto h = hopf_point(LoopLinearization::from(p, eq));
        if (!h) {
            continue;
        }
        ++n;
        const double f = uf(rng);
        const auto q = p.with_delays(f * h->tau_c, (1 - f) * h->tau_c);
        const auto r = general_lyapunov(q, eq, *h, taylor_coefficients(q, eq));
        const double scale = std::abs(r.G) + std::abs(r.P * r.Omega2) + std::abs(r.Q0 * r.T_coeff);
        REQUIRE(solvability_residual(r, h->omega_c) < 1e-10 * scale);
        // the split moves the eigenvector phase only
        const auto r0 = general_at(p, 0.5);
        REQUIRE(r.T_coeff == Approx(r0.T_coeff).epsilon(1e-9));
        REQUIRE(r.Omega2 == Approx(r0.Omega2).epsilon(1e-9));
    }
    CHECK(n > 50);
}

TEST_CASE("general reduction collapses to the symmetric closed form", "[lindstedt]") {
    for (double lam : {1.0, 3.0, 6.0}) {
        const auto p = TwoGeneParams{}.with_lambda(lam).symmetrized();
        const auto eq = solve_equilibrium(p);
        const auto h = *hopf_point(LoopLinearization::from(p, eq));
        const auto q = p.with_total_delay(h.tau_c);
        const auto s = symmetric_lyapunov(q, eq, h);
        const auto g = general_lyapunov(q, eq, h, taylor_coefficients(q, eq));
        CHECK(std::abs(g.T_coeff - s.T_coeff) < 1e-12 * std::abs(s.T_coeff));
        CHECK(std::abs(g.Omega2 - s.Omega2) < 1e-12 * std::abs(s.Omega2));
        CHECK(std::abs(g.W0[0]) < 1e-12);
        CHECK(std::abs(g.W2[0]) < 1e-12);
    }
}

TEST_CASE("symmetric-threshold loop and amplitude law", "[lindstedt]") {
    const auto p = TwoGeneParams{}.symmetrized();
    const auto eq = solve_equilibrium(p);
    const auto h = *hopf_point(LoopLinearization::from(p, eq));
    CHECK(h.omega_c == Approx(2.568).margin(1e-3));
    CHECK(h.tau_c == Approx(0.1127).margin(1e-3));
    const auto r = symmetric_lyapunov(p.with_total_delay(h.tau_c), eq, h);
    const auto a = amplitude_law(r, h, h.tau_c + 0.01);
    CHECK(a.A1 / std::sqrt(0.01) == Approx(2.59).margin(0.02));
    CHECK(a.A2 / a.A1 == Approx(std::abs(r.q2)).epsilon(1e-14));
    CHECK(a.Omega < h.omega_c);
    CHECK_THROWS_AS(amplitude_law(r, h, h.tau_c), DomainError);
    CHECK_THROWS_AS(symmetric_lyapunov(TwoGeneParams{}.with_total_delay(h.tau_c), eq, h), DomainError);
    CHECK_THROWS_AS(general_lyapunov(p.with_total_delay(2 * h.tau_c), eq, h,
                                     taylor_coefficients(p, eq)),
                    DomainError);
}

TEST_CASE("Monte-Carlo draws are reproducible and thread independent", "[lindstedt][montecarlo]") {
    const CriticalityRegion region;
    const auto a = draw_criticality_sample(region, 42, 17);
    const auto b = draw_criticality_sample(region, 42, 17);
    CHECK(a.params.kappa1 == b.params.kappa1);
    CHECK(a.params.theta2 == b.params.theta2);
    CHECK(draw_criticality_sample(region, 43, 17).params.kappa1 != a.params.kappa1);

    const auto par = montecarlo_criticality(region, 700, 99);
    const auto ser = montecarlo_criticality_serial(region, 700, 99);
    REQUIRE(par.accepted == 700);
    REQUIRE(ser.accepted == 700);
    CHECK(par.rejected_weak == ser.rejected_weak);
    REQUIRE(par.samples.size() == ser.samples.size());
    for (std::size_t i = 0; i < par.samples.size(); ++i) {
        REQUIRE(par.samples[i].index == ser.samples[i].index);
        REQUIRE(par.samples[i].T_coeff == ser.samples[i].T_coeff);
    }
    CHECK(par.min_T == ser.min_T);
}

TEST_CASE("sampled loops respect the region and the sign property", "[lindstedt][montecarlo][property]") {
    const CriticalityRegion region;
    const auto s = montecarlo_criticality(region, 500, 5);
    CHECK(s.failed_indices.empty());
    CHECK(s.fraction_positive() == 1.0);
    for (const auto& x : s.samples) {
        const auto& p = x.params;
        REQUIRE(p.kappa1 >= region.kappa.lo);
        REQUIRE(p.kappa1 <= region.kappa.hi);
        REQUIRE(p.gamma2 >= region.gamma.lo);
        REQUIRE(p.lambda <= region.lambda.hi);
        REQUIRE(p.theta1 >= region.theta_lo * p.M1());
        REQUIRE(p.theta2 <= region.theta_hi * p.M2());
        REQUIRE(x.AB > p.gamma1 * p.gamma2);
        REQUIRE(x.T_coeff > 0.0);
    }
}
