#include <catch2/catch_amalgamated.hpp>

#include "dhopf/errors.hpp"
#include "dhopf/spectrum.hpp"

#include <cmath>
#include <numbers>

using namespace dhopf;
using Catch::Approx;

namespace {

struct Canon {
    TwoGeneParams p;
    Equilibrium eq = solve_equilibrium(p);
    LoopLinearization lin = LoopLinearization::from(p, eq);
    QuasiPolynomial q = QuasiPolynomial::two_gene(lin);
    HopfPoint h = *hopf_point(lin);
};

}  // namespace

TEST_CASE("quasi-polynomial value and derivative", "[spectrum]") {
    const Canon c;
    const cplx mu(-0.3, 1.1);
    CHECK(std::abs(c.q.value(mu, 0.2) - char_eval(mu, 0.2, c.eq.A, c.eq.B, 0.25, 0.5)) < 1e-14);
    const double h = 1e-6;
    const cplx fd = (c.q.value(mu + h, 0.2) - c.q.value(mu - h, 0.2)) / (2 * h);
    CHECK(std::abs(c.q.derivative(mu, 0.2) - fd) < 1e-8);
    // derivative is holomorphic: the imaginary step gives the same slope
    const cplx fdi = (c.q.value(mu + cplx(0, h), 0.2) - c.q.value(mu - cplx(0, h), 0.2)) / cplx(0, 2 * h);
    CHECK(std::abs(c.q.derivative(mu, 0.2) - fdi) < 1e-8);
}

TEST_CASE("delay-free leading root", "[spectrum]") {
    const Canon c;
    const cplx r = leading_delay_free_root(c.q);
    // (mu + g1)(mu + g2) + AB = 0
    CHECK(r.real() == Approx(-0.375).epsilon(1e-14));
    CHECK(r.imag() == Approx(std::sqrt(0.125 + c.lin.loop_gain() - 0.375 * 0.375)).epsilon(1e-12));
    CHECK(std::abs(c.q.value(r, 0.0)) < 1e-12);
}

TEST_CASE("Newton converges to the Hopf root and reports failure", "[spectrum]") {
    const Canon c;
    const auto n = newton_root(c.q, cplx(0.05, 2.2), c.h.tau_c);
    CHECK(std::abs(n.root - cplx(0, c.h.omega_c)) < 1e-10);
    CHECK(n.residual < 1e-12);
    CHECK(n.iterations <= 50);
    // a polynomial with no nearby root: loop gain zero, start far off
    const QuasiPolynomial dead{{1.0, 1.0}, 0.0};
    try {
        (void)newton_root(dead, cplx(std::nan(""), 0.0), 0.1);
        FAIL("expected NumericalError");
    } catch (const NumericalError&) {
        SUCCEED();
    }
}

TEST_CASE("root path crosses at the closed-form onset", "[spectrum]") {
    const Canon c;
    const auto grid = tau_range(0.0, 0.6, 0.005);
    REQUIRE(grid.size() == 121);
    const auto path = continue_root(c.q, grid);
    REQUIRE_FALSE(path.truncated);
    REQUIRE(path.crossings.size() == 1);
    CHECK(path.crossings[0].tau == Approx(c.h.tau_c).margin(1e-8));
    CHECK(path.crossings[0].omega == Approx(c.h.omega_c).margin(1e-6));
    for (double r : path.residual) {
        REQUIRE(r < 1e-12);
    }
    // real part increases monotonically through the crossing
    for (std::size_t i = 1; i < path.mu.size(); ++i) {
        REQUIRE(path.mu[i].real() > path.mu[i - 1].real());
    }
    const cplx d = fd_transversality(c.q, path, c.h.tau_c);
    const auto t = transversality(c.eq.A, c.eq.B, 0.25, 0.5);
    CHECK(d.real() == Approx(t.re).epsilon(1e-3));
    CHECK(d.imag() == Approx(t.im).epsilon(1e-3));
    const double angle = std::atan2(-d.imag(), d.real()) * 180 / std::numbers::pi;
    CHECK(angle == Approx(18.0).margin(1.0));
}

TEST_CASE("the crossed root stays in the right half-plane", "[spectrum]") {
    const Canon c;
    const auto path = continue_root(c.q, tau_range(0.0, 3.0, 0.01));
    REQUIRE_FALSE(path.truncated);
    CHECK(path.crossings.size() == 1);
    CHECK(path.mu.back().real() > 0.0);
}

TEST_CASE("grid helpers", "[spectrum]") {
    CHECK(tau_range(0.0, 1.0, 0.25).size() == 5);
    CHECK(tau_range(0.0, 1.0, 0.25).back() == 1.0);
    CHECK_THROWS_AS(tau_range(0.0, 1.0, 0.0), DomainError);
}
