#include <catch2/catch_amalgamated.hpp>

#include "dhopf/errors.hpp"
#include "dhopf/logistic.hpp"

#include <cmath>
#include <random>

using namespace dhopf;
using Catch::Approx;

namespace {

double fd1(auto f, double x, double h) { return (f(x + h) - f(x - h)) / (2 * h); }

double fd2(auto f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
           (12 * h * h);
}

double fd3(auto f, double x, double h) {
    return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
}

}  // namespace

TEST_CASE("complement identity and range", "[logistic][property]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-50, 50), ut(-10, 10), ul(0.01, 40);
    for (int i = 0; i < 2000; ++i) {
        const double x = ux(rng), th = ut(rng), lam = ul(rng);
        const double p = f_plus(x, th, lam);
        REQUIRE(p >= 0.0);
        REQUIRE(p <= 1.0);
        REQUIRE(p + f_minus(x, th, lam) == Approx(1.0).margin(1e-15));
        // reflection about the threshold
        REQUIRE(f_plus(2 * th - x, th, lam) == Approx(1.0 - p).margin(1e-14));
    }
    CHECK(f_plus(4.0, 4.0, 3.0) == 0.5);
}

TEST_CASE("no overflow at extreme arguments", "[logistic]") {
    CHECK(f_plus(1e6, 0.0, 50.0) == 1.0);
    CHECK(f_plus(-1e6, 0.0, 50.0) == 0.0);
    CHECK(std::isfinite(logistic_derivative(-1e6, 0.0, 50.0, 3)));
}

TEST_CASE("derivatives match finite differences", "[logistic][property]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-3, 3), ul(0.5, 5);
    for (int i = 0; i < 200; ++i) {
        const double th = 1.0, lam = ul(rng), x = th + ux(rng) / lam;
        auto f = [&](double y) { return f_plus(y, th, lam); };
        const double h = 1e-3 / lam;
        CHECK(logistic_derivative(x, th, lam, 1) == Approx(fd1(f, x, h)).epsilon(1e-6).margin(1e-9));
        CHECK(logistic_derivative(x, th, lam, 2) ==
              Approx(fd2(f, x, h)).epsilon(1e-5).margin(1e-6 * lam * lam));
        CHECK(logistic_derivative(x, th, lam, 3) ==
              Approx(fd3(f, x, h)).epsilon(1e-4).margin(1e-5 * lam * lam * lam));
    }
    CHECK_THROWS_AS(logistic_derivative(0, 0, 1, 4), DomainError);
}

TEST_CASE("canonical equilibrium", "[logistic]") {
    const TwoGeneParams p;
    const auto eq = solve_equilibrium(p);
    CHECK(eq.x1_star == Approx(3.873).margin(1e-3));
    CHECK(eq.x2_star == Approx(3.247).margin(1e-3));
    CHECK(eq.A == Approx(2.894).margin(1e-3));
    CHECK(eq.B == Approx(1.967).margin(1e-3));
    CHECK(eq.loop_gain() == Approx(5.693).margin(1e-3));
    // fixed-point residuals of the undelayed system
    CHECK(p.gamma1 * eq.x1_star == Approx(p.kappa1 * f_minus(eq.x2_star, p.theta2, p.lambda)).margin(1e-12));
    CHECK(p.gamma2 * eq.x2_star == Approx(p.kappa2 * f_plus(eq.x1_star, p.theta1, p.lambda)).margin(1e-12));
}

TEST_CASE("equilibrium residual over random parameters", "[logistic][property]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lg(std::log(0.1), std::log(10.0)), u01(0.05, 0.95);
    for (int i = 0; i < 500; ++i) {
        TwoGeneParams p;
        p.kappa1 = std::exp(lg(rng));
        p.kappa2 = std::exp(lg(rng));
        p.gamma1 = std::exp(lg(rng));
        p.gamma2 = std::exp(lg(rng));
        p.lambda = std::exp(lg(rng));
        p.theta1 = u01(rng) * p.M1();
        p.theta2 = u01(rng) * p.M2();
        const auto eq = solve_equilibrium(p);
        REQUIRE(eq.x1_star > 0.0);
        // strict in exact arithmetic; f- rounds to 1 on saturated draws
        REQUIRE(eq.x1_star <= p.M1());
        REQUIRE(eq.x2_star > 0.0);
        REQUIRE(eq.x2_star <= p.M2());
        const double r1 = p.gamma1 * eq.x1_star - p.kappa1 * f_minus(eq.x2_star, p.theta2, p.lambda);
        REQUIRE(std::abs(r1) < 1e-10 * p.kappa1);
    }
}

TEST_CASE("Taylor coefficients against finite differences of the nonlinearity", "[logistic]") {
    const TwoGeneParams p;
    const auto eq = solve_equilibrium(p);
    const auto t = taylor_coefficients(p, eq);
    auto g1 = [&](double u) { return p.kappa1 * f_minus(u, p.theta2, p.lambda); };
    auto g2 = [&](double u) { return p.kappa2 * f_plus(u, p.theta1, p.lambda); };
    const double h = 1e-3;
    CHECK(-fd1(g1, eq.x2_star, h) == Approx(eq.B).epsilon(1e-6));
    CHECK(fd1(g2, eq.x1_star, h) == Approx(eq.A).epsilon(1e-6));
    CHECK(fd2(g1, eq.x2_star, h) / 2 == Approx(t.b1).margin(1e-6));
    CHECK(fd2(g2, eq.x1_star, h) / 2 == Approx(t.b2).margin(1e-6));
    CHECK(fd3(g1, eq.x2_star, h) / 6 == Approx(t.d1).margin(1e-5));
    CHECK(fd3(g2, eq.x1_star, h) / 6 == Approx(t.d2).margin(1e-5));
}

TEST_CASE("symmetric thresholds kill the quadratic terms", "[logistic]") {
    const auto p = TwoGeneParams{}.symmetrized();
    const auto eq = solve_equilibrium(p);
    CHECK(eq.x1_star == Approx(p.theta1).margin(1e-12));
    CHECK(eq.x2_star == Approx(p.theta2).margin(1e-12));
    const auto t = taylor_coefficients(p, eq);
    CHECK(t.b1 == Approx(0.0).margin(1e-12));
    CHECK(t.b2 == Approx(0.0).margin(1e-12));
}

TEST_CASE("gain grows monotonically with steepness", "[logistic][property]") {
    const TwoGeneParams p;
    double prev = 0.0;
    for (double lam = 0.05; lam < 20.0; lam *= 1.15) {
        const double g = gain_of_lambda(p, lam);
        REQUIRE(g > prev);
        prev = g;
    }
}

TEST_CASE("steepness asymptotics and critical steepness", "[logistic]") {
    const TwoGeneParams p;
    const auto s = steepness_asymptotics(p);
    CHECK(s.c0 == 0.75);
    CHECK(s.c_inf == Approx(0.625).epsilon(1e-15));
    // the limits themselves
    CHECK(gain_of_lambda(p, 1e-3) / 1e-6 == Approx(s.c0).epsilon(1e-3));
    CHECK(gain_of_lambda(p, 400.0) / (400.0 * 400.0) == Approx(s.c_inf).epsilon(2e-2));
    const auto eq = solve_equilibrium(p.with_lambda(400.0));
    CHECK(400.0 * (eq.x1_star - p.theta1) == Approx(s.xi1).epsilon(2e-2));
    CHECK(400.0 * (eq.x2_star - p.theta2) == Approx(s.xi2).epsilon(2e-2));

    const auto c = critical_steepness(p);
    CHECK(c.lambda_c == Approx(0.426).margin(2e-3));
    CHECK(c.lambda_c >= c.lower_bound);
    CHECK(c.monotone_sampled);
    CHECK(std::abs(c.residual) < 1e-12);
    CHECK(c.lower_bound == Approx(4.0 * std::sqrt(0.125 / 12.0)));
}

TEST_CASE("parameter validation", "[logistic]") {
    TwoGeneParams p;
    p.gamma1 = 0.0;
    CHECK_THROWS_AS(solve_equilibrium(p), DomainError);
    p = TwoGeneParams{};
    p.tau1 = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    CHECK_THROWS_AS(gain_of_lambda(TwoGeneParams{}, 0.0), DomainError);
}

TEST_CASE("Hill counterpart", "[logistic]") {
    const TwoGeneParams p;
    const auto h = hill_counterpart(p);
    CHECK(h.hill.n1 == 12.0);
    CHECK(h.hill.n2 == 9.0);
    CHECK(hill_plus(p.theta1, p.theta1, 5.0) == 0.5);
    CHECK(hill_plus(0.0, 1.0, 3.0) == 0.0);
    const double x = 2.5;
    auto hp = [&](double y) { return hill_plus(y, 4.0, 12.0); };
    CHECK(hill_plus_derivative(x, 4.0, 12.0) == Approx(fd1(hp, x, 1e-5)).epsilon(1e-6));
    CHECK(p.gamma2 * h.x2_star == Approx(p.kappa2 * hill_plus(h.x1_star, p.theta1, 12.0)).margin(1e-10));
    CHECK(h.loop_gain() > p.gamma1 * p.gamma2);
}
