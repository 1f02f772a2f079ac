#include <catch2/catch_amalgamated.hpp>

#include "dhopf/cycle.hpp"
#include "dhopf/dde.hpp"
#include "dhopf/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

using namespace dhopf;
using Catch::Approx;
namespace ode = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

State odeint_reference(const TwoGeneParams& p, State x, double t0, double t1, auto delayed) {
    auto rhs = [&](const State& y, State& dy, double t) {
        const auto [u1, u2] = delayed(t, y);
        dy[0] = p.kappa1 * f_minus(u2, p.theta2, p.lambda) - p.gamma1 * y[0];
        dy[1] = p.kappa2 * f_plus(u1, p.theta1, p.lambda) - p.gamma2 * y[1];
    };
    ode::integrate_adaptive(ode::make_dense_output(1e-13, 1e-13, ode::runge_kutta_dopri5<State>()),
                            rhs, x, t0, t1, 1e-3);
    return x;
}

}  // namespace

TEST_CASE("zero delay matches an independent ODE integrator", "[dde]") {
    const TwoGeneParams p;
    const State h0{1.0, 7.0};
    const auto traj = integrate(DelaySystem::two_gene(p), {h0[0], h0[1]}, 30.0, 1e-11, 1e-13);
    const State ref = odeint_reference(p, h0, 0.0, 30.0,
                                       [](double, const State& y) { return std::pair{y[0], y[1]}; });
    CHECK(traj.eval(30.0, 0) == Approx(ref[0]).epsilon(1e-8));
    CHECK(traj.eval(30.0, 1) == Approx(ref[1]).epsilon(1e-8));
}

TEST_CASE("method of steps against exact first-interval solution", "[dde]") {
    // constant history: on [0, tau] each equation is linear with constant forcing
    const TwoGeneParams base;
    const auto p = base.with_delays(0.7, 0.5);
    const State h0{2.0, 5.0};
    const double c1 = p.kappa1 * f_minus(h0[1], p.theta2, p.lambda);
    const double c2 = p.kappa2 * f_plus(h0[0], p.theta1, p.lambda);
    auto exact = [&](double t) {
        return State{c1 / p.gamma1 + (h0[0] - c1 / p.gamma1) * std::exp(-p.gamma1 * t),
                     c2 / p.gamma2 + (h0[1] - c2 / p.gamma2) * std::exp(-p.gamma2 * t)};
    };
    const auto traj = integrate(DelaySystem::two_gene(p), {h0[0], h0[1]}, 1.0, 1e-11, 1e-13);
    // mesh values carry the step tolerance; dense output adds the cubic Hermite error
    for (std::size_t k = 0; k < traj.size() && traj.times()[k] <= p.tau2; ++k) {
        const double t = traj.times()[k];
        CHECK(traj.state_at_mesh(k, 0) == Approx(exact(t)[0]).epsilon(1e-10));
        CHECK(traj.state_at_mesh(k, 1) == Approx(exact(t)[1]).epsilon(1e-10));
    }
    for (double t : {0.1, 0.33, 0.5}) {
        CHECK(traj.eval(t, 0) == Approx(exact(t)[0]).epsilon(1e-8));
        CHECK(traj.eval(t, 1) == Approx(exact(t)[1]).epsilon(1e-8));
    }
    // second interval: the delayed arguments are the exact first-interval solution
    const double t0 = 0.5;
    const State ref = odeint_reference(p, exact(t0), t0, 1.0, [&](double t, const State&) {
        const double s1 = t - p.tau1, s2 = t - p.tau2;
        return std::pair{s1 <= 0 ? h0[0] : exact(s1)[0], s2 <= 0 ? h0[1] : exact(s2)[1]};
    });
    CHECK(traj.eval(1.0, 0) == Approx(ref[0]).epsilon(1e-8));
    CHECK(traj.eval(1.0, 1) == Approx(ref[1]).epsilon(1e-8));
}

TEST_CASE("equilibrium history stays put", "[dde]") {
    const TwoGeneParams p = TwoGeneParams{}.with_total_delay(0.3);
    const auto eq = solve_equilibrium(p);
    const auto traj = integrate(DelaySystem::two_gene(p), {eq.x1_star, eq.x2_star}, 50.0);
    CHECK(traj.eval(50.0, 0) == Approx(eq.x1_star).margin(1e-9));
    CHECK(traj.eval(50.0, 1) == Approx(eq.x2_star).margin(1e-9));
}

TEST_CASE("positivity and absorbing box", "[dde][property]") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        TwoGeneParams p;
        p.lambda = 0.5 + 8 * u(rng);
        p = p.with_delays(3 * u(rng), 3 * u(rng));
        const std::vector<double> h{u(rng) * p.M1(), u(rng) * p.M2()};
        const auto traj = integrate(DelaySystem::two_gene(p), h, 60.0);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            REQUIRE(traj.state_at_mesh(k, 0) >= 0.0);
            REQUIRE(traj.state_at_mesh(k, 1) >= 0.0);
            REQUIRE(traj.state_at_mesh(k, 0) <= p.M1() * (1 + 1e-9));
            REQUIRE(traj.state_at_mesh(k, 1) <= p.M2() * (1 + 1e-9));
        }
    }
}

TEST_CASE("dense output interpolates the mesh and respects the delay cap", "[dde]") {
    const auto p = TwoGeneParams{}.with_total_delay(0.4);
    const auto sys = DelaySystem::two_gene(p);
    const auto traj = integrate(sys, {4.0, 3.0}, 20.0);
    const auto& t = traj.times();
    REQUIRE(t.front() == 0.0);
    REQUIRE(t.back() == Approx(20.0).epsilon(1e-14));
    for (std::size_t k = 1; k < t.size(); ++k) {
        REQUIRE(t[k] > t[k - 1]);
        REQUIRE(t[k] - t[k - 1] <= sys.min_positive_delay() * (1 + 1e-12));
        REQUIRE(traj.eval(t[k], 1) == Approx(traj.state_at_mesh(k, 1)).epsilon(1e-14));
    }
    CHECK(traj.eval(-1.0, 0) == 4.0);
    CHECK(traj.stats.accepted + 1 == t.size());
}

TEST_CASE("tolerance refinement converges", "[dde][property]") {
    const auto sys = DelaySystem::two_gene(TwoGeneParams{}.with_total_delay(0.6));
    const auto ref = integrate(sys, {4.2, 2.9}, 40.0, 1e-12, 1e-14).eval(40.0, 0);
    double prev = 1.0;
    for (double rtol : {1e-5, 1e-7, 1e-9}) {
        const double err = std::abs(integrate(sys, {4.2, 2.9}, 40.0, rtol, 1e-3 * rtol).eval(40.0, 0) - ref);
        CHECK(err < 100 * rtol);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("cyclic system integrates with per-link delays", "[dde]") {
    auto loop = CyclicLoopParams::uniform(3, 2.0, 0.5, 2.0, 1.5, 3.0);
    const auto sys = DelaySystem::cyclic(loop);
    REQUIRE(sys.dim() == 3);
    CHECK(sys.max_delay() == Approx(1.0));
    const auto traj = integrate(sys, {1.0, 2.0, 3.0}, 30.0);
    CHECK(traj.t_end() == Approx(30.0));
    DelaySystem bad = sys;
    bad.src = {0, 5, 1};
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("cycle measurement on a synthetic sinusoid", "[dde][cycle]") {
    Trajectory tr(1, {0.0});
    const double w = 2.1, amp = 0.7;
    for (int k = 0; k <= 4000; ++k) {
        const double t = 0.01 * k;
        const double x = 1.0 + amp * std::sin(w * t);
        const double dx = amp * w * std::cos(w * t);
        tr.push(t, &x, &dx);
    }
    const auto s = measure_cycle(tr, 5.0, 40.0, {1.0});
    CHECK(s.oscillating);
    CHECK(s.amplitude[0] == Approx(amp).epsilon(1e-7));
    CHECK(s.period == Approx(2 * std::numbers::pi / w).epsilon(1e-7));
    CHECK(s.crossings >= 10);
}

TEST_CASE("sub-onset delay decays; supercritical delay oscillates", "[dde][cycle]") {
    const TwoGeneParams p;
    MeasureOptions opt;
    opt.t_end = 200;
    opt.window_lo = 150;
    opt.window_hi = 200;
    const auto below = simulate_cycle(p.with_total_delay(0.12), opt);
    CHECK_FALSE(below.oscillating);
    CHECK(std::isnan(below.period));
    const auto above = simulate_cycle(p.with_total_delay(0.3), opt);
    CHECK(above.oscillating);
    CHECK(above.period > 2.67);
}

TEST_CASE("amplitude depends only on the delay sum", "[dde][cycle][property]") {
    MeasureOptions opt;
    opt.t_end = 200;
    opt.window_lo = 100;
    opt.window_hi = 200;
    const auto rows = verify_sum_symmetry(TwoGeneParams{}, 0.25, {{0.25, 0.0}, {0.1, 0.15}, {0.0, 0.25}}, opt);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.amplitude[0] == Approx(rows[0].amplitude[0]).epsilon(1e-5));
        CHECK(r.period == Approx(rows[0].period).epsilon(1e-5));
    }
    CHECK_THROWS_AS(verify_sum_symmetry(TwoGeneParams{}, 0.25, {{0.1, 0.1}}, opt), DomainError);
}

TEST_CASE("parallel sweep equals serial sweep", "[dde][cycle][parallel]") {
    MeasureOptions opt;
    opt.t_end = 120;
    opt.window_lo = 60;
    opt.window_hi = 120;
    const std::vector<double> grid{0.12, 0.15, 0.18, 0.22, 0.26, 0.3};
    const auto a = sweep_bifurcation(TwoGeneParams{}, grid, opt);
    const auto b = sweep_bifurcation_serial(TwoGeneParams{}, grid, opt);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        REQUIRE(a.rows[i].tau == b.rows[i].tau);
        REQUIRE(a.rows[i].stats.amplitude == b.rows[i].stats.amplitude);
    }
    CHECK(a.prefactor == b.prefactor);
}

TEST_CASE("relaxation offsets closed form", "[cycle]") {
    const auto r = relaxation_offset(TwoGeneParams{});
    CHECK(r.C_inf == Approx(8.92).margin(0.01));
    CHECK(r.C_inf == Approx(r.delta_A + r.delta_B + r.delta_C + r.delta_D).epsilon(1e-14));
    CHECK(r.delta_A > 0.0);
}
