#include "dhopf/lindstedt.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

namespace dhopf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kBlock = 512;

enum class Outcome { Weak, Accepted, Failed };

struct Draw {
    Outcome outcome = Outcome::Weak;
    CriticalitySample sample;
};

// Exceptions must not escape an OpenMP region; failures are counted instead.
Draw evaluate(const CriticalityRegion& region, std::uint64_t seed, std::uint64_t index) {
    Draw d;
    try {
        d.sample = draw_criticality_sample(region, seed, index);
        d.outcome = d.sample.omega_c > 0.0 ? Outcome::Accepted : Outcome::Weak;
    } catch (const std::exception&) {
        d.sample.index = index;
        d.outcome = Outcome::Failed;
    }
    return d;
}

// Appends a block of draws in index order; returns true once n accepted are collected.
bool absorb(CriticalitySummary& s, const std::vector<Draw>& block, std::uint64_t n) {
    for (const Draw& d : block) {
        if (s.accepted == n) {
            return true;
        }
        if (d.outcome == Outcome::Weak) {
            ++s.rejected_weak;
            continue;
        }
        if (d.outcome == Outcome::Failed) {
            s.failed_indices.push_back(d.sample.index);
            continue;
        }
        const double T = d.sample.T_coeff;
        if (s.accepted == 0) {
            s.min_T = s.max_T = T;
        } else {
            s.min_T = std::min(s.min_T, T);
            s.max_T = std::max(s.max_T, T);
        }
        ++s.accepted;
        if (T > 0.0) {
            ++s.positive;
        } else {
            s.nonpositive.push_back(d.sample);
        }
        s.samples.push_back(d.sample);
    }
    return s.accepted == n;
}

template <bool Parallel>
CriticalitySummary run(const CriticalityRegion& region, std::uint64_t n, std::uint64_t seed) {
    CriticalitySummary s;
    std::vector<Draw> block(kBlock);
    // Guard against regions that almost never yield strong feedback.
    const std::uint64_t max_draws = 1000 * n + 100000;
    for (std::uint64_t base = 0; s.accepted < n && base < max_draws; base += kBlock) {
        const auto m = static_cast<std::int64_t>(kBlock);
        if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < m; ++i) {
                block[i] = evaluate(region, seed, base + static_cast<std::uint64_t>(i));
            }
        } else {
            for (std::int64_t i = 0; i < m; ++i) {
                block[i] = evaluate(region, seed, base + static_cast<std::uint64_t>(i));
            }
        }
        if (absorb(s, block, n)) {
            break;
        }
    }
    return s;
}

}  // namespace

CriticalitySample draw_criticality_sample(const CriticalityRegion& region, std::uint64_t seed,
                                          std::uint64_t index) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto log_uniform = [&](const LogRange& r) {
        return std::exp(std::log(r.lo) + unit(rng) * (std::log(r.hi) - std::log(r.lo)));
    };
    CriticalitySample s;
    s.index = index;
    TwoGeneParams& p = s.params;
    p.kappa1 = log_uniform(region.kappa);
    p.kappa2 = log_uniform(region.kappa);
    p.gamma1 = log_uniform(region.gamma);
    p.gamma2 = log_uniform(region.gamma);
    p.lambda = log_uniform(region.lambda);
    const double span = region.theta_hi - region.theta_lo;
    p.theta1 = (region.theta_lo + span * unit(rng)) * p.M1();
    p.theta2 = (region.theta_lo + span * unit(rng)) * p.M2();

    const Equilibrium eq = solve_equilibrium(p);
    s.AB = eq.loop_gain();
    const auto hopf = hopf_point(LoopLinearization::from(p, eq));
    if (!hopf) {
        return s;
    }
    p = p.with_delays(0.5 * hopf->tau_c, 0.5 * hopf->tau_c);
    const LyapunovResult r = general_lyapunov(p, eq, *hopf, taylor_coefficients(p, eq));
    s.omega_c = hopf->omega_c;
    s.tau_c = hopf->tau_c;
    s.T_coeff = r.T_coeff;
    s.Omega2 = r.Omega2;
    return s;
}

CriticalitySummary montecarlo_criticality(const CriticalityRegion& region,
                                          std::uint64_t n_accepted, std::uint64_t seed) {
    return run<true>(region, n_accepted, seed);
}

CriticalitySummary montecarlo_criticality_serial(const CriticalityRegion& region,
                                                 std::uint64_t n_accepted, std::uint64_t seed) {
    return run<false>(region, n_accepted, seed);
}

}  // namespace dhopf
