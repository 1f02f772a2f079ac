#include "dhopf/report/commands.hpp"

#include "dhopf/cycle.hpp"
#include "dhopf/cyclic.hpp"
#include "dhopf/dde.hpp"
#include "dhopf/errors.hpp"
#include "dhopf/lindstedt.hpp"
#include "dhopf/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace dhopf::report {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string pct(double v) { return num4(v) + "%"; }

HopfLocus locus(const HopfPoint& h) { return {h.tau_c, h.omega_c, h.T_c}; }

void kv(CsvTable& t, std::ostream& out, const std::string& key, double v) {
    t.add_row(std::vector<std::string>{key, num17(v)});
    out << "  " << key << " = " << num4(v) << "\n";
}

std::vector<double> linspace(double lo, double hi, std::int64_t n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] =
            n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return g;
}

void emit_table1(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const TwoGeneParams base = cfg.two_gene();
    CsvTable t({"lambda", "AB", "AB_minus_g1g2", "omega_c", "tau_c", "T_c"});
    out << "Table 1: loop gain and Hopf locus against steepness\n"
        << "  lambda      AB   AB-g1g2  omega_c    tau_c      T_c\n";
    for (const Table1Row& r : table1_rows(base, cfg.list("tables.lambdas"))) {
        const double w = r.hopf ? r.hopf->omega_c : kNaN;
        const double tc = r.hopf ? r.hopf->tau_c : kNaN;
        const double T = r.hopf ? r.hopf->T_c : kNaN;
        t.add_row(std::vector<double>{r.lambda, r.AB, r.margin, w, tc, T});
        char line[160];
        std::snprintf(line, sizeof line, "  %6s %8s %9s %8s %8s %8s%s\n", num4(r.lambda).c_str(),
                      num4(r.AB).c_str(), num4(r.margin).c_str(), num4(w).c_str(),
                      num4(tc).c_str(), num4(T).c_str(), r.hopf ? "" : "  (no Hopf)");
        out << line;
    }
    const CriticalSteepness cs = critical_steepness(base);
    const SteepnessAsymptotics as = steepness_asymptotics(base);
    out << "  lambda_c = " << num4(cs.lambda_c) << " (lower bound " << num4(cs.lower_bound)
        << (cs.monotone_sampled ? "" : ", AB(lambda) NOT monotone on the sampled bracket")
        << "), c0 = " << num4(as.c0) << ", c_inf = " << num4(as.c_inf) << "\n";
    m.write("table1.csv", t.str());
}

void emit_table2(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const BifurcationSweep sw =
        sweep_bifurcation(cfg.two_gene(), cfg.sweep_grid(), cfg.sweep_options());
    CsvTable t({"tau", "amplitude", "oscillating"});
    out << "Table 2: late-time x1 amplitude (tau_c = " << num4(sw.tau_c) << ")\n";
    for (const SweepRow& r : sw.rows) {
        t.add_row(std::vector<double>{r.tau, r.stats.amplitude[0], r.stats.oscillating ? 1.0 : 0.0});
        out << "  " << num4(r.tau) << "  "
            << (r.stats.oscillating ? num4(r.stats.amplitude[0]) : "< 1e-3 (decays)") << "\n";
    }
    out << "  prefactor c = " << num4(sw.prefactor) << ", c^2 = " << num4(sw.prefactor * sw.prefactor)
        << "\n";
    m.write("table2.csv", t.str());
}

void emit_table3(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const double tau = cfg.num("symmetry.tau");
    std::vector<std::pair<double, double>> splits;
    for (double t1 : cfg.list("symmetry.tau1")) {
        splits.emplace_back(t1, tau - t1);
    }
    const auto stats = verify_sum_symmetry(cfg.two_gene(), tau, splits, cfg.sweep_options());
    CsvTable t({"tau1", "tau2", "tau", "amplitude", "period"});
    out << "Table 3: sum-of-delays symmetry at tau = " << num4(tau) << "\n";
    for (std::size_t i = 0; i < splits.size(); ++i) {
        t.add_row(std::vector<double>{splits[i].first, splits[i].second, tau,
                                      stats[i].amplitude[0], stats[i].period});
        char line[120];
        std::snprintf(line, sizeof line, "  tau1 = %.4f  tau2 = %.4f  A = %.4f  T = %.4f\n",
                      splits[i].first, splits[i].second, stats[i].amplitude[0], stats[i].period);
        out << line;
    }
    m.write("table3.csv", t.str());
}

void emit_table4(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const TwoGeneParams p = cfg.two_gene();
    const OnsetSlope os = onset_period_slope(p, cfg.list("onset.taus"), cfg.onset_options());
    const Equilibrium eq = solve_equilibrium(p);
    const LoopLinearization lin = LoopLinearization::from(p, eq);
    const HopfPoint h = *hopf_point(lin);
    const Transversality tr = transversality(lin.A, lin.B, lin.gamma1, lin.gamma2, 0);
    CsvTable t({"tau", "period", "slope"});
    out << "Table 4: onset period (T_c = " << num4(os.T_c) << ")\n";
    for (const OnsetRow& r : os.rows) {
        t.add_row(std::vector<double>{r.tau, r.period, r.slope});
        out << "  " << num4(r.tau) << "  T = " << num4(r.period) << "  slope = " << num4(r.slope)
            << "\n";
    }
    out << "  extrapolated onset slope = " << num4(os.extrapolated)
        << ", linear-theory slope = " << num4(linear_period_slope(h, tr)) << "\n";
    m.write("table4.csv", t.str());
}

}  // namespace

std::vector<Table1Row> table1_rows(const TwoGeneParams& base, const std::vector<double>& lambdas) {
    std::vector<Table1Row> rows;
    for (double lam : lambdas) {
        const TwoGeneParams p = base.with_lambda(lam);
        const Equilibrium eq = solve_equilibrium(p);
        Table1Row r;
        r.lambda = lam;
        r.AB = eq.loop_gain();
        r.margin = r.AB - p.gamma1 * p.gamma2;
        r.hopf = hopf_point(LoopLinearization::from(p, eq));
        rows.push_back(r);
    }
    return rows;
}

P53Calibration calibrate_p53(double half_life, double delay, double observed_period) {
    if (!(half_life > 0.0) || !(delay > 0.0) || !(observed_period > 0.0)) {
        throw DomainError("calibrate_p53: half-life, delay and observed period must be positive");
    }
    P53Calibration c;
    c.gamma = std::numbers::ln2 / half_life;
    const GainCalibration g = solve_gain_for_delay(c.gamma, c.gamma, delay);
    c.loop_gain = g.loop_gain;
    c.omega_c = g.hopf.omega_c;
    c.T_c = g.hopf.T_c;
    c.deviation_pct = 100.0 * (c.T_c - observed_period) / observed_period;
    return c;
}

HillComparison hill_compare(const TwoGeneParams& params) {
    HillComparison c;
    c.lambda = params.lambda;
    const Equilibrium eq = solve_equilibrium(params);
    const auto lh = hopf_point(LoopLinearization::from(params, eq));
    const HillCounterpart hc = hill_counterpart(params);
    c.hill = hc.hill;
    const auto hh = hopf_point({hc.A, hc.B, params.gamma1, params.gamma2});
    if (!lh || !hh) {
        throw NumericalError("hill_compare: no Hopf point for the " +
                             std::string(lh ? "Hill" : "logistic") + " loop at lambda = " +
                             std::to_string(params.lambda));
    }
    c.logistic = locus(*lh);
    c.hill_locus = locus(*hh);
    c.tau_pct = 100.0 * std::abs(hh->tau_c / lh->tau_c - 1.0);
    c.omega_pct = 100.0 * std::abs(hh->omega_c / lh->omega_c - 1.0);
    c.period_pct = 100.0 * std::abs(hh->T_c / lh->T_c - 1.0);
    return c;
}

void cmd_analyze(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const TwoGeneParams p = cfg.two_gene();
    const Equilibrium eq = solve_equilibrium(p);
    CsvTable t({"quantity", "value"});
    out << "Closed-form analysis\n";
    kv(t, out, "x1_star", eq.x1_star);
    kv(t, out, "x2_star", eq.x2_star);
    kv(t, out, "A", eq.A);
    kv(t, out, "B", eq.B);
    kv(t, out, "AB", eq.loop_gain());
    kv(t, out, "gamma1_gamma2", p.gamma1 * p.gamma2);

    const auto branches = critical_delays(eq.A, eq.B, p.gamma1, p.gamma2, 2);
    if (!branches) {
        out << "  no Hopf: AB <= gamma1 gamma2, equilibrium stable for every delay\n";
        t.add_row(std::vector<std::string>{"hopf", "none"});
    } else {
        const HopfPoint& h = branches->front();
        kv(t, out, "omega_c", h.omega_c);
        for (const HopfPoint& b : *branches) {
            kv(t, out, "tau_c_" + std::to_string(b.branch_k), b.tau_c);
        }
        kv(t, out, "T_c", h.T_c);
        for (int k = 0; k <= 2; ++k) {
            const Transversality tr = transversality(eq.A, eq.B, p.gamma1, p.gamma2, k);
            kv(t, out, "trans_re_" + std::to_string(k), tr.re);
            if (k == 0) {
                kv(t, out, "trans_im_0", tr.im);
                kv(t, out, "trans_lower_bound", tr.lower_bound);
                kv(t, out, "linear_period_slope", linear_period_slope(h, tr));
            }
        }
        kv(t, out, "q1_amp_sq", hopf_eigenvector(eq.B, p.gamma1, h.omega_c, 0.5 * h.tau_c).q1_amp_sq);
        const TwoGeneParams split = p.with_delays(0.5 * h.tau_c, 0.5 * h.tau_c);
        const LyapunovResult lr = general_lyapunov(split, eq, h, taylor_coefficients(split, eq));
        kv(t, out, "lyapunov_T", lr.T_coeff);
        kv(t, out, "lyapunov_Omega2", lr.Omega2);
        if (lr.T_coeff > 0.0) {
            kv(t, out, "amplitude_prefactor", 2.0 / std::sqrt(lr.T_coeff));
        }
        out << "  " << (lr.supercritical ? "supercritical" : "subcritical") << " Hopf bifurcation\n";
    }
    if (p.theta1 > 0.0 && p.theta1 < p.M1() && p.theta2 > 0.0 && p.theta2 < p.M2()) {
        kv(t, out, "lambda_c", critical_steepness(p).lambda_c);
        kv(t, out, "C_inf", relaxation_offset(p).C_inf);
    }
    m.write("analyze.csv", t.str());
}

void cmd_tables(const RunConfig& cfg, int which, Manifest& m, std::ostream& out) {
    if (which < 0 || which > 4) {
        throw ConfigError("tables: selector must be 1, 2, 3, 4 or all");
    }
    if (which == 0 || which == 1) emit_table1(cfg, m, out);
    if (which == 0 || which == 2) emit_table2(cfg, m, out);
    if (which == 0 || which == 3) emit_table3(cfg, m, out);
    if (which == 0 || which == 4) emit_table4(cfg, m, out);
}

void cmd_sweep(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const BifurcationSweep sw =
        sweep_bifurcation(cfg.two_gene(), cfg.sweep_grid(), cfg.sweep_options());
    CsvTable t({"tau", "amplitude", "period", "oscillating"});
    for (const SweepRow& r : sw.rows) {
        t.add_row(std::vector<double>{r.tau, r.stats.amplitude[0], r.stats.period,
                                      r.stats.oscillating ? 1.0 : 0.0});
    }
    out << "Bifurcation sweep over " << sw.rows.size() << " delays: tau_c = " << num4(sw.tau_c)
        << ", prefactor c = " << num4(sw.prefactor) << "\n";
    m.write("sweep.csv", t.str());
}

void cmd_integrate(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const double tau = cfg.num("integrate.tau");
    const double split = cfg.num("integrate.split");
    const double t_end = cfg.num("integrate.t_end");
    const double dt = cfg.num("integrate.dt");
    if (!(dt > 0.0) || !(split >= 0.0 && split <= 1.0)) {
        throw ConfigError("integrate: dt must be positive and split within [0, 1]");
    }
    const TwoGeneParams p = cfg.two_gene().with_delays(split * tau, (1.0 - split) * tau);
    const Equilibrium eq = solve_equilibrium(p);
    const Trajectory traj = integrate(DelaySystem::two_gene(p),
                                      perturbed_history(eq, cfg.num("sweep.offset")), t_end,
                                      cfg.num("solver.rtol"), cfg.num("solver.atol"));
    CsvTable t({"t", "x1", "x2"});
    const auto n = static_cast<std::int64_t>(std::floor(t_end / dt + 1e-9));
    for (std::int64_t i = 0; i <= n; ++i) {
        const double ti = std::min(t_end, dt * static_cast<double>(i));
        t.add_row(std::vector<double>{ti, traj.eval(ti, 0), traj.eval(ti, 1)});
    }
    out << "Integrated to t = " << num4(t_end) << " at tau1 = " << num4(p.tau1)
        << ", tau2 = " << num4(p.tau2) << ": " << traj.stats.accepted << " steps, "
        << traj.stats.rejected << " rejected\n";
    if (t_end > 20.0) {
        const CycleStats s = measure_cycle(traj, 0.75 * t_end, t_end, {eq.x1_star, eq.x2_star});
        out << "  last-quarter amplitude x1 = " << num4(s.amplitude[0])
            << ", x2 = " << num4(s.amplitude[1]);
        if (s.oscillating) {
            out << ", period = " << num4(s.period);
        }
        out << "\n";
    }
    m.write("trajectory.csv", t.str());
}

void cmd_trace(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const TwoGeneParams p = cfg.two_gene();
    const LoopLinearization lin = LoopLinearization::from(p, solve_equilibrium(p));
    const QuasiPolynomial q = QuasiPolynomial::two_gene(lin);
    const RootPath path =
        continue_root(q, tau_range(cfg.num("trace.tau_lo"), cfg.num("trace.tau_hi"),
                                   cfg.num("trace.step")));
    CsvTable t({"tau", "re_mu", "im_mu"});
    for (std::size_t i = 0; i < path.tau.size(); ++i) {
        t.add_row(std::vector<double>{path.tau[i], path.mu[i].real(), path.mu[i].imag()});
    }
    out << "Leading root traced over " << path.tau.size() << " points";
    if (path.truncated) {
        out << " (truncated: " << path.diagnostic << ")";
    }
    out << "\n";
    for (const Crossing& c : path.crossings) {
        out << "  crossing at tau = " << num4(c.tau) << ", omega = " << num4(c.omega) << "\n";
        try {
            const cplx s = fd_transversality(q, path, c.tau);
            out << "  finite-difference dmu/dtau = " << num4(s.real()) << " " << num4(s.imag())
                << "i, angle below horizontal " << num4(std::atan2(-s.imag(), s.real()) * 180.0 / std::numbers::pi)
                << " deg\n";
        } catch (const DomainError&) {
            out << "  crossing too close to the path end for a central difference\n";
        }
    }
    m.write("eigtraj.csv", t.str());
}

void cmd_ngene(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const CyclicLoopParams loop = cfg.ngene();
    const CyclicEquilibrium eq = ngene_equilibrium(loop);
    CsvTable t({"quantity", "value"});
    out << "Cyclic " << loop.N() << "-gene loop\n";
    for (int i = 0; i < loop.N(); ++i) {
        kv(t, out, "x" + std::to_string(i + 1) + "_star", eq.x_star[i]);
    }
    kv(t, out, "loop_gain", eq.loop_gain);
    kv(t, out, "equilibrium_residual", eq.max_residual);
    const NoDelayStability nd = no_delay_stability(loop.gamma, eq.loop_gain);
    kv(t, out, "no_delay_spectral_abscissa", nd.spectral_abscissa);
    out << "  no-delay equilibrium " << (nd.stable ? "stable" : "unstable") << "\n";
    const auto h = ngene_hopf(loop.gamma, eq.loop_gain);
    if (!h) {
        out << "  no Hopf: loop gain <= prod gamma_i\n";
        t.add_row(std::vector<std::string>{"hopf", "none"});
    } else {
        kv(t, out, "omega_c", h->omega_c);
        kv(t, out, "tau_c", h->tau_c);
        kv(t, out, "k_star", h->k_star);
        kv(t, out, "T_c", h->T_c);
        kv(t, out, "S1", h->S1);
        kv(t, out, "S2", h->S2);
        for (int k = 0; k <= static_cast<int>(cfg.integer("ngene.branches")); ++k) {
            kv(t, out, "trans_re_" + std::to_string(k), ngene_transversality(*h, k).re);
        }
        kv(t, out, "trans_im_0", h->trans_im);
        kv(t, out, "char_residual",
           std::abs(ngene_char_eval({0.0, h->omega_c}, loop.gamma, eq.loop_gain, h->tau_c)));
        kv(t, out, "identity_residual",
           ngene_transversality_identity_check(loop.gamma, eq.loop_gain, *h));
        if (h->window) {
            kv(t, out, "window_lower", h->window->first);
            kv(t, out, "window_upper", h->window->second);
        }
    }
    m.write("ngene.csv", t.str());
}

void cmd_lyapunov(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const TwoGeneParams p = cfg.two_gene();
    const Equilibrium eq = solve_equilibrium(p);
    const auto h = hopf_point(LoopLinearization::from(p, eq));
    if (!h) {
        throw DomainError("lyapunov: weak feedback, no Hopf point");
    }
    CsvTable t({"split", "tau1", "tau2", "T", "Omega2", "solvability_residual"});
    out << "Lindstedt criticality at tau_c = " << num4(h->tau_c) << "\n";
    for (double f : cfg.list("lyapunov.splits")) {
        const TwoGeneParams s = p.with_delays(f * h->tau_c, (1.0 - f) * h->tau_c);
        const LyapunovResult r = general_lyapunov(s, eq, *h, taylor_coefficients(s, eq));
        t.add_row(std::vector<double>{f, s.tau1, s.tau2, r.T_coeff, r.Omega2,
                                      solvability_residual(r, h->omega_c)});
        char line[160];
        std::snprintf(line, sizeof line, "  tau1/tau_c = %.2f  T = %.8f  Omega2 = %.8f\n", f,
                      r.T_coeff, r.Omega2);
        out << line;
    }
    const LyapunovResult r = lyapunov_at_onset(p);
    if (r.T_coeff > 0.0) {
        out << "  supercritical, amplitude law A1 = " << num4(2.0 / std::sqrt(r.T_coeff))
            << " sqrt(tau - tau_c)\n";
    } else {
        out << "  subcritical (T <= 0)\n";
    }
    m.write("lyapunov.csv", t.str());
}

void cmd_montecarlo(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const std::int64_t n = cfg.integer("montecarlo.n_samples");
    if (n < 0) {
        throw ConfigError("montecarlo.n_samples must be non-negative");
    }
    const auto seed = static_cast<std::uint64_t>(cfg.integer("run.seed"));
    const CriticalitySummary s =
        montecarlo_criticality(CriticalityRegion{}, static_cast<std::uint64_t>(n), seed);
    CsvTable t({"index", "kappa1", "kappa2", "gamma1", "gamma2", "theta1", "theta2", "lambda",
                "AB", "omega_c", "tau_c", "T", "Omega2"});
    for (const CriticalitySample& c : s.samples) {
        const TwoGeneParams& p = c.params;
        t.add_row(std::vector<double>{static_cast<double>(c.index), p.kappa1, p.kappa2, p.gamma1,
                                      p.gamma2, p.theta1, p.theta2, p.lambda, c.AB, c.omega_c,
                                      c.tau_c, c.T_coeff, c.Omega2});
    }
    out << "Monte-Carlo criticality: " << s.accepted << " accepted, " << s.rejected_weak
        << " weak-feedback draws rejected, " << s.failed_indices.size() << " failures\n";
    if (s.accepted > 0) {
        out << "  fraction T > 0 = " << num4(s.fraction_positive()) << ", min T = " << num4(s.min_T)
            << ", max T = " << num4(s.max_T) << "\n";
    }
    for (const CriticalitySample& c : s.nonpositive) {
        const TwoGeneParams& p = c.params;
        out << "  T <= 0 at draw " << c.index << ": kappa = (" << num17(p.kappa1) << ", "
            << num17(p.kappa2) << "), gamma = (" << num17(p.gamma1) << ", " << num17(p.gamma2)
            << "), theta = (" << num17(p.theta1) << ", " << num17(p.theta2)
            << "), lambda = " << num17(p.lambda) << ", T = " << num17(c.T_coeff) << "\n";
    }
    m.write("montecarlo.csv", t.str());
}

void cmd_calibrate_p53(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const double half_life = cfg.num("p53.half_life");
    const double delay = cfg.num("p53.delay");
    const double observed = cfg.num("p53.observed_period");
    const P53Calibration c = calibrate_p53(half_life, delay, observed);
    CsvTable t({"half_life", "delay", "gamma", "AB", "omega_c", "T_c", "observed_period",
                "deviation_pct"});
    t.add_row(std::vector<double>{half_life, delay, c.gamma, c.loop_gain, c.omega_c, c.T_c,
                                  observed, c.deviation_pct});
    out << "p53 calibration: gamma = " << num4(c.gamma) << ", AB = " << num4(c.loop_gain)
        << ", predicted period T_c = " << num4(c.T_c) << " (observed " << num4(observed)
        << ", deviation " << pct(c.deviation_pct) << ")\n";
    m.write("p53.csv", t.str());
}

void cmd_hill_compare(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const TwoGeneParams base = cfg.two_gene();
    CsvTable t({"lambda", "n1", "n2", "tau_logistic", "tau_hill", "omega_logistic", "omega_hill",
                "T_logistic", "T_hill", "tau_pct", "omega_pct", "T_pct"});
    out << "Hill cross-validation (n_i = lambda theta_i)\n";
    for (double lam : cfg.list("hill.lambdas")) {
        const HillComparison c = hill_compare(base.with_lambda(lam));
        t.add_row(std::vector<double>{lam, c.hill.n1, c.hill.n2, c.logistic.tau_c,
                                      c.hill_locus.tau_c, c.logistic.omega_c, c.hill_locus.omega_c,
                                      c.logistic.T_c, c.hill_locus.T_c, c.tau_pct, c.omega_pct,
                                      c.period_pct});
        out << "  lambda = " << num4(lam) << ": tau_c " << pct(c.tau_pct) << ", omega_c "
            << pct(c.omega_pct) << ", T " << pct(c.period_pct) << "\n";
    }
    m.write("hill.csv", t.str());
}

namespace {

void figure_regimes(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const TwoGeneParams base = cfg.two_gene();
    const Equilibrium eq = solve_equilibrium(base);
    const double t_end = cfg.num("figures.regime_t_end");
    CsvTable t({"tau", "t", "x1", "x2"});
    std::vector<Panel> panels;
    for (double tau : cfg.list("figures.regime_taus")) {
        const TwoGeneParams p = base.with_total_delay(tau);
        const Trajectory traj = integrate(DelaySystem::two_gene(p),
                                          perturbed_history(eq, cfg.num("sweep.offset")), t_end,
                                          cfg.num("solver.rtol"), cfg.num("solver.atol"));
        Series s1{"x1", "#1f77b4", {}, {}};
        Series s2{"x2", "#d62728", {}, {}};
        Series e1{"", "#1f77b4", {0.0, t_end}, {eq.x1_star, eq.x1_star}, false, true};
        Series e2{"", "#d62728", {0.0, t_end}, {eq.x2_star, eq.x2_star}, false, true};
        Series orbit{"late orbit", "#333333", {}, {}};
        for (double ti = 0.0; ti <= t_end + 1e-9; ti += 0.05) {
            const double tc = std::min(ti, t_end);
            const double a = traj.eval(tc, 0);
            const double b = traj.eval(tc, 1);
            t.add_row(std::vector<double>{tau, tc, a, b});
            s1.x.push_back(tc);
            s1.y.push_back(a);
            s2.x.push_back(tc);
            s2.y.push_back(b);
            if (tc >= 0.5 * t_end) {
                orbit.x.push_back(a);
                orbit.y.push_back(b);
            }
        }
        Series star{"equilibrium", "#2ca02c", {eq.x1_star}, {eq.x2_star}, true};
        panels.push_back({"tau = " + num4(tau), "t", "concentration", {s1, s2, e1, e2}, {}});
        panels.push_back({"phase portrait, tau = " + num4(tau), "x1", "x2", {orbit, star}, {}});
    }
    m.write("regimes.csv", t.str());
    m.write("regimes.svg", render_svg(panels, 2, "dhopf figures regimes; data: regimes.csv"));
    out << "Wrote regimes.svg\n";
}

void figure_bifurcation(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const BifurcationSweep sw =
        sweep_bifurcation(cfg.two_gene(), cfg.sweep_grid(), cfg.sweep_options());
    CsvTable t({"tau", "amplitude", "period", "oscillating"});
    Series dots{"DDE amplitude", "#1f77b4", {}, {}, true};
    Series fit{"c sqrt(tau - tau_c), c = " + num4(sw.prefactor), "#d62728", {}, {}, false, true};
    for (const SweepRow& r : sw.rows) {
        t.add_row(std::vector<double>{r.tau, r.stats.amplitude[0], r.stats.period,
                                      r.stats.oscillating ? 1.0 : 0.0});
        dots.x.push_back(r.tau);
        dots.y.push_back(r.stats.amplitude[0]);
    }
    const double hi = sw.rows.empty() ? sw.tau_c : sw.rows.back().tau;
    for (int i = 0; i <= 200; ++i) {
        const double tau = sw.tau_c + (hi - sw.tau_c) * i / 200.0;
        fit.x.push_back(tau);
        fit.y.push_back(sw.prefactor * std::sqrt(std::max(0.0, tau - sw.tau_c)));
    }
    m.write("bifurcation.csv", t.str());
    m.write("bifurcation.svg",
            render_svg({{"Bifurcation diagram", "tau", "amplitude of x1", {dots, fit}, {sw.tau_c}}},
                       1, "dhopf figures bifurcation; data: bifurcation.csv"));
    out << "Wrote bifurcation.svg (c = " << num4(sw.prefactor) << ")\n";
}

void figure_period(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const TwoGeneParams p = cfg.two_gene();
    const auto grid = linspace(cfg.num("figures.period_tau_lo"), cfg.num("figures.period_tau_hi"),
                               cfg.integer("figures.period_tau_n"));
    const BifurcationSweep sw = sweep_bifurcation(p, grid, cfg.sweep_options());
    const double c_inf = relaxation_offset(p).C_inf;
    CsvTable t({"tau", "period"});
    Series sim{"DDE period", "#1f77b4", {}, {}, true};
    Series asym{"2 tau + C_inf", "#d62728", {}, {}, false, true};
    for (const SweepRow& r : sw.rows) {
        t.add_row(std::vector<double>{r.tau, r.stats.period});
        sim.x.push_back(r.tau);
        sim.y.push_back(r.stats.period);
        asym.x.push_back(r.tau);
        asym.y.push_back(2.0 * r.tau + c_inf);
    }
    m.write("period.csv", t.str());
    m.write("period.svg", render_svg({{"Period against delay", "tau", "period T", {sim, asym}, {}}},
                                     1, "dhopf figures period; data: period.csv"));
    out << "Wrote period.svg\n";
}

void figure_eigtraj(const RunConfig& cfg, Manifest& m, std::ostream& out) {
    const TwoGeneParams p = cfg.two_gene();
    const LoopLinearization lin = LoopLinearization::from(p, solve_equilibrium(p));
    const QuasiPolynomial q = QuasiPolynomial::two_gene(lin);
    const RootPath path =
        continue_root(q, tau_range(cfg.num("trace.tau_lo"), cfg.num("trace.tau_hi"),
                                   cfg.num("trace.step")));
    CsvTable t({"tau", "re_mu", "im_mu"});
    Series upper{"leading root", "#1f77b4", {}, {}};
    Series lower{"conjugate", "#1f77b4", {}, {}, false, true};
    for (std::size_t i = 0; i < path.tau.size(); ++i) {
        t.add_row(std::vector<double>{path.tau[i], path.mu[i].real(), path.mu[i].imag()});
        upper.x.push_back(path.mu[i].real());
        upper.y.push_back(path.mu[i].imag());
        lower.x.push_back(path.mu[i].real());
        lower.y.push_back(-path.mu[i].imag());
    }
    Series marks{"crossings at +- i omega_c", "#d62728", {}, {}, true};
    for (const Crossing& c : path.crossings) {
        marks.x.insert(marks.x.end(), {0.0, 0.0});
        marks.y.insert(marks.y.end(), {c.omega, -c.omega});
    }
    m.write("eigtraj.csv", t.str());
    m.write("eigtraj.svg", render_svg({{"Leading characteristic root", "Re mu", "Im mu",
                                        {upper, lower, marks}, {0.0}}},
                                      1, "dhopf figures eigtraj; data: eigtraj.csv"));
    out << "Wrote eigtraj.svg\n";
}

}  // namespace

void cmd_figures(const RunConfig& cfg, const std::string& which, Manifest& m, std::ostream& out) {
    const bool all = which == "all";
    if (!all && which != "regimes" && which != "bifurcation" && which != "period" &&
        which != "eigtraj") {
        throw ConfigError("figures: unknown selector '" + which +
                          "' (regimes, bifurcation, period, eigtraj, all)");
    }
    if (all || which == "regimes") figure_regimes(cfg, m, out);
    if (all || which == "bifurcation") figure_bifurcation(cfg, m, out);
    if (all || which == "period") figure_period(cfg, m, out);
    if (all || which == "eigtraj") figure_eigtraj(cfg, m, out);
}

}  // namespace dhopf::report
