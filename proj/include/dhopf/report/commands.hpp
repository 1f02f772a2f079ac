#pragma once

#include "dhopf/hopf.hpp"
#include "dhopf/logistic.hpp"
#include "dhopf/report/config.hpp"
#include "dhopf/report/output.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dhopf::report {

struct Table1Row {
    double lambda = 0.0;
    double AB = 0.0;
    double margin = 0.0;  // AB - gamma1 gamma2
    std::optional<HopfPoint> hopf;
};

std::vector<Table1Row> table1_rows(const TwoGeneParams& base, const std::vector<double>& lambdas);

struct P53Calibration {
    double gamma = 0.0;
    double loop_gain = 0.0;
    double omega_c = 0.0;
    double T_c = 0.0;
    double deviation_pct = 0.0;  // (T_c - observed) / observed
};

/// gamma = ln 2 / half_life for both genes; the loop gain placing tau_c at `delay`.
P53Calibration calibrate_p53(double half_life, double delay, double observed_period);

struct HopfLocus {
    double tau_c = 0.0;
    double omega_c = 0.0;
    double T_c = 0.0;
};

struct HillComparison {
    double lambda = 0.0;
    HillParams hill;
    HopfLocus logistic;
    HopfLocus hill_locus;
    double tau_pct = 0.0;    // |tau_H / tau_L - 1| in percent
    double omega_pct = 0.0;  // |omega_H / omega_L - 1|
    double period_pct = 0.0; // |T_H / T_L - 1|
};

/// Throws NumericalError if the Hill loop has no Hopf point.
HillComparison hill_compare(const TwoGeneParams& params);

/// Each command writes its files through the manifest and a summary to `out`.
void cmd_analyze(const RunConfig& cfg, Manifest& m, std::ostream& out);
void cmd_tables(const RunConfig& cfg, int which, Manifest& m, std::ostream& out);  // 0 = all
void cmd_sweep(const RunConfig& cfg, Manifest& m, std::ostream& out);
void cmd_integrate(const RunConfig& cfg, Manifest& m, std::ostream& out);
void cmd_trace(const RunConfig& cfg, Manifest& m, std::ostream& out);
void cmd_ngene(const RunConfig& cfg, Manifest& m, std::ostream& out);
void cmd_lyapunov(const RunConfig& cfg, Manifest& m, std::ostream& out);
void cmd_montecarlo(const RunConfig& cfg, Manifest& m, std::ostream& out);
void cmd_calibrate_p53(const RunConfig& cfg, Manifest& m, std::ostream& out);
void cmd_hill_compare(const RunConfig& cfg, Manifest& m, std::ostream& out);
/// which: regimes | bifurcation | period | eigtraj | all
void cmd_figures(const RunConfig& cfg, const std::string& which, Manifest& m, std::ostream& out);

}  // namespace dhopf::report
