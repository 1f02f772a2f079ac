#pragma once

#include "dhopf/hopf.hpp"
#include "dhopf/logistic.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace dhopf {

/// Cyclic loop x_i' = kappa_i f^{eps_i}(x_{i-1}(t - tau_i); theta_i) - gamma_i x_i,
/// indices mod N. theta, tau and eps are link-indexed: entry i belongs to the link into gene i.
struct CyclicLoopParams {
    std::vector<double> kappa;
    std::vector<double> gamma;
    std::vector<double> theta;
    std::vector<double> tau;
    std::vector<int> eps;
    double lambda = 1.0;

    [[nodiscard]] int N() const noexcept { return static_cast<int>(kappa.size()); }
    [[nodiscard]] double M(int i) const { return kappa[i] / gamma[i]; }
    [[nodiscard]] double total_delay() const noexcept;

    /// Throws DomainError on size mismatch, N < 2, non-positive rates or a positive loop.
    void validate() const;

    /// Gene 1 is x1 (repressed by x2 through theta2, tau2); gene 2 is x2.
    static CyclicLoopParams from_two_gene(const TwoGeneParams& p);
    /// Identical genes, one repressive link into gene 0, the rest activating.
    static CyclicLoopParams uniform(int N, double kappa, double gamma, double theta,
                                    double lambda, double total_delay = 0.0);
};

double f_signed(double x, double theta, double lambda, int eps) noexcept;

struct CyclicEquilibrium {
    std::vector<double> x_star;
    std::vector<double> f_star;  // f^{eps_i}(x_{i-1}*; theta_i)
    std::vector<double> gains;   // A_i = kappa_i lambda f(1 - f)
    double loop_gain = 0.0;      // Lambda = prod A_i
    double max_residual = 0.0;   // max_i |gamma_i x_i* - kappa_i f_i| / kappa_i
};

struct CyclicHopf {
    double omega_c = 0.0;
    double tau_c = 0.0;
    int k_star = 1;
    double T_c = 0.0;
    double S1 = 0.0;
    double S2 = 0.0;
    double trans_re = 0.0;
    double trans_im = 0.0;
    std::optional<std::pair<double, double>> window;  // symmetric rates only
};

struct NoDelayStability {
    bool stable = false;
    double spectral_abscissa = 0.0;
    std::vector<cplx> roots;
};

CyclicEquilibrium ngene_equilibrium(const CyclicLoopParams& loop);

/// prod(mu + gamma_i) + Lambda e^{-mu tau}.
cplx ngene_char_eval(cplx mu, const std::vector<double>& gamma, double loop_gain, double tau);

std::optional<CyclicHopf> ngene_hopf(const CyclicLoopParams& loop);
std::optional<CyclicHopf> ngene_hopf(const std::vector<double>& gamma, double loop_gain);

/// Transversality components at branch tau_c + 2 pi k / omega_c.
Transversality ngene_transversality(const CyclicHopf& hopf, int branch_k);

/// |(dmu/dtau)^{-1} - (S1 + i (S2 + tau_c) / omega_c)| with dmu/dtau from implicit
/// differentiation of the characteristic function.
double ngene_transversality_identity_check(const std::vector<double>& gamma, double loop_gain,
                                           const CyclicHopf& hopf);

/// (gamma^N, gamma^N sec^N(pi/N)); the upper end is +infinity for N = 2.
std::pair<double, double> symmetric_window(double gamma, int N);

NoDelayStability no_delay_stability(const std::vector<double>& gamma, double loop_gain);
NoDelayStability no_delay_stability(const CyclicLoopParams& loop);

}  // namespace dhopf
