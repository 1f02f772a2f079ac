#pragma once

#include "dhopf/cyclic.hpp"
#include "dhopf/logistic.hpp"

#include <cstddef>
#include <vector>

namespace dhopf {

/// x_i' = kappa_i f^{eps_i}(x_{src_i}(t - tau_i); theta_i) - gamma_i x_i.
/// Each component reads exactly one delayed upstream component.
struct DelaySystem {
    std::vector<double> kappa;
    std::vector<double> gamma;
    std::vector<double> theta;
    std::vector<double> tau;
    std::vector<int> eps;
    std::vector<int> src;
    double lambda = 1.0;

    [[nodiscard]] std::size_t dim() const noexcept { return kappa.size(); }
    [[nodiscard]] double min_positive_delay() const noexcept;
    [[nodiscard]] double max_delay() const noexcept;
    void validate() const;

    /// Component 0 is x1, component 1 is x2.
    static DelaySystem two_gene(const TwoGeneParams& p);
    static DelaySystem cyclic(const CyclicLoopParams& c);
};

struct SolverStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

/// Accepted-step mesh with states and slopes; cubic Hermite between mesh points.
/// For t <= t0 the constant history is returned.
class Trajectory {
public:
    Trajectory(std::size_t dim, std::vector<double> history);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return t_.size(); }
    [[nodiscard]] double t_begin() const noexcept { return t_.empty() ? 0.0 : t_.front(); }
    [[nodiscard]] double t_end() const noexcept { return t_.empty() ? 0.0 : t_.back(); }
    [[nodiscard]] const std::vector<double>& times() const noexcept { return t_; }
    [[nodiscard]] const std::vector<double>& history() const noexcept { return history_; }

    [[nodiscard]] double state_at_mesh(std::size_t k, std::size_t comp) const noexcept {
        return x_[k * dim_ + comp];
    }
    /// Dense output of one component; t must not exceed t_end().
    [[nodiscard]] double eval(double t, std::size_t comp) const;

    void push(double t, const double* x, const double* dx);

    SolverStats stats;

private:
    std::size_t dim_;
    std::vector<double> history_;
    std::vector<double> t_;
    std::vector<double> x_;
    std::vector<double> dx_;
};

/// Dormand-Prince 5(4) with FSAL, method of steps. The step is capped at the smallest
/// positive delay so every delayed lookup falls on already accepted output.
Trajectory integrate(const DelaySystem& system, const std::vector<double>& history, double t_end,
                     double rtol = 1e-9, double atol = 1e-12);

}  // namespace dhopf
