#pragma once

#include "dhopf/hopf.hpp"

#include <string>
#include <vector>

namespace dhopf {

/// prod(mu + gamma_i) + Lambda e^{-mu tau}; N = 2 with Lambda = AB is the two-gene case.
struct QuasiPolynomial {
    std::vector<double> gamma;
    double loop_gain = 0.0;

    static QuasiPolynomial two_gene(const LoopLinearization& lin) {
        return {{lin.gamma1, lin.gamma2}, lin.loop_gain()};
    }
    [[nodiscard]] cplx value(cplx mu, double tau) const;
    [[nodiscard]] cplx derivative(cplx mu, double tau) const;  // d/dmu
};

struct NewtonResult {
    cplx root;
    int iterations = 0;
    double residual = 0.0;
};

/// Throws NumericalError carrying the last iterate if |value| < 1e-12 is not reached in 50 steps.
NewtonResult newton_root(const QuasiPolynomial& q, cplx mu0, double tau);

struct Crossing {
    double tau = 0.0;
    double omega = 0.0;
};

struct RootPath {
    std::vector<double> tau;
    std::vector<cplx> mu;
    std::vector<double> residual;
    std::vector<Crossing> crossings;  // Re mu changes sign between grid points
    int newton_iterations = 0;
    bool truncated = false;
    std::string diagnostic;
};

/// Delay-free root with positive imaginary part and largest real part.
cplx leading_delay_free_root(const QuasiPolynomial& q);

/// Continues the leading upper-half-plane root along an ascending tau grid.
RootPath continue_root(const QuasiPolynomial& q, const std::vector<double>& tau_grid);

/// Evenly spaced grid lo, lo + step, ..., up to hi.
std::vector<double> tau_range(double lo, double hi, double step);

/// Central difference of the path root at tau with step h.
cplx fd_transversality(const QuasiPolynomial& q, const RootPath& path, double tau,
                       double h = 1e-4);

}  // namespace dhopf
