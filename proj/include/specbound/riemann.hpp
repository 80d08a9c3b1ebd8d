// Transformation of the first omega_1 eigenfunction into a solution of the
// Riemann differential equation: parameters q, r, s, the z-substitution and
// the u -> y = u * bar_j rescaling, local exponents at the singularities
// {0, 1, infinity}, and numerical residual verification.
#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "specbound/sturm.hpp"

namespace specbound::riemann {

// Raised when the z = e^{2 tau} (upsilon+1)/(upsilon-1) map is requested at
// upsilon = 1, where the substitution degenerates.
class SingularSubstitutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RiemannParams {
    int n = 2;
    double lambda = 0.0;
    double upsilon = 0.0;
    double T = 0.0;
    double q = 0.0;  // (n - 1 - 2 lambda) / 2
    double r = 0.0;  // (n - 1)(n - 3) / 4
    double s = 0.0;  // q + r
    double a = 0.0;  // (upsilon + 1)/(upsilon - 1)
    double b = 0.0;  // e^{2T} (upsilon + 1)/(upsilon - 1)
};

RiemannParams riemann_params(int n, double lambda, double upsilon, double T);

// Coefficients of y'' + rho1 y' + rho2 y = 0, the z-side equation.
double rho1(double z);
double rho2(const RiemannParams& params, double z);

struct ExponentData {
    std::array<std::complex<double>, 2> at_zero;      // {-sqrt(s)/2, +sqrt(s)/2}
    std::array<std::complex<double>, 2> at_one;       // {(1 -+ sqrt(1+4r))/2}
    std::array<std::complex<double>, 2> at_infinity;  // {-sqrt(s)/2, +sqrt(s)/2}

    std::complex<double> sum() const;                  // Fuchsian relation: = 1
    std::array<std::complex<double>, 6> flat() const;  // alpha, alpha', beta, beta', gamma, gamma'
};

ExponentData local_exponents(const RiemannParams& params);

// General Riemann-equation coefficients for two finite singularities a, b and
// a third at infinity (the c -> infinity degeneration of the three-point form).
struct RiemannCoefficients {
    double a = 0.0;
    double b = 0.0;
    std::complex<double> alpha_sum, alpha_prod;  // exponents at a
    std::complex<double> beta_sum, beta_prod;    // exponents at b
    std::complex<double> gamma_prod;             // exponents at infinity

    std::complex<double> q1(double x) const;
    std::complex<double> q2(double x) const;
};

// exponents ordered {alpha, alpha', beta, beta', gamma, gamma'}; their sum
// must satisfy the Fuchsian relation (= 1) and a != b.
RiemannCoefficients general_q1_q2(double a, double b,
                                  const std::array<std::complex<double>, 6>& exponents);

struct TransformedSolution {
    int n = 2;
    double h = 0.0;
    double upsilon = 0.0;
    double lambda = 0.0;
    double T = 0.0;
    std::vector<double> tau;
    std::vector<double> z;  // e^{2 tau} (upsilon+1)/(upsilon-1); empty when tau_only
    std::vector<double> y;  // u * bar_j with u normalized to u(T) = 1
    double tau_residual = 0.0;  // max |y'' - (bar_j''/bar_j - lambda) y| / max |y|
    double z_residual = 0.0;    // filled from verify_riem2 by callers that want it
    double y0_defect = 0.0;
    double yT_defect = 0.0;
    double dyT_defect = 0.0;
};

// pair must be the first eigenpair of omega_1(h) with the Agol rule at
// delta = 1. With tau_only the z map is skipped, which is the only way to
// handle upsilon = 1 (h = n - 1); otherwise that case throws.
TransformedSolution liouville_transform(const sturm::Eigenpair& pair, double h, int n,
                                        bool tau_only = false);

// Max over the interior grid of |y'' + y'/z - Q(z) y| / max |y| with
// Q = [q (z-1)^2 + r (z+1)^2] / (4 z^2 (z-1)^2), derivatives by centered
// differences on the (nonuniform) z grid.
double verify_riem2(const TransformedSolution& sol, const RiemannParams& params);

// Samples (z - P)^i rho_i limits at P in {0, 1} and z^i rho_i at infinity, and
// confirms rho2 has no poles besides 0 and 1.
bool fuchsian_check(const RiemannParams& params);

}  // namespace specbound::riemann
