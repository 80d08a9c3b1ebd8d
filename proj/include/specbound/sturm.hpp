// Regular Sturm-Liouville solver: -(p u')' = lambda w u on (0, T) with
// u(0) = 0, u'(T) = 0, by shooting on the Pruefer angle.
#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specbound/ode.hpp"

namespace specbound::sturm {

struct SLProblem {
    double T = 1.0;
    std::function<double(double)> p;  // > 0 on [0, T]
    std::function<double(double)> w;  // > 0 on [0, T), may vanish at T
    std::string label;
};

struct ShootResult {
    double theta_T = 0.0;  // Pruefer angle at T
    double lambda = 0.0;   // trial eigenvalue
};

struct Eigenpair {
    int k = 0;                 // index, from the Pruefer angle at lambda
    double lambda = 0.0;
    std::vector<double> grid;  // ascending sample points in [0, T]
    std::vector<double> u;     // eigenfunction, normalized to integral u^2 w = 1
    std::vector<double> du;    // u'
    int zeros = 0;             // interior sign changes of u
};

class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ode::Options default_shoot_options();  // rel 1e-10, abs 1e-12

// Integrates theta' = cos^2(theta)/p + lambda w sin^2(theta) from theta(0) = 0.
// theta(T; lambda) is continuous and strictly increasing in lambda.
ShootResult pruefer_theta(const SLProblem& prob, double lambda,
                          const ode::Options& opt = default_shoot_options());

// k-th eigenvalue (k >= 1): the unique lambda with theta(T; lambda) = (k - 1/2) pi,
// located by geometric scan, bisection to width rel_tol * lambda, and a secant
// finish. Throws BracketError if the upward scan exceeds its ceiling.
double eigenvalue(const SLProblem& prob, int k, double rel_tol = 1e-9,
                  const ode::Options& opt = default_shoot_options());

// Integrates (u, p u') from u(0) = 0, (p u')(0) = 1 at a computed eigenvalue,
// then normalizes so that integral u^2 w = 1 and u(T) > 0.
Eigenpair eigenfunction(const SLProblem& prob, double lambda, std::size_t samples = 1024,
                        const ode::Options& opt = default_shoot_options());

}  // namespace specbound::sturm
