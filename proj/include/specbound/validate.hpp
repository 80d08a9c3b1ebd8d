// Closed-form and brute-force regression oracles for the solver: the circle,
// 2-sphere and torus model problems plus the flat-tori lattice spectra.
#pragma once

#include <string>
#include <vector>

#include "specbound/sturm.hpp"

namespace specbound::validate {

struct OracleCase {
    std::string name;
    sturm::SLProblem problem;
    std::vector<double> expected;       // strictly increasing
    double tol = 1e-9;                  // relative
    std::vector<std::string> warnings;  // indexing caveats carried with the case
};

// -u'' = lambda u on (0, pi/2), u(0) = 0, u'(pi/2) = 0; lambda_k = (2k-1)^2.
OracleCase circle_case();
// -(cos(tau) u')' = lambda cos(tau) u on (0, pi/2); the coefficient vanishes
// at pi/2, so the case truncates the interval by 3e-5 (see the constructor).
OracleCase sphere2_case();
// -u'' = lambda u on (0, 1/4); lambda_k = (2 pi (2k-1))^2.
OracleCase torus_case();

// Sorted spectrum (with multiplicity, starting at 0) of the flat torus
// R^2 / A_i Z^2 with A_i = diag(2^{1-i}, 1):
// lambda = 4 pi^2 ((2^{i-1} x1)^2 + x2^2) over integer (x1, x2).
std::vector<double> flat_torus_spectrum(int i, int count);

struct CaseResult {
    std::string name;
    bool passed = false;
    double max_rel_error = 0.0;
    std::vector<double> computed;
    std::vector<std::string> warnings;
    std::string error;  // solver failure, if any
};

struct Report {
    std::vector<CaseResult> cases;
    bool all_passed() const;
};

// Runs every oracle case against the sturm solver. tol_override = 0 keeps the
// per-case defaults. Aggregates failures; never aborts mid-suite.
Report run_all(double tol_override = 0.0, const std::string& only_case = "");

CaseResult run_case(const OracleCase& oracle, double tol_override = 0.0);

}  // namespace specbound::validate
