// Assembles the omega_1 / omega_2 problems from a weight system and produces
// the eigenvalue upper bounds, classical comparison curves and h-sweeps.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "specbound/sturm.hpp"
#include "specbound/weights.hpp"

namespace specbound::bounds {

// Index map for the higher-eigenvalue bound: xi(k) = ceil((k+1)/2), so
// lambda_k(M) <= lambda_xi(k)(omega_2(h)).
int xi(int k);

// i = 1: (p, w) = (J_delta, J_delta); i = 2: (p, w) = (J_delta, w2); on [0, T].
sturm::SLProblem omega_problem(int i, const weights::WeightSystem& ws);

double lambda1_bound(const weights::GeometryParams& params);             // lambda_1(omega_1)
double lambdak_bound(const weights::GeometryParams& params, int k);      // lambda_xi(k)(omega_2)

double buser_curve(double h, int n, double delta);  // 2 delta (n-1) h + 10 h^2
double cheeger_lower(double h);                     // (h/2)^2

// Atkinson-Mingarelli constant: pi^2 (integral_0^T sqrt(w2/p))^-2; the
// integrand has a square-root zero at T which is removed by sigma = sqrt(T - tau).
double asymptotic_constant(const weights::WeightSystem& ws);

struct BoundReport {
    weights::GeometryParams params;
    double upsilon = 0.0;
    double T = 0.0;
    double lambda1_omega1 = 0.0;
    std::vector<std::pair<int, double>> lambda_omega2;  // (j, lambda_j(omega_2))
    struct XiRow {
        int k = 0;
        int xi = 0;
        double bound = 0.0;
    };
    std::vector<XiRow> xi_map;
    double buser = 0.0;
    double cheeger_lower = 0.0;
    double asymptotic_c = 0.0;
    std::string error;  // nonempty when a sweep row failed
};

BoundReport bound_report(const weights::GeometryParams& params, const std::vector<int>& k_list);

// One report per h, rows independent and order-preserving; failures are
// recorded per row, never fatal. threads <= 0 picks a hardware default.
std::vector<BoundReport> sweep(const weights::GeometryParams& base,
                               const std::vector<double>& h_grid,
                               const std::vector<int>& k_list, int threads = 0);

std::vector<double> h_grid(double min, double max, int count, bool log_spacing);

}  // namespace specbound::bounds
