// Weight functions p, w1, w2 built from the comparison factor J_delta and the
// horizon T solved from h * integral_0^T J_delta = 1.
#pragma once

#include <string>
#include <vector>

namespace specbound::weights {

// Mean-curvature bound rule: Agol h/(n-1), Buser delta + h/n, Best = min.
enum class CurvatureRule { Agol, Buser, Best };

const char* rule_name(CurvatureRule rule);
CurvatureRule rule_from_name(const std::string& name);

struct GeometryParams {
    int n = 2;             // dimension, n >= 2
    double delta = 1.0;    // Ricci scale: curvature >= -(n-1) delta^2
    double h = 1.0;        // Cheeger constant, > 0
    CurvatureRule rule = CurvatureRule::Best;

    void validate() const;  // throws std::invalid_argument
};

// s_delta(tau) = sinh(delta tau)/delta for delta > 0, tau for delta = 0.
double s_delta(double tau, double delta);
// c_delta = d s_delta / d tau.
double c_delta(double tau, double delta);
// J_delta(tau, t) = (c_delta(tau) + t s_delta(tau))^(n-1).
double j_delta(double tau, double t, int n, double delta);

double upsilon(CurvatureRule rule, double h, int n, double delta);

// Unique T > 0 with h * integral_0^T J_delta(tau, upsilon) dtau = 1,
// to residual 1e-10. Throws std::runtime_error if bracket expansion fails.
double solve_horizon(double h, double upsilon, int n, double delta);

// bar_j(tau) = (cosh tau + h/(n-1) sinh tau)^((n-1)/2); bar_j^2 = J_1(tau, h/(n-1)).
double bar_j(double tau, double h, int n);
double bar_j_prime(double tau, double h, int n);
double bar_j_second(double tau, double h, int n);

// Realized weights for one parameter triple. Immutable after construction;
// safe to copy and share across threads.
class WeightSystem {
public:
    explicit WeightSystem(const GeometryParams& params);

    const GeometryParams& params() const { return params_; }
    double upsilon() const { return upsilon_; }
    double horizon() const { return T_; }

    double p(double tau) const;                 // = J_delta(tau, upsilon)
    double w1(double tau) const { return p(tau); }
    // w2(tau) = 1 - h * integral_0^tau J_delta, clamped to >= 0 near T where
    // quadrature noise can push the value a hair negative.
    double w2(double tau) const;
    double cumulative(double tau) const;        // integral_0^tau p

    // Plain-text record: n, delta, h, rule, upsilon, T.
    std::string record() const;

private:
    GeometryParams params_;
    double upsilon_ = 0.0;
    double T_ = 0.0;
    std::vector<double> prefix_;  // prefix_[i] = integral over [0, i * panel_]
    double panel_ = 0.0;

    static constexpr int kPanels = 512;
};

}  // namespace specbound::weights
