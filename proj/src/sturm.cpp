#include "specbound/sturm.hpp"

#include <cmath>
#include <numbers>

namespace specbound::sturm {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLambdaCeiling = 1e13;
}  // namespace

ode::Options default_shoot_options()
{
    // The unscaled Pruefer angle reaches k pi, so error-per-step control
    // accumulates roughly steps * rel_tol * theta of phase error; 1e-13 keeps
    // the k = 10 oracle eigenvalues inside 1e-9 relative.
    ode::Options opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-14;
    return opt;
}

ShootResult pruefer_theta(const SLProblem& prob, double lambda, const ode::Options& opt)
{
    const auto rhs = [&](double tau, const std::array<double, 1>& y) -> std::array<double, 1> {
        const double c = std::cos(y[0]);
        const double s = std::sin(y[0]);
        return {c * c / prob.p(tau) + lambda * prob.w(tau) * s * s};
    };
    ode::Integrator<1, decltype(rhs)> integ(rhs, 0.0, {0.0}, prob.T, opt);
    integ.advance_to(prob.T);
    return {integ.state()[0], lambda};
}

double eigenvalue(const SLProblem& prob, int k, double rel_tol, const ode::Options& opt)
{
    if (k < 1)
        throw std::invalid_argument("eigenvalue: k must be >= 1");
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("eigenvalue: tol must be > 0");

    const double target = (k - 0.5) * kPi;
    const auto angle = [&](double lam) { return pruefer_theta(prob, lam, opt).theta_T; };

    double lo = 0.0;
    double alo = angle(lo);
    if (alo >= target)
        throw BracketError(prob.label + ": theta(T; 0) already above the index target");
    double hi = 1.0;
    double ahi = angle(hi);
    while (ahi < target) {
        lo = hi;
        alo = ahi;
        hi *= 2.0;
        if (hi > kLambdaCeiling)
            throw BracketError(prob.label + ": eigenvalue scan exceeded ceiling");
        ahi = angle(hi);
    }

    while (hi - lo > rel_tol * (0.5 * (hi + lo)) && hi - lo > 1e-300) {
        const double mid = 0.5 * (lo + hi);
        const double am = angle(mid);
        if (am < target) {
            lo = mid;
            alo = am;
        } else {
            hi = mid;
            ahi = am;
        }
    }

    // Secant finish; theta(T; lambda) is smooth and monotone here.
    double x0 = lo, f0 = alo - target;
    double x1 = hi, f1 = ahi - target;
    for (int it = 0; it < 3; ++it) {
        double x2 = f1 != f0 ? x1 - f1 * (x1 - x0) / (f1 - f0) : 0.5 * (lo + hi);
        if (!(x2 > lo && x2 < hi) || !std::isfinite(x2))
            x2 = 0.5 * (lo + hi);
        const double f2 = angle(x2) - target;
        if (f2 < 0.0)
            lo = x2;
        else
            hi = x2;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    return x1;
}

Eigenpair eigenfunction(const SLProblem& prob, double lambda, std::size_t samples,
                        const ode::Options& opt)
{
    if (samples < 8)
        throw std::invalid_argument("eigenfunction: too few samples");

    Eigenpair pair;
    pair.lambda = lambda;
    pair.grid.resize(samples);
    pair.u.resize(samples);
    pair.du.resize(samples);

    // State: (u, v = p u', accumulated integral of u^2 w).
    const auto rhs = [&](double tau, const std::array<double, 3>& y) -> std::array<double, 3> {
        const double wv = prob.w(tau);
        return {y[1] / prob.p(tau), -lambda * wv * y[0], y[0] * y[0] * wv};
    };
    ode::Integrator<3, decltype(rhs)> integ(rhs, 0.0, {0.0, 1.0, 0.0}, prob.T, opt);
    const double dx = prob.T / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau = i + 1 == samples ? prob.T : i * dx;
        integ.advance_to(tau);
        pair.grid[i] = tau;
        pair.u[i] = integ.state()[0];
        pair.du[i] = integ.state()[1] / prob.p(tau);
    }

    double scale = 1.0 / std::sqrt(integ.state()[2]);
    if (pair.u.back() < 0.0)
        scale = -scale;
    for (std::size_t i = 0; i < samples; ++i) {
        pair.u[i] *= scale;
        pair.du[i] *= scale;
    }

    int flips = 0;
    int last_sign = 0;
    for (std::size_t i = 1; i + 1 < samples; ++i) {
        const int sign = pair.u[i] > 0.0 ? 1 : pair.u[i] < 0.0 ? -1 : 0;
        if (sign == 0)
            continue;
        if (last_sign != 0 && sign != last_sign)
            ++flips;
        last_sign = sign;
    }
    pair.zeros = flips;
    pair.k = static_cast<int>(
        std::llround(pruefer_theta(prob, lambda, opt).theta_T / kPi + 0.5));
    return pair;
}

}  // namespace specbound::sturm
