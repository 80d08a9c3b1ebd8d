#include "specbound/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "specbound/numerics.hpp"

namespace specbound::weights {

const char* rule_name(CurvatureRule rule)
{
    switch (rule) {
        case CurvatureRule::Agol: return "agol";
        case CurvatureRule::Buser: return "buser";
        case CurvatureRule::Best: return "best";
    }
    return "?";
}

CurvatureRule rule_from_name(const std::string& name)
{
    if (name == "agol")
        return CurvatureRule::Agol;
    if (name == "buser")
        return CurvatureRule::Buser;
    if (name == "best")
        return CurvatureRule::Best;
    throw std::invalid_argument("unknown curvature rule: " + name);
}

void GeometryParams::validate() const
{
    if (n < 2)
        throw std::invalid_argument("GeometryParams: n must be >= 2");
    if (!(delta >= 0.0))
        throw std::invalid_argument("GeometryParams: delta must be >= 0");
    if (!(h > 0.0))
        throw std::invalid_argument("GeometryParams: h must be > 0");
}

double s_delta(double tau, double delta)
{
    return delta > 0.0 ? std::sinh(delta * tau) / delta : tau;
}

double c_delta(double tau, double delta)
{
    return delta > 0.0 ? std::cosh(delta * tau) : 1.0;
}

double j_delta(double tau, double t, int n, double delta)
{
    return std::pow(c_delta(tau, delta) + t * s_delta(tau, delta), n - 1);
}

double upsilon(CurvatureRule rule, double h, int n, double delta)
{
    const double agol = h / (n - 1);
    const double buser = delta + h / n;
    switch (rule) {
        case CurvatureRule::Agol: return agol;
        case CurvatureRule::Buser: return buser;
        case CurvatureRule::Best: return std::min(agol, buser);
    }
    return agol;
}

double solve_horizon(double h, double ups, int n, double delta)
{
    if (!(h > 0.0))
        throw std::invalid_argument("solve_horizon: h must be > 0");
    const double target = 1.0 / h;
    const auto integrand = [=](double tau) { return j_delta(tau, ups, n, delta); };
    const num::QuadOptions quad{1e-14, 1e-12, 4096};
    const auto resid = [&](double T) { return num::integrate(integrand, 0.0, T, quad) - target; };

    // J >= 1 whenever ups >= 0, so T = 1/h already bounds the root from above;
    // the doubling loop covers anything pathological.
    double lo = 0.0;
    double hi = target;
    double fhi = resid(hi);
    int doublings = 0;
    while (fhi < 0.0) {
        if (++doublings > 64)
            throw std::runtime_error("solve_horizon: bracket expansion exceeded 64 doublings");
        lo = hi;
        hi *= 2.0;
        fhi = resid(hi);
    }

    num::RootOptions opt;
    opt.f_tol = 3e-11 * target;  // keeps |h * integral - 1| <= 1e-10
    opt.x_tol = 0.0;
    return num::newton_bisect(resid, integrand, lo, hi, resid(lo), fhi, opt);
}

double bar_j(double tau, double h, int n)
{
    const double m = 0.5 * (n - 1);
    return std::pow(std::cosh(tau) + h / (n - 1) * std::sinh(tau), m);
}

double bar_j_prime(double tau, double h, int n)
{
    const double m = 0.5 * (n - 1);
    const double f = std::cosh(tau) + h / (n - 1) * std::sinh(tau);
    const double fp = std::sinh(tau) + h / (n - 1) * std::cosh(tau);
    return m * std::pow(f, m - 1.0) * fp;
}

double bar_j_second(double tau, double h, int n)
{
    // f'' = f, so (f^m)'' = m(m-1) f^(m-2) f'^2 + m f^m.
    const double m = 0.5 * (n - 1);
    const double f = std::cosh(tau) + h / (n - 1) * std::sinh(tau);
    const double fp = std::sinh(tau) + h / (n - 1) * std::cosh(tau);
    return m * (m - 1.0) * std::pow(f, m - 2.0) * fp * fp + m * std::pow(f, m);
}

WeightSystem::WeightSystem(const GeometryParams& params) : params_(params)
{
    params_.validate();
    upsilon_ = weights::upsilon(params_.rule, params_.h, params_.n, params_.delta);
    T_ = solve_horizon(params_.h, upsilon_, params_.n, params_.delta);
    panel_ = T_ / kPanels;
    prefix_.resize(kPanels + 1);
    prefix_[0] = 0.0;
    const num::QuadOptions quad{1e-15, 1e-13, 64};
    for (int i = 0; i < kPanels; ++i)
        prefix_[i + 1] =
            prefix_[i] + num::integrate([this](double tau) { return p(tau); },
                                        i * panel_, (i + 1) * panel_, quad);
}

double WeightSystem::p(double tau) const
{
    return j_delta(tau, upsilon_, params_.n, params_.delta);
}

double WeightSystem::cumulative(double tau) const
{
    if (tau <= 0.0)
        return 0.0;
    tau = std::min(tau, T_);
    int i = std::min(static_cast<int>(tau / panel_), kPanels - 1);
    const num::QuadOptions quad{1e-15, 1e-13, 64};
    return prefix_[i] + num::integrate([this](double x) { return p(x); },
                                       i * panel_, tau, quad);
}

double WeightSystem::w2(double tau) const
{
    return std::max(0.0, 1.0 - params_.h * cumulative(tau));
}

std::string WeightSystem::record() const
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "n=%d delta=%.17g h=%.17g rule=%s upsilon=%.17g T=%.17g",
                  params_.n, params_.delta, params_.h, rule_name(params_.rule), upsilon_, T_);
    return buf;
}

}  // namespace specbound::weights
