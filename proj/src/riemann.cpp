#include "specbound/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specbound/weights.hpp"

namespace specbound::riemann {

RiemannParams riemann_params(int n, double lambda, double upsilon, double T)
{
    if (std::abs(upsilon - 1.0) < 1e-12)
        throw SingularSubstitutionError(
            "riemann_params: the z substitution degenerates at upsilon = 1 (h = n - 1)");
    RiemannParams par;
    par.n = n;
    par.lambda = lambda;
    par.upsilon = upsilon;
    par.T = T;
    par.q = 0.5 * (n - 1 - 2.0 * lambda);
    par.r = 0.25 * (n - 1) * (n - 3);
    par.s = par.q + par.r;
    par.a = (upsilon + 1.0) / (upsilon - 1.0);
    par.b = std::exp(2.0 * T) * par.a;
    return par;
}

double rho1(double z)
{
    return 1.0 / z;
}

double rho2(const RiemannParams& par, double z)
{
    const double zm = z - 1.0;
    const double zp = z + 1.0;
    return -(par.q * zm * zm + par.r * zp * zp) / (4.0 * z * z * zm * zm);
}

std::complex<double> ExponentData::sum() const
{
    return at_zero[0] + at_zero[1] + at_one[0] + at_one[1] + at_infinity[0] + at_infinity[1];
}

std::array<std::complex<double>, 6> ExponentData::flat() const
{
    return {at_zero[0], at_zero[1], at_one[0], at_one[1], at_infinity[0], at_infinity[1]};
}

ExponentData local_exponents(const RiemannParams& par)
{
    // Indicial roots: X^2 = s/4 at 0 and infinity, X(X-1) = r at 1.
    const std::complex<double> half_sqrt_s = 0.5 * std::sqrt(std::complex<double>(par.s, 0.0));
    const double root = std::sqrt(1.0 + 4.0 * par.r);
    ExponentData data;
    data.at_zero = {-half_sqrt_s, half_sqrt_s};
    data.at_one = {std::complex<double>(0.5 * (1.0 - root), 0.0),
                   std::complex<double>(0.5 * (1.0 + root), 0.0)};
    data.at_infinity = {-half_sqrt_s, half_sqrt_s};
    return data;
}

std::complex<double> RiemannCoefficients::q1(double x) const
{
    return (1.0 - alpha_sum) / (x - a) + (1.0 - beta_sum) / (x - b);
}

std::complex<double> RiemannCoefficients::q2(double x) const
{
    const double xa = x - a;
    const double xb = x - b;
    return (alpha_prod * (a - b) * xb + beta_prod * (b - a) * xa + gamma_prod * xa * xb) /
           (xa * xa * xb * xb);
}

RiemannCoefficients general_q1_q2(double a, double b,
                                  const std::array<std::complex<double>, 6>& e)
{
    if (a == b)
        throw std::invalid_argument("general_q1_q2: singularities must be distinct");
    std::complex<double> sum = 0.0;
    for (const auto& x : e)
        sum += x;
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("general_q1_q2: exponent sum violates the Fuchsian relation");
    RiemannCoefficients coeff;
    coeff.a = a;
    coeff.b = b;
    coeff.alpha_sum = e[0] + e[1];
    coeff.alpha_prod = e[0] * e[1];
    coeff.beta_sum = e[2] + e[3];
    coeff.beta_prod = e[2] * e[3];
    coeff.gamma_prod = e[4] * e[5];
    return coeff;
}

TransformedSolution liouville_transform(const sturm::Eigenpair& pair, double h, int n,
                                        bool tau_only)
{
    const std::size_t m = pair.grid.size();
    if (m < 8)
        throw std::invalid_argument("liouville_transform: eigenpair grid too small");
    const double ups = h / (n - 1);
    const bool singular = std::abs(ups - 1.0) < 1e-12;
    if (singular && !tau_only)
        throw SingularSubstitutionError(
            "liouville_transform: upsilon = 1 (h = n - 1); rerun with the tau-only path");

    TransformedSolution sol;
    sol.n = n;
    sol.h = h;
    sol.upsilon = ups;
    sol.lambda = pair.lambda;
    sol.T = pair.grid.back();
    sol.tau = pair.grid;
    sol.y.resize(m);

    const double uT = pair.u.back();
    if (uT == 0.0)
        throw std::runtime_error("liouville_transform: u(T) = 0, cannot normalize");
    for (std::size_t i = 0; i < m; ++i)
        sol.y[i] = pair.u[i] / uT * weights::bar_j(sol.tau[i], h, n);

    if (!singular) {
        const double factor = (ups + 1.0) / (ups - 1.0);
        sol.z.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            sol.z[i] = std::exp(2.0 * sol.tau[i]) * factor;
    }

    const double dx = sol.tau[1] - sol.tau[0];
    double max_y = 0.0;
    for (double v : sol.y)
        max_y = std::max(max_y, std::abs(v));
    double max_defect = 0.0;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double d2 = (sol.y[i + 1] - 2.0 * sol.y[i] + sol.y[i - 1]) / (dx * dx);
        const double c = weights::bar_j_second(sol.tau[i], h, n) /
                             weights::bar_j(sol.tau[i], h, n) -
                         sol.lambda;
        max_defect = std::max(max_defect, std::abs(d2 - c * sol.y[i]));
    }
    sol.tau_residual = max_defect / max_y;

    sol.y0_defect = std::abs(sol.y.front());
    sol.yT_defect = std::abs(sol.y.back() - weights::bar_j(sol.T, h, n));
    const double dyT =
        (3.0 * sol.y[m - 1] - 4.0 * sol.y[m - 2] + sol.y[m - 3]) / (2.0 * dx);
    sol.dyT_defect = std::abs(dyT - weights::bar_j_prime(sol.T, h, n));
    return sol;
}

double verify_riem2(const TransformedSolution& sol, const RiemannParams& par)
{
    const std::size_t m = sol.z.size();
    if (m < 8 || sol.y.size() != m)
        throw std::invalid_argument("verify_riem2: missing or mismatched z grid");
    for (double z : sol.z)
        if (std::abs(z) < 1e-12 || std::abs(z - 1.0) < 1e-12)
            throw std::invalid_argument("verify_riem2: z grid touches a singularity");

    double max_y = 0.0;
    for (double v : sol.y)
        max_y = std::max(max_y, std::abs(v));
    double max_defect = 0.0;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double hm = sol.z[i] - sol.z[i - 1];
        const double hp = sol.z[i + 1] - sol.z[i];
        const double denom = hm * hp * (hm + hp);
        const double yp = (hm * hm * sol.y[i + 1] - hp * hp * sol.y[i - 1] -
                           (hm * hm - hp * hp) * sol.y[i]) /
                          denom;
        const double ypp =
            2.0 * (hm * sol.y[i + 1] + hp * sol.y[i - 1] - (hm + hp) * sol.y[i]) / denom;
        const double defect = ypp + rho1(sol.z[i]) * yp + rho2(par, sol.z[i]) * sol.y[i];
        max_defect = std::max(max_defect, std::abs(defect));
    }
    return max_defect / max_y;
}

namespace {

// Checks v(seq_m) -> expected with non-increasing error along the tail.
template <class F>
bool sampled_limit(F&& value, const std::vector<double>& seq, double expected)
{
    const double tol = 1e-6 * (1.0 + std::abs(expected));
    double prev_err = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const double err = std::abs(value(seq[i]) - expected);
        if (i + 1 == seq.size() && err > tol)
            return false;
        if (err > prev_err + tol)
            return false;
        prev_err = err;
    }
    return true;
}

}  // namespace

bool fuchsian_check(const RiemannParams& par)
{
    std::vector<double> shrink, grow;
    for (int m = 6; m <= 24; m += 2) {
        shrink.push_back(std::pow(2.0, -m));
        grow.push_back(std::pow(2.0, m));
    }

    bool ok = true;
    // Regular singularity at 0: a_{1,0} = 1, a_{2,0} = -s/4.
    ok = ok && sampled_limit([&](double z) { return z * rho1(z); }, shrink, 1.0);
    ok = ok && sampled_limit([&](double z) { return z * z * rho2(par, z); }, shrink,
                             -0.25 * par.s);
    // At 1: a_{1,1} = 0, a_{2,1} = -r.
    ok = ok && sampled_limit([&](double e) { return e * rho1(1.0 + e); }, shrink, 0.0);
    ok = ok && sampled_limit([&](double e) { return e * e * rho2(par, 1.0 + e); }, shrink,
                             -par.r);
    // At infinity: a_{1,inf} = 1, a_{2,inf} = -s/4.
    ok = ok && sampled_limit([&](double z) { return z * rho1(z); }, grow, 1.0);
    ok = ok && sampled_limit([&](double z) { return z * z * rho2(par, z); }, grow,
                             -0.25 * par.s);

    // z^2 (z-1)^2 rho2 must be a quadratic polynomial (no further poles):
    // third divided differences over any sample points vanish.
    const auto cleared = [&](double z) {
        const double zm = z - 1.0;
        return z * z * zm * zm * rho2(par, z);
    };
    double scale = 1.0;
    std::array<double, 5> zs{-4.0, -2.5, -1.0, 2.0, 3.5};
    std::array<double, 5> vals{};
    for (std::size_t i = 0; i < zs.size(); ++i) {
        vals[i] = cleared(zs[i]);
        scale = std::max(scale, std::abs(vals[i]));
    }
    for (std::size_t lead = 0; lead + 3 < zs.size(); ++lead) {
        double dd[4];
        double xx[4];
        for (int i = 0; i < 4; ++i) {
            dd[i] = vals[lead + i];
            xx[i] = zs[lead + i];
        }
        for (int order = 1; order < 4; ++order)
            for (int i = 0; i < 4 - order; ++i)
                dd[i] = (dd[i + 1] - dd[i]) / (xx[i + order] - xx[i]);
        if (std::abs(dd[0]) > 1e-9 * scale)
            ok = false;
    }
    return ok;
}

}  // namespace specbound::riemann
