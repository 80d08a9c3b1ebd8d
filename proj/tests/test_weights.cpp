#include <doctest.h>

#include <cmath>
#include <vector>

#include "specbound/numerics.hpp"
#include "specbound/weights.hpp"

using namespace specbound;
using weights::CurvatureRule;

namespace {

double binom(int n, int k)
{
    double v = 1.0;
    for (int i = 1; i <= k; ++i)
        v = v * (n - k + i) / i;
    return v;
}

// Independent oracle: closed-form antiderivative of J_delta(tau, t) on [0, X]
// by binomial expansion, a sum of exponentials for delta > 0 and a polynomial
// for delta = 0.
double j_integral_oracle(double X, double t, int n, double delta)
{
    if (delta == 0.0) {
        if (t == 0.0)
            return X;
        return (std::pow(1.0 + t * X, n) - 1.0) / (t * n);
    }
    const double A = 0.5 * (1.0 + t / delta);
    const double B = 0.5 * (1.0 - t / delta);
    double total = 0.0;
    for (int j = 0; j <= n - 1; ++j) {
        const double coef = binom(n - 1, j) * std::pow(A, j) * std::pow(B, n - 1 - j);
        const int m = 2 * j - (n - 1);
        if (m == 0)
            total += coef * X;
        else
            total += coef * (std::exp(delta * m * X) - 1.0) / (delta * m);
    }
    return total;
}

}  // namespace

TEST_CASE("s_delta and c_delta branches")
{
    CHECK(weights::s_delta(0.0, 1.0) == 0.0);
    CHECK(weights::s_delta(2.0, 0.0) == 2.0);
    CHECK(weights::s_delta(1.0, 1e-8) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(weights::c_delta(0.0, 5.0) == 1.0);
    CHECK(weights::c_delta(3.0, 0.0) == 1.0);

    // c_delta is the tau-derivative of s_delta: central difference oracle.
    const double tau = 0.7, delta = 1.3, step = 1e-6;
    const double fd =
        (weights::s_delta(tau + step, delta) - weights::s_delta(tau - step, delta)) / (2 * step);
    CHECK(fd == doctest::Approx(weights::c_delta(tau, delta)).epsilon(1e-6));
}

TEST_CASE("j_delta closed forms")
{
    for (double t : {0.0, 0.5, 2.0})
        for (int n : {2, 3, 5})
            for (double delta : {0.0, 1.0, 2.0})
                CHECK(weights::j_delta(0.0, t, n, delta) == doctest::Approx(1.0));

    // t = 1, delta = 1: cosh + sinh = e^tau, so J = e^{(n-1) tau}.
    for (double tau : {0.1, 0.5, 1.3})
        for (int n : {2, 3, 4})
            CHECK(weights::j_delta(tau, 1.0, n, 1.0) ==
                  doctest::Approx(std::exp((n - 1) * tau)).epsilon(1e-13));
    CHECK(weights::j_delta(std::log(2.0), 1.0, 2, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("upsilon rules and their crossing")
{
    CHECK(weights::upsilon(CurvatureRule::Agol, 1.0, 2, 1.0) == doctest::Approx(1.0));
    CHECK(weights::upsilon(CurvatureRule::Buser, 1.0, 2, 1.0) == doctest::Approx(1.5));

    // For delta = 1 the Agol value is smaller exactly when h < n(n-1).
    for (int n : {2, 3, 4}) {
        const double cross = static_cast<double>(n) * (n - 1);
        for (double h : {0.3 * cross, 0.9 * cross, 1.1 * cross, 3.0 * cross}) {
            const double agol = weights::upsilon(CurvatureRule::Agol, h, n, 1.0);
            const double buser = weights::upsilon(CurvatureRule::Buser, h, n, 1.0);
            CHECK((agol < buser) == (h < cross));
            CHECK(weights::upsilon(CurvatureRule::Best, h, n, 1.0) ==
                  doctest::Approx(std::min(agol, buser)));
        }
    }
}

TEST_CASE("solve_horizon closed form and residual")
{
    // h = n-1, Agol (upsilon = 1), delta = 1: integral of e^{(n-1)tau} gives
    // T = ln(2)/(n-1).
    for (int n : {2, 3, 4}) {
        const double h = n - 1.0;
        const double T = weights::solve_horizon(h, 1.0, n, 1.0);
        CHECK(T == doctest::Approx(std::log(2.0) / (n - 1)).epsilon(1e-10));
    }

    for (double h : {0.2, 1.0, 5.0}) {
        const double ups = weights::upsilon(CurvatureRule::Agol, h, 3, 1.0);
        const double T = weights::solve_horizon(h, ups, 3, 1.0);
        const double integral = num::integrate(
            [&](double tau) { return weights::j_delta(tau, ups, 3, 1.0); }, 0.0, T,
            num::QuadOptions{1e-14, 1e-13, 4096});
        CHECK(std::abs(h * integral - 1.0) <= 1e-10);
    }
}

TEST_CASE("solve_horizon is strictly decreasing in h")
{
    double prev = 1e300;
    for (double h : {0.5, 1.0, 2.0, 4.0}) {
        const double ups = weights::upsilon(CurvatureRule::Best, h, 2, 1.0);
        const double T = weights::solve_horizon(h, ups, 2, 1.0);
        CHECK(T < prev);
        prev = T;
    }
}

TEST_CASE("w2 closed form, endpoints and monotonicity")
{
    weights::GeometryParams gp{2, 1.0, 1.0, CurvatureRule::Agol};
    const weights::WeightSystem ws(gp);
    CHECK(ws.w2(0.0) == doctest::Approx(1.0));
    CHECK(std::abs(ws.w2(ws.horizon())) <= 1e-9);

    // upsilon = 1: J = e^tau, so w2 = 2 - e^tau on [0, ln 2].
    for (double tau : {0.0, 0.1, 0.3, 0.5, 0.69}) {
        CHECK(ws.w2(tau) == doctest::Approx(2.0 - std::exp(tau)).epsilon(1e-10));
    }

    double prev = 2.0;
    for (int i = 0; i <= 32; ++i) {
        const double tau = ws.horizon() * i / 32.0;
        const double v = ws.w2(tau);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(ws.w2(ws.horizon()) >= 0.0);
}

TEST_CASE("bar_j identities")
{
    for (double h : {0.5, 1.0, 3.0})
        for (int n : {2, 3, 4})
            CHECK(weights::bar_j(0.0, h, n) == doctest::Approx(1.0));

    // h = n-1 turns the base into e^tau.
    for (int n : {2, 3, 5})
        for (double tau : {0.2, 0.9})
            CHECK(weights::bar_j(tau, n - 1.0, n) ==
                  doctest::Approx(std::exp((n - 1) * tau / 2.0)).epsilon(1e-13));

    // bar_j^2 = J_1(tau, h/(n-1)) exactly.
    for (int n : {2, 3, 4})
        for (double h : {0.4, 1.7})
            for (double tau : {0.0, 0.3, 0.8, 1.4}) {
                const double bj = weights::bar_j(tau, h, n);
                CHECK(std::abs(bj * bj - weights::j_delta(tau, h / (n - 1), n, 1.0)) <= 1e-12 *
                          weights::j_delta(tau, h / (n - 1), n, 1.0));
            }
}

TEST_CASE("bar_j derivatives match finite differences")
{
    const double h = 0.8;
    const int n = 4;
    const double step = 1e-5;
    for (double tau : {0.2, 0.7, 1.1}) {
        const double fd1 =
            (weights::bar_j(tau + step, h, n) - weights::bar_j(tau - step, h, n)) / (2 * step);
        const double fd2 = (weights::bar_j(tau + step, h, n) - 2 * weights::bar_j(tau, h, n) +
                            weights::bar_j(tau - step, h, n)) /
                           (step * step);
        CHECK(fd1 == doctest::Approx(weights::bar_j_prime(tau, h, n)).epsilon(1e-8));
        CHECK(fd2 == doctest::Approx(weights::bar_j_second(tau, h, n)).epsilon(1e-5));
    }
}

TEST_CASE("p stays at or above 1 for nonnegative upsilon and delta")
{
    for (double delta : {0.0, 0.5, 1.0})
        for (double h : {0.3, 1.0, 4.0}) {
            weights::GeometryParams gp{3, delta, h, CurvatureRule::Best};
            const weights::WeightSystem ws(gp);
            for (int i = 0; i <= 16; ++i)
                CHECK(ws.p(ws.horizon() * i / 16.0) >= 1.0);
        }
}

TEST_CASE("delta -> 0 limit is continuous")
{
    weights::GeometryParams a{3, 1e-9, 0.7, CurvatureRule::Agol};
    weights::GeometryParams b{3, 0.0, 0.7, CurvatureRule::Agol};
    const weights::WeightSystem wa(a), wb(b);
    CHECK(wa.horizon() == doctest::Approx(wb.horizon()).epsilon(1e-6));
    for (int i = 0; i <= 8; ++i) {
        const double tau = wb.horizon() * i / 8.0;
        CHECK(wa.w2(tau) == doctest::Approx(wb.w2(tau)).epsilon(1e-6));
        CHECK(wa.p(tau) == doctest::Approx(wb.p(tau)).epsilon(1e-6));
    }
}

TEST_CASE("adaptive quadrature of J_delta matches the closed-form antiderivative")
{
    for (int n : {2, 3, 4})
        for (double delta : {0.0, 0.7, 1.0})
            for (double t : {0.0, 0.8, 1.5})
                for (double X : {0.5, 1.5}) {
                    const double quad = num::integrate(
                        [&](double tau) { return weights::j_delta(tau, t, n, delta); }, 0.0, X,
                        num::QuadOptions{1e-12, 1e-10, 4096});
                    const double oracle = j_integral_oracle(X, t, n, delta);
                    CHECK(quad == doctest::Approx(oracle).epsilon(1e-10));
                }
}

TEST_CASE("weight system satisfies h * integral p = 1 and serializes")
{
    for (double h : {0.3, 1.0, 2.5}) {
        weights::GeometryParams gp{2, 1.0, h, CurvatureRule::Best};
        const weights::WeightSystem ws(gp);
        CHECK(std::abs(h * ws.cumulative(ws.horizon()) - 1.0) <= 1e-10);
        CHECK(ws.record().find("rule=best") != std::string::npos);
    }
}

TEST_CASE("parameter validation")
{
    weights::GeometryParams bad_n{1, 1.0, 1.0, CurvatureRule::Best};
    CHECK_THROWS_AS(bad_n.validate(), std::invalid_argument);
    weights::GeometryParams bad_h{2, 1.0, 0.0, CurvatureRule::Best};
    CHECK_THROWS_AS(bad_h.validate(), std::invalid_argument);
    weights::GeometryParams bad_delta{2, -1.0, 1.0, CurvatureRule::Best};
    CHECK_THROWS_AS(bad_delta.validate(), std::invalid_argument);
    CHECK_THROWS_AS(weights::rule_from_name("x"), std::invalid_argument);
}
