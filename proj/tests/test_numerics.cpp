#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "specbound/numerics.hpp"
#include "specbound/ode.hpp"

using namespace specbound;

TEST_CASE("single gauss-kronrod panel is exact on smooth integrands")
{
    auto [poly, perr] =
        num::detail::gauss_kronrod_15([](double x) { return x * x * x * x * x * x; }, 0.0, 1.0);
    CHECK(poly == doctest::Approx(1.0 / 7).epsilon(1e-14));
    CHECK(perr < 1e-12);

    auto [expv, eerr] = num::detail::gauss_kronrod_15([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(expv == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature matches analytic integrals")
{
    CHECK(num::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(num::integrate([](double x) { return std::exp(x); }, 0.0, 2.0) ==
          doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-12));
    // Orientation flip.
    CHECK(num::integrate([](double x) { return x; }, 1.0, 0.0) ==
          doctest::Approx(-0.5).epsilon(1e-13));

    // Needs subdivision: a spike of width 1e-2 inside [-1, 1].
    const double spike = num::integrate(
        [](double x) { return std::exp(-(x / 0.01) * (x / 0.01)); }, -1.0, 1.0,
        num::QuadOptions{1e-14, 1e-12, 4096});
    CHECK(spike == doctest::Approx(0.01 * std::sqrt(std::numbers::pi)).epsilon(1e-10));
}

TEST_CASE("bisect finds bracketed roots")
{
    const double root = num::bisect([](double x) { return std::cos(x); }, 1.0, 2.0);
    CHECK(root == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK_THROWS_AS(num::bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("newton_bisect converges with the supplied derivative")
{
    auto f = [](double x) { return x * x * x - 2.0; };
    auto df = [](double x) { return 3.0 * x * x; };
    const double root = num::newton_bisect(f, df, 0.0, 2.0, f(0.0), f(2.0),
                                           num::RootOptions{1e-14, 0.0, 100});
    CHECK(root == doctest::Approx(std::cbrt(2.0)).epsilon(1e-13));
}

TEST_CASE("ode integrator reproduces closed forms")
{
    const auto exp_rhs = [](double, const std::array<double, 1>& y) -> std::array<double, 1> {
        return {y[0]};
    };
    const auto at1 = ode::integrate<1>(exp_rhs, 0.0, 1.0, {1.0});
    CHECK(at1[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-10));

    // Harmonic oscillator sampled mid-run through advance_to.
    const auto osc = [](double, const std::array<double, 2>& y) -> std::array<double, 2> {
        return {y[1], -y[0]};
    };
    ode::Integrator<2, decltype(osc)> integ(osc, 0.0, {0.0, 1.0}, std::numbers::pi);
    for (double t : {0.3, 0.7, 1.2, std::numbers::pi / 2, 2.5, std::numbers::pi}) {
        integ.advance_to(t);
        CHECK(integ.state()[0] == doctest::Approx(std::sin(t)).epsilon(1e-9));
        CHECK(integ.state()[1] == doctest::Approx(std::cos(t)).epsilon(1e-9));
    }
}

TEST_CASE("ode integrator reports failure instead of silently stalling")
{
    // Finite-time blow-up y' = y^2 at t = 1.
    const auto blowup = [](double, const std::array<double, 1>& y) -> std::array<double, 1> {
        return {y[0] * y[0]};
    };
    CHECK_THROWS_AS((ode::integrate<1>(blowup, 0.0, 2.0, {1.0})), ode::IntegrationError);

    ode::Options tight;
    tight.max_steps = 10;
    const auto osc = [](double t, const std::array<double, 1>&) -> std::array<double, 1> {
        return {std::sin(200.0 * t)};
    };
    CHECK_THROWS_AS((ode::integrate<1>(osc, 0.0, 50.0, {0.0}, tight)), ode::IntegrationError);
}
