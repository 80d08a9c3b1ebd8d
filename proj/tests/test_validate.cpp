#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specbound/numerics.hpp"
#include "specbound/validate.hpp"

using namespace specbound;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("oracle case construction")
{
    const auto circle = validate::circle_case();
    CHECK(circle.problem.T == doctest::Approx(kPi / 2));  // T = 1/h, h = 2/pi
    CHECK(circle.expected.front() == doctest::Approx(1.0));
    CHECK(circle.expected[1] == doctest::Approx(9.0));
    CHECK(circle.expected[2] == doctest::Approx(25.0));
    CHECK(!circle.warnings.empty());

    const auto sphere = validate::sphere2_case();
    CHECK(sphere.expected.size() == 13);
    // The listed values follow l(l+1) over odd l.
    for (std::size_t j = 0; j < sphere.expected.size(); ++j) {
        const double l = 2.0 * (j + 1) - 1.0;
        CHECK(sphere.expected[j] == doctest::Approx(l * (l + 1)));
    }

    const auto torus = validate::torus_case();
    CHECK(torus.problem.T == doctest::Approx(0.25));  // T = 1/h, h = 4
    CHECK(torus.expected.front() == doctest::Approx(4.0 * kPi * kPi));
    CHECK(!torus.warnings.empty());

    // Expected lists are strictly increasing.
    for (const auto& oracle : {circle, sphere, torus})
        for (std::size_t j = 1; j < oracle.expected.size(); ++j)
            CHECK(oracle.expected[j] > oracle.expected[j - 1]);
}

TEST_CASE("every oracle problem satisfies h * integral J = 1")
{
    struct Row {
        validate::OracleCase oracle;
        double h;
    };
    const Row rows[] = {{validate::circle_case(), 2.0 / kPi},
                        {validate::sphere2_case(), 1.0},
                        {validate::torus_case(), 4.0}};
    for (const auto& row : rows) {
        const double integral =
            num::integrate(row.oracle.problem.p, 0.0, row.oracle.problem.T);
        CHECK(std::abs(row.h * integral - 1.0) <= 1e-9);
    }
}

TEST_CASE("solver reproduces the circle and torus closed forms")
{
    for (const auto& oracle : {validate::circle_case(), validate::torus_case()}) {
        const auto result = validate::run_case(oracle);
        CHECK(result.passed);
        CHECK(result.max_rel_error <= 1e-9);
    }
}

TEST_CASE("flat torus spectra: prefix, stability, asymptotic slope")
{
    const auto first = validate::flat_torus_spectrum(1, 6);
    CHECK(first[0] == doctest::Approx(0.0));
    for (int j = 1; j <= 4; ++j)
        CHECK(first[j] == doctest::Approx(4.0 * kPi * kPi));
    CHECK(first[5] == doctest::Approx(8.0 * kPi * kPi));

    // Enlarging the requested prefix must not disturb earlier entries.
    const auto longer = validate::flat_torus_spectrum(1, 64);
    const auto shorter = validate::flat_torus_spectrum(1, 16);
    for (std::size_t j = 0; j < shorter.size(); ++j)
        CHECK(shorter[j] == doctest::Approx(longer[j]));

    // lambda_k / k approaches 4 pi (covolume 1) for the square torus.
    const auto square = validate::flat_torus_spectrum(1, 501);
    CHECK(square[500] / 500.0 == doctest::Approx(4.0 * kPi).epsilon(0.2));
}

TEST_CASE("flat torus slope doubles with each lattice stretch")
{
    const auto s1 = validate::flat_torus_spectrum(1, 501);
    const auto s2 = validate::flat_torus_spectrum(2, 501);
    const auto s3 = validate::flat_torus_spectrum(3, 501);
    const double r21 = s2[500] / s1[500];
    const double r32 = s3[500] / s2[500];
    CHECK(r21 == doctest::Approx(2.0).epsilon(0.1));
    CHECK(r32 == doctest::Approx(2.0).epsilon(0.1));

    // Within one lattice the growth is linear in k, not k^{2/n} = k.
    // comparing slopes over a k window confirms the per-i doubling.
    const double slope1 = (s1[500] - s1[250]) / 250.0;
    const double slope2 = (s2[500] - s2[250]) / 250.0;
    CHECK(slope2 / slope1 == doctest::Approx(2.0).epsilon(0.1));

    CHECK_THROWS_AS(validate::flat_torus_spectrum(0, 10), std::invalid_argument);
    CHECK_THROWS_AS(validate::flat_torus_spectrum(1, 0), std::invalid_argument);
}

TEST_CASE("run_all aggregates, reports warnings, honors filters")
{
    const auto report = validate::run_all();
    CHECK(report.cases.size() == 3);
    CHECK(report.all_passed());
    bool saw_warning = false;
    for (const auto& entry : report.cases)
        saw_warning = saw_warning || !entry.warnings.empty();
    CHECK(saw_warning);

    const auto only = validate::run_all(0.0, "sphere2");
    CHECK(only.cases.size() == 1);
    CHECK(only.cases.front().name == "sphere2");
    CHECK_THROWS_AS(validate::run_all(0.0, "nope"), std::invalid_argument);

    // Tolerance tighter than solver accuracy fails honestly.
    const auto strict = validate::run_all(1e-15);
    CHECK(!strict.all_passed());
}

TEST_CASE("a perturbed expected value fails loudly")
{
    auto oracle = validate::circle_case();
    oracle.expected[1] = 9.5;  // deliberate corruption
    const auto result = validate::run_case(oracle);
    CHECK(!result.passed);
    CHECK(result.max_rel_error > 1e-2);
}
