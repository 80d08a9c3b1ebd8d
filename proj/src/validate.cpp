#include "specbound/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specbound::validate {

namespace {
constexpr double kPi = std::numbers::pi;
}

OracleCase circle_case()
{
    OracleCase oracle;
    oracle.name = "circle";
    oracle.problem.T = kPi / 2.0;  // h = 2/pi, T = 1/h
    oracle.problem.p = [](double) { return 1.0; };
    oracle.problem.w = [](double) { return 1.0; };
    oracle.problem.label = "circle";
    for (int k = 1; k <= 10; ++k) {
        const double odd = 2.0 * k - 1.0;
        oracle.expected.push_back(odd * odd);
    }
    oracle.tol = 1e-9;
    oracle.warnings.push_back(
        "the (1+2k)^2 reference sequence starting at 9 skips the fundamental mode "
        "u = sin(tau) with lambda = 1; reporting (2k-1)^2 from k = 1");
    return oracle;
}

OracleCase sphere2_case()
{
    // p = w = cos(tau) vanishes at pi/2; truncating the interval by eps keeps
    // the problem regular and shifts each listed eigenvalue by less than
    // eps^2 (2l+1)/2 relative (largest listed mode l = 25), well inside tol.
    constexpr double kEps = 3e-5;
    OracleCase oracle;
    oracle.name = "sphere2";
    oracle.problem.T = kPi / 2.0 - kEps;
    oracle.problem.p = [](double tau) { return std::cos(tau); };
    oracle.problem.w = [](double tau) { return std::cos(tau); };
    oracle.problem.label = "sphere2";
    oracle.expected = {2,   12,  30,  56,  90,  132, 182,
                       240, 306, 380, 462, 552, 650};  // l(l+1), odd l
    oracle.tol = 1e-6;
    return oracle;
}

OracleCase torus_case()
{
    OracleCase oracle;
    oracle.name = "torus";
    oracle.problem.T = 0.25;  // h = 4, T = 1/h
    oracle.problem.p = [](double) { return 1.0; };
    oracle.problem.w = [](double) { return 1.0; };
    oracle.problem.label = "torus";
    for (int k = 1; k <= 10; ++k) {
        const double v = 2.0 * kPi * (2.0 * k - 1.0);
        oracle.expected.push_back(v * v);
    }
    oracle.tol = 1e-9;
    oracle.warnings.push_back(
        "the (2pi(1+2k))^2 reference sequence skips the fundamental mode "
        "u = sin(2 pi tau) with lambda = 4 pi^2; reporting (2pi(2k-1))^2 from k = 1");
    return oracle;
}

std::vector<double> flat_torus_spectrum(int i, int count)
{
    if (i < 1 || count < 1)
        throw std::invalid_argument("flat_torus_spectrum: need i >= 1 and count >= 1");
    const double scale1 = std::pow(2.0, i - 1);  // dual-lattice stretch on the x1 axis
    const double four_pi2 = 4.0 * kPi * kPi;

    // Enumerate everything below a cap, growing the cap until the prefix is
    // provably complete (count values at or below it).
    double cap = four_pi2 * (scale1 * count / kPi + 4.0);
    std::vector<double> values;
    for (;;) {
        values.clear();
        const double radius = std::sqrt(cap / four_pi2);
        const long m1 = static_cast<long>(std::ceil(radius / scale1)) + 2;
        const long m2 = static_cast<long>(std::ceil(radius)) + 2;
        for (long x1 = -m1; x1 <= m1; ++x1) {
            const double sx = scale1 * static_cast<double>(x1);
            for (long x2 = -m2; x2 <= m2; ++x2) {
                const double dx2 = static_cast<double>(x2);
                const double v = four_pi2 * (sx * sx + dx2 * dx2);
                if (v <= cap)
                    values.push_back(v);
            }
        }
        if (static_cast<int>(values.size()) >= count)
            break;
        cap *= 2.0;
    }
    std::sort(values.begin(), values.end());
    values.resize(count);
    return values;
}

CaseResult run_case(const OracleCase& oracle, double tol_override)
{
    CaseResult result;
    result.name = oracle.name;
    result.warnings = oracle.warnings;
    const double tol = tol_override > 0.0 ? tol_override : oracle.tol;
    try {
        double worst = 0.0;
        for (std::size_t j = 0; j < oracle.expected.size(); ++j) {
            const double lam = sturm::eigenvalue(oracle.problem, static_cast<int>(j) + 1);
            result.computed.push_back(lam);
            worst = std::max(worst,
                             std::abs(lam - oracle.expected[j]) / std::abs(oracle.expected[j]));
        }
        result.max_rel_error = worst;
        result.passed = worst <= tol;
    } catch (const std::exception& e) {
        result.error = e.what();
        result.passed = false;
    }
    return result;
}

bool Report::all_passed() const
{
    if (cases.empty())
        return false;
    return std::all_of(cases.begin(), cases.end(),
                       [](const CaseResult& c) { return c.passed; });
}

Report run_all(double tol_override, const std::string& only_case)
{
    Report report;
    for (const auto& oracle : {circle_case(), sphere2_case(), torus_case()}) {
        if (!only_case.empty() && oracle.name != only_case)
            continue;
        report.cases.push_back(run_case(oracle, tol_override));
    }
    if (report.cases.empty())
        throw std::invalid_argument("run_all: no case named '" + only_case + "'");
    return report;
}

}  // namespace specbound::validate
