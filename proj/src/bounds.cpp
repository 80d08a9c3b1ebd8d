#include "specbound/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "specbound/numerics.hpp"

namespace specbound::bounds {

int xi(int k)
{
    if (k < 1)
        throw std::invalid_argument("xi: k must be >= 1");
    return (k + 2) / 2;
}

sturm::SLProblem omega_problem(int i, const weights::WeightSystem& ws)
{
    if (i != 1 && i != 2)
        throw std::invalid_argument("omega_problem: i must be 1 or 2");
    sturm::SLProblem prob;
    prob.T = ws.horizon();
    prob.p = [ws](double tau) { return ws.p(tau); };
    prob.w = i == 1 ? prob.p : [ws](double tau) { return ws.w2(tau); };
    prob.label = std::string("omega") + (i == 1 ? "1" : "2") + "(" + ws.record() + ")";
    return prob;
}

double lambda1_bound(const weights::GeometryParams& params)
{
    const weights::WeightSystem ws(params);
    return sturm::eigenvalue(omega_problem(1, ws), 1);
}

double lambdak_bound(const weights::GeometryParams& params, int k)
{
    const weights::WeightSystem ws(params);
    return sturm::eigenvalue(omega_problem(2, ws), xi(k));
}

double buser_curve(double h, int n, double delta)
{
    return 2.0 * delta * (n - 1) * h + 10.0 * h * h;
}

double cheeger_lower(double h)
{
    return 0.25 * h * h;
}

double asymptotic_constant(const weights::WeightSystem& ws)
{
    const double T = ws.horizon();
    // tau = T - sigma^2 flattens the sqrt(T - tau) behaviour of the integrand
    // where w2 vanishes.
    const auto integrand = [&](double sigma) {
        const double tau = T - sigma * sigma;
        return 2.0 * sigma * std::sqrt(ws.w2(tau) / ws.p(tau));
    };
    const double integral = num::integrate(integrand, 0.0, std::sqrt(T),
                                           num::QuadOptions{1e-12, 1e-9, 4096});
    return std::numbers::pi * std::numbers::pi / (integral * integral);
}

BoundReport bound_report(const weights::GeometryParams& params, const std::vector<int>& k_list)
{
    BoundReport report;
    report.params = params;
    const weights::WeightSystem ws(params);
    report.upsilon = ws.upsilon();
    report.T = ws.horizon();

    const auto om1 = omega_problem(1, ws);
    const auto om2 = omega_problem(2, ws);
    report.lambda1_omega1 = sturm::eigenvalue(om1, 1);

    int max_j = 1;
    for (int k : k_list)
        max_j = std::max(max_j, xi(k));
    report.lambda_omega2.reserve(max_j);
    for (int j = 1; j <= max_j; ++j)
        report.lambda_omega2.emplace_back(j, sturm::eigenvalue(om2, j));
    for (int k : k_list)
        report.xi_map.push_back({k, xi(k), report.lambda_omega2[xi(k) - 1].second});

    report.buser = buser_curve(params.h, params.n, params.delta);
    report.cheeger_lower = bounds::cheeger_lower(params.h);
    report.asymptotic_c = asymptotic_constant(ws);
    return report;
}

std::vector<BoundReport> sweep(const weights::GeometryParams& base,
                               const std::vector<double>& h_grid,
                               const std::vector<int>& k_list, int threads)
{
    std::vector<BoundReport> rows(h_grid.size());
    if (rows.empty())
        throw std::invalid_argument("sweep: empty h grid");

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < h_grid.size();) {
            weights::GeometryParams gp = base;
            gp.h = h_grid[i];
            try {
                rows[i] = bound_report(gp, k_list);
            } catch (const std::exception& e) {
                rows[i].params = gp;
                rows[i].error = e.what();
            }
        }
    };

    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp<int>(threads, 1, static_cast<int>(h_grid.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    return rows;
}

std::vector<double> h_grid(double min, double max, int count, bool log_spacing)
{
    if (!(min > 0.0) || !(max > min) || count < 1)
        throw std::invalid_argument("h_grid: need 0 < min < max and count >= 1");
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = min;
        return grid;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        grid[i] = log_spacing ? min * std::pow(max / min, t) : min + t * (max - min);
    }
    return grid;
}

}  // namespace specbound::bounds
