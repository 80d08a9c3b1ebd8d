// Adaptive Dormand-Prince 5(4) integrator for small first-order systems.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace specbound::ode {

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 0.0;       // 0 = span / 100
    double min_step_scale = 1e-14;   // minimum step as a fraction of the span
    std::size_t max_steps = 4000000;
};

class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Embedded RK 5(4) pair of Dormand and Prince with FSAL, step rejection and
// standard error-per-step control. The right-hand side is a callable
// State f(double t, const State& y).
template <std::size_t N, class F>
class Integrator {
public:
    using State = std::array<double, N>;

    Integrator(F f, double t0, State y0, double span, Options opt = {})
        : f_(std::move(f)), opt_(opt), t_(t0), y_(y0)
    {
        span_ = std::abs(span);
        if (span_ == 0.0)
            span_ = 1.0;
        h_ = opt_.initial_step > 0.0 ? opt_.initial_step : span_ * 1e-2;
        k1_ = f_(t_, y_);
    }

    double time() const { return t_; }
    const State& state() const { return y_; }

    // Integrate forward until t_end (>= current time). May be called
    // repeatedly with increasing targets; the step size carries over.
    void advance_to(double t_end)
    {
        const double min_step = opt_.min_step_scale * span_;
        while (t_ < t_end) {
            if (++steps_ > opt_.max_steps)
                throw IntegrationError("ode: step budget exhausted at t=" + std::to_string(t_));
            double h = h_;
            bool clipped = false;
            if (t_ + h >= t_end) {
                h = t_end - t_;
                clipped = true;
            }

            State k2, k3, k4, k5, k6, k7, ynew, ytmp;
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y_[i] + h * (0.2 * k1_[i]);
            k2 = f_(t_ + 0.2 * h, ytmp);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y_[i] + h * (3.0 / 40 * k1_[i] + 9.0 / 40 * k2[i]);
            k3 = f_(t_ + 0.3 * h, ytmp);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y_[i] + h * (44.0 / 45 * k1_[i] - 56.0 / 15 * k2[i] + 32.0 / 9 * k3[i]);
            k4 = f_(t_ + 0.8 * h, ytmp);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y_[i] + h * (19372.0 / 6561 * k1_[i] - 25360.0 / 2187 * k2[i] +
                                       64448.0 / 6561 * k3[i] - 212.0 / 729 * k4[i]);
            k5 = f_(t_ + 8.0 / 9 * h, ytmp);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y_[i] + h * (9017.0 / 3168 * k1_[i] - 355.0 / 33 * k2[i] +
                                       46732.0 / 5247 * k3[i] + 49.0 / 176 * k4[i] -
                                       5103.0 / 18656 * k5[i]);
            k6 = f_(t_ + h, ytmp);
            for (std::size_t i = 0; i < N; ++i)
                ynew[i] = y_[i] + h * (35.0 / 384 * k1_[i] + 500.0 / 1113 * k3[i] +
                                       125.0 / 192 * k4[i] - 2187.0 / 6784 * k5[i] +
                                       11.0 / 84 * k6[i]);
            k7 = f_(t_ + h, ynew);

            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double e = h * (71.0 / 57600 * k1_[i] - 71.0 / 16695 * k3[i] +
                                      71.0 / 1920 * k4[i] - 17253.0 / 339200 * k5[i] +
                                      22.0 / 525 * k6[i] - 1.0 / 40 * k7[i]);
                const double sc =
                    opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y_[i]), std::abs(ynew[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / N);
            const double fac =
                err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);

            if (err <= 1.0) {
                t_ = clipped ? t_end : t_ + h;
                y_ = ynew;
                k1_ = k7;
                if (!clipped)
                    h_ = h * fac;
            } else {
                h_ = h * fac;
                if (h_ < min_step)
                    throw IntegrationError("ode: step underflow at t=" + std::to_string(t_));
            }
        }
    }

private:
    F f_;
    Options opt_;
    double t_;
    State y_;
    State k1_;
    double h_ = 0.0;
    double span_ = 1.0;
    std::size_t steps_ = 0;
};

// One-shot convenience wrapper.
template <std::size_t N, class F>
std::array<double, N> integrate(F&& f, double a, double b, std::array<double, N> y0,
                                const Options& opt = {})
{
    Integrator<N, F> integ(std::forward<F>(f), a, y0, b - a, opt);
    integ.advance_to(b);
    return integ.state();
}

}  // namespace specbound::ode
