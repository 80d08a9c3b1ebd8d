// Scalar quadrature and root finding used throughout the library.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace specbound::num {

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_intervals = 4096;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Abscissae/weights are the QUADPACK dqk15 values (Fullerton, Bell Labs, 1981).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

// Returns {integral estimate, error estimate} for one panel.
template <class F>
std::pair<double, double> gauss_kronrod_15(F&& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * kKronrodWeights[7];
    double resg = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = hl * kKronrodNodes[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        resk += kKronrodWeights[j] * (f1 + f2);
        if (j % 2 == 1)
            resg += kGaussWeights[(j - 1) / 2] * (f1 + f2);
    }
    return {resk * hl, std::abs((resk - resg) * hl)};
}

}  // namespace detail

// Adaptive quadrature of f over [a, b]: worst-interval-first bisection of
// Gauss-Kronrod panels until the summed error estimate meets the tolerance.
template <class F>
double integrate(F&& f, double a, double b, const QuadOptions& opt = {})
{
    if (a == b)
        return 0.0;
    if (b < a)
        return -integrate(f, b, a, opt);

    auto [val, err] = detail::gauss_kronrod_15(f, a, b);
    if (err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(val)))
        return val;

    struct Piece {
        double a, b, val, err;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    std::priority_queue<Piece> pieces;
    pieces.push({a, b, val, err});
    double total_val = val;
    double total_err = err;
    int count = 1;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total_val)) &&
           count < opt.max_intervals) {
        const Piece worst = pieces.top();
        pieces.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto [v1, e1] = detail::gauss_kronrod_15(f, worst.a, mid);
        auto [v2, e2] = detail::gauss_kronrod_15(f, mid, worst.b);
        total_val += v1 + v2 - worst.val;
        total_err += e1 + e2 - worst.err;
        pieces.push({worst.a, mid, v1, e1});
        pieces.push({mid, worst.b, v2, e2});
        ++count;
    }
    return total_val;
}

struct RootOptions {
    double f_tol = 1e-12;
    double x_tol = 0.0;
    int max_iter = 200;
};

// Newton iteration safeguarded by a bracket [lo, hi]; any step that leaves the
// bracket (or fails to shrink it) is replaced by a bisection step. Requires
// f(lo) and f(hi) of opposite sign (either orientation).
template <class F, class DF>
double newton_bisect(F&& f, DF&& df, double lo, double hi, double flo, double fhi,
                     const RootOptions& opt = {})
{
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo > 0) == (fhi > 0))
        throw std::invalid_argument("newton_bisect: root not bracketed");

    double x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int it = 0; it < opt.max_iter; ++it) {
        if (std::abs(fx) <= opt.f_tol)
            return x;
        if ((fx > 0) == (fhi > 0)) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
        if (std::abs(hi - lo) <= opt.x_tol)
            return 0.5 * (lo + hi);
        const double d = df(x);
        double next = x - fx / d;
        if (!(next > lo && next < hi) || !std::isfinite(next))
            next = 0.5 * (lo + hi);
        x = next;
        fx = f(x);
    }
    return x;
}

// Plain bisection; used by tests as an independent scalar oracle.
template <class F>
double bisect(F&& f, double lo, double hi, double x_tol = 1e-13, int max_iter = 200)
{
    double flo = f(lo);
    if (flo == 0.0)
        return lo;
    double fhi = f(hi);
    if (fhi == 0.0)
        return hi;
    if ((flo > 0) == (fhi > 0))
        throw std::invalid_argument("bisect: root not bracketed");
    for (int it = 0; it < max_iter && hi - lo > x_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fm > 0) == (fhi > 0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace specbound::num
