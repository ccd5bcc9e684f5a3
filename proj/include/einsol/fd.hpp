#pragma once

#include <einsol/expr.hpp>
#include <einsol/jet.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace einsol {

/// Central-difference approximations of the same partials eval_jet produces.
/// Step per coordinate: h_i = eps^(1/(order+2)) * max(1, |x_i|). Meant for
/// cross-validation in tests, not production evaluation.
namespace fd {

using ScalarFn = std::function<double(std::span<const double>)>;

inline std::vector<double> steps(std::span<const double> x, int order) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = std::pow(eps, 1.0 / static_cast<double>(order + 2));
    std::vector<double> h(x.size());
    for (size_t i = 0; i < x.size(); ++i) h[i] = scale * std::max(1.0, std::abs(x[i]));
    return h;
}

namespace detail {

/// Evaluate f at x shifted by s1*h[i1] and (optionally) s2*h[i2], s3*h[i3].
inline double shifted(const ScalarFn& f, std::span<const double> x, std::span<const double> h,
                      int i1, double s1, int i2 = -1, double s2 = 0, int i3 = -1, double s3 = 0) {
    std::vector<double> y(x.begin(), x.end());
    y[static_cast<size_t>(i1)] += s1 * h[static_cast<size_t>(i1)];
    if (i2 >= 0) y[static_cast<size_t>(i2)] += s2 * h[static_cast<size_t>(i2)];
    if (i3 >= 0) y[static_cast<size_t>(i3)] += s3 * h[static_cast<size_t>(i3)];
    return f(y);
}

} // namespace detail

inline double d1(const ScalarFn& f, std::span<const double> x, int i) {
    auto h = steps(x, 1);
    const double hi = h[static_cast<size_t>(i)];
    return (detail::shifted(f, x, h, i, +1) - detail::shifted(f, x, h, i, -1)) / (2.0 * hi);
}

inline double d2(const ScalarFn& f, std::span<const double> x, int i, int j) {
    auto h = steps(x, 2);
    const double hi = h[static_cast<size_t>(i)], hj = h[static_cast<size_t>(j)];
    if (i == j) {
        double f0 = f(x);
        return (detail::shifted(f, x, h, i, +1) - 2.0 * f0 + detail::shifted(f, x, h, i, -1)) /
               (hi * hi);
    }
    return (detail::shifted(f, x, h, i, +1, j, +1) - detail::shifted(f, x, h, i, +1, j, -1) -
            detail::shifted(f, x, h, i, -1, j, +1) + detail::shifted(f, x, h, i, -1, j, -1)) /
           (4.0 * hi * hj);
}

inline double d3(const ScalarFn& f, std::span<const double> x, int i, int j, int k) {
    auto h = steps(x, 3);
    const double hi = h[static_cast<size_t>(i)], hj = h[static_cast<size_t>(j)],
                 hk = h[static_cast<size_t>(k)];
    if (i == j && j == k) {
        return (detail::shifted(f, x, h, i, +2) - 2.0 * detail::shifted(f, x, h, i, +1) +
                2.0 * detail::shifted(f, x, h, i, -1) - detail::shifted(f, x, h, i, -2)) /
               (2.0 * hi * hi * hi);
    }
    if (i == j || j == k || i == k) {
        // reduce to ∂_a² ∂_b with a the repeated index, b the remaining one
        int a, b;
        if (i == j) {
            a = i;
            b = k;
        } else if (j == k) {
            a = j;
            b = i;
        } else {
            a = i;
            b = j;
        }
        return (detail::shifted(f, x, h, a, +1, b, +1) - 2.0 * detail::shifted(f, x, h, b, +1) +
                detail::shifted(f, x, h, a, -1, b, +1) - detail::shifted(f, x, h, a, +1, b, -1) +
                2.0 * detail::shifted(f, x, h, b, -1) - detail::shifted(f, x, h, a, -1, b, -1)) /
               (2.0 * h[static_cast<size_t>(a)] * h[static_cast<size_t>(a)] * h[static_cast<size_t>(b)]);
    }
    double sum = 0.0;
    for (double si : {-1.0, 1.0})
        for (double sj : {-1.0, 1.0})
            for (double sk : {-1.0, 1.0})
                sum += si * sj * sk * detail::shifted(f, x, h, i, si, j, sj, k, sk);
    return sum / (8.0 * hi * hj * hk);
}

} // namespace fd

/// Finite-difference counterpart of eval_jet: fills a jet of the requested
/// order with central-difference estimates of every partial of `f` at `x`.
inline Jet fd_jet(const fd::ScalarFn& f, std::span<const double> x, int order) {
    const int n = static_cast<int>(x.size());
    Jet j = Jet::constant(n, order, f(x));
    if (order >= 1)
        for (int i = 0; i < n; ++i) j.d1(i) = fd::d1(f, x, i);
    if (order >= 2)
        for (int i = 0; i < n; ++i)
            for (int jj = i; jj < n; ++jj) j.d2(i, jj) = fd::d2(f, x, i, jj);
    if (order >= 3)
        for (int i = 0; i < n; ++i)
            for (int jj = i; jj < n; ++jj)
                for (int k = jj; k < n; ++k) j.d3(i, jj, k) = fd::d3(f, x, i, jj, k);
    return j;
}

/// Convenience overload: oracle for a parsed expression.
inline Jet fd_oracle(const ScalarExpr& expr, std::span<const double> x, const Chart& chart, int order) {
    fd::ScalarFn f = [&](std::span<const double> y) { return evaluate_value(expr, y, chart); };
    return fd_jet(f, x, order);
}

} // namespace einsol
