#pragma once

#include <einsol/errors.hpp>
#include <einsol/expr.hpp>
#include <einsol/indexing.hpp>

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace einsol {

/// Truncated multivariate Taylor expansion: the value of a scalar quantity at
/// a point together with its partial derivatives up to `order` (0..3) in `dim`
/// variables. Derivatives are stored raw (not factorial-normalized) in packed
/// symmetric blocks. Arithmetic propagates derivatives exactly, so an
/// expression evaluated on seeded jets yields machine-precision partials.
class Jet {
public:
    Jet() = default;

    static Jet constant(int dim, int order, double v) {
        Jet j(dim, order);
        j.data_[0] = v;
        return j;
    }

    /// Seed for the `i`-th coordinate: value v, first partial e_i, rest zero.
    static Jet variable(int dim, int order, int i, double v) {
        Jet j(dim, order);
        j.data_[0] = v;
        if (order >= 1) j.data_[static_cast<size_t>(1 + i)] = 1.0;
        return j;
    }

    int dim() const { return dim_; }
    int order() const { return order_; }

    double value() const { return data_[0]; }
    double& value() { return data_[0]; }

    double d1(int i) const {
        assert(order_ >= 1);
        return data_[static_cast<size_t>(1 + i)];
    }
    double& d1(int i) {
        assert(order_ >= 1);
        return data_[static_cast<size_t>(1 + i)];
    }

    double d2(int i, int j) const {
        assert(order_ >= 2);
        detail::sort2(i, j);
        return data_[static_cast<size_t>(off2_() + detail::sym2_index(dim_, i, j))];
    }
    double& d2(int i, int j) {
        assert(order_ >= 2);
        detail::sort2(i, j);
        return data_[static_cast<size_t>(off2_() + detail::sym2_index(dim_, i, j))];
    }

    double d3(int i, int j, int k) const {
        assert(order_ >= 3);
        detail::sort3(i, j, k);
        return data_[static_cast<size_t>(off3_() + detail::sym3_index(dim_, i, j, k))];
    }
    double& d3(int i, int j, int k) {
        assert(order_ >= 3);
        detail::sort3(i, j, k);
        return data_[static_cast<size_t>(off3_() + detail::sym3_index(dim_, i, j, k))];
    }

    /// Copy of this jet with derivative levels above `order` dropped.
    Jet truncated(int order) const {
        if (order > order_) throw EvalError("jet truncation cannot raise the order");
        if (order == order_) return *this;
        Jet r(dim_, order);
        r.value() = value();
        if (order >= 1)
            for (int i = 0; i < dim_; ++i) r.d1(i) = d1(i);
        if (order >= 2)
            for (int i = 0; i < dim_; ++i)
                for (int j = i; j < dim_; ++j) r.d2(i, j) = d2(i, j);
        return r;
    }

    /// The jet of the partial derivative with respect to coordinate `i`,
    /// known to one order less than this jet.
    Jet partial(int i) const {
        assert(order_ >= 1);
        Jet r(dim_, order_ - 1);
        r.value() = d1(i);
        if (order_ >= 2)
            for (int j = 0; j < dim_; ++j) r.d1(j) = d2(i, j);
        if (order_ >= 3)
            for (int j = 0; j < dim_; ++j)
                for (int k = j; k < dim_; ++k) r.d2(j, k) = d3(i, j, k);
        return r;
    }

    Jet operator-() const {
        Jet r = *this;
        for (double& v : r.data_) v = -v;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        check_compatible(a, b);
        Jet r = a;
        for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        check_compatible(a, b);
        Jet r = a;
        for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        check_compatible(a, b);
        const int n = a.dim_;
        Jet r(n, a.order_);
        r.value() = a.value() * b.value();
        if (a.order_ >= 1)
            for (int i = 0; i < n; ++i) r.d1(i) = a.d1(i) * b.value() + a.value() * b.d1(i);
        if (a.order_ >= 2)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    r.d2(i, j) = a.d2(i, j) * b.value() + a.d1(i) * b.d1(j) + a.d1(j) * b.d1(i) +
                                 a.value() * b.d2(i, j);
        if (a.order_ >= 3)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    for (int k = j; k < n; ++k)
                        r.d3(i, j, k) = a.d3(i, j, k) * b.value() + a.d2(i, j) * b.d1(k) +
                                        a.d2(i, k) * b.d1(j) + a.d2(j, k) * b.d1(i) +
                                        a.d1(i) * b.d2(j, k) + a.d1(j) * b.d2(i, k) +
                                        a.d1(k) * b.d2(i, j) + a.value() * b.d3(i, j, k);
        return r;
    }

    /// Division by back-substitution on the product rule: solving r*b = a
    /// level by level keeps the value slot exactly a.value()/b.value().
    friend Jet operator/(const Jet& a, const Jet& b) {
        check_compatible(a, b);
        if (b.value() == 0.0) throw EvalError("jet division by zero");
        const int n = a.dim_;
        const double inv = 1.0 / b.value();
        Jet r(n, a.order_);
        r.value() = a.value() / b.value(); // single rounding: matches plain evaluation bitwise
        if (a.order_ >= 1)
            for (int i = 0; i < n; ++i) r.d1(i) = (a.d1(i) - r.value() * b.d1(i)) * inv;
        if (a.order_ >= 2)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    r.d2(i, j) = (a.d2(i, j) - r.value() * b.d2(i, j) - r.d1(i) * b.d1(j) -
                                  r.d1(j) * b.d1(i)) *
                                 inv;
        if (a.order_ >= 3)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    for (int k = j; k < n; ++k)
                        r.d3(i, j, k) = (a.d3(i, j, k) - r.value() * b.d3(i, j, k) -
                                         r.d2(i, j) * b.d1(k) - r.d2(i, k) * b.d1(j) -
                                         r.d2(j, k) * b.d1(i) - r.d1(i) * b.d2(j, k) -
                                         r.d1(j) * b.d2(i, k) - r.d1(k) * b.d2(i, j)) *
                                        inv;
        return r;
    }

    friend Jet operator+(const Jet& a, double c) {
        Jet r = a;
        r.value() += c;
        return r;
    }
    friend Jet operator+(double c, const Jet& a) { return a + c; }
    friend Jet operator-(const Jet& a, double c) { return a + (-c); }
    friend Jet operator-(double c, const Jet& a) { return -a + c; }

    friend Jet operator*(const Jet& a, double c) {
        Jet r = a;
        for (double& v : r.data_) v *= c;
        return r;
    }
    friend Jet operator*(double c, const Jet& a) { return a * c; }

    friend Jet operator/(const Jet& a, double c) {
        if (c == 0.0) throw EvalError("jet division by zero");
        Jet r = a;
        for (double& v : r.data_) v /= c; // slotwise division, single rounding each
        return r;
    }
    friend Jet operator/(double c, const Jet& a) { return constant(a.dim_, a.order_, c) / a; }

    Jet& operator+=(const Jet& b) { return *this = *this + b; }
    Jet& operator-=(const Jet& b) { return *this = *this - b; }
    Jet& operator*=(const Jet& b) { return *this = *this * b; }
    Jet& operator/=(const Jet& b) { return *this = *this / b; }

    /// Chain rule for an outer univariate function with derivatives f0..f3 at
    /// this jet's value (higher unused entries may be zero).
    Jet compose(double f0, double f1, double f2, double f3) const {
        const Jet& u = *this;
        const int n = dim_;
        Jet r(n, order_);
        r.value() = f0;
        if (order_ >= 1)
            for (int i = 0; i < n; ++i) r.d1(i) = f1 * u.d1(i);
        if (order_ >= 2)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) r.d2(i, j) = f1 * u.d2(i, j) + f2 * u.d1(i) * u.d1(j);
        if (order_ >= 3)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    for (int k = j; k < n; ++k)
                        r.d3(i, j, k) = f1 * u.d3(i, j, k) +
                                        f2 * (u.d1(i) * u.d2(j, k) + u.d1(j) * u.d2(i, k) +
                                              u.d1(k) * u.d2(i, j)) +
                                        f3 * u.d1(i) * u.d1(j) * u.d1(k);
        return r;
    }

private:
    Jet(int dim, int order) : dim_(dim), order_(order), data_(static_cast<size_t>(flat_size(dim, order)), 0.0) {}

    static int flat_size(int dim, int order) {
        int s = 1;
        if (order >= 1) s += dim;
        if (order >= 2) s += detail::sym2_size(dim);
        if (order >= 3) s += detail::tet(dim);
        return s;
    }

    int off2_() const { return 1 + dim_; }
    int off3_() const { return 1 + dim_ + detail::sym2_size(dim_); }

    static void check_compatible(const Jet& a, const Jet& b) {
        if (a.dim_ != b.dim_ || a.order_ != b.order_)
            throw EvalError("jet arithmetic on mismatched dimension or order");
    }

    int dim_ = 0;
    int order_ = 0;
    std::vector<double> data_{0.0};
};

inline double value_of(const Jet& j) { return j.value(); }
inline int derivative_order_of(const Jet& j) { return j.order(); }

inline Jet exp(const Jet& u) {
    double e = std::exp(u.value());
    return u.compose(e, e, e, e);
}

inline Jet log(const Jet& u) {
    if (!(u.value() > 0.0)) throw EvalError("jet log of non-positive value");
    double v = u.value();
    return u.compose(std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

inline Jet sin(const Jet& u) {
    double s = std::sin(u.value()), c = std::cos(u.value());
    return u.compose(s, c, -s, -c);
}

inline Jet cos(const Jet& u) {
    double s = std::sin(u.value()), c = std::cos(u.value());
    return u.compose(c, -s, -c, s);
}

inline Jet tan(const Jet& u) {
    double t = std::tan(u.value());
    double sec2 = 1.0 + t * t;
    return u.compose(t, sec2, 2.0 * t * sec2, sec2 * (2.0 + 6.0 * t * t));
}

inline Jet sinh(const Jet& u) {
    double s = std::sinh(u.value()), c = std::cosh(u.value());
    return u.compose(s, c, s, c);
}

inline Jet cosh(const Jet& u) {
    double s = std::sinh(u.value()), c = std::cosh(u.value());
    return u.compose(c, s, c, s);
}

inline Jet sqrt(const Jet& u) {
    double v = u.value();
    if (v < 0.0 || (v == 0.0 && u.order() > 0)) throw EvalError("jet sqrt domain violation");
    double s = std::sqrt(v);
    if (u.order() == 0) return u.compose(s, 0.0, 0.0, 0.0);
    return u.compose(s, 0.5 / s, -0.25 / (s * s * s), 0.375 / (s * s * s * s * s));
}

namespace detail {

template <>
inline Jet make_constant_like<Jet>(const Jet& like, double v) {
    return Jet::constant(like.dim(), like.order(), v);
}

} // namespace detail

/// Evaluate an expression as a jet of the requested order at point `x`.
inline Jet eval_jet(const ScalarExpr& expr, std::span<const double> x, const Chart& chart, int order) {
    if (order < 0 || order > 3) throw EvalError("jet order must be between 0 and 3");
    std::vector<Jet> coords;
    coords.reserve(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        coords.push_back(Jet::variable(static_cast<int>(x.size()), order, static_cast<int>(i), x[i]));
    return evaluate<Jet>(expr, coords, chart);
}

} // namespace einsol
