#pragma once

#include <einsol/errors.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

namespace einsol {

/// Minimal dense routines for the tiny (n <= 4-ish) systems this library
/// meets: metric inversion (over plain numbers or jets), SPD validation, and
/// the least-squares normal equations of the field classifier.
namespace linalg {

template <class T>
T& at(std::vector<T>& m, int n, int i, int j) {
    return m[static_cast<size_t>(i * n + j)];
}

template <class T>
const T& at(const std::vector<T>& m, int n, int i, int j) {
    return m[static_cast<size_t>(i * n + j)];
}

/// Gauss-Jordan inverse with partial pivoting, templated so the same code
/// inverts a matrix of jets (pivot choice compares the value slots).
template <class T>
std::vector<T> invert(std::vector<T> a, int n) {
    std::vector<T> inv(static_cast<size_t>(n) * static_cast<size_t>(n), a[0] * 0.0);
    for (int i = 0; i < n; ++i) at(inv, n, i, i) = a[0] * 0.0 + 1.0;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(value_of(at(a, n, col, col)));
        for (int r = col + 1; r < n; ++r) {
            double cand = std::abs(value_of(at(a, n, r, col)));
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best == 0.0) throw GeometryError("singular matrix in inversion");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(at(a, n, pivot, j), at(a, n, col, j));
                std::swap(at(inv, n, pivot, j), at(inv, n, col, j));
            }
        T diag = at(a, n, col, col);
        for (int j = 0; j < n; ++j) {
            at(a, n, col, j) = at(a, n, col, j) / diag;
            at(inv, n, col, j) = at(inv, n, col, j) / diag;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            T factor = at(a, n, r, col);
            if (value_of(factor) == 0.0 && factor.order() == 0) continue;
            for (int j = 0; j < n; ++j) {
                at(a, n, r, j) = at(a, n, r, j) - factor * at(a, n, col, j);
                at(inv, n, r, j) = at(inv, n, r, j) - factor * at(inv, n, col, j);
            }
        }
    }
    return inv;
}

/// Double specialization (value_of/order games don't apply).
inline std::vector<double> invert(std::vector<double> a, int n) {
    std::vector<double> inv(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) at(inv, n, i, i) = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(at(a, n, col, col));
        for (int r = col + 1; r < n; ++r)
            if (std::abs(at(a, n, r, col)) > best) {
                best = std::abs(at(a, n, r, col));
                pivot = r;
            }
        if (best == 0.0) throw GeometryError("singular matrix in inversion");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(at(a, n, pivot, j), at(a, n, col, j));
                std::swap(at(inv, n, pivot, j), at(inv, n, col, j));
            }
        double diag = at(a, n, col, col);
        for (int j = 0; j < n; ++j) {
            at(a, n, col, j) /= diag;
            at(inv, n, col, j) /= diag;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double factor = at(a, n, r, col);
            if (factor == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                at(a, n, r, j) -= factor * at(a, n, col, j);
                at(inv, n, r, j) -= factor * at(inv, n, col, j);
            }
        }
    }
    return inv;
}

/// Determinant via LU with partial pivoting.
inline double determinant(std::vector<double> a, int n) {
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(at(a, n, r, col)) > std::abs(at(a, n, pivot, col))) pivot = r;
        if (at(a, n, pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(at(a, n, pivot, j), at(a, n, col, j));
            det = -det;
        }
        det *= at(a, n, col, col);
        for (int r = col + 1; r < n; ++r) {
            double factor = at(a, n, r, col) / at(a, n, col, col);
            for (int j = col; j < n; ++j) at(a, n, r, j) -= factor * at(a, n, col, j);
        }
    }
    return det;
}

/// Cholesky success == symmetric positive definite.
inline bool is_spd(const std::vector<double>& m, int n) {
    std::vector<double> l(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = at(m, n, i, j);
            for (int k = 0; k < j; ++k) s -= at(l, n, i, k) * at(l, n, j, k);
            if (i == j) {
                if (!(s > 0.0) || !std::isfinite(s)) return false;
                at(l, n, i, i) = std::sqrt(s);
            } else {
                at(l, n, i, j) = s / at(l, n, j, j);
            }
        }
    }
    return true;
}

/// Solve A x = b by Gaussian elimination with partial pivoting (A square).
inline std::vector<double> solve(std::vector<double> a, std::vector<double> b, int n) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(at(a, n, r, col)) > std::abs(at(a, n, pivot, col))) pivot = r;
        if (at(a, n, pivot, col) == 0.0) throw GeometryError("singular linear system");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(at(a, n, pivot, j), at(a, n, col, j));
            std::swap(b[static_cast<size_t>(pivot)], b[static_cast<size_t>(col)]);
        }
        for (int r = col + 1; r < n; ++r) {
            double factor = at(a, n, r, col) / at(a, n, col, col);
            for (int j = col; j < n; ++j) at(a, n, r, j) -= factor * at(a, n, col, j);
            b[static_cast<size_t>(r)] -= factor * b[static_cast<size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= at(a, n, i, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] = s / at(a, n, i, i);
    }
    return x;
}

} // namespace linalg

} // namespace einsol
