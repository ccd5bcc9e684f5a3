#pragma once

#include <utility>

namespace einsol {
namespace detail {

/// Entries of a packed symmetric rank-2 block for indices 0 <= i <= j < n.
constexpr int sym2_size(int n) { return n * (n + 1) / 2; }

/// Tetrahedral number: entries of a packed symmetric rank-3 block.
constexpr int tet(int m) { return m * (m + 1) * (m + 2) / 6; }

constexpr int sym2_index(int n, int i, int j) {
    // requires i <= j
    return i * n - i * (i - 1) / 2 + (j - i);
}

constexpr int sym3_index(int n, int i, int j, int k) {
    // requires i <= j <= k
    return tet(n) - tet(n - i) + sym2_index(n - i, j - i, k - i);
}

inline void sort2(int& a, int& b) {
    if (a > b) std::swap(a, b);
}

inline void sort3(int& a, int& b, int& c) {
    sort2(a, b);
    sort2(b, c);
    sort2(a, b);
}

} // namespace detail
} // namespace einsol
