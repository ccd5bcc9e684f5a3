#pragma once

#include <einsol/manifold.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace einsol {

/// Axis-aligned sampling box: one [lo, hi] interval per coordinate.
using SampleBox = std::vector<std::array<double, 2>>;

struct CatalogueEntry {
    std::string name;
    std::string description;
    std::string document; // manifold-format source text
    SampleBox box;        // default sampling region, inside the chart domain
};

enum class SampleStrategy { UniformRandom, Grid };

inline std::optional<SampleStrategy> strategy_from_string(std::string_view s) {
    if (s == "uniform_random") return SampleStrategy::UniformRandom;
    if (s == "grid") return SampleStrategy::Grid;
    return std::nullopt;
}

inline const char* to_string(SampleStrategy s) {
    return s == SampleStrategy::UniformRandom ? "uniform_random" : "grid";
}

inline const std::vector<CatalogueEntry>& catalogue() {
    static const std::vector<CatalogueEntry> entries = [] {
        std::vector<CatalogueEntry> v;

        v.push_back({"hyperbolic_halfspace",
                     "Hyperbolic upper half-space H^3 with V = d/dz; gradient soliton with "
                     "lambda = 1 - 1/z and potential f = -1/z.",
                     "dim = 3\n"
                     "coords = x y z\n"
                     "domain z > 0\n"
                     "g[1][1] = 1/z^2\n"
                     "g[2][2] = 1/z^2\n"
                     "g[3][3] = 1/z^2\n"
                     "V[3] = 1\n"
                     "lambda = 1 - 1/z\n"
                     "f = -1/z\n"
                     "a = -1/z\n",
                     {{{-1.0, 1.0}, {-1.0, 1.0}, {0.5, 4.0}}}});

        v.push_back({"exp_warped",
                     "Exponentially warped product metric diag(e^{2z}, e^{2z}, 1) with "
                     "V = e^z d/dz; gradient soliton with lambda = e^z + 1 and f = e^z.",
                     "dim = 3\n"
                     "coords = x y z\n"
                     "g[1][1] = exp(2*z)\n"
                     "g[2][2] = exp(2*z)\n"
                     "g[3][3] = 1\n"
                     "V[3] = exp(z)\n"
                     "lambda = exp(z) + 1\n"
                     "f = exp(z)\n"
                     "a = exp(z)\n",
                     {{{-1.0, 1.0}, {-1.0, 1.0}, {0.1, 2.0}}}});

        v.push_back({"euclidean3",
                     "Flat Euclidean 3-space with the zero field: curvature-engine control "
                     "case; the classifier's normal equations are rank-deficient here.",
                     "dim = 3\n"
                     "coords = x y z\n"
                     "g[1][1] = 1\n"
                     "g[2][2] = 1\n"
                     "g[3][3] = 1\n"
                     "V[1] = 0\n"
                     "lambda = 0\n",
                     {{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}}});

        v.push_back({"euclidean3_position_field",
                     "Flat Euclidean 3-space with the position field V = (x, y, z): "
                     "concircular with constant a = 1, Ricci-flat, lambda = 1.",
                     "dim = 3\n"
                     "coords = x y z\n"
                     "g[1][1] = 1\n"
                     "g[2][2] = 1\n"
                     "g[3][3] = 1\n"
                     "V[1] = x\n"
                     "V[2] = y\n"
                     "V[3] = z\n"
                     "lambda = 1\n"
                     "f = (x^2 + y^2 + z^2)/2\n"
                     "a = 1\n",
                     {{{0.25, 2.25}, {0.25, 2.25}, {0.25, 2.25}}}});

        v.push_back({"euclidean3_rotation_field",
                     "Flat Euclidean 3-space with the Killing rotation field V = (-y, x, 0): "
                     "solenoidal, not gradient-type, not torse-forming; soliton with lambda = 0. "
                     "The box keeps clear of the z-axis where V vanishes.",
                     "dim = 3\n"
                     "coords = x y z\n"
                     "g[1][1] = 1\n"
                     "g[2][2] = 1\n"
                     "g[3][3] = 1\n"
                     "V[1] = -y\n"
                     "V[2] = x\n"
                     "lambda = 0\n",
                     {{{0.5, 2.0}, {0.5, 2.0}, {-1.0, 1.0}}}});

        v.push_back({"sphere2",
                     "Unit 2-sphere in spherical coordinates (polar angle u, azimuth p) with "
                     "the Killing field V = d/dp; scal = 2, soliton with lambda = 0. The box "
                     "keeps the polar angle in [0.1, pi - 0.1] away from chart singularities.",
                     "dim = 2\n"
                     "coords = u p\n"
                     "domain sin(u) > 0\n"
                     "g[1][1] = 1\n"
                     "g[2][2] = sin(u)^2\n"
                     "V[2] = 1\n"
                     "lambda = 0\n",
                     {{{0.1, 3.041592653589793}, {0.0, 6.283185307179586}}}});

        return v;
    }();
    return entries;
}

inline const CatalogueEntry* find_entry(std::string_view name) {
    for (const CatalogueEntry& e : catalogue())
        if (e.name == name) return &e;
    return nullptr;
}

inline ManifoldSpec get_manifold(std::string_view name) {
    const CatalogueEntry* e = find_entry(name);
    if (e == nullptr) throw ParseError("unknown catalogue manifold: " + std::string(name));
    return parse_manifold(e->document, e->name);
}

/// Default sampling region for manifolds loaded from files: the unit cube
/// [-1, 1]^n, filtered against the chart domain.
inline SampleBox default_box(const ManifoldSpec& spec) {
    return SampleBox(static_cast<size_t>(spec.chart.dim), {-1.0, 1.0});
}

namespace detail {

/// splitmix64: tiny, seedable, and identical on every platform — sampled
/// points must be bit-reproducible across runs and machines.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in the open interval (0, 1): never lands on a box face.
    double next01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
};

/// Smallest m with m^n >= count.
inline int grid_side(int count, int n) {
    int m = 1;
    auto pow_ge = [&](int side) {
        long long p = 1;
        for (int i = 0; i < n; ++i) {
            p *= side;
            if (p >= count) return true;
        }
        return p >= count;
    };
    while (!pow_ge(m)) ++m;
    return m;
}

} // namespace detail

/// Draw `count` points inside `box`, keeping only points satisfying the chart
/// domain. uniform_random uses splitmix64 streams (coordinates drawn in axis
/// order); grid uses cell centers (i+0.5)/m per axis in lexicographic order
/// with the first axis most significant. Both are fully deterministic.
inline std::vector<std::vector<double>> sample_points(const ManifoldSpec& spec, const SampleBox& box,
                                                      int count, std::uint64_t seed,
                                                      SampleStrategy strategy) {
    const int n = spec.chart.dim;
    if (static_cast<int>(box.size()) != n)
        throw GeometryError("sampling box dimension does not match chart");
    if (count < 1) throw GeometryError("sample count must be positive");

    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<size_t>(count));

    if (strategy == SampleStrategy::UniformRandom) {
        detail::SplitMix64 rng(seed);
        const long long max_attempts = 10000LL * static_cast<long long>(count);
        long long attempts = 0;
        while (static_cast<int>(pts.size()) < count) {
            if (++attempts > max_attempts)
                throw GeometryError("sampling could not find enough points inside the chart domain");
            std::vector<double> x(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) {
                const auto& [lo, hi] = box[static_cast<size_t>(i)];
                x[static_cast<size_t>(i)] = lo + rng.next01() * (hi - lo);
            }
            if (in_domain(spec, x)) pts.push_back(std::move(x));
        }
        return pts;
    }

    const int m = detail::grid_side(count, n);
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    for (long long flat = 0; flat < total && static_cast<int>(pts.size()) < count; ++flat) {
        std::vector<double> x(static_cast<size_t>(n));
        long long rest = flat;
        for (int i = n - 1; i >= 0; --i) {
            const int digit = static_cast<int>(rest % m);
            rest /= m;
            const auto& [lo, hi] = box[static_cast<size_t>(i)];
            x[static_cast<size_t>(i)] = lo + (static_cast<double>(digit) + 0.5) / static_cast<double>(m) * (hi - lo);
        }
        if (in_domain(spec, x)) pts.push_back(std::move(x));
    }
    if (static_cast<int>(pts.size()) < count)
        throw GeometryError("grid sampling produced too few points inside the chart domain");
    return pts;
}

inline std::vector<std::vector<double>> sample_points(const CatalogueEntry& entry, int count,
                                                      std::uint64_t seed, SampleStrategy strategy) {
    ManifoldSpec spec = parse_manifold(entry.document, entry.name);
    return sample_points(spec, entry.box, count, seed, strategy);
}

} // namespace einsol
