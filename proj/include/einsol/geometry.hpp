#pragma once

#include <einsol/errors.hpp>
#include <einsol/jet.hpp>
#include <einsol/linalg.hpp>
#include <einsol/manifold.hpp>

#include <cassert>
#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

namespace einsol {

/// Pointwise metric data: the components of g and g^{-1} as jets (so every
/// partial derivative layer through `order` rides along), plus det g.
struct MetricData {
    int n = 0;
    int order = 0;
    std::vector<double> point;
    std::vector<Jet> g;     // n*n, row-major, symmetric
    std::vector<Jet> g_inv; // n*n
    double det_g = 0.0;

    const Jet& gg(int i, int j) const { return g[static_cast<size_t>(i * n + j)]; }
    Jet& gg(int i, int j) { return g[static_cast<size_t>(i * n + j)]; }
    const Jet& ginv(int i, int j) const { return g_inv[static_cast<size_t>(i * n + j)]; }

    double g_value(int i, int j) const { return gg(i, j).value(); }
    double ginv_value(int i, int j) const { return ginv(i, j).value(); }
    double dg(int k, int i, int j) const { return gg(i, j).d1(k); }
    double d2g(int k, int l, int i, int j) const { return gg(i, j).d2(k, l); }
    double d3g(int k, int l, int m, int i, int j) const { return gg(i, j).d3(k, l, m); }
};

/// Christoffel symbols of the Levi-Civita connection as jets; their order is
/// one below the metric order they were derived from.
struct ConnectionData {
    int n = 0;
    int order = 0;
    std::vector<double> point;
    std::vector<Jet> gamma; // n*n*n, [k][i][j] = Γ^k_ij

    const Jet& G(int k, int i, int j) const {
        return gamma[static_cast<size_t>((k * n + i) * n + j)];
    }
    Jet& G(int k, int i, int j) { return gamma[static_cast<size_t>((k * n + i) * n + j)]; }
};

enum class Slot { Upper, Lower };

/// Dense tensor of jets at a point with an explicit variance signature.
/// Component jets are homogeneous in order within one tensor.
struct TensorValue {
    int n = 0;
    std::vector<Slot> variance;
    std::vector<double> point;
    std::vector<Jet> comps;

    static TensorValue zeros(int n, std::vector<Slot> var, std::span<const double> pt, int jet_order) {
        TensorValue t;
        t.n = n;
        t.variance = std::move(var);
        t.point.assign(pt.begin(), pt.end());
        size_t count = 1;
        for (size_t r = 0; r < t.variance.size(); ++r) count *= static_cast<size_t>(n);
        t.comps.assign(count, Jet::constant(n, jet_order, 0.0));
        return t;
    }

    int rank() const { return static_cast<int>(variance.size()); }
    int jet_order() const { return comps.empty() ? 0 : comps[0].order(); }

    size_t flat(std::initializer_list<int> idx) const {
        assert(idx.size() == variance.size());
        size_t f = 0;
        for (int i : idx) f = f * static_cast<size_t>(n) + static_cast<size_t>(i);
        return f;
    }
    Jet& at(std::initializer_list<int> idx) { return comps[flat(idx)]; }
    const Jet& at(std::initializer_list<int> idx) const { return comps[flat(idx)]; }
    double value(std::initializer_list<int> idx) const { return comps[flat(idx)].value(); }
};

namespace detail {

inline Jet trunc(const Jet& j, int order) {
    return j.order() == order ? j : j.truncated(order);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Metric and connection
// ---------------------------------------------------------------------------

/// Evaluate the metric (and inverse) as jets of `order` at `x`. The point must
/// satisfy the chart domain strictly and the metric must be SPD there.
inline MetricData metric_data_at(const ManifoldSpec& spec, std::span<const double> x, int order) {
    const int n = spec.chart.dim;
    if (static_cast<int>(x.size()) != n) throw GeometryError("point dimension does not match chart");
    if (!in_domain(spec, x)) throw GeometryError("point violates a chart domain constraint");

    MetricData md;
    md.n = n;
    md.order = order;
    md.point.assign(x.begin(), x.end());
    md.g.assign(static_cast<size_t>(n) * static_cast<size_t>(n), Jet::constant(n, order, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Jet e = eval_jet(spec.metric_entry(i, j), x, spec.chart, order);
            md.gg(i, j) = e;
            if (i != j) md.gg(j, i) = e;
        }

    std::vector<double> gv(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gv[static_cast<size_t>(i * n + j)] = md.g_value(i, j);
    if (!linalg::is_spd(gv, n)) throw GeometryError("metric is not positive definite at the point");
    md.det_g = linalg::determinant(gv, n);
    if (std::abs(md.det_g) < 1e-12) throw GeometryError("metric is numerically singular at the point");

    md.g_inv = linalg::invert<Jet>(md.g, n);
    return md;
}

/// Γ^k_ij = ½ g^kl (∂_i g_jl + ∂_j g_il − ∂_l g_ij).
inline ConnectionData christoffel_at(const MetricData& md) {
    if (md.order < 1)
        throw GeometryError("insufficient jet order: Christoffel symbols need metric order >= 1");
    const int n = md.n;
    const int o = md.order - 1;
    ConnectionData conn;
    conn.n = n;
    conn.order = o;
    conn.point = md.point;
    conn.gamma.assign(static_cast<size_t>(n) * static_cast<size_t>(n) * static_cast<size_t>(n),
                      Jet::constant(n, o, 0.0));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Jet sum = Jet::constant(n, o, 0.0);
                for (int l = 0; l < n; ++l)
                    sum += detail::trunc(md.ginv(k, l), o) *
                           (md.gg(j, l).partial(i) + md.gg(i, l).partial(j) - md.gg(i, j).partial(l));
                conn.G(k, i, j) = 0.5 * sum;
                if (i != j) conn.G(k, j, i) = conn.G(k, i, j);
            }
    return conn;
}

// ---------------------------------------------------------------------------
// Curvature
// ---------------------------------------------------------------------------

/// R^l_kij = ∂_i Γ^l_jk − ∂_j Γ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik
/// (sign convention R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z).
inline TensorValue riemann_at(const MetricData& md, const ConnectionData& conn) {
    if (md.order < 2)
        throw GeometryError("insufficient jet order: curvature needs metric order >= 2");
    const int n = md.n;
    const int o = md.order - 2;
    TensorValue R = TensorValue::zeros(n, {Slot::Upper, Slot::Lower, Slot::Lower, Slot::Lower},
                                       md.point, o);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Jet r = conn.G(l, j, k).partial(i) - conn.G(l, i, k).partial(j);
                    for (int m = 0; m < n; ++m)
                        r += detail::trunc(conn.G(l, i, m), o) * detail::trunc(conn.G(m, j, k), o) -
                             detail::trunc(conn.G(l, j, m), o) * detail::trunc(conn.G(m, i, k), o);
                    R.at({l, k, i, j}) = r;
                }
    return R;
}

/// Ric_jk = R^i_jik (trace over the first slot).
inline TensorValue ricci_at(const MetricData& md, const ConnectionData& conn) {
    TensorValue R = riemann_at(md, conn);
    const int n = md.n;
    TensorValue ric = TensorValue::zeros(n, {Slot::Lower, Slot::Lower}, md.point, R.jet_order());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Jet s = Jet::constant(n, R.jet_order(), 0.0);
            for (int i = 0; i < n; ++i) s += R.at({i, j, i, k});
            ric.at({j, k}) = s;
        }
    return ric;
}

/// scal = g^jk Ric_jk.
inline Jet scalar_curvature_at(const MetricData& md, const TensorValue& ric) {
    const int n = md.n;
    const int o = ric.jet_order();
    Jet s = Jet::constant(n, o, 0.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) s += detail::trunc(md.ginv(j, k), o) * ric.at({j, k});
    return s;
}

// ---------------------------------------------------------------------------
// Vector-field and scalar-field operators
// ---------------------------------------------------------------------------

/// Components of V as jets of `order` (a (1,0) tensor).
inline TensorValue field_jets(const ManifoldSpec& spec, std::span<const double> x, int order) {
    const int n = spec.chart.dim;
    TensorValue V = TensorValue::zeros(n, {Slot::Upper}, x, order);
    for (int i = 0; i < n; ++i)
        V.at({i}) = eval_jet(spec.field[static_cast<size_t>(i)], x, spec.chart, order);
    return V;
}

/// (∇V)^i_j = ∂_j V^i + Γ^i_jk V^k.
inline TensorValue covariant_derivative_vector_at(const MetricData& md, const ConnectionData& conn,
                                                  const TensorValue& V) {
    const int n = md.n;
    const int o = std::min(V.jet_order() - 1, conn.order);
    if (o < 0) throw GeometryError("insufficient jet order: covariant derivative needs order >= 1");
    TensorValue nv = TensorValue::zeros(n, {Slot::Upper, Slot::Lower}, md.point, o);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet s = detail::trunc(V.at({i}).partial(j), o);
            for (int k = 0; k < n; ++k)
                s += detail::trunc(conn.G(i, j, k), o) * detail::trunc(V.at({k}), o);
            nv.at({i, j}) = s;
        }
    return nv;
}

/// (∇ω)_ij = (∇_i ω)_j = ∂_i ω_j − Γ^k_ij ω_k for a 1-form ω.
inline TensorValue covariant_derivative_oneform(const MetricData& md, const ConnectionData& conn,
                                                const TensorValue& omega) {
    const int n = md.n;
    const int o = std::min(omega.jet_order() - 1, conn.order);
    if (o < 0) throw GeometryError("insufficient jet order: covariant derivative needs order >= 1");
    TensorValue res = TensorValue::zeros(n, {Slot::Lower, Slot::Lower}, md.point, o);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet s = detail::trunc(omega.at({j}).partial(i), o);
            for (int k = 0; k < n; ++k)
                s -= detail::trunc(conn.G(k, i, j), o) * detail::trunc(omega.at({k}), o);
            res.at({i, j}) = s;
        }
    return res;
}

/// (£_V g)_ij = V^k ∂_k g_ij + g_kj ∂_i V^k + g_ik ∂_j V^k.
inline TensorValue lie_derivative_metric_at(const MetricData& md, const TensorValue& V) {
    const int n = md.n;
    const int o = std::min(md.order, V.jet_order()) - 1;
    if (o < 0) throw GeometryError("insufficient jet order: Lie derivative needs order >= 1");
    TensorValue lie = TensorValue::zeros(n, {Slot::Lower, Slot::Lower}, md.point, o);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet s = Jet::constant(n, o, 0.0);
            for (int k = 0; k < n; ++k)
                s += detail::trunc(V.at({k}), o) * md.gg(i, j).partial(k) +
                     detail::trunc(md.gg(k, j), o) * V.at({k}).partial(i) +
                     detail::trunc(md.gg(i, k), o) * V.at({k}).partial(j);
            lie.at({i, j}) = s;
        }
    return lie;
}

/// Lower the index of a vector: θ_j = g_ij X^i.
inline TensorValue lower_index(const MetricData& md, const TensorValue& X) {
    const int n = md.n;
    const int o = std::min(md.order, X.jet_order());
    TensorValue theta = TensorValue::zeros(n, {Slot::Lower}, md.point, o);
    for (int j = 0; j < n; ++j) {
        Jet s = Jet::constant(n, o, 0.0);
        for (int i = 0; i < n; ++i) s += detail::trunc(md.gg(i, j), o) * detail::trunc(X.at({i}), o);
        theta.at({j}) = s;
    }
    return theta;
}

/// Raise the index of a 1-form: ζ^i = g^ij ω_j.
inline TensorValue raise_index(const MetricData& md, const TensorValue& omega) {
    const int n = md.n;
    const int o = std::min(md.order, omega.jet_order());
    TensorValue zeta = TensorValue::zeros(n, {Slot::Upper}, md.point, o);
    for (int i = 0; i < n; ++i) {
        Jet s = Jet::constant(n, o, 0.0);
        for (int j = 0; j < n; ++j)
            s += detail::trunc(md.ginv(i, j), o) * detail::trunc(omega.at({j}), o);
        zeta.at({i}) = s;
    }
    return zeta;
}

struct GradHess {
    TensorValue grad;   // (1,0)
    TensorValue hess;   // (0,2)
    Jet laplacian;      // g^ij Hess_ij, same arithmetic path as the trace
};

/// grad^i = g^ij ∂_j h; Hess_ij = ∂_i∂_j h − Γ^k_ij ∂_k h; Δh = g^ij Hess_ij.
inline GradHess grad_hess_laplacian_at(const MetricData& md, const ConnectionData& conn, const Jet& h) {
    if (h.order() < 2) throw GeometryError("insufficient jet order: Hessian needs scalar order >= 2");
    const int n = md.n;
    const int og = std::min(h.order() - 1, md.order);
    const int oh = std::min(h.order() - 2, conn.order);

    GradHess out;
    out.grad = TensorValue::zeros(n, {Slot::Upper}, md.point, og);
    for (int i = 0; i < n; ++i) {
        Jet s = Jet::constant(n, og, 0.0);
        for (int j = 0; j < n; ++j)
            s += detail::trunc(md.ginv(i, j), og) * detail::trunc(h.partial(j), og);
        out.grad.at({i}) = s;
    }

    out.hess = TensorValue::zeros(n, {Slot::Lower, Slot::Lower}, md.point, oh);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Jet s = detail::trunc(h.partial(i).partial(j), oh);
            for (int k = 0; k < n; ++k)
                s -= detail::trunc(conn.G(k, i, j), oh) * detail::trunc(h.partial(k), oh);
            out.hess.at({i, j}) = s;
            if (i != j) out.hess.at({j, i}) = s;
        }

    Jet lap = Jet::constant(n, oh, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            lap += detail::trunc(md.ginv(i, j), oh) * out.hess.at({i, j});
    out.laplacian = lap;
    return out;
}

/// div V = ∂_i V^i + Γ^i_ik V^k = trace of ∇V.
inline Jet divergence_vector_at(const TensorValue& nablaV) {
    const int n = nablaV.n;
    Jet s = Jet::constant(n, nablaV.jet_order(), 0.0);
    for (int i = 0; i < n; ++i) s += nablaV.at({i, i});
    return s;
}

/// V(h) = V^i ∂_i h as a jet (order one below h, capped by V's order).
inline Jet directional_derivative(const TensorValue& V, const Jet& h) {
    if (h.order() < 1)
        throw GeometryError("insufficient jet order: directional derivative needs scalar order >= 1");
    const int n = V.n;
    const int o = std::min(h.order() - 1, V.jet_order());
    Jet s = Jet::constant(n, o, 0.0);
    for (int i = 0; i < n; ++i)
        s += detail::trunc(V.at({i}), o) * detail::trunc(h.partial(i), o);
    return s;
}

/// Full metric contraction of every slot pair: upper slots contract with g,
/// lower slots with g^{-1}. Returns |T|² as a plain number.
inline double tensor_norm_sq_at(const MetricData& md, const TensorValue& t) {
    const int n = md.n;
    const int rank = t.rank();
    const size_t count = t.comps.size();
    std::vector<int> idx(static_cast<size_t>(rank)), jdx(static_cast<size_t>(rank));
    double total = 0.0;
    for (size_t a = 0; a < count; ++a) {
        size_t ra = a;
        for (int r = rank - 1; r >= 0; --r) {
            idx[static_cast<size_t>(r)] = static_cast<int>(ra % static_cast<size_t>(n));
            ra /= static_cast<size_t>(n);
        }
        const double va = t.comps[a].value();
        if (va == 0.0) continue;
        for (size_t b = 0; b < count; ++b) {
            size_t rb = b;
            for (int r = rank - 1; r >= 0; --r) {
                jdx[static_cast<size_t>(r)] = static_cast<int>(rb % static_cast<size_t>(n));
                rb /= static_cast<size_t>(n);
            }
            double w = va * t.comps[b].value();
            if (w == 0.0) continue;
            for (int r = 0; r < rank; ++r) {
                const int ia = idx[static_cast<size_t>(r)], ib = jdx[static_cast<size_t>(r)];
                w *= (t.variance[static_cast<size_t>(r)] == Slot::Upper) ? md.g_value(ia, ib)
                                                                         : md.ginv_value(ia, ib);
            }
            total += w;
        }
    }
    return total;
}

/// (∇Ric)_kij = ∂_k Ric_ij − Γ^l_ki Ric_lj − Γ^l_kj Ric_il.
inline TensorValue nabla_ricci_at(const MetricData& md, const ConnectionData& conn,
                                  const TensorValue& ric) {
    if (ric.jet_order() < 1)
        throw GeometryError("insufficient jet order: nabla Ricci needs metric order >= 3");
    const int n = md.n;
    const int o = ric.jet_order() - 1;
    TensorValue res =
        TensorValue::zeros(n, {Slot::Lower, Slot::Lower, Slot::Lower}, md.point, o);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Jet s = ric.at({i, j}).partial(k);
                for (int l = 0; l < n; ++l)
                    s -= detail::trunc(conn.G(l, k, i), o) * detail::trunc(ric.at({l, j}), o) +
                         detail::trunc(conn.G(l, k, j), o) * detail::trunc(ric.at({i, l}), o);
                res.at({k, i, j}) = s;
            }
    return res;
}

/// Divergence of a symmetric (0,2) tensor: (div T)_j = g^ik (∇_i T)_kj.
inline TensorValue divergence_sym2_at(const MetricData& md, const ConnectionData& conn,
                                      const TensorValue& t) {
    if (t.jet_order() < 1)
        throw GeometryError("insufficient jet order: tensor divergence needs component order >= 1");
    const int n = md.n;
    const int o = std::min(t.jet_order() - 1, conn.order);
    TensorValue res = TensorValue::zeros(n, {Slot::Lower}, md.point, o);
    for (int j = 0; j < n; ++j) {
        Jet s = Jet::constant(n, o, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                Jet covar = detail::trunc(t.at({k, j}).partial(i), o);
                for (int l = 0; l < n; ++l)
                    covar -= detail::trunc(conn.G(l, i, k), o) * detail::trunc(t.at({l, j}), o) +
                             detail::trunc(conn.G(l, i, j), o) * detail::trunc(t.at({k, l}), o);
                s += detail::trunc(md.ginv(i, k), o) * covar;
            }
        res.at({j}) = s;
    }
    return res;
}

/// Ricci operator Q^i_j = g^ik Ric_kj (the (1,1) tensor with g(QX,Y) = Ric(X,Y)).
inline TensorValue ricci_operator_at(const MetricData& md, const TensorValue& ric) {
    const int n = md.n;
    const int o = ric.jet_order();
    TensorValue q = TensorValue::zeros(n, {Slot::Upper, Slot::Lower}, md.point, o);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet s = Jet::constant(n, o, 0.0);
            for (int k = 0; k < n; ++k)
                s += detail::trunc(md.ginv(i, k), o) * ric.at({k, j});
            q.at({i, j}) = s;
        }
    return q;
}

} // namespace einsol
