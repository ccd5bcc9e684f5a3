#pragma once

#include <einsol/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace einsol {

enum class Verdict { Pass, Fail, Skip };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Skip: return "skip";
    }
    return "?";
}

/// Pass thresholds. Identities built from third-order metric data get a looser
/// threshold than the rest; both absorb conditioning only, never method error.
struct Tolerances {
    double identity = 1e-8;        // identities using at most second derivatives
    double identity_order3 = 1e-7; // identities touching third metric derivatives
    double classification = 1e-8;
    double lambda_agreement = 1e-9;

    static Tolerances with_base(double base) {
        Tolerances t;
        t.identity = base;
        t.identity_order3 = 10.0 * base;
        t.classification = base;
        t.lambda_agreement = base;
        return t;
    }
};

enum class IdentityId {
    BOCHNER,
    EQ43,
    HESS_DIV,
    Q_GRADF,
    PROP2,
    EQ7,
    RXY_V,
    EQ5_EQ6,
    EQ44,
    PROP4_I,
    PROP4_II,
    PROP4_III,
    PROP4_IV,
};

inline constexpr IdentityId kAllIdentities[] = {
    IdentityId::BOCHNER, IdentityId::EQ43,    IdentityId::HESS_DIV, IdentityId::Q_GRADF,
    IdentityId::PROP2,   IdentityId::EQ7,     IdentityId::RXY_V,    IdentityId::EQ5_EQ6,
    IdentityId::EQ44,    IdentityId::PROP4_I, IdentityId::PROP4_II, IdentityId::PROP4_III,
    IdentityId::PROP4_IV,
};

inline const char* to_string(IdentityId id) {
    switch (id) {
        case IdentityId::BOCHNER: return "BOCHNER";
        case IdentityId::EQ43: return "EQ43";
        case IdentityId::HESS_DIV: return "HESS_DIV";
        case IdentityId::Q_GRADF: return "Q_GRADF";
        case IdentityId::PROP2: return "PROP2";
        case IdentityId::EQ7: return "EQ7";
        case IdentityId::RXY_V: return "RXY_V";
        case IdentityId::EQ5_EQ6: return "EQ5_EQ6";
        case IdentityId::EQ44: return "EQ44";
        case IdentityId::PROP4_I: return "PROP4_I";
        case IdentityId::PROP4_II: return "PROP4_II";
        case IdentityId::PROP4_III: return "PROP4_III";
        case IdentityId::PROP4_IV: return "PROP4_IV";
    }
    return "?";
}

inline std::optional<IdentityId> identity_from_string(std::string_view s) {
    for (IdentityId id : kAllIdentities)
        if (s == to_string(id)) return id;
    return std::nullopt;
}

/// One identity evaluated at one point; left/right hold the flattened
/// components of both sides so reports stay audit-friendly.
struct IdentityReport {
    IdentityId id = IdentityId::BOCHNER;
    std::vector<double> point;
    std::vector<double> left;
    std::vector<double> right;
    double residual = 0.0;
    Verdict verdict = Verdict::Skip;
    std::string detail;
};

/// Pointwise least-squares decomposition of ∇V against a·I + ψ⊗V. The fitted
/// a and ψ are jets: solving the normal equations in jet arithmetic recovers
/// the derivatives of the fitted functions as well, which the curvature-side
/// identities need (da, ∇ψ).
struct TorseFormingFit {
    Jet a;
    std::vector<Jet> psi; // covariant components
    double residual = 0.0;
    double psi_norm = 0.0; // |ψ|_g
    bool is_torse_forming = false;
    bool is_concircular = false;
    bool is_gradient_dual_closed = false;
    bool is_solenoidal = false;
};

enum class LambdaSource { Declared, Theorem1, Trace };

inline const char* to_string(LambdaSource s) {
    switch (s) {
        case LambdaSource::Declared: return "declared";
        case LambdaSource::Theorem1: return "theorem1";
        case LambdaSource::Trace: return "trace";
    }
    return "?";
}

/// All λ candidates at a point plus the resolved one. Resolution order is
/// declared > theorem1 (gradient fields only) > trace; every computable
/// candidate is recorded so disagreements are exposed, never hidden.
struct LambdaInfo {
    LambdaSource source = LambdaSource::Trace;
    Jet resolved;
    std::optional<double> declared;
    std::optional<double> theorem1;
    std::optional<double> trace;
    std::optional<double> prop3;
    std::optional<double> solenoidal;
    double max_pairwise_deviation = 0.0;
};

// ---------------------------------------------------------------------------
// Residual helpers
// ---------------------------------------------------------------------------

inline double rel_residual(double l, double r) {
    return std::abs(l - r) / std::max({std::abs(l), std::abs(r), 1.0});
}

inline double frobenius(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

/// ‖L − R‖_F / max(‖L‖_F, ‖R‖_F, 1): the tensor analogue of rel_residual.
inline double rel_residual_span(std::span<const double> l, std::span<const double> r) {
    double num = 0.0;
    for (size_t i = 0; i < l.size(); ++i) {
        double d = l[i] - r[i];
        num += d * d;
    }
    return std::sqrt(num) / std::max({frobenius(l), frobenius(r), 1.0});
}

// ---------------------------------------------------------------------------
// PointState: everything the identity catalogue needs at one point
// ---------------------------------------------------------------------------

/// Fully evaluated pointwise state: metric order 3 and the field order 3, so
/// every downstream quantity (through ∇Ric and d(Δf)) falls out of jet
/// arithmetic with no hand-derived derivative formulas.
struct PointState {
    const ManifoldSpec* spec = nullptr;
    std::vector<double> x;
    int n = 0;
    Tolerances tol;

    MetricData md;         // order 3
    ConnectionData conn;   // order 2
    TensorValue riemann;   // (1,3), order 1
    TensorValue ric;       // (0,2), order 1
    Jet scal;              // order 1
    TensorValue nabla_ric; // (0,3), order 0

    TensorValue V;           // (1,0), order 3
    TensorValue theta;       // V♭, order 3
    TensorValue nabla_theta; // (0,2), order 2
    TensorValue nablaV;      // (1,1), order 2
    TensorValue lie;         // £_V g, (0,2), order 2
    Jet divV;                // order 2
    Jet vv;                  // |V|², order 3
    GradHess vv_gh;          // grad/Hess/Δ of |V|²
    Jet nablaV_normsq;       // |∇V|² as a jet, order 1

    TorseFormingFit fit;
    bool field_vanishes = false;  // |V|² ≤ 1e−14: the LS fit is rank-deficient
    bool torse_available = false; // (a, ψ) jets usable (declared or accepted fit)
    Jet a_jet;                    // order 2
    std::vector<Jet> psi_jet;     // order 2
    std::optional<TensorValue> nabla_psi; // (0,2), order 1, when torse data available
    std::optional<double> declared_fit_deviation; // |a_declared − a_fit| when both exist

    std::optional<Jet> f_jet; // order 3, when f declared
    std::optional<GradHess> f_gh;

    LambdaInfo lambda;

    double ric_vv() const {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += ric.value({i, j}) * V.value({i}) * V.value({j});
        return s;
    }

    double psi_V() const {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += psi_jet[static_cast<size_t>(i)].value() * V.value({i});
        return s;
    }

    /// V(a) from the a-jet (fitted or declared).
    double V_of_a() const {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += V.value({i}) * a_jet.d1(i);
        return s;
    }
};

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace detail {

inline TensorValue oneform_from_jets(int n, std::span<const double> pt, const std::vector<Jet>& comps) {
    TensorValue t = TensorValue::zeros(n, {Slot::Lower}, pt, comps[0].order());
    for (int i = 0; i < n; ++i) t.at({i}) = comps[static_cast<size_t>(i)];
    return t;
}

/// Relative antisymmetry defect of ∂_i ω_j − ∂_j ω_i for a 1-form given as
/// jets of order ≥ 1 (coordinate exterior derivative; no connection needed).
inline double closedness_defect(int n, const TensorValue& omega) {
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double dij = omega.at({j}).d1(i);
            scale = std::max(scale, std::abs(dij));
            if (i < j) worst = std::max(worst, std::abs(dij - omega.at({i}).d1(j)));
        }
    return worst / std::max(1.0, scale);
}

} // namespace detail

/// Least-squares fit of ∇V = a·I + ψ⊗V over the n² component equations.
/// Normal equations have size n+1 and are solved in jet arithmetic; they are
/// full-rank whenever V ≠ 0 at the point.
inline TorseFormingFit classify_field_core(const MetricData& md, const TensorValue& V,
                                           const TensorValue& theta, const TensorValue& nablaV,
                                           const Jet& divV, const Jet& vv, double nablaV_normsq_g,
                                           const Tolerances& tol) {
    const int n = md.n;
    if (vv.value() <= 1e-14)
        throw PreconditionError("vanishing potential field: |V|^2 <= 1e-14 at the point");

    const int o = nablaV.jet_order();
    const int m = n + 1;
    std::vector<Jet> A(static_cast<size_t>(m) * static_cast<size_t>(m), Jet::constant(n, o, 0.0));
    std::vector<Jet> b(static_cast<size_t>(m), Jet::constant(n, o, 0.0));

    Jet rho = Jet::constant(n, o, 0.0); // Σ_i (V^i)², plain component sum
    for (int i = 0; i < n; ++i) {
        Jet vi = detail::trunc(V.at({i}), o);
        rho += vi * vi;
    }
    A[0] = Jet::constant(n, o, static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
        Jet vk = detail::trunc(V.at({k}), o);
        A[static_cast<size_t>(k + 1)] = vk;                           // row 0, col k+1
        A[static_cast<size_t>((k + 1) * m)] = vk;                     // row k+1, col 0
        A[static_cast<size_t>((k + 1) * m + (k + 1))] = rho;          // diagonal
    }
    b[0] = detail::trunc(divV, o); // trace of ∇V
    for (int k = 0; k < n; ++k) {
        Jet s = Jet::constant(n, o, 0.0);
        for (int i = 0; i < n; ++i) s += nablaV.at({i, k}) * detail::trunc(V.at({i}), o);
        b[static_cast<size_t>(k + 1)] = s;
    }

    std::vector<Jet> Ainv = linalg::invert<Jet>(A, m);
    TorseFormingFit fit;
    std::vector<Jet> u(static_cast<size_t>(m), Jet::constant(n, o, 0.0));
    for (int r = 0; r < m; ++r) {
        Jet s = Jet::constant(n, o, 0.0);
        for (int c = 0; c < m; ++c)
            s += Ainv[static_cast<size_t>(r * m + c)] * b[static_cast<size_t>(c)];
        u[static_cast<size_t>(r)] = s;
    }
    fit.a = u[0];
    fit.psi.assign(u.begin() + 1, u.end());

    // residual = ‖∇V − fit‖_F / max(‖∇V‖_F, ‖fit‖_F, 1) on coordinate components
    std::vector<double> lhs, rhs;
    lhs.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    rhs.reserve(lhs.capacity());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            lhs.push_back(nablaV.value({i, j}));
            double fitted = (i == j ? fit.a.value() : 0.0) +
                            fit.psi[static_cast<size_t>(j)].value() * V.value({i});
            rhs.push_back(fitted);
        }
    fit.residual = rel_residual_span(lhs, rhs);

    double pn2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pn2 += md.ginv_value(i, j) * fit.psi[static_cast<size_t>(i)].value() *
                   fit.psi[static_cast<size_t>(j)].value();
    fit.psi_norm = std::sqrt(std::max(0.0, pn2));

    fit.is_torse_forming = fit.residual < tol.classification;
    fit.is_concircular = fit.is_torse_forming && fit.psi_norm < tol.classification;
    fit.is_gradient_dual_closed = detail::closedness_defect(n, theta) < tol.classification;
    fit.is_solenoidal =
        std::abs(divV.value()) < tol.classification * std::max(1.0, std::sqrt(std::max(0.0, nablaV_normsq_g)));
    return fit;
}

// ---------------------------------------------------------------------------
// Analysis entry point
// ---------------------------------------------------------------------------

inline Jet lambda_candidate_at(const PointState& st);
inline Jet lambda_theorem1_at(const PointState& st);
inline Jet prop3_lambda_at(const PointState& st);
inline Jet solenoidal_lambda_at(const PointState& st);

/// Evaluate the full pointwise state of `spec` at `x`.
inline PointState analyze_point(const ManifoldSpec& spec, std::span<const double> x,
                                const Tolerances& tol = {}) {
    PointState st;
    st.spec = &spec;
    st.x.assign(x.begin(), x.end());
    st.n = spec.chart.dim;
    st.tol = tol;
    const int n = st.n;

    st.md = metric_data_at(spec, x, 3);
    st.conn = christoffel_at(st.md);
    st.riemann = riemann_at(st.md, st.conn);
    st.ric = TensorValue::zeros(n, {Slot::Lower, Slot::Lower}, x, st.riemann.jet_order());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Jet s = Jet::constant(n, st.riemann.jet_order(), 0.0);
            for (int i = 0; i < n; ++i) s += st.riemann.at({i, j, i, k});
            st.ric.at({j, k}) = s;
        }
    st.scal = scalar_curvature_at(st.md, st.ric);
    st.nabla_ric = nabla_ricci_at(st.md, st.conn, st.ric);

    st.V = field_jets(spec, x, 3);
    st.theta = lower_index(st.md, st.V);
    st.nabla_theta = covariant_derivative_oneform(st.md, st.conn, st.theta);
    st.nablaV = covariant_derivative_vector_at(st.md, st.conn, st.V);
    st.lie = lie_derivative_metric_at(st.md, st.V);
    st.divV = divergence_vector_at(st.nablaV);

    st.vv = Jet::constant(n, 3, 0.0);
    for (int i = 0; i < n; ++i) st.vv += st.theta.at({i}) * st.V.at({i});
    st.vv_gh = grad_hess_laplacian_at(st.md, st.conn, st.vv);

    st.nablaV_normsq = Jet::constant(n, 1, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    st.nablaV_normsq += detail::trunc(st.md.gg(i, k), 1) *
                                        detail::trunc(st.md.ginv(j, l), 1) *
                                        detail::trunc(st.nablaV.at({i, j}), 1) *
                                        detail::trunc(st.nablaV.at({k, l}), 1);

    if (st.vv.value() <= 1e-14) {
        // Rank-deficient normal equations: no torse-forming decomposition, but
        // the fit-independent flags are still meaningful (V ≡ 0 locally is
        // both closed and divergence-free in every case that reaches here).
        st.field_vanishes = true;
        st.fit.a = Jet::constant(n, 2, 0.0);
        st.fit.psi.assign(static_cast<size_t>(n), Jet::constant(n, 2, 0.0));
        st.fit.is_gradient_dual_closed = detail::closedness_defect(n, st.theta) < tol.classification;
        st.fit.is_solenoidal = std::abs(st.divV.value()) <
                               tol.classification * std::max(1.0, std::sqrt(std::max(0.0, st.nablaV_normsq.value())));
    } else {
        st.fit = classify_field_core(st.md, st.V, st.theta, st.nablaV, st.divV, st.vv,
                                     st.nablaV_normsq.value(), tol);
    }

    // (a, ψ) jets: declared expressions win; an accepted fit is the fallback.
    if (spec.torse_a.has_value()) {
        st.a_jet = eval_jet(*spec.torse_a, x, spec.chart, 2);
        st.psi_jet.clear();
        for (int i = 0; i < n; ++i)
            st.psi_jet.push_back(eval_jet(spec.torse_psi[static_cast<size_t>(i)], x, spec.chart, 2));
        st.torse_available = true;
        if (st.fit.is_torse_forming)
            st.declared_fit_deviation = std::abs(st.a_jet.value() - st.fit.a.value());
    } else if (st.fit.is_torse_forming) {
        st.a_jet = st.fit.a;
        st.psi_jet = st.fit.psi;
        st.torse_available = true;
    }
    if (st.torse_available) {
        TensorValue psi_t = detail::oneform_from_jets(n, x, st.psi_jet);
        st.nabla_psi = covariant_derivative_oneform(st.md, st.conn, psi_t);
    }

    if (spec.potential.has_value()) {
        st.f_jet = eval_jet(*spec.potential, x, spec.chart, 3);
        st.f_gh = grad_hess_laplacian_at(st.md, st.conn, *st.f_jet);
    }

    // λ candidates and resolution
    st.lambda.trace = lambda_candidate_at(st).value();
    if (n >= 3 && st.fit.is_gradient_dual_closed && st.vv.value() > 1e-14)
        st.lambda.theorem1 = lambda_theorem1_at(st).value();
    if (spec.lambda.has_value()) {
        st.lambda.resolved = eval_jet(*spec.lambda, x, spec.chart, 2);
        st.lambda.declared = st.lambda.resolved.value();
        st.lambda.source = LambdaSource::Declared;
    } else if (st.lambda.theorem1.has_value()) {
        st.lambda.resolved = lambda_theorem1_at(st);
        st.lambda.source = LambdaSource::Theorem1;
    } else {
        st.lambda.resolved = lambda_candidate_at(st);
        st.lambda.source = LambdaSource::Trace;
    }
    if (n >= 3 && st.torse_available && st.fit.is_torse_forming) {
        bool codazzi_ok = true;
        if (st.fit.psi_norm >= tol.classification && st.nabla_psi.has_value()) {
            double worst = 0.0, scale = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    scale = std::max(scale, std::abs(st.nabla_psi->value({i, j})));
                    worst = std::max(worst,
                                     std::abs(st.nabla_psi->value({i, j}) - st.nabla_psi->value({j, i})));
                }
            codazzi_ok = worst / std::max(1.0, scale) < tol.identity;
        }
        if (codazzi_ok) st.lambda.prop3 = prop3_lambda_at(st).value();
    }
    if (n >= 3 && st.fit.is_solenoidal) st.lambda.solenoidal = solenoidal_lambda_at(st).value();

    std::vector<double> candidates;
    for (const auto& c : {st.lambda.declared, st.lambda.theorem1, st.lambda.trace, st.lambda.prop3})
        if (c.has_value()) candidates.push_back(*c);
    double dev = 0.0;
    for (size_t i = 0; i < candidates.size(); ++i)
        for (size_t j = i + 1; j < candidates.size(); ++j)
            dev = std::max(dev, std::abs(candidates[i] - candidates[j]));
    st.lambda.max_pairwise_deviation = dev;

    return st;
}

/// Classify the field at a point. Throws PreconditionError when |V|² ≤ 1e−14
/// (the least-squares system is rank-deficient there).
inline TorseFormingFit classify_field_at(const ManifoldSpec& spec, std::span<const double> x,
                                         const Tolerances& tol = {}) {
    PointState st = analyze_point(spec, x, tol);
    if (st.field_vanishes)
        throw PreconditionError("vanishing potential field: |V|^2 <= 1e-14 at the point");
    return st.fit;
}

// ---------------------------------------------------------------------------
// λ sources
// ---------------------------------------------------------------------------

namespace detail {

inline void require_n_ge_3(int n, const char* what) {
    if (n < 3)
        throw DimensionError(std::string(what) + " carries a 1/(n-2) factor and is undefined for n = 2");
}

} // namespace detail

/// Unique λ making the trace of the soliton equation hold:
/// n ≥ 3: λ = (div V − (n−2)·scal/2)/n; n = 2: λ = div(V)/2.
inline Jet lambda_candidate_at(const PointState& st) {
    Jet div1 = detail::trunc(st.divV, 1);
    if (st.n == 2) return 0.5 * div1;
    const double n = static_cast<double>(st.n);
    return (div1 - ((n - 2.0) / 2.0) * st.scal) / n;
}

/// λ = −(n−2)/(4|V|²)·[Δ(|V|²) − 2|∇V|² + V(|V|²) − 2V(div V)] + ½ div V,
/// valid for gradient-type V in dimension ≥ 3.
inline Jet lambda_theorem1_at(const PointState& st) {
    detail::require_n_ge_3(st.n, "Theorem-1 lambda");
    if (!st.fit.is_gradient_dual_closed)
        throw PreconditionError("V not gradient-type: dual 1-form is not closed at the point");
    if (st.vv.value() <= 1e-14)
        throw PreconditionError("vanishing potential field: |V|^2 <= 1e-14 at the point");
    const double n = static_cast<double>(st.n);
    Jet vv1 = detail::trunc(st.vv, 1);
    Jet div1 = detail::trunc(st.divV, 1);
    Jet v_vv = detail::trunc(directional_derivative(st.V, st.vv), 1);
    Jet v_div = directional_derivative(st.V, st.divV); // order 1
    Jet bracket = st.vv_gh.laplacian - 2.0 * st.nablaV_normsq + v_vv - 2.0 * v_div;
    return (-(n - 2.0) / 4.0) * (bracket / vv1) + 0.5 * div1;
}

/// λ = a + (n−1)(n−2)/(2|V|²)·V(a) − [(n−1)(n−2)a + (n−3)|V|²]·ψ(V)/(2|V|²),
/// for torse-forming V with Codazzi ψ (the ψ ≠ 0 case is gated by the caller).
inline Jet prop3_lambda_at(const PointState& st) {
    detail::require_n_ge_3(st.n, "Prop.-3 lambda");
    if (!st.torse_available || !st.fit.is_torse_forming)
        throw PreconditionError("V not torse-forming: least-squares fit rejected at the point");
    const double n = static_cast<double>(st.n);
    Jet a1 = detail::trunc(st.a_jet, 1);
    Jet vv1 = detail::trunc(st.vv, 1);
    Jet va = directional_derivative(st.V, st.a_jet); // order 1
    Jet psiv = Jet::constant(st.n, 1, 0.0);
    for (int i = 0; i < st.n; ++i)
        psiv += detail::trunc(st.psi_jet[static_cast<size_t>(i)], 1) * detail::trunc(st.V.at({i}), 1);
    Jet lam = a1 + ((n - 1.0) * (n - 2.0) / 2.0) * (va / vv1) -
              (((n - 1.0) * (n - 2.0)) * a1 + (n - 3.0) * vv1) * psiv / (2.0 * vv1);
    return lam;
}

/// λ = −(n−2)·scal/(2n), valid only for solenoidal V and n ≥ 3.
inline Jet solenoidal_lambda_at(const PointState& st) {
    detail::require_n_ge_3(st.n, "solenoidal lambda");
    if (!st.fit.is_solenoidal)
        throw PreconditionError("V not solenoidal: div V does not vanish at the point");
    const double n = static_cast<double>(st.n);
    return (-(n - 2.0) / (2.0 * n)) * st.scal;
}

// ---------------------------------------------------------------------------
// Soliton residuals
// ---------------------------------------------------------------------------

/// ½(£_V g) + Ric − (scal/2 + λ)g at value level; all-zero iff (V, λ) is an
/// almost Einstein soliton at the point.
inline TensorValue soliton_residual_at(const PointState& st, double lambda_value) {
    const int n = st.n;
    TensorValue r = TensorValue::zeros(n, {Slot::Lower, Slot::Lower}, st.x, 0);
    const double shift = 0.5 * st.scal.value() + lambda_value;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.at({i, j}) = Jet::constant(
                n, 0,
                0.5 * st.lie.value({i, j}) + st.ric.value({i, j}) - shift * st.md.g_value(i, j));
    return r;
}

inline TensorValue soliton_residual_at(const PointState& st) {
    return soliton_residual_at(st, st.lambda.resolved.value());
}

/// Relative size of the soliton residual: both sides of Eq-form compared.
inline double soliton_residual_rel(const PointState& st, double lambda_value) {
    const int n = st.n;
    std::vector<double> lhs, rhs;
    const double shift = 0.5 * st.scal.value() + lambda_value;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            lhs.push_back(0.5 * st.lie.value({i, j}) + st.ric.value({i, j}));
            rhs.push_back(shift * st.md.g_value(i, j));
        }
    return rel_residual_span(lhs, rhs);
}

inline double soliton_residual_rel(const PointState& st) {
    return soliton_residual_rel(st, st.lambda.resolved.value());
}

/// Gradient-soliton extras, defined when f is declared: the Hessian form of
/// the equation and the consistency grad f = V.
struct GradientForms {
    bool available = false;
    double hess_form_residual = 0.0; // Hess f + Ric vs (scal/2 + λ)g
    double grad_match_residual = 0.0; // grad f vs V
};

inline GradientForms gradient_forms_at(const PointState& st) {
    GradientForms out;
    if (!st.f_gh.has_value()) return out;
    out.available = true;
    const int n = st.n;
    std::vector<double> lhs, rhs, gl, gr;
    const double shift = 0.5 * st.scal.value() + st.lambda.resolved.value();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            lhs.push_back(st.f_gh->hess.value({i, j}) + st.ric.value({i, j}));
            rhs.push_back(shift * st.md.g_value(i, j));
        }
        gl.push_back(st.f_gh->grad.value({i}));
        gr.push_back(st.V.value({i}));
    }
    out.hess_form_residual = rel_residual_span(lhs, rhs);
    out.grad_match_residual = rel_residual_span(gl, gr);
    return out;
}

/// Remark clause for concircular fields: M is almost Einstein with associated
/// function μ = −(n−1)V(a)/|V|²; returns μ and the Ric − μg residual.
struct AlmostEinsteinCheck {
    double mu = 0.0;
    double residual = 0.0;
};

inline AlmostEinsteinCheck almost_einstein_function_at(const PointState& st) {
    if (!st.torse_available || !st.fit.is_concircular)
        throw PreconditionError("V not concircular: almost-Einstein function undefined");
    AlmostEinsteinCheck out;
    const double n = static_cast<double>(st.n);
    out.mu = -(n - 1.0) * st.V_of_a() / st.vv.value();
    std::vector<double> lhs, rhs;
    for (int i = 0; i < st.n; ++i)
        for (int j = 0; j < st.n; ++j) {
            lhs.push_back(st.ric.value({i, j}));
            rhs.push_back(out.mu * st.md.g_value(i, j));
        }
    out.residual = rel_residual_span(lhs, rhs);
    return out;
}

// ---------------------------------------------------------------------------
// Identity catalogue
// ---------------------------------------------------------------------------

namespace detail {

inline IdentityReport skip_report(IdentityId id, std::span<const double> x, std::string why) {
    IdentityReport rep;
    rep.id = id;
    rep.point.assign(x.begin(), x.end());
    rep.verdict = Verdict::Skip;
    rep.detail = std::move(why);
    return rep;
}

inline void finish_scalar(IdentityReport& rep, double l, double r, double tol) {
    rep.left = {l};
    rep.right = {r};
    rep.residual = rel_residual(l, r);
    rep.verdict = rep.residual < tol ? Verdict::Pass : Verdict::Fail;
}

inline void finish_span(IdentityReport& rep, std::vector<double> l, std::vector<double> r, double tol) {
    rep.residual = rel_residual_span(l, r);
    rep.left = std::move(l);
    rep.right = std::move(r);
    rep.verdict = rep.residual < tol ? Verdict::Pass : Verdict::Fail;
}

inline double codazzi_defect(const PointState& st) {
    if (!st.nabla_psi.has_value()) return 0.0;
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < st.n; ++i)
        for (int j = 0; j < st.n; ++j) {
            scale = std::max(scale, std::abs(st.nabla_psi->value({i, j})));
            if (i < j)
                worst = std::max(worst,
                                 std::abs(st.nabla_psi->value({i, j}) - st.nabla_psi->value({j, i})));
        }
    return worst / std::max(1.0, scale);
}

} // namespace detail

inline IdentityReport identity_residual_at(const PointState& st, IdentityId id);

/// Evaluate every identity (or a filtered subset) at the point.
inline std::vector<IdentityReport> identities_at(const PointState& st,
                                                 std::span<const IdentityId> which = {}) {
    std::vector<IdentityReport> out;
    if (which.empty()) {
        for (IdentityId id : kAllIdentities) out.push_back(identity_residual_at(st, id));
    } else {
        for (IdentityId id : which) out.push_back(identity_residual_at(st, id));
    }
    return out;
}

namespace detail {

inline IdentityReport identity_bochner(const PointState& st) {
    IdentityReport rep;
    rep.id = IdentityId::BOCHNER;
    rep.point = st.x;
    if (!st.fit.is_gradient_dual_closed)
        return skip_report(IdentityId::BOCHNER, st.x, "precondition not met: V not gradient-type");
    const double l = st.ric_vv();
    const double r = 0.5 * st.vv_gh.laplacian.value() - st.nablaV_normsq.value() -
                     directional_derivative(st.V, st.divV).value();
    finish_scalar(rep, l, r, st.tol.identity);
    return rep;
}

inline IdentityReport identity_eq43(const PointState& st) {
    require_n_ge_3(st.n, "Ric(V,V) trace identity");
    IdentityReport rep;
    rep.id = IdentityId::EQ43;
    rep.point = st.x;
    if (soliton_residual_rel(st) >= st.tol.identity)
        return skip_report(IdentityId::EQ43, st.x,
                           "precondition not met: soliton equation does not hold");
    const double n = static_cast<double>(st.n);
    const double lam = st.lambda.resolved.value();
    const double l = st.ric_vv();
    const double r = -0.5 * directional_derivative(st.V, st.vv).value() +
                     st.vv.value() * st.divV.value() / (n - 2.0) -
                     2.0 * st.vv.value() * lam / (n - 2.0);
    finish_scalar(rep, l, r, st.tol.identity);
    return rep;
}

inline IdentityReport identity_hess_div(const PointState& st) {
    IdentityReport rep;
    rep.id = IdentityId::HESS_DIV;
    rep.point = st.x;
    if (!st.f_gh.has_value())
        return skip_report(IdentityId::HESS_DIV, st.x, "precondition not met: potential f not declared");
    const int n = st.n;
    TensorValue div_hess = divergence_sym2_at(st.md, st.conn, st.f_gh->hess);
    std::vector<double> l, r;
    for (int j = 0; j < n; ++j) {
        l.push_back(div_hess.value({j}));
        double qf = 0.0; // (i_{Q(grad f)} g)_j = Ric(grad f, e_j)
        for (int k = 0; k < n; ++k) qf += st.ric.value({j, k}) * st.f_gh->grad.value({k});
        r.push_back(st.f_gh->laplacian.d1(j) + qf);
    }
    double residual = rel_residual_span(l, r);
    if (soliton_residual_rel(st) < st.tol.identity) {
        std::vector<double> dl;
        for (int j = 0; j < n; ++j) dl.push_back(st.lambda.resolved.d1(j));
        residual = std::max(residual, rel_residual_span(l, dl));
        rep.detail = "also checked div(Hess f) = d(lambda) (soliton form)";
    }
    rep.left = std::move(l);
    rep.right = std::move(r);
    rep.residual = residual;
    rep.verdict = residual < st.tol.identity_order3 ? Verdict::Pass : Verdict::Fail;
    return rep;
}

inline IdentityReport identity_q_gradf(const PointState& st) {
    require_n_ge_3(st.n, "Q(grad f) identity");
    IdentityReport rep;
    rep.id = IdentityId::Q_GRADF;
    rep.point = st.x;
    if (!st.fit.is_gradient_dual_closed)
        return skip_report(IdentityId::Q_GRADF, st.x, "precondition not met: V not gradient-type");
    if (soliton_residual_rel(st) >= st.tol.identity)
        return skip_report(IdentityId::Q_GRADF, st.x,
                           "precondition not met: soliton equation does not hold");
    const int n = st.n;
    const double nn = static_cast<double>(n);

    // grad f when declared; the field itself otherwise (V = grad f for
    // gradient solitons).
    std::vector<double> w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        w[static_cast<size_t>(i)] = st.f_gh ? st.f_gh->grad.value({i}) : st.V.value({i});

    std::vector<double> l(static_cast<size_t>(n), 0.0), r(static_cast<size_t>(n), 0.0);
    std::vector<double> grad_lam(static_cast<size_t>(n), 0.0), grad_scal(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double qi = 0.0;
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                qi += st.md.ginv_value(i, k) * st.ric.value({k, j}) * w[static_cast<size_t>(j)];
        l[static_cast<size_t>(i)] = qi;
        double gl = 0.0, gs = 0.0;
        for (int j = 0; j < n; ++j) {
            gl += st.md.ginv_value(i, j) * st.lambda.resolved.d1(j);
            gs += st.md.ginv_value(i, j) * st.scal.d1(j);
        }
        grad_lam[static_cast<size_t>(i)] = gl;
        grad_scal[static_cast<size_t>(i)] = gs;
        r[static_cast<size_t>(i)] = -(nn - 1.0) * gl - ((nn - 2.0) / 2.0) * gs;
    }
    double residual = rel_residual_span(l, r);

    // kernel clause: grad f ∈ ker Q forces grad λ = −(n−2)/(2(n−1))·grad scal
    double qnorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            qnorm += st.md.g_value(i, j) * l[static_cast<size_t>(i)] * l[static_cast<size_t>(j)];
    if (std::sqrt(std::max(0.0, qnorm)) < st.tol.identity) {
        std::vector<double> kr(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            kr[static_cast<size_t>(i)] = -(nn - 2.0) / (2.0 * (nn - 1.0)) * grad_scal[static_cast<size_t>(i)];
        residual = std::max(residual, rel_residual_span(grad_lam, kr));
        rep.detail = "kernel clause applied: grad f in ker(Q)";
    }
    rep.left = std::move(l);
    rep.right = std::move(r);
    rep.residual = residual;
    rep.verdict = residual < st.tol.identity_order3 ? Verdict::Pass : Verdict::Fail;
    return rep;
}

inline IdentityReport identity_prop2(const PointState& st) {
    require_n_ge_3(st.n, "Prop.-2 norm identity");
    IdentityReport rep;
    rep.id = IdentityId::PROP2;
    rep.point = st.x;
    if (!st.fit.is_gradient_dual_closed)
        return skip_report(IdentityId::PROP2, st.x, "precondition not met: V not gradient-type");
    if (!st.fit.is_solenoidal)
        return skip_report(IdentityId::PROP2, st.x, "precondition not met: V not solenoidal");
    if (soliton_residual_rel(st) >= st.tol.identity)
        return skip_report(IdentityId::PROP2, st.x,
                           "precondition not met: soliton equation does not hold");
    const double n = static_cast<double>(st.n);
    const double lam = st.lambda.resolved.value();
    const double l = st.nablaV_normsq.value();
    const double r =
        tensor_norm_sq_at(st.md, st.ric) - 4.0 * n * lam * lam / ((n - 2.0) * (n - 2.0));
    finish_scalar(rep, l, r, st.tol.identity);
    return rep;
}

inline IdentityReport identity_eq7(const PointState& st) {
    require_n_ge_3(st.n, "torse-forming Ricci identity");
    IdentityReport rep;
    rep.id = IdentityId::EQ7;
    rep.point = st.x;
    if (!st.torse_available || !st.fit.is_torse_forming)
        return skip_report(IdentityId::EQ7, st.x, "precondition not met: V not torse-forming");
    const int n = st.n;
    const double nn = static_cast<double>(n);
    const double a = st.a_jet.value();
    const double lam = st.lambda.resolved.value();
    const double psiv = st.psi_V();
    const double c = (psiv + 2.0 * (a - lam)) / (nn - 2.0);
    std::vector<double> l, r;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            l.push_back(st.ric.value({i, j}));
            const double pi = st.psi_jet[static_cast<size_t>(i)].value();
            const double pj = st.psi_jet[static_cast<size_t>(j)].value();
            r.push_back(c * st.md.g_value(i, j) -
                        0.5 * (pi * st.theta.value({j}) + st.theta.value({i}) * pj));
        }
    // scalar corollary rides along
    l.push_back(st.scal.value());
    r.push_back(2.0 / (nn - 2.0) * (psiv + nn * (a - lam)));
    finish_span(rep, std::move(l), std::move(r), st.tol.identity);
    rep.detail = "includes scal = 2/(n-2)[psi(V) + n(a-lambda)]";
    return rep;
}

inline IdentityReport identity_rxyv(const PointState& st) {
    IdentityReport rep;
    rep.id = IdentityId::RXY_V;
    rep.point = st.x;
    if (!st.torse_available || !st.fit.is_torse_forming)
        return skip_report(IdentityId::RXY_V, st.x, "precondition not met: V not torse-forming");
    const int n = st.n;
    const double a = st.a_jet.value();
    std::vector<double> l, r;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double ci = st.a_jet.d1(i) - a * st.psi_jet[static_cast<size_t>(i)].value();
            const double cj = st.a_jet.d1(j) - a * st.psi_jet[static_cast<size_t>(j)].value();
            const double codefect = st.nabla_psi->value({i, j}) - st.nabla_psi->value({j, i});
            for (int m = 0; m < n; ++m) {
                double lhs = 0.0;
                for (int k = 0; k < n; ++k) lhs += st.riemann.value({m, k, i, j}) * st.V.value({k});
                l.push_back(lhs);
                double rhs = (m == j ? ci : 0.0) - (m == i ? cj : 0.0) + codefect * st.V.value({m});
                r.push_back(rhs);
            }
        }
    finish_span(rep, std::move(l), std::move(r), st.tol.identity);
    return rep;
}

inline IdentityReport identity_eq5_eq6(const PointState& st) {
    require_n_ge_3(st.n, "Ric(V,V) torse-forming identities");
    IdentityReport rep;
    rep.id = IdentityId::EQ5_EQ6;
    rep.point = st.x;
    if (!st.torse_available || !st.fit.is_torse_forming)
        return skip_report(IdentityId::EQ5_EQ6, st.x, "precondition not met: V not torse-forming");
    const double nn = static_cast<double>(st.n);
    const double ricvv = st.ric_vv();
    const double psiv = st.psi_V();
    const bool codazzi = codazzi_defect(st) < st.tol.identity;
    const bool soliton = soliton_residual_rel(st) < st.tol.identity;
    std::vector<double> l, r;
    std::string which;
    if (codazzi) {
        l.push_back(ricvv);
        r.push_back((1.0 - nn) * (st.V_of_a() - st.a_jet.value() * psiv));
        which += "codazzi-form";
    }
    if (soliton) {
        const double lam = st.lambda.resolved.value();
        l.push_back(ricvv);
        r.push_back(st.vv.value() *
                    (2.0 * (st.a_jet.value() - lam) - (nn - 3.0) * psiv) / (nn - 2.0));
        which += which.empty() ? "soliton-form" : " + soliton-form";
    }
    if (l.empty())
        return skip_report(IdentityId::EQ5_EQ6, st.x,
                           "precondition not met: psi not Codazzi and soliton equation does not hold");
    finish_span(rep, std::move(l), std::move(r), st.tol.identity);
    rep.detail = "checked: " + which;
    return rep;
}

inline IdentityReport identity_eq44(const PointState& st) {
    require_n_ge_3(st.n, "covariant Ricci derivative identity");
    IdentityReport rep;
    rep.id = IdentityId::EQ44;
    rep.point = st.x;
    if (!st.torse_available || !st.fit.is_torse_forming)
        return skip_report(IdentityId::EQ44, st.x, "precondition not met: V not torse-forming");
    if (soliton_residual_rel(st) >= st.tol.identity)
        return skip_report(IdentityId::EQ44, st.x,
                           "precondition not met: soliton equation does not hold");
    const int n = st.n;
    const double nn = static_cast<double>(n);

    Jet psiv = Jet::constant(n, 1, 0.0); // ψ(V) as a jet, for its differential
    for (int i = 0; i < n; ++i)
        psiv += trunc(st.psi_jet[static_cast<size_t>(i)], 1) * trunc(st.V.at({i}), 1);

    std::vector<double> l, r;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                l.push_back(st.nabla_ric.value({k, i, j}));
                const double lead =
                    (psiv.d1(k) + 2.0 * (st.a_jet.d1(k) - st.lambda.resolved.d1(k))) / (nn - 2.0);
                const double pi = st.psi_jet[static_cast<size_t>(i)].value();
                const double pj = st.psi_jet[static_cast<size_t>(j)].value();
                const double corr =
                    0.5 * (pi * st.nabla_theta.value({k, j}) + pj * st.nabla_theta.value({k, i}) +
                           st.theta.value({i}) * st.nabla_psi->value({k, j}) +
                           st.theta.value({j}) * st.nabla_psi->value({k, i}));
                r.push_back(lead * st.md.g_value(i, j) - corr);
            }
    finish_span(rep, std::move(l), std::move(r), st.tol.identity_order3);
    return rep;
}

struct Prop4Sides {
    bool available = false;
    std::string skip_reason;
    double mu = 0.0;                       // λ − a
    std::vector<double> dmu;               // ∂_k(λ − a)
    std::vector<double> grad_mu;           // raised
    double nabla_ric_norm = 0.0;           // ‖∇Ric‖_F (coordinate Frobenius)
    double ric_norm = 0.0;
};

inline Prop4Sides prop4_sides(const PointState& st) {
    Prop4Sides s;
    if (!st.torse_available || !st.fit.is_concircular) {
        s.skip_reason = "precondition not met: V not concircular";
        return s;
    }
    s.available = true;
    const int n = st.n;
    s.mu = st.lambda.resolved.value() - st.a_jet.value();
    s.dmu.resize(static_cast<size_t>(n));
    s.grad_mu.assign(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < n; ++k)
        s.dmu[static_cast<size_t>(k)] = st.lambda.resolved.d1(k) - st.a_jet.d1(k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.grad_mu[static_cast<size_t>(i)] += st.md.ginv_value(i, j) * s.dmu[static_cast<size_t>(j)];
    double nr = 0.0, rn = 0.0;
    for (const Jet& c : st.nabla_ric.comps) nr += c.value() * c.value();
    for (const Jet& c : st.ric.comps) rn += c.value() * c.value();
    s.nabla_ric_norm = std::sqrt(nr);
    s.ric_norm = std::sqrt(rn);
    return s;
}

inline IdentityReport finish_biconditional(IdentityId id, const PointState& st, bool t1, double m1,
                                           bool t2, double m2, std::string detail,
                                           bool implication_only = false) {
    IdentityReport rep;
    rep.id = id;
    rep.point = st.x;
    rep.left = {t1 ? 1.0 : 0.0, m1};
    rep.right = {t2 ? 1.0 : 0.0, m2};
    const bool ok = implication_only ? (!t1 || t2) : (t1 == t2);
    rep.residual = ok ? 0.0 : 1.0;
    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
    rep.detail = std::move(detail);
    return rep;
}

inline IdentityReport identity_prop4(const PointState& st, IdentityId id) {
    require_n_ge_3(st.n, "Prop.-4 equivalences");
    Prop4Sides s = prop4_sides(st);
    if (!s.available) return skip_report(id, st.x, s.skip_reason);
    const int n = st.n;
    const double ric_scale = std::max(1.0, s.ric_norm);

    switch (id) {
        case IdentityId::PROP4_I: {
            const bool t1 = s.nabla_ric_norm / ric_scale < st.tol.identity_order3;
            const double m2 = frobenius(s.dmu) / std::max(1.0, std::abs(s.mu));
            const bool t2 = m2 < st.tol.identity;
            return finish_biconditional(id, st, t1, s.nabla_ric_norm / ric_scale, t2, m2,
                                        "nabla Ric = 0 vs d(lambda - a) = 0");
        }
        case IdentityId::PROP4_II: {
            std::vector<double> l1, r1;
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        l1.push_back(st.nabla_ric.value({k, i, j}));
                        r1.push_back(st.theta.value({k}) * st.ric.value({i, j}));
                    }
            const double m1 = rel_residual_span(l1, r1);
            const bool t1 = m1 < st.tol.identity_order3;
            std::vector<double> l2, r2;
            for (int i = 0; i < n; ++i) {
                l2.push_back(s.grad_mu[static_cast<size_t>(i)]);
                r2.push_back(s.mu * st.V.value({i}));
            }
            const double m2 = rel_residual_span(l2, r2);
            const bool t2 = m2 < st.tol.identity;
            return finish_biconditional(id, st, t1, m1, t2, m2,
                                        "nabla Ric = theta (x) Ric vs grad(lambda-a) = (lambda-a)V");
        }
        case IdentityId::PROP4_III: {
            double worst1 = 0.0;
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        worst1 = std::max(worst1, std::abs(st.nabla_ric.value({k, i, j}) -
                                                           st.nabla_ric.value({i, k, j})));
            const double m1 = worst1 / ric_scale;
            const bool t1 = m1 < st.tol.identity_order3;
            double worst2 = 0.0, scale2 = 1.0;
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double a = s.dmu[static_cast<size_t>(k)] * st.md.g_value(i, j);
                        double b = s.dmu[static_cast<size_t>(i)] * st.md.g_value(k, j);
                        scale2 = std::max({scale2, std::abs(a), std::abs(b)});
                        worst2 = std::max(worst2, std::abs(a - b));
                    }
            const double m2 = worst2 / scale2;
            const bool t2 = m2 < st.tol.identity;
            return finish_biconditional(
                id, st, t1, m1, t2, m2,
                "symmetry of nabla Ric vs d(lambda-a) (x) I = I (x) d(lambda-a); the right side "
                "forces d(lambda-a) = 0 pointwise in dimension >= 2");
        }
        case IdentityId::PROP4_IV: {
            double worst1 = 0.0;
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        worst1 = std::max(worst1, std::abs(st.nabla_ric.value({k, i, j}) +
                                                           st.nabla_ric.value({i, j, k}) +
                                                           st.nabla_ric.value({j, k, i})));
            const double m1 = worst1 / ric_scale;
            const bool t1 = m1 < st.tol.identity_order3;
            const double vmu = [&] {
                double acc = 0.0;
                for (int i = 0; i < n; ++i) acc += st.V.value({i}) * s.dmu[static_cast<size_t>(i)];
                return acc;
            }();
            std::vector<double> l2, r2;
            for (int i = 0; i < n; ++i) {
                l2.push_back(s.grad_mu[static_cast<size_t>(i)]);
                r2.push_back(-2.0 * vmu * st.V.value({i}) / st.vv.value());
            }
            const double m2 = rel_residual_span(l2, r2);
            const bool t2 = m2 < st.tol.identity;
            return finish_biconditional(id, st, t1, m1, t2, m2,
                                        "cyclic sum of nabla Ric = 0 implies grad(lambda-a) = "
                                        "-2V(lambda-a)V/|V|^2 (implication only)",
                                        /*implication_only=*/true);
        }
        default: break;
    }
    return skip_report(id, st.x, "unknown identity");
}

} // namespace detail

inline IdentityReport identity_residual_at(const PointState& st, IdentityId id) {
    try {
        switch (id) {
            case IdentityId::BOCHNER: return detail::identity_bochner(st);
            case IdentityId::EQ43: return detail::identity_eq43(st);
            case IdentityId::HESS_DIV: return detail::identity_hess_div(st);
            case IdentityId::Q_GRADF: return detail::identity_q_gradf(st);
            case IdentityId::PROP2: return detail::identity_prop2(st);
            case IdentityId::EQ7: return detail::identity_eq7(st);
            case IdentityId::RXY_V: return detail::identity_rxyv(st);
            case IdentityId::EQ5_EQ6: return detail::identity_eq5_eq6(st);
            case IdentityId::EQ44: return detail::identity_eq44(st);
            case IdentityId::PROP4_I:
            case IdentityId::PROP4_II:
            case IdentityId::PROP4_III:
            case IdentityId::PROP4_IV: return detail::identity_prop4(st, id);
        }
    } catch (const DimensionError& e) {
        return detail::skip_report(id, st.x, std::string("dimension guard: ") + e.what());
    }
    return detail::skip_report(id, st.x, "unknown identity");
}

} // namespace einsol
