#include <einsol/catalogue.hpp>
#include <einsol/fd.hpp>
#include <einsol/geometry.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

using namespace einsol;

namespace {

MetricData md_of(const ManifoldSpec& spec, std::span<const double> x, int order = 3) {
    return metric_data_at(spec, x, order);
}

TensorValue metric_tensor(const MetricData& md) {
    TensorValue g = TensorValue::zeros(md.n, {Slot::Lower, Slot::Lower}, md.point, 0);
    for (int i = 0; i < md.n; ++i)
        for (int j = 0; j < md.n; ++j) g.at({i, j}) = detail::trunc(md.gg(i, j), 0);
    return g;
}

// Lowered curvature tensor L(i,j,k,l) = <R(e_i,e_j)e_k, e_l>.
double lowered_riemann(const MetricData& md, const TensorValue& R, int i, int j, int k, int l) {
    double s = 0.0;
    for (int m = 0; m < md.n; ++m) s += md.g_value(l, m) * R.value({m, k, i, j});
    return s;
}

} // namespace

TEST(Geometry, HyperbolicHalfspaceFrozenValues) {
    ManifoldSpec spec = get_manifold("hyperbolic_halfspace");
    std::array<double, 3> p{0.3, -0.7, 2.0};
    MetricData md = md_of(spec, p);

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_DOUBLE_EQ(md.g_value(i, j), i == j ? 0.25 : 0.0);
    EXPECT_NEAR(md.det_g, 0.015625, 1e-15);
    EXPECT_DOUBLE_EQ(md.ginv_value(0, 0), 4.0);

    ConnectionData conn = christoffel_at(md);
    EXPECT_NEAR(conn.G(0, 0, 2).value(), -0.5, 1e-14); // Γ^x_xz = -1/z
    EXPECT_NEAR(conn.G(2, 0, 0).value(), 0.5, 1e-14);  // Γ^z_xx = 1/z
    EXPECT_NEAR(conn.G(2, 2, 2).value(), -0.5, 1e-14); // Γ^z_zz = -1/z
    EXPECT_NEAR(conn.G(0, 0, 1).value(), 0.0, 1e-14);

    TensorValue ric = ricci_at(md, conn);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_NEAR(ric.value({i, j}), -2.0 * md.g_value(i, j), 1e-12);
    EXPECT_NEAR(scalar_curvature_at(md, ric).value(), -6.0, 1e-11);

    // constant-curvature space: ∇Ric = 0
    TensorValue nr = nabla_ricci_at(md, christoffel_at(md), ric);
    for (const Jet& c : nr.comps) EXPECT_NEAR(c.value(), 0.0, 1e-11);
}

TEST(Geometry, ExpWarpedFrozenValues) {
    ManifoldSpec spec = get_manifold("exp_warped");
    const double ln2 = std::log(2.0);
    std::array<double, 3> p{0.1, 0.2, ln2};
    MetricData md = md_of(spec, p);
    EXPECT_NEAR(md.g_value(0, 0), 4.0, 1e-14);
    EXPECT_NEAR(md.g_value(1, 1), 4.0, 1e-14);
    EXPECT_DOUBLE_EQ(md.g_value(2, 2), 1.0);

    ConnectionData conn = christoffel_at(md);
    TensorValue ric = ricci_at(md, conn);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_NEAR(ric.value({i, j}), -2.0 * md.g_value(i, j), 1e-11);
    EXPECT_NEAR(scalar_curvature_at(md, ric).value(), -6.0, 1e-11);

    // at z = 0 the connection coefficients are unit-sized
    std::array<double, 3> p0{-0.4, 0.9, 0.0};
    MetricData md0 = md_of(spec, p0);
    ConnectionData conn0 = christoffel_at(md0);
    EXPECT_NEAR(conn0.G(0, 0, 2).value(), 1.0, 1e-14);  // Γ^x_xz
    EXPECT_NEAR(conn0.G(2, 0, 0).value(), -1.0, 1e-14); // Γ^z_xx

    // ∇V = e^z · Id, so the identity matrix at z = 0
    TensorValue V = field_jets(spec, p0, 3);
    TensorValue nv = covariant_derivative_vector_at(md0, conn0, V);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_NEAR(nv.value({i, j}), i == j ? 1.0 : 0.0, 1e-13);
}

TEST(Geometry, MetricCompatibility) {
    for (const CatalogueEntry& entry : catalogue()) {
        ManifoldSpec spec = parse_manifold(entry.document, entry.name);
        auto pts = sample_points(spec, entry.box, 20, 7, SampleStrategy::UniformRandom);
        for (const auto& x : pts) {
            MetricData md = md_of(spec, x, 2);
            ConnectionData conn = christoffel_at(md);
            const int n = md.n;
            double scale = 1.0;
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(md.dg(k, i, j)));
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double cov = md.dg(k, i, j);
                        for (int l = 0; l < n; ++l)
                            cov -= conn.G(l, k, i).value() * md.g_value(l, j) +
                                   conn.G(l, k, j).value() * md.g_value(i, l);
                        EXPECT_LT(std::abs(cov) / scale, 1e-10)
                            << entry.name << " at (" << x[0] << ", " << x[1] << ")";
                    }
        }
    }
}

TEST(Geometry, RiemannSymmetriesAndFirstBianchi) {
    for (const char* name : {"hyperbolic_halfspace", "exp_warped"}) {
        ManifoldSpec spec = get_manifold(name);
        std::array<double, 3> p{0.4, -0.2, 1.3};
        MetricData md = md_of(spec, p);
        ConnectionData conn = christoffel_at(md);
        TensorValue R = riemann_at(md, conn);
        const int n = 3;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        const double L = lowered_riemann(md, R, i, j, k, l);
                        EXPECT_NEAR(L, -lowered_riemann(md, R, j, i, k, l), 1e-11);
                        EXPECT_NEAR(L, -lowered_riemann(md, R, i, j, l, k), 1e-11);
                        EXPECT_NEAR(L, lowered_riemann(md, R, k, l, i, j), 1e-11);
                    }
        // first Bianchi identity, cyclic over the argument slots
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        EXPECT_NEAR(R.value({l, k, i, j}) + R.value({l, i, j, k}) +
                                        R.value({l, j, k, i}),
                                    0.0, 1e-11);
    }
}

TEST(Geometry, ContractedSecondBianchi) {
    // div Ric = ½ d(scal), checked pointwise on every catalogue chart.
    for (const CatalogueEntry& entry : catalogue()) {
        ManifoldSpec spec = parse_manifold(entry.document, entry.name);
        auto pts = sample_points(spec, entry.box, 100, 42, SampleStrategy::UniformRandom);
        for (const auto& x : pts) {
            MetricData md = md_of(spec, x, 3);
            ConnectionData conn = christoffel_at(md);
            TensorValue ric = ricci_at(md, conn);
            Jet scal = scalar_curvature_at(md, ric);
            TensorValue div_ric = divergence_sym2_at(md, conn, ric);
            double scale = 1.0;
            for (int j = 0; j < md.n; ++j) scale = std::max(scale, std::abs(scal.d1(j)));
            for (int j = 0; j < md.n; ++j)
                EXPECT_LT(std::abs(div_ric.value({j}) - 0.5 * scal.d1(j)) / scale, 1e-8)
                    << entry.name;
        }
    }
}

TEST(Geometry, LieDerivativeMatchesSymmetrizedCovariantDerivative) {
    for (const char* name : {"hyperbolic_halfspace", "exp_warped", "euclidean3_rotation_field"}) {
        ManifoldSpec spec = get_manifold(name);
        std::array<double, 3> p{0.8, 0.6, 1.1};
        MetricData md = md_of(spec, p);
        ConnectionData conn = christoffel_at(md);
        TensorValue V = field_jets(spec, p, 3);
        TensorValue theta = lower_index(md, V);
        TensorValue nth = covariant_derivative_oneform(md, conn, theta);
        TensorValue lie = lie_derivative_metric_at(md, V);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                EXPECT_NEAR(lie.value({i, j}), nth.value({i, j}) + nth.value({j, i}), 1e-12)
                    << name;
    }
}

TEST(Geometry, GradHessLaplacianOnHyperbolicPotential) {
    ManifoldSpec spec = get_manifold("hyperbolic_halfspace");
    std::array<double, 3> p{0.3, -0.7, 2.0};
    MetricData md = md_of(spec, p);
    ConnectionData conn = christoffel_at(md);
    ASSERT_TRUE(spec.potential.has_value());
    Jet f = eval_jet(*spec.potential, p, spec.chart, 3);
    GradHess gh = grad_hess_laplacian_at(md, conn, f);

    // grad f = V = d/dz for f = -1/z on the half-space
    EXPECT_NEAR(gh.grad.value({0}), 0.0, 1e-14);
    EXPECT_NEAR(gh.grad.value({1}), 0.0, 1e-14);
    EXPECT_NEAR(gh.grad.value({2}), 1.0, 1e-13);

    // Hess f = -g/(2z) ... frozen at z = 2: diag(-1/8)
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_NEAR(gh.hess.value({i, j}), i == j ? -0.125 : 0.0, 1e-13);

    // laplacian is the g-trace of the Hessian, bit for bit
    Jet tr = Jet::constant(3, gh.hess.jet_order(), 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            tr += detail::trunc(md.ginv(i, j), gh.hess.jet_order()) * gh.hess.at({i, j});
    EXPECT_EQ(gh.laplacian.value(), tr.value());
    EXPECT_NEAR(gh.laplacian.value(), -1.5, 1e-12);

    // g(grad f, ·) = df
    TensorValue lowered = lower_index(md, gh.grad);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(lowered.value({j}), f.d1(j), 1e-14);
}

TEST(Geometry, FieldOperatorsOnHyperbolic) {
    ManifoldSpec spec = get_manifold("hyperbolic_halfspace");
    std::array<double, 3> p{0.0, 0.0, 2.0};
    MetricData md = md_of(spec, p);
    ConnectionData conn = christoffel_at(md);
    TensorValue V = field_jets(spec, p, 3);
    TensorValue nv = covariant_derivative_vector_at(md, conn, V);

    // ∇V = -Id/z for V = d/dz
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_NEAR(nv.value({i, j}), i == j ? -0.5 : 0.0, 1e-14);
    EXPECT_NEAR(divergence_vector_at(nv).value(), -1.5, 1e-14);

    // V(|V|^2) with |V|^2 = 1/z^2: derivative -2/z^3 = -0.25 at z = 2
    Chart& c = spec.chart;
    Jet vv = eval_jet(parse_expr("1/z^2", c), p, c, 3);
    EXPECT_NEAR(directional_derivative(V, vv).value(), -0.25, 1e-14);

    // raise/lower round-trip
    TensorValue theta = lower_index(md, V);
    EXPECT_NEAR(theta.value({2}), 0.25, 1e-15);
    TensorValue back = raise_index(md, theta);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(back.value({i}), V.value({i}), 1e-14);
}

TEST(Geometry, TensorNormsAndRicciOperator) {
    ManifoldSpec spec = get_manifold("hyperbolic_halfspace");
    std::array<double, 3> p{0.1, 0.5, 1.7};
    MetricData md = md_of(spec, p);
    ConnectionData conn = christoffel_at(md);

    EXPECT_NEAR(tensor_norm_sq_at(md, metric_tensor(md)), 3.0, 1e-12);

    TensorValue ric = ricci_at(md, conn);
    EXPECT_NEAR(tensor_norm_sq_at(md, ric), 12.0, 1e-10); // |−2g|² = 4n

    TensorValue q = ricci_operator_at(md, ric);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_NEAR(q.value({i, j}), i == j ? -2.0 : 0.0, 1e-11);

    // vector norm: |V|² = g(V, V) = 1/z²
    ManifoldSpec flat = get_manifold("euclidean3_position_field");
    std::array<double, 3> q3{1.0, 2.0, 2.0};
    MetricData mdf = md_of(flat, q3, 2);
    TensorValue V = field_jets(flat, q3, 2);
    EXPECT_DOUBLE_EQ(tensor_norm_sq_at(mdf, V), 9.0);
}

TEST(Geometry, Sphere2CurvatureAndGaussCrossCheck) {
    ManifoldSpec spec = get_manifold("sphere2");
    std::array<double, 2> p{1.1, 2.3};
    MetricData md = md_of(spec, p);
    ConnectionData conn = christoffel_at(md);
    TensorValue ric = ricci_at(md, conn);
    Jet scal = scalar_curvature_at(md, ric);
    EXPECT_NEAR(scal.value(), 2.0, 1e-9);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            EXPECT_NEAR(ric.value({i, j}), md.g_value(i, j), 1e-10);

    // Independent check through the orthogonal-coordinates Gauss formula
    //   K = -1/(2√(EG)) [∂_u(∂_u G/√(EG)) + ∂_p(∂_p E/√(EG))]
    // evaluated with nested finite differences straight off the parsed metric.
    fd::ScalarFn E = [&](std::span<const double> q) {
        return evaluate_value(spec.metric_entry(0, 0), q, spec.chart);
    };
    fd::ScalarFn G = [&](std::span<const double> q) {
        return evaluate_value(spec.metric_entry(1, 1), q, spec.chart);
    };
    fd::ScalarFn root_eg = [&](std::span<const double> q) { return std::sqrt(E(q) * G(q)); };
    fd::ScalarFn A = [&](std::span<const double> q) { return fd::d1(G, q, 0) / root_eg(q); };
    fd::ScalarFn B = [&](std::span<const double> q) { return fd::d1(E, q, 1) / root_eg(q); };
    const double K = -(fd::d1(A, p, 0) + fd::d1(B, p, 1)) / (2.0 * root_eg(p));
    EXPECT_NEAR(K, 0.5 * scal.value(), 5e-4);
}

TEST(Geometry, ChristoffelMatchesFiniteDifferenceKoszul) {
    ManifoldSpec spec = get_manifold("exp_warped");
    std::array<double, 3> p{0.4, -0.8, 0.9};
    MetricData md = md_of(spec, p, 2);
    ConnectionData conn = christoffel_at(md);
    const int n = 3;

    // numerically differentiate the parsed metric entries, then Koszul
    std::vector<std::vector<double>> dg(3, std::vector<double>(9));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            fd::ScalarFn gij = [&, i, j](std::span<const double> q) {
                return evaluate_value(spec.metric_entry(i, j), q, spec.chart);
            };
            for (int k = 0; k < n; ++k) dg[static_cast<size_t>(k)][static_cast<size_t>(i * n + j)] = fd::d1(gij, p, k);
        }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += 0.5 * md.ginv_value(k, l) *
                         (dg[static_cast<size_t>(i)][static_cast<size_t>(j * n + l)] +
                          dg[static_cast<size_t>(j)][static_cast<size_t>(i * n + l)] -
                          dg[static_cast<size_t>(l)][static_cast<size_t>(i * n + j)]);
                EXPECT_NEAR(conn.G(k, i, j).value(), s, 1e-6);
            }
}

TEST(Geometry, ErrorPaths) {
    ManifoldSpec spec = get_manifold("hyperbolic_halfspace");
    std::array<double, 2> short_pt{0.0, 1.0};
    EXPECT_THROW(metric_data_at(spec, short_pt, 2), GeometryError);

    std::array<double, 3> outside{0.0, 0.0, -1.0};
    try {
        metric_data_at(spec, outside, 2);
        FAIL() << "expected GeometryError";
    } catch (const GeometryError& e) {
        EXPECT_NE(std::string(e.what()).find("violates a chart domain constraint"),
                  std::string::npos);
    }

    ManifoldSpec lorentz = parse_manifold(
        "dim = 2\ncoords = x y\ng[1][1] = 1\ng[2][2] = -1\nV[1] = 1\n");
    std::array<double, 2> origin{0.0, 0.0};
    try {
        metric_data_at(lorentz, origin, 2);
        FAIL() << "expected GeometryError";
    } catch (const GeometryError& e) {
        EXPECT_NE(std::string(e.what()).find("not positive definite"), std::string::npos);
    }

    ManifoldSpec tiny = parse_manifold(
        "dim = 2\ncoords = x y\ng[1][1] = 1/10000000\ng[2][2] = 1/10000000\nV[1] = 1\n");
    try {
        metric_data_at(tiny, origin, 2);
        FAIL() << "expected GeometryError";
    } catch (const GeometryError& e) {
        EXPECT_NE(std::string(e.what()).find("numerically singular"), std::string::npos);
    }

    std::array<double, 3> inside{0.0, 0.0, 1.0};
    MetricData md0 = metric_data_at(spec, inside, 0);
    EXPECT_THROW(christoffel_at(md0), GeometryError);
    MetricData md1 = metric_data_at(spec, inside, 1);
    ConnectionData c1 = christoffel_at(md1);
    EXPECT_THROW(riemann_at(md1, c1), GeometryError);
    MetricData md2 = metric_data_at(spec, inside, 2);
    ConnectionData c2 = christoffel_at(md2);
    TensorValue ric2 = ricci_at(md2, c2);
    EXPECT_THROW(nabla_ricci_at(md2, c2, ric2), GeometryError);
    EXPECT_THROW(divergence_sym2_at(md2, c2, ric2), GeometryError);
    Jet f1 = Jet::variable(3, 1, 2, 1.0);
    EXPECT_THROW(grad_hess_laplacian_at(md2, c2, f1), GeometryError);
    EXPECT_THROW(directional_derivative(field_jets(spec, inside, 0),
                                        Jet::constant(3, 0, 1.0)),
                 GeometryError);
}
