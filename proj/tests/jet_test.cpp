#include <einsol/fd.hpp>
#include <einsol/jet.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <string>
#include <vector>

using namespace einsol;

namespace {

Chart chart3() {
    Chart c;
    c.dim = 3;
    c.coord_names = {"x", "y", "z"};
    return c;
}

Jet jet_of(const std::string& text, std::array<double, 3> p, int order) {
    Chart c = chart3();
    return eval_jet(parse_expr(text, c), p, c, order);
}

} // namespace

TEST(Jet, SeedsAndConstants) {
    Jet c = Jet::constant(3, 2, 4.5);
    EXPECT_DOUBLE_EQ(c.value(), 4.5);
    EXPECT_DOUBLE_EQ(c.d1(0), 0.0);
    EXPECT_DOUBLE_EQ(c.d2(1, 2), 0.0);

    Jet x = Jet::variable(3, 2, 1, 7.0);
    EXPECT_DOUBLE_EQ(x.value(), 7.0);
    EXPECT_DOUBLE_EQ(x.d1(1), 1.0);
    EXPECT_DOUBLE_EQ(x.d1(0), 0.0);
    EXPECT_DOUBLE_EQ(x.d2(1, 1), 0.0);
}

TEST(Jet, PolynomialDerivativesAreExact) {
    // f = x^2*y + z^3 with dyadic inputs: every partial must be bit-exact.
    Jet j = jet_of("x^2*y + z^3", {1.5, 2.0, 0.5}, 3);
    EXPECT_EQ(j.value(), 1.5 * 1.5 * 2.0 + 0.125);
    EXPECT_EQ(j.d1(0), 2 * 1.5 * 2.0); // 2xy
    EXPECT_EQ(j.d1(1), 1.5 * 1.5);     // x^2
    EXPECT_EQ(j.d1(2), 3 * 0.25);      // 3z^2
    EXPECT_EQ(j.d2(0, 0), 2 * 2.0);    // 2y
    EXPECT_EQ(j.d2(0, 1), 2 * 1.5);    // 2x
    EXPECT_EQ(j.d2(2, 2), 6 * 0.5);    // 6z
    EXPECT_EQ(j.d2(1, 2), 0.0);
    EXPECT_EQ(j.d3(0, 0, 1), 2.0);
    EXPECT_EQ(j.d3(2, 2, 2), 6.0);
    EXPECT_EQ(j.d3(0, 1, 2), 0.0);
}

TEST(Jet, SpecMicroExamples) {
    // 1/z^2 at z = 2: value 1/4, d/dz = -2/8 = -1/4, d2 = 6/16, d3 = -24/32.
    Jet a = jet_of("1/z^2", {0.0, 0.0, 2.0}, 3);
    EXPECT_DOUBLE_EQ(a.value(), 0.25);
    EXPECT_DOUBLE_EQ(a.d1(2), -0.25);
    EXPECT_DOUBLE_EQ(a.d2(2, 2), 0.375);
    EXPECT_DOUBLE_EQ(a.d3(2, 2, 2), -0.75);

    // exp(2z): k-th z-derivative is 2^k e^{2z}.
    Jet b = jet_of("exp(2*z)", {0.0, 0.0, 0.3}, 3);
    const double e = std::exp(0.6);
    EXPECT_DOUBLE_EQ(b.value(), e);
    EXPECT_DOUBLE_EQ(b.d1(2), 2 * e);
    EXPECT_DOUBLE_EQ(b.d2(2, 2), 4 * e);
    EXPECT_DOUBLE_EQ(b.d3(2, 2, 2), 8 * e);
    EXPECT_DOUBLE_EQ(b.d1(0), 0.0);

    // x*y + z: the only nonzero higher partial is d2/dxdy = 1.
    Jet c = jet_of("x*y + z", {1.0, -2.0, 5.0}, 2);
    EXPECT_DOUBLE_EQ(c.value(), 3.0);
    EXPECT_DOUBLE_EQ(c.d1(0), -2.0);
    EXPECT_DOUBLE_EQ(c.d1(1), 1.0);
    EXPECT_DOUBLE_EQ(c.d1(2), 1.0);
    EXPECT_DOUBLE_EQ(c.d2(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(c.d2(0, 0), 0.0);
}

TEST(Jet, ProductRuleThirdOrder) {
    // (sin x * cos y) d3/dx2dy = -(-sin x? ) derivative check against closed form
    std::array<double, 3> p{0.8, 0.45, 0.0};
    Jet j = jet_of("sin(x)*cos(y)", p, 3);
    EXPECT_NEAR(j.d3(0, 0, 1), std::sin(0.8) * std::sin(0.45), 1e-14);
    EXPECT_NEAR(j.d3(0, 1, 1), -std::cos(0.8) * std::cos(0.45), 1e-14);
}

TEST(Jet, DivisionIsInverseOfMultiplication) {
    std::array<double, 3> p{0.9, -0.6, 1.7};
    Jet a = jet_of("sin(x) + z^2", p, 3);
    Jet b = jet_of("2 + cos(y)", p, 3);
    Jet q = a / b;
    Jet back = q * b;
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(back.d1(i), a.d1(i), 1e-14);
        for (int j = i; j < 3; ++j) {
            EXPECT_NEAR(back.d2(i, j), a.d2(i, j), 1e-13);
            for (int k = j; k < 3; ++k) EXPECT_NEAR(back.d3(i, j, k), a.d3(i, j, k), 1e-13);
        }
    }
    // division keeps the value slot exact
    EXPECT_EQ(q.value(), a.value() / b.value());
}

TEST(Jet, ArithmeticGuards) {
    Jet a = Jet::constant(2, 2, 1.0);
    Jet zero = Jet::constant(2, 2, 0.0);
    EXPECT_THROW(a / zero, EvalError);

    Jet wrong_dim = Jet::constant(3, 2, 1.0);
    EXPECT_THROW(a + wrong_dim, EvalError);
    Jet wrong_order = Jet::constant(2, 1, 1.0);
    EXPECT_THROW(a * wrong_order, EvalError);

    EXPECT_THROW(einsol::log(zero), EvalError);
    EXPECT_THROW(einsol::sqrt(Jet::constant(2, 1, -1.0)), EvalError);
    EXPECT_THROW(einsol::sqrt(Jet::constant(2, 1, 0.0)), EvalError); // derivative blows up
    EXPECT_DOUBLE_EQ(einsol::sqrt(Jet::constant(2, 0, 0.0)).value(), 0.0);
}

TEST(Jet, TruncateAndPartial) {
    Jet j = jet_of("x^3*y", {2.0, 0.5, 0.0}, 3);

    Jet t = j.truncated(1);
    EXPECT_EQ(t.order(), 1);
    EXPECT_EQ(t.value(), j.value());
    EXPECT_EQ(t.d1(0), j.d1(0));
    EXPECT_THROW(t.truncated(2), EvalError);

    // partial(0) is the jet of 3x^2*y
    Jet p = j.partial(0);
    EXPECT_EQ(p.order(), 2);
    EXPECT_DOUBLE_EQ(p.value(), 3 * 4.0 * 0.5);
    EXPECT_DOUBLE_EQ(p.d1(0), 6 * 2.0 * 0.5);
    EXPECT_DOUBLE_EQ(p.d1(1), 3 * 4.0);
    EXPECT_DOUBLE_EQ(p.d2(0, 1), 12.0);
}

TEST(Jet, EvalJetValidatesOrder) {
    Chart c = chart3();
    ScalarExpr e = parse_expr("x", c);
    std::array<double, 3> p{1, 2, 3};
    EXPECT_THROW(eval_jet(e, p, c, 4), EvalError);
    EXPECT_THROW(eval_jet(e, p, c, -1), EvalError);
    EXPECT_NO_THROW(eval_jet(e, p, c, 0));
}

// ---------------------------------------------------------------------------
// AD vs central finite differences on a broad expression corpus
// ---------------------------------------------------------------------------

namespace {

struct CorpusCase {
    const char* text;
    std::array<double, 3> point;
};

const CorpusCase kCorpus[] = {
    {"x + 2*y^2", {0.7, -0.3, 0.4}},
    {"x*y*z", {0.7, -0.3, 0.4}},
    {"1/z^2", {0.7, -0.3, 0.4}},
    {"exp(2*z)", {0.7, -0.3, 0.4}},
    {"x*y + z", {0.7, -0.3, 0.4}},
    {"sin(x)*cos(y)", {0.7, -0.3, 0.4}},
    {"exp(x*y)", {0.7, -0.3, 0.4}},
    {"log(1 + x^2 + y^2)", {0.7, -0.3, 0.4}},
    {"sqrt(1 + x^2)", {0.7, -0.3, 0.4}},
    {"tan(x/4)", {0.7, -0.3, 0.4}},
    {"sinh(x)*cosh(z)", {0.7, -0.3, 0.4}},
    {"(x + y)/(1 + z^2)", {0.7, -0.3, 0.4}},
    {"x^3 - 2*x*y + y^2*z", {0.7, -0.3, 0.4}},
    {"exp(-(x^2 + y^2 + z^2))", {0.7, -0.3, 0.4}},
    {"1/(1 + exp(-x))", {0.7, -0.3, 0.4}},
    {"sin(x*y*z)", {0.9, 0.8, 0.7}},
    {"log(2 + sin(x))", {0.7, -0.3, 0.4}},
    {"(1 + x^2)^3", {0.7, -0.3, 0.4}},
    {"x^2*y^3*z^4", {0.7, -0.3, 0.4}},
    {"sqrt(x^2 + y^2 + 1)/(2 + cos(z))", {0.7, -0.3, 0.4}},
    {"pi*x + y/pi", {0.7, -0.3, 0.4}},
    {"cosh(x) - sinh(y) + tan(z/3)", {0.7, -0.3, 0.4}},
};

double rel_err(double ad, double fd) { return std::abs(ad - fd) / std::max(1.0, std::abs(ad)); }

} // namespace

TEST(JetOracle, MatchesFiniteDifferencesOnCorpus) {
    Chart c = chart3();
    ASSERT_GE(std::size(kCorpus), 20u);
    for (const CorpusCase& tc : kCorpus) {
        ScalarExpr e = parse_expr(tc.text, c);
        for (int order = 1; order <= 3; ++order) {
            Jet ad = eval_jet(e, tc.point, c, order);
            Jet fd = fd_oracle(e, tc.point, c, order);
            const double bound = order <= 2 ? 1e-6 : 1e-4;
            EXPECT_EQ(ad.value(), fd.value());
            for (int i = 0; i < 3; ++i) {
                EXPECT_LT(rel_err(ad.d1(i), fd.d1(i)), bound)
                    << tc.text << " d1(" << i << ") order " << order;
                if (order < 2) continue;
                for (int j = i; j < 3; ++j) {
                    EXPECT_LT(rel_err(ad.d2(i, j), fd.d2(i, j)), bound)
                        << tc.text << " d2(" << i << "," << j << ") order " << order;
                    if (order < 3) continue;
                    for (int k = j; k < 3; ++k)
                        EXPECT_LT(rel_err(ad.d3(i, j, k), fd.d3(i, j, k)), bound)
                            << tc.text << " d3(" << i << "," << j << "," << k << ")";
                }
            }
        }
    }
}

TEST(JetOracle, FdJetHandlesPlainCallables) {
    // fd_jet works on arbitrary callables, not only parsed expressions.
    fd::ScalarFn f = [](std::span<const double> p) {
        return p[0] * p[0] * p[1] + std::exp(p[2]);
    };
    std::array<double, 3> x{1.2, -0.4, 0.25};
    Jet fd = fd_jet(f, x, 3);
    EXPECT_NEAR(fd.d1(0), 2 * 1.2 * -0.4, 1e-8);
    EXPECT_NEAR(fd.d2(0, 1), 2 * 1.2, 1e-6);
    EXPECT_NEAR(fd.d3(0, 0, 1), 2.0, 1e-4);
    EXPECT_NEAR(fd.d3(2, 2, 2), std::exp(0.25), 1e-4);
}
