#include <einsol/manifold.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace einsol;

namespace {

const char* kFullDoc = R"(# upper half-space style example document
dim = 3
coords = x y z

domain z > 0            # strict inequality
domain 10 - z > 0

g[1][1] = 1/z^2
g[2][2] = 1/z^2
g[3][3] = 1/z^2
g[1][2] = x/100

V[3] = 1

lambda = 1 - 1/z
f = -1/z
a = -1/z
psi[1] = x
)";

void expect_parse_error(const std::string& doc, const std::string& needle) {
    try {
        parse_manifold(doc);
        FAIL() << "expected ParseError containing: " << needle;
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
            << "actual message: " << e.what();
    }
}

} // namespace

TEST(ManifoldParse, FullDocument) {
    ManifoldSpec spec = parse_manifold(kFullDoc, "halfspace");
    EXPECT_EQ(spec.name, "halfspace");
    EXPECT_EQ(spec.chart.dim, 3);
    ASSERT_EQ(spec.chart.coord_names.size(), 3u);
    EXPECT_EQ(spec.chart.coord_names[0], "x");
    EXPECT_EQ(spec.chart.coord_names[2], "z");
    EXPECT_EQ(spec.chart.domain.size(), 2u);

    std::array<double, 3> p{0.5, -1.0, 2.0};
    EXPECT_DOUBLE_EQ(evaluate_value(spec.metric_entry(0, 0), p, spec.chart), 0.25);
    EXPECT_DOUBLE_EQ(evaluate_value(spec.metric_entry(0, 1), p, spec.chart), 0.005);
    // symmetric access: (1,0) resolves to the same stored entry
    EXPECT_DOUBLE_EQ(evaluate_value(spec.metric_entry(1, 0), p, spec.chart), 0.005);
    // unset off-diagonal defaults to zero
    EXPECT_DOUBLE_EQ(evaluate_value(spec.metric_entry(1, 2), p, spec.chart), 0.0);

    // unset V components default to zero
    EXPECT_DOUBLE_EQ(evaluate_value(spec.field[0], p, spec.chart), 0.0);
    EXPECT_DOUBLE_EQ(evaluate_value(spec.field[2], p, spec.chart), 1.0);

    ASSERT_TRUE(spec.lambda.has_value());
    EXPECT_DOUBLE_EQ(evaluate_value(*spec.lambda, p, spec.chart), 0.5);
    ASSERT_TRUE(spec.potential.has_value());
    EXPECT_DOUBLE_EQ(evaluate_value(*spec.potential, p, spec.chart), -0.5);
    ASSERT_TRUE(spec.torse_a.has_value());
    EXPECT_TRUE(spec.has_declared_psi);
    // unset psi components default to zero when any psi line appears
    EXPECT_DOUBLE_EQ(evaluate_value(spec.torse_psi[0], p, spec.chart), 0.5);
    EXPECT_DOUBLE_EQ(evaluate_value(spec.torse_psi[1], p, spec.chart), 0.0);
}

TEST(ManifoldParse, ConcircularShorthand) {
    // `a` without psi lines declares psi = 0 componentwise.
    ManifoldSpec spec = parse_manifold(
        "dim = 2\ncoords = u v\ng[1][1] = 1\ng[2][2] = 1\nV[1] = u\na = 1\n");
    EXPECT_FALSE(spec.has_declared_psi);
    ASSERT_TRUE(spec.torse_a.has_value());
    ASSERT_EQ(spec.torse_psi.size(), 2u);
    std::array<double, 2> p{3.0, 4.0};
    EXPECT_DOUBLE_EQ(evaluate_value(spec.torse_psi[0], p, spec.chart), 0.0);
    EXPECT_DOUBLE_EQ(evaluate_value(spec.torse_psi[1], p, spec.chart), 0.0);
}

TEST(ManifoldParse, StructuralErrors) {
    expect_parse_error("coords = x y\ng[1][1] = 1\nV[1] = 1\n", "missing section: dim");
    expect_parse_error("dim = 2\ng[1][1] = 1\nV[1] = 1\n", "missing section: coords");
    expect_parse_error("dim = 2\ncoords = x y\ng[1][1] = 1\ng[2][2] = 1\n", "missing section: V");
    expect_parse_error("dim = 1\ncoords = x\ng[1][1] = 1\nV[1] = 1\n",
                       "dimension must be at least 2");
    expect_parse_error("dim = 3\ncoords = x y\ng[1][1] = 1\nV[1] = 1\n",
                       "dimension mismatch: coords lists 2 names for dim 3");
    expect_parse_error("dim = 2\ncoords = x x\ng[1][1] = 1\nV[1] = 1\n",
                       "coordinate names must be distinct");
    expect_parse_error("dim = 2\ncoords = x y\ng[1][1] = 1\nV[1] = 1\n",
                       "diagonal metric entry required: g[2][2]");
}

TEST(ManifoldParse, DuplicateKeys) {
    expect_parse_error("dim = 2\ndim = 2\ncoords = x y\ng[1][1] = 1\ng[2][2] = 1\nV[1] = 1\n",
                       "duplicate key dim");
    expect_parse_error(
        "dim = 2\ncoords = x y\ncoords = x y\ng[1][1] = 1\ng[2][2] = 1\nV[1] = 1\n",
        "duplicate key coords");
    expect_parse_error(
        "dim = 2\ncoords = x y\ng[1][1] = 1\ng[1][1] = 2\ng[2][2] = 1\nV[1] = 1\n",
        "duplicate key g[1][1]");
    expect_parse_error(
        "dim = 2\ncoords = x y\ng[1][1] = 1\ng[2][2] = 1\nV[1] = 1\nlambda = 0\nlambda = 1\n",
        "duplicate key lambda");
}

TEST(ManifoldParse, IndexErrors) {
    expect_parse_error("dim = 2\ncoords = x y\ng[1][1] = 1\ng[2][2] = 1\nV[3] = 1\n",
                       "dimension mismatch: V index 3 outside 1..2");
    expect_parse_error("dim = 2\ncoords = x y\ng[2][1] = 1\ng[2][2] = 1\nV[1] = 1\n",
                       "metric entries use upper-triangle indices (i <= j): g[2][1]");
    expect_parse_error("dim = 2\ncoords = x y\ng[1] = 1\ng[2][2] = 1\nV[1] = 1\n",
                       "metric entries need two indices: g[i][j]");
    expect_parse_error("dim = 2\ncoords = x y\ng[1][1] = 1\ng[2][2] = 1\nV[1][2] = 1\n",
                       "vector components take one index: V[i]");
    expect_parse_error(
        "dim = 2\ncoords = x y\ng[1][1] = 1\ng[2][2] = 1\nV[1] = 1\na = 1\npsi[1][1] = 0\n",
        "psi components take one index: psi[i]");
}

TEST(ManifoldParse, MiscErrors) {
    expect_parse_error("dim = 2\ncoords = x y\nbogus line here\ng[1][1] = 1\ng[2][2] = 1\nV[1] = 1\n",
                       "unrecognized line: bogus line here");
    expect_parse_error("dim = 2\ncoords = x y\ng[1][1] = 1\ng[2][2] = 1\nV[1] = 1\npsi[1] = 0\n",
                       "psi declared without a");
}

TEST(ManifoldParse, ExpressionErrorsCarryLineNumbers) {
    const std::string doc =
        "dim = 3\ncoords = x y z\ng[1][1] = e^(2*z)\ng[2][2] = 1\ng[3][3] = 1\nV[1] = 1\n";
    try {
        parse_manifold(doc);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("unknown identifier e"), std::string::npos) << msg;
        EXPECT_NE(msg.find("(line 3)"), std::string::npos) << msg;
        EXPECT_EQ(e.line(), 3);
    }
}

TEST(ManifoldParse, InDomain) {
    ManifoldSpec spec = parse_manifold(
        "dim = 2\ncoords = x z\ndomain z > 0\ng[1][1] = 1\ng[2][2] = 1\nV[1] = 1\n");
    EXPECT_TRUE(in_domain(spec, std::array<double, 2>{0.0, 1.0}));
    EXPECT_FALSE(in_domain(spec, std::array<double, 2>{0.0, -1.0}));
    EXPECT_FALSE(in_domain(spec, std::array<double, 2>{0.0, 0.0})); // strict

    // a constraint whose evaluation faults counts as out-of-domain
    ManifoldSpec guarded = parse_manifold(
        "dim = 2\ncoords = x z\ndomain 1/z > 0\ng[1][1] = 1\ng[2][2] = 1\nV[1] = 1\n");
    EXPECT_TRUE(in_domain(guarded, std::array<double, 2>{0.0, 2.0}));
    EXPECT_FALSE(in_domain(guarded, std::array<double, 2>{0.0, 0.0}));
}

TEST(ManifoldParse, FileRoundTrip) {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "einsol_manifold_test.manifold";
    {
        std::ofstream out(path);
        out << kFullDoc;
    }
    ManifoldSpec spec = parse_manifold_file(path.string());
    EXPECT_EQ(spec.name, path.string());
    EXPECT_EQ(spec.chart.dim, 3);
    std::remove(path.string().c_str());

    try {
        parse_manifold_file("/nonexistent/einsol_nope.manifold");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("cannot open manifold file"), std::string::npos);
    }
}
