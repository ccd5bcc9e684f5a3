#pragma once

#include <einsol/errors.hpp>
#include <einsol/expr.hpp>
#include <einsol/indexing.hpp>

#include <fstream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace einsol {

/// A complete problem instance: chart, metric, potential vector field, and
/// whatever optional data (soliton function, potential, torse-forming
/// decomposition) the document declares.
struct ManifoldSpec {
    std::string name; // catalogue name or file path; informational
    Chart chart;

    // packed upper triangle of the metric, sym2 layout over chart.dim
    std::vector<ScalarExpr> metric;
    std::vector<ScalarExpr> field; // V, one expression per coordinate

    std::optional<ScalarExpr> lambda;
    std::optional<ScalarExpr> potential;     // f
    std::optional<ScalarExpr> torse_a;       // declared torse-forming a
    std::vector<ScalarExpr> torse_psi;       // declared psi, empty if none given
    bool has_declared_psi = false;

    const ScalarExpr& metric_entry(int i, int j) const {
        detail::sort2(i, j);
        return metric[static_cast<size_t>(detail::sym2_index(chart.dim, i, j))];
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline ScalarExpr zero_expr(const Chart& chart) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Literal;
    n->literal = 0.0;
    n->literal_is_integer = true;
    n->integer_value = 0;
    return ScalarExpr{n, chart.dim};
}

inline ScalarExpr parse_rhs(const std::string& rhs, const Chart& chart, int line_no) {
    try {
        return parse_expr(rhs, chart);
    } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()), line_no, 0);
    }
}

} // namespace detail

/// Parse a manifold-definition document (line oriented, `#` starts a comment).
/// Recognized lines:
///   dim = <n>
///   coords = <name1> <name2> ...
///   domain <expr> > 0
///   g[<i>][<j>] = <expr>        (1-based, i <= j; off-diagonal defaults to 0)
///   V[<i>] = <expr>             (unset components default to 0)
///   lambda = <expr>   f = <expr>   a = <expr>   psi[<i>] = <expr>
inline ManifoldSpec parse_manifold(const std::string& document, std::string name = {}) {
    static const std::regex dim_re(R"(^dim\s*=\s*(\d+)$)");
    static const std::regex coords_re(R"(^coords\s*=\s*(.+)$)");
    static const std::regex domain_re(R"(^domain\s+(.+?)\s*>\s*0$)");
    static const std::regex indexed_re(R"(^(g|V|psi)\s*\[\s*(\d+)\s*\](?:\s*\[\s*(\d+)\s*\])?\s*=\s*(.+)$)");
    static const std::regex scalar_re(R"(^(lambda|f|a)\s*=\s*(.+)$)");

    struct Line {
        int number;
        std::string text;
    };
    std::vector<Line> lines;
    {
        std::istringstream in(document);
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            if (size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            std::string t = detail::trim(raw);
            if (!t.empty()) lines.push_back({no, std::move(t)});
        }
    }

    // First pass: the chart skeleton, needed before any expression parses.
    ManifoldSpec spec;
    spec.name = std::move(name);
    bool have_dim = false, have_coords = false;
    int coords_line = 0;
    std::smatch m;
    for (const Line& ln : lines) {
        if (std::regex_match(ln.text, m, dim_re)) {
            if (have_dim) throw ParseError("duplicate key dim", ln.number, 0);
            spec.chart.dim = std::stoi(m[1].str());
            have_dim = true;
        } else if (std::regex_match(ln.text, m, coords_re)) {
            if (have_coords) throw ParseError("duplicate key coords", ln.number, 0);
            std::istringstream cs(m[1].str());
            std::string namepart;
            while (cs >> namepart) spec.chart.coord_names.push_back(namepart);
            have_coords = true;
            coords_line = ln.number;
        }
    }
    if (!have_dim) throw ParseError("missing section: dim");
    if (!have_coords) throw ParseError("missing section: coords");
    if (spec.chart.dim < 2) throw ParseError("dimension must be at least 2");
    if (static_cast<int>(spec.chart.coord_names.size()) != spec.chart.dim)
        throw ParseError("dimension mismatch: coords lists " +
                             std::to_string(spec.chart.coord_names.size()) + " names for dim " +
                             std::to_string(spec.chart.dim),
                         coords_line, 0);
    {
        std::set<std::string> distinct(spec.chart.coord_names.begin(), spec.chart.coord_names.end());
        if (static_cast<int>(distinct.size()) != spec.chart.dim)
            throw ParseError("coordinate names must be distinct", coords_line, 0);
    }

    const int n = spec.chart.dim;
    spec.metric.assign(static_cast<size_t>(detail::sym2_size(n)), ScalarExpr{});
    spec.field.assign(static_cast<size_t>(n), ScalarExpr{});
    spec.torse_psi.assign(static_cast<size_t>(n), ScalarExpr{});
    std::vector<bool> field_given(static_cast<size_t>(n), false);
    std::vector<bool> psi_given(static_cast<size_t>(n), false);
    bool any_field = false;
    std::set<std::string> seen; // duplicate-key detection for indexed/scalar keys

    auto check_index = [&](const std::string& key, int idx, int line_no) {
        if (idx < 1 || idx > n)
            throw ParseError("dimension mismatch: " + key + " index " + std::to_string(idx) +
                                 " outside 1.." + std::to_string(n),
                             line_no, 0);
    };
    auto claim = [&](const std::string& key, int line_no) {
        if (!seen.insert(key).second) throw ParseError("duplicate key " + key, line_no, 0);
    };

    // Second pass: everything that needs the chart.
    for (const Line& ln : lines) {
        if (std::regex_match(ln.text, m, dim_re) || std::regex_match(ln.text, m, coords_re)) continue;
        if (std::regex_match(ln.text, m, domain_re)) {
            spec.chart.domain.push_back(detail::parse_rhs(m[1].str(), spec.chart, ln.number));
            continue;
        }
        if (std::regex_match(ln.text, m, indexed_re)) {
            const std::string head = m[1].str();
            const int i = std::stoi(m[2].str());
            const bool has_j = m[3].matched;
            const std::string rhs = m[4].str();
            if (head == "g") {
                if (!has_j) throw ParseError("metric entries need two indices: g[i][j]", ln.number, 0);
                const int j = std::stoi(m[3].str());
                check_index("g", i, ln.number);
                check_index("g", j, ln.number);
                if (i > j)
                    throw ParseError("metric entries use upper-triangle indices (i <= j): g[" +
                                         std::to_string(i) + "][" + std::to_string(j) + "]",
                                     ln.number, 0);
                std::string key = "g[" + std::to_string(i) + "][" + std::to_string(j) + "]";
                claim(key, ln.number);
                spec.metric[static_cast<size_t>(detail::sym2_index(n, i - 1, j - 1))] =
                    detail::parse_rhs(rhs, spec.chart, ln.number);
            } else if (head == "V") {
                if (has_j) throw ParseError("vector components take one index: V[i]", ln.number, 0);
                check_index("V", i, ln.number);
                std::string key = "V[" + std::to_string(i) + "]";
                claim(key, ln.number);
                spec.field[static_cast<size_t>(i - 1)] = detail::parse_rhs(rhs, spec.chart, ln.number);
                field_given[static_cast<size_t>(i - 1)] = true;
                any_field = true;
            } else { // psi
                if (has_j) throw ParseError("psi components take one index: psi[i]", ln.number, 0);
                check_index("psi", i, ln.number);
                std::string key = "psi[" + std::to_string(i) + "]";
                claim(key, ln.number);
                spec.torse_psi[static_cast<size_t>(i - 1)] =
                    detail::parse_rhs(rhs, spec.chart, ln.number);
                psi_given[static_cast<size_t>(i - 1)] = true;
                spec.has_declared_psi = true;
            }
            continue;
        }
        if (std::regex_match(ln.text, m, scalar_re)) {
            const std::string key = m[1].str();
            claim(key, ln.number);
            ScalarExpr e = detail::parse_rhs(m[2].str(), spec.chart, ln.number);
            if (key == "lambda") spec.lambda = e;
            else if (key == "f") spec.potential = e;
            else spec.torse_a = e;
            continue;
        }
        throw ParseError("unrecognized line: " + ln.text, ln.number, 0);
    }

    // Defaults and presence validation.
    for (int i = 0; i < n; ++i) {
        size_t diag = static_cast<size_t>(detail::sym2_index(n, i, i));
        if (!spec.metric[diag].valid())
            throw ParseError("diagonal metric entry required: g[" + std::to_string(i + 1) + "][" +
                             std::to_string(i + 1) + "]");
        for (int j = i + 1; j < n; ++j) {
            size_t off = static_cast<size_t>(detail::sym2_index(n, i, j));
            if (!spec.metric[off].valid()) spec.metric[off] = detail::zero_expr(spec.chart);
        }
    }
    if (!any_field) throw ParseError("missing section: V");
    for (int i = 0; i < n; ++i) {
        if (!field_given[static_cast<size_t>(i)])
            spec.field[static_cast<size_t>(i)] = detail::zero_expr(spec.chart);
        if (spec.has_declared_psi && !psi_given[static_cast<size_t>(i)])
            spec.torse_psi[static_cast<size_t>(i)] = detail::zero_expr(spec.chart);
    }
    if (!spec.has_declared_psi && spec.torse_a.has_value()) {
        // a alone declares the concircular case psi = 0
        for (int i = 0; i < n; ++i) spec.torse_psi[static_cast<size_t>(i)] = detail::zero_expr(spec.chart);
    }
    if (spec.has_declared_psi && !spec.torse_a.has_value())
        throw ParseError("psi declared without a");

    return spec;
}

/// Load and parse a manifold definition from a file on disk.
inline ManifoldSpec parse_manifold_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open manifold file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifold(buf.str(), path);
}

/// True when `x` satisfies every declared strict domain constraint.
inline bool in_domain(const ManifoldSpec& spec, std::span<const double> x) {
    for (const ScalarExpr& c : spec.chart.domain) {
        double v;
        try {
            v = evaluate_value(c, x, spec.chart);
        } catch (const EvalError&) {
            return false;
        }
        if (!(v > 0.0)) return false;
    }
    return true;
}

} // namespace einsol
