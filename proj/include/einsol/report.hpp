#pragma once

#include <einsol/catalogue.hpp>
#include <einsol/soliton.hpp>

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace einsol {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Curvature, CheckSoliton, Lambda, ClassifyField, Identities, ListCatalogue };

inline const char* to_string(Command c) {
    switch (c) {
        case Command::Curvature: return "curvature";
        case Command::CheckSoliton: return "check-soliton";
        case Command::Lambda: return "lambda";
        case Command::ClassifyField: return "classify-field";
        case Command::Identities: return "identities";
        case Command::ListCatalogue: return "list-catalogue";
    }
    return "?";
}

enum class ReportFormat { Json, Text };

struct RunConfig {
    std::string source; // `catalogue:<name>` or a manifold file path
    Command command = Command::Identities;
    int points = 100;
    std::uint64_t seed = 42;
    SampleStrategy strategy = SampleStrategy::UniformRandom;
    std::optional<double> tol_override; // must lie in (0, 1e-2]
    std::string out_path;               // empty = stdout
    ReportFormat format = ReportFormat::Json;
    std::vector<IdentityId> only; // identity filter; empty = all
};

/// One named check at one point; identity reports and the soliton/λ checks
/// share this shape so the report schema stays uniform.
struct CheckItem {
    std::string id;
    std::vector<double> left;
    std::vector<double> right;
    double residual = 0.0;
    Verdict verdict = Verdict::Skip;
    std::string detail;

    static CheckItem from_identity(const IdentityReport& rep) {
        CheckItem item;
        item.id = to_string(rep.id);
        item.left = rep.left;
        item.right = rep.right;
        item.residual = rep.residual;
        item.verdict = rep.verdict;
        item.detail = rep.detail;
        return item;
    }
};

struct ClassificationBlock {
    bool ok = false;
    std::string error; // set when the fit is rank-deficient (V = 0)
    double a = 0.0;
    double psi_norm = 0.0;
    double residual = 0.0;
    bool torse_forming = false;
    bool concircular = false;
    bool gradient_dual_closed = false;
    bool solenoidal = false;
    std::optional<double> declared_deviation; // |a_declared - a_fit|
};

struct LambdaBlock {
    std::string source;
    double value = 0.0;
    std::optional<double> declared, theorem1, trace, prop3, solenoidal;
    double max_deviation = 0.0;
};

struct CurvatureBlock {
    std::vector<double> gamma; // n^3 values, index (k*n + i)*n + j for Γ^k_ij
    std::vector<double> ric;   // n^2 values, row-major
    double scal = 0.0;
};

struct PointBlock {
    std::vector<double> coords;
    std::vector<CheckItem> items;
    std::optional<ClassificationBlock> classification;
    std::optional<LambdaBlock> lambda;
    std::optional<CurvatureBlock> curvature;
};

struct IdSummary {
    std::string id;
    double max_residual = 0.0;
    int pass = 0, fail = 0, skip = 0;
};

struct ClassificationSummary {
    int points = 0;
    int torse_forming = 0;
    int concircular = 0;
    int gradient_dual_closed = 0;
    int solenoidal = 0;
    int errors = 0;
};

struct RunReport {
    std::string version = kToolVersion;
    RunConfig config;
    std::vector<PointBlock> points;
    std::vector<IdSummary> summary; // per check id, in first-seen order
    std::optional<ClassificationSummary> classification_summary;
    std::optional<double> lambda_max_deviation; // across points, when λ blocks exist
    std::vector<const CatalogueEntry*> listing;  // list-catalogue only
    bool any_fail = false;
};

// ---------------------------------------------------------------------------
// Run
// ---------------------------------------------------------------------------

namespace detail {

inline LambdaBlock lambda_block(const PointState& st) {
    LambdaBlock b;
    b.source = to_string(st.lambda.source);
    b.value = st.lambda.resolved.value();
    b.declared = st.lambda.declared;
    b.theorem1 = st.lambda.theorem1;
    b.trace = st.lambda.trace;
    b.prop3 = st.lambda.prop3;
    b.solenoidal = st.lambda.solenoidal;
    b.max_deviation = st.lambda.max_pairwise_deviation;
    return b;
}

inline ClassificationBlock classification_block(const PointState& st) {
    ClassificationBlock b;
    if (st.field_vanishes) {
        b.error = "vanishing potential field: |V|^2 <= 1e-14 at the point "
                  "(normal equations rank-deficient)";
        return b;
    }
    b.ok = true;
    b.a = st.fit.a.value();
    b.psi_norm = st.fit.psi_norm;
    b.residual = st.fit.residual;
    b.torse_forming = st.fit.is_torse_forming;
    b.concircular = st.fit.is_concircular;
    b.gradient_dual_closed = st.fit.is_gradient_dual_closed;
    b.solenoidal = st.fit.is_solenoidal;
    b.declared_deviation = st.declared_fit_deviation;
    return b;
}

inline CurvatureBlock curvature_block(const PointState& st) {
    CurvatureBlock b;
    const int n = st.n;
    b.gamma.reserve(static_cast<size_t>(n) * static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b.gamma.push_back(st.conn.G(k, i, j).value());
    b.ric.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.ric.push_back(st.ric.value({i, j}));
    b.scal = st.scal.value();
    return b;
}

inline CheckItem soliton_item(const PointState& st) {
    CheckItem item;
    item.id = "EQ1";
    const int n = st.n;
    const double shift = 0.5 * st.scal.value() + st.lambda.resolved.value();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            item.left.push_back(0.5 * st.lie.value({i, j}) + st.ric.value({i, j}));
            item.right.push_back(shift * st.md.g_value(i, j));
        }
    item.residual = rel_residual_span(item.left, item.right);
    item.verdict = item.residual < st.tol.identity ? Verdict::Pass : Verdict::Fail;
    return item;
}

inline CheckItem gradient_items(const PointState& st, bool grad_match) {
    CheckItem item;
    item.id = grad_match ? "GRAD_F_MATCHES_V" : "EQ1_GRADIENT";
    if (!st.f_gh.has_value()) {
        item.verdict = Verdict::Skip;
        item.detail = "precondition not met: potential f not declared";
        return item;
    }
    GradientForms forms = gradient_forms_at(st);
    item.residual = grad_match ? forms.grad_match_residual : forms.hess_form_residual;
    item.verdict = item.residual < st.tol.identity ? Verdict::Pass : Verdict::Fail;
    return item;
}

inline CheckItem lambda_triangle_item(const PointState& st, const char* id) {
    CheckItem item;
    item.id = id;
    for (const auto& c :
         {st.lambda.declared, st.lambda.theorem1, st.lambda.trace, st.lambda.prop3})
        if (c.has_value()) {
            item.left.push_back(*c);
            item.right.push_back(st.lambda.resolved.value());
        }
    item.residual = st.lambda.max_pairwise_deviation;
    item.verdict = item.residual < st.tol.lambda_agreement ? Verdict::Pass : Verdict::Fail;
    if (item.left.size() < 2) item.detail = "single lambda source available";
    return item;
}

inline void accumulate(std::vector<IdSummary>& summary, const CheckItem& item) {
    IdSummary* slot = nullptr;
    for (IdSummary& s : summary)
        if (s.id == item.id) {
            slot = &s;
            break;
        }
    if (slot == nullptr) {
        summary.push_back(IdSummary{item.id, 0.0, 0, 0, 0});
        slot = &summary.back();
    }
    switch (item.verdict) {
        case Verdict::Pass: ++slot->pass; break;
        case Verdict::Fail: ++slot->fail; break;
        case Verdict::Skip: ++slot->skip; break;
    }
    if (item.verdict != Verdict::Skip)
        slot->max_residual = std::max(slot->max_residual, item.residual);
}

} // namespace detail

/// Resolve the config's source into a manifold plus sampling box.
inline ManifoldSpec resolve_source(const RunConfig& config, SampleBox& box) {
    constexpr std::string_view prefix = "catalogue:";
    if (config.source.starts_with(prefix)) {
        const std::string name = config.source.substr(prefix.size());
        const CatalogueEntry* entry = find_entry(name);
        if (entry == nullptr) throw ParseError("unknown catalogue manifold: " + name);
        box = entry->box;
        return parse_manifold(entry->document, entry->name);
    }
    ManifoldSpec spec = parse_manifold_file(config.source);
    box = default_box(spec);
    return spec;
}

inline void validate_config(const RunConfig& config) {
    if (config.points < 1 || config.points > 1000000)
        throw ParseError("point count must lie in [1, 1000000]");
    if (config.tol_override.has_value() &&
        !(*config.tol_override > 0.0 && *config.tol_override <= 1e-2))
        throw ParseError("tolerance override must lie in (0, 1e-2]");
    if (config.source.empty() && config.command != Command::ListCatalogue)
        throw ParseError("missing manifold source");
}

/// Execute the configured command. Throws ParseError/GeometryError/EvalError
/// for input-level problems (exit code 2 in the CLI); per-point dimension
/// guards and skipped preconditions are recorded in the report instead.
inline RunReport run(const RunConfig& config) {
    validate_config(config);
    RunReport report;
    report.config = config;

    if (config.command == Command::ListCatalogue) {
        for (const CatalogueEntry& e : catalogue()) report.listing.push_back(&e);
        return report;
    }

    SampleBox box;
    ManifoldSpec spec = resolve_source(config, box);
    const Tolerances tol = config.tol_override.has_value()
                               ? Tolerances::with_base(*config.tol_override)
                               : Tolerances{};
    const auto pts = sample_points(spec, box, config.points, config.seed, config.strategy);

    double lambda_max_dev = 0.0;
    bool have_lambda = false;
    ClassificationSummary cls;

    for (const auto& x : pts) {
        PointState st = analyze_point(spec, x, tol);
        PointBlock block;
        block.coords = x;

        switch (config.command) {
            case Command::Curvature: {
                block.curvature = detail::curvature_block(st);
                break;
            }
            case Command::CheckSoliton: {
                block.items.push_back(detail::soliton_item(st));
                block.items.push_back(detail::gradient_items(st, /*grad_match=*/false));
                block.items.push_back(detail::gradient_items(st, /*grad_match=*/true));
                block.items.push_back(detail::lambda_triangle_item(st, "LAMBDA_TRIANGLE"));
                block.lambda = detail::lambda_block(st);
                break;
            }
            case Command::Lambda: {
                block.items.push_back(detail::lambda_triangle_item(st, "LAMBDA_AGREEMENT"));
                block.lambda = detail::lambda_block(st);
                break;
            }
            case Command::ClassifyField: {
                block.classification = detail::classification_block(st);
                break;
            }
            case Command::Identities: {
                for (const IdentityReport& rep : identities_at(st, config.only))
                    block.items.push_back(CheckItem::from_identity(rep));
                block.lambda = detail::lambda_block(st);
                break;
            }
            case Command::ListCatalogue: break;
        }

        for (const CheckItem& item : block.items) {
            detail::accumulate(report.summary, item);
            if (item.verdict == Verdict::Fail) report.any_fail = true;
        }
        if (block.lambda.has_value()) {
            have_lambda = true;
            lambda_max_dev = std::max(lambda_max_dev, block.lambda->max_deviation);
        }
        if (block.classification.has_value()) {
            ++cls.points;
            if (!block.classification->ok) ++cls.errors;
            if (block.classification->torse_forming) ++cls.torse_forming;
            if (block.classification->concircular) ++cls.concircular;
            if (block.classification->gradient_dual_closed) ++cls.gradient_dual_closed;
            if (block.classification->solenoidal) ++cls.solenoidal;
        }
        report.points.push_back(std::move(block));
    }

    if (have_lambda) report.lambda_max_deviation = lambda_max_dev;
    if (config.command == Command::ClassifyField) report.classification_summary = cls;
    return report;
}

inline int exit_code(const RunReport& report) { return report.any_fail ? 1 : 0; }

// ---------------------------------------------------------------------------
// Rendering: canonical JSON plus a text projection with the same numbers
// ---------------------------------------------------------------------------

namespace detail {

/// Fixed-width numeric formatting: 17 significant digits round-trips doubles
/// exactly, keeping reports byte-stable across runs.
inline std::string fmt_double(double v) {
    if (!std::isfinite(v)) return v > 0 ? "\"inf\"" : (v < 0 ? "\"-inf\"" : "\"nan\"");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

/// Emits JSON with explicit key order; no associative containers touch the
/// output, so serialization is deterministic by construction.
class JsonWriter {
public:
    std::string take() { return std::move(buf_); }

    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(std::string_view k) {
        comma();
        buf_ += '"';
        buf_ += json_escape(k);
        buf_ += "\":";
        just_keyed_ = true;
    }

    void value_string(std::string_view v) {
        comma();
        buf_ += '"';
        buf_ += json_escape(v);
        buf_ += '"';
    }
    void value_number(double v) {
        comma();
        buf_ += fmt_double(v);
    }
    void value_int(long long v) {
        comma();
        buf_ += std::to_string(v);
    }
    void value_uint(std::uint64_t v) {
        comma();
        buf_ += std::to_string(v);
    }
    void value_bool(bool v) {
        comma();
        buf_ += v ? "true" : "false";
    }
    void value_null() {
        comma();
        buf_ += "null";
    }

    void number_array(std::span<const double> vals) {
        begin_array();
        for (double v : vals) value_number(v);
        end_array();
    }

private:
    void open(char c) {
        comma();
        buf_ += c;
        fresh_ = true;
    }
    void close(char c) {
        buf_ += c;
        fresh_ = false;
        just_keyed_ = false;
    }
    void comma() {
        if (just_keyed_) {
            just_keyed_ = false;
            return;
        }
        if (!fresh_ && !buf_.empty() && buf_.back() != '{' && buf_.back() != '[') buf_ += ',';
        fresh_ = false;
    }

    std::string buf_;
    bool fresh_ = true;
    bool just_keyed_ = false;
};

inline void write_config(JsonWriter& w, const RunConfig& c) {
    w.begin_object();
    w.key("source");
    w.value_string(c.source);
    w.key("command");
    w.value_string(to_string(c.command));
    w.key("points");
    w.value_int(c.points);
    w.key("seed");
    w.value_uint(c.seed);
    w.key("strategy");
    w.value_string(to_string(c.strategy));
    w.key("tol");
    if (c.tol_override.has_value())
        w.value_number(*c.tol_override);
    else
        w.value_null();
    w.key("format");
    w.value_string(c.format == ReportFormat::Json ? "json" : "text");
    w.key("out");
    if (c.out_path.empty())
        w.value_null();
    else
        w.value_string(c.out_path);
    w.key("only");
    w.begin_array();
    for (IdentityId id : c.only) w.value_string(to_string(id));
    w.end_array();
    w.end_object();
}

inline void write_optional_number(JsonWriter& w, const std::optional<double>& v) {
    if (v.has_value())
        w.value_number(*v);
    else
        w.value_null();
}

inline void write_item(JsonWriter& w, const CheckItem& item) {
    w.begin_object();
    w.key("id");
    w.value_string(item.id);
    w.key("verdict");
    w.value_string(to_string(item.verdict));
    w.key("residual");
    w.value_number(item.residual);
    w.key("left");
    w.number_array(item.left);
    w.key("right");
    w.number_array(item.right);
    w.key("detail");
    w.value_string(item.detail);
    w.end_object();
}

inline void write_point(JsonWriter& w, const PointBlock& p) {
    w.begin_object();
    w.key("coords");
    w.number_array(p.coords);
    w.key("identities");
    w.begin_array();
    for (const CheckItem& item : p.items) write_item(w, item);
    w.end_array();
    w.key("classification");
    if (p.classification.has_value()) {
        const ClassificationBlock& c = *p.classification;
        w.begin_object();
        w.key("ok");
        w.value_bool(c.ok);
        w.key("error");
        w.value_string(c.error);
        w.key("a");
        w.value_number(c.a);
        w.key("psi_norm");
        w.value_number(c.psi_norm);
        w.key("residual");
        w.value_number(c.residual);
        w.key("torse_forming");
        w.value_bool(c.torse_forming);
        w.key("concircular");
        w.value_bool(c.concircular);
        w.key("gradient_dual_closed");
        w.value_bool(c.gradient_dual_closed);
        w.key("solenoidal");
        w.value_bool(c.solenoidal);
        w.key("declared_a_deviation");
        write_optional_number(w, c.declared_deviation);
        w.end_object();
    } else {
        w.value_null();
    }
    w.key("lambda");
    if (p.lambda.has_value()) {
        const LambdaBlock& l = *p.lambda;
        w.begin_object();
        w.key("source");
        w.value_string(l.source);
        w.key("value");
        w.value_number(l.value);
        w.key("declared");
        write_optional_number(w, l.declared);
        w.key("theorem1");
        write_optional_number(w, l.theorem1);
        w.key("trace");
        write_optional_number(w, l.trace);
        w.key("prop3");
        write_optional_number(w, l.prop3);
        w.key("solenoidal");
        write_optional_number(w, l.solenoidal);
        w.key("max_deviation");
        w.value_number(l.max_deviation);
        w.end_object();
    } else {
        w.value_null();
    }
    if (p.curvature.has_value()) {
        w.key("curvature");
        w.begin_object();
        w.key("gamma");
        w.number_array(p.curvature->gamma);
        w.key("ric");
        w.number_array(p.curvature->ric);
        w.key("scal");
        w.value_number(p.curvature->scal);
        w.end_object();
    }
    w.end_object();
}

} // namespace detail

inline std::string render_json(const RunReport& report) {
    detail::JsonWriter w;
    w.begin_object();
    w.key("version");
    w.value_string(report.version);
    w.key("config");
    detail::write_config(w, report.config);

    w.key("summary");
    w.begin_object();
    w.key("overall");
    w.value_string(report.any_fail ? "fail" : "pass");
    w.key("checks");
    w.begin_array();
    for (const IdSummary& s : report.summary) {
        w.begin_object();
        w.key("id");
        w.value_string(s.id);
        w.key("max_residual");
        w.value_number(s.max_residual);
        w.key("pass");
        w.value_int(s.pass);
        w.key("fail");
        w.value_int(s.fail);
        w.key("skip");
        w.value_int(s.skip);
        w.end_object();
    }
    w.end_array();
    w.key("lambda_max_deviation");
    detail::write_optional_number(w, report.lambda_max_deviation);
    w.key("classification");
    if (report.classification_summary.has_value()) {
        const ClassificationSummary& c = *report.classification_summary;
        w.begin_object();
        w.key("points");
        w.value_int(c.points);
        w.key("torse_forming");
        w.value_int(c.torse_forming);
        w.key("concircular");
        w.value_int(c.concircular);
        w.key("gradient_dual_closed");
        w.value_int(c.gradient_dual_closed);
        w.key("solenoidal");
        w.value_int(c.solenoidal);
        w.key("errors");
        w.value_int(c.errors);
        w.end_object();
    } else {
        w.value_null();
    }
    w.end_object();

    if (!report.listing.empty() || report.config.command == Command::ListCatalogue) {
        w.key("catalogue");
        w.begin_array();
        for (const CatalogueEntry* e : report.listing) {
            w.begin_object();
            w.key("name");
            w.value_string(e->name);
            w.key("description");
            w.value_string(e->description);
            w.key("box");
            w.begin_array();
            for (const auto& iv : e->box) {
                w.begin_array();
                w.value_number(iv[0]);
                w.value_number(iv[1]);
                w.end_array();
            }
            w.end_array();
            w.end_object();
        }
        w.end_array();
    }

    w.key("points");
    w.begin_array();
    for (const PointBlock& p : report.points) detail::write_point(w, p);
    w.end_array();

    w.end_object();
    std::string out = w.take();
    out += '\n';
    return out;
}

inline std::string render_text(const RunReport& report) {
    std::string out;
    auto line = [&out](const std::string& s) {
        out += s;
        out += '\n';
    };
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };

    line("einsol " + report.version);
    line("source:   " + (report.config.source.empty() ? std::string("(none)") : report.config.source));
    line("command:  " + std::string(to_string(report.config.command)));
    line("points:   " + std::to_string(report.config.points) + "  seed: " +
         std::to_string(report.config.seed) + "  strategy: " + to_string(report.config.strategy));
    line("tol:      " +
         (report.config.tol_override.has_value() ? num(*report.config.tol_override)
                                                 : std::string("(default)")));
    line("");

    if (report.config.command == Command::ListCatalogue) {
        for (const CatalogueEntry* e : report.listing) {
            line(e->name);
            line("  " + e->description);
        }
        return out;
    }

    for (size_t pi = 0; pi < report.points.size(); ++pi) {
        const PointBlock& p = report.points[pi];
        std::string coords;
        for (size_t i = 0; i < p.coords.size(); ++i) {
            if (i) coords += ", ";
            coords += num(p.coords[i]);
        }
        line("point " + std::to_string(pi) + ": (" + coords + ")");
        for (const CheckItem& item : p.items) {
            std::string row = "  " + item.id + ": " + to_string(item.verdict) +
                              "  residual " + num(item.residual);
            if (!item.detail.empty()) row += "  [" + item.detail + "]";
            line(row);
        }
        if (p.classification.has_value()) {
            const ClassificationBlock& c = *p.classification;
            if (!c.ok) {
                line("  classification: error  [" + c.error + "]");
            } else {
                line("  classification: a = " + num(c.a) + ", psi_norm = " + num(c.psi_norm) +
                     ", residual = " + num(c.residual));
                std::string flags = "  flags:";
                if (c.torse_forming) flags += " torse-forming";
                if (c.concircular) flags += " concircular";
                if (c.gradient_dual_closed) flags += " gradient-dual-closed";
                if (c.solenoidal) flags += " solenoidal";
                if (!c.torse_forming && !c.gradient_dual_closed && !c.solenoidal)
                    flags += " (none)";
                line(flags);
            }
        }
        if (p.lambda.has_value()) {
            const LambdaBlock& l = *p.lambda;
            std::string row = "  lambda = " + num(l.value) + " (" + l.source + ")";
            if (l.theorem1.has_value()) row += ", theorem1 = " + num(*l.theorem1);
            if (l.trace.has_value()) row += ", trace = " + num(*l.trace);
            if (l.prop3.has_value()) row += ", prop3 = " + num(*l.prop3);
            if (l.solenoidal.has_value()) row += ", solenoidal = " + num(*l.solenoidal);
            row += ", max deviation = " + num(l.max_deviation);
            line(row);
        }
        if (p.curvature.has_value()) {
            line("  scal = " + num(p.curvature->scal));
            std::string ric = "  ric  =";
            for (double v : p.curvature->ric) ric += " " + num(v);
            line(ric);
        }
    }

    line("");
    line("summary:");
    for (const IdSummary& s : report.summary)
        line("  " + s.id + ": max residual " + num(s.max_residual) + "  pass " +
             std::to_string(s.pass) + "  fail " + std::to_string(s.fail) + "  skip " +
             std::to_string(s.skip));
    if (report.lambda_max_deviation.has_value())
        line("  lambda max deviation: " + num(*report.lambda_max_deviation));
    if (report.classification_summary.has_value()) {
        const ClassificationSummary& c = *report.classification_summary;
        line("  classification: " + std::to_string(c.points) + " points, torse-forming " +
             std::to_string(c.torse_forming) + ", concircular " + std::to_string(c.concircular) +
             ", gradient-dual-closed " + std::to_string(c.gradient_dual_closed) +
             ", solenoidal " + std::to_string(c.solenoidal) + ", errors " +
             std::to_string(c.errors));
    }
    line("overall: " + std::string(report.any_fail ? "fail" : "pass"));
    return out;
}

inline std::string render(const RunReport& report) {
    return report.config.format == ReportFormat::Json ? render_json(report) : render_text(report);
}

} // namespace einsol
