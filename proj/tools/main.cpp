// einsol: verify almost Einstein soliton structure on explicit Riemannian
// charts. Subcommands sample points on a manifold (from the built-in
// catalogue or a manifold file) and emit deterministic JSON/text reports.

#include <CLI11.hpp>

#include <einsol/einsol.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct SubcommandState {
    CLI::App* app = nullptr;
    einsol::Command command = einsol::Command::Identities;
    std::string strategy = "uniform_random";
    std::string format = "json";
    std::string only;
    double tol = 0.0;
    CLI::Option* tol_opt = nullptr;
};

void add_sampling_options(CLI::App* cmd, einsol::RunConfig& cfg, SubcommandState& st) {
    cmd->add_option("source", cfg.source,
                    "Manifold source: catalogue:<name> or a manifold file path")
        ->required();
    cmd->add_option("--points", cfg.points, "Number of sample points (1..1000000)")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
    cmd->add_option("--strategy", st.strategy, "Sampling strategy: uniform_random | grid")
        ->capture_default_str();
    st.tol_opt = cmd->add_option("--tol", st.tol, "Base tolerance override, in (0, 1e-2]");
}

void add_output_options(CLI::App* cmd, einsol::RunConfig& cfg, SubcommandState& st) {
    cmd->add_option("--format", st.format, "Report format: json | text")->capture_default_str();
    cmd->add_option("--out", cfg.out_path, "Write the report to this file instead of stdout");
}

int fail_input(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"almost Einstein soliton verification on explicit Riemannian charts"};
    app.require_subcommand(1);

    einsol::RunConfig cfg;
    std::vector<SubcommandState> subs;
    subs.reserve(6);

    auto make = [&](const char* name, const char* desc, einsol::Command command,
                    bool sampled) -> SubcommandState& {
        SubcommandState st;
        st.app = app.add_subcommand(name, desc);
        st.command = command;
        subs.push_back(st);
        SubcommandState& ref = subs.back();
        if (sampled) add_sampling_options(ref.app, cfg, ref);
        add_output_options(ref.app, cfg, ref);
        return ref;
    };

    make("curvature", "Dump Christoffel symbols, Ricci tensor, and scalar curvature at points",
         einsol::Command::Curvature, true);
    make("check-soliton", "Check the soliton equation (plain and gradient forms) and the lambda triangle",
         einsol::Command::CheckSoliton, true);
    make("lambda", "Evaluate every lambda source and their pairwise deviations",
         einsol::Command::Lambda, true);
    make("classify-field", "Least-squares torse-forming classification of the potential field",
         einsol::Command::ClassifyField, true);
    SubcommandState& idents =
        make("identities", "Evaluate the curvature/soliton identity catalogue at points",
             einsol::Command::Identities, true);
    idents.app->add_option("--only", idents.only,
                           "Comma-separated identity ids to evaluate (e.g. BOCHNER,EQ44)");
    make("list-catalogue", "List the built-in manifold catalogue", einsol::Command::ListCatalogue,
         false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const SubcommandState* active = nullptr;
    for (const SubcommandState& st : subs)
        if (st.app->parsed()) active = &st;
    if (active == nullptr) return fail_input("no subcommand selected");

    cfg.command = active->command;
    if (auto s = einsol::strategy_from_string(active->strategy); s.has_value())
        cfg.strategy = *s;
    else
        return fail_input("unknown strategy '" + active->strategy +
                          "' (expected uniform_random or grid)");
    if (active->format == "json")
        cfg.format = einsol::ReportFormat::Json;
    else if (active->format == "text")
        cfg.format = einsol::ReportFormat::Text;
    else
        return fail_input("unknown format '" + active->format + "' (expected json or text)");
    if (active->tol_opt != nullptr && active->tol_opt->count() > 0) cfg.tol_override = active->tol;

    if (!active->only.empty()) {
        std::istringstream in(active->only);
        std::string token;
        while (std::getline(in, token, ',')) {
            if (token.empty()) continue;
            auto id = einsol::identity_from_string(token);
            if (!id.has_value()) {
                std::string valid;
                for (einsol::IdentityId i : einsol::kAllIdentities) {
                    if (!valid.empty()) valid += ", ";
                    valid += einsol::to_string(i);
                }
                return fail_input("unknown identity id '" + token + "' (valid: " + valid + ")");
            }
            cfg.only.push_back(*id);
        }
    }

    einsol::RunReport report;
    try {
        report = einsol::run(cfg);
    } catch (const einsol::ParseError& e) {
        return fail_input(e.what());
    } catch (const einsol::PreconditionError& e) {
        return fail_input(e.what());
    } catch (const einsol::GeometryError& e) {
        return fail_input(e.what());
    } catch (const einsol::EvalError& e) {
        return fail_input(e.what());
    }

    const std::string rendered = einsol::render(report);
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) return fail_input("cannot open output file: " + cfg.out_path);
        out << rendered;
        if (!out.good()) return fail_input("failed writing output file: " + cfg.out_path);
    } else {
        std::cout << rendered;
    }
    return einsol::exit_code(report);
}
