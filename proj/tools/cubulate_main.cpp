#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "cubulate/errors.hpp"
#include "cubulate/refinement.hpp"
#include "cubulate/report.hpp"

using namespace cubulate;

namespace {

// exit codes: 0 success, 1 verification counterexample,
// 2 horizon-inconclusive, 3 input error
constexpr int kOk = 0;
constexpr int kCounterexample = 1;
constexpr int kInconclusive = 2;
constexpr int kInputError = 3;

struct CommonFlags {
    int radius = -1;
    int n_max = -1;
    int margin = -1;
    uint32_t wall_budget = 0;
    std::string format = "human";
    std::string output;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--radius", f.radius, "truncation ball radius")
        ->envname("CUBULATE_RADIUS");
    cmd->add_option("--n-max", f.n_max, "largest exponent tried in nesting searches")
        ->envname("CUBULATE_N_MAX");
    cmd->add_option("--margin", f.margin, "distance from the boundary where claims count")
        ->envname("CUBULATE_MARGIN");
    cmd->add_option("--wall-budget", f.wall_budget, "largest allowed wall family")
        ->envname("CUBULATE_WALL_BUDGET");
    cmd->add_option("--format", f.format, "human, structured, or dot")
        ->check(CLI::IsMember({"human", "structured", "dot"}))
        ->envname("CUBULATE_FORMAT");
    cmd->add_option("--output", f.output, "write the report here instead of stdout");
}

ContextOptions make_options(const GroupModel& model, const CommonFlags& f) {
    ContextOptions opts = ContextOptions::from(model.horizons());
    if (f.radius >= 0) opts.radius = f.radius;
    if (f.n_max >= 0) opts.n_max = f.n_max;
    if (f.margin >= 0) opts.margin = f.margin;
    if (f.wall_budget > 0) opts.wall_budget = f.wall_budget;
    return opts;
}

void emit(const CommonFlags& f, const ReportDoc& doc, const std::string& dot = "") {
    if (f.format == "dot" && dot.empty())
        throw input_error("this subcommand has no DOT rendering");
    const std::string& text = f.format == "structured" ? doc.json
                              : f.format == "dot"      ? dot
                                                       : doc.human;
    if (f.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(f.output, std::ios::binary);
        if (!out) throw input_error("cannot write to '" + f.output + "'");
        out << text;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_build_dual(const std::string& path, const CommonFlags& f, uint32_t verify_cap) {
    auto ws = std::make_shared<Wallspace>(Wallspace::from_json_text(read_file(path)));
    BuildOptions build;
    if (f.wall_budget > 0) build.wall_budget = f.wall_budget;
    CubeComplex X = build_dual(ws, build);

    MedianVerification v;
    if (X.vertex_count() <= verify_cap) {
        v.ran = true;
        v.result = verify_median_graph(X);
        // principal distance equals separation when no wall has a core
        bool any_core = false;
        for (const Wall& w : ws->walls())
            if (w.core.any()) any_core = true;
        if (!any_core && v.result.ok) {
            Graph g = X.skeleton();
            for (uint32_t p = 0; p < ws->point_count() && v.duality_ok; ++p) {
                auto dist =
                    g.distances_from(*X.vertex_index(principal_orientation(*ws, p)));
                for (uint32_t q = 0; q < ws->point_count(); ++q) {
                    auto vq = X.vertex_index(principal_orientation(*ws, q));
                    if (dist[*vq] != static_cast<int>(ws->wall_separation(p, q))) {
                        v.duality_ok = false;
                        break;
                    }
                }
            }
        }
    }
    emit(f, report_complex(X, v), to_dot(X, "dual"));
    if (v.ran && (!v.result.ok || !v.duality_ok)) return kCounterexample;
    return kOk;
}

int run_geometry(const std::string& path, const CommonFlags& f, uint32_t circuit_max) {
    auto ws = std::make_shared<Wallspace>(Wallspace::from_json_text(read_file(path)));
    BuildOptions build;
    if (f.wall_budget > 0) build.wall_budget = f.wall_budget;
    CubeComplex X = build_dual(ws, build);
    GeometryReport rep = geometry_report(X.skeleton(), circuit_max);
    emit(f, report_geometry(rep, ws->name().empty() ? path : ws->name()));
    return kOk;
}

int run_skewer(const std::string& spec, const std::string& element, const CommonFlags& f) {
    GroupModel model = GroupModel::load(spec);
    ContextOptions opts = make_options(model, f);
    ActionContext ctx = ActionContext::over_group(model, opts);
    SkewerOutcome outcome = skewer_search(ctx, model.parse(element), opts.n_max);
    emit(f, report_skewer(ctx, outcome));
    return outcome.certificate ? kOk : kInconclusive;
}

int run_axis(const std::string& spec, const std::string& element, const CommonFlags& f) {
    GroupModel model = GroupModel::load(spec);
    ContextOptions opts = make_options(model, f);
    ActionContext ctx = ActionContext::over_group(model, opts);
    std::vector<TranslatedWall> base;
    for (uint32_t d = 0; d < model.wall_data().size(); ++d)
        base.push_back({d, model.identity()});
    AxisSepBounds bounds{opts.n_max, opts.radius};
    AxisSepOutcome outcome = axis_separation_search(ctx, model.parse(element), base, bounds);
    emit(f, report_axis(ctx, outcome));
    return outcome.certificate ? kOk : kInconclusive;
}

int run_refine(const std::string& spec, const CommonFlags& f) {
    GroupModel model = GroupModel::load(spec);
    ContextOptions opts = make_options(model, f);
    ActionContext X = ActionContext::over_group(model, opts);
    RefineReport refine = refine_structure(model, X, opts);
    emit(f, report_refine(model, refine));
    if (refine.ok) return kOk;
    return refine.failure.empty() ? kInconclusive : kCounterexample;
}

int run_audit(const std::string& spec, const CommonFlags& f) {
    GroupModel model = GroupModel::load(spec);
    ContextOptions opts = make_options(model, f);
    ActionContext X = ActionContext::over_group(model, opts);
    RefineReport refine = refine_structure(model, X, opts);
    if (!refine.ok) {
        emit(f, report_refine(model, refine));
        return refine.failure.empty() ? kInconclusive : kCounterexample;
    }
    AuditReport audit = relatively_geometric_audit(model, refine.entries, opts);
    emit(f, report_audit(model, audit, &refine));
    return audit.ok ? kOk : kCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual cube complexes from finite wallspaces, with group actions,\n"
                 "skewering and axis separation certificates, peripheral refinement,\n"
                 "and relatively geometric audits at truncation scale"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string input;
    std::string element;
    uint32_t verify_cap = 1000;
    uint32_t circuit_max = 8;

    auto* build = app.add_subcommand("build-dual",
                                     "build the dual complex of a wallspace file and verify "
                                     "its median structure");
    build->add_option("wallspace", input, "wallspace JSON file")->required();
    build->add_option("--verify-cap", verify_cap,
                      "largest vertex count for the exhaustive median check");
    add_common(build, flags);

    auto* geometry = app.add_subcommand(
        "geometry", "bottleneck, hyperbolicity, and circuit profile of a dual complex");
    geometry->add_option("wallspace", input, "wallspace JSON file")->required();
    geometry->add_option("--circuit-max", circuit_max, "largest circuit length profiled");
    add_common(geometry, flags);

    auto* skewer =
        app.add_subcommand("skewer", "search for a hyperplane skewered by an element");
    skewer->add_option("model", input, "group model file or builtin:NAME")->required();
    skewer->add_option("--element", element, "group element word")->required();
    add_common(skewer, flags);

    auto* axis = app.add_subcommand("axis-sep",
                                    "search for an axis separation certificate over the "
                                    "model's wall data");
    axis->add_option("model", input, "group model file or builtin:NAME")->required();
    axis->add_option("--element", element, "group element word")->required();
    add_common(axis, flags);

    auto* refine = app.add_subcommand("refine", "refine the peripheral structure");
    refine->add_option("model", input, "group model file or builtin:NAME")->required();
    add_common(refine, flags);

    auto* audit = app.add_subcommand(
        "audit", "refine, then audit the three conditions of a relatively geometric action");
    audit->add_option("model", input, "group model file or builtin:NAME")->required();
    add_common(audit, flags);

    auto* example = app.add_subcommand("example-abc",
                                       "run the built-in three-factor example end to end");
    add_common(example, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return run_build_dual(input, flags, verify_cap);
        if (geometry->parsed()) return run_geometry(input, flags, circuit_max);
        if (skewer->parsed()) return run_skewer(input, element, flags);
        if (axis->parsed()) return run_axis(input, element, flags);
        if (refine->parsed()) return run_refine(input, flags);
        if (audit->parsed()) return run_audit(input, flags);
        if (example->parsed()) return run_audit("builtin:abc", flags);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kInputError;
    } catch (const horizon_error& e) {
        std::cerr << "horizon: " << e.what() << "\n";
        return kInconclusive;
    } catch (const verification_error& e) {
        std::cerr << "verification counterexample: " << e.what() << "\n";
        return kCounterexample;
    }
    return kInputError;
}
