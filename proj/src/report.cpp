#include "cubulate/report.hpp"

#include <json.hpp>

#include <sstream>

namespace cubulate {

namespace {

using nlohmann::json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json census_json(const CubeComplex& X) {
    json t = json::array();
    for (uint32_t k = 0; k < X.census().size(); ++k)
        t.push_back({{"dimension", k}, {"count", X.census()[k]}});
    return t;
}

std::string census_human(const CubeComplex& X) {
    std::ostringstream out;
    out << "  dim | count\n";
    for (uint32_t k = 0; k < X.census().size(); ++k)
        out << "  " << k << "   | " << X.census()[k] << "\n";
    return out.str();
}

json geometry_json(const GeometryReport& g) {
    json j;
    j["vertices"] = g.vertex_count;
    j["edges"] = g.edge_count;
    j["bottleneck_delta"] = g.bottleneck;
    j["hyperbolicity_delta"] = g.hyperbolicity.str();
    j["hyperbolicity_bound"] = g.hyperbolicity_bound().str();
    j["hyperbolicity_within_bound"] = g.hyperbolicity <= g.hyperbolicity_bound();
    json profile = json::array();
    for (uint32_t i = 0; i < g.circuit_profile.size(); ++i)
        profile.push_back({{"length", i + 3}, {"circuits", g.circuit_profile[i]}});
    j["circuit_profile"] = profile;
    // circuit counts at a fixed length are a finite-scale stand-in for
    // fineness; the right length profile is a modeling choice
    j["circuit_profile_note"] = "finite-scale fineness diagnostic";
    return j;
}

std::string geometry_human(const GeometryReport& g, const std::string& name) {
    std::ostringstream out;
    out << "geometry of " << name << ": " << g.vertex_count << " vertices, " << g.edge_count
        << " edges\n";
    out << "  bottleneck delta = " << g.bottleneck << "\n";
    out << "  hyperbolicity delta = " << g.hyperbolicity.str() << " (recorded bound "
        << g.hyperbolicity_bound().str() << ")\n";
    out << "  circuits through the busiest edge, by length:";
    for (uint32_t i = 0; i < g.circuit_profile.size(); ++i)
        out << " " << (i + 3) << ":" << g.circuit_profile[i];
    out << "\n";
    return out.str();
}

json skewer_json(const ActionContext& ctx, const SkewerCertificate& c) {
    json j;
    j["type"] = "skewer";
    j["element"] = ctx.model().display(c.element);
    j["wall"] = c.wall;
    j["wall_label"] = c.wall_label;
    j["side"] = std::string(1, sign_char(c.side));
    j["exponent"] = c.exponent;
    j["witness"] = ctx.point_name(c.witness);
    j["radius"] = c.radius;
    j["margin"] = c.margin;
    j["replayed"] = true;
    return j;
}

json axis_json(const ActionContext& ctx, const AxisSepCertificate& c) {
    json j;
    j["type"] = "axis-separation";
    j["element"] = ctx.model().display(c.element);
    j["wall_label"] = c.wall_label;
    j["conjugator"] = ctx.model().display(c.conjugator);
    j["side"] = std::string(1, sign_char(c.side));
    j["exponent"] = c.exponent;
    j["witness"] = ctx.point_name(c.witness);
    j["radius"] = c.radius;
    j["margin"] = c.margin;
    j["replayed"] = true;
    return j;
}

json stabilizer_json(const GroupModel& model, const StabilizerInfo& s) {
    json j;
    j["vertex"] = s.vertex;
    j["orbit_size"] = s.orbit_size;
    j["orbit_hit_horizon"] = s.orbit_hit_horizon;
    json gens = json::array();
    for (const auto& g : s.gens) gens.push_back(model.display(g));
    j["generators"] = gens;
    j["classification"] = s.finite ? "finite" : "infinite-at-horizon";
    if (s.finite) j["order"] = s.order;
    return j;
}

}  // namespace

ReportDoc report_complex(const CubeComplex& X, const MedianVerification& v) {
    json j;
    j["wallspace"] = X.wallspace().name();
    j["walls"] = X.wallspace().wall_count();
    j["census"] = census_json(X);
    j["dimension"] = X.dimension();
    json hyps = json::array();
    for (uint32_t w = 0; w < X.wallspace().wall_count(); ++w) {
        json h;
        h["wall"] = w;
        h["visible"] = X.wall_visible(w);
        if (X.wall_visible(w)) {
            h["dual_edges"] = X.hyperplane(w).dual_edges.size();
            h["plus_side"] = X.hyperplane(w).plus_side.size();
            h["minus_side"] = X.hyperplane(w).minus_side.size();
        }
        hyps.push_back(h);
    }
    j["hyperplanes"] = hyps;
    if (v.ran) {
        j["median_check"] = v.result.ok;
        if (!v.result.ok) {
            j["median_counterexample"] = {v.result.u, v.result.v, v.result.w};
            j["median_reason"] = v.result.reason;
        }
        j["duality_check"] = v.duality_ok;
    }

    std::ostringstream out;
    out << "dual complex of '" << X.wallspace().name() << "': " << X.vertex_count()
        << " vertices, " << X.edges().size() << " edges, dimension " << X.dimension() << "\n";
    out << census_human(X);
    if (v.ran) {
        out << "median graph check: " << (v.result.ok ? "pass" : "FAIL") << "\n";
        if (!v.result.ok)
            out << "  counterexample triple (" << v.result.u << "," << v.result.v << ","
                << v.result.w << "): " << v.result.reason << "\n";
        out << "duality check (distance = separation): " << (v.duality_ok ? "pass" : "FAIL")
            << "\n";
    }
    return {dump(j), out.str()};
}

ReportDoc report_geometry(const GeometryReport& g, const std::string& name) {
    json j = geometry_json(g);
    j["name"] = name;
    return {dump(j), geometry_human(g, name)};
}

ReportDoc report_skewer(const ActionContext& ctx, const SkewerOutcome& outcome) {
    json j;
    std::ostringstream out;
    if (outcome.certificate) {
        j = skewer_json(ctx, *outcome.certificate);
        const auto& c = *outcome.certificate;
        out << "skewer certificate: " << ctx.model().display(c.element) << "^" << c.exponent
            << " carries side " << sign_char(c.side) << " of wall " << c.wall_label
            << " strictly inside itself (witness " << ctx.point_name(c.witness) << ")\n";
    } else {
        j["type"] = "skewer";
        j["inconclusive"] = outcome.reason;
        out << "skewer search inconclusive: " << outcome.reason << "\n";
    }
    return {dump(j), out.str()};
}

ReportDoc report_axis(const ActionContext& ctx, const AxisSepOutcome& outcome) {
    json j;
    std::ostringstream out;
    if (outcome.certificate) {
        j = axis_json(ctx, *outcome.certificate);
        const auto& c = *outcome.certificate;
        out << "axis separation certificate: wall " << c.wall_label << ", conjugator "
            << ctx.model().display(c.conjugator) << ", exponent " << c.exponent << ", side "
            << sign_char(c.side) << ", witness " << ctx.point_name(c.witness) << "\n";
    } else {
        j["type"] = "axis-separation";
        j["inconclusive"] = outcome.reason;
        out << "axis separation search inconclusive: " << outcome.reason << "\n";
    }
    return {dump(j), out.str()};
}

ReportDoc report_refine(const GroupModel& model, const RefineReport& r) {
    json j;
    j["model"] = model.name();
    j["ok"] = r.ok;
    if (!r.failure.empty()) j["failure"] = r.failure;
    if (!r.inconclusive.empty()) j["inconclusive"] = r.inconclusive;
    json entries = json::array();
    for (const RefinedEntry& e : r.entries) {
        json je;
        je["label"] = e.label;
        json gens = json::array();
        for (const auto& g : e.gens) gens.push_back(model.display(g));
        je["generators"] = gens;
        je["conjugator"] = model.display(e.conjugator);
        je["source"] = e.source;
        je["kept"] = e.kept;
        je["classification"] = e.finite ? "finite" : "infinite-at-horizon";
        if (e.finite && e.order) je["order"] = e.order;
        je["elliptic_vertex"] = e.ellipticity.vertex;
        entries.push_back(je);
    }
    j["entries"] = entries;
    json details = json::array();
    for (const auto& d : r.details) {
        json jd;
        jd["peripheral"] = d.label;
        jd["kept"] = d.kept;
        if (!d.kept) {
            jd["virtually_free"] = d.virtually_free;
            json ess = json::array();
            for (const auto& e : d.essential) ess.push_back(e.wall);
            jd["essential_walls"] = ess;
            if (d.dual_geometry) jd["dual_geometry"] = geometry_json(*d.dual_geometry);
            jd["dual_vertices"] = d.dual_vertices;
            jd["dual_edges"] = d.dual_edges;
            jd["edge_orbits"] = d.edge_orbits;
            json stabs = json::array();
            for (const auto& s : d.stabilizers) stabs.push_back(stabilizer_json(model, s));
            jd["vertex_stabilizers"] = stabs;
            jd["soundness_log"] = d.soundness_log;
        }
        details.push_back(jd);
    }
    j["details"] = details;

    std::ostringstream out;
    out << "peripheral refinement of '" << model.name() << "'\n";
    for (const auto& d : r.details) {
        out << "  peripheral " << d.label << ": ";
        if (d.kept) {
            out << "already elliptic, kept\n";
        } else {
            out << d.essential.size() << " essential wall orbit(s); peripheral dual has "
                << d.dual_vertices << " vertices, " << d.dual_edges << " edges, "
                << d.edge_orbits << " edge orbit(s)";
            if (d.dual_geometry)
                out << ", bottleneck delta " << d.dual_geometry->bottleneck;
            out << "\n";
            if (d.virtually_free)
                out << "    every vertex stabilizer is trivial: virtually free\n";
            for (const auto& s : d.stabilizers) {
                if (s.gens.empty()) continue;
                out << "    vertex " << s.vertex << " stabilizer <";
                for (uint32_t i = 0; i < s.gens.size(); ++i)
                    out << (i ? "," : "") << model.display(s.gens[i]);
                out << "> (" << (s.finite ? "order " + std::to_string(s.order)
                                          : std::string("infinite-at-horizon"))
                    << ")\n";
            }
        }
    }
    if (!r.ok) {
        out << "refinement FAILED: " << (r.failure.empty() ? r.inconclusive : r.failure)
            << "\n";
    } else {
        out << "refined structure: {";
        for (uint32_t i = 0; i < r.entries.size(); ++i)
            out << (i ? ", " : "") << r.entries[i].label;
        out << "}\n";
    }
    return {dump(j), out.str()};
}

ReportDoc report_audit(const GroupModel& model, const AuditReport& a,
                       const RefineReport* refine) {
    json j;
    j["model"] = model.name();
    j["ok"] = a.ok;
    if (!a.failure.empty()) j["failure"] = a.failure;
    auto counts = [](const AuditReport::OrbitCounts& c) {
        json jc;
        jc["radius"] = c.radius;
        jc["per_dimension"] = c.per_dim;
        return jc;
    };
    j["cocompactness"] = {{"low", counts(a.counts_low)},
                          {"high", counts(a.counts_high)},
                          {"stable", a.cocompact_ok}};
    json ell = json::array();
    for (const auto& row : a.ellipticity)
        ell.push_back({{"label", row.label},
                       {"ok", row.ok},
                       {"vertex", row.cert.vertex},
                       {"excused_walls", row.cert.excused_walls}});
    j["ellipticity"] = {{"rows", ell}, {"ok", a.ellipticity_ok}};
    json stabs = json::array();
    for (const auto& row : a.stabilizers) {
        json js;
        js["cell"] = row.cell;
        js["trivial"] = row.trivial;
        js["stabilizer_order"] = row.stabilizer_order;
        if (!row.trivial) {
            js["matched_entry"] = row.matched_entry;
            js["conjugator"] = row.conjugator;
            js["index_bound"] = row.index_bound;
        }
        js["ok"] = row.ok;
        stabs.push_back(js);
    }
    j["cell_stabilizers"] = {{"rows", stabs}, {"ok", a.stabilizers_ok}};

    std::ostringstream out;
    out << "relatively geometric audit of '" << model.name() << "'\n";
    out << "  (1) cocompactness at scale: interior cell orbits per dimension at radius "
        << a.counts_low.radius << " = [";
    for (uint32_t i = 0; i < a.counts_low.per_dim.size(); ++i)
        out << (i ? "," : "") << a.counts_low.per_dim[i];
    out << "], at radius " << a.counts_high.radius << " = [";
    for (uint32_t i = 0; i < a.counts_high.per_dim.size(); ++i)
        out << (i ? "," : "") << a.counts_high.per_dim[i];
    out << "] -> " << (a.cocompact_ok ? "pass" : "FAIL") << "\n";
    out << "  (2) ellipticity of refined peripherals:";
    for (const auto& row : a.ellipticity)
        out << " " << row.label << (row.ok ? " ok" : " FAIL");
    out << " -> " << (a.ellipticity_ok ? "pass" : "FAIL") << "\n";
    out << "  (3) cell stabilizers inside conjugates of entries:\n";
    for (const auto& row : a.stabilizers) {
        if (row.trivial) continue;
        out << "      " << row.cell << " (order "
            << (row.stabilizer_order ? std::to_string(row.stabilizer_order)
                                     : std::string("infinite-at-horizon"))
            << ")";
        if (row.ok)
            out << " -> " << row.matched_entry << " via conjugator " << row.conjugator
                << ", index bound " << row.index_bound << "\n";
        else
            out << " -> UNMATCHED\n";
    }
    out << "      -> " << (a.stabilizers_ok ? "pass" : "FAIL") << "\n";
    out << "audit " << (a.ok ? "passed" : "FAILED");
    if (!a.failure.empty()) out << ": " << a.failure;
    out << "\n";
    if (refine && refine->ok) {
        out << "refined structure: {";
        for (uint32_t i = 0; i < refine->entries.size(); ++i)
            out << (i ? ", " : "") << refine->entries[i].label;
        out << "}\n";
    }
    return {dump(j), out.str()};
}

}  // namespace cubulate
