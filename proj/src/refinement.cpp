#include "cubulate/refinement.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "cubulate/errors.hpp"

namespace cubulate {

namespace {

// Comparable key of an element set: length-prefixed element keys so that
// shorter elements always sort first, joined in sorted order.
std::string element_set_key(const GroupModel& m, std::vector<GroupElement> elems) {
    std::vector<std::string> keys;
    for (const auto& e : elems) {
        std::string k = m.kind() == ModelKind::free_product
                            ? FreeProductModel::key_of(e.nf)
                            : std::string(e.perm.begin(), e.perm.end());
        std::string prefixed;
        prefixed.push_back(static_cast<char>(k.size()));
        prefixed += k;
        keys.push_back(std::move(prefixed));
    }
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (const auto& k : keys) {
        out += k;
        out.push_back('\xff');
    }
    return out;
}

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (uint32_t i = 0; i < n; ++i) parent[i] = i;
    }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(uint32_t a, uint32_t b) { parent[find(a)] = find(b); }
};

std::vector<int> vertex_depths(const ActionContext& ctx) {
    std::vector<int> depth(ctx.complex().vertex_count());
    for (uint32_t v = 0; v < depth.size(); ++v) depth[v] = ctx.vertex_depth(v);
    return depth;
}

// vertex images of every point of the ball-translator list, one row per
// translator; nullopt marks images that escape
std::vector<std::optional<uint32_t>> vertex_image_row(const ActionContext& ctx,
                                                      const GroupElement& g) {
    std::vector<std::optional<uint32_t>> row(ctx.complex().vertex_count());
    for (uint32_t v = 0; v < ctx.complex().vertex_count(); ++v)
        row[v] = ctx.act_vertex(g, v).vertex;
    return row;
}

std::map<std::pair<uint32_t, uint32_t>, uint32_t> edge_index_map(const CubeComplex& X) {
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> m;
    for (uint32_t e = 0; e < X.edges().size(); ++e)
        m.emplace(std::make_pair(X.edges()[e].u, X.edges()[e].v), e);
    return m;
}

std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint32_t> cube_index_map(
    const CubeComplex& X) {
    std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint32_t> m;
    for (uint32_t c = 0; c < X.cubes().size(); ++c)
        m.emplace(std::make_pair(X.cubes()[c].base, X.cubes()[c].walls), c);
    return m;
}

// image of a cube: move the base corner and the spanning walls, then
// renormalize to the lexicographically least corner
std::optional<uint32_t> act_cube(
    const ActionContext& ctx, const GroupElement& g, const Cube& cube,
    const std::vector<std::optional<uint32_t>>& vimg,
    const std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint32_t>& cubes) {
    auto base = vimg[cube.base];
    if (!base) return std::nullopt;
    std::vector<uint32_t> walls;
    for (uint32_t w : cube.walls) {
        auto img = ctx.act_wall(g, w);
        if (!img) return std::nullopt;
        walls.push_back(img->first);
    }
    std::sort(walls.begin(), walls.end());
    Orientation o = ctx.complex().vertex(*base);
    for (uint32_t w : walls) o.reset(w);  // all-'+' corner
    auto canonical = ctx.complex().vertex_index(o);
    if (!canonical) return std::nullopt;
    auto it = cubes.find({*canonical, walls});
    if (it == cubes.end()) return std::nullopt;
    return it->second;
}

// orbit / Schreier sweep of one cell under the labelled group generators
struct CellOrbit {
    std::vector<uint64_t> orbit;
    bool hit_horizon = false;
    std::vector<GroupElement> schreier;
};

template <class ActFn>
CellOrbit cell_orbit_sweep(const GroupModel& model,
                           const std::vector<std::pair<std::string, GroupElement>>& gens,
                           uint64_t start, ActFn&& act) {
    CellOrbit out;
    std::map<uint64_t, GroupElement> transversal;
    std::deque<uint64_t> queue;
    transversal.emplace(start, model.identity());
    queue.push_back(start);
    out.orbit.push_back(start);
    std::set<std::string> seen_gens;
    while (!queue.empty()) {
        uint64_t cell = queue.front();
        queue.pop_front();
        for (const auto& [label, g] : gens) {
            auto img = act(g, cell);
            if (!img) {
                out.hit_horizon = true;
                continue;
            }
            auto it = transversal.find(*img);
            if (it == transversal.end()) {
                transversal.emplace(*img, model.mul(g, transversal[cell]));
                queue.push_back(*img);
                out.orbit.push_back(*img);
            } else {
                GroupElement s = model.mul(model.inverse(it->second),
                                           model.mul(g, transversal[cell]));
                if (!model.is_identity(s)) {
                    auto key = model.kind() == ModelKind::free_product
                                   ? FreeProductModel::key_of(s.nf)
                                   : std::string(s.perm.begin(), s.perm.end());
                    if (seen_gens.insert(key).second) out.schreier.push_back(s);
                }
            }
        }
    }
    std::sort(out.orbit.begin(), out.orbit.end());
    std::sort(out.schreier.begin(), out.schreier.end(),
              [&model](const GroupElement& a, const GroupElement& b) {
                  return model.less(a, b);
              });
    return out;
}

}  // namespace

PeripheralDual build_peripheral_dual(const GroupModel& model,
                                     const std::vector<GroupElement>& p_gens,
                                     const std::vector<EssentialWall>& essential,
                                     ContextOptions opts) {
    if (essential.empty())
        throw input_error("no essential walls: the peripheral subgroup is already elliptic");
    PeripheralDual out;
    std::vector<TranslatedWall> walls;
    for (const EssentialWall& e : essential) walls.push_back(e.provenance);
    out.walls_used = essential;
    out.ctx = std::make_shared<ActionContext>(
        ActionContext::over_subgroup(model, p_gens, walls, opts));

    Graph skel = out.ctx->complex().skeleton();
    out.geometry = geometry_report(skel);

    // subgroup orbits of edges at the horizon
    const CubeComplex& Y = out.ctx->complex();
    SubgroupSweep sweep = out.ctx->sweep_subgroup(p_gens);
    auto edges = edge_index_map(Y);
    UnionFind uf(Y.edges().size());
    for (const GroupElement& g : sweep.elements) {
        auto vimg = vertex_image_row(*out.ctx, g);
        for (uint32_t e = 0; e < Y.edges().size(); ++e) {
            auto u = vimg[Y.edges()[e].u];
            auto v = vimg[Y.edges()[e].v];
            if (!u || !v) continue;
            auto it = edges.find({std::min(*u, *v), std::max(*u, *v)});
            if (it != edges.end()) uf.unite(e, it->second);
        }
    }
    std::set<uint32_t> roots;
    for (uint32_t e = 0; e < Y.edges().size(); ++e) roots.insert(uf.find(e));
    out.edge_orbits = roots.size();

    // finite shadow of hyperplane compactness: dual-edge counts stay
    // below (largest side piece) * (max degree)
    uint64_t c = 0;
    for (const Wall& w : out.ctx->wallspace().walls())
        c = std::max({c, static_cast<uint64_t>(w.core.count()),
                      static_cast<uint64_t>(w.strict_positive.count()),
                      static_cast<uint64_t>(w.strict_negative.count())});
    uint64_t max_degree = 0;
    for (uint32_t v = 0; v < Y.vertex_count(); ++v)
        max_degree = std::max(max_degree, static_cast<uint64_t>(Y.neighbors(v).size()));
    out.hyperplane_edge_bound_ok = true;
    for (uint32_t w = 0; w < out.ctx->wallspace().wall_count(); ++w)
        if (Y.wall_visible(w) &&
            Y.hyperplane(w).dual_edges.size() > c * std::max<uint64_t>(max_degree, 1))
            out.hyperplane_edge_bound_ok = false;
    return out;
}

std::vector<StabilizerInfo> vertex_stabilizers(const ActionContext& ctx,
                                               const std::vector<GroupElement>& p_gens) {
    const CubeComplex& Y = ctx.complex();
    std::vector<std::pair<std::string, GroupElement>> gens;
    for (uint32_t i = 0; i < p_gens.size(); ++i) {
        gens.emplace_back("g" + std::to_string(i), p_gens[i]);
        gens.emplace_back("g" + std::to_string(i) + "'", ctx.model().inverse(p_gens[i]));
    }
    auto act = [&](const GroupElement& g, uint64_t cell) {
        return ctx.act_vertex(g, static_cast<uint32_t>(cell)).vertex;
    };
    std::vector<char> visited(Y.vertex_count(), 0);
    std::vector<StabilizerInfo> out;
    for (uint32_t v = 0; v < Y.vertex_count(); ++v) {
        if (visited[v]) continue;
        auto orbit = cell_orbit_sweep(ctx.model(), gens, v, act);
        for (uint64_t u : orbit.orbit) visited[u] = 1;
        StabilizerInfo info;
        info.vertex = v;
        info.representative = v;
        info.depth = ctx.vertex_depth(v);
        for (uint64_t u : orbit.orbit) {
            int d = ctx.vertex_depth(static_cast<uint32_t>(u));
            if (d > info.depth) {
                info.depth = d;
                info.representative = static_cast<uint32_t>(u);
            }
        }
        info.interior = info.depth >= ctx.options().margin;
        if (info.representative != v)
            orbit = cell_orbit_sweep(ctx.model(), gens, info.representative, act);
        info.orbit_size = orbit.orbit.size();
        info.orbit_hit_horizon = orbit.hit_horizon;
        info.gens = orbit.schreier;
        SubgroupSweep stab = ctx.sweep_subgroup(info.gens);
        info.finite = stab.closed;
        info.order = stab.closed ? stab.elements.size() : 0;
        if (stab.closed) info.elements = stab.elements;
        out.push_back(std::move(info));
    }
    return out;
}

namespace {

// canonical conjugacy representative: scan ball conjugators in (length,
// lex) order and keep the one giving the least element-set key
struct Canonical {
    std::vector<GroupElement> gens;
    std::vector<GroupElement> elements;  // when finite
    GroupElement conjugator;
    std::string key;
};

Canonical canonicalize_subgroup(const ActionContext& ctx, const StabilizerInfo& stab) {
    const GroupModel& m = ctx.model();
    std::vector<GroupElement> basis = stab.finite ? stab.elements : stab.gens;
    Canonical best;
    bool have = false;
    const uint32_t n_conj =
        m.kind() == ModelKind::free_product ? ctx.point_count()
                                            : static_cast<uint32_t>(m.pm().elements().size());
    for (uint32_t i = 0; i < n_conj; ++i) {
        GroupElement c;
        if (m.kind() == ModelKind::free_product) {
            c = ctx.point_element(i);
        } else {
            c.perm = m.pm().elements()[i];
        }
        GroupElement cinv = m.inverse(c);
        std::vector<GroupElement> conj;
        for (const auto& s : basis) conj.push_back(m.mul(cinv, m.mul(s, c)));
        std::string key = element_set_key(m, conj);
        if (!have || key < best.key) {
            have = true;
            best.key = key;
            best.conjugator = c;
            best.elements.clear();
            best.gens.clear();
            for (const auto& s : conj)
                if (!m.is_identity(s)) best.gens.push_back(s);
            std::sort(best.gens.begin(), best.gens.end(),
                      [&m](const GroupElement& a, const GroupElement& b) {
                          return m.less(a, b);
                      });
            if (stab.finite) best.elements = conj;
        }
    }
    return best;
}

// name a subgroup that coincides with a whole free factor
std::string subgroup_label(const GroupModel& m, const std::vector<GroupElement>& gens) {
    if (m.kind() == ModelKind::free_product && !gens.empty()) {
        uint8_t factor = 255;
        std::set<uint8_t> elements_seen;
        bool single_factor = true;
        for (const auto& g : gens) {
            if (g.nf.size() != 1) {
                single_factor = false;
                break;
            }
            if (factor == 255) factor = g.nf[0].factor;
            if (g.nf[0].factor != factor) {
                single_factor = false;
                break;
            }
            elements_seen.insert(g.nf[0].element);
        }
        if (single_factor && factor != 255 &&
            elements_seen.size() == m.fp().factors()[factor].size() - 1)
            return m.fp().factors()[factor].name;
    }
    std::string label = "<";
    for (uint32_t i = 0; i < gens.size(); ++i) {
        if (i) label += ",";
        label += m.display(gens[i]);
    }
    return label + ">";
}

}  // namespace

RefineReport refine_structure(const GroupModel& model, const ActionContext& X,
                              ContextOptions opts) {
    RefineReport report;
    std::set<std::string> entry_keys;

    std::vector<TranslatedWall> base_walls;
    for (uint32_t d = 0; d < model.wall_data().size(); ++d)
        base_walls.push_back({d, model.identity()});

    for (const auto& peripheral : model.peripherals()) {
        RefineReport::PerPeripheral detail;
        detail.label = peripheral.label;
        std::vector<GroupElement> p_gens = model.parse_all(peripheral.generator_words);

        FixedPointOutcome fixed = fixed_point_search(X, p_gens);
        if (fixed.certificate) {
            detail.kept = true;
            RefinedEntry entry;
            entry.label = peripheral.label;
            entry.gens = p_gens;
            entry.conjugator = model.identity();
            entry.source = peripheral.label;
            entry.kept = true;
            SubgroupSweep sweep = X.sweep_subgroup(p_gens);
            entry.finite = sweep.closed;
            entry.order = sweep.closed ? sweep.elements.size() : 0;
            entry.ellipticity = *fixed.certificate;
            std::string key = element_set_key(
                model, sweep.closed ? sweep.elements : entry.gens);
            if (entry_keys.insert(key).second) report.entries.push_back(std::move(entry));
            report.details.push_back(std::move(detail));
            continue;
        }

        detail.essential = essential_wall_search(X, p_gens, opts.radius);
        if (detail.essential.empty()) {
            report.inconclusive = "peripheral '" + peripheral.label +
                                  "' fixes no vertex at this truncation, yet no essential wall "
                                  "was found; a larger radius is needed";
            report.details.push_back(std::move(detail));
            return report;
        }

        PeripheralDual dual = build_peripheral_dual(model, p_gens, detail.essential, opts);
        detail.dual_geometry = dual.geometry;
        detail.dual_vertices = dual.ctx->complex().vertex_count();
        detail.dual_edges = dual.ctx->complex().edges().size();
        detail.edge_orbits = dual.edge_orbits;

        detail.stabilizers = vertex_stabilizers(*dual.ctx, p_gens);
        bool any_nontrivial = false;
        std::vector<RefinedEntry> fresh;
        for (const StabilizerInfo& stab : detail.stabilizers) {
            if (!stab.interior) continue;  // truncation artifact, not a stabilizer claim
            if (stab.gens.empty()) continue;  // trivial stabilizer
            any_nontrivial = true;
            Canonical canon = canonicalize_subgroup(*dual.ctx, stab);
            RefinedEntry entry;
            entry.gens = canon.gens;
            entry.conjugator = canon.conjugator;
            entry.source = peripheral.label;
            entry.kept = false;
            entry.finite = stab.finite;
            entry.order = stab.order;
            entry.label = subgroup_label(model, canon.gens);
            if (entry_keys.insert(canon.key).second) fresh.push_back(std::move(entry));
        }
        detail.virtually_free = !any_nontrivial;

        // replacements must act elliptically on X
        std::sort(fresh.begin(), fresh.end(),
                  [](const RefinedEntry& a, const RefinedEntry& b) { return a.label < b.label; });
        for (RefinedEntry& entry : fresh) {
            FixedPointOutcome elliptic = fixed_point_search(X, entry.gens);
            if (!elliptic.certificate) {
                report.failure = "replacement " + entry.label + " (from peripheral '" +
                                 peripheral.label + "') earned no ellipticity certificate: " +
                                 elliptic.reason;
                report.details.push_back(std::move(detail));
                return report;
            }
            entry.ellipticity = *elliptic.certificate;
            report.entries.push_back(entry);
        }

        // sampled elements hyperbolic on the peripheral dual must satisfy
        // axis separation for the wall data on X
        AxisSepBounds bounds{opts.n_max, opts.radius};
        for (const GroupElement& h : X.reduced_words(p_gens, 6)) {
            SkewerOutcome on_dual = skewer_search(*dual.ctx, h, opts.n_max);
            SkewerOutcome on_X = skewer_search(X, h, 2 * opts.n_max);
            if (on_dual.certificate && on_X.certificate) {
                detail.soundness_log.push_back(model.display(h) +
                                               ": hyperbolic on the peripheral dual and on X");
            } else if (on_dual.certificate && !on_X.certificate && !on_X.torsion()) {
                detail.soundness_log.push_back(model.display(h) +
                                               ": hyperbolic on the peripheral dual, horizon on X");
            } else if (on_X.certificate && !on_dual.certificate && !on_dual.torsion()) {
                detail.soundness_log.push_back(model.display(h) +
                                               ": hyperbolic on X, horizon on the peripheral dual");
            } else if (on_dual.torsion() != on_X.torsion()) {
                report.failure = "element " + model.display(h) +
                                 " is classified torsion on one complex only";
                report.details.push_back(std::move(detail));
                return report;
            }
            if (!on_dual.certificate) continue;
            AxisSepOutcome axis = axis_separation_search(X, h, base_walls, bounds);
            if (!axis.certificate) {
                report.failure = "element " + model.display(h) + " of peripheral '" +
                                 peripheral.label +
                                 "' acts hyperbolically on the peripheral dual but earned no "
                                 "axis separation certificate (" +
                                 axis.reason + ")";
                report.details.push_back(std::move(detail));
                return report;
            }
        }
        report.details.push_back(std::move(detail));
    }
    report.ok = true;
    return report;
}

AuditReport relatively_geometric_audit(const GroupModel& model,
                                       const std::vector<RefinedEntry>& entries,
                                       ContextOptions opts) {
    AuditReport report;

    ContextOptions high = opts;
    high.radius = opts.radius + 2;
    high.translate_radius = -1;
    ActionContext X_low = ActionContext::over_group(model, opts);
    ActionContext X_high = ActionContext::over_group(model, high);

    auto count_orbits = [&](const ActionContext& ctx) {
        const CubeComplex& X = ctx.complex();
        std::vector<int> depth = vertex_depths(ctx);
        const int margin = ctx.options().margin;
        auto interior_vertex = [&](uint32_t v) { return depth[v] >= margin; };

        std::vector<GroupElement> movers;
        if (model.kind() == ModelKind::free_product) {
            for (uint32_t p = 0; p < ctx.point_count(); ++p)
                movers.push_back(ctx.point_element(p));
        } else {
            for (const Perm& p : model.pm().elements()) {
                GroupElement e;
                e.perm = p;
                movers.push_back(e);
            }
        }

        auto edges = edge_index_map(X);
        auto cubes = cube_index_map(X);
        UnionFind ufv(X.vertex_count());
        UnionFind ufe(X.edges().size());
        UnionFind ufc(X.cubes().size());
        for (const GroupElement& g : movers) {
            auto vimg = vertex_image_row(ctx, g);
            for (uint32_t v = 0; v < X.vertex_count(); ++v)
                if (vimg[v]) ufv.unite(v, *vimg[v]);
            for (uint32_t e = 0; e < X.edges().size(); ++e) {
                auto u = vimg[X.edges()[e].u];
                auto v = vimg[X.edges()[e].v];
                if (!u || !v) continue;
                auto it = edges.find({std::min(*u, *v), std::max(*u, *v)});
                if (it != edges.end()) ufe.unite(e, it->second);
            }
            for (uint32_t c = 0; c < X.cubes().size(); ++c) {
                auto img = act_cube(ctx, g, X.cubes()[c], vimg, cubes);
                if (img) ufc.unite(c, *img);
            }
        }

        AuditReport::OrbitCounts counts;
        counts.radius = ctx.options().radius;
        std::set<uint32_t> vroots, eroots;
        std::map<size_t, std::set<uint32_t>> croots;  // dim -> roots
        for (uint32_t v = 0; v < X.vertex_count(); ++v)
            if (interior_vertex(v)) vroots.insert(ufv.find(v));
        for (uint32_t e = 0; e < X.edges().size(); ++e)
            if (interior_vertex(X.edges()[e].u) && interior_vertex(X.edges()[e].v))
                eroots.insert(ufe.find(e));
        for (uint32_t c = 0; c < X.cubes().size(); ++c) {
            const Cube& cube = X.cubes()[c];
            if (interior_vertex(cube.base)) croots[cube.walls.size()].insert(ufc.find(c));
        }
        counts.per_dim.push_back(vroots.size());
        counts.per_dim.push_back(eroots.size());
        for (const auto& [dim, roots] : croots) {
            while (counts.per_dim.size() < dim) counts.per_dim.push_back(0);
            counts.per_dim.push_back(roots.size());
        }
        return counts;
    };

    report.counts_low = count_orbits(X_low);
    report.counts_high = count_orbits(X_high);
    {
        auto a = report.counts_low.per_dim;
        auto b = report.counts_high.per_dim;
        a.resize(std::max(a.size(), b.size()), 0);
        b.resize(std::max(a.size(), b.size()), 0);
        report.cocompact_ok = (a == b);
        if (!report.cocompact_ok)
            report.failure = "interior cell-orbit counts differ between radius " +
                             std::to_string(report.counts_low.radius) + " and radius " +
                             std::to_string(report.counts_high.radius);
    }

    // every refined entry acts elliptically
    report.ellipticity_ok = true;
    for (const RefinedEntry& entry : entries) {
        AuditReport::EllipticityRow row;
        row.label = entry.label;
        FixedPointOutcome fixed = fixed_point_search(X_low, entry.gens);
        row.ok = fixed.certificate.has_value();
        if (fixed.certificate) row.cert = *fixed.certificate;
        if (!row.ok) {
            report.ellipticity_ok = false;
            if (report.failure.empty())
                report.failure = "entry " + entry.label + " earned no ellipticity certificate";
        }
        report.ellipticity.push_back(std::move(row));
    }

    // nontrivial cell stabilizers embed in conjugates of entries
    report.stabilizers_ok = true;
    {
        const ActionContext& ctx = X_low;
        const CubeComplex& X = ctx.complex();
        std::vector<int> depth = vertex_depths(ctx);
        const int margin = ctx.options().margin;
        auto gens = model.group_generators();
        std::vector<std::pair<std::string, GroupElement>> moves;
        for (const auto& [label, g] : gens) {
            moves.emplace_back(label, g);
            moves.emplace_back(label + "'", ctx.model().inverse(g));
        }

        // entry element sets (or ball sweeps when infinite-at-horizon)
        struct EntryElements {
            std::string label;
            std::set<std::string> keys;
            uint64_t order;  // 0 = infinite-at-horizon
        };
        std::vector<EntryElements> entry_elems;
        for (const RefinedEntry& entry : entries) {
            SubgroupSweep sweep = ctx.sweep_subgroup(entry.gens);
            EntryElements ee;
            ee.label = entry.label;
            ee.order = sweep.closed ? sweep.elements.size() : 0;
            for (const auto& el : sweep.elements)
                ee.keys.insert(model.kind() == ModelKind::free_product
                                   ? FreeProductModel::key_of(el.nf)
                                   : std::string(el.perm.begin(), el.perm.end()));
            entry_elems.push_back(std::move(ee));
        }

        auto edges = edge_index_map(X);
        auto cubes = cube_index_map(X);

        auto classify_cell = [&](const std::string& cell_name, uint64_t cell_id,
                                 auto&& act_fn) {
            auto orbit = cell_orbit_sweep(model, moves, cell_id, act_fn);
            SubgroupSweep stab = ctx.sweep_subgroup(orbit.schreier);
            AuditReport::StabilizerRow row;
            row.cell = cell_name;
            row.trivial = orbit.schreier.empty();
            row.stabilizer_order = stab.closed ? stab.elements.size() : 0;
            row.ok = true;
            if (!row.trivial) {
                // look for a conjugate embedding into some entry
                row.ok = false;
                const std::vector<GroupElement>& basis =
                    stab.closed ? stab.elements : orbit.schreier;
                for (uint32_t c = 0; c < ctx.point_count() && !row.ok; ++c) {
                    GroupElement conj = model.kind() == ModelKind::free_product
                                            ? ctx.point_element(c)
                                            : [&] {
                                                  GroupElement e;
                                                  e.perm = model.pm().elements()[c];
                                                  return e;
                                              }();
                    GroupElement cinv = model.inverse(conj);
                    for (const EntryElements& ee : entry_elems) {
                        bool inside = true;
                        for (const GroupElement& s : basis) {
                            GroupElement moved = model.mul(cinv, model.mul(s, conj));
                            auto key = model.kind() == ModelKind::free_product
                                           ? FreeProductModel::key_of(moved.nf)
                                           : std::string(moved.perm.begin(), moved.perm.end());
                            if (!ee.keys.count(key)) {
                                inside = false;
                                break;
                            }
                        }
                        if (inside) {
                            row.ok = true;
                            row.matched_entry = ee.label;
                            row.conjugator = model.display(conj);
                            uint64_t stab_size =
                                stab.closed ? stab.elements.size() : orbit.schreier.size() + 1;
                            row.index_bound =
                                ee.order == 0
                                    ? ee.keys.size() / std::max<uint64_t>(stab_size, 1)
                                    : ee.order / std::max<uint64_t>(stab_size, 1);
                            break;
                        }
                    }
                }
                if (!row.ok) {
                    report.stabilizers_ok = false;
                    if (report.failure.empty()) {
                        std::string members;
                        for (const GroupElement& s : stab.closed ? stab.elements
                                                                 : orbit.schreier) {
                            if (!members.empty()) members += ",";
                            members += model.display(s);
                        }
                        report.failure = "stabilizer {" + members + "} of " + cell_name +
                                         " embeds in no conjugate of any refined entry";
                    }
                }
            }
            report.stabilizers.push_back(std::move(row));
        };

        std::vector<char> vertex_seen(X.vertex_count(), 0);
        for (uint32_t v = 0; v < X.vertex_count(); ++v) {
            if (vertex_seen[v] || depth[v] < margin) continue;
            auto orbit = cell_orbit_sweep(model, moves, v,
                                          [&](const GroupElement& g, uint64_t cell) {
                                              return ctx
                                                  .act_vertex(g, static_cast<uint32_t>(cell))
                                                  .vertex;
                                          });
            for (uint64_t u : orbit.orbit) vertex_seen[u] = 1;
            classify_cell("vertex " + std::to_string(v), v,
                          [&](const GroupElement& g, uint64_t cell) {
                              return ctx.act_vertex(g, static_cast<uint32_t>(cell)).vertex;
                          });
        }
        auto act_edge = [&](const GroupElement& g, uint64_t cell) -> std::optional<uint64_t> {
            const DualEdge& e = X.edges()[cell];
            auto u = ctx.act_vertex(g, e.u).vertex;
            auto v = ctx.act_vertex(g, e.v).vertex;
            if (!u || !v) return std::nullopt;
            auto it = edges.find({std::min(*u, *v), std::max(*u, *v)});
            if (it == edges.end()) return std::nullopt;
            return it->second;
        };
        std::vector<char> edge_seen(X.edges().size(), 0);
        for (uint32_t e = 0; e < X.edges().size(); ++e) {
            if (edge_seen[e]) continue;
            if (depth[X.edges()[e].u] < margin || depth[X.edges()[e].v] < margin) continue;
            auto orbit = cell_orbit_sweep(model, moves, e, act_edge);
            for (uint64_t x : orbit.orbit) edge_seen[x] = 1;
            classify_cell("edge (" + std::to_string(X.edges()[e].u) + "," +
                              std::to_string(X.edges()[e].v) + ")",
                          e, act_edge);
        }
        auto act_cube_fn = [&](const GroupElement& g, uint64_t cell) -> std::optional<uint64_t> {
            auto vimg = vertex_image_row(ctx, g);
            return act_cube(ctx, g, X.cubes()[cell], vimg, cubes);
        };
        std::vector<char> cube_seen(X.cubes().size(), 0);
        for (uint32_t c = 0; c < X.cubes().size(); ++c) {
            if (cube_seen[c] || depth[X.cubes()[c].base] < margin) continue;
            auto orbit = cell_orbit_sweep(model, moves, c, act_cube_fn);
            for (uint64_t x : orbit.orbit) cube_seen[x] = 1;
            classify_cell("cube " + std::to_string(c), c, act_cube_fn);
        }
    }

    report.ok = report.cocompact_ok && report.ellipticity_ok && report.stabilizers_ok;
    return report;
}

}  // namespace cubulate
