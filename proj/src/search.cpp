#include "cubulate/search.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cubulate/errors.hpp"

namespace cubulate {

namespace {

// fixed / moved / walls escaped beyond the excusable boundary zone
enum class FixState { fixed, moved, unverifiable };

FixState vertex_fix_state(const ActionContext& ctx, const GroupElement& g, uint32_t v,
                          uint32_t* excused) {
    auto img = ctx.act_vertex(g, v);
    Orientation mismatch = (img.bits ^ ctx.complex().vertex(v)) & img.defined;
    if (mismatch.any()) return FixState::moved;
    if (img.defined.none()) return FixState::unverifiable;  // nothing checkable
    const int reach = ctx.options().margin + static_cast<int>(ctx.model().length(g));
    for (uint32_t w = 0; w < ctx.wallspace().wall_count(); ++w) {
        if (img.defined.test(w)) continue;
        if (ctx.wall_depth(w) >= reach) return FixState::unverifiable;
        if (excused) ++*excused;
    }
    return FixState::fixed;
}

}  // namespace

SkewerOutcome skewer_search(const ActionContext& ctx, const GroupElement& h, int n_max,
                            const std::vector<uint32_t>& wall_filter) {
    SkewerOutcome out;
    if (n_max < 1) throw input_error("skewer search needs n_max >= 1");
    uint64_t ord = ctx.model().order(h);
    if (ord != 0 && ord <= static_cast<uint64_t>(n_max)) {
        out.reason = "torsion";
        return out;
    }
    std::vector<uint32_t> walls = wall_filter;
    if (walls.empty())
        for (uint32_t w = 0; w < ctx.wallspace().wall_count(); ++w) walls.push_back(w);

    std::vector<GroupElement> fwd_pow(n_max + 1), bwd_pow(n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        fwd_pow[n] = ctx.model().power(h, n);
        bwd_pow[n] = ctx.model().inverse(fwd_pow[n]);
    }

    for (uint32_t w : walls) {
        const Wall& wall = ctx.wallspace().wall(w);
        for (int n = 1; n <= n_max; ++n) {
            const GroupElement& fwd = fwd_pow[n];
            const GroupElement& bwd = bwd_pow[n];
            for (Sign side : {Sign::plus, Sign::minus}) {
                const PointSet& s = wall.side(side);
                if (!detail::side_contracts(ctx, s, fwd, nullptr)) continue;
                auto witness = detail::find_escape_witness(ctx, s, bwd, ctx.options().margin);
                if (!witness) continue;
                SkewerCertificate cert;
                cert.wall = w;
                cert.wall_label = ctx.wall_label(w);
                cert.side = side;
                cert.exponent = n;
                cert.element = h;
                cert.witness = *witness;
                cert.radius = ctx.options().radius;
                cert.margin = ctx.options().margin;
                std::string why;
                if (!verify_skewer(ctx, cert, &why))
                    throw verification_error("emitted skewer certificate fails replay: " + why);
                out.certificate = cert;
                return out;
            }
        }
    }
    out.reason = "horizon";
    return out;
}

AxisSepOutcome axis_separation_search(const ActionContext& ctx, const GroupElement& h,
                                      const std::vector<TranslatedWall>& base_walls,
                                      const AxisSepBounds& bounds) {
    AxisSepOutcome out;
    if (bounds.n_max < 1) throw input_error("axis separation search needs n_max >= 1");
    uint64_t ord = ctx.model().order(h);
    if (ord != 0 && ord <= static_cast<uint64_t>(bounds.n_max)) {
        out.reason = "torsion";
        return out;
    }

    std::vector<GroupElement> conjugators;
    if (ctx.model().kind() == ModelKind::free_product) {
        for (uint32_t p = 0; p < ctx.point_count(); ++p) {
            const GroupElement& g = ctx.point_element(p);
            if (static_cast<int>(g.nf.size()) <= bounds.conjugator_radius)
                conjugators.push_back(g);
        }
    } else {
        for (const Perm& p : ctx.model().pm().elements()) {
            GroupElement e;
            e.perm = p;
            conjugators.push_back(e);
        }
    }

    for (const TranslatedWall& base : base_walls) {
        for (int n = 1; n <= bounds.n_max; ++n) {
            GroupElement down = ctx.model().power(h, -n);  // must contract the side
            GroupElement up = ctx.model().inverse(down);
            for (const GroupElement& g : conjugators) {
                TranslatedWall moved{base.datum, ctx.model().mul(g, base.translator)};
                auto wall = ctx.materialize(moved);
                if (!wall) continue;
                for (Sign side : {Sign::plus, Sign::minus}) {
                    const PointSet& s = wall->side(side);
                    if (!detail::side_contracts(ctx, s, down, nullptr)) continue;
                    auto witness =
                        detail::find_escape_witness(ctx, s, up, ctx.options().margin);
                    if (!witness) continue;
                    AxisSepCertificate cert;
                    cert.base = base;
                    cert.wall_label =
                        ctx.model().wall_data().at(base.datum).label + "@" +
                        ctx.model().display(moved.translator);
                    cert.conjugator = g;
                    cert.side = side;
                    cert.exponent = n;
                    cert.element = h;
                    cert.witness = *witness;
                    cert.radius = ctx.options().radius;
                    cert.margin = ctx.options().margin;
                    std::string why;
                    if (!verify_axis_sep(ctx, cert, &why))
                        throw verification_error(
                            "emitted axis separation certificate fails replay: " + why);
                    out.certificate = cert;
                    return out;
                }
            }
        }
    }
    out.reason = "horizon";
    return out;
}

FixedPointOutcome fixed_point_search(const ActionContext& ctx,
                                     const std::vector<GroupElement>& gens) {
    FixedPointOutcome out;
    if (gens.empty()) {
        // the trivial group fixes everything; certify the deepest vertex
        uint32_t best = 0;
        for (uint32_t v = 1; v < ctx.complex().vertex_count(); ++v)
            if (ctx.vertex_depth(v) > ctx.vertex_depth(best)) best = v;
        if (ctx.vertex_depth(best) < ctx.options().margin) {
            out.reason = "horizon";
            return out;
        }
        EllipticityCertificate cert;
        cert.vertex = best;
        out.certificate = cert;
        return out;
    }
    bool saw_unverifiable = false;
    for (uint32_t v = 0; v < ctx.complex().vertex_count(); ++v) {
        // end gaps of a truncated complex can be genuinely invariant at
        // horizon; only interior vertices certify ellipticity
        if (ctx.vertex_depth(v) < ctx.options().margin) {
            saw_unverifiable = true;
            continue;
        }
        uint32_t excused = 0;
        bool fixed = true;
        for (const GroupElement& g : gens) {
            FixState state = vertex_fix_state(ctx, g, v, &excused);
            if (state == FixState::moved) {
                fixed = false;
                break;
            }
            if (state == FixState::unverifiable) {
                fixed = false;
                saw_unverifiable = true;
                break;
            }
        }
        if (!fixed) continue;
        EllipticityCertificate cert;
        cert.vertex = v;
        cert.gens = gens;
        cert.excused_walls = excused;
        std::string why;
        if (!verify_ellipticity(ctx, cert, &why))
            throw verification_error("emitted ellipticity certificate fails replay: " + why);
        out.certificate = cert;
        return out;
    }
    out.reason = saw_unverifiable ? "horizon" : "no fixed vertex";
    return out;
}

DeepnessOutcome deepness(const ActionContext& ctx, const std::vector<GroupElement>& p_gens,
                         Halfspace h, int horizon) {
    return deepness(ctx, ctx.sweep_subgroup(p_gens), h, horizon);
}

DeepnessOutcome deepness(const ActionContext& ctx, const SubgroupSweep& sweep, Halfspace h,
                         int horizon) {
    if (horizon < 2) throw input_error("deepness horizon must be at least 2");
    DeepnessOutcome out;
    out.subgroup_closed = sweep.closed;
    const Wall& wall = ctx.wallspace().wall(h.wall);
    const PointSet& strict = wall.strict_side(h.sign);
    const PointSet& anchor = wall.core.any() ? wall.core : wall.side(opposite(h.sign));

    // subgroup points that lie strictly in the halfspace, with their word
    // distance from the wall core
    std::vector<std::pair<int, uint32_t>> inside;  // (distance, point)
    for (const GroupElement& g : sweep.elements) {
        auto p = ctx.point_index(g);
        if (!p || !strict.test(*p)) continue;
        inside.emplace_back(ctx.distance_to_set(*p, anchor), *p);
    }
    std::sort(inside.begin(), inside.end());

    if (sweep.closed) {
        out.verdict = Depth::shallow;
        out.note = inside.empty() ? "subgroup exhausted; side untouched"
                                  : "subgroup exhausted within the horizon";
        return out;
    }
    int deepest = inside.empty() ? 0 : inside.back().first;
    if (deepest >= horizon) {
        out.verdict = Depth::deep;
        int last = 0;
        for (const auto& [d, p] : inside)
            if (d > last) {
                out.certificate.escape.emplace_back(p, d);
                last = d;
            }
        std::string why;
        if (!verify_deepness(ctx, h.wall, h.sign, horizon, out.certificate, &why))
            throw verification_error("emitted deepness certificate fails replay: " + why);
        return out;
    }
    if (inside.empty()) {
        out.verdict = Depth::shallow;
        out.note = "no subgroup point enters the side at this truncation";
        return out;
    }
    out.verdict = Depth::inconclusive;
    out.note = "escape stops at distance " + std::to_string(deepest) + " before the horizon " +
               std::to_string(horizon);
    return out;
}

std::vector<EssentialWall> essential_wall_search(const ActionContext& ctx,
                                                 const std::vector<GroupElement>& p_gens,
                                                 int horizon) {
    SubgroupSweep sweep = ctx.sweep_subgroup(p_gens);
    std::vector<EssentialWall> essential;
    for (uint32_t w = 0; w < ctx.wallspace().wall_count(); ++w) {
        DeepnessOutcome plus = deepness(ctx, sweep, {w, Sign::plus}, horizon);
        if (plus.verdict != Depth::deep) continue;
        DeepnessOutcome minus = deepness(ctx, sweep, {w, Sign::minus}, horizon);
        if (minus.verdict != Depth::deep) continue;
        EssentialWall e;
        e.wall = w;
        e.provenance = ctx.family().at(w);
        e.plus_side = plus;
        e.minus_side = minus;
        essential.push_back(std::move(e));
    }
    // subgroup-orbit representatives, first index first
    std::vector<EssentialWall> reps;
    for (const EssentialWall& cand : essential) {
        bool duplicate = false;
        for (const EssentialWall& rep : reps) {
            for (const GroupElement& p : sweep.elements) {
                auto img = ctx.act_wall(p, rep.wall);
                if (img && img->first == cand.wall) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) break;
        }
        if (!duplicate) reps.push_back(cand);
    }
    return reps;
}

FixedGeodesic pointwise_fixed_geodesic(const ActionContext& ctx,
                                       const std::vector<GroupElement>& k_gens, uint32_t v1,
                                       uint32_t v2) {
    const CubeComplex& X = ctx.complex();
    if (v1 >= X.vertex_count() || v2 >= X.vertex_count())
        throw input_error("geodesic endpoints out of range");
    SubgroupSweep sweep = ctx.sweep_subgroup(k_gens);
    if (!sweep.closed)
        throw horizon_error("the subgroup did not close within the truncation ball");
    for (const GroupElement& g : k_gens)
        for (uint32_t v : {v1, v2}) {
            uint32_t excused = 0;
            if (vertex_fix_state(ctx, g, v, &excused) != FixState::fixed)
                throw input_error("generator " + ctx.model().display(g) +
                                  " does not fix endpoint vertex " + std::to_string(v));
        }

    // lexicographically least combinatorial geodesic from v1 to v2
    Graph skel = X.skeleton();
    auto dist = skel.distances_from(v2);
    FixedGeodesic out;
    out.vertices.push_back(v1);
    uint32_t cur = v1;
    while (cur != v2) {
        uint32_t next = cur;
        for (uint32_t nb : skel.neighbors(cur))
            if (dist[nb] == dist[cur] - 1) {
                next = nb;
                break;  // neighbors are sorted, first hit is least
            }
        if (next == cur) throw verification_error("geodesic walk stalled");
        out.vertices.push_back(next);
        cur = next;
    }

    out.subgroup_order = sweep.elements.size();
    for (const GroupElement& k : sweep.elements) {
        bool fixes = true;
        for (uint32_t v : out.vertices) {
            uint32_t excused = 0;
            FixState st = vertex_fix_state(ctx, k, v, &excused);
            if (st == FixState::unverifiable)
                throw horizon_error("stabilizer check for " + ctx.model().display(k) +
                                    " left the truncation at vertex " + std::to_string(v));
            if (st != FixState::fixed) {
                fixes = false;
                break;
            }
        }
        if (fixes) out.pointwise_stabilizer.push_back(k);
    }
    out.index = out.subgroup_order / out.pointwise_stabilizer.size();
    return out;
}

}  // namespace cubulate
