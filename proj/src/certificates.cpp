#include "cubulate/certificates.hpp"

#include <sstream>

#include "cubulate/errors.hpp"

namespace cubulate {

namespace detail {

bool side_contracts(const ActionContext& ctx, const PointSet& side, const GroupElement& forward,
                    std::string* why) {
    const auto& row = ctx.point_row(forward);
    for (auto p = side.find_first(); p != PointSet::npos; p = side.find_next(p)) {
        auto q = row[p];
        if (q && !side.test(*q)) {
            if (why) {
                std::ostringstream msg;
                msg << "point " << ctx.point_name(static_cast<uint32_t>(p))
                    << " maps to " << ctx.point_name(*q) << ", outside the side";
                *why = msg.str();
            }
            return false;
        }
    }
    return true;
}

bool witness_escapes(const ActionContext& ctx, const PointSet& side, const GroupElement& backward,
                     uint32_t q, int margin, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (q >= ctx.point_count()) return fail("witness point out of range");
    if (!side.test(q)) return fail("witness " + ctx.point_name(q) + " is not in the side");
    if (ctx.point_depth(q) < margin)
        return fail("witness " + ctx.point_name(q) + " is within the truncation margin");
    auto r = ctx.point_row(backward)[q];
    if (!r) return fail("witness image leaves the truncation");
    if (side.test(*r))
        return fail("witness image " + ctx.point_name(*r) + " stays in the side");
    return true;
}

std::optional<uint32_t> find_escape_witness(const ActionContext& ctx, const PointSet& side,
                                            const GroupElement& backward, int margin) {
    const auto& row = ctx.point_row(backward);
    for (auto p = side.find_first(); p != PointSet::npos; p = side.find_next(p)) {
        uint32_t q = static_cast<uint32_t>(p);
        if (ctx.point_depth(q) < margin) continue;
        auto r = row[q];
        if (r && !side.test(*r)) return q;
    }
    return std::nullopt;
}

}  // namespace detail

bool verify_skewer(const ActionContext& ctx, const SkewerCertificate& cert, std::string* why) {
    if (cert.exponent < 1) {
        if (why) *why = "exponent must be positive";
        return false;
    }
    if (cert.wall >= ctx.wallspace().wall_count()) {
        if (why) *why = "wall index out of range";
        return false;
    }
    const PointSet& side = ctx.wallspace().wall(cert.wall).side(cert.side);
    GroupElement fwd = ctx.model().power(cert.element, cert.exponent);
    GroupElement bwd = ctx.model().inverse(fwd);
    return detail::side_contracts(ctx, side, fwd, why) &&
           detail::witness_escapes(ctx, side, bwd, cert.witness, cert.margin, why);
}

bool verify_axis_sep(const ActionContext& ctx, const AxisSepCertificate& cert,
                     std::string* why) {
    if (cert.exponent < 1) {
        if (why) *why = "exponent must be positive";
        return false;
    }
    TranslatedWall moved{cert.base.datum,
                         ctx.model().mul(cert.conjugator, cert.base.translator)};
    auto wall = ctx.materialize(moved);
    if (!wall) {
        if (why) *why = "translated wall is degenerate at this truncation";
        return false;
    }
    const PointSet& side = wall->side(cert.side);
    // h^-n side strictly inside side; applying h^n transports the same
    // witness to the upper strict inclusion side < h^n side
    GroupElement fwd = ctx.model().power(cert.element, -cert.exponent);
    GroupElement bwd = ctx.model().inverse(fwd);
    return detail::side_contracts(ctx, side, fwd, why) &&
           detail::witness_escapes(ctx, side, bwd, cert.witness, cert.margin, why);
}

bool verify_ellipticity(const ActionContext& ctx, const EllipticityCertificate& cert,
                        std::string* why) {
    if (cert.vertex >= ctx.complex().vertex_count()) {
        if (why) *why = "vertex index out of range";
        return false;
    }
    if (ctx.vertex_depth(cert.vertex) < ctx.options().margin) {
        if (why)
            *why = "vertex " + std::to_string(cert.vertex) +
                   " sits within the truncation margin";
        return false;
    }
    const Orientation& sigma = ctx.complex().vertex(cert.vertex);
    uint32_t excused = 0;
    for (const GroupElement& g : cert.gens) {
        auto img = ctx.act_vertex(g, cert.vertex);
        if (img.defined.none()) {
            if (why) *why = "no wall image is verifiable for " + ctx.model().display(g);
            return false;
        }
        Orientation mismatch = (img.bits ^ sigma) & img.defined;
        if (mismatch.any()) {
            if (why) {
                std::ostringstream msg;
                msg << ctx.model().display(g) << " moves vertex " << cert.vertex
                    << " across wall " << mismatch.find_first();
                *why = msg.str();
            }
            return false;
        }
        const int reach = ctx.options().margin + static_cast<int>(ctx.model().length(g));
        for (uint32_t w = 0; w < ctx.wallspace().wall_count(); ++w) {
            if (img.defined.test(w)) continue;
            if (ctx.wall_depth(w) >= reach) {
                if (why) {
                    std::ostringstream msg;
                    msg << "wall " << w << " (depth " << ctx.wall_depth(w)
                        << ") escaped under " << ctx.model().display(g)
                        << " although it sits outside the margin";
                    *why = msg.str();
                }
                return false;
            }
            ++excused;
        }
    }
    if (excused != cert.excused_walls) {
        if (why)
            *why = "excused wall count " + std::to_string(excused) + " differs from the recorded " +
                   std::to_string(cert.excused_walls);
        return false;
    }
    return true;
}

bool verify_deepness(const ActionContext& ctx, uint32_t wall, Sign side, int horizon,
                     const DeepnessCertificate& cert, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (cert.escape.empty()) return fail("empty escape sequence");
    const Wall& w = ctx.wallspace().wall(wall);
    const PointSet& strict = w.strict_side(side);
    const PointSet& anchor = w.core.any() ? w.core : w.side(opposite(side));
    int last = 0;
    for (const auto& [p, d] : cert.escape) {
        if (p >= ctx.point_count()) return fail("escape point out of range");
        if (!strict.test(p))
            return fail("escape point " + ctx.point_name(p) + " is not strictly in the side");
        int actual = ctx.distance_to_set(p, anchor);
        if (actual != d)
            return fail("recorded distance " + std::to_string(d) + " of " + ctx.point_name(p) +
                        " is actually " + std::to_string(actual));
        if (d <= last) return fail("escape distances are not strictly increasing");
        last = d;
    }
    if (last < horizon)
        return fail("escape stops at distance " + std::to_string(last) + " before the horizon " +
                    std::to_string(horizon));
    return true;
}

}  // namespace cubulate
