#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubulate/action.hpp"

namespace cubulate {

// Machine-checkable witnesses. Every certificate replays: re-running its
// checks through the action must reproduce the claimed inclusions or
// fixings, and searches emit the lexicographically least success, so runs
// are deterministic.

// h^n maps the chosen side of the wall strictly inside itself. The
// witness q lies in the side, at least `margin` away from the truncation
// boundary, with h^-n q inside the ball but outside the side.
struct SkewerCertificate {
    uint32_t wall = 0;
    std::string wall_label;
    Sign side = Sign::plus;
    int exponent = 1;
    GroupElement element;
    uint32_t witness = 0;
    int radius = 0;
    int margin = 0;
};

// h^-n (g W)+ strictly inside (g W)+ strictly inside h^n (g W)+ for the
// translated wall g W. One deep witness certifies both strict inclusions:
// it lies in the side while h^n carries it out of the side.
struct AxisSepCertificate {
    TranslatedWall base;
    std::string wall_label;
    GroupElement conjugator;
    Sign side = Sign::plus;
    int exponent = 1;
    GroupElement element;
    uint32_t witness = 0;
    int radius = 0;
    int margin = 0;
};

// A vertex every generator fixes on all verifiable walls. Walls whose
// images leave the truncation are excused only within margin + |g| of the
// boundary; `excused_walls` counts them.
struct EllipticityCertificate {
    uint32_t vertex = 0;
    std::vector<GroupElement> gens;
    uint32_t excused_walls = 0;
};

// Witnesses of escape: points of the halfspace, word distance from the
// wall core strictly increasing, the last one at or beyond the horizon.
struct DeepnessCertificate {
    std::vector<std::pair<uint32_t, int>> escape;  // (point, distance)
};

struct Inconclusive {
    std::string reason;
};

bool verify_skewer(const ActionContext& ctx, const SkewerCertificate& cert,
                   std::string* why = nullptr);
bool verify_axis_sep(const ActionContext& ctx, const AxisSepCertificate& cert,
                     std::string* why = nullptr);
bool verify_ellipticity(const ActionContext& ctx, const EllipticityCertificate& cert,
                        std::string* why = nullptr);
bool verify_deepness(const ActionContext& ctx, uint32_t wall, Sign side, int horizon,
                     const DeepnessCertificate& cert, std::string* why = nullptr);

namespace detail {

// Every point of the side whose image under `forward` stays in the ball
// must land back in the side.
bool side_contracts(const ActionContext& ctx, const PointSet& side, const GroupElement& forward,
                    std::string* why);

// q lies in the side, at depth >= margin, and `backward` carries it into
// the ball but out of the side; this is what makes the contraction strict.
bool witness_escapes(const ActionContext& ctx, const PointSet& side, const GroupElement& backward,
                     uint32_t q, int margin, std::string* why);

std::optional<uint32_t> find_escape_witness(const ActionContext& ctx, const PointSet& side,
                                            const GroupElement& backward, int margin);

}  // namespace detail

}  // namespace cubulate
