#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubulate/action.hpp"
#include "cubulate/certificates.hpp"

namespace cubulate {

struct SkewerOutcome {
    std::optional<SkewerCertificate> certificate;
    std::string reason;  // "torsion" or "horizon" when there is no certificate
    bool torsion() const { return reason == "torsion"; }
};

// Walls in index order, exponents ascending, '+' before '-'; the first
// success wins. Elements of finite order at most n_max short-circuit to
// Inconclusive("torsion"): strict nesting would contradict h^m = e.
SkewerOutcome skewer_search(const ActionContext& ctx, const GroupElement& h, int n_max,
                            const std::vector<uint32_t>& wall_filter = {});

struct AxisSepOutcome {
    std::optional<AxisSepCertificate> certificate;
    std::string reason;
    bool torsion() const { return reason == "torsion"; }
};

struct AxisSepBounds {
    int n_max = 6;
    int conjugator_radius = 4;
};

// Base walls in the given order, exponents ascending, conjugators by
// (length, lex) with the identity first, '+' before '-'.
AxisSepOutcome axis_separation_search(const ActionContext& ctx, const GroupElement& h,
                                      const std::vector<TranslatedWall>& base_walls,
                                      const AxisSepBounds& bounds);

struct FixedPointOutcome {
    std::optional<EllipticityCertificate> certificate;
    std::string reason;  // "horizon" or "no fixed vertex"
};

// Scans vertices in canonical order for one fixed by all generators on
// every verifiable wall. An empty generator list certifies vertex 0.
FixedPointOutcome fixed_point_search(const ActionContext& ctx,
                                     const std::vector<GroupElement>& gens);

enum class Depth { deep, shallow, inconclusive };

struct DeepnessOutcome {
    Depth verdict = Depth::inconclusive;
    DeepnessCertificate certificate;  // nonempty when deep
    std::string note;
    bool subgroup_closed = false;
};

// Deep when subgroup points inside the strict side of the halfspace reach
// word distance `horizon` from the wall core; shallow when the subgroup
// sweep closes (the subgroup is finite and fully enumerated) or no
// subgroup point enters the side at this truncation.
DeepnessOutcome deepness(const ActionContext& ctx, const std::vector<GroupElement>& p_gens,
                         Halfspace h, int horizon);
DeepnessOutcome deepness(const ActionContext& ctx, const SubgroupSweep& sweep, Halfspace h,
                         int horizon);

struct EssentialWall {
    uint32_t wall = 0;  // index into the context family
    TranslatedWall provenance;
    DeepnessOutcome plus_side;
    DeepnessOutcome minus_side;
};

// Walls of the family that cut the subgroup essentially (deep on both
// sides), reduced to subgroup-orbit representatives, first index first.
std::vector<EssentialWall> essential_wall_search(const ActionContext& ctx,
                                                 const std::vector<GroupElement>& p_gens,
                                                 int horizon);

struct FixedGeodesic {
    std::vector<uint32_t> vertices;  // v1 .. v2, lexicographically least geodesic
    std::vector<GroupElement> pointwise_stabilizer;  // all elements of K0
    uint64_t subgroup_order = 1;                     // |K|
    uint64_t index = 1;                              // [K : K0]
};

// For a finite K fixing v1 and v2: the lexicographically least
// combinatorial geodesic, the subgroup of K fixing it pointwise, and its
// index in K.
FixedGeodesic pointwise_fixed_geodesic(const ActionContext& ctx,
                                       const std::vector<GroupElement>& k_gens, uint32_t v1,
                                       uint32_t v2);

}  // namespace cubulate
