#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubulate/action.hpp"
#include "cubulate/coarse_geometry.hpp"
#include "cubulate/search.hpp"

namespace cubulate {

// The dual complex of a peripheral subgroup's essential walls, restricted
// to the subgroup truncation, with its quasi-tree diagnostics.
struct PeripheralDual {
    std::shared_ptr<ActionContext> ctx;
    GeometryReport geometry;
    uint64_t edge_orbits = 0;  // subgroup orbits of edges at the horizon
    bool hyperplane_edge_bound_ok = true;
    std::vector<EssentialWall> walls_used;
};

// Throws input_error("...already elliptic") when no essential walls are
// given.
PeripheralDual build_peripheral_dual(const GroupModel& model,
                                     const std::vector<GroupElement>& p_gens,
                                     const std::vector<EssentialWall>& essential,
                                     ContextOptions opts);

struct StabilizerInfo {
    uint32_t vertex = 0;          // least vertex of the orbit
    uint32_t representative = 0;  // deepest vertex of the orbit (ties: least)
    int depth = 0;                // its depth
    bool interior = false;        // depth at least the margin
    uint64_t orbit_size = 0;
    bool orbit_hit_horizon = false;
    std::vector<GroupElement> gens;  // Schreier generators at the representative
    bool finite = true;              // subgroup sweep closed
    uint64_t order = 1;
    std::vector<GroupElement> elements;  // when finite
};

// Orbit-stabilizer sweep over the vertices: one entry per vertex orbit,
// stabilizers generated by Schreier elements and classified finite or
// infinite-at-horizon. Stabilizers are computed at the deepest orbit
// vertex; orbits that never reach the interior carry truncation
// artifacts (a cut-off line end is fixed at horizon by a translation)
// and are flagged non-interior.
std::vector<StabilizerInfo> vertex_stabilizers(const ActionContext& ctx,
                                               const std::vector<GroupElement>& p_gens);

struct RefinedEntry {
    std::string label;
    std::vector<GroupElement> gens;  // canonical conjugacy representative
    GroupElement conjugator;         // conj * gens * conj^-1 sits inside the source
    std::string source;              // source peripheral label
    bool kept = false;               // peripheral was already elliptic
    bool finite = true;
    uint64_t order = 0;              // 0 when infinite-at-horizon
    EllipticityCertificate ellipticity;
};

struct RefineReport {
    bool ok = false;
    std::string failure;        // verification counterexample, when not ok
    std::string inconclusive;   // horizon-bound abort, when not ok
    std::vector<RefinedEntry> entries;

    struct PerPeripheral {
        std::string label;
        bool kept = false;
        bool virtually_free = false;  // every vertex stabilizer trivial
        std::vector<EssentialWall> essential;
        std::optional<GeometryReport> dual_geometry;
        uint64_t dual_vertices = 0;
        uint64_t dual_edges = 0;
        uint64_t edge_orbits = 0;
        std::vector<StabilizerInfo> stabilizers;
        std::vector<std::string> soundness_log;
    };
    std::vector<PerPeripheral> details;
};

// For each peripheral: keep it when it fixes a vertex of X; otherwise
// build the dual of its essential walls, harvest vertex stabilizer
// representatives, and verify that the replacements are elliptic on X and
// that sampled elements acting hyperbolically on the peripheral dual earn
// axis separation certificates for the wall data.
RefineReport refine_structure(const GroupModel& model, const ActionContext& X,
                              ContextOptions opts);

struct AuditReport {
    bool ok = false;
    std::string failure;

    struct OrbitCounts {
        int radius = 0;
        std::vector<uint64_t> per_dim;  // interior cell orbits by dimension
    };
    OrbitCounts counts_low, counts_high;
    bool cocompact_ok = false;

    struct EllipticityRow {
        std::string label;
        bool ok = false;
        EllipticityCertificate cert;
    };
    std::vector<EllipticityRow> ellipticity;
    bool ellipticity_ok = false;

    struct StabilizerRow {
        std::string cell;
        uint64_t stabilizer_order = 0;  // 0 = infinite-at-horizon
        bool trivial = false;
        std::string matched_entry;  // empty when unmatched
        std::string conjugator;
        uint64_t index_bound = 0;
        bool ok = false;
    };
    std::vector<StabilizerRow> stabilizers;
    bool stabilizers_ok = false;
};

// The three checks at truncation scale: interior cell-orbit counts agree
// across two radii (opts.radius and opts.radius + 2); every refined entry
// carries an ellipticity certificate; every nontrivial cell stabilizer
// embeds in a conjugate of some entry with an index bound.
AuditReport relatively_geometric_audit(const GroupModel& model,
                                       const std::vector<RefinedEntry>& entries,
                                       ContextOptions opts);

}  // namespace cubulate
