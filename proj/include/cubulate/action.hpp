#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubulate/dual_complex.hpp"
#include "cubulate/group_model.hpp"
#include "cubulate/wallspace.hpp"

namespace cubulate {

// A wall datum moved by a group element. Free product walls are
// membership rules, so translates are exact group-theoretic objects and
// only their restriction to the truncation is approximate.
struct TranslatedWall {
    uint32_t datum = 0;
    GroupElement translator;
};

struct ContextOptions {
    int radius = 6;
    int margin = 2;
    int n_max = 6;
    int translate_radius = -1;  // walls translated this far; -1 means radius
    uint32_t wall_budget = 1024;
    uint64_t vertex_budget = 1u << 20;
    uint32_t subgroup_cap = 200000;

    static ContextOptions from(const GroupModel::Horizons& h) {
        ContextOptions o;
        o.radius = h.radius;
        o.margin = h.margin;
        o.n_max = h.n_max;
        return o;
    }
};

// Subgroup elements found inside the truncation ball. `closed` means no
// product escaped, so the list is the whole subgroup.
struct SubgroupSweep {
    std::vector<GroupElement> elements;  // sorted by (length, lex); identity first
    bool closed = true;
};

// A group model bound to a truncated point universe, a materialized wall
// family, and the dual complex, with the partial action on points, walls
// and vertices. Immutable once built.
class ActionContext {
  public:
    // Points are the Cayley ball (free products) or the permutation
    // domain; the family holds every distinct valid translate of the
    // model's wall data by translators in the translate ball.
    static ActionContext over_group(const GroupModel& model, ContextOptions opts);

    // Points are the subgroup ball; the family holds the distinct valid
    // subgroup translates of the given walls, restricted to those points.
    static ActionContext over_subgroup(const GroupModel& model,
                                       const std::vector<GroupElement>& subgroup_gens,
                                       const std::vector<TranslatedWall>& walls,
                                       ContextOptions opts);

    const GroupModel& model() const { return model_; }
    const ContextOptions& options() const { return opts_; }
    const Wallspace& wallspace() const { return *ws_; }
    const CubeComplex& complex() const { return X_; }
    const std::vector<TranslatedWall>& family() const { return family_; }
    std::string wall_label(uint32_t w) const;

    uint32_t point_count() const;
    const std::string& point_name(uint32_t p) const;
    // Distance from the truncation boundary; permutation domains have no
    // boundary and report a large depth.
    int point_depth(uint32_t p) const;
    // Free product points are group elements.
    const GroupElement& point_element(uint32_t p) const;
    std::optional<uint32_t> point_index(const GroupElement& g) const;

    std::optional<uint32_t> act_point(const GroupElement& g, uint32_t p) const;
    // Cached image row of a fixed element over all points.
    const std::vector<std::optional<uint32_t>>& point_row(const GroupElement& g) const;
    std::optional<std::pair<uint32_t, Sign>> act_wall(const GroupElement& g,
                                                      uint32_t wall) const;
    // Depth of the wall's canonical translator inside the truncation.
    int wall_depth(uint32_t wall) const;

    // Image of a wall under an element. A translate that no longer splits
    // the truncation leaves the whole ball strictly on one side; an
    // orientation of the truncation is forced to choose that side, which
    // is how coordinates on walls pushed past the boundary stay defined.
    struct WallImage {
        enum class Kind { family, forced, undefined };
        Kind kind = Kind::undefined;
        uint32_t index = 0;  // family walls
        Sign sign = Sign::plus;
    };
    const std::vector<WallImage>& wall_image_row(const GroupElement& g) const;

    struct PartialVertexImage {
        Orientation bits;   // meaningful where defined
        PointSet defined;   // one bit per wall
        std::optional<uint32_t> vertex;  // set when fully defined
    };
    PartialVertexImage act_vertex(const GroupElement& g, uint32_t v) const;

    // Depth of a vertex: the depth of the nearest principal orientation
    // (fewest disagreeing walls, ties toward deeper points). Truncation
    // artifacts, such as the end gaps of a cut-off line, live at small
    // depth.
    int vertex_depth(uint32_t v) const;

    // Word metric distance from p to the nearest point of `set`
    // (free products: syllable length of c^-1 p; permutation models: 0).
    int distance_to_set(uint32_t p, const PointSet& set) const;

    SubgroupSweep sweep_subgroup(const std::vector<GroupElement>& gens) const;

    // All nontrivial products of generator letters up to the given word
    // length, deduplicated by canonical form, sorted (length, lex).
    std::vector<GroupElement> reduced_words(const std::vector<GroupElement>& gens,
                                            uint32_t max_length) const;

    std::optional<Wall> materialize(const TranslatedWall& tw) const;

  private:
    GroupModel model_;
    ContextOptions opts_;
    std::vector<NormalForm> fp_points_;  // free product models
    std::vector<std::pair<std::string, uint32_t>> fp_index_;  // sorted (key, point)
    std::vector<GroupElement> point_elements_;
    std::vector<std::string> perm_points_;  // permutation models
    std::vector<TranslatedWall> family_;
    std::shared_ptr<const Wallspace> ws_;
    CubeComplex X_;
    std::map<std::pair<std::string, std::string>, std::pair<uint32_t, Sign>> wall_lookup_;

    // lazily built per-element action rows; guarded so concurrent readers
    // stay safe
    struct Cache;
    mutable std::shared_ptr<Cache> cache_;

    static std::string set_key(const PointSet& s);
    void build_family_and_complex(const std::vector<TranslatedWall>& candidates,
                                  const std::vector<GroupElement>& translators);
    std::optional<Wall> materialize_fp(const TranslatedWall& tw) const;
    std::optional<Wall> materialize_perm(const TranslatedWall& tw) const;
};

}  // namespace cubulate
