#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cubulate/errors.hpp"

namespace cubulate {

// Subset of the point universe of a wallspace, one bit per point.
using PointSet = boost::dynamic_bitset<uint64_t>;

enum class Sign : uint8_t { plus = 0, minus = 1 };

inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

// A wall is a pair of subsets whose union is the whole point universe.
// The sides may overlap; the overlap is the core. Order and crossing
// predicates are read off the strict sides (side minus core), the usual
// pocset resolution for halfspace pairs with bounded overlap.
struct Wall {
    PointSet positive;
    PointSet negative;
    PointSet core;             // positive & negative
    PointSet strict_positive;  // positive - core
    PointSet strict_negative;  // negative - core

    Wall(PointSet pos, PointSet neg);

    const PointSet& side(Sign s) const {
        return s == Sign::plus ? positive : negative;
    }
    const PointSet& strict_side(Sign s) const {
        return s == Sign::plus ? strict_positive : strict_negative;
    }

    // Equality as an unordered halfspace pair; used for duplicate rejection.
    bool same_unordered(const Wall& other) const;
};

// One side of a wall, by index and sign.
struct Halfspace {
    uint32_t wall;
    Sign sign;
};

// A finite wallspace: named points plus a duplicate-free wall list.
// Immutable after construction; all predicates are pure, so concurrent
// readers are safe.
class Wallspace {
  public:
    Wallspace(std::vector<std::string> point_names, std::vector<Wall> walls,
              std::string name = "");

    static Wallspace from_json_text(const std::string& text);
    std::string to_json_text() const;

    const std::string& name() const { return name_; }
    uint32_t point_count() const { return static_cast<uint32_t>(point_names_.size()); }
    uint32_t wall_count() const { return static_cast<uint32_t>(walls_.size()); }
    const std::vector<Wall>& walls() const { return walls_; }
    const Wall& wall(uint32_t w) const { return walls_.at(w); }

    const std::string& point_name(uint32_t p) const { return point_names_.at(p); }
    const std::vector<std::string>& point_names() const { return point_names_; }
    // Throws input_error for unknown names.
    uint32_t point_index(const std::string& name) const;

    const PointSet& strict_side(Halfspace h) const {
        return walls_.at(h.wall).strict_side(h.sign);
    }
    const PointSet& side(Halfspace h) const { return walls_.at(h.wall).side(h.sign); }

    // True iff all four pairwise intersections of strict sides are nonempty.
    bool crosses(uint32_t w1, uint32_t w2) const;

    // True iff strict_side(h1) is a proper subset of strict_side(h2).
    bool nests(Halfspace h1, Halfspace h2) const;

    // Number of walls whose strict sides separate x from y.
    uint32_t wall_separation(uint32_t x, uint32_t y) const;
    uint32_t wall_separation(const std::string& x, const std::string& y) const;

    // A wall made from two point-name lists (overlap allowed).
    Wall make_wall(const std::vector<std::string>& positive,
                   const std::vector<std::string>& negative) const;
    PointSet make_point_set(const std::vector<std::string>& names) const;

  private:
    std::string name_;
    std::vector<std::string> point_names_;
    std::vector<Wall> walls_;

    void validate() const;
};

}  // namespace cubulate
