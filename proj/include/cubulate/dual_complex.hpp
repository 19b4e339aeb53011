#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubulate/graph.hpp"
#include "cubulate/wallspace.hpp"

namespace cubulate {

// One side chosen per wall, one bit per wall: 0 = '+', 1 = '-'.
// An orientation is consistent when every two chosen sides intersect;
// consistent orientations are the vertices of the dual cube complex.
using Orientation = PointSet;

inline Sign orientation_sign(const Orientation& o, uint32_t wall) {
    return o.test(wall) ? Sign::minus : Sign::plus;
}

// Lexicographic order on the side arrays, wall 0 first, '+' before '-'.
bool orientation_less(const Orientation& a, const Orientation& b);

std::string orientation_string(const Orientation& o);

struct DualEdge {
    uint32_t u, v;   // vertex indices, u < v
    uint32_t wall;   // the single wall the edge flips
};

// A k-cube, k >= 2: a base vertex (the lexicographically least corner)
// together with the k pairwise-crossing walls spanning it.
struct Cube {
    uint32_t base;
    std::vector<uint32_t> walls;  // sorted
};

struct Hyperplane {
    uint32_t wall;
    std::vector<uint32_t> dual_edges;  // edge indices flipping this wall
    std::vector<uint32_t> plus_side;   // vertices choosing '+'
    std::vector<uint32_t> minus_side;  // vertices choosing '-'
};

struct BuildOptions {
    uint32_t wall_budget = 24;
    uint64_t vertex_budget = 1u << 20;
};

// The cube complex dual to a finite wallspace. Immutable once built;
// safe for concurrent readers.
class CubeComplex {
  public:
    const Wallspace& wallspace() const { return *ws_; }
    std::shared_ptr<const Wallspace> wallspace_ptr() const { return ws_; }

    uint32_t vertex_count() const { return static_cast<uint32_t>(vertices_.size()); }
    const Orientation& vertex(uint32_t v) const { return vertices_.at(v); }
    const std::vector<Orientation>& vertices() const { return vertices_; }
    std::optional<uint32_t> vertex_index(const Orientation& o) const;

    const std::vector<DualEdge>& edges() const { return edges_; }
    // Neighbors of v as (vertex, wall) pairs, sorted by neighbor index.
    const std::vector<std::pair<uint32_t, uint32_t>>& neighbors(uint32_t v) const {
        return adj_.at(v);
    }

    const std::vector<Cube>& cubes() const { return cubes_; }
    // census()[k] = number of k-cubes (census()[0] = vertices, [1] = edges).
    const std::vector<uint64_t>& census() const { return census_; }
    uint32_t dimension() const;

    // Throws verification_error if the wall is flipped by no edge (the
    // wall is invisible in the complex).
    const Hyperplane& hyperplane(uint32_t wall) const;
    bool wall_visible(uint32_t wall) const;

    Graph skeleton() const;

    friend CubeComplex build_dual(std::shared_ptr<const Wallspace> ws,
                                  const BuildOptions& opts);

  private:
    std::shared_ptr<const Wallspace> ws_;
    std::vector<Orientation> vertices_;
    std::unordered_map<std::string, uint32_t> index_;  // orientation bits -> vertex
    std::vector<DualEdge> edges_;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adj_;
    std::vector<Cube> cubes_;
    std::vector<uint64_t> census_;
    std::vector<Hyperplane> hyperplanes_;

    static std::string key_of(const Orientation& o);
};

// The orientation sending every wall to the side containing p; points in
// a wall's core go to '+'. Always consistent: every chosen side contains p.
Orientation principal_orientation(const Wallspace& ws, uint32_t point);

// Whether every pair of chosen sides intersects.
bool orientation_consistent(const Wallspace& ws, const Orientation& o);

// Sageev's construction over a finite wallspace: vertices are the closure
// of the principal orientations under consistency-preserving single-wall
// flips, with canonical (lexicographic) vertex order. Edges join
// orientations differing on one wall; k-cubes are pairwise-crossing wall
// sets all of whose 2^k corner flips are vertices.
CubeComplex build_dual(std::shared_ptr<const Wallspace> ws,
                       const BuildOptions& opts = {});

// The unique vertex on pairwise geodesics between u, v, w: the
// wall-by-wall majority orientation.
uint32_t median(const CubeComplex& X, uint32_t u, uint32_t v, uint32_t w);

struct MedianCheckResult {
    bool ok = true;
    uint32_t u = 0, v = 0, w = 0;  // offending triple when !ok
    std::string reason;
};

// Exhaustive check that every vertex triple has exactly one vertex on
// pairwise geodesics. Works on any connected graph, so fake complexes
// can be probed too.
MedianCheckResult verify_median_graph(const Graph& g);

// As above, and additionally checks the unique median is the majority
// orientation.
MedianCheckResult verify_median_graph(const CubeComplex& X);

// DOT rendering of the 1-skeleton; edges are labelled by wall index.
std::string to_dot(const CubeComplex& X, const std::string& graph_name = "dual");

}  // namespace cubulate
