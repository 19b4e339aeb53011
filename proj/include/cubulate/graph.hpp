#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cubulate {

// Simple undirected graph on vertices 0..n-1. Parallel edges and loops
// are rejected; adjacency lists are kept sorted so traversals are
// deterministic.
class Graph {
  public:
    explicit Graph(uint32_t n = 0) : adj_(n) {}

    uint32_t vertex_count() const { return static_cast<uint32_t>(adj_.size()); }
    uint32_t edge_count() const { return static_cast<uint32_t>(edges_.size()); }
    const std::vector<std::pair<uint32_t, uint32_t>>& edges() const { return edges_; }
    const std::vector<uint32_t>& neighbors(uint32_t v) const { return adj_.at(v); }

    void add_edge(uint32_t a, uint32_t b);
    bool adjacent(uint32_t a, uint32_t b) const;

    bool connected() const;

    // BFS distances from src; unreachable vertices get -1.
    std::vector<int> distances_from(uint32_t src) const;

    // Distance matrix by repeated BFS.
    std::vector<std::vector<int>> all_pairs_distances() const;

    // BFS distances avoiding a forbidden vertex set; forbidden vertices
    // and vertices behind them get -1.
    std::vector<int> distances_avoiding(uint32_t src,
                                        const std::vector<char>& forbidden) const;

  private:
    std::vector<std::vector<uint32_t>> adj_;
    std::vector<std::pair<uint32_t, uint32_t>> edges_;
};

}  // namespace cubulate
