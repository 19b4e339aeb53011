#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubulate/graph.hpp"

namespace cubulate {

// Half-integers stored as twice their value, so comparisons stay exact.
struct HalfInteger {
    int twice = 0;
    bool operator==(const HalfInteger&) const = default;
    bool operator<=(const HalfInteger& o) const { return twice <= o.twice; }
    std::string str() const;
};

struct CoarseOptions {
    uint32_t bottleneck_size_limit = 5000;
    uint32_t circuit_length_bound = 12;
};

// Least D such that for every vertex pair (x, y) some midpoint m (a vertex
// at distance ceil(d/2) from x on a geodesic) has the property that every
// x-y path meets the ball B(m, D). Paths all meet B(m, D) exactly when
// removing the ball disconnects x from y, so the test is ball removal
// plus BFS rather than path enumeration. Trees give 0.
int bottleneck_delta(const Graph& g, const CoarseOptions& opts = {});

// Exact four-point condition: over all vertex quadruples, half the gap
// between the two largest of the three pairings of distance sums.
HalfInteger hyperbolicity_delta(const Graph& g);

// Number of simple circuits of length exactly r through the edge (u, v).
uint64_t circuits_through(const Graph& g, uint32_t u, uint32_t v, uint32_t r,
                          const CoarseOptions& opts = {});

struct GeometryReport {
    int bottleneck = 0;
    HalfInteger hyperbolicity;
    // circuit_profile[i] = max over edges of circuits of length (3 + i).
    std::vector<uint64_t> circuit_profile;
    uint32_t vertex_count = 0;
    uint32_t edge_count = 0;
    // The recorded bound a bottleneck graph imposes on the four-point
    // constant at this scale; reports flag when it is violated.
    HalfInteger hyperbolicity_bound() const { return HalfInteger{4 * bottleneck + 2}; }
};

GeometryReport geometry_report(const Graph& g, uint32_t circuit_r_max = 8,
                               const CoarseOptions& opts = {});

}  // namespace cubulate
