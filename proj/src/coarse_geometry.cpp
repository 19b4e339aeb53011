#include "cubulate/coarse_geometry.hpp"

#include <algorithm>
#include <sstream>

#include "cubulate/errors.hpp"

namespace cubulate {

std::string HalfInteger::str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    std::ostringstream out;
    out << twice << "/2";
    return out.str();
}

namespace {

// True iff every x-y path meets the closed ball B(m, radius): either an
// endpoint is inside the ball, or removing it separates x from y.
bool ball_blocks(const Graph& g, const std::vector<int>& dist_m, uint32_t x, uint32_t y,
                 int radius) {
    if (dist_m[x] <= radius || dist_m[y] <= radius) return true;
    std::vector<char> forbidden(g.vertex_count(), 0);
    for (uint32_t v = 0; v < g.vertex_count(); ++v)
        if (dist_m[v] >= 0 && dist_m[v] <= radius) forbidden[v] = 1;
    auto d = g.distances_avoiding(x, forbidden);
    return d[y] < 0;
}

}  // namespace

int bottleneck_delta(const Graph& g, const CoarseOptions& opts) {
    const uint32_t n = g.vertex_count();
    if (n > opts.bottleneck_size_limit)
        throw resource_error("graph too large for bottleneck computation (" +
                             std::to_string(n) + " vertices)");
    if (!g.connected()) throw input_error("bottleneck_delta needs a connected graph");
    if (n == 0) return 0;

    auto dist = g.all_pairs_distances();
    int global = 0;
    for (uint32_t x = 0; x < n; ++x)
        for (uint32_t y = x + 1; y < n; ++y) {
            const int d = dist[x][y];
            const int half = (d + 1) / 2;
            // midpoints: vertices at distance ceil(d/2) from x on a geodesic
            int best = -1;
            for (uint32_t m = 0; m < n && best != 0; ++m) {
                if (dist[x][m] != half || dist[x][m] + dist[m][y] != d) continue;
                int lo = 0, hi = std::max(global, 0);
                // grow hi until it blocks, then binary search the least radius
                while (!ball_blocks(g, dist[m], x, y, hi)) hi = hi == 0 ? 1 : hi * 2;
                while (lo < hi) {
                    int mid = (lo + hi) / 2;
                    if (ball_blocks(g, dist[m], x, y, mid))
                        hi = mid;
                    else
                        lo = mid + 1;
                }
                if (best < 0 || lo < best) best = lo;
            }
            if (best > global) global = best;
        }
    return global;
}

HalfInteger hyperbolicity_delta(const Graph& g) {
    const uint32_t n = g.vertex_count();
    if (!g.connected()) throw input_error("hyperbolicity_delta needs a connected graph");
    if (n < 4) return HalfInteger{0};
    auto dist = g.all_pairs_distances();
    int worst = 0;
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = a + 1; b < n; ++b)
            for (uint32_t c = b + 1; c < n; ++c)
                for (uint32_t d = c + 1; d < n; ++d) {
                    int s1 = dist[a][b] + dist[c][d];
                    int s2 = dist[a][c] + dist[b][d];
                    int s3 = dist[a][d] + dist[b][c];
                    int hi = std::max({s1, s2, s3});
                    int mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
                    worst = std::max(worst, hi - mid);
                }
    return HalfInteger{worst};  // (hi - mid) / 2, stored doubled
}

uint64_t circuits_through(const Graph& g, uint32_t u, uint32_t v, uint32_t r,
                          const CoarseOptions& opts) {
    if (!g.adjacent(u, v)) throw input_error("circuits_through: (u, v) is not an edge");
    if (r < 3) throw input_error("circuits_through needs r >= 3");
    if (r > opts.circuit_length_bound)
        throw resource_error("circuit length " + std::to_string(r) + " over the bound " +
                             std::to_string(opts.circuit_length_bound));

    // A circuit of length r through (u, v) is a simple u-v path of length
    // r - 1 avoiding the edge itself. DFS with a distance-to-target prune.
    auto dist_to_v = g.distances_from(v);
    std::vector<char> used(g.vertex_count(), 0);
    uint64_t count = 0;
    used[u] = 1;
    auto dfs = [&](auto&& self, uint32_t at, uint32_t remaining) -> void {
        if (remaining == 0) {
            if (at == v) ++count;
            return;
        }
        for (uint32_t next : g.neighbors(at)) {
            if (used[next]) continue;
            if (at == u && next == v) continue;  // skip the edge itself
            if (next == v && remaining != 1) continue;
            if (dist_to_v[next] < 0 || static_cast<uint32_t>(dist_to_v[next]) > remaining)
                continue;
            used[next] = 1;
            self(self, next, remaining - 1);
            used[next] = 0;
        }
    };
    dfs(dfs, u, r - 1);
    return count;
}

GeometryReport geometry_report(const Graph& g, uint32_t circuit_r_max,
                               const CoarseOptions& opts) {
    GeometryReport rep;
    rep.vertex_count = g.vertex_count();
    rep.edge_count = g.edge_count();
    rep.bottleneck = bottleneck_delta(g, opts);
    rep.hyperbolicity = hyperbolicity_delta(g);
    circuit_r_max = std::min(circuit_r_max, opts.circuit_length_bound);
    for (uint32_t r = 3; r <= circuit_r_max; ++r) {
        uint64_t worst = 0;
        for (const auto& [u, v] : g.edges())
            worst = std::max(worst, circuits_through(g, u, v, r, opts));
        rep.circuit_profile.push_back(worst);
    }
    return rep;
}

}  // namespace cubulate
