#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "cubulate/dual_complex.hpp"
#include "cubulate/errors.hpp"
#include "test_util.hpp"

using namespace cubulate;

namespace {

CubeComplex build(Wallspace ws, BuildOptions opts = {}) {
    return build_dual(std::make_shared<Wallspace>(std::move(ws)), opts);
}

// independent oracle: all consistent orientations, kept when reachable
// from a principal orientation by consistency-preserving flips
std::set<std::string> oracle_vertex_set(const Wallspace& ws) {
    const uint32_t n = ws.wall_count();
    REQUIRE(n <= 20);
    std::vector<Orientation> consistent;
    for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
        Orientation o(n);
        for (uint32_t w = 0; w < n; ++w)
            if ((mask >> w) & 1) o.set(w);
        if (orientation_consistent(ws, o)) consistent.push_back(o);
    }
    std::set<std::string> all;
    for (const auto& o : consistent) all.insert(orientation_string(o));
    // BFS from principal orientations through single flips
    std::set<std::string> reached;
    std::vector<Orientation> queue;
    for (uint32_t p = 0; p < ws.point_count(); ++p) {
        Orientation o = principal_orientation(ws, p);
        if (reached.insert(orientation_string(o)).second) queue.push_back(o);
    }
    while (!queue.empty()) {
        Orientation o = queue.back();
        queue.pop_back();
        for (uint32_t w = 0; w < n; ++w) {
            Orientation t = o;
            t.flip(w);
            if (all.count(orientation_string(t)) &&
                reached.insert(orientation_string(t)).second)
                queue.push_back(t);
        }
    }
    return reached;
}

// independent median oracle: the unique vertex on pairwise geodesics,
// found through all-pairs BFS distances
std::optional<uint32_t> oracle_median(const CubeComplex& X, uint32_t u, uint32_t v,
                                      uint32_t w) {
    Graph g = X.skeleton();
    auto dist = g.all_pairs_distances();
    std::optional<uint32_t> found;
    for (uint32_t m = 0; m < X.vertex_count(); ++m) {
        if (dist[u][m] + dist[m][v] != dist[u][v]) continue;
        if (dist[u][m] + dist[m][w] != dist[u][w]) continue;
        if (dist[v][m] + dist[m][w] != dist[v][w]) continue;
        if (found) return std::nullopt;  // not unique
        found = m;
    }
    return found;
}

}  // namespace

TEST_CASE("single wall gives an edge") {
    CubeComplex X = build(testutil::crossing_walls(1));
    CHECK(X.vertex_count() == 2);
    CHECK(X.edges().size() == 1);
    CHECK(X.census().size() == 2);  // no squares
    CHECK(X.dimension() == 1);
}

TEST_CASE("pairwise-crossing walls give a single top cube") {
    for (uint32_t n = 2; n <= 5; ++n) {
        CAPTURE(n);
        CubeComplex X = build(testutil::crossing_walls(n));
        CHECK(X.vertex_count() == (1u << n));
        CHECK(X.census().size() == n + 1);
        CHECK(X.census()[n] == 1);  // exactly one n-cube
        CHECK(X.dimension() == n);
        // k-cubes: choose k walls, fix the rest
        for (uint32_t k = 2; k <= n; ++k) {
            uint64_t expected = 1;
            for (uint32_t i = 0; i < k; ++i) expected = expected * (n - i) / (i + 1);
            expected <<= (n - k);
            CHECK(X.census()[k] == expected);
        }
        // each hyperplane has 2^(n-1) dual edges
        for (uint32_t w = 0; w < n; ++w)
            CHECK(X.hyperplane(w).dual_edges.size() == (1u << (n - 1)));
    }
}

TEST_CASE("nested walls give a path") {
    for (uint32_t n = 1; n <= 8; ++n) {
        CAPTURE(n);
        CubeComplex X = build(testutil::nested_walls(n));
        CHECK(X.vertex_count() == n + 1);
        CHECK(X.edges().size() == n);
        CHECK(X.dimension() == (n >= 1 ? 1 : 0));
    }
}

TEST_CASE("vertex set matches the brute-force enumeration") {
    for (uint32_t seed : {31u, 32u, 33u, 34u, 35u, 36u}) {
        CAPTURE(seed);
        Wallspace ws = testutil::random_wallspace(seed);
        CubeComplex X = build(ws);
        auto oracle = oracle_vertex_set(ws);
        CHECK(X.vertex_count() == oracle.size());
        for (uint32_t v = 0; v < X.vertex_count(); ++v)
            CHECK(oracle.count(orientation_string(X.vertex(v))) == 1);
        // canonical ordering is strictly increasing
        for (uint32_t v = 1; v < X.vertex_count(); ++v)
            CHECK(orientation_less(X.vertex(v - 1), X.vertex(v)));
    }
}

TEST_CASE("principal orientations are consistent and respect the core tie rule") {
    std::vector<std::string> pts{"a", "b", "x"};
    PointSet pos(3), neg(3);
    pos.set(0);
    pos.set(2);
    neg.set(1);
    neg.set(2);
    Wallspace ws(pts, {Wall(pos, neg)}, "cored");
    // x sits in the core, so its wall is oriented '+'
    Orientation o = principal_orientation(ws, ws.point_index("x"));
    CHECK(orientation_sign(o, 0) == Sign::plus);
    CHECK(orientation_consistent(ws, o));
    CHECK_THROWS_AS(principal_orientation(ws, 99), input_error);
}

TEST_CASE("median is the majority orientation and matches the geodesic oracle") {
    Wallspace square = testutil::crossing_walls(2);
    CubeComplex X = build(square);
    // majority per coordinate on the square
    uint32_t v00 = 0, v01 = 1, v10 = 2;
    CHECK(median(X, v00, v01, v10) == v00);
    CHECK(median(X, v00, v00, v01) == v00);

    std::mt19937 rng(99);
    for (uint32_t seed : {41u, 42u, 43u}) {
        Wallspace ws = testutil::random_wallspace(seed);
        CubeComplex Y = build(ws);
        for (int trial = 0; trial < 25; ++trial) {
            uint32_t u = rng() % Y.vertex_count();
            uint32_t v = rng() % Y.vertex_count();
            uint32_t w = rng() % Y.vertex_count();
            auto expected = oracle_median(Y, u, v, w);
            REQUIRE(expected.has_value());
            CHECK(median(Y, u, v, w) == *expected);
        }
    }
}

TEST_CASE("verify_median_graph accepts builds and rejects the 5-cycle") {
    for (uint32_t seed : {51u, 52u, 53u}) {
        CubeComplex X = build(testutil::random_wallspace(seed));
        CHECK(verify_median_graph(X).ok);
    }
    CHECK(verify_median_graph(build(testutil::crossing_walls(3))).ok);

    Graph five(5);
    for (uint32_t i = 0; i < 5; ++i) five.add_edge(i, (i + 1) % 5);
    auto res = verify_median_graph(five);
    CHECK_FALSE(res.ok);

    // single vertex: vacuous pass
    Graph one(1);
    CHECK(verify_median_graph(one).ok);
}

TEST_CASE("duality: distance equals orientation disagreement and separation") {
    for (uint32_t seed : {61u, 62u, 63u}) {
        Wallspace ws = testutil::random_wallspace(seed);
        CubeComplex X = build(ws);
        Graph g = X.skeleton();
        auto dist = g.all_pairs_distances();
        for (uint32_t u = 0; u < X.vertex_count(); ++u)
            for (uint32_t v = 0; v < X.vertex_count(); ++v)
                CHECK(static_cast<size_t>(dist[u][v]) ==
                      (X.vertex(u) ^ X.vertex(v)).count());
        // for partition walls the principal distance is the separation
        for (uint32_t p = 0; p < ws.point_count(); ++p)
            for (uint32_t q = 0; q < ws.point_count(); ++q) {
                auto vp = X.vertex_index(principal_orientation(ws, p));
                auto vq = X.vertex_index(principal_orientation(ws, q));
                REQUIRE(vp);
                REQUIRE(vq);
                CHECK(static_cast<uint32_t>(dist[*vp][*vq]) == ws.wall_separation(p, q));
            }
    }
}

TEST_CASE("hyperplanes are two-sided") {
    for (uint32_t seed : {71u, 72u}) {
        Wallspace ws = testutil::random_wallspace(seed);
        CubeComplex X = build(ws);
        for (uint32_t w = 0; w < ws.wall_count(); ++w) {
            if (!X.wall_visible(w)) continue;
            const Hyperplane& h = X.hyperplane(w);
            // removing the dual edges leaves exactly the two sides
            Graph g(X.vertex_count());
            std::set<uint32_t> dual(h.dual_edges.begin(), h.dual_edges.end());
            for (uint32_t e = 0; e < X.edges().size(); ++e)
                if (!dual.count(e)) g.add_edge(X.edges()[e].u, X.edges()[e].v);
            for (uint32_t side = 0; side < 2; ++side) {
                const auto& vs = side == 0 ? h.plus_side : h.minus_side;
                REQUIRE(!vs.empty());
                auto reach = g.distances_from(vs.front());
                for (uint32_t v : vs) CHECK(reach[v] >= 0);
                const auto& other = side == 0 ? h.minus_side : h.plus_side;
                for (uint32_t v : other) CHECK(reach[v] < 0);
            }
        }
    }
}

TEST_CASE("dimension equals the largest realized crossing clique") {
    CubeComplex X = build(testutil::crossing_walls(4));
    CHECK(X.dimension() == 4);
    CubeComplex Y = build(testutil::nested_walls(5));
    CHECK(Y.dimension() == 1);
    for (uint32_t seed : {81u, 82u}) {
        Wallspace ws = testutil::random_wallspace(seed);
        CubeComplex Z = build(ws);
        CHECK(Z.dimension() <= ws.wall_count());
    }
}

TEST_CASE("relabeling a wall yields an isomorphic complex") {
    for (uint32_t seed : {91u, 92u}) {
        Wallspace ws = testutil::random_wallspace(seed);
        std::vector<Wall> walls;
        for (uint32_t w = 0; w < ws.wall_count(); ++w) {
            if (w == 0)
                walls.emplace_back(ws.wall(w).negative, ws.wall(w).positive);
            else
                walls.emplace_back(ws.wall(w).positive, ws.wall(w).negative);
        }
        Wallspace flipped(ws.point_names(), walls, "flipped");
        CubeComplex X = build(ws);
        CubeComplex Y = build(flipped);
        REQUIRE(X.vertex_count() == Y.vertex_count());
        CHECK(X.edges().size() == Y.edges().size());
        CHECK(X.census() == Y.census());
        // the bit-flip on wall 0 is the isomorphism
        for (uint32_t v = 0; v < X.vertex_count(); ++v) {
            Orientation o = X.vertex(v);
            o.flip(0);
            CHECK(Y.vertex_index(o).has_value());
        }
    }
}

TEST_CASE("budgets produce resource errors") {
    BuildOptions tight;
    tight.wall_budget = 2;
    CHECK_THROWS_AS(build(testutil::crossing_walls(3), tight), resource_error);
    BuildOptions small_vertices;
    small_vertices.vertex_budget = 4;
    CHECK_THROWS_AS(build(testutil::crossing_walls(3), small_vertices), resource_error);
}

TEST_CASE("DOT export lists vertices and edges") {
    CubeComplex X = build(testutil::crossing_walls(1));
    std::string dot = to_dot(X, "edge1");
    CHECK(dot.find("v0") != std::string::npos);
    CHECK(dot.find("v1") != std::string::npos);
    CHECK(dot.find("--") != std::string::npos);
}
