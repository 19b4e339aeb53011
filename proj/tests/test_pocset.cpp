#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cubulate/wallspace.hpp"
#include "test_util.hpp"

using namespace cubulate;

namespace {

Wallspace tiny(const std::vector<std::string>& points,
               const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>&
                   sides) {
    auto set_of = [&](const std::vector<std::string>& names) {
        PointSet s(points.size());
        for (const auto& n : names) {
            auto it = std::find(points.begin(), points.end(), n);
            if (it == points.end()) throw input_error("unknown point '" + n + "'");
            s.set(static_cast<uint32_t>(it - points.begin()));
        }
        return s;
    };
    std::vector<Wall> walls;
    for (const auto& [pos, neg] : sides) walls.emplace_back(set_of(pos), set_of(neg));
    return Wallspace(points, walls);
}

}  // namespace

TEST_CASE("wall construction and validation") {
    // proper wall with a core
    Wallspace ws = tiny({"a", "b", "x"}, {{{"a", "x"}, {"b", "x"}}});
    CHECK(ws.wall(0).core.count() == 1);
    CHECK(ws.wall(0).strict_positive.count() == 1);

    // sides must cover the points
    CHECK_THROWS_AS(tiny({"a", "b", "c"}, {{{"a"}, {"b"}}}), input_error);
    // both strict sides must be nonempty
    CHECK_THROWS_AS(tiny({"a", "b"}, {{{"a", "b"}, {"b"}}}), input_error);
    // duplicates as unordered pairs are rejected
    CHECK_THROWS_AS(tiny({"a", "b"}, {{{"a"}, {"b"}}, {{"b"}, {"a"}}}), input_error);
    // unknown point in a side
    Wallspace base = tiny({"a", "b"}, {{{"a"}, {"b"}}});
    CHECK_THROWS_AS(base.make_wall({"zz"}, {"a"}), input_error);
    CHECK_THROWS_AS(base.point_index("zz"), input_error);
}

TEST_CASE("crosses on the square configuration") {
    // two walls splitting four points into orthogonal pairs
    Wallspace ws = tiny({"p", "q", "r", "s"},
                        {{{"p", "q"}, {"r", "s"}}, {{"p", "r"}, {"q", "s"}}});
    CHECK(ws.crosses(0, 1));
    CHECK(ws.crosses(1, 0));
    CHECK_FALSE(ws.crosses(0, 0));  // two of the quarter sets are empty
}

TEST_CASE("nesting excludes crossing") {
    Wallspace ws = tiny({"a", "b", "c", "d"},
                        {{{"a"}, {"b", "c", "d"}}, {{"a", "b"}, {"c", "d"}}});
    CHECK_FALSE(ws.crosses(0, 1));
    CHECK(ws.nests({0, Sign::plus}, {1, Sign::plus}));
    CHECK_FALSE(ws.nests({1, Sign::plus}, {0, Sign::plus}));
}

TEST_CASE("nests is strict") {
    Wallspace ws = tiny({"a", "b", "c"}, {{{"a"}, {"b", "c"}}, {{"a", "b"}, {"c"}}});
    CHECK(ws.nests({0, Sign::plus}, {1, Sign::plus}));
    CHECK_FALSE(ws.nests({0, Sign::plus}, {0, Sign::plus}));  // equality is not nesting
    // incomparable halfspaces
    Wallspace ws2 = tiny({"a", "b", "c", "d"},
                         {{{"a", "b"}, {"c", "d"}}, {{"b", "c"}, {"a", "d"}}});
    CHECK_FALSE(ws2.nests({0, Sign::plus}, {1, Sign::plus}));
    CHECK_FALSE(ws2.nests({1, Sign::plus}, {0, Sign::plus}));
}

TEST_CASE("wall separation counts strictly separating walls") {
    Wallspace single = tiny({"x", "y"}, {{{"x"}, {"y"}}});
    CHECK(single.wall_separation("x", "x") == 0);
    CHECK(single.wall_separation("x", "y") == 1);

    // three pairwise-crossing walls all separating two opposite corners
    Wallspace cube = testutil::crossing_walls(3);
    // corner 0 = c0 (all bits 0), corner 7 = c7 (all bits 1)
    uint32_t expected = 0;  // oracle: direct enumeration over the walls
    for (uint32_t w = 0; w < cube.wall_count(); ++w) {
        bool x_pos = cube.wall(w).strict_positive.test(cube.point_index("c0"));
        bool y_neg = cube.wall(w).strict_negative.test(cube.point_index("c7"));
        bool x_neg = cube.wall(w).strict_negative.test(cube.point_index("c0"));
        bool y_pos = cube.wall(w).strict_positive.test(cube.point_index("c7"));
        if ((x_pos && y_neg) || (x_neg && y_pos)) ++expected;
    }
    CHECK(expected == 3);
    CHECK(cube.wall_separation("c0", "c7") == expected);

    // core points sit strictly on no side, so they separate from nothing
    Wallspace cored = tiny({"a", "b", "x"}, {{{"a", "x"}, {"b", "x"}}});
    CHECK(cored.wall_separation("a", "x") == 0);
    CHECK(cored.wall_separation("a", "b") == 1);
}

TEST_CASE("wall separation is a pseudo-metric") {
    for (uint32_t seed : {1u, 2u, 3u, 4u, 5u}) {
        Wallspace ws = testutil::random_wallspace(seed);
        const uint32_t n = ws.point_count();
        for (uint32_t x = 0; x < n; ++x) {
            CHECK(ws.wall_separation(x, x) == 0);
            for (uint32_t y = 0; y < n; ++y) {
                CHECK(ws.wall_separation(x, y) == ws.wall_separation(y, x));
                for (uint32_t z = 0; z < n; ++z)
                    CHECK(ws.wall_separation(x, z) <=
                          ws.wall_separation(x, y) + ws.wall_separation(y, z));
            }
        }
    }
}

TEST_CASE("crossing is symmetric, irreflexive, and excludes nesting") {
    for (uint32_t seed : {7u, 8u, 9u}) {
        Wallspace ws = testutil::random_wallspace(seed);
        for (uint32_t i = 0; i < ws.wall_count(); ++i) {
            CHECK_FALSE(ws.crosses(i, i));
            for (uint32_t j = 0; j < ws.wall_count(); ++j) {
                CHECK(ws.crosses(i, j) == ws.crosses(j, i));
                if (ws.crosses(i, j))
                    for (Sign si : {Sign::plus, Sign::minus})
                        for (Sign sj : {Sign::plus, Sign::minus}) {
                            CHECK_FALSE(ws.nests({i, si}, {j, sj}));
                            CHECK_FALSE(ws.nests({j, sj}, {i, si}));
                        }
            }
        }
    }
}

TEST_CASE("nests is a strict partial order on halfspaces") {
    for (uint32_t seed : {11u, 12u, 13u}) {
        Wallspace ws = testutil::random_wallspace(seed);
        std::vector<Halfspace> hs;
        for (uint32_t w = 0; w < ws.wall_count(); ++w) {
            hs.push_back({w, Sign::plus});
            hs.push_back({w, Sign::minus});
        }
        for (const auto& h1 : hs)
            for (const auto& h2 : hs) {
                if (ws.nests(h1, h2)) CHECK_FALSE(ws.nests(h2, h1));  // antisymmetry
                for (const auto& h3 : hs)
                    if (ws.nests(h1, h2) && ws.nests(h2, h3))
                        CHECK(ws.nests(h1, h3));  // transitivity
            }
    }
}

TEST_CASE("predicates are invariant under +/- relabeling") {
    Wallspace ws = testutil::random_wallspace(21);
    // rebuild with wall 0 relabeled
    std::vector<Wall> walls;
    for (uint32_t w = 0; w < ws.wall_count(); ++w) {
        if (w == 0)
            walls.emplace_back(ws.wall(w).negative, ws.wall(w).positive);
        else
            walls.emplace_back(ws.wall(w).positive, ws.wall(w).negative);
    }
    Wallspace flipped(ws.point_names(), walls, "flipped");
    for (uint32_t i = 0; i < ws.wall_count(); ++i)
        for (uint32_t j = 0; j < ws.wall_count(); ++j)
            CHECK(ws.crosses(i, j) == flipped.crosses(i, j));
    for (uint32_t x = 0; x < ws.point_count(); ++x)
        for (uint32_t y = 0; y < ws.point_count(); ++y)
            CHECK(ws.wall_separation(x, y) == flipped.wall_separation(x, y));
}

TEST_CASE("JSON round trip") {
    Wallspace ws = tiny({"a", "b", "x"}, {{{"a", "x"}, {"b", "x"}}, {{"a"}, {"b", "x"}}});
    std::string text = ws.to_json_text();
    Wallspace back = Wallspace::from_json_text(text);
    CHECK(back.point_count() == ws.point_count());
    CHECK(back.wall_count() == ws.wall_count());
    CHECK(back.to_json_text() == text);
    CHECK_THROWS_AS(Wallspace::from_json_text("{"), input_error);
    CHECK_THROWS_AS(Wallspace::from_json_text("{\"points\":[\"a\"]}"), input_error);
}
