#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cubulate/wallspace.hpp"

namespace cubulate::testutil {

// Deterministic pseudo-random wallspace: 4..12 points, 1..10 walls, every
// wall a genuine bipartition (no cores), duplicates rejected by retry.
inline Wallspace random_wallspace(uint32_t seed) {
    std::mt19937 rng(seed);
    const uint32_t n_points = 4 + rng() % 9;
    std::vector<std::string> names;
    for (uint32_t i = 0; i < n_points; ++i) names.push_back("p" + std::to_string(i));

    const uint32_t target_walls = 1 + rng() % 10;
    std::vector<Wall> walls;
    std::set<std::pair<std::vector<bool>, std::vector<bool>>> seen;
    uint32_t attempts = 0;
    while (walls.size() < target_walls && attempts < 200) {
        ++attempts;
        std::vector<bool> side(n_points, false);
        for (uint32_t i = 0; i < n_points; ++i) side[i] = rng() % 2;
        uint32_t count = 0;
        for (bool b : side) count += b;
        if (count == 0 || count == n_points) continue;
        std::vector<bool> flip(n_points);
        for (uint32_t i = 0; i < n_points; ++i) flip[i] = !side[i];
        if (seen.count({side, flip}) || seen.count({flip, side})) continue;
        seen.insert({side, flip});
        PointSet pos(n_points), neg(n_points);
        for (uint32_t i = 0; i < n_points; ++i) (side[i] ? pos : neg).set(i);
        walls.emplace_back(std::move(pos), std::move(neg));
    }
    return Wallspace(std::move(names), std::move(walls), "random" + std::to_string(seed));
}

// n pairwise-crossing walls: points are the 2^n cube corners, wall k
// splits on bit k.
inline Wallspace crossing_walls(uint32_t n) {
    const uint32_t size = 1u << n;
    std::vector<std::string> names;
    for (uint32_t i = 0; i < size; ++i) names.push_back("c" + std::to_string(i));
    std::vector<Wall> walls;
    for (uint32_t k = 0; k < n; ++k) {
        PointSet pos(size), neg(size);
        for (uint32_t i = 0; i < size; ++i) (((i >> k) & 1) ? neg : pos).set(i);
        walls.emplace_back(std::move(pos), std::move(neg));
    }
    return Wallspace(std::move(names), std::move(walls), "cube" + std::to_string(n));
}

// n nested walls along a path of n+1 points.
inline Wallspace nested_walls(uint32_t n) {
    const uint32_t size = n + 1;
    std::vector<std::string> names;
    for (uint32_t i = 0; i < size; ++i) names.push_back("q" + std::to_string(i));
    std::vector<Wall> walls;
    for (uint32_t k = 0; k < n; ++k) {
        PointSet pos(size), neg(size);
        for (uint32_t i = 0; i < size; ++i) (i <= k ? pos : neg).set(i);
        walls.emplace_back(std::move(pos), std::move(neg));
    }
    return Wallspace(std::move(names), std::move(walls), "chain" + std::to_string(n));
}

}  // namespace cubulate::testutil
