#include "cubulate/dual_complex.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "cubulate/errors.hpp"

namespace cubulate {

bool orientation_less(const Orientation& a, const Orientation& b) {
    Orientation x = a ^ b;
    auto first = x.find_first();
    if (first == Orientation::npos) return false;
    // '+' (bit 0) sorts before '-' (bit 1).
    return !a.test(first);
}

std::string orientation_string(const Orientation& o) {
    std::string s(o.size(), '+');
    for (auto i = o.find_first(); i != Orientation::npos; i = o.find_next(i)) s[i] = '-';
    return s;
}

std::string CubeComplex::key_of(const Orientation& o) {
    std::vector<uint64_t> blocks(o.num_blocks());
    boost::to_block_range(o, blocks.begin());
    return std::string(reinterpret_cast<const char*>(blocks.data()),
                       blocks.size() * sizeof(uint64_t));
}

std::optional<uint32_t> CubeComplex::vertex_index(const Orientation& o) const {
    auto it = index_.find(key_of(o));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

uint32_t CubeComplex::dimension() const {
    for (uint32_t k = static_cast<uint32_t>(census_.size()); k-- > 0;)
        if (census_[k] > 0) return k;
    return 0;
}

bool CubeComplex::wall_visible(uint32_t wall) const {
    return !hyperplanes_.at(wall).dual_edges.empty();
}

const Hyperplane& CubeComplex::hyperplane(uint32_t wall) const {
    const Hyperplane& h = hyperplanes_.at(wall);
    if (h.dual_edges.empty()) {
        std::ostringstream msg;
        msg << "wall " << wall << " is flipped by no edge (invisible in the complex)";
        throw verification_error(msg.str());
    }
    return h;
}

Graph CubeComplex::skeleton() const {
    Graph g(vertex_count());
    for (const DualEdge& e : edges_) g.add_edge(e.u, e.v);
    return g;
}

Orientation principal_orientation(const Wallspace& ws, uint32_t point) {
    if (point >= ws.point_count()) throw input_error("unknown point index");
    Orientation o(ws.wall_count());
    for (uint32_t w = 0; w < ws.wall_count(); ++w) {
        const Wall& wall = ws.wall(w);
        if (wall.strict_negative.test(point))
            o.set(w);  // '-'
        else if (!wall.positive.test(point))
            throw input_error("point " + ws.point_name(point) + " lies on no side of wall " +
                              std::to_string(w));
        // strict '+' and core points both take '+'.
    }
    return o;
}

bool orientation_consistent(const Wallspace& ws, const Orientation& o) {
    const uint32_t n = ws.wall_count();
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
            if (!ws.wall(i).side(orientation_sign(o, i))
                     .intersects(ws.wall(j).side(orientation_sign(o, j))))
                return false;
    return true;
}

namespace {

// compat[(i * walls + j) * 4 + si * 2 + sj] = side(i, si) intersects side(j, sj)
std::vector<char> side_compatibility(const Wallspace& ws) {
    const uint32_t n = ws.wall_count();
    std::vector<char> compat(static_cast<size_t>(n) * n * 4, 1);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int si = 0; si < 2; ++si)
                for (int sj = 0; sj < 2; ++sj) {
                    bool ok = ws.wall(i).side(si ? Sign::minus : Sign::plus)
                                  .intersects(ws.wall(j).side(sj ? Sign::minus : Sign::plus));
                    compat[(static_cast<size_t>(i) * n + j) * 4 + si * 2 + sj] = ok;
                }
        }
    return compat;
}

}  // namespace

CubeComplex build_dual(std::shared_ptr<const Wallspace> ws, const BuildOptions& opts) {
    const Wallspace& space = *ws;
    const uint32_t n = space.wall_count();
    if (n > opts.wall_budget) {
        std::ostringstream msg;
        msg << "wallspace '" << space.name() << "' has " << n << " walls, over the budget of "
            << opts.wall_budget << "; no vertices were built (raise the wall budget to proceed)";
        throw resource_error(msg.str());
    }

    CubeComplex X;
    X.ws_ = ws;

    const std::vector<char> compat = side_compatibility(space);
    auto flip_ok = [&](const Orientation& o, uint32_t w) {
        // o is consistent; only pairs involving the flipped wall need rechecking.
        const int sw = o.test(w) ? 0 : 1;  // sign after the flip
        for (uint32_t j = 0; j < n; ++j) {
            if (j == w) continue;
            if (!compat[(static_cast<size_t>(w) * n + j) * 4 + sw * 2 + (o.test(j) ? 1 : 0)])
                return false;
        }
        return true;
    };

    // Closure of the principal orientations under consistency-preserving
    // single-wall flips. Since duplicate walls are rejected, every two
    // consistent orientations are connected by such flips, so the closure
    // is independent of the starting set.
    std::unordered_map<std::string, uint32_t> seen;
    std::vector<Orientation> found;
    std::deque<uint32_t> queue;
    auto push = [&](const Orientation& o) {
        auto key = CubeComplex::key_of(o);
        auto it = seen.find(key);
        if (it != seen.end()) return;
        if (found.size() >= opts.vertex_budget) {
            std::ostringstream msg;
            msg << "vertex budget " << opts.vertex_budget << " exceeded while expanding '"
                << space.name() << "': " << found.size() << " vertices and "
                << "an unexhausted frontier so far";
            throw resource_error(msg.str());
        }
        uint32_t id = static_cast<uint32_t>(found.size());
        seen.emplace(std::move(key), id);
        found.push_back(o);
        queue.push_back(id);
    };

    for (uint32_t p = 0; p < space.point_count(); ++p)
        push(principal_orientation(space, p));
    while (!queue.empty()) {
        Orientation o = found[queue.front()];
        queue.pop_front();
        for (uint32_t w = 0; w < n; ++w)
            if (flip_ok(o, w)) {
                Orientation t = o;
                t.flip(w);
                push(t);
            }
    }

    std::sort(found.begin(), found.end(), orientation_less);
    X.vertices_ = std::move(found);
    for (uint32_t v = 0; v < X.vertices_.size(); ++v)
        X.index_.emplace(CubeComplex::key_of(X.vertices_[v]), v);

    // Edges: single-wall flips between vertices.
    X.adj_.resize(X.vertices_.size());
    for (uint32_t v = 0; v < X.vertices_.size(); ++v)
        for (uint32_t w = 0; w < n; ++w) {
            Orientation t = X.vertices_[v];
            t.flip(w);
            auto u = X.vertex_index(t);
            if (u && *u > v) {
                uint32_t id = static_cast<uint32_t>(X.edges_.size());
                X.edges_.push_back({v, *u, w});
                X.adj_[v].emplace_back(*u, w);
                X.adj_[*u].emplace_back(v, w);
                (void)id;
            }
        }
    for (auto& a : X.adj_) std::sort(a.begin(), a.end());

    // Cubes, rooted at their lexicographically least corner: that corner
    // has '+' on every cube wall, so each cube is found exactly once.
    std::vector<uint64_t> census(2, 0);
    census[0] = X.vertices_.size();
    census[1] = X.edges_.size();
    std::vector<uint32_t> corner_stack;
    for (uint32_t v = 0; v < X.vertices_.size(); ++v) {
        std::vector<uint32_t> candidates;
        for (uint32_t w = 0; w < n; ++w) {
            if (X.vertices_[v].test(w)) continue;  // need '+' at the base
            Orientation t = X.vertices_[v];
            t.flip(w);
            if (X.vertex_index(t)) candidates.push_back(w);
        }
        // corners: vertex indices of all subset flips of the current wall set
        std::vector<uint32_t> corners{v};
        std::vector<uint32_t> walls;
        auto extend = [&](auto&& self, size_t from) -> void {
            for (size_t c = from; c < candidates.size(); ++c) {
                uint32_t w = candidates[c];
                bool crossing = true;
                for (uint32_t prev : walls)
                    if (!space.crosses(prev, w)) {
                        crossing = false;
                        break;
                    }
                if (!crossing) continue;
                std::vector<uint32_t> next_corners = corners;
                bool complete = true;
                for (uint32_t corner : corners) {
                    Orientation t = X.vertices_[corner];
                    t.flip(w);
                    auto u = X.vertex_index(t);
                    if (!u) {
                        complete = false;
                        break;
                    }
                    next_corners.push_back(*u);
                }
                if (!complete) continue;
                walls.push_back(w);
                std::swap(corners, next_corners);
                if (walls.size() >= 2) {
                    if (census.size() <= walls.size()) census.resize(walls.size() + 1, 0);
                    ++census[walls.size()];
                    X.cubes_.push_back({v, walls});
                }
                self(self, c + 1);
                std::swap(corners, next_corners);
                walls.pop_back();
            }
        };
        extend(extend, 0);
    }
    X.census_ = std::move(census);
    std::sort(X.cubes_.begin(), X.cubes_.end(), [](const Cube& a, const Cube& b) {
        if (a.walls.size() != b.walls.size()) return a.walls.size() < b.walls.size();
        if (a.base != b.base) return a.base < b.base;
        return a.walls < b.walls;
    });

    // Hyperplanes: dual edges and the two complementary vertex sets.
    X.hyperplanes_.resize(n);
    for (uint32_t w = 0; w < n; ++w) {
        Hyperplane& h = X.hyperplanes_[w];
        h.wall = w;
        for (uint32_t v = 0; v < X.vertices_.size(); ++v)
            (X.vertices_[v].test(w) ? h.minus_side : h.plus_side).push_back(v);
    }
    for (uint32_t e = 0; e < X.edges_.size(); ++e)
        X.hyperplanes_[X.edges_[e].wall].dual_edges.push_back(e);

    return X;
}

uint32_t median(const CubeComplex& X, uint32_t u, uint32_t v, uint32_t w) {
    const Orientation& a = X.vertex(u);
    const Orientation& b = X.vertex(v);
    const Orientation& c = X.vertex(w);
    Orientation m = (a & b) | (a & c) | (b & c);
    auto idx = X.vertex_index(m);
    if (!idx)
        throw verification_error("majority orientation of (" + std::to_string(u) + "," +
                                 std::to_string(v) + "," + std::to_string(w) +
                                 ") is not a vertex");
    return *idx;
}

MedianCheckResult verify_median_graph(const Graph& g) {
    MedianCheckResult res;
    const uint32_t n = g.vertex_count();
    if (n == 0) return res;
    if (!g.connected()) {
        res.ok = false;
        res.reason = "graph is disconnected";
        return res;
    }
    auto dist = g.all_pairs_distances();
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v)
            for (uint32_t w = v + 1; w < n; ++w) {
                uint32_t count = 0;
                for (uint32_t m = 0; m < n; ++m) {
                    if (dist[u][m] + dist[m][v] != dist[u][v]) continue;
                    if (dist[u][m] + dist[m][w] != dist[u][w]) continue;
                    if (dist[v][m] + dist[m][w] != dist[v][w]) continue;
                    ++count;
                    if (count > 1) break;
                }
                if (count != 1) {
                    res.ok = false;
                    res.u = u;
                    res.v = v;
                    res.w = w;
                    res.reason = count == 0 ? "triple has no vertex on pairwise geodesics"
                                            : "triple has several vertices on pairwise geodesics";
                    return res;
                }
            }
    return res;
}

MedianCheckResult verify_median_graph(const CubeComplex& X) {
    MedianCheckResult res;
    const uint32_t n = X.vertex_count();
    if (n <= 1) return res;

    // Graph distance must equal the number of walls two orientations
    // disagree on; majority orientations must then be vertices. Together
    // these force a unique median on pairwise geodesics for every triple.
    Graph g = X.skeleton();
    if (!g.connected()) {
        res.ok = false;
        res.reason = "1-skeleton is disconnected";
        return res;
    }
    for (uint32_t u = 0; u < n; ++u) {
        auto dist = g.distances_from(u);
        for (uint32_t v = 0; v < n; ++v) {
            size_t hamming = (X.vertex(u) ^ X.vertex(v)).count();
            if (dist[v] < 0 || static_cast<size_t>(dist[v]) != hamming) {
                res.ok = false;
                res.u = u;
                res.v = v;
                res.w = v;
                res.reason = "graph distance differs from wall disagreement count";
                return res;
            }
        }
    }
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v)
            for (uint32_t w = v + 1; w < n; ++w) {
                Orientation m = (X.vertex(u) & X.vertex(v)) | (X.vertex(u) & X.vertex(w)) |
                                (X.vertex(v) & X.vertex(w));
                if (!X.vertex_index(m)) {
                    res.ok = false;
                    res.u = u;
                    res.v = v;
                    res.w = w;
                    res.reason = "majority orientation is not a vertex";
                    return res;
                }
            }
    return res;
}

std::string to_dot(const CubeComplex& X, const std::string& graph_name) {
    std::ostringstream out;
    out << "graph " << graph_name << " {\n";
    for (uint32_t v = 0; v < X.vertex_count(); ++v)
        out << "  v" << v << " [label=\"" << orientation_string(X.vertex(v)) << "\"];\n";
    for (const DualEdge& e : X.edges())
        out << "  v" << e.u << " -- v" << e.v << " [label=\"w" << e.wall << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace cubulate
