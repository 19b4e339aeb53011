#include "cubulate/graph.hpp"

#include <algorithm>
#include <queue>

#include "cubulate/errors.hpp"

namespace cubulate {

void Graph::add_edge(uint32_t a, uint32_t b) {
    if (a >= adj_.size() || b >= adj_.size()) throw input_error("edge endpoint out of range");
    if (a == b) throw input_error("loops are not allowed");
    if (adjacent(a, b)) throw input_error("parallel edge");
    auto insert_sorted = [](std::vector<uint32_t>& v, uint32_t x) {
        v.insert(std::lower_bound(v.begin(), v.end(), x), x);
    };
    insert_sorted(adj_[a], b);
    insert_sorted(adj_[b], a);
    edges_.emplace_back(std::min(a, b), std::max(a, b));
}

bool Graph::adjacent(uint32_t a, uint32_t b) const {
    const auto& v = adj_.at(a);
    return std::binary_search(v.begin(), v.end(), b);
}

bool Graph::connected() const {
    if (adj_.empty()) return true;
    auto d = distances_from(0);
    return std::find(d.begin(), d.end(), -1) == d.end();
}

std::vector<int> Graph::distances_from(uint32_t src) const {
    std::vector<int> dist(adj_.size(), -1);
    std::queue<uint32_t> q;
    dist.at(src) = 0;
    q.push(src);
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop();
        for (uint32_t w : adj_[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

std::vector<std::vector<int>> Graph::all_pairs_distances() const {
    std::vector<std::vector<int>> d;
    d.reserve(adj_.size());
    for (uint32_t v = 0; v < adj_.size(); ++v) d.push_back(distances_from(v));
    return d;
}

std::vector<int> Graph::distances_avoiding(uint32_t src,
                                           const std::vector<char>& forbidden) const {
    std::vector<int> dist(adj_.size(), -1);
    if (forbidden.at(src)) return dist;
    std::queue<uint32_t> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop();
        for (uint32_t w : adj_[v])
            if (dist[w] < 0 && !forbidden[w]) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

}  // namespace cubulate
