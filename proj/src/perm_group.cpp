#include "cubulate/perm_group.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "cubulate/errors.hpp"

namespace cubulate {

PermutationModel::PermutationModel(std::vector<std::string> point_names,
                                   std::vector<std::pair<std::string, Perm>> generators,
                                   std::string name, uint64_t group_size_cap)
    : name_(std::move(name)),
      point_names_(std::move(point_names)),
      generators_(std::move(generators)) {
    if (point_names_.empty()) throw input_error("permutation model needs a point domain");
    for (const auto& [label, p] : generators_) {
        if (p.size() != point_names_.size())
            throw input_error("generator '" + label + "' has the wrong degree");
        std::vector<char> seen(p.size(), 0);
        for (uint32_t img : p) {
            if (img >= p.size() || seen[img])
                throw input_error("generator '" + label + "' is not a permutation");
            seen[img] = 1;
        }
    }
    enumerate(group_size_cap);
}

Perm PermutationModel::identity() const {
    Perm p(degree());
    for (uint32_t i = 0; i < degree(); ++i) p[i] = i;
    return p;
}

Perm PermutationModel::mul(const Perm& a, const Perm& b) const {
    Perm c(degree());
    for (uint32_t i = 0; i < degree(); ++i) c[i] = a[b[i]];
    return c;
}

Perm PermutationModel::inverse(const Perm& a) const {
    Perm c(degree());
    for (uint32_t i = 0; i < degree(); ++i) c[a[i]] = i;
    return c;
}

uint64_t PermutationModel::order(const Perm& a) const {
    Perm acc = a;
    const Perm id = identity();
    uint64_t n = 1;
    while (acc != id) {
        acc = mul(acc, a);
        ++n;
    }
    return n;
}

void PermutationModel::enumerate(uint64_t cap) {
    std::map<Perm, uint32_t> length_of;
    std::queue<Perm> q;
    Perm id = identity();
    length_of.emplace(id, 0);
    q.push(id);
    while (!q.empty()) {
        Perm cur = q.front();
        q.pop();
        uint32_t len = length_of[cur];
        for (const auto& [label, g] : generators_) {
            for (const Perm& step : {g, inverse(g)}) {
                Perm next = mul(step, cur);
                if (length_of.emplace(next, len + 1).second) {
                    if (length_of.size() > cap)
                        throw resource_error("permutation group larger than the cap " +
                                             std::to_string(cap));
                    q.push(next);
                }
            }
        }
    }
    for (const auto& [perm, len] : length_of) {
        elements_.push_back(perm);
        lengths_.push_back(len);
    }
    // canonical order: word length first, then image tuples
    std::vector<uint32_t> by(elements_.size());
    for (uint32_t i = 0; i < by.size(); ++i) by[i] = i;
    std::sort(by.begin(), by.end(), [&](uint32_t a, uint32_t b) {
        if (lengths_[a] != lengths_[b]) return lengths_[a] < lengths_[b];
        return elements_[a] < elements_[b];
    });
    std::vector<Perm> elems;
    std::vector<uint32_t> lens;
    for (uint32_t i : by) {
        elems.push_back(elements_[i]);
        lens.push_back(lengths_[i]);
    }
    elements_ = std::move(elems);
    lengths_ = std::move(lens);
    for (uint32_t i = 0; i < elements_.size(); ++i) index_.emplace_back(elements_[i], i);
    std::sort(index_.begin(), index_.end());
}

std::optional<uint32_t> PermutationModel::element_index(const Perm& a) const {
    auto it = std::lower_bound(index_.begin(), index_.end(), a,
                               [](const auto& entry, const Perm& p) { return entry.first < p; });
    if (it == index_.end() || it->first != a) return std::nullopt;
    return it->second;
}

uint32_t PermutationModel::word_length(const Perm& a) const {
    auto idx = element_index(a);
    if (!idx) throw input_error("permutation is not in the generated group");
    return lengths_[*idx];
}

Perm PermutationModel::parse_word(const std::string& word) const {
    Perm out = identity();
    size_t i = 0;
    while (i < word.size()) {
        char c = word[i];
        if (c == ' ' || c == '.' || c == '*') {
            ++i;
            continue;
        }
        const std::pair<std::string, Perm>* best = nullptr;
        for (const auto& g : generators_)
            if (word.compare(i, g.first.size(), g.first) == 0)
                if (!best || g.first.size() > best->first.size()) best = &g;
        if (best) {
            out = mul(out, best->second);
            i += best->first.size();
        } else if (c == 'e' || c == '1') {
            ++i;
        } else {
            throw input_error("cannot read element '" + word + "' at position " +
                              std::to_string(i) + ": no generator label matches");
        }
    }
    return out;
}

std::string PermutationModel::display(const Perm& a) const {
    std::ostringstream out;
    std::vector<char> seen(degree(), 0);
    bool any = false;
    for (uint32_t start = 0; start < degree(); ++start) {
        if (seen[start] || a[start] == start) continue;
        any = true;
        out << '(';
        uint32_t x = start;
        bool first = true;
        while (!seen[x]) {
            seen[x] = 1;
            if (!first) out << ' ';
            out << point_names_[x];
            first = false;
            x = a[x];
        }
        out << ')';
    }
    if (!any) return "e";
    return out.str();
}

}  // namespace cubulate
