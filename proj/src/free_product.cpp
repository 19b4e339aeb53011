#include "cubulate/free_product.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cubulate/errors.hpp"

namespace cubulate {

void FactorTable::validate() const {
    const uint32_t n = size();
    if (n == 0) throw input_error("factor '" + name + "' is empty");
    if (table.size() != n) throw input_error("factor '" + name + "' table is not square");
    for (const auto& row : table)
        if (row.size() != n) throw input_error("factor '" + name + "' table is not square");
    if (inverse.size() != n) throw input_error("factor '" + name + "' lacks inverses");
    for (uint32_t i = 0; i < n; ++i) {
        if (table[0][i] != i || table[i][0] != i)
            throw input_error("factor '" + name + "': element 0 is not an identity");
        if (table[i][inverse[i]] != 0 || table[inverse[i]][i] != 0)
            throw input_error("factor '" + name + "': bad inverse for element " +
                              std::to_string(i));
        for (uint32_t j = 0; j < n; ++j) {
            if (table[i][j] >= n)
                throw input_error("factor '" + name + "': table entry out of range");
            for (uint32_t k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw input_error("factor '" + name + "': multiplication not associative");
        }
    }
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
            if (labels[i] == labels[j])
                throw input_error("factor '" + name + "': duplicate element label '" +
                                  labels[i] + "'");
}

FactorTable FactorTable::cyclic(uint32_t n, std::string name, const std::string& gen_label) {
    if (n == 0 || n > 200) throw input_error("cyclic factor order out of range");
    FactorTable f;
    f.name = std::move(name);
    f.labels.resize(n);
    f.labels[0] = "e";
    for (uint32_t k = 1; k < n; ++k)
        f.labels[k] = k == 1 ? gen_label : gen_label + std::to_string(k);
    f.table.assign(n, std::vector<uint8_t>(n));
    f.inverse.resize(n);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) f.table[i][j] = static_cast<uint8_t>((i + j) % n);
        f.inverse[i] = static_cast<uint8_t>((n - i) % n);
    }
    f.validate();
    return f;
}

FactorTable FactorTable::symmetric3(std::string name) {
    // elements: e, r, r2 (3-cycles), s, sr, sr2 (transpositions), with
    // r = (0 1 2) and s = (0 1) acting on three letters
    auto perm_mul = [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
        std::array<int, 3> c{};
        for (int i = 0; i < 3; ++i) c[i] = a[b[i]];
        return c;
    };
    std::vector<std::array<int, 3>> elems = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}};
    FactorTable f;
    f.name = std::move(name);
    f.labels = {"e", "r", "r2", "s", "sr", "sr2"};
    f.table.assign(6, std::vector<uint8_t>(6));
    f.inverse.resize(6);
    for (uint32_t i = 0; i < 6; ++i)
        for (uint32_t j = 0; j < 6; ++j) {
            auto prod = perm_mul(elems[i], elems[j]);
            auto it = std::find(elems.begin(), elems.end(), prod);
            f.table[i][j] = static_cast<uint8_t>(it - elems.begin());
        }
    for (uint32_t i = 0; i < 6; ++i)
        for (uint32_t j = 0; j < 6; ++j)
            if (f.table[i][j] == 0) f.inverse[i] = static_cast<uint8_t>(j);
    f.validate();
    return f;
}

FreeProductModel::FreeProductModel(std::vector<FactorTable> factors, std::string name)
    : name_(std::move(name)), factors_(std::move(factors)) {
    if (factors_.empty()) throw input_error("free product needs at least one factor");
    if (factors_.size() > 32) throw input_error("too many factors");
    for (const auto& f : factors_) f.validate();
    for (uint32_t i = 0; i < factors_.size(); ++i)
        for (uint32_t j = i + 1; j < factors_.size(); ++j)
            if (factors_[i].name == factors_[j].name)
                throw input_error("duplicate factor name '" + factors_[i].name + "'");
    for (uint32_t f = 0; f < factors_.size(); ++f)
        for (uint32_t e = 1; e < factors_[f].size(); ++e) {
            Generator g{{static_cast<uint8_t>(f), static_cast<uint8_t>(e)},
                        factors_[f].labels[e]};
            for (const auto& prev : generators_)
                if (prev.label == g.label)
                    throw input_error("generator label '" + g.label +
                                      "' appears in two factors");
            generators_.push_back(std::move(g));
        }
}

std::optional<uint32_t> FreeProductModel::factor_index(const std::string& name) const {
    for (uint32_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].name == name) return i;
    return std::nullopt;
}

NormalForm FreeProductModel::normal_form(const std::vector<Syllable>& word) const {
    NormalForm out;
    for (Syllable s : word) {
        if (s.factor >= factors_.size())
            throw input_error("syllable names unknown factor " + std::to_string(s.factor));
        if (s.element == 0) continue;
        if (s.element >= factors_[s.factor].size())
            throw input_error("syllable element out of range in factor '" +
                              factors_[s.factor].name + "'");
        if (!out.empty() && out.back().factor == s.factor) {
            uint8_t prod = factors_[s.factor].table[out.back().element][s.element];
            out.pop_back();
            if (prod != 0) out.push_back({s.factor, prod});
            // a merged syllable may expose a new same-factor neighbour only
            // if it vanished, and then the neighbours are from different
            // factors by induction; no further pass is needed
        } else {
            out.push_back(s);
        }
    }
    return out;
}

NormalForm FreeProductModel::mul(const NormalForm& a, const NormalForm& b) const {
    std::vector<Syllable> word = a;
    word.insert(word.end(), b.begin(), b.end());
    return normal_form(word);
}

NormalForm FreeProductModel::inverse(const NormalForm& a) const {
    NormalForm out;
    out.reserve(a.size());
    for (auto it = a.rbegin(); it != a.rend(); ++it)
        out.push_back({it->factor, factors_[it->factor].inverse[it->element]});
    return out;
}

NormalForm FreeProductModel::power(const NormalForm& a, int n) const {
    NormalForm base = n < 0 ? inverse(a) : a;
    NormalForm out;
    for (int i = 0; i < std::abs(n); ++i) out = mul(out, base);
    return out;
}

uint64_t FreeProductModel::order(const NormalForm& a) const {
    NormalForm x = a;
    // cyclic reduction: strip conjugating syllables from the two ends
    while (x.size() >= 2 && x.front().factor == x.back().factor) {
        uint8_t f = x.front().factor;
        uint8_t merged = factors_[f].table[x.back().element][x.front().element];
        NormalForm inner(x.begin() + 1, x.end() - 1);
        if (merged != 0) inner = mul(NormalForm{{f, merged}}, inner);
        // the merge may re-expose same-factor ends; normal_form handled it
        if (inner.size() >= x.size()) break;
        x = std::move(inner);
    }
    if (x.empty()) return 1;
    if (x.size() > 1) return 0;  // genuinely alternating, so infinite order
    uint64_t n = 1;
    const uint8_t e = x[0].element;
    uint8_t acc = e;
    while (acc != 0) {
        acc = factors_[x[0].factor].table[acc][e];
        ++n;
    }
    return n;
}

NormalForm FreeProductModel::parse_word(const std::string& word) const {
    NormalForm out;
    size_t i = 0;
    while (i < word.size()) {
        char c = word[i];
        if (c == ' ' || c == '.' || c == '*') {
            ++i;
            continue;
        }
        const Generator* best = nullptr;
        for (const auto& g : generators_)
            if (word.compare(i, g.label.size(), g.label) == 0)
                if (!best || g.label.size() > best->label.size()) best = &g;
        if (best) {
            out = mul(out, NormalForm{best->syllable});
            i += best->label.size();
        } else if (c == 'e' || c == '1') {
            ++i;  // identity letter
        } else {
            throw input_error("cannot read element '" + word + "' at position " +
                              std::to_string(i) + ": no generator label matches");
        }
    }
    return out;
}

std::string FreeProductModel::display(const NormalForm& a) const {
    if (a.empty()) return "e";
    std::string out;
    for (Syllable s : a) out += factors_[s.factor].labels[s.element];
    return out;
}

bool FreeProductModel::less(const NormalForm& a, const NormalForm& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::string FreeProductModel::key_of(const NormalForm& x) {
    std::string key;
    key.reserve(x.size() * 2);
    for (Syllable s : x) {
        key.push_back(static_cast<char>(s.factor));
        key.push_back(static_cast<char>(s.element));
    }
    return key;
}

std::optional<uint32_t> FreeProductModel::CayleyBall::index_of(const NormalForm& x) const {
    auto key = FreeProductModel::key_of(x);
    auto it = std::lower_bound(key_index.begin(), key_index.end(), key,
                               [](const auto& entry, const std::string& k) {
                                   return entry.first < k;
                               });
    if (it == key_index.end() || it->first != key) return std::nullopt;
    return it->second;
}

FreeProductModel::CayleyBall FreeProductModel::ball(uint32_t radius,
                                                    uint32_t max_radius) const {
    if (radius > max_radius)
        throw resource_error("Cayley ball radius " + std::to_string(radius) +
                             " over the configured maximum " + std::to_string(max_radius));
    uint64_t predicted = ball_size_closed_form(radius);
    if (predicted > 2'000'000)
        throw resource_error("Cayley ball would hold " + std::to_string(predicted) +
                             " elements");

    CayleyBall b;
    b.radius = radius;
    // enumerate by syllable length; extending on the right keeps words reduced
    std::vector<NormalForm> layer{NormalForm{}};
    b.points.push_back(NormalForm{});
    for (uint32_t len = 1; len <= radius; ++len) {
        std::vector<NormalForm> next;
        for (const NormalForm& w : layer)
            for (uint32_t f = 0; f < factors_.size(); ++f) {
                if (!w.empty() && w.back().factor == f) continue;
                for (uint32_t e = 1; e < factors_[f].size(); ++e) {
                    NormalForm x = w;
                    x.push_back({static_cast<uint8_t>(f), static_cast<uint8_t>(e)});
                    next.push_back(std::move(x));
                }
            }
        std::sort(next.begin(), next.end());
        b.points.insert(b.points.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    for (uint32_t i = 0; i < b.points.size(); ++i) {
        b.names.push_back(display(b.points[i]));
        b.key_index.emplace_back(key_of(b.points[i]), i);
    }
    std::sort(b.key_index.begin(), b.key_index.end());

    b.adjacency.resize(b.points.size());
    for (uint32_t i = 0; i < b.points.size(); ++i)
        for (const Generator& g : generators_) {
            NormalForm img = mul(b.points[i], NormalForm{g.syllable});
            auto j = b.index_of(img);
            if (j && *j != i) b.adjacency[i].push_back(*j);
        }
    for (auto& a : b.adjacency) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return b;
}

uint64_t FreeProductModel::ball_size_closed_form(uint32_t radius) const {
    // count[f] = number of reduced words of the current length ending in f
    std::vector<uint64_t> count(factors_.size(), 0);
    uint64_t total = 1;
    for (uint32_t len = 1; len <= radius; ++len) {
        std::vector<uint64_t> next(factors_.size(), 0);
        for (uint32_t f = 0; f < factors_.size(); ++f) {
            uint64_t from = 0;
            if (len == 1) {
                from = 1;
            } else {
                for (uint32_t g = 0; g < factors_.size(); ++g)
                    if (g != f) from += count[g];
            }
            next[f] = from * (factors_[f].size() - 1);
        }
        count = std::move(next);
        for (uint64_t c : count) total += c;
    }
    return total;
}

Wall syllable_wall(const FreeProductModel& m, const FreeProductModel::CayleyBall& ball,
                   const std::vector<uint32_t>& first_syllable_factors) {
    if (first_syllable_factors.empty())
        throw input_error("syllable wall needs a nonempty factor subset");
    uint32_t mask = 0;
    for (uint32_t f : first_syllable_factors) {
        if (f >= m.factor_count()) throw input_error("syllable wall names an unknown factor");
        mask |= 1u << f;
    }
    if (mask == (1u << m.factor_count()) - 1 && m.factor_count() > 0)
        throw input_error("syllable wall needs a proper factor subset");
    FirstSyllableRule rule{mask};
    PointSet pos(ball.points.size()), neg(ball.points.size());
    for (uint32_t i = 0; i < ball.points.size(); ++i) {
        switch (rule.eval(ball.points[i])) {
            case FirstSyllableRule::Where::plus: pos.set(i); break;
            case FirstSyllableRule::Where::minus: neg.set(i); break;
            case FirstSyllableRule::Where::core:
                pos.set(i);
                neg.set(i);
                break;
        }
    }
    return Wall(std::move(pos), std::move(neg));
}

}  // namespace cubulate
