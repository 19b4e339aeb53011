#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubulate/wallspace.hpp"

namespace cubulate {

// A finite group as a multiplication table. Element 0 is the identity.
// Tables are validated at load: a silent non-group would corrupt every
// certificate computed downstream.
struct FactorTable {
    std::string name;
    std::vector<std::string> labels;          // labels[0] names the identity
    std::vector<std::vector<uint8_t>> table;  // table[i][j] = i * j
    std::vector<uint8_t> inverse;

    uint32_t size() const { return static_cast<uint32_t>(labels.size()); }
    void validate() const;

    static FactorTable cyclic(uint32_t n, std::string name, const std::string& gen_label);
    static FactorTable symmetric3(std::string name);
};

struct Syllable {
    uint8_t factor;
    uint8_t element;  // nonzero
    auto operator<=>(const Syllable&) const = default;
};

// Reduced word: no identity syllables, no adjacent syllables from the
// same factor.
using NormalForm = std::vector<Syllable>;

class FreeProductModel {
  public:
    explicit FreeProductModel(std::vector<FactorTable> factors, std::string name = "");

    const std::string& name() const { return name_; }
    const std::vector<FactorTable>& factors() const { return factors_; }
    uint32_t factor_count() const { return static_cast<uint32_t>(factors_.size()); }
    std::optional<uint32_t> factor_index(const std::string& name) const;

    // Generators are the nontrivial factor elements; labels are unique
    // across factors.
    struct Generator {
        Syllable syllable;
        std::string label;
    };
    const std::vector<Generator>& generators() const { return generators_; }

    // Multiplies adjacent same-factor syllables, deletes identity
    // syllables, and iterates to a fixed point.
    NormalForm normal_form(const std::vector<Syllable>& word) const;
    NormalForm mul(const NormalForm& a, const NormalForm& b) const;
    NormalForm inverse(const NormalForm& a) const;
    NormalForm power(const NormalForm& a, int n) const;

    // 0 means infinite order. Finite order happens exactly when the
    // cyclic reduction has syllable length at most one.
    uint64_t order(const NormalForm& a) const;

    // Greedy longest-match tokenization against generator labels;
    // "e" (or the empty string) is the identity. Separators: space, '.',
    // '*'.
    NormalForm parse_word(const std::string& word) const;
    std::string display(const NormalForm& a) const;

    static bool less(const NormalForm& a, const NormalForm& b);  // length, then lex

    struct CayleyBall {
        uint32_t radius = 0;
        std::vector<NormalForm> points;             // sorted length-lex
        std::vector<std::string> names;             // display strings
        std::vector<std::vector<uint32_t>> adjacency;  // generator moves inside the ball
        std::optional<uint32_t> index_of(const NormalForm& x) const;

        // built by FreeProductModel::ball; sorted (key, index) pairs
        std::vector<std::pair<std::string, uint32_t>> key_index;
    };

    // All normal forms of syllable length <= radius, with edges given by
    // generator right-multiplication that stays inside the ball.
    CayleyBall ball(uint32_t radius, uint32_t max_radius = 8) const;

    // 1 + sums of alternating-syllable products of (|factor| - 1).
    uint64_t ball_size_closed_form(uint32_t radius) const;

    static std::string key_of(const NormalForm& x);

  private:
    std::string name_;
    std::vector<FactorTable> factors_;
    std::vector<Generator> generators_;
};

// Syllable-prefix membership rule: a group element lies on the '+' side
// when the first syllable of its normal form belongs to one of the chosen
// factors; the identity, having no first syllable, lies in the core.
struct FirstSyllableRule {
    uint32_t factor_mask = 0;

    enum class Where { plus, minus, core };
    Where eval(const NormalForm& x) const {
        if (x.empty()) return Where::core;
        return (factor_mask >> x.front().factor) & 1u ? Where::plus : Where::minus;
    }
};

// The wall splitting a Cayley ball by first-syllable factor membership.
// Complement subsets produce the same wall with the sides swapped.
Wall syllable_wall(const FreeProductModel& m, const FreeProductModel::CayleyBall& ball,
                   const std::vector<uint32_t>& first_syllable_factors);

}  // namespace cubulate
