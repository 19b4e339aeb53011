#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubulate {

// One-line permutation on 0..degree-1.
using Perm = std::vector<uint32_t>;

// A finite permutation group given by labelled generators acting on a
// named point domain. The whole group is enumerated at load so word
// lengths and orders are exact.
class PermutationModel {
  public:
    PermutationModel(std::vector<std::string> point_names,
                     std::vector<std::pair<std::string, Perm>> generators,
                     std::string name = "", uint64_t group_size_cap = 100000);

    const std::string& name() const { return name_; }
    uint32_t degree() const { return static_cast<uint32_t>(point_names_.size()); }
    const std::vector<std::string>& point_names() const { return point_names_; }
    const std::vector<std::pair<std::string, Perm>>& generators() const { return generators_; }

    Perm identity() const;
    Perm mul(const Perm& a, const Perm& b) const;  // (a*b)(x) = a(b(x))
    Perm inverse(const Perm& a) const;
    uint64_t order(const Perm& a) const;

    uint64_t group_size() const { return elements_.size(); }
    const std::vector<Perm>& elements() const { return elements_; }
    // Shortest word length over the generators; throws for strangers.
    uint32_t word_length(const Perm& a) const;
    std::optional<uint32_t> element_index(const Perm& a) const;

    Perm parse_word(const std::string& word) const;
    std::string display(const Perm& a) const;  // cycle notation

  private:
    std::string name_;
    std::vector<std::string> point_names_;
    std::vector<std::pair<std::string, Perm>> generators_;
    std::vector<Perm> elements_;        // sorted by (word length, images)
    std::vector<uint32_t> lengths_;     // parallel to elements_
    std::vector<std::pair<Perm, uint32_t>> index_;  // sorted by images

    void enumerate(uint64_t cap);
};

}  // namespace cubulate
