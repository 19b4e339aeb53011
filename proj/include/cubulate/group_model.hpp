#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubulate/free_product.hpp"
#include "cubulate/perm_group.hpp"

namespace cubulate {

enum class ModelKind { free_product, permutation };

struct ModelHorizons {
    int radius = 6;
    int n_max = 6;
    int margin = 2;
};

// An element of whichever model is active; the inactive payload stays
// empty. Canonical form: reduced syllable word, or the image tuple.
struct GroupElement {
    NormalForm nf;
    Perm perm;
};

// A finitely generated group in one of two shapes: a free product of
// finite groups (elements are normal forms) or a finite permutation
// group. Uniform element arithmetic plus the named subgroups and
// codimension-1 wall data the pipelines consume. Immutable after load.
class GroupModel {
  public:
    struct Peripheral {
        std::string label;
        std::vector<std::string> generator_words;
    };

    // A codimension-1 datum: a (possibly trivial) subgroup together with
    // a two-sided wall over the group. Free product walls are
    // first-syllable membership rules; permutation walls list both sides
    // explicitly.
    struct WallDatum {
        std::string label;
        std::vector<std::string> subgroup_words;
        FirstSyllableRule rule;                       // free product models
        std::vector<std::string> positive, negative;  // permutation models
    };

    using Horizons = ModelHorizons;

    static GroupModel free_product(FreeProductModel m, std::vector<Peripheral> peripherals,
                                   std::vector<WallDatum> walls, Horizons horizons = Horizons());
    static GroupModel permutation(PermutationModel m, std::vector<Peripheral> peripherals,
                                  std::vector<WallDatum> walls, Horizons horizons = Horizons());
    // dihedral, abc, z2z3, cube-sym
    static GroupModel builtin(const std::string& name);
    static std::vector<std::string> builtin_names();
    static GroupModel from_json_text(const std::string& text);
    // Accepts "builtin:NAME" or a path to a JSON model file.
    static GroupModel load(const std::string& spec);

    ModelKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const FreeProductModel& fp() const;
    const PermutationModel& pm() const;

    GroupElement identity() const;
    GroupElement mul(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;
    GroupElement power(const GroupElement& a, int n) const;
    uint64_t order(const GroupElement& a) const;  // 0 = infinite
    bool is_identity(const GroupElement& a) const;
    bool equal(const GroupElement& a, const GroupElement& b) const;
    bool less(const GroupElement& a, const GroupElement& b) const;  // length, then lex
    uint32_t length(const GroupElement& a) const;
    std::string display(const GroupElement& a) const;
    GroupElement parse(const std::string& word) const;

    const std::vector<Peripheral>& peripherals() const { return peripherals_; }
    const std::vector<WallDatum>& wall_data() const { return walls_; }
    const Horizons& horizons() const { return horizons_; }
    std::vector<GroupElement> parse_all(const std::vector<std::string>& words) const;

    // Labelled generators of the whole group.
    std::vector<std::pair<std::string, GroupElement>> group_generators() const;

  private:
    ModelKind kind_ = ModelKind::free_product;
    std::string name_;
    std::shared_ptr<const FreeProductModel> fp_;
    std::shared_ptr<const PermutationModel> pm_;
    std::vector<Peripheral> peripherals_;
    std::vector<WallDatum> walls_;
    Horizons horizons_;

    void validate_data() const;
};

}  // namespace cubulate
