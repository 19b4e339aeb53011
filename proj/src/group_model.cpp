#include "cubulate/group_model.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cubulate/errors.hpp"

namespace cubulate {

GroupModel GroupModel::free_product(FreeProductModel m, std::vector<Peripheral> peripherals,
                                    std::vector<WallDatum> walls, Horizons horizons) {
    GroupModel g;
    g.kind_ = ModelKind::free_product;
    g.name_ = m.name();
    g.fp_ = std::make_shared<FreeProductModel>(std::move(m));
    g.peripherals_ = std::move(peripherals);
    g.walls_ = std::move(walls);
    g.horizons_ = horizons;
    g.validate_data();
    return g;
}

GroupModel GroupModel::permutation(PermutationModel m, std::vector<Peripheral> peripherals,
                                   std::vector<WallDatum> walls, Horizons horizons) {
    GroupModel g;
    g.kind_ = ModelKind::permutation;
    g.name_ = m.name();
    g.pm_ = std::make_shared<PermutationModel>(std::move(m));
    g.peripherals_ = std::move(peripherals);
    g.walls_ = std::move(walls);
    g.horizons_ = horizons;
    g.validate_data();
    return g;
}

void GroupModel::validate_data() const {
    for (const auto& p : peripherals_) parse_all(p.generator_words);
    for (const auto& w : walls_) {
        parse_all(w.subgroup_words);
        if (kind_ == ModelKind::free_product) {
            if (w.rule.factor_mask == 0)
                throw input_error("wall '" + w.label + "' has an empty factor subset");
            if (w.rule.factor_mask >= (1u << fp_->factor_count()))
                throw input_error("wall '" + w.label + "' names an unknown factor");
            if (w.rule.factor_mask == (1u << fp_->factor_count()) - 1)
                throw input_error("wall '" + w.label + "' uses every factor; one side is empty");
        } else {
            if (w.positive.empty() || w.negative.empty())
                throw input_error("wall '" + w.label + "' needs explicit sides");
            std::vector<char> seen(pm_->degree(), 0);
            auto mark = [&](const std::vector<std::string>& names) {
                for (const auto& nm : names) {
                    auto it = std::find(pm_->point_names().begin(), pm_->point_names().end(), nm);
                    if (it == pm_->point_names().end())
                        throw input_error("wall '" + w.label + "' names unknown point '" + nm +
                                          "'");
                    seen[it - pm_->point_names().begin()] = 1;
                }
            };
            mark(w.positive);
            mark(w.negative);
            if (std::find(seen.begin(), seen.end(), 0) != seen.end())
                throw input_error("wall '" + w.label + "' does not cover the point domain");
        }
    }
}

const FreeProductModel& GroupModel::fp() const {
    if (kind_ != ModelKind::free_product)
        throw input_error("model '" + name_ + "' is not a free product");
    return *fp_;
}

const PermutationModel& GroupModel::pm() const {
    if (kind_ != ModelKind::permutation)
        throw input_error("model '" + name_ + "' is not a permutation group");
    return *pm_;
}

GroupElement GroupModel::identity() const {
    GroupElement e;
    if (kind_ == ModelKind::permutation) e.perm = pm_->identity();
    return e;
}

GroupElement GroupModel::mul(const GroupElement& a, const GroupElement& b) const {
    GroupElement c;
    if (kind_ == ModelKind::free_product)
        c.nf = fp_->mul(a.nf, b.nf);
    else
        c.perm = pm_->mul(a.perm, b.perm);
    return c;
}

GroupElement GroupModel::inverse(const GroupElement& a) const {
    GroupElement c;
    if (kind_ == ModelKind::free_product)
        c.nf = fp_->inverse(a.nf);
    else
        c.perm = pm_->inverse(a.perm);
    return c;
}

GroupElement GroupModel::power(const GroupElement& a, int n) const {
    GroupElement acc = identity();
    GroupElement base = n < 0 ? inverse(a) : a;
    for (int i = 0; i < std::abs(n); ++i) acc = mul(acc, base);
    return acc;
}

uint64_t GroupModel::order(const GroupElement& a) const {
    return kind_ == ModelKind::free_product ? fp_->order(a.nf) : pm_->order(a.perm);
}

bool GroupModel::is_identity(const GroupElement& a) const {
    return kind_ == ModelKind::free_product ? a.nf.empty() : a.perm == pm_->identity();
}

bool GroupModel::equal(const GroupElement& a, const GroupElement& b) const {
    return kind_ == ModelKind::free_product ? a.nf == b.nf : a.perm == b.perm;
}

bool GroupModel::less(const GroupElement& a, const GroupElement& b) const {
    if (kind_ == ModelKind::free_product) return FreeProductModel::less(a.nf, b.nf);
    uint32_t la = pm_->word_length(a.perm);
    uint32_t lb = pm_->word_length(b.perm);
    if (la != lb) return la < lb;
    return a.perm < b.perm;
}

uint32_t GroupModel::length(const GroupElement& a) const {
    return kind_ == ModelKind::free_product ? static_cast<uint32_t>(a.nf.size())
                                            : pm_->word_length(a.perm);
}

std::string GroupModel::display(const GroupElement& a) const {
    return kind_ == ModelKind::free_product ? fp_->display(a.nf) : pm_->display(a.perm);
}

GroupElement GroupModel::parse(const std::string& word) const {
    GroupElement e;
    if (kind_ == ModelKind::free_product)
        e.nf = fp_->parse_word(word);
    else
        e.perm = pm_->parse_word(word);
    return e;
}

std::vector<GroupElement> GroupModel::parse_all(const std::vector<std::string>& words) const {
    std::vector<GroupElement> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(parse(w));
    return out;
}

std::vector<std::pair<std::string, GroupElement>> GroupModel::group_generators() const {
    std::vector<std::pair<std::string, GroupElement>> out;
    if (kind_ == ModelKind::free_product) {
        for (const auto& g : fp_->generators()) {
            GroupElement e;
            e.nf = NormalForm{g.syllable};
            out.emplace_back(g.label, e);
        }
    } else {
        for (const auto& [label, p] : pm_->generators()) {
            GroupElement e;
            e.perm = p;
            out.emplace_back(label, e);
        }
    }
    return out;
}

namespace {

GroupModel make_dihedral() {
    FreeProductModel m({FactorTable::cyclic(2, "A", "a"), FactorTable::cyclic(2, "B", "b")},
                       "dihedral");
    std::vector<GroupModel::Peripheral> periph{{"G", {"a", "b"}}};
    std::vector<GroupModel::WallDatum> walls(1);
    walls[0].label = "K";
    walls[0].rule.factor_mask = 1u << 0;  // first syllable in A
    return GroupModel::free_product(std::move(m), std::move(periph), std::move(walls));
}

GroupModel make_abc() {
    FreeProductModel m({FactorTable::cyclic(2, "A", "a"), FactorTable::cyclic(2, "B", "b"),
                        FactorTable::cyclic(2, "C", "c")},
                       "abc");
    std::vector<GroupModel::Peripheral> periph{{"AB", {"a", "b"}}, {"C", {"c"}}};
    std::vector<GroupModel::WallDatum> walls(2);
    walls[0].label = "K1";
    walls[0].rule.factor_mask = 1u << 0;             // first syllable in A
    walls[1].label = "K2";
    walls[1].rule.factor_mask = (1u << 0) | (1u << 1);  // first syllable in A * B
    GroupModel::Horizons h;
    h.radius = 4;
    return GroupModel::free_product(std::move(m), std::move(periph), std::move(walls), h);
}

GroupModel make_z2z3() {
    FreeProductModel m({FactorTable::cyclic(2, "A", "a"), FactorTable::cyclic(3, "B", "b")},
                       "z2z3");
    std::vector<GroupModel::Peripheral> periph{{"A", {"a"}}, {"B", {"b"}}};
    std::vector<GroupModel::WallDatum> walls(1);
    walls[0].label = "K";
    walls[0].rule.factor_mask = 1u << 0;
    return GroupModel::free_product(std::move(m), std::move(periph), std::move(walls));
}

GroupModel make_cube_sym() {
    // coordinate swaps of S_3 acting on the corners of a 3-cube
    std::vector<std::string> corners;
    for (int i = 0; i < 8; ++i) {
        std::string s = {char('0' + (i & 1)), char('0' + ((i >> 1) & 1)),
                         char('0' + ((i >> 2) & 1))};
        corners.push_back(s);
    }
    auto coord_swap = [&](int x, int y) {
        Perm p(8);
        for (int i = 0; i < 8; ++i) {
            int bits[3] = {i & 1, (i >> 1) & 1, (i >> 2) & 1};
            std::swap(bits[x], bits[y]);
            p[i] = static_cast<uint32_t>(bits[0] | (bits[1] << 1) | (bits[2] << 2));
        }
        return p;
    };
    PermutationModel m(corners, {{"s01", coord_swap(0, 1)}, {"s12", coord_swap(1, 2)}},
                       "cube-sym");
    std::vector<GroupModel::Peripheral> periph{{"G", {"s01", "s12"}}};
    std::vector<GroupModel::WallDatum> walls(3);
    for (int k = 0; k < 3; ++k) {
        walls[k].label = "W" + std::to_string(k);
        for (int i = 0; i < 8; ++i)
            (((i >> k) & 1) ? walls[k].negative : walls[k].positive).push_back(corners[i]);
    }
    return GroupModel::permutation(std::move(m), std::move(periph), std::move(walls));
}

}  // namespace

std::vector<std::string> GroupModel::builtin_names() {
    return {"dihedral", "abc", "z2z3", "cube-sym"};
}

GroupModel GroupModel::builtin(const std::string& name) {
    if (name == "dihedral") return make_dihedral();
    if (name == "abc") return make_abc();
    if (name == "z2z3") return make_z2z3();
    if (name == "cube-sym") return make_cube_sym();
    throw input_error("unknown builtin model '" + name + "'");
}

GroupModel GroupModel::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("group model file is not valid JSON: ") + e.what());
    }
    const std::string kind = j.value("kind", "free_product");
    const std::string name = j.value("name", "model");

    Horizons horizons;
    if (j.contains("horizons")) {
        const auto& h = j["horizons"];
        horizons.radius = h.value("radius", horizons.radius);
        horizons.n_max = h.value("n_max", horizons.n_max);
        horizons.margin = h.value("margin", horizons.margin);
    }

    std::vector<Peripheral> peripherals;
    for (const auto& p : j.value("peripherals", nlohmann::json::array())) {
        Peripheral per;
        per.label = p.at("label").get<std::string>();
        for (const auto& w : p.at("generators")) per.generator_words.push_back(w);
        peripherals.push_back(std::move(per));
    }

    if (kind == "free_product") {
        std::vector<FactorTable> factors;
        for (const auto& f : j.at("factors")) {
            const std::string fname = f.at("name").get<std::string>();
            if (f.contains("cyclic")) {
                factors.push_back(FactorTable::cyclic(f["cyclic"].get<uint32_t>(), fname,
                                                      f.value("generator", fname)));
            } else if (f.contains("symmetric3")) {
                factors.push_back(FactorTable::symmetric3(fname));
            } else {
                FactorTable t;
                t.name = fname;
                for (const auto& l : f.at("elements")) t.labels.push_back(l);
                for (const auto& row : f.at("table")) {
                    std::vector<uint8_t> r;
                    for (const auto& x : row) r.push_back(x.get<uint8_t>());
                    t.table.push_back(std::move(r));
                }
                t.inverse.resize(t.labels.size());
                for (uint32_t i = 0; i < t.labels.size(); ++i)
                    for (uint32_t k = 0; k < t.labels.size(); ++k)
                        if (t.table[i][k] == 0) t.inverse[i] = static_cast<uint8_t>(k);
                factors.push_back(std::move(t));
            }
        }
        FreeProductModel m(std::move(factors), name);
        std::vector<WallDatum> walls;
        for (const auto& w : j.value("walls", nlohmann::json::array())) {
            WallDatum d;
            d.label = w.at("label").get<std::string>();
            for (const auto& s : w.value("subgroup", nlohmann::json::array()))
                d.subgroup_words.push_back(s);
            for (const auto& fn : w.at("first_syllable_in")) {
                auto idx = m.factor_index(fn.get<std::string>());
                if (!idx)
                    throw input_error("wall '" + d.label + "' names unknown factor '" +
                                      fn.get<std::string>() + "'");
                d.rule.factor_mask |= 1u << *idx;
            }
            walls.push_back(std::move(d));
        }
        return GroupModel::free_product(std::move(m), std::move(peripherals), std::move(walls),
                                        horizons);
    }
    if (kind == "permutation") {
        std::vector<std::string> points;
        for (const auto& p : j.at("points")) points.push_back(p);
        std::vector<std::pair<std::string, Perm>> gens;
        for (const auto& g : j.at("generators")) {
            Perm p;
            for (const auto& x : g.at("images")) p.push_back(x.get<uint32_t>());
            gens.emplace_back(g.at("label").get<std::string>(), std::move(p));
        }
        PermutationModel m(std::move(points), std::move(gens), name);
        std::vector<WallDatum> walls;
        for (const auto& w : j.value("walls", nlohmann::json::array())) {
            WallDatum d;
            d.label = w.at("label").get<std::string>();
            for (const auto& s : w.value("subgroup", nlohmann::json::array()))
                d.subgroup_words.push_back(s);
            for (const auto& p : w.at("positive")) d.positive.push_back(p);
            for (const auto& p : w.at("negative")) d.negative.push_back(p);
            walls.push_back(std::move(d));
        }
        return GroupModel::permutation(std::move(m), std::move(peripherals), std::move(walls),
                                       horizons);
    }
    throw input_error("unknown model kind '" + kind + "'");
}

GroupModel GroupModel::load(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) return builtin(spec.substr(8));
    std::ifstream in(spec);
    if (!in) throw input_error("cannot open group model file '" + spec + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

}  // namespace cubulate
