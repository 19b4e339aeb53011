#include "cubulate/action.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <mutex>
#include <sstream>

#include "cubulate/errors.hpp"

namespace cubulate {

namespace {

std::string element_key(const GroupModel& m, const GroupElement& g) {
    if (m.kind() == ModelKind::free_product) return FreeProductModel::key_of(g.nf);
    std::string key;
    key.reserve(g.perm.size());
    for (uint32_t x : g.perm) key.push_back(static_cast<char>(x));
    return key;
}

}  // namespace

struct ActionContext::Cache {
    std::mutex mutex;
    std::map<std::string, std::vector<ActionContext::WallImage>> wall_rows;
    std::map<std::string, std::vector<std::optional<uint32_t>>> point_rows;
    std::vector<int> vertex_depths;  // empty until first use
};

std::string ActionContext::set_key(const PointSet& s) {
    std::vector<uint64_t> blocks(s.num_blocks());
    boost::to_block_range(s, blocks.begin());
    return std::string(reinterpret_cast<const char*>(blocks.data()),
                       blocks.size() * sizeof(uint64_t));
}

uint32_t ActionContext::point_count() const {
    return model_.kind() == ModelKind::free_product
               ? static_cast<uint32_t>(fp_points_.size())
               : static_cast<uint32_t>(perm_points_.size());
}

const std::string& ActionContext::point_name(uint32_t p) const {
    if (model_.kind() == ModelKind::permutation) return perm_points_.at(p);
    return ws_->point_name(p);
}

int ActionContext::point_depth(uint32_t p) const {
    if (model_.kind() == ModelKind::permutation) return std::numeric_limits<int>::max() / 2;
    return opts_.radius - static_cast<int>(fp_points_.at(p).size());
}

const GroupElement& ActionContext::point_element(uint32_t p) const {
    return point_elements_.at(p);
}

std::optional<uint32_t> ActionContext::point_index(const GroupElement& g) const {
    if (model_.kind() == ModelKind::permutation) return std::nullopt;
    auto key = FreeProductModel::key_of(g.nf);
    auto it = std::lower_bound(fp_index_.begin(), fp_index_.end(), key,
                               [](const auto& e, const std::string& k) { return e.first < k; });
    if (it == fp_index_.end() || it->first != key) return std::nullopt;
    return it->second;
}

std::optional<uint32_t> ActionContext::act_point(const GroupElement& g, uint32_t p) const {
    if (model_.kind() == ModelKind::permutation) return g.perm.at(p);
    GroupElement img = model_.mul(g, point_elements_.at(p));
    return point_index(img);
}

const std::vector<std::optional<uint32_t>>& ActionContext::point_row(
    const GroupElement& g) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto key = element_key(model_, g);
    auto it = cache_->point_rows.find(key);
    if (it != cache_->point_rows.end()) return it->second;
    std::vector<std::optional<uint32_t>> row(point_count());
    for (uint32_t p = 0; p < point_count(); ++p) row[p] = act_point(g, p);
    return cache_->point_rows.emplace(std::move(key), std::move(row)).first->second;
}

int ActionContext::wall_depth(uint32_t wall) const {
    if (model_.kind() == ModelKind::permutation) return std::numeric_limits<int>::max() / 2;
    return opts_.radius - static_cast<int>(family_.at(wall).translator.nf.size());
}

int ActionContext::vertex_depth(uint32_t v) const {
    if (model_.kind() == ModelKind::permutation) return std::numeric_limits<int>::max() / 2;
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (cache_->vertex_depths.empty()) {
        std::vector<Orientation> principal;
        principal.reserve(point_count());
        for (uint32_t p = 0; p < point_count(); ++p)
            principal.push_back(principal_orientation(*ws_, p));
        cache_->vertex_depths.resize(X_.vertex_count());
        for (uint32_t u = 0; u < X_.vertex_count(); ++u) {
            size_t best_hamming = std::numeric_limits<size_t>::max();
            int best_depth = 0;
            for (uint32_t p = 0; p < point_count(); ++p) {
                size_t ham = (X_.vertex(u) ^ principal[p]).count();
                int d = point_depth(p);
                if (ham < best_hamming || (ham == best_hamming && d > best_depth)) {
                    best_hamming = ham;
                    best_depth = d;
                }
            }
            cache_->vertex_depths[u] = best_depth;
        }
    }
    return cache_->vertex_depths.at(v);
}

std::optional<Wall> ActionContext::materialize_fp(const TranslatedWall& tw) const {
    const auto& rule = model_.wall_data().at(tw.datum).rule;
    GroupElement inv_t = model_.inverse(tw.translator);
    const uint32_t n = static_cast<uint32_t>(fp_points_.size());
    PointSet pos(n), neg(n);
    for (uint32_t p = 0; p < n; ++p) {
        GroupElement moved = model_.mul(inv_t, point_elements_[p]);
        switch (rule.eval(moved.nf)) {
            case FirstSyllableRule::Where::plus: pos.set(p); break;
            case FirstSyllableRule::Where::minus: neg.set(p); break;
            case FirstSyllableRule::Where::core:
                pos.set(p);
                neg.set(p);
                break;
        }
    }
    if ((pos - neg).none() || (neg - pos).none()) return std::nullopt;
    return Wall(std::move(pos), std::move(neg));
}

std::optional<Wall> ActionContext::materialize_perm(const TranslatedWall& tw) const {
    const auto& datum = model_.wall_data().at(tw.datum);
    const uint32_t n = model_.pm().degree();
    PointSet pos(n), neg(n);
    auto fill = [&](const std::vector<std::string>& names, PointSet& out) {
        for (const auto& nm : names) {
            auto it = std::find(perm_points_.begin(), perm_points_.end(), nm);
            out.set(static_cast<uint32_t>(it - perm_points_.begin()));
        }
    };
    fill(datum.positive, pos);
    fill(datum.negative, neg);
    // translate by the group element
    PointSet tpos(n), tneg(n);
    for (uint32_t p = 0; p < n; ++p) {
        if (pos.test(p)) tpos.set(tw.translator.perm.at(p));
        if (neg.test(p)) tneg.set(tw.translator.perm.at(p));
    }
    if ((tpos - tneg).none() || (tneg - tpos).none()) return std::nullopt;
    return Wall(std::move(tpos), std::move(tneg));
}

std::optional<Wall> ActionContext::materialize(const TranslatedWall& tw) const {
    return model_.kind() == ModelKind::free_product ? materialize_fp(tw)
                                                    : materialize_perm(tw);
}

const std::vector<ActionContext::WallImage>& ActionContext::wall_image_row(
    const GroupElement& g) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto key = element_key(model_, g);
    auto it = cache_->wall_rows.find(key);
    if (it != cache_->wall_rows.end()) return it->second;
    std::vector<WallImage> row(family_.size());
    const uint32_t n_points = point_count();
    for (uint32_t w = 0; w < family_.size(); ++w) {
        TranslatedWall moved{family_[w].datum, model_.mul(g, family_[w].translator)};
        // materialize without the validity requirement: one-sided
        // translates force the coordinate
        std::optional<Wall> img = materialize(moved);
        if (img) {
            auto found = wall_lookup_.find({set_key(img->positive), set_key(img->negative)});
            if (found != wall_lookup_.end())
                row[w] = {WallImage::Kind::family, found->second.first, found->second.second};
            continue;
        }
        // rebuild the raw sides to see which one the ball inhabits
        PointSet pos(n_points), neg(n_points);
        if (model_.kind() == ModelKind::free_product) {
            const auto& rule = model_.wall_data().at(moved.datum).rule;
            GroupElement inv_t = model_.inverse(moved.translator);
            for (uint32_t p = 0; p < n_points; ++p) {
                GroupElement x = model_.mul(inv_t, point_elements_[p]);
                switch (rule.eval(x.nf)) {
                    case FirstSyllableRule::Where::plus: pos.set(p); break;
                    case FirstSyllableRule::Where::minus: neg.set(p); break;
                    case FirstSyllableRule::Where::core:
                        pos.set(p);
                        neg.set(p);
                        break;
                }
            }
        } else {
            continue;  // permutation families are closed; nothing is forced
        }
        const bool plus_inhabited = (pos - neg).any();
        const bool minus_inhabited = (neg - pos).any();
        if (plus_inhabited && !minus_inhabited)
            row[w] = {WallImage::Kind::forced, 0, Sign::plus};
        else if (minus_inhabited && !plus_inhabited)
            row[w] = {WallImage::Kind::forced, 0, Sign::minus};
    }
    return cache_->wall_rows.emplace(std::move(key), std::move(row)).first->second;
}

std::optional<std::pair<uint32_t, Sign>> ActionContext::act_wall(const GroupElement& g,
                                                                 uint32_t wall) const {
    const WallImage& img = wall_image_row(g).at(wall);
    if (img.kind != WallImage::Kind::family) return std::nullopt;
    return std::make_pair(img.index, img.sign);
}

ActionContext::PartialVertexImage ActionContext::act_vertex(const GroupElement& g,
                                                            uint32_t v) const {
    const uint32_t n = ws_->wall_count();
    PartialVertexImage out;
    out.bits.resize(n);
    out.defined.resize(n);
    const Orientation& sigma = X_.vertex(v);
    const auto& row = wall_image_row(model_.inverse(g));
    bool used_forced = false;
    for (uint32_t j = 0; j < n; ++j) {
        const WallImage& pulled = row[j];
        if (pulled.kind == WallImage::Kind::undefined) continue;
        out.defined.set(j);
        if (pulled.kind == WallImage::Kind::forced) {
            // the pulled wall no longer splits the ball, so an anchored
            // orientation chooses its inhabited side, and translating back
            // keeps the label
            used_forced = true;
            if (pulled.sign == Sign::minus) out.bits.set(j);
            continue;
        }
        // g maps the side sigma chose at the pulled wall onto family[j]'s
        // positive side exactly when sigma's sign matches the stored sign
        if (orientation_sign(sigma, pulled.index) != pulled.sign) out.bits.set(j);  // '-'
    }
    // boundary gaps point past the truncation, where the inhabited-side
    // rule misreads them; an image is only trusted as a vertex when the
    // move keeps the whole picture inside the margin
    const int needed = opts_.margin + static_cast<int>(model_.length(g));
    if (out.defined.count() == n && (!used_forced || vertex_depth(v) >= needed))
        out.vertex = X_.vertex_index(out.bits);
    return out;
}

int ActionContext::distance_to_set(uint32_t p, const PointSet& set) const {
    if (model_.kind() == ModelKind::permutation) return 0;
    int best = std::numeric_limits<int>::max();
    const GroupElement& x = point_elements_.at(p);
    for (auto c = set.find_first(); c != PointSet::npos; c = set.find_next(c)) {
        GroupElement diff = model_.mul(model_.inverse(point_elements_[c]), x);
        best = std::min(best, static_cast<int>(diff.nf.size()));
        if (best == 0) break;
    }
    return best;
}

SubgroupSweep ActionContext::sweep_subgroup(const std::vector<GroupElement>& gens) const {
    SubgroupSweep sweep;
    std::vector<GroupElement> letters;
    for (const auto& g : gens) {
        letters.push_back(g);
        letters.push_back(model_.inverse(g));
    }
    std::map<std::string, uint32_t> seen;
    std::deque<GroupElement> queue;
    GroupElement id = model_.identity();
    seen.emplace(element_key(model_, id), 0);
    sweep.elements.push_back(id);
    queue.push_back(id);
    while (!queue.empty()) {
        GroupElement cur = queue.front();
        queue.pop_front();
        for (const auto& letter : letters) {
            GroupElement next = model_.mul(letter, cur);
            if (model_.kind() == ModelKind::free_product &&
                next.nf.size() > static_cast<size_t>(opts_.radius)) {
                sweep.closed = false;
                continue;
            }
            auto key = element_key(model_, next);
            if (seen.emplace(key, 0).second) {
                if (sweep.elements.size() >= opts_.subgroup_cap)
                    throw resource_error("subgroup sweep exceeded the cap of " +
                                         std::to_string(opts_.subgroup_cap) + " elements");
                sweep.elements.push_back(next);
                queue.push_back(next);
            }
        }
    }
    std::sort(sweep.elements.begin(), sweep.elements.end(),
              [this](const GroupElement& a, const GroupElement& b) { return model_.less(a, b); });
    return sweep;
}

std::vector<GroupElement> ActionContext::reduced_words(const std::vector<GroupElement>& gens,
                                                       uint32_t max_length) const {
    std::vector<GroupElement> letters;
    for (const auto& g : gens) {
        letters.push_back(g);
        letters.push_back(model_.inverse(g));
    }
    std::map<std::string, GroupElement> seen;
    std::vector<GroupElement> frontier{model_.identity()};
    seen.emplace(element_key(model_, frontier[0]), frontier[0]);
    for (uint32_t len = 1; len <= max_length; ++len) {
        std::vector<GroupElement> next;
        for (const auto& w : frontier)
            for (const auto& letter : letters) {
                GroupElement x = model_.mul(w, letter);
                auto key = element_key(model_, x);
                if (seen.emplace(key, x).second) next.push_back(x);
            }
        frontier = std::move(next);
    }
    std::vector<GroupElement> words;
    for (const auto& [key, g] : seen)
        if (!model_.is_identity(g)) words.push_back(g);
    std::sort(words.begin(), words.end(),
              [this](const GroupElement& a, const GroupElement& b) { return model_.less(a, b); });
    return words;
}

std::string ActionContext::wall_label(uint32_t w) const {
    const TranslatedWall& tw = family_.at(w);
    std::string base = model_.wall_data().at(tw.datum).label;
    if (model_.is_identity(tw.translator)) return base;
    return base + "@" + model_.display(tw.translator);
}

void ActionContext::build_family_and_complex(const std::vector<TranslatedWall>& candidates,
                                             const std::vector<GroupElement>& translators) {
    (void)translators;
    std::vector<Wall> walls;
    for (const TranslatedWall& cand : candidates) {
        auto w = materialize(cand);
        if (!w) continue;
        auto key = std::make_pair(set_key(w->positive), set_key(w->negative));
        if (wall_lookup_.count(key)) continue;
        uint32_t idx = static_cast<uint32_t>(family_.size());
        wall_lookup_.emplace(key, std::make_pair(idx, Sign::plus));
        wall_lookup_.emplace(std::make_pair(key.second, key.first),
                             std::make_pair(idx, Sign::minus));
        family_.push_back(cand);
        walls.push_back(std::move(*w));
        if (family_.size() > opts_.wall_budget)
            throw resource_error("wall family exceeded the budget of " +
                                 std::to_string(opts_.wall_budget) + " (" +
                                 std::to_string(family_.size()) + " walls so far)");
    }
    if (walls.empty()) throw input_error("no valid wall survives the truncation");
    cache_ = std::make_shared<Cache>();

    std::vector<std::string> names;
    for (uint32_t p = 0; p < point_count(); ++p)
        names.push_back(model_.kind() == ModelKind::free_product
                            ? model_.display(point_elements_[p])
                            : perm_points_[p]);
    std::ostringstream nm;
    nm << model_.name() << "@r" << opts_.radius;
    ws_ = std::make_shared<Wallspace>(std::move(names), std::move(walls), nm.str());

    BuildOptions build;
    build.wall_budget = opts_.wall_budget;
    build.vertex_budget = opts_.vertex_budget;
    X_ = build_dual(ws_, build);
}

ActionContext ActionContext::over_group(const GroupModel& model, ContextOptions opts) {
    if (opts.translate_radius < 0) opts.translate_radius = opts.radius;
    ActionContext ctx;
    ctx.model_ = model;
    ctx.opts_ = opts;

    std::vector<GroupElement> translators;
    if (model.kind() == ModelKind::free_product) {
        auto ball = model.fp().ball(static_cast<uint32_t>(opts.radius),
                                    std::max(8u, static_cast<uint32_t>(opts.radius)));
        ctx.fp_points_ = ball.points;
        for (const auto& nf : ctx.fp_points_) {
            GroupElement e;
            e.nf = nf;
            ctx.point_elements_.push_back(e);
        }
        for (uint32_t i = 0; i < ctx.fp_points_.size(); ++i)
            ctx.fp_index_.emplace_back(FreeProductModel::key_of(ctx.fp_points_[i]), i);
        std::sort(ctx.fp_index_.begin(), ctx.fp_index_.end());
        for (uint32_t i = 0; i < ctx.fp_points_.size(); ++i)
            if (ctx.fp_points_[i].size() <= static_cast<size_t>(opts.translate_radius))
                translators.push_back(ctx.point_elements_[i]);
    } else {
        ctx.perm_points_ = model.pm().point_names();
        for (const Perm& p : model.pm().elements()) {
            GroupElement e;
            e.perm = p;
            translators.push_back(e);
        }
    }

    // a wall datum's sides must be invariant under its own subgroup
    for (const auto& datum : model.wall_data()) {
        auto gens = model.parse_all(datum.subgroup_words);
        TranslatedWall base{static_cast<uint32_t>(&datum - model.wall_data().data()),
                            model.identity()};
        auto wall = ctx.materialize(base);
        if (!wall) continue;
        for (const auto& s : gens) {
            for (uint32_t p = 0; p < ctx.point_count(); ++p) {
                auto q = ctx.act_point(s, p);
                if (!q) continue;
                if (wall->positive.test(p) != wall->positive.test(*q) ||
                    wall->negative.test(p) != wall->negative.test(*q))
                    throw input_error("wall '" + datum.label +
                                      "' is not invariant under its subgroup generator at point " +
                                      ctx.point_name(p));
            }
        }
    }

    std::vector<TranslatedWall> candidates;
    for (const auto& t : translators)
        for (uint32_t d = 0; d < model.wall_data().size(); ++d)
            candidates.push_back({d, t});
    ctx.build_family_and_complex(candidates, translators);
    return ctx;
}

ActionContext ActionContext::over_subgroup(const GroupModel& model,
                                           const std::vector<GroupElement>& subgroup_gens,
                                           const std::vector<TranslatedWall>& walls,
                                           ContextOptions opts) {
    if (opts.translate_radius < 0) opts.translate_radius = opts.radius;
    ActionContext ctx;
    ctx.model_ = model;
    ctx.opts_ = opts;

    // the subgroup ball is the point universe
    ActionContext probe;
    probe.model_ = model;
    probe.opts_ = opts;
    SubgroupSweep sweep = probe.sweep_subgroup(subgroup_gens);

    std::vector<GroupElement> translators;
    if (model.kind() == ModelKind::free_product) {
        for (const auto& g : sweep.elements) {
            ctx.fp_points_.push_back(g.nf);
            ctx.point_elements_.push_back(g);
        }
        for (uint32_t i = 0; i < ctx.fp_points_.size(); ++i)
            ctx.fp_index_.emplace_back(FreeProductModel::key_of(ctx.fp_points_[i]), i);
        std::sort(ctx.fp_index_.begin(), ctx.fp_index_.end());
        for (const auto& g : sweep.elements)
            if (g.nf.size() <= static_cast<size_t>(opts.translate_radius))
                translators.push_back(g);
    } else {
        ctx.perm_points_ = model.pm().point_names();
        translators = sweep.elements;
    }

    std::vector<TranslatedWall> candidates;
    for (const auto& p : translators)
        for (const TranslatedWall& w : walls)
            candidates.push_back({w.datum, model.mul(p, w.translator)});
    ctx.build_family_and_complex(candidates, translators);
    return ctx;
}

}  // namespace cubulate
