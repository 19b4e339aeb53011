#include "cubulate/wallspace.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace cubulate {

Wall::Wall(PointSet pos, PointSet neg)
    : positive(std::move(pos)), negative(std::move(neg)) {
    if (positive.size() != negative.size())
        throw input_error("wall sides live over different point universes");
    core = positive & negative;
    strict_positive = positive - core;
    strict_negative = negative - core;
}

bool Wall::same_unordered(const Wall& other) const {
    return (positive == other.positive && negative == other.negative) ||
           (positive == other.negative && negative == other.positive);
}

Wallspace::Wallspace(std::vector<std::string> point_names, std::vector<Wall> walls,
                     std::string name)
    : name_(std::move(name)), point_names_(std::move(point_names)), walls_(std::move(walls)) {
    validate();
}

void Wallspace::validate() const {
    const size_t n = point_names_.size();
    if (n == 0) throw input_error("wallspace '" + name_ + "' has no points");
    {
        std::unordered_map<std::string, uint32_t> seen;
        for (uint32_t i = 0; i < point_names_.size(); ++i) {
            auto [it, inserted] = seen.emplace(point_names_[i], i);
            if (!inserted)
                throw input_error("duplicate point name '" + point_names_[i] + "'");
        }
    }
    for (uint32_t w = 0; w < walls_.size(); ++w) {
        const Wall& wall = walls_[w];
        std::ostringstream where;
        where << "wall " << w << " of wallspace '" << name_ << "'";
        if (wall.positive.size() != n)
            throw input_error(where.str() + ": sides not over the point universe");
        PointSet all(n);
        all.set();
        if ((wall.positive | wall.negative) != all)
            throw input_error(where.str() + ": sides do not cover the point set");
        if (wall.strict_positive.none() || wall.strict_negative.none())
            throw input_error(where.str() + ": a side has empty strict part");
        for (uint32_t v = 0; v < w; ++v)
            if (wall.same_unordered(walls_[v])) {
                std::ostringstream msg;
                msg << where.str() << " duplicates wall " << v
                    << " (as an unordered halfspace pair)";
                throw input_error(msg.str());
            }
    }
}

uint32_t Wallspace::point_index(const std::string& name) const {
    for (uint32_t i = 0; i < point_names_.size(); ++i)
        if (point_names_[i] == name) return i;
    throw input_error("unknown point '" + name + "' in wallspace '" + name_ + "'");
}

bool Wallspace::crosses(uint32_t w1, uint32_t w2) const {
    if (w1 >= walls_.size() || w2 >= walls_.size())
        throw input_error("wall index out of range");
    const Wall& a = walls_[w1];
    const Wall& b = walls_[w2];
    return a.strict_positive.intersects(b.strict_positive) &&
           a.strict_positive.intersects(b.strict_negative) &&
           a.strict_negative.intersects(b.strict_positive) &&
           a.strict_negative.intersects(b.strict_negative);
}

bool Wallspace::nests(Halfspace h1, Halfspace h2) const {
    const PointSet& a = strict_side(h1);
    const PointSet& b = strict_side(h2);
    return a.is_proper_subset_of(b);
}

uint32_t Wallspace::wall_separation(uint32_t x, uint32_t y) const {
    if (x >= point_count() || y >= point_count())
        throw input_error("point index out of range");
    uint32_t count = 0;
    for (const Wall& w : walls_) {
        const bool xp = w.strict_positive.test(x);
        const bool xn = w.strict_negative.test(x);
        const bool yp = w.strict_positive.test(y);
        const bool yn = w.strict_negative.test(y);
        if ((xp && yn) || (xn && yp)) ++count;
    }
    return count;
}

uint32_t Wallspace::wall_separation(const std::string& x, const std::string& y) const {
    return wall_separation(point_index(x), point_index(y));
}

PointSet Wallspace::make_point_set(const std::vector<std::string>& names) const {
    PointSet s(point_count());
    for (const auto& n : names) s.set(point_index(n));
    return s;
}

Wall Wallspace::make_wall(const std::vector<std::string>& positive,
                          const std::vector<std::string>& negative) const {
    return Wall(make_point_set(positive), make_point_set(negative));
}

Wallspace Wallspace::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("wallspace file is not valid JSON: ") + e.what());
    }
    if (!j.contains("points") || !j["points"].is_array())
        throw input_error("wallspace file lacks a \"points\" array");
    if (!j.contains("walls") || !j["walls"].is_array())
        throw input_error("wallspace file lacks a \"walls\" array");

    std::vector<std::string> points;
    for (const auto& p : j["points"]) points.push_back(p.get<std::string>());

    std::unordered_map<std::string, uint32_t> index;
    for (uint32_t i = 0; i < points.size(); ++i) index.emplace(points[i], i);

    auto parse_side = [&](const nlohmann::json& arr, const char* which) {
        PointSet s(points.size());
        for (const auto& name : arr) {
            auto it = index.find(name.get<std::string>());
            if (it == index.end())
                throw input_error("wall side \"" + std::string(which) +
                                  "\" names unknown point '" + name.get<std::string>() + "'");
            s.set(it->second);
        }
        return s;
    };

    std::vector<Wall> walls;
    for (const auto& w : j["walls"]) {
        if (!w.contains("positive") || !w.contains("negative"))
            throw input_error("each wall needs \"positive\" and \"negative\" arrays");
        walls.emplace_back(parse_side(w["positive"], "positive"),
                           parse_side(w["negative"], "negative"));
    }
    std::string name = j.value("name", "");
    return Wallspace(std::move(points), std::move(walls), std::move(name));
}

std::string Wallspace::to_json_text() const {
    nlohmann::json j;
    if (!name_.empty()) j["name"] = name_;
    j["points"] = point_names_;
    j["walls"] = nlohmann::json::array();
    for (const Wall& w : walls_) {
        nlohmann::json side_pos = nlohmann::json::array();
        nlohmann::json side_neg = nlohmann::json::array();
        for (uint32_t p = 0; p < point_count(); ++p) {
            if (w.positive.test(p)) side_pos.push_back(point_names_[p]);
            if (w.negative.test(p)) side_neg.push_back(point_names_[p]);
        }
        j["walls"].push_back({{"positive", side_pos}, {"negative", side_neg}});
    }
    return j.dump(2) + "\n";
}

}  // namespace cubulate
