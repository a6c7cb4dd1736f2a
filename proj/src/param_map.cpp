#include "chartab/param_map.hpp"

#include <algorithm>
#include <sstream>

namespace chartab {

MapEntry::MapEntry(std::vector<int> candidates) : cands_(std::move(candidates)) {
    std::sort(cands_.begin(), cands_.end());
    cands_.erase(std::unique(cands_.begin(), cands_.end()), cands_.end());
    if (cands_.empty()) throw Error("map entry must have at least one candidate");
}

bool MapEntry::contains(int v) const {
    return std::binary_search(cands_.begin(), cands_.end(), v);
}

ParamMap::ParamMap(const std::vector<int>& images) {
    entries_.reserve(images.size());
    for (int v : images) entries_.emplace_back(v);
}

ParamMap ParamMap::identity(int n) {
    std::vector<MapEntry> e;
    e.reserve(n);
    for (int i = 1; i <= n; ++i) e.emplace_back(i);
    return ParamMap(std::move(e));
}

bool ParamMap::determined() const {
    for (auto& e : entries_)
        if (!e.determined()) return false;
    return true;
}

std::vector<int> ParamMap::images() const {
    std::vector<int> out;
    out.reserve(entries_.size());
    for (auto& e : entries_) out.push_back(e.value());
    return out;
}

std::string ParamMap::to_string() const {
    std::ostringstream os;
    os << "[ ";
    for (int i = 1; i <= size(); ++i) {
        if (i > 1) os << ", ";
        const MapEntry& e = at(i);
        if (e.determined()) {
            os << e.value();
        } else {
            os << "[ ";
            for (size_t k = 0; k < e.candidates().size(); ++k) {
                if (k) os << ", ";
                os << e.candidates()[k];
            }
            os << " ]";
        }
    }
    os << " ]";
    return os.str();
}

PartialMap::PartialMap(const ParamMap& m) : entries_(m.size()) {
    for (int i = 1; i <= m.size(); ++i) entries_[i - 1] = m.at(i);
}

PartialMap inverse_map(const ParamMap& m, int target_size) {
    std::vector<std::vector<int>> pre(target_size);
    for (int i = 1; i <= m.size(); ++i)
        for (int v : m.at(i).candidates()) {
            if (v < 1 || v > target_size) throw Error("inverse_map: image out of range");
            pre[v - 1].push_back(i);
        }
    PartialMap inv(target_size);
    for (int j = 1; j <= target_size; ++j)
        if (!pre[j - 1].empty()) inv.set(j, MapEntry(pre[j - 1]));
    return inv;
}

PartialMap inverse_map(const PartialMap& m, int target_size) {
    std::vector<std::vector<int>> pre(target_size);
    for (int i = 1; i <= m.size(); ++i) {
        if (!m.bound(i)) continue;
        for (int v : m.at(i).candidates()) {
            if (v < 1 || v > target_size) throw Error("inverse_map: image out of range");
            pre[v - 1].push_back(i);
        }
    }
    PartialMap inv(target_size);
    for (int j = 1; j <= target_size; ++j)
        if (!pre[j - 1].empty()) inv.set(j, MapEntry(pre[j - 1]));
    return inv;
}

PartialMap compose(const PartialMap& outer, const PartialMap& inner) {
    PartialMap out(inner.size());
    for (int i = 1; i <= inner.size(); ++i) {
        if (!inner.bound(i)) continue;
        std::vector<int> acc;
        for (int v : inner.at(i).candidates()) {
            if (v < 1 || v > outer.size()) throw Error("compose: intermediate index out of range");
            if (!outer.bound(v)) continue;
            for (int w : outer.at(v).candidates()) acc.push_back(w);
        }
        if (!acc.empty()) out.set(i, MapEntry(std::move(acc)));
    }
    return out;
}

bool meet(ParamMap& m, const PartialMap& refinement) {
    if (m.size() != refinement.size()) throw Error("meet: length mismatch");
    for (int i = 1; i <= m.size(); ++i) {
        if (!refinement.bound(i)) continue;
        const auto& a = m.at(i).candidates();
        const auto& b = refinement.at(i).candidates();
        std::vector<int> inter;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
        if (inter.empty()) return false;
        m.at(i) = MapEntry(std::move(inter));
    }
    return true;
}

ParamMap parametrized(const std::vector<ParamMap>& maps) {
    if (maps.empty()) throw Error("parametrized: empty list");
    int n = maps[0].size();
    std::vector<MapEntry> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) {
        std::vector<int> acc;
        for (auto& m : maps) {
            if (m.size() != n) throw Error("parametrized: length mismatch");
            for (int v : m.at(i).candidates()) acc.push_back(v);
        }
        out.emplace_back(std::move(acc));
    }
    return ParamMap(std::move(out));
}

Int indeterminateness(const ParamMap& m) {
    Int prod = 1;
    for (int i = 1; i <= m.size(); ++i) prod *= static_cast<long>(m.at(i).count());
    return prod;
}

std::vector<ParamMap> contained_maps(const ParamMap& m, const Int& bound) {
    if (indeterminateness(m) > bound)
        throw Error("contained_maps: indeterminateness exceeds bound " + bound.get_str());
    std::vector<ParamMap> out{ParamMap(std::vector<MapEntry>{})};
    out[0] = m;
    std::vector<int> ambiguous;
    for (int i = 1; i <= m.size(); ++i)
        if (!m.at(i).determined()) ambiguous.push_back(i);
    for (int i : ambiguous) {
        std::vector<ParamMap> next;
        next.reserve(out.size() * m.at(i).count());
        for (auto& base : out)
            for (int v : m.at(i).candidates()) {
                ParamMap copy = base;
                copy.at(i) = MapEntry(v);
                next.push_back(std::move(copy));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<int> projection_map(const ParamMap& m, int target_size) {
    std::vector<int> proj(target_size, 0);
    for (int i = 1; i <= m.size(); ++i) {
        int v = m.at(i).value();
        if (v < 1 || v > target_size) throw Error("projection_map: image out of range");
        if (proj[v - 1] == 0) proj[v - 1] = i;
    }
    for (int j = 1; j <= target_size; ++j)
        if (proj[j - 1] == 0)
            throw Error("projection_map: map is not surjective (class " + std::to_string(j) + ")");
    return proj;
}

}  // namespace chartab
