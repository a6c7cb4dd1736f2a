#pragma once

#include <optional>
#include <vector>

#include "chartab/numeric.hpp"

namespace chartab {

/// One entry of a parametrized map: either a determined class index or a
/// sorted duplicate-free list of at least two candidate indices.
/// Class indices are 1-based throughout, following the tables they index.
class MapEntry {
public:
    MapEntry() : cands_{0} {}
    MapEntry(int value) : cands_{value} {}
    explicit MapEntry(std::vector<int> candidates);

    bool determined() const { return cands_.size() == 1; }
    int value() const {
        if (!determined()) throw Error("map entry is ambiguous");
        return cands_[0];
    }
    const std::vector<int>& candidates() const { return cands_; }
    size_t count() const { return cands_.size(); }
    bool contains(int v) const;

    bool operator==(const MapEntry& o) const { return cands_ == o.cands_; }
    bool operator<(const MapEntry& o) const { return cands_ < o.cands_; }

private:
    std::vector<int> cands_;
};

/// A total parametrized map between class index sets.
/// Positions are 1-based; at(i) is the entry for class i.
class ParamMap {
public:
    ParamMap() = default;
    explicit ParamMap(int size) : entries_(size) {}
    explicit ParamMap(std::vector<MapEntry> entries) : entries_(std::move(entries)) {}
    /// A determined map from 1-based images.
    explicit ParamMap(const std::vector<int>& images);

    static ParamMap identity(int n);

    int size() const { return static_cast<int>(entries_.size()); }
    const MapEntry& at(int i) const { return entries_[i - 1]; }
    MapEntry& at(int i) { return entries_[i - 1]; }

    bool determined() const;
    /// Images of a determined map, 1-based.
    std::vector<int> images() const;

    bool operator==(const ParamMap& o) const { return entries_ == o.entries_; }
    bool operator!=(const ParamMap& o) const { return !(*this == o); }
    bool operator<(const ParamMap& o) const { return entries_ < o.entries_; }

    std::string to_string() const;

private:
    std::vector<MapEntry> entries_;
};

/// A map that may be undefined at some positions (the shape of inverse maps
/// and of compositions through them).
class PartialMap {
public:
    PartialMap() = default;
    explicit PartialMap(int size) : entries_(size) {}
    PartialMap(const ParamMap& m);

    int size() const { return static_cast<int>(entries_.size()); }
    bool bound(int i) const { return entries_[i - 1].has_value(); }
    const MapEntry& at(int i) const {
        if (!bound(i)) throw Error("partial map unbound at " + std::to_string(i));
        return *entries_[i - 1];
    }
    void set(int i, MapEntry e) { entries_[i - 1] = std::move(e); }
    void unset(int i) { entries_[i - 1].reset(); }

private:
    std::vector<std::optional<MapEntry>> entries_;
};

/// Preimage structure: position j holds the preimages of j (candidate
/// occurrences included), collapsed to an integer when unique; positions never
/// hit stay unbound.
PartialMap inverse_map(const ParamMap& m, int target_size);
PartialMap inverse_map(const PartialMap& m, int target_size);

/// Composition (outer o inner): entry i is the union of outer over the
/// candidates of inner at i; skips unbound outer entries and leaves the result
/// unbound when nothing contributes.
PartialMap compose(const PartialMap& outer, const PartialMap& inner);

/// Entrywise intersection of m with a refinement; false iff some entry would
/// become empty (m is refined in place up to that point).
bool meet(ParamMap& m, const PartialMap& refinement);

/// Entrywise union of a nonempty list of equal-length maps.
ParamMap parametrized(const std::vector<ParamMap>& maps);

/// Product of the candidate list sizes.
Int indeterminateness(const ParamMap& m);

/// All determined completions, in lexicographic order; throws if the
/// indeterminateness exceeds the bound.
std::vector<ParamMap> contained_maps(const ParamMap& m, const Int& bound = Int(1000000));

/// For a surjective determined map, picks for each image class its smallest
/// preimage; result is indexed by image classes.
std::vector<int> projection_map(const ParamMap& m, int target_size);

}  // namespace chartab
