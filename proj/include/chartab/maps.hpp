#pragma once

#include <functional>
#include <optional>

#include "chartab/table.hpp"

namespace chartab {

/// Initial p-th power map approximation from orders and centralizer orders:
/// candidates j for class i satisfy order(j) = order(i)/gcd(order(i), p) and
/// |C(i)| divides |C(j)|.  Throws when some class has no candidate.
ParamMap init_power_map(const CharacterTable& tbl, long p);

/// Initial class fusion approximation: order equality and centralizer
/// divisibility; nullopt when some class has no candidate.
std::optional<ParamMap> init_fusion(const CharacterTable& sub, const CharacterTable& big);

struct TransferImprovements {
    std::vector<int> inside1, between, inside2;
};

/// Enforces between(pow1(i)) = pow2(between(i)) by refining all three maps to
/// a local fixpoint; nullopt on contradiction.  The improvement record lists
/// positions changed in each map.
std::optional<TransferImprovements> transfer_diagram(ParamMap& pow1, ParamMap& between,
                                                     ParamMap& pow2);

struct CommutativeImprovements {
    std::vector<int> imp1, imp2, imp3, imp4;
};

/// Enforces m2(m1(i)) = m4(m3(i)); refines all four maps.
std::optional<CommutativeImprovements> commutative_diagram(ParamMap& m1, ParamMap& m2,
                                                           ParamMap& m3, ParamMap& m4);

/// Repeated transfer through every prime present in both power map families,
/// until a fixpoint; false on contradiction.
bool test_consistency(std::map<long, ParamMap>& pow_sub, ParamMap& fus,
                      std::map<long, ParamMap>& pow_big);

/// Removes power map candidates violating the p-th power congruences of the
/// given characters; false when an entry empties.
bool congruences(const CharacterTable& tbl, const std::vector<ClassFunction>& chars,
                 ParamMap& pow, long p);

/// For classes of order <= p, enforces the (p mod order)-th power computed
/// from the stored prime power maps; false on contradiction.
bool consider_smaller_powermaps(const CharacterTable& tbl, ParamMap& pow, long p);

struct FusionParameters {
    int maxlen = 10;
    Int minamb = 1;
    Int maxamb = 1000000;
    bool quick = false;
};

/// Refines and then branches the approximation so that restrictions of the
/// big-group characters along any returned map decompose with nonnegative
/// integer multiplicities into the subgroup characters (characters checked
/// while parametrized only within the ambiguity budget).  Returned maps are
/// fully determined; their union covers all valid determined maps.
std::vector<ParamMap> fusions_allowed_by_restrictions(
    const CharacterTable& sub, const CharacterTable& big,
    const std::vector<ClassFunction>& sub_chars, const std::vector<ClassFunction>& big_chars,
    const ParamMap& approx, const FusionParameters& params = FusionParameters());

/// Refines the power map approximation so that minus-characters of chars have
/// integral scalar products with subchars and chars; does not branch.
/// Returns the refined map, or nothing when no completion can work.
std::vector<ParamMap> power_maps_allowed_by_symmetrizations(
    const CharacterTable& tbl, const std::vector<ClassFunction>& subchars,
    const std::vector<ClassFunction>& chars, const ParamMap& pow, long p,
    const FusionParameters& params = FusionParameters());

struct FusionOptions {
    std::optional<PartialMap> prescribed;
    Int search_bound = 1000000;
    FusionParameters parameters;
};

/// All determined class fusions passing the order/centralizer conditions,
/// power map consistency, and character restriction; lexicographically sorted.
std::vector<ParamMap> possible_class_fusions(const CharacterTable& sub, const CharacterTable& big,
                                             const FusionOptions& options = FusionOptions());

struct PowerMapOptions {
    std::optional<ParamMap> prescribed;
    Int search_bound = 1000000;
    FusionParameters parameters;
};

/// All determined p-th power maps passing the congruences and integral
/// symmetrization conditions.
std::vector<ParamMap> possible_power_maps(const CharacterTable& tbl, long p,
                                          const PowerMapOptions& options = PowerMapOptions());

/// Orbit representatives of determined maps under f -> sigma_big o f o
/// sigma_sub; the smallest lexicographic member represents each orbit.
std::vector<ParamMap> representatives_fusions(const std::vector<Permutation>& sub_autos,
                                              const std::vector<ParamMap>& maps,
                                              const std::vector<Permutation>& big_autos);

}  // namespace chartab
