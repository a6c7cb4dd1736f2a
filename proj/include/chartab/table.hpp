#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chartab/cyclo.hpp"
#include "chartab/param_map.hpp"

namespace chartab {

/// A class function: one cyclotomic value per conjugacy class (1-based access).
class ClassFunction {
public:
    ClassFunction() = default;
    explicit ClassFunction(int n) : v_(n) {}
    explicit ClassFunction(std::vector<Cyclotomic> v) : v_(std::move(v)) {}

    int size() const { return static_cast<int>(v_.size()); }
    const Cyclotomic& at(int i) const { return v_[i - 1]; }
    Cyclotomic& at(int i) { return v_[i - 1]; }
    const Cyclotomic& degree() const { return v_[0]; }
    const std::vector<Cyclotomic>& values() const { return v_; }

    bool is_zero() const;

    ClassFunction operator+(const ClassFunction& o) const;
    ClassFunction operator-(const ClassFunction& o) const;
    ClassFunction operator-() const;
    /// Pointwise product.
    ClassFunction operator*(const ClassFunction& o) const;
    ClassFunction scaled(const Cyclotomic& c) const;

    bool operator==(const ClassFunction& o) const { return v_ == o.v_; }
    bool operator!=(const ClassFunction& o) const { return v_ != o.v_; }
    bool operator<(const ClassFunction& o) const { return v_ < o.v_; }

private:
    std::vector<Cyclotomic> v_;
};

/// An ordinary character table, or a table head when the irreducibles are
/// not (yet) known.  Class indices are 1-based; class 1 is the identity class.
/// Element orders are candidate lists to support heads of central extensions
/// where an order may still be one of {n, 2n}.
class CharacterTable {
public:
    CharacterTable() = default;

    /// Builds a table head from class data.  Orders are usually singletons.
    /// The group order defaults to the centralizer order of class 1; heads of
    /// hypothetical extensions may override it.
    static CharacterTable build(std::string identifier, std::vector<std::vector<long>> orders,
                                std::vector<Int> centralizers,
                                std::optional<Int> group_order = std::nullopt);
    static CharacterTable build(std::string identifier, const std::vector<long>& orders,
                                std::vector<Int> centralizers,
                                std::optional<Int> group_order = std::nullopt);

    const std::string& identifier() const { return identifier_; }
    int num_classes() const { return static_cast<int>(centralizers_.size()); }
    const Int& group_order() const { return group_order_; }

    const Int& centralizer(int i) const { return centralizers_[i - 1]; }
    Int class_size(int i) const { return group_order() / centralizer(i); }
    const std::vector<long>& order_candidates(int i) const { return orders_[i - 1]; }
    bool order_determined(int i) const { return orders_[i - 1].size() == 1; }
    long order(int i) const;
    long max_order() const;

    bool has_power_map(long p) const { return power_maps_.count(p) != 0; }
    const ParamMap& power_map(long p) const;
    void set_power_map(long p, ParamMap m);
    const std::map<long, ParamMap>& power_maps() const { return power_maps_; }
    std::map<long, ParamMap>& power_maps() { return power_maps_; }

    /// The class of the m-th power of class i, via the stored prime power maps;
    /// throws when a needed entry is ambiguous or missing.
    int power_class(int i, long m) const;
    /// Candidate classes of the m-th power of class i (follows candidate lists).
    std::vector<int> power_class_candidates(int i, long m) const;

    bool has_irreducibles() const { return !irreducibles_.empty(); }
    const std::vector<ClassFunction>& irreducibles() const;
    void set_irreducibles(std::vector<ClassFunction> irr);

    void store_fusion(const std::string& target, ParamMap map);
    const ParamMap* fusion_to(const std::string& target) const;
    const std::vector<std::pair<std::string, ParamMap>>& fusions() const { return fusions_; }

    ClassFunction trivial_character() const;
    ClassFunction regular_character() const;

private:
    std::string identifier_;
    Int group_order_;
    std::vector<std::vector<long>> orders_;
    std::vector<Int> centralizers_;
    std::map<long, ParamMap> power_maps_;
    std::vector<ClassFunction> irreducibles_;
    std::vector<std::pair<std::string, ParamMap>> fusions_;
};

/// Exact scalar product sum_i chi(i) conj(psi(i)) / |C(i)|.
Cyclotomic scalar_product(const CharacterTable& tbl, const ClassFunction& chi,
                          const ClassFunction& psi);
/// Scalar product known to be rational (virtual characters); throws otherwise.
Rat rational_scalar_product(const CharacterTable& tbl, const ClassFunction& chi,
                            const ClassFunction& psi);
std::vector<std::vector<Cyclotomic>> mat_scalar_products(const CharacterTable& tbl,
                                                         const std::vector<ClassFunction>& a,
                                                         const std::vector<ClassFunction>& b);

struct OrthogonalityReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Verifies both orthogonality relations and the degree sum.
OrthogonalityReport validate_orthogonality(const CharacterTable& tbl);

struct DirectProductResult {
    CharacterTable table;
    ParamMap projection1, projection2;  // product class -> factor class
    ParamMap embedding1, embedding2;    // factor class -> product class
};

/// Direct product; classes are pairs (i,j) at position (i-1)*n2 + j.
/// The projections are also stored as fusions on the product table.
DirectProductResult direct_product(const CharacterTable& t1, const CharacterTable& t2);

struct FactorResult {
    CharacterTable table;
    ParamMap fusion;  // class of tbl -> class of the factor table
};

/// Factor table by the normal subgroup given as a class-index union.
/// The factor fusion is also stored on tbl.
FactorResult factor_table(CharacterTable& tbl, const std::vector<int>& kernel_classes);

/// All normal subgroups as sorted class-position sets, ordered by group order.
std::vector<std::vector<int>> normal_subgroup_classes(const CharacterTable& tbl);

std::vector<int> centre_classes(const CharacterTable& tbl);
std::vector<int> kernel_classes(const CharacterTable& tbl, const ClassFunction& chi);
std::vector<int> derived_subgroup_classes(const CharacterTable& tbl);

/// A permutation of 1..n as the vector of images (1-based).
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation inverse_permutation(const Permutation& p);
/// (p * q)(i) = p(q(i)).
Permutation compose_permutations(const Permutation& p, const Permutation& q);
/// Cycle notation like (2,3)(5,7,8); "()" for the identity.
std::string permutation_to_cycles(const Permutation& p);

/// The group of class permutations fixing orders, centralizer orders, every
/// power map, and the set of irreducible rows.  Returns a reduced generating
/// set (deterministic) together with the group order and all elements.
struct TableAutomorphisms {
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;  // sorted, including the identity
    Int order;
};
TableAutomorphisms table_automorphisms(const CharacterTable& tbl);

struct TransformingPermutations {
    Permutation rows;     // row r of t1 becomes row rows(r) of t2
    Permutation columns;  // class i of t1 corresponds to class columns(i) of t2
};

/// Permutations carrying t1 onto t2 (orders, centralizers, power maps and
/// irreducible matrix); nullopt when the tables are not equivalent.
std::optional<TransformingPermutations> transforming_permutations(const CharacterTable& t1,
                                                                  const CharacterTable& t2);

/// Orbits of a permutation group on 1..n, as sorted sorted-orbit lists.
std::vector<std::vector<int>> orbits(const std::vector<Permutation>& generators, int n);

/// Closure of a generating set; elements sorted. Throws if larger than limit.
std::vector<Permutation> permutation_group_closure(const std::vector<Permutation>& generators,
                                                   int n, size_t limit = 4000000);

}  // namespace chartab
