#pragma once

#include <optional>

#include "chartab/table.hpp"

namespace chartab {

/// Accumulated knowledge about which classes of G split in a central
/// extension 2.G, with the decision log ("#I  class ... splits (...)" lines).
struct SplitState {
    std::vector<int> mustsplit;
    std::vector<int> mustnotsplit;
    std::vector<std::string> log;

    bool is_split(int c) const;
    bool is_nonsplit(int c) const;
    /// Records a decision; logs when new; throws on a contradiction.
    void add_split(int c, const std::string& reason);
    void add_nonsplit(int c, const std::string& reason);
};

std::string ordinal(long n);

/// Classes of odd element order (their preimages have orders n and 2n).
std::vector<int> odd_order_classes_split(const CharacterTable& tbl);

/// Self-centralizing classes split.
void self_centralizing_classes_split(const CharacterTable& tbl, SplitState& state);

/// Fixpoint closure: odd-power roots of splitting classes split.
void odd_roots_of_splitting_classes_split(const CharacterTable& tbl, SplitState& state);

/// Classes of G whose subgroup preimages are single classes do not split.
void not_splitting_classes_of_subgroup_do_not_split(const ParamMap& sub_factor_fusion,
                                                    const ParamMap& sub_to_g, SplitState& state);

/// Splitting subgroup classes with odd centralizer index force splitting,
/// followed by the odd-root closure.
void splitting_classes_with_odd_centralizer_index_split(const CharacterTable& sub,
                                                        const CharacterTable& big,
                                                        const ParamMap& sub_to_g,
                                                        const ParamMap& sub_factor_fusion,
                                                        SplitState& state);

/// Possible contributions of each class of G to the norm of a character
/// induced from a projective character of the subgroup preimage.
struct ContributionRecord {
    Cyclotomic safepart;
    std::map<int, std::vector<Cyclotomic>> contrib;  // class -> possible values
    Int size = 1;
    std::vector<int> bound;
    std::map<int, bool> zeroonlyifnonsplit;
};

ContributionRecord contribution_data(const CharacterTable& sub, const CharacterTable& big,
                                     const PartialMap& inv, const ClassFunction& chiprime,
                                     const std::vector<int>& mustsplit);

/// All value tuples over the bound positions whose total with safepart is a
/// rational integer; enumerated by a single-position-per-step counter walk.
std::vector<std::vector<Cyclotomic>> integral_contributions(const ContributionRecord& record);

/// Turns the integral combinations into splits/non-splits where forced.
void evaluate_contributions(const ContributionRecord& record,
                            const std::vector<std::vector<Cyclotomic>>& tuples,
                            SplitState& state);

/// The full fixpoint loop over the given projective characters.
void compute_contributions(const CharacterTable& sub, const CharacterTable& big,
                           const ParamMap& sub_to_g, const std::vector<ClassFunction>& chars,
                           const Int& bound, SplitState& state);

/// The index-two refinement: classes inside G are excluded from the
/// combinatorics, their share entering through the norm of the restriction
/// to 2.U induced to 2.G.
void compute_contributions2(const CharacterTable& s2, const CharacterTable& cover_s,
                            const CharacterTable& t2, const CharacterTable& cover_t,
                            const ParamMap& s2fust2, const ParamMap& sfus_s2_embedding,
                            const ParamMap& cover_fusion, const ParamMap& tfust2,
                            const std::vector<ClassFunction>& chars, const Int& bound,
                            SplitState& state, const std::vector<int>& projection);

/// The table head of the central extension: split classes occupy adjacent
/// positions with doubled centralizer order; element orders follow the
/// lifting data.  The factor fusion to t is stored on the head.
CharacterTable table_head(const CharacterTable& t, const std::vector<int>& tosplit,
                          const std::vector<int>& invmustlift,
                          const std::vector<int>& invmaylift);

/// Approximation of the class fusion between two extension heads from the
/// commutative square, fixing first-to-first choices for pairs over classes
/// not yet in `defined`.
std::optional<ParamMap> initial_fusion(const CharacterTable& cover_sub,
                                       const CharacterTable& cover_big,
                                       const ParamMap& sub_factor, const ParamMap& big_factor,
                                       const ParamMap& sub_to_g, std::vector<int> defined);

/// The two-diagram version for 2.G.2 heads (right face and bottom face of
/// the cube); `defined` holds classes of the big cover table here.
std::optional<ParamMap> initial_fusion2(const CharacterTable& cover_sub2,
                                        const CharacterTable& cover_big2,
                                        const ParamMap& sub2_factor, const ParamMap& big2_factor,
                                        const ParamMap& s2fust2, const ParamMap& sub_embedding,
                                        const ParamMap& cover_big_embedding,
                                        const ParamMap& cover_fusion, std::vector<int> defined);

/// Improves the fusion approximation using integrality of the norms of the
/// class functions induced from chi over all preimage-pair swaps; false when
/// no choice gives an integral norm.
bool use_induced_class_function(const CharacterTable& cover_sub, const CharacterTable& cover_big,
                                const ClassFunction& chi, const ParamMap& sub_factor,
                                ParamMap& fus);

/// initial_fusion followed by use_induced_class_function over the test
/// characters, ordered by decreasing count of zeros on ambiguous positions.
std::optional<ParamMap> run_one_test(const CharacterTable& cover_sub,
                                     const CharacterTable& cover_big,
                                     const ParamMap& sub_factor, const ParamMap& big_factor,
                                     const ParamMap& sub_to_g,
                                     const std::vector<ClassFunction>& testchars,
                                     const std::vector<int>& defined);

std::optional<ParamMap> run_one_test2(const CharacterTable& cover_sub2,
                                      const CharacterTable& cover_big2,
                                      const ParamMap& sub2_factor, const ParamMap& big2_factor,
                                      const ParamMap& s2fust2, const ParamMap& sub_embedding,
                                      const ParamMap& cover_big_embedding,
                                      const ParamMap& cover_fusion,
                                      const std::vector<ClassFunction>& testchars,
                                      const std::vector<int>& defined);

/// A bundle of a factor fusion, characters on the cover head and optionally a
/// subgroup fusion, all of which must be adjusted when more classes split.
struct InducedBundle {
    ParamMap factor_fusion;               // cover head -> t
    std::vector<ClassFunction> characters;
    std::optional<std::vector<int>> map;  // subgroup fusion images into the head
};

/// Duplicates the head positions over the newly split classes of t and shifts
/// the subgroup fusion past the insertion points.
InducedBundle split_fusion_and_characters(const InducedBundle& bundle, const CharacterTable& t,
                                          const std::vector<int>& tosplit);

/// For a Galois pair of classes with value field generated by x: the p-th
/// power map fixes the pair when x is fixed by the Galois action, else swaps.
void set_galois_info(std::map<long, ParamMap>& powermaps, std::pair<int, int> classes,
                     const CharacterTable& tbl, const std::vector<long>& primes,
                     const Cyclotomic& x);

}  // namespace chartab
