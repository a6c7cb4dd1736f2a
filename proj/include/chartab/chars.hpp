#pragma once

#include "chartab/table.hpp"

namespace chartab {

/// Induction along a determined fusion map:
/// psi(j) = |C_big(j)| * sum over fus(i) = j of chi(i)/|C_sub(i)|.
std::vector<ClassFunction> induce_by_fusion(const CharacterTable& sub, const CharacterTable& big,
                                            const std::vector<ClassFunction>& chars,
                                            const ParamMap& fus);

enum class InducedCyclicMode { All, Generator };

/// Characters induced from the linear characters of the cyclic subgroups
/// generated by the listed classes; requires the needed power map entries to
/// be determined.  Deduplicated and sorted.
std::vector<ClassFunction> induced_cyclic(const CharacterTable& tbl,
                                          const std::vector<int>& classes,
                                          InducedCyclicMode mode = InducedCyclicMode::All);

std::vector<ClassFunction> restrict_by_fusion(const CharacterTable& big,
                                              const CharacterTable& sub,
                                              const std::vector<ClassFunction>& chars,
                                              const ParamMap& fus);

struct ReduceResult {
    std::vector<ClassFunction> irreducibles;  // newly found, sign-normalized
    std::vector<ClassFunction> remainders;    // nonzero, norm >= 2
};

/// Subtracts the integral projections onto the known irreducibles; norm-1
/// remainders of positive degree are promoted and used for further reduction
/// until a fixpoint.
ReduceResult reduce(const CharacterTable& tbl, const std::vector<ClassFunction>& irreducibles,
                    const std::vector<ClassFunction>& chars);

/// Pointwise products, deduplicated and sorted.
std::vector<ClassFunction> tensor(const std::vector<ClassFunction>& chars1,
                                  const std::vector<ClassFunction>& chars2);

/// Symmetrizations with respect to all irreducible S_n characters (2 <= n <= 7):
/// g -> (1/n!) sum over rho in S_n of psi(rho) prod over cycles c of chi(g^|c|).
std::vector<ClassFunction> symmetrizations(const CharacterTable& tbl,
                                           const std::vector<ClassFunction>& chars, int n);

/// The class function g -> (chi(g)^p - chi(g^p))/p along the given power map.
ClassFunction minus_character(const CharacterTable& tbl, const ClassFunction& chi,
                              const ParamMap& pow_p, long p);

/// Character values of S_n on cycle types, via the Murnaghan-Nakayama rule.
/// Row r = partition r of n (canonical order), column c = cycle type c.
struct SymmetricGroupData {
    std::vector<std::vector<int>> partitions;  // descending parts
    std::vector<Int> class_sizes;              // per cycle type
    std::vector<std::vector<long>> character_values;
};
const SymmetricGroupData& symmetric_group_data(int n);

}  // namespace chartab
