#pragma once

#include <optional>

#include "chartab/table.hpp"

namespace chartab {

using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rat>>;

/// Matrix of pairwise scalar products; entries must be rational integers.
IntMatrix gram_matrix(const CharacterTable& tbl, const std::vector<ClassFunction>& chars);

struct LLLResult {
    std::vector<ClassFunction> irreducibles;
    std::vector<ClassFunction> remainders;
    std::vector<Rat> norms;                  // norms of the remainders
    std::vector<std::vector<Int>> irr_coords;  // rows over the input characters
    std::vector<std::vector<Int>> rem_coords;
};

/// Exact LLL reduction of the lattice generated by the input virtual
/// characters (dependent generators allowed).  Norm-1 vectors are
/// sign-normalized and returned as irreducibles; the rest are reduced against
/// them.  Outputs are integer combinations of the inputs spanning the same
/// lattice; the combination rows are returned alongside.
LLLResult lll_reduce(const CharacterTable& tbl, const std::vector<ClassFunction>& chars,
                     const Rat& delta = Rat(3, 4), bool sort = false);

struct EmbeddingResult {
    std::vector<std::vector<Int>> vectors;  // candidate rows, sign-normalized
    std::vector<Rat> norms;                 // dual norms x G^-1 x^T
    std::vector<std::vector<int>> solutions;  // 1-based index multisets into vectors
};

/// All expressions G = sum of x^T x over multisets of candidate integer rows
/// with at most maxdim rows; exhaustive and deterministic.
EmbeddingResult orthogonal_embeddings(const IntMatrix& gram, int maxdim);

struct DecreasedResult {
    std::vector<ClassFunction> irreducibles;
    std::vector<ClassFunction> remainders;  // determined combinations of unresolved ones
};

/// Solves chars[i] = sum_t rows[t][i] * z_t for the unknown class functions
/// z_t.  Succeeds when every uniquely determined z_t has cyclotomic integer
/// values and positive integral degree; undetermined coordinates contribute
/// their determined integral combinations as remainders.
std::optional<DecreasedResult> decreased(const CharacterTable& tbl,
                                         const std::vector<ClassFunction>& chars,
                                         const std::vector<std::vector<Int>>& rows);

struct DnResult {
    std::vector<ClassFunction> irreducibles;
    std::vector<ClassFunction> remainders;
};

/// Searches the norm-2 input set for sublattices of type D_n (n >= 4),
/// reconstructs the enclosing standard lattice and promotes those of its
/// norm-1 vectors that are proper characters; iterates until stable.
DnResult dn_lattice_iterative(const CharacterTable& tbl,
                              const std::vector<ClassFunction>& norm2_chars);

// exact linear algebra helpers (exposed for tests)
RatMatrix rat_inverse(const RatMatrix& m);
/// Unimodular U with U*A = H in row Hermite normal form.
void hnf_rows(const IntMatrix& a, IntMatrix& h, IntMatrix& u);
/// Basis of the left integer kernel {x : x*A = 0}.
IntMatrix integer_left_kernel(const IntMatrix& a);

}  // namespace chartab
