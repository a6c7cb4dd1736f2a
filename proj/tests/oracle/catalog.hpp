#pragma once

// Named small groups, subgroup pairs and central-extension chains used as
// ground truth across the test suites.

#include "oracle/dixon.hpp"
#include "oracle/perm_group.hpp"

namespace oracle {

/// A group together with its classes and exact character table.
struct Fixture {
    Group group;
    ClassData cd;
    chartab::CharacterTable table;
};

Fixture make_fixture(const Group& g, const std::string& name);

Group cyclic(int n);
Group symmetric(int n);
Group alternating(int n);
Group dihedral8();   // order 8, on 4 points
Group quaternion8(); // order 8, on 8 points (nonzero vectors of F3^2)
Group sl23();
Group gl23();
Group sl25();

/// Matrix-to-permutation helper over F_q acting on the nonzero column vectors
/// of F_q^2, ordered lexicographically.
Perm matrix_perm(long q, long a, long b, long c, long d);

/// A subgroup pair with the true class fusion (1-based) between the tables.
struct SubgroupPair {
    Fixture sub;
    Fixture big;
    std::vector<int> fusion;  // 1-based class fusion sub -> big
};

SubgroupPair subgroup_pair(const Group& hgens, const Group& ambient, const std::string& hname,
                           const std::string& gname);

/// A central extension chain 2.G -> G with the factor fusion, plus matching
/// data for a subgroup U of G and its preimage 2.U.
struct CoverChain {
    Fixture cover;           // 2.G
    Fixture base;            // G = 2.G / <z>
    std::vector<int> factor_fusion;  // 1-based classes of 2.G -> classes of G
    int center_class = 0;            // class of z in 2.G (1-based)
};

/// Builds the chain for a cover group with central subgroup {1, z}.
CoverChain cover_chain(const Group& cover, const Perm& z, const std::string& cover_name,
                       const std::string& base_name);

}  // namespace oracle
