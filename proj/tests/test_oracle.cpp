#include <doctest.h>

#include "chartab/table.hpp"
#include "oracle/catalog.hpp"

using namespace oracle;

namespace {
std::vector<long> sorted_degrees(const chartab::CharacterTable& t) {
    std::vector<long> out;
    for (auto& chi : t.irreducibles())
        out.push_back(chartab::checked_long(chartab::to_integer(chi.degree().rational_value())));
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

TEST_CASE("group construction sizes") {
    CHECK(cyclic(7).size() == 7);
    CHECK(symmetric(4).size() == 24);
    CHECK(symmetric(5).size() == 120);
    CHECK(alternating(4).size() == 12);
    CHECK(alternating(5).size() == 60);
    CHECK(dihedral8().size() == 8);
    CHECK(quaternion8().size() == 8);
    CHECK(sl23().size() == 24);
    CHECK(gl23().size() == 48);
    CHECK(sl25().size() == 120);
}

TEST_CASE("dixon tables have the classical degree patterns") {
    CHECK(sorted_degrees(make_fixture(symmetric(3), "S3").table) == std::vector<long>{1, 1, 2});
    CHECK(sorted_degrees(make_fixture(symmetric(4), "S4").table) ==
          std::vector<long>{1, 1, 2, 3, 3});
    CHECK(sorted_degrees(make_fixture(alternating(5), "A5").table) ==
          std::vector<long>{1, 3, 3, 4, 5});
    CHECK(sorted_degrees(make_fixture(quaternion8(), "Q8").table) ==
          std::vector<long>{1, 1, 1, 1, 2});
    CHECK(sorted_degrees(make_fixture(dihedral8(), "D8").table) ==
          std::vector<long>{1, 1, 1, 1, 2});
    CHECK(sorted_degrees(make_fixture(sl23(), "2.A4").table) ==
          std::vector<long>{1, 1, 1, 2, 2, 2, 3});
    CHECK(sorted_degrees(make_fixture(gl23(), "2.S4").table) ==
          std::vector<long>{1, 1, 2, 2, 2, 3, 3, 4});
    CHECK(sorted_degrees(make_fixture(sl25(), "2.A5").table) ==
          std::vector<long>{1, 2, 2, 3, 3, 4, 4, 5, 6});
}

TEST_CASE("oracle tables satisfy orthogonality exactly") {
    for (const Group& g : {symmetric(5), sl25(), gl23()}) {
        Fixture f = make_fixture(g, "tmp");
        auto rep = chartab::validate_orthogonality(f.table);
        CHECK(rep.ok);
        if (!rep.ok)
            for (auto& msg : rep.failures) MESSAGE(msg);
    }
}

TEST_CASE("power maps are genuine power maps") {
    Fixture f = make_fixture(symmetric(4), "S4");
    for (auto& [p, m] : f.table.power_maps())
        for (int i = 1; i <= f.table.num_classes(); ++i) {
            long o = f.table.order(i);
            CHECK(f.table.order(m.at(i).value()) == o / std::gcd(o, p));
        }
}

TEST_CASE("subgroup fusion is computed from literal containment") {
    Group s4 = symmetric(4);
    Group a4 = subgroup(s4, {Perm{1, 2, 0, 3}, Perm{1, 0, 3, 2}});
    CHECK(a4.size() == 12);
    SubgroupPair pair = subgroup_pair(a4, s4, "A4", "S4");
    CHECK(pair.fusion[0] == 1);
    for (int c = 1; c <= pair.sub.table.num_classes(); ++c)
        CHECK(pair.sub.table.order(c) == pair.big.table.order(pair.fusion[c - 1]));
}

TEST_CASE("cover chain SL(2,5) -> A5") {
    Group cover = sl25();
    Perm z = matrix_perm(5, 4, 0, 0, 4);  // -I
    CoverChain chain = cover_chain(cover, z, "2.A5", "A5");
    CHECK(chain.cover.table.num_classes() == 9);
    CHECK(chain.base.table.num_classes() == 5);
    CHECK(chain.base.table.group_order() == chartab::Int(60));
    CHECK(chain.cover.table.order(chain.center_class) == 2);
    std::vector<chartab::Int> covered(5, 0);
    for (int c = 1; c <= 9; ++c)
        covered[chain.factor_fusion[c - 1] - 1] += chain.cover.table.class_size(c);
    for (int j = 1; j <= 5; ++j)
        CHECK(covered[j - 1] == chartab::Int(2) * chain.base.table.class_size(j));
}
