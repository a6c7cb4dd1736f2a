#include <doctest.h>

#include "chartab/table.hpp"
#include "oracle/catalog.hpp"

using namespace chartab;
using oracle::Fixture;
using oracle::make_fixture;

namespace {
const Fixture& s4_fixture() {
    static Fixture f = make_fixture(oracle::symmetric(4), "S4");
    return f;
}
const Fixture& c2c2_fixture() {
    static Fixture f = [] {
        oracle::Perm a{1, 0, 2, 3}, b{0, 1, 3, 2};
        return make_fixture(oracle::Group::closure(4, {a, b}), "C2xC2");
    }();
    return f;
}
}  // namespace

TEST_CASE("build validates class data") {
    CHECK_NOTHROW(CharacterTable::build("C1", std::vector<long>{1}, {Int(1)}));
    // non-integral class size
    CHECK_THROWS_AS(CharacterTable::build("bad", std::vector<long>{1, 2}, {Int(6), Int(4)}),
                    Error);
    // order zero
    CHECK_THROWS_AS(CharacterTable::build("bad", std::vector<long>{1, 0}, {Int(2), Int(2)}),
                    Error);
    // sizes must sum to the group order
    CHECK_THROWS_AS(CharacterTable::build("bad", std::vector<long>{1, 2}, {Int(4), Int(4)}),
                    Error);
}

TEST_CASE("scalar products") {
    const auto& f = s4_fixture();
    const auto& t = f.table;
    ClassFunction one = t.trivial_character();
    CHECK(scalar_product(t, one, one) == Cyclotomic(1));
    for (auto& chi : t.irreducibles()) CHECK(scalar_product(t, chi, chi) == Cyclotomic(1));
    CHECK(scalar_product(t, t.regular_character(), one) == Cyclotomic(1));
}

TEST_CASE("orthogonality validation catches duplicated rows") {
    auto t = s4_fixture().table;
    CHECK(validate_orthogonality(t).ok);
    auto irr = t.irreducibles();
    irr[1] = irr[0];
    t.set_irreducibles(irr);
    CHECK(!validate_orthogonality(t).ok);
}

TEST_CASE("direct product C2 x C2") {
    auto c2 = make_fixture(oracle::cyclic(2), "C2").table;
    auto prod = direct_product(c2, c2);
    CHECK(prod.table.num_classes() == 4);
    CHECK(prod.table.group_order() == Int(4));
    for (int i = 1; i <= 4; ++i) CHECK(prod.table.class_size(i) == Int(1));
    CHECK(validate_orthogonality(prod.table).ok);
    // order of class (i,j) is the lcm of the factor orders
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            CHECK(prod.table.order((i - 1) * 2 + j) ==
                  std::lcm(c2.order(i), c2.order(j)));
    // the product table is equivalent to the directly computed C2xC2 table
    CHECK(transforming_permutations(prod.table, c2c2_fixture().table).has_value());
}

TEST_CASE("direct product doubles class count and order") {
    auto c2 = make_fixture(oracle::cyclic(2), "C2").table;
    auto s4 = s4_fixture().table;
    auto prod = direct_product(c2, s4);
    CHECK(prod.table.num_classes() == 2 * s4.num_classes());
    CHECK(prod.table.group_order() == Int(2) * s4.group_order());
    CHECK(validate_orthogonality(prod.table).ok);
    // projections stored as fusions
    CHECK(prod.table.fusion_to("S4") != nullptr);
    CHECK(prod.table.fusion_to("C2") != nullptr);
}

TEST_CASE("normal subgroup classes") {
    // C2xC2 has five normal subgroups
    CHECK(normal_subgroup_classes(c2c2_fixture().table).size() == 5);
    // A5 is simple
    auto a5 = make_fixture(oracle::alternating(5), "A5").table;
    auto nsg = normal_subgroup_classes(a5);
    CHECK(nsg.size() == 2);
    CHECK(nsg[0] == std::vector<int>{1});
    // S4 has 1, V4, A4, S4
    CHECK(normal_subgroup_classes(s4_fixture().table).size() == 4);
}

TEST_CASE("factor table by the Klein four group in S4") {
    auto t = s4_fixture().table;
    auto nsg = normal_subgroup_classes(t);
    // the V4 subgroup consists of the identity and the double transpositions
    std::vector<int> v4;
    for (auto& s : nsg) {
        Int size = 0;
        for (int i : s) size += t.class_size(i);
        if (size == 4) v4 = s;
    }
    REQUIRE(!v4.empty());
    auto res = factor_table(t, v4);
    CHECK(res.table.num_classes() == 3);
    CHECK(res.table.group_order() == Int(6));
    CHECK(validate_orthogonality(res.table).ok);
    // equivalent to S3
    auto s3 = make_fixture(oracle::symmetric(3), "S3").table;
    CHECK(transforming_permutations(res.table, s3).has_value());
    // the factor fusion is stored on the source
    CHECK(t.fusion_to(res.table.identifier()) != nullptr);
    // quotient by the trivial subgroup is an isomorphic copy
    auto triv = factor_table(t, {1});
    CHECK(transforming_permutations(triv.table, t).has_value());
}

TEST_CASE("structure queries") {
    const auto& q8 = make_fixture(oracle::quaternion8(), "Q8").table;
    CHECK(centre_classes(q8) == std::vector<int>{1, 2});
    const auto& s4 = s4_fixture().table;
    CHECK(centre_classes(s4) == std::vector<int>{1});
    // kernel of the trivial character is everything
    auto one = s4.trivial_character();
    CHECK(kernel_classes(s4, one).size() == 5);
    // derived subgroup of S4 is A4 (classes of even permutations)
    auto der = derived_subgroup_classes(s4);
    Int dsize = 0;
    for (int i : der) dsize += s4.class_size(i);
    CHECK(dsize == Int(12));
}

TEST_CASE("table automorphisms") {
    // C2: trivial automorphism group
    auto c2 = make_fixture(oracle::cyclic(2), "C2").table;
    CHECK(table_automorphisms(c2).order == Int(1));
    // C5: four Galois conjugate nontrivial classes permute in a C4
    auto c5 = make_fixture(oracle::cyclic(5), "C5").table;
    auto aut5 = table_automorphisms(c5);
    CHECK(aut5.order == Int(4));
    // S3: all classes separated by size/order, no automorphisms
    auto s3 = make_fixture(oracle::symmetric(3), "S3").table;
    CHECK(table_automorphisms(s3).order == Int(1));
    // A5: the two classes of order 5 may swap
    auto a5 = make_fixture(oracle::alternating(5), "A5").table;
    auto aut = table_automorphisms(a5);
    CHECK(aut.order == Int(2));
    // applying a generator leaves all invariant data fixed
    for (auto& g : aut.generators) {
        for (int i = 1; i <= a5.num_classes(); ++i) {
            CHECK(a5.order(g[i - 1]) == a5.order(i));
            CHECK(a5.centralizer(g[i - 1]) == a5.centralizer(i));
        }
    }
}

TEST_CASE("transforming permutations") {
    const auto& t = s4_fixture().table;
    auto self = transforming_permutations(t, t);
    REQUIRE(self.has_value());
    CHECK(self->columns == identity_permutation(t.num_classes()));
    // a shuffled copy maps back
    std::vector<int> perm{1, 3, 2, 5, 4};  // classes keep the identity first
    std::vector<long> orders;
    std::vector<Int> cents;
    for (int i : perm) {
        orders.push_back(t.order(i));
        cents.push_back(t.centralizer(i));
    }
    auto shuffled = CharacterTable::build("S4s", orders, cents);
    std::vector<int> inv(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) inv[perm[k] - 1] = static_cast<int>(k) + 1;
    for (auto& [p, m] : t.power_maps()) {
        std::vector<int> images;
        for (int i : perm) images.push_back(inv[m.at(i).value() - 1]);
        shuffled.set_power_map(p, ParamMap(images));
    }
    std::vector<ClassFunction> irr;
    for (auto& chi : t.irreducibles()) {
        ClassFunction row(5);
        for (int c = 1; c <= 5; ++c) row.at(c) = chi.at(perm[c - 1]);
        irr.push_back(row);
    }
    shuffled.set_irreducibles(irr);
    auto tr = transforming_permutations(shuffled, t);
    REQUIRE(tr.has_value());
    CHECK(tr->columns == perm);
    // tables of different class counts are not equivalent
    auto s3 = make_fixture(oracle::symmetric(3), "S3").table;
    CHECK(!transforming_permutations(t, s3).has_value());
}

TEST_CASE("orbits") {
    Permutation g1{2, 1, 3, 4, 5};  // (1,2)
    Permutation g2{1, 2, 4, 3, 5};  // (3,4)
    auto orb = orbits({g1, g2}, 5);
    CHECK(orb == std::vector<std::vector<int>>{{1, 2}, {3, 4}, {5}});
    CHECK(orbits({identity_permutation(3)}, 3).size() == 3);
}

TEST_CASE("permutation cycle rendering") {
    CHECK(permutation_to_cycles(identity_permutation(4)) == "()");
    Permutation p{2, 1, 4, 3};
    CHECK(permutation_to_cycles(p) == "(1,2)(3,4)");
}
