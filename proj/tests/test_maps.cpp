#include <doctest.h>

#include "chartab/maps.hpp"
#include "oracle/catalog.hpp"

using namespace chartab;
using oracle::Fixture;
using oracle::make_fixture;

namespace {
struct PairFixture {
    Fixture sub, big;
    ParamMap fusion;
};
const PairFixture& a4_in_s4() {
    static PairFixture p = [] {
        oracle::Group s4 = oracle::symmetric(4);
        oracle::Group a4 = oracle::subgroup(s4, {oracle::Perm{1, 2, 0, 3}, oracle::Perm{1, 0, 3, 2}});
        auto pair = oracle::subgroup_pair(a4, s4, "A4", "S4");
        return PairFixture{std::move(pair.sub), std::move(pair.big), ParamMap(pair.fusion)};
    }();
    return p;
}
const PairFixture& a4_in_a5() {
    static PairFixture p = [] {
        oracle::Group a5 = oracle::alternating(5);
        oracle::Group a4 =
            oracle::subgroup(a5, {oracle::Perm{1, 2, 0, 3, 4}, oracle::Perm{1, 0, 3, 2, 4}});
        auto pair = oracle::subgroup_pair(a4, a5, "A4", "A5");
        return PairFixture{std::move(pair.sub), std::move(pair.big), ParamMap(pair.fusion)};
    }();
    return p;
}
}  // namespace

TEST_CASE("inverse map") {
    ParamMap id = ParamMap::identity(4);
    PartialMap inv = inverse_map(id, 4);
    for (int j = 1; j <= 4; ++j) {
        CHECK(inv.bound(j));
        CHECK(inv.at(j).value() == j);
    }
    ParamMap two_to_one(std::vector<int>{1, 1, 2, 2, 3, 3});
    PartialMap inv2 = inverse_map(two_to_one, 3);
    for (int j = 1; j <= 3; ++j) CHECK(inv2.at(j).count() == 2);
    ParamMap withlist(std::vector<MapEntry>{MapEntry(1), MapEntry(std::vector<int>{1, 2})});
    PartialMap inv3 = inverse_map(withlist, 2);
    CHECK(inv3.at(1).count() == 2);
    CHECK(inv3.at(2).value() == 2);
}

TEST_CASE("compose and meet") {
    ParamMap id = ParamMap::identity(3);
    ParamMap m(std::vector<MapEntry>{MapEntry(2), MapEntry(std::vector<int>{1, 3}), MapEntry(3)});
    PartialMap comp = compose(PartialMap(id), PartialMap(m));
    for (int i = 1; i <= 3; ++i) CHECK(comp.at(i) == m.at(i));
    ParamMap d1(std::vector<int>{2, 3, 1});
    ParamMap d2(std::vector<int>{3, 1, 2});
    PartialMap c = compose(PartialMap(d1), PartialMap(d2));
    for (int i = 1; i <= 3; ++i) CHECK(c.at(i).determined());
    ParamMap copy = m;
    CHECK(meet(copy, PartialMap(m)));
    CHECK(copy == m);
    ParamMap x1(std::vector<int>{1});
    ParamMap x2(std::vector<int>{2});
    CHECK(!meet(x1, PartialMap(x2)));
    ParamMap big(std::vector<MapEntry>{MapEntry(std::vector<int>{1, 2, 3})});
    ParamMap small(std::vector<MapEntry>{MapEntry(std::vector<int>{2, 3})});
    CHECK(meet(big, PartialMap(small)));
    CHECK(big.at(1).count() == 2);
}

TEST_CASE("parametrized, contained, indeterminateness, projection") {
    ParamMap m1(std::vector<int>{1, 2, 3});
    ParamMap m2(std::vector<int>{1, 3, 3});
    ParamMap para = parametrized({m1, m2});
    CHECK(para.at(1).value() == 1);
    CHECK(para.at(2).count() == 2);
    CHECK(parametrized({m1}) == m1);
    CHECK(indeterminateness(para) == Int(2));
    ParamMap two_bits(std::vector<MapEntry>{MapEntry(std::vector<int>{1, 2}), MapEntry(3),
                                            MapEntry(std::vector<int>{4, 5})});
    auto all = contained_maps(two_bits);
    CHECK(all.size() == 4);
    CHECK(all[0].images() == std::vector<int>{1, 3, 4});
    CHECK(all[3].images() == std::vector<int>{2, 3, 5});
    CHECK_THROWS_AS(contained_maps(two_bits, Int(3)), Error);
    ParamMap surj(std::vector<int>{1, 2, 1, 2});
    CHECK(projection_map(surj, 2) == std::vector<int>{1, 2});
}

TEST_CASE("init_power_map") {
    const auto& t = a4_in_s4().big.table;  // S4
    for (long p : {2L, 3L, 5L}) {
        ParamMap pm = init_power_map(t, p);
        CHECK(pm.at(1).value() == 1);
        const ParamMap& truth = t.power_map(p);
        for (int i = 1; i <= t.num_classes(); ++i)
            CHECK(pm.at(i).contains(truth.at(i).value()));
    }
}

TEST_CASE("init_fusion contains the true fusion") {
    const auto& pf = a4_in_s4();
    auto fus = init_fusion(pf.sub.table, pf.big.table);
    REQUIRE(fus.has_value());
    for (int i = 1; i <= pf.sub.table.num_classes(); ++i)
        CHECK(fus->at(i).contains(pf.fusion.at(i).value()));
    auto self = init_fusion(pf.big.table, pf.big.table);
    REQUIRE(self.has_value());
    for (int i = 1; i <= pf.big.table.num_classes(); ++i) CHECK(self->at(i).contains(i));
}

TEST_CASE("transfer diagram") {
    const auto& pf = a4_in_s4();
    const auto& sub = pf.sub.table;
    const auto& big = pf.big.table;
    ParamMap p2s = sub.power_map(2), fus = pf.fusion, p2b = big.power_map(2);
    auto imp = transfer_diagram(p2s, fus, p2b);
    REQUIRE(imp.has_value());
    CHECK(imp->inside1.empty());
    CHECK(imp->between.empty());
    CHECK(imp->inside2.empty());
    ParamMap approx = *init_fusion(sub, big);
    ParamMap ps = sub.power_map(2), pb = big.power_map(2);
    auto first = transfer_diagram(ps, approx, pb);
    REQUIRE(first.has_value());
    auto second = transfer_diagram(ps, approx, pb);
    REQUIRE(second.has_value());
    CHECK(second->inside1.empty());
    CHECK(second->between.empty());
    CHECK(second->inside2.empty());
    for (int i = 1; i <= sub.num_classes(); ++i)
        CHECK(approx.at(i).contains(pf.fusion.at(i).value()));
}

TEST_CASE("commutative diagram on power maps") {
    const auto& t = a4_in_a5().big.table;  // A5
    ParamMap p2 = t.power_map(2), p3 = t.power_map(3);
    ParamMap p2b = p2, p3b = p3;
    auto imp = commutative_diagram(p2, p3, p3b, p2b);
    REQUIRE(imp.has_value());
    CHECK(imp->imp1.empty());
    CHECK(imp->imp3.empty());
}

TEST_CASE("test_consistency") {
    const auto& pf = a4_in_s4();
    auto pows_sub = pf.sub.table.power_maps();
    auto pows_big = pf.big.table.power_maps();
    ParamMap fus = *init_fusion(pf.sub.table, pf.big.table);
    CHECK(test_consistency(pows_sub, fus, pows_big));
    auto pa = pf.big.table.power_maps();
    auto pb = pf.big.table.power_maps();
    ParamMap id = ParamMap::identity(pf.big.table.num_classes());
    CHECK(test_consistency(pa, id, pb));
    CHECK(id == ParamMap::identity(pf.big.table.num_classes()));
    auto pc = pf.big.table.power_maps();
    std::vector<int> corrupt = pf.big.table.power_map(2).images();
    corrupt[4] = 5;  // force the 4-cycle class to square to itself
    pc[2] = ParamMap(corrupt);
    auto pd = pf.big.table.power_maps();
    ParamMap id2 = ParamMap::identity(pf.big.table.num_classes());
    CHECK(!test_consistency(pc, id2, pd));
}

TEST_CASE("congruences pin galois-conjugate power maps") {
    auto c5 = make_fixture(oracle::cyclic(5), "C5").table;
    ParamMap pow = init_power_map(c5, 2);
    CHECK(congruences(c5, c5.irreducibles(), pow, 2));
    CHECK(pow.determined());
    CHECK(pow == c5.power_map(2));
    auto a5 = a4_in_a5().big.table;
    ParamMap pow5 = init_power_map(a5, 2);
    CHECK(congruences(a5, a5.irreducibles(), pow5, 2));
    CHECK(pow5 == a5.power_map(2));
}

TEST_CASE("consider smaller power maps") {
    const auto& t = a4_in_s4().big.table;  // S4, orders 1..4
    ParamMap pow = init_power_map(t, 5);
    CHECK(consider_smaller_powermaps(t, pow, 5));
    for (int i = 1; i <= t.num_classes(); ++i) {
        long n = t.order(i);
        CHECK(pow.at(i).value() == t.power_class(i, 5 % n));
    }
}

TEST_CASE("possible_class_fusions matches brute force") {
    const auto& pf = a4_in_s4();
    const auto& sub = pf.sub.table;
    const auto& big = pf.big.table;
    auto result = possible_class_fusions(sub, big);
    auto admissible = [&](const std::vector<int>& f) {
        for (int i = 1; i <= sub.num_classes(); ++i) {
            if (sub.order(i) != big.order(f[i - 1])) return false;
            if (!divides(sub.centralizer(i), big.centralizer(f[i - 1]))) return false;
        }
        for (auto& [p, m] : sub.power_maps()) {
            if (!big.has_power_map(p)) continue;
            for (int i = 1; i <= sub.num_classes(); ++i)
                if (f[m.at(i).value() - 1] != big.power_map(p).at(f[i - 1]).value()) return false;
        }
        for (auto& chi : big.irreducibles()) {
            ClassFunction res(sub.num_classes());
            for (int i = 1; i <= sub.num_classes(); ++i) res.at(i) = chi.at(f[i - 1]);
            for (auto& psi : sub.irreducibles()) {
                Cyclotomic sp = scalar_product(sub, res, psi);
                if (!sp.is_rational()) return false;
                Rat q = sp.is_zero() ? Rat(0) : sp.rational_value();
                if (!is_integer(q) || q < 0) return false;
            }
        }
        return true;
    };
    std::vector<std::vector<int>> expected;
    std::vector<int> f(sub.num_classes(), 1);
    auto rec = [&](auto&& self, int i) -> void {
        if (i > sub.num_classes()) {
            if (admissible(f)) expected.push_back(f);
            return;
        }
        for (int j = 1; j <= big.num_classes(); ++j) {
            f[i - 1] = j;
            self(self, i + 1);
        }
    };
    rec(rec, 1);
    std::vector<std::vector<int>> got;
    for (auto& m : result) got.push_back(m.images());
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
    CHECK(std::find(got.begin(), got.end(), pf.fusion.images()) != got.end());
}

TEST_CASE("possible_class_fusions A4 -> A5 contains the truth") {
    const auto& pf = a4_in_a5();
    auto result = possible_class_fusions(pf.sub.table, pf.big.table);
    bool found = false;
    for (auto& m : result)
        if (m.images() == pf.fusion.images()) found = true;
    CHECK(found);
}

TEST_CASE("fusions_allowed_by_restrictions") {
    const auto& pf = a4_in_s4();
    ParamMap approx = *init_fusion(pf.sub.table, pf.big.table);
    auto maps = fusions_allowed_by_restrictions(pf.sub.table, pf.big.table,
                                                pf.sub.table.irreducibles(),
                                                pf.big.table.irreducibles(), approx);
    CHECK(!maps.empty());
    bool found = false;
    for (auto& m : maps) {
        CHECK(m.determined());
        if (m.images() == pf.fusion.images()) found = true;
    }
    CHECK(found);
}

TEST_CASE("possible_power_maps") {
    auto c1 = make_fixture(oracle::cyclic(1), "C1").table;
    auto poss = possible_power_maps(c1, 2);
    REQUIRE(poss.size() == 1);
    CHECK(poss[0].images() == std::vector<int>{1});
    for (const auto* t : {&a4_in_s4().big.table, &a4_in_a5().big.table}) {
        for (long p : {2L, 3L, 5L}) {
            auto maps = possible_power_maps(*t, p);
            REQUIRE(maps.size() == 1);
            CHECK(maps[0] == t->power_map(p));
        }
    }
    auto s3 = make_fixture(oracle::symmetric(3), "S3").table;
    auto maps7 = possible_power_maps(s3, 7);
    bool has_id = false;
    for (auto& m : maps7)
        if (m == ParamMap::identity(3)) has_id = true;
    CHECK(has_id);
}

TEST_CASE("representatives_fusions") {
    auto c5 = make_fixture(oracle::cyclic(5), "C5");
    const auto& a5 = a4_in_a5().big.table;
    auto fusions = possible_class_fusions(c5.table, a5);
    CHECK(fusions.size() >= 2);
    auto suba = table_automorphisms(c5.table);
    auto biga = table_automorphisms(a5);
    auto reps = representatives_fusions(suba.generators, fusions, biga.generators);
    CHECK(reps.size() < fusions.size());
    auto one = representatives_fusions(suba.generators, {fusions[0]}, {});
    REQUIRE(one.size() == 1);
}
