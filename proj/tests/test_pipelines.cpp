#include <doctest.h>

#include <set>

#include "chartab/chars.hpp"
#include "chartab/extension.hpp"
#include "chartab/lattice.hpp"
#include "chartab/maps.hpp"
#include "oracle/catalog.hpp"

using namespace chartab;

// End-to-end reconstructions on small groups, exercising the same pipeline
// shape as the large constructions: class data + subgroup table -> fusions ->
// induced characters -> LLL -> embeddings -> complete table.

TEST_CASE("reconstruct A5 from its class data and the A4 subgroup") {
    auto a4s4 = [] {
        oracle::Group a5 = oracle::alternating(5);
        oracle::Group a4 =
            oracle::subgroup(a5, {oracle::Perm{1, 2, 0, 3, 4}, oracle::Perm{1, 0, 3, 2, 4}});
        return oracle::subgroup_pair(a4, a5, "A4", "A5");
    }();
    const CharacterTable& a4 = a4s4.sub.table;
    const CharacterTable& a5_oracle = a4s4.big.table;

    // the reconstruction starts from a bare head: orders and centralizers only
    std::vector<long> orders;
    std::vector<Int> cents;
    for (int i = 1; i <= a5_oracle.num_classes(); ++i) {
        orders.push_back(a5_oracle.order(i));
        cents.push_back(a5_oracle.centralizer(i));
    }
    CharacterTable a5 = CharacterTable::build("A5new", orders, cents);
    for (long p : primes_up_to(a5.max_order())) a5.set_power_map(p, init_power_map(a5, p));
    // the two order-5 classes are Galois conjugate with value field sqrt(5)
    // (rational classes fail the induced-norm test)
    {
        auto maps = a5.power_maps();
        set_galois_info(maps, {4, 5}, a5, primes_up_to(a5.max_order()), Cyclotomic(1));
        for (auto& [p, m] : maps) a5.set_power_map(p, m);
        bool rational_ok = true;
        for (auto& chi : induced_cyclic(a5, {4}))
            if (!is_integer(rational_scalar_product(a5, chi, chi))) rational_ok = false;
        CHECK(!rational_ok);
        set_galois_info(maps, {4, 5}, a5, primes_up_to(a5.max_order()),
                        Cyclotomic::sqrt_integer(5));
        for (auto& [p, m] : maps) a5.set_power_map(p, m);
        bool sqrt5_ok = true;
        for (auto& chi : induced_cyclic(a5, {4}))
            if (!is_integer(rational_scalar_product(a5, chi, chi))) sqrt5_ok = false;
        CHECK(sqrt5_ok);
    }
    // power maps are now complete and correct
    for (auto& [p, m] : a5.power_maps()) {
        CHECK(m.determined());
        if (a5_oracle.has_power_map(p)) CHECK(m == a5_oracle.power_map(p));
    }
    // class fusion from A4
    auto fus0 = init_fusion(a4, a5);
    REQUIRE(fus0.has_value());
    {
        auto ps = a4.power_maps();
        auto pb = a5.power_maps();
        CHECK(test_consistency(ps, *fus0, pb));
    }
    std::vector<int> allclasses;
    for (int i = 2; i <= a5.num_classes(); ++i) allclasses.push_back(i);
    auto indcyc = induced_cyclic(a5, allclasses);
    auto possfus = fusions_allowed_by_restrictions(a4, a5, a4.irreducibles(), indcyc, *fus0);
    REQUIRE(!possfus.empty());
    CHECK(possfus[0].images() == a4s4.fusion);

    // induce, reduce, LLL
    auto ind = induce_by_fusion(a4, a5, a4.irreducibles(), possfus[0]);
    std::vector<ClassFunction> knowns{a5.trivial_character()};
    std::vector<ClassFunction> pool = indcyc;
    for (auto& c : ind) pool.push_back(c);
    auto red = reduce(a5, knowns, pool);
    for (auto& c : red.irreducibles) knowns.push_back(c);
    auto lll = lll_reduce(a5, red.remainders);
    for (auto& c : lll.irreducibles) knowns.push_back(c);
    std::vector<ClassFunction> remainders = lll.remainders;
    if (!remainders.empty()) {
        IntMatrix gram = gram_matrix(a5, remainders);
        int missing = a5.num_classes() - static_cast<int>(knowns.size());
        auto emb = orthogonal_embeddings(gram, missing);
        bool done = false;
        for (auto& sol : emb.solutions) {
            std::vector<std::vector<Int>> rows;
            for (int idx : sol) rows.push_back(emb.vectors[idx - 1]);
            auto dec = decreased(a5, remainders, rows);
            if (dec && dec->remainders.empty()) {
                for (auto& z : dec->irreducibles) knowns.push_back(z);
                done = true;
                break;
            }
        }
        CHECK(done);
    }
    REQUIRE(static_cast<int>(knowns.size()) == a5.num_classes());
    a5.set_irreducibles(knowns);
    CHECK(validate_orthogonality(a5).ok);
    CHECK(transforming_permutations(a5, a5_oracle).has_value());
}

namespace {

struct MiniCover {
    oracle::CoverChain chain;   // SL(2,5) over A5
    oracle::Fixture subcover;   // SL(2,3)
    oracle::Fixture subbase;    // A4
    ParamMap sub_factor;        // SL(2,3) -> A4
    ParamMap sub_to_g;          // A4 -> A5
    int sub_center = 0;         // class of -I in SL(2,3)
};

MiniCover build_mini_cover() {
    MiniCover d;
    oracle::Group sl25 = oracle::sl25();
    oracle::Perm z = oracle::matrix_perm(5, 4, 0, 0, 4);
    d.chain = oracle::cover_chain(sl25, z, "2.A5", "A5");
    oracle::Perm i5 = oracle::matrix_perm(5, 0, 4, 1, 0);
    oracle::Perm j5 = oracle::matrix_perm(5, 2, 0, 0, 3);
    oracle::Perm w;
    for (size_t e = 0; e < sl25.size(); ++e) {
        const oracle::Perm& cand = sl25.element(static_cast<int>(e));
        if (sl25.element_order(static_cast<int>(e)) != 3) continue;
        oracle::Perm ci = oracle::pcompose(oracle::pcompose(cand, i5), oracle::pinverse(cand));
        oracle::Perm cj = oracle::pcompose(oracle::pcompose(cand, j5), oracle::pinverse(cand));
        if (ci == j5 && cj == oracle::pcompose(i5, j5)) {
            w = cand;
            break;
        }
    }
    oracle::Group sl23 = oracle::subgroup(sl25, {i5, j5, w});
    d.subcover = oracle::make_fixture(sl23, "2.A4");
    d.sub_center = d.subcover.cd.class_of[sl23.index_of(z)] + 1;
    std::vector<int> normal{sl23.id(), sl23.index_of(z)};
    oracle::QuotientResult qa4 = oracle::quotient(sl23, normal);
    d.subbase.group = qa4.group;
    d.subbase.cd = oracle::ClassData::compute(d.subbase.group);
    d.subbase.table = oracle::dixon_table(d.subbase.group, d.subbase.cd, "A4");
    std::vector<int> sf;
    for (int c = 0; c < d.subcover.cd.k(); ++c)
        sf.push_back(d.subbase.cd.class_of[qa4.epi[d.subcover.cd.reps[c]]] + 1);
    d.sub_factor = ParamMap(sf);
    std::vector<int> bignormal{sl25.id(), sl25.index_of(z)};
    oracle::QuotientResult qa5 = oracle::quotient(sl25, bignormal);
    std::vector<int> stog(d.subbase.table.num_classes(), 0);
    for (int c = 0; c < d.subcover.cd.k(); ++c) {
        int a4class = sf[c];
        int a5class =
            d.chain.base.cd.class_of[qa5.epi[sl25.index_of(sl23.element(d.subcover.cd.reps[c]))]] +
            1;
        stog[a4class - 1] = a5class;
    }
    d.sub_to_g = ParamMap(stog);
    return d;
}

}  // namespace

TEST_CASE("reconstruct the double cover of A5 through the extension machinery") {
    MiniCover d = build_mini_cover();
    const CharacterTable& a5 = d.chain.base.table;
    const CharacterTable& a4 = d.subbase.table;
    const CharacterTable& sl23 = d.subcover.table;
    const CharacterTable& oracle2a5 = d.chain.cover.table;

    // 1. splitting determination, purely character-theoretic
    SplitState st;
    st.mustsplit = odd_order_classes_split(a5);
    self_centralizing_classes_split(a5, st);
    odd_roots_of_splitting_classes_split(a5, st);
    not_splitting_classes_of_subgroup_do_not_split(d.sub_factor, d.sub_to_g, st);
    splitting_classes_with_odd_centralizer_index_split(a4, a5, d.sub_to_g, d.sub_factor, st);
    CHECK(st.mustsplit.size() + st.mustnotsplit.size() ==
          static_cast<size_t>(a5.num_classes()));

    // 2. element-order lifting from the subgroup cover: the involutions of A4
    // lift to order 4, so the involution class of A5 lifts
    std::vector<int> invmustlift;
    {
        PartialMap inv = inverse_map(d.sub_factor, a4.num_classes());
        for (int j = 1; j <= a4.num_classes(); ++j) {
            if (a4.order(j) != 2 || !inv.bound(j)) continue;
            bool all_lift = true;
            for (int pre : inv.at(j).candidates())
                if (sl23.order(pre) != 4) all_lift = false;
            if (all_lift) invmustlift.push_back(d.sub_to_g.at(j).value());
        }
    }
    CHECK(!invmustlift.empty());

    // 3. the table head and the fusion from the subgroup cover
    CharacterTable cover = table_head(a5, st.mustsplit, invmustlift, {});
    const ParamMap cover_factor = *cover.fusion_to(a5.identifier());
    CHECK(cover.num_classes() == 9);
    std::vector<ClassFunction> faithful;
    for (auto& chi : sl23.irreducibles())
        if (chi.at(d.sub_center) == -chi.degree()) faithful.push_back(chi);
    auto fus = run_one_test(sl23, cover, d.sub_factor, cover_factor, d.sub_to_g, faithful, {});
    REQUIRE(fus.has_value());
    REQUIRE(fus->determined());

    // 4. power maps of the cover from the factor diagram (orders pin them here)
    {
        PartialMap inv = inverse_map(cover_factor, a5.num_classes());
        for (long p : primes_up_to(cover.max_order())) {
            ParamMap pow = init_power_map(cover, p);
            if (a5.has_power_map(p)) {
                PartialMap comp =
                    compose(inv, compose(PartialMap(a5.power_map(p)), PartialMap(cover_factor)));
                REQUIRE(meet(pow, comp));
            }
            REQUIRE(pow.determined());
            cover.set_power_map(p, std::move(pow));
        }
    }

    // 5. characters: factor irreducibles, induced faithfuls, induced cyclic
    std::vector<ClassFunction> factchars;
    for (auto& chi : a5.irreducibles()) {
        ClassFunction f(cover.num_classes());
        for (int i = 1; i <= cover.num_classes(); ++i)
            f.at(i) = chi.at(cover_factor.at(i).value());
        factchars.push_back(std::move(f));
    }
    auto ind = induce_by_fusion(sl23, cover, faithful, *fus);
    std::vector<int> allclasses;
    for (int i = 2; i <= cover.num_classes(); ++i) allclasses.push_back(i);
    auto indcyc = induced_cyclic(cover, allclasses);
    std::vector<ClassFunction> pool = ind;
    for (auto& c : indcyc) pool.push_back(c);
    auto red = reduce(cover, factchars, pool);
    std::vector<ClassFunction> found = red.irreducibles;
    auto lll = lll_reduce(cover, red.remainders);
    for (auto& c : lll.irreducibles) found.push_back(c);
    std::vector<ClassFunction> remainders = lll.remainders;
    if (!remainders.empty()) {
        IntMatrix gram = gram_matrix(cover, remainders);
        int missing = cover.num_classes() - static_cast<int>(factchars.size() + found.size());
        auto emb = orthogonal_embeddings(gram, missing);
        bool done = false;
        for (auto& sol : emb.solutions) {
            std::vector<std::vector<Int>> rows;
            for (int idx : sol) rows.push_back(emb.vectors[idx - 1]);
            auto dec = decreased(cover, remainders, rows);
            if (dec && dec->remainders.empty()) {
                for (auto& zz : dec->irreducibles) found.push_back(zz);
                done = true;
                break;
            }
        }
        CHECK(done);
    }
    std::vector<ClassFunction> all = factchars;
    for (auto& c : found) all.push_back(c);
    REQUIRE(static_cast<int>(all.size()) == cover.num_classes());
    cover.set_irreducibles(all);
    CHECK(validate_orthogonality(cover).ok);
    // the reconstruction is the character table of SL(2,5)
    CHECK(transforming_permutations(cover, oracle2a5).has_value());
}

TEST_CASE("index-two refinement: GL(2,3) over S4 through the cube machinery") {
    // G = A4, G.2 = S4, 2.G = SL(2,3), 2.G.2 = GL(2,3);
    // U = C3, U.2 = S3, 2.U = C6, 2.U.2 of order 12
    oracle::Group gl = oracle::gl23();
    oracle::Perm z = oracle::matrix_perm(3, 2, 0, 0, 2);
    oracle::CoverChain big2 = oracle::cover_chain(gl, z, "2.S4", "S4");  // GL(2,3) -> S4
    oracle::Group sl = oracle::subgroup(gl, {oracle::matrix_perm(3, 0, 2, 1, 0),
                                             oracle::matrix_perm(3, 1, 1, 0, 1)});
    oracle::CoverChain big = oracle::cover_chain(sl, z, "2.A4", "A4");  // SL(2,3) -> A4
    // the 2.U.2 subgroup: preimage of S3 = < [[1,1],[0,1]], [[1,0],[0,2]], -I >
    oracle::Group u12 = oracle::subgroup(
        gl, {oracle::matrix_perm(3, 1, 1, 0, 1), oracle::matrix_perm(3, 1, 0, 0, 2), z});
    REQUIRE(u12.size() == 12);
    oracle::CoverChain sub2 = oracle::cover_chain(u12, z, "2.S3", "S3");
    oracle::Group u6 = oracle::subgroup(gl, {oracle::matrix_perm(3, 1, 1, 0, 1), z});
    REQUIRE(u6.size() == 6);
    oracle::CoverChain sub = oracle::cover_chain(u6, z, "2.C3", "C3");

    auto fusion_between = [&](const oracle::Fixture& h, const oracle::Fixture& g) {
        std::vector<int> out;
        for (int c = 0; c < h.cd.k(); ++c)
            out.push_back(g.cd.class_of[g.group.index_of(h.group.element(h.cd.reps[c]))] + 1);
        return ParamMap(out);
    };
    // cube maps
    ParamMap cover_sub_to_cover_sub2 = fusion_between(sub.cover, sub2.cover);  // 2U -> 2U.2
    ParamMap cover_sub_to_cover_big = fusion_between(sub.cover, big.cover);    // 2U -> 2G
    ParamMap cover_big_to_cover_big2 = fusion_between(big.cover, big2.cover);  // 2G -> 2G.2
    ParamMap sub2_factor(sub2.factor_fusion);                                  // 2U.2 -> U.2

    // quotient-side fusions, computed through the quotient groups
    oracle::QuotientResult qbig2 = oracle::quotient(gl, {gl.id(), gl.index_of(z)});
    auto base_fusion = [&](const oracle::CoverChain& from) {
        std::vector<int> out(from.base.cd.k(), 0);
        for (int c = 0; c < from.cover.cd.k(); ++c) {
            int baseclass = from.factor_fusion[c] - 1;
            const oracle::Perm& rep = from.cover.group.element(from.cover.cd.reps[c]);
            int img = qbig2.epi[gl.index_of(rep)];
            out[baseclass] = big2.base.cd.class_of[img] + 1;
        }
        return ParamMap(out);
    };
    ParamMap s2fust2 = base_fusion(sub2);  // U.2 -> G.2

    // ground truth splitting of G.2 = S4 classes in 2.G.2 = GL(2,3)
    std::vector<int> true_split, true_nonsplit;
    {
        std::vector<int> count(big2.base.cd.k(), 0);
        for (int c = 0; c < big2.cover.cd.k(); ++c) count[big2.factor_fusion[c] - 1]++;
        for (int j = 0; j < big2.base.cd.k(); ++j)
            (count[j] == 2 ? true_split : true_nonsplit).push_back(j + 1);
    }

    // the refinement loop must stay inside the truth
    SplitState st;
    st.mustsplit = odd_order_classes_split(big2.base.table);
    self_centralizing_classes_split(big2.base.table, st);
    std::vector<ClassFunction> testchars;
    int zclass2 = sub2.cover.cd.class_of[u12.index_of(z)] + 1;
    for (auto& chi : sub2.cover.table.irreducibles())
        if (chi.at(zclass2) == -chi.degree()) testchars.push_back(chi);
    REQUIRE(!testchars.empty());
    ParamMap tfust2 = base_fusion(big);  // G -> G.2
    std::vector<int> projection = projection_map(sub2_factor, sub2.base.table.num_classes());
    compute_contributions2(sub2.base.table, sub.cover.table, big2.base.table, big.cover.table,
                           s2fust2, cover_sub_to_cover_sub2, cover_sub_to_cover_big, tfust2,
                           testchars, Int(1000000), st, projection);
    for (int c : st.mustsplit)
        CHECK(std::find(true_split.begin(), true_split.end(), c) != true_split.end());
    for (int c : st.mustnotsplit)
        CHECK(std::find(true_nonsplit.begin(), true_nonsplit.end(), c) != true_nonsplit.end());

    // the cube fusion via run_one_test2, against the true head
    std::vector<int> mustlift;
    for (int i = 1; i <= big2.base.table.num_classes(); ++i)
        if (big2.base.table.order(i) == 2) {
            bool lifts = true;
            for (int c = 0; c < big2.cover.cd.k(); ++c)
                if (big2.factor_fusion[c] == i && big2.cover.table.order(c + 1) == 2)
                    lifts = false;
            if (lifts) mustlift.push_back(i);
        }
    CharacterTable head2 = table_head(big2.base.table, true_split, mustlift, {});
    const ParamMap head2_factor = *head2.fusion_to(big2.base.table.identifier());
    CHECK(head2.num_classes() == big2.cover.table.num_classes());

    // identify the oracle GL(2,3) classes with the head positions (split pairs
    // are matched in order of appearance; either choice is a valid convention)
    std::vector<int> oracle_to_head(big2.cover.table.num_classes(), 0);
    {
        std::vector<bool> used(head2.num_classes() + 1, false);
        for (int c = 1; c <= big2.cover.table.num_classes(); ++c) {
            int g = big2.factor_fusion[c - 1];
            for (int h = 1; h <= head2.num_classes(); ++h) {
                if (used[h] || head2_factor.at(h).value() != g) continue;
                if (head2.order_candidates(h) !=
                    big2.cover.table.order_candidates(c))
                    continue;
                oracle_to_head[c - 1] = h;
                used[h] = true;
                break;
            }
            REQUIRE(oracle_to_head[c - 1] != 0);
        }
    }
    std::vector<int> bigcover_to_head;
    for (int i = 1; i <= cover_big_to_cover_big2.size(); ++i)
        bigcover_to_head.push_back(oracle_to_head[cover_big_to_cover_big2.at(i).value() - 1]);
    ParamMap cover_big_embedding(bigcover_to_head);

    auto fus2 = run_one_test2(sub2.cover.table, head2, sub2_factor, head2_factor, s2fust2,
                              cover_sub_to_cover_sub2, cover_big_embedding,
                              cover_sub_to_cover_big, testchars, {});
    REQUIRE(fus2.has_value());
    // every surviving candidate respects the base square of the cube
    for (int i = 1; i <= fus2->size(); ++i)
        for (int cand : fus2->at(i).candidates())
            CHECK(s2fust2.at(sub2_factor.at(i).value()).value() ==
                  head2_factor.at(cand).value());
}
