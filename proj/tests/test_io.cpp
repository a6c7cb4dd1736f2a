#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chartab/io.hpp"
#include "chartab/recipe.hpp"
#include "oracle/catalog.hpp"

using namespace chartab;

TEST_CASE("cyclotomic tokens") {
    CHECK(cyclotomic_to_token(Cyclotomic(5)) == "5");
    CHECK(cyclotomic_to_token(Cyclotomic(Rat(-3, 2))) == "-3/2");
    Cyclotomic x = Cyclotomic::sqrt_integer(-3);
    std::string tok = cyclotomic_to_token(x);
    CHECK(tok == "{3,[(1,1,1),(2,-1,1)]}");
    CHECK(cyclotomic_from_token(tok) == x);
    CHECK(cyclotomic_from_token("7") == Cyclotomic(7));
    CHECK(cyclotomic_from_token("-4/6") == Cyclotomic(Rat(-2, 3)));
    // non-canonical encodings are rejected: wrong conductor
    CHECK_THROWS_AS(cyclotomic_from_token("{4,[(2,1,1)]}"), Error);  // zeta_4^2 = -1
    // non-basis exponent
    CHECK_THROWS_AS(cyclotomic_from_token("{9,[(1,1,1)]}"), Error);
    // unreduced fraction is re-normalized by arithmetic, so encoding differs
    CHECK_THROWS_AS(cyclotomic_from_token("{3,[(1,2,4)]}"), Error);
}

TEST_CASE("table round trip") {
    auto f = oracle::make_fixture(oracle::symmetric(4), "S4");
    f.table.store_fusion("demo", ParamMap(std::vector<MapEntry>{
                                     MapEntry(1), MapEntry(std::vector<int>{1, 2}), MapEntry(2),
                                     MapEntry(3), MapEntry(3)}));
    std::ostringstream os;
    save_table(f.table, os);
    std::istringstream is(os.str());
    CharacterTable back = load_table(is, "roundtrip");
    CHECK(back.identifier() == f.table.identifier());
    CHECK(back.num_classes() == f.table.num_classes());
    CHECK(back.group_order() == f.table.group_order());
    for (int i = 1; i <= back.num_classes(); ++i) {
        CHECK(back.order_candidates(i) == f.table.order_candidates(i));
        CHECK(back.centralizer(i) == f.table.centralizer(i));
    }
    CHECK(back.power_maps() == f.table.power_maps());
    CHECK(back.irreducibles() == f.table.irreducibles());
    REQUIRE(back.fusion_to("demo") != nullptr);
    CHECK(*back.fusion_to("demo") == *f.table.fusion_to("demo"));
    // byte-identical re-serialization
    std::ostringstream os2;
    save_table(back, os2);
    CHECK(os.str() == os2.str());
}

TEST_CASE("load diagnostics") {
    auto expect_error = [](const std::string& text, const std::string& fragment) {
        std::istringstream is(text);
        try {
            load_table(is, "bad");
            FAIL("expected an error for: " << fragment);
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    // non-integral class size
    expect_error("table \"x\"\nclasses 2\norder 6\norders 1 2\ncentralizers 6 4\nend\n",
                 "non-integral");
    // order zero
    expect_error("table \"x\"\nclasses 2\norder 2\norders 1 0\ncentralizers 2 2\nend\n",
                 "positive");
    // wrong irreducible count
    expect_error(
        "table \"x\"\nclasses 2\norder 2\norders 1 2\ncentralizers 2 2\nirreducible 1 1\nend\n",
        "expected 2 irreducibles");
    // missing end
    expect_error("table \"x\"\nclasses 1\norder 1\norders 1\ncentralizers 1\n", "missing end");
    // big integers preserved exactly (as character values and class data)
    std::string big = "4154781481226426191177580544000000";
    CharacterSet set{"big", {ClassFunction(std::vector<Cyclotomic>{Cyclotomic(Int(big))})}};
    std::ostringstream bos;
    save_characters(set, bos);
    std::istringstream bis(bos.str());
    CharacterSet bback = load_characters(bis, "big");
    CHECK(bback.characters[0].at(1).rational_value().get_str() == big);
}

TEST_CASE("character set round trip") {
    auto f = oracle::make_fixture(oracle::alternating(5), "A5");
    CharacterSet set{"A5", f.table.irreducibles()};
    std::ostringstream os;
    save_characters(set, os);
    std::istringstream is(os.str());
    CharacterSet back = load_characters(is, "chars");
    CHECK(back.table_identifier == "A5");
    CHECK(back.characters == set.characters);
}

namespace {
// writes the small-group fixtures used by the mini recipes
void write_mini_fixtures(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    oracle::Group a5g = oracle::alternating(5);
    auto a5 = oracle::make_fixture(a5g, "A5");
    save_table_file(a5.table, dir + "/a5.ctb");
    {
        std::vector<long> orders;
        std::vector<Int> cents;
        for (int i = 1; i <= a5.table.num_classes(); ++i) {
            orders.push_back(a5.table.order(i));
            cents.push_back(a5.table.centralizer(i));
        }
        save_table_file(CharacterTable::build("A5", orders, cents), dir + "/a5_head.ctb");
    }
    oracle::Group a4g =
        oracle::subgroup(a5g, {oracle::Perm{1, 2, 0, 3, 4}, oracle::Perm{1, 0, 3, 2, 4}});
    auto pair = oracle::subgroup_pair(a4g, a5g, "A4", "A5");
    save_table_file(pair.sub.table, dir + "/a4.ctb");

    // the SL(2,5) chain for the extension recipe
    oracle::Group sl25 = oracle::sl25();
    oracle::Perm z = oracle::matrix_perm(5, 4, 0, 0, 4);
    auto chain = oracle::cover_chain(sl25, z, "2.A5", "A5");
    save_table_file(chain.cover.table, dir + "/2a5.ctb");
    save_table_file(chain.base.table, dir + "/a5q.ctb");
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
    auto subfix = oracle::make_fixture(sl23, "2.A4");
    oracle::QuotientResult qa4 = oracle::quotient(sl23, {sl23.id(), sl23.index_of(z)});
    oracle::Fixture a4q;
    a4q.group = qa4.group;
    a4q.cd = oracle::ClassData::compute(a4q.group);
    a4q.table = oracle::dixon_table(a4q.group, a4q.cd, "A4");
    std::vector<int> sf;
    for (int c = 0; c < subfix.cd.k(); ++c)
        sf.push_back(a4q.cd.class_of[qa4.epi[subfix.cd.reps[c]]] + 1);
    subfix.table.store_fusion("A4", ParamMap(sf));
    save_table_file(subfix.table, dir + "/2a4.ctb");
    save_table_file(a4q.table, dir + "/a4q.ctb");
}
}  // namespace

TEST_CASE("mini recipes run end to end") {
    std::string dir = "mini_fixture_dir";
    write_mini_fixtures(dir);
    RecipeOptions opts;
    opts.fixtures_dir = dir;
    namespace fs = std::filesystem;
    fs::path src = fs::path(__FILE__).parent_path().parent_path() / "recipes";
    for (const char* name : {"mini-a5.recipe", "mini-2a5.recipe"}) {
        fs::path p = src / name;
        REQUIRE(fs::exists(p));
        Recipe recipe = Recipe::parse_file(p.string());
        std::ostringstream report;
        RecipeResult res = run_recipe(recipe, opts, report);
        INFO(report.str());
        CHECK(res.ok);
    }
}
