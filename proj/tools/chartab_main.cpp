// chartab: construct and verify ordinary character tables from class data,
// subgroup tables and fusion/power-map constraints.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "chartab/chars.hpp"
#include "chartab/extension.hpp"
#include "chartab/io.hpp"
#include "chartab/lattice.hpp"
#include "chartab/maps.hpp"
#include "chartab/recipe.hpp"

using namespace chartab;

namespace {

int cmd_validate(const std::string& path) {
    CharacterTable tbl = load_table_file(path);
    std::cout << "table " << tbl.identifier() << ": " << tbl.num_classes() << " classes, order "
              << tbl.group_order().get_str() << "\n";
    if (!tbl.has_irreducibles()) {
        std::cout << "head only (no irreducibles); class data is consistent\n";
        return 0;
    }
    OrthogonalityReport rep = validate_orthogonality(tbl);
    if (rep.ok) {
        std::cout << "orthogonality relations hold exactly\n";
        return 0;
    }
    for (auto& f : rep.failures) std::cout << "failure: " << f << "\n";
    return 1;
}

int cmd_fusions(const std::string& subpath, const std::string& bigpath, bool representatives) {
    CharacterTable sub = load_table_file(subpath);
    CharacterTable big = load_table_file(bigpath);
    auto maps = possible_class_fusions(sub, big);
    std::cout << maps.size() << " possible class fusions\n";
    if (representatives && !maps.empty()) {
        auto suba = table_automorphisms(sub);
        auto reps = representatives_fusions(suba.generators, maps, {});
        std::cout << reps.size() << " orbit representatives\n";
        for (auto& m : reps) std::cout << m.to_string() << "\n";
    } else {
        for (auto& m : maps) std::cout << m.to_string() << "\n";
    }
    return 0;
}

int cmd_powermaps(const std::string& path, long p) {
    CharacterTable tbl = load_table_file(path);
    auto maps = possible_power_maps(tbl, p);
    std::cout << maps.size() << " possible " << p << "-th power maps\n";
    for (auto& m : maps) std::cout << m.to_string() << "\n";
    return 0;
}

int cmd_induce(const std::string& subpath, const std::string& bigpath, const std::string& map,
               const std::string& out) {
    CharacterTable sub = load_table_file(subpath);
    CharacterTable big = load_table_file(bigpath);
    std::vector<int> images;
    std::istringstream is(map);
    std::string item;
    while (std::getline(is, item, ',')) images.push_back(std::stoi(item));
    auto ind = induce_by_fusion(sub, big, sub.irreducibles(), ParamMap(images));
    CharacterSet set{big.identifier(), ind};
    if (out.empty())
        save_characters(set, std::cout);
    else
        save_characters_file(set, out);
    return 0;
}

int cmd_symmetrize(const std::string& tablepath, const std::string& charspath, int n,
                   const std::string& out) {
    CharacterTable tbl = load_table_file(tablepath);
    CharacterSet in = load_characters_file(charspath);
    auto sym = symmetrizations(tbl, in.characters, n);
    CharacterSet set{tbl.identifier(), sym};
    if (out.empty())
        save_characters(set, std::cout);
    else
        save_characters_file(set, out);
    return 0;
}

int cmd_lll(const std::string& tablepath, const std::string& charspath, const std::string& delta,
            bool sort, const std::string& out) {
    CharacterTable tbl = load_table_file(tablepath);
    CharacterSet in = load_characters_file(charspath);
    Rat d(3, 4);
    if (!delta.empty()) {
        size_t slash = delta.find('/');
        d = (slash == std::string::npos)
                ? Rat(Int(delta))
                : Rat(Int(delta.substr(0, slash)), Int(delta.substr(slash + 1)));
        d.canonicalize();
    }
    auto res = lll_reduce(tbl, in.characters, d, sort);
    std::cout << res.irreducibles.size() << " irreducibles, " << res.remainders.size()
              << " remainders\nnorms:";
    for (auto& n : res.norms) std::cout << " " << n.get_str();
    std::cout << "\n";
    if (!out.empty()) {
        save_characters_file(CharacterSet{tbl.identifier(), res.irreducibles},
                             out + ".irreducibles");
        save_characters_file(CharacterSet{tbl.identifier(), res.remainders}, out + ".remainders");
    }
    return 0;
}

int cmd_embed(const std::string& tablepath, const std::string& charspath, int maxdim) {
    CharacterTable tbl = load_table_file(tablepath);
    CharacterSet in = load_characters_file(charspath);
    IntMatrix gram = gram_matrix(tbl, in.characters);
    auto emb = orthogonal_embeddings(gram, maxdim);
    std::cout << emb.vectors.size() << " candidate vectors\n"
              << emb.solutions.size() << " solutions\n";
    for (auto& sol : emb.solutions) {
        std::cout << "size " << sol.size() << ":";
        for (int idx : sol) std::cout << " " << idx;
        std::cout << "\n";
    }
    return 0;
}

int cmd_compare(const std::string& path1, const std::string& path2) {
    CharacterTable t1 = load_table_file(path1);
    CharacterTable t2 = load_table_file(path2);
    if (t1.num_classes() != t2.num_classes()) {
        std::cout << "not equivalent (different class counts)\n";
        return 1;
    }
    auto tr = transforming_permutations(t1, t2);
    if (!tr) {
        std::cout << "not equivalent\n";
        return 1;
    }
    std::cout << "equivalent\ncolumns: " << permutation_to_cycles(tr->columns)
              << "\nrows: " << permutation_to_cycles(tr->rows) << "\n";
    return 0;
}

int cmd_run(const std::string& recipepath, const RecipeOptions& opts, bool no_banner) {
    Recipe recipe = Recipe::parse_file(recipepath);
    if (!no_banner) std::cout << "recipe " << recipepath << "\n";
    RecipeResult res = run_recipe(recipe, opts, std::cout);
    if (!res.ok) {
        std::cout << "recipe failed:\n";
        for (auto& f : res.failures) std::cout << "  " << f << "\n";
        return 1;
    }
    std::cout << "recipe complete\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"character table construction toolkit"};
    app.require_subcommand(1);

    std::string fixtures = ".", outdir, table1, table2, charsfile, mapspec, outfile, delta;
    bool longmode = false, nobanner = false, sort = false, reps = false, seedless = true;
    long prime = 2;
    int dims = 0, symorder = 2;
    app.add_option("--fixtures", fixtures, "fixture directory");
    app.add_option("--out", outdir, "output directory");
    app.add_flag("--long", longmode, "enable long-running recipes");
    app.add_flag("--no-banner", nobanner, "suppress non-deterministic headers");
    app.add_flag("--seedless-deterministic", seedless, "always on; reserved");

    auto* validate = app.add_subcommand("validate", "check a table file");
    validate->add_option("table", table1)->required();

    auto* fusions = app.add_subcommand("fusions", "possible class fusions");
    fusions->add_option("sub", table1)->required();
    fusions->add_option("big", table2)->required();
    fusions->add_flag("--representatives", reps, "reduce by table automorphisms");

    auto* powermaps = app.add_subcommand("powermaps", "possible power maps");
    powermaps->add_option("table", table1)->required();
    powermaps->add_option("-p", prime, "prime")->required();

    auto* induce = app.add_subcommand("induce", "induce irreducibles along a fusion");
    induce->add_option("sub", table1)->required();
    induce->add_option("big", table2)->required();
    induce->add_option("--map", mapspec, "comma separated images")->required();
    induce->add_option("--chars-out", outfile, "output file");

    auto* symmetrize = app.add_subcommand("symmetrize", "S_n symmetrizations");
    symmetrize->add_option("table", table1)->required();
    symmetrize->add_option("--chars", charsfile)->required();
    symmetrize->add_option("--order", symorder);
    symmetrize->add_option("--chars-out", outfile);

    auto* lll = app.add_subcommand("lll", "exact LLL reduction of virtual characters");
    lll->add_option("table", table1)->required();
    lll->add_option("--chars", charsfile)->required();
    lll->add_option("--delta", delta);
    lll->add_flag("--sort", sort);
    lll->add_option("--chars-out", outfile);

    auto* embed = app.add_subcommand("embed", "orthogonal embeddings of the gram matrix");
    embed->add_option("table", table1)->required();
    embed->add_option("--chars", charsfile)->required();
    embed->add_option("--maxdim", dims)->required();

    auto* compare = app.add_subcommand("compare", "table equivalence");
    compare->add_option("table1", table1)->required();
    compare->add_option("table2", table2)->required();

    auto* runcmd = app.add_subcommand("run", "run a pipeline recipe");
    runcmd->add_option("recipe", table1)->required();

    for (auto* sc : app.get_subcommands(nullptr)) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate)) return cmd_validate(table1);
        if (app.got_subcommand(fusions)) return cmd_fusions(table1, table2, reps);
        if (app.got_subcommand(powermaps)) return cmd_powermaps(table1, prime);
        if (app.got_subcommand(induce)) return cmd_induce(table1, table2, mapspec, outfile);
        if (app.got_subcommand(symmetrize))
            return cmd_symmetrize(table1, charsfile, symorder, outfile);
        if (app.got_subcommand(lll)) return cmd_lll(table1, charsfile, delta, sort, outfile);
        if (app.got_subcommand(embed)) return cmd_embed(table1, charsfile, dims);
        if (app.got_subcommand(compare)) return cmd_compare(table1, table2);
        if (app.got_subcommand(runcmd)) {
            RecipeOptions opts;
            opts.fixtures_dir = fixtures;
            opts.out_dir = outdir;
            opts.long_mode = longmode;
            return cmd_run(table1, opts, nobanner);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
