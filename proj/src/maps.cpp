#include "chartab/maps.hpp"

#include <algorithm>
#include <set>

namespace chartab {

namespace {

// intersection of an entry with a sorted candidate set; empty = contradiction
std::vector<int> intersect(const MapEntry& e, const std::vector<int>& sorted) {
    std::vector<int> out;
    std::set_intersection(e.candidates().begin(), e.candidates().end(), sorted.begin(),
                          sorted.end(), std::back_inserter(out));
    return out;
}

bool refine_entry(ParamMap& m, int pos, const std::vector<int>& keep, bool& changed) {
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> inter = intersect(m.at(pos), sorted);
    if (inter.empty()) return false;
    if (inter.size() != m.at(pos).count()) {
        m.at(pos) = MapEntry(std::move(inter));
        changed = true;
    }
    return true;
}

}  // namespace

ParamMap init_power_map(const CharacterTable& tbl, long p) {
    int n = tbl.num_classes();
    std::vector<MapEntry> entries;
    entries.reserve(n);
    for (int i = 1; i <= n; ++i) {
        std::vector<int> cands;
        for (int j = 1; j <= n; ++j) {
            bool ok = false;
            for (long o : tbl.order_candidates(i)) {
                long target = o / std::gcd(o, p);
                bool order_ok = false;
                for (long oj : tbl.order_candidates(j))
                    if (oj == target) order_ok = true;
                if (!order_ok) continue;
                // a power coprime to the order generates the same cyclic
                // subgroup, so the centralizers agree exactly
                if (std::gcd(o, p) == 1) {
                    if (tbl.centralizer(i) == tbl.centralizer(j)) ok = true;
                } else if (divides(tbl.centralizer(i), tbl.centralizer(j))) {
                    ok = true;
                }
            }
            if (ok) cands.push_back(j);
        }
        if (cands.empty())
            throw Error("init_power_map: no candidate for class " + std::to_string(i));
        entries.emplace_back(std::move(cands));
    }
    return ParamMap(std::move(entries));
}

std::optional<ParamMap> init_fusion(const CharacterTable& sub, const CharacterTable& big) {
    std::vector<MapEntry> entries;
    entries.reserve(sub.num_classes());
    for (int i = 1; i <= sub.num_classes(); ++i) {
        std::vector<int> cands;
        for (int j = 1; j <= big.num_classes(); ++j) {
            bool order_ok = false;
            for (long a : sub.order_candidates(i))
                for (long b : big.order_candidates(j))
                    if (a == b) order_ok = true;
            if (!order_ok) continue;
            if (!divides(sub.centralizer(i), big.centralizer(j))) continue;
            cands.push_back(j);
        }
        if (cands.empty()) return std::nullopt;
        entries.emplace_back(std::move(cands));
    }
    return ParamMap(std::move(entries));
}

std::optional<TransferImprovements> transfer_diagram(ParamMap& pow1, ParamMap& between,
                                                     ParamMap& pow2) {
    if (pow1.size() != between.size() || pow2.size() == 0)
        throw Error("transfer_diagram: dimension mismatch");
    TransferImprovements imp;
    std::set<int> ch1, chb, ch2;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 1; i <= pow1.size(); ++i) {
            std::vector<int> a_side, b_side;
            for (int a : pow1.at(i).candidates())
                for (int v : between.at(a).candidates()) a_side.push_back(v);
            for (int b : between.at(i).candidates())
                for (int v : pow2.at(b).candidates()) b_side.push_back(v);
            std::sort(a_side.begin(), a_side.end());
            a_side.erase(std::unique(a_side.begin(), a_side.end()), a_side.end());
            std::sort(b_side.begin(), b_side.end());
            b_side.erase(std::unique(b_side.begin(), b_side.end()), b_side.end());
            std::vector<int> common;
            std::set_intersection(a_side.begin(), a_side.end(), b_side.begin(), b_side.end(),
                                  std::back_inserter(common));
            if (common.empty()) return std::nullopt;

            std::vector<int> keep1;
            for (int a : pow1.at(i).candidates())
                if (!intersect(between.at(a), common).empty()) keep1.push_back(a);
            bool local = false;
            if (!refine_entry(pow1, i, keep1, local)) return std::nullopt;
            if (local) {
                ch1.insert(i);
                changed = true;
                local = false;
            }
            std::vector<int> keepb;
            for (int b : between.at(i).candidates())
                if (!intersect(pow2.at(b), common).empty()) keepb.push_back(b);
            if (!refine_entry(between, i, keepb, local)) return std::nullopt;
            if (local) {
                chb.insert(i);
                changed = true;
                local = false;
            }
            if (pow1.at(i).determined()) {
                int a = pow1.at(i).value();
                if (!refine_entry(between, a, common, local)) return std::nullopt;
                if (local) {
                    chb.insert(a);
                    changed = true;
                    local = false;
                }
            }
            if (between.at(i).determined()) {
                int b = between.at(i).value();
                if (!refine_entry(pow2, b, common, local)) return std::nullopt;
                if (local) {
                    ch2.insert(b);
                    changed = true;
                    local = false;
                }
            }
        }
    }
    imp.inside1.assign(ch1.begin(), ch1.end());
    imp.between.assign(chb.begin(), chb.end());
    imp.inside2.assign(ch2.begin(), ch2.end());
    return imp;
}

std::optional<CommutativeImprovements> commutative_diagram(ParamMap& m1, ParamMap& m2,
                                                           ParamMap& m3, ParamMap& m4) {
    if (m1.size() != m3.size()) throw Error("commutative_diagram: dimension mismatch");
    CommutativeImprovements imp;
    std::set<int> c1, c2, c3, c4;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 1; i <= m1.size(); ++i) {
            std::vector<int> a_side, b_side;
            for (int a : m1.at(i).candidates())
                for (int v : m2.at(a).candidates()) a_side.push_back(v);
            for (int c : m3.at(i).candidates())
                for (int v : m4.at(c).candidates()) b_side.push_back(v);
            std::sort(a_side.begin(), a_side.end());
            a_side.erase(std::unique(a_side.begin(), a_side.end()), a_side.end());
            std::sort(b_side.begin(), b_side.end());
            b_side.erase(std::unique(b_side.begin(), b_side.end()), b_side.end());
            std::vector<int> common;
            std::set_intersection(a_side.begin(), a_side.end(), b_side.begin(), b_side.end(),
                                  std::back_inserter(common));
            if (common.empty()) return std::nullopt;
            std::vector<int> keep1;
            for (int a : m1.at(i).candidates())
                if (!intersect(m2.at(a), common).empty()) keep1.push_back(a);
            bool local = false;
            if (!refine_entry(m1, i, keep1, local)) return std::nullopt;
            if (local) c1.insert(i), changed = true, local = false;
            std::vector<int> keep3;
            for (int c : m3.at(i).candidates())
                if (!intersect(m4.at(c), common).empty()) keep3.push_back(c);
            if (!refine_entry(m3, i, keep3, local)) return std::nullopt;
            if (local) c3.insert(i), changed = true, local = false;
            if (m1.at(i).determined()) {
                int a = m1.at(i).value();
                if (!refine_entry(m2, a, common, local)) return std::nullopt;
                if (local) c2.insert(a), changed = true, local = false;
            }
            if (m3.at(i).determined()) {
                int c = m3.at(i).value();
                if (!refine_entry(m4, c, common, local)) return std::nullopt;
                if (local) c4.insert(c), changed = true, local = false;
            }
        }
    }
    imp.imp1.assign(c1.begin(), c1.end());
    imp.imp2.assign(c2.begin(), c2.end());
    imp.imp3.assign(c3.begin(), c3.end());
    imp.imp4.assign(c4.begin(), c4.end());
    return imp;
}

bool test_consistency(std::map<long, ParamMap>& pow_sub, ParamMap& fus,
                      std::map<long, ParamMap>& pow_big) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [p, psub] : pow_sub) {
            auto it = pow_big.find(p);
            if (it == pow_big.end()) continue;
            ParamMap before = fus;
            ParamMap before1 = psub, before2 = it->second;
            auto res = transfer_diagram(psub, fus, it->second);
            if (!res) return false;
            if (!(before == fus) || !(before1 == psub) || !(before2 == it->second))
                changed = true;
        }
    }
    return true;
}

bool congruences(const CharacterTable& tbl, const std::vector<ClassFunction>& chars,
                 ParamMap& pow, long p) {
    for (int i = 1; i <= tbl.num_classes(); ++i) {
        std::vector<int> keep;
        bool coprime = tbl.order_determined(i) && std::gcd(tbl.order(i), p) == 1;
        for (int j : pow.at(i).candidates()) {
            bool ok = true;
            for (auto& chi : chars) {
                if (coprime && chi.at(j) != chi.at(i).galois(p)) {
                    ok = false;
                    break;
                }
                Cyclotomic diff = chi.at(j) - chi.at(i).pow(p);
                if (!diff.is_integral() || !diff.integral_divisible_by(p)) {
                    ok = false;
                    break;
                }
            }
            if (ok) keep.push_back(j);
        }
        if (keep.empty()) return false;
        pow.at(i) = MapEntry(std::move(keep));
    }
    return true;
}

bool consider_smaller_powermaps(const CharacterTable& tbl, ParamMap& pow, long p) {
    for (int i = 1; i <= tbl.num_classes(); ++i) {
        if (!tbl.order_determined(i)) continue;
        long n = tbl.order(i);
        if (n > p) continue;
        std::vector<int> image;
        try {
            image = tbl.power_class_candidates(i, p % n);
        } catch (const Error&) {
            continue;  // a needed prime map is not available
        }
        bool local = false;
        if (!refine_entry(pow, i, image, local)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// parametrized refinement engine shared by the fusion and power map searches

namespace {

// Distinct values a parametrized class function can take at one position,
// with the map candidates yielding each value.
struct Alternatives {
    std::vector<Cyclotomic> values;
    std::vector<std::vector<int>> cands;  // parallel to values
};

enum class RefineOutcome { Dead, Unchanged, Improved, Skipped, Settled };

// One refinement pass of `map` against a single parametrized class function
// given by value_of(i, j): the value at position i if map(i) = j.  Completions
// are admissible when all scalar products with the test characters are
// integral (and nonnegative, for restrictions of characters).
RefineOutcome refine_one(const CharacterTable& target, ParamMap& map,
                         const std::function<Cyclotomic(int, int)>& value_of,
                         const std::vector<ClassFunction>& testchars, bool nonnegative,
                         const FusionParameters& params) {
    int n = map.size();
    std::vector<Alternatives> alts(n);
    std::vector<int> amb;
    Int total = 1;
    for (int i = 1; i <= n; ++i) {
        Alternatives& alt = alts[i - 1];
        for (int j : map.at(i).candidates()) {
            Cyclotomic v = value_of(i, j);
            auto it = std::find(alt.values.begin(), alt.values.end(), v);
            if (it == alt.values.end()) {
                alt.values.push_back(std::move(v));
                alt.cands.push_back({j});
            } else {
                alt.cands[it - alt.values.begin()].push_back(j);
            }
        }
        if (alt.values.size() > 1) {
            amb.push_back(i);
            total *= static_cast<long>(alt.values.size());
        }
    }
    auto admissible = [&](const std::vector<Cyclotomic>& sums) {
        for (auto& v : sums) {
            if (!v.is_rational()) return false;
            Rat q = v.is_zero() ? Rat(0) : v.rational_value();
            if (!is_integer(q)) return false;
            if (nonnegative && q < 0) return false;
        }
        return true;
    };
    size_t m = testchars.size();
    auto contribution = [&](int i, const Cyclotomic& v, std::vector<Cyclotomic>& sums,
                            bool subtract) {
        if (v.is_zero()) return;
        Cyclotomic weight = v * Cyclotomic(Rat(Int(1), target.centralizer(i)));
        for (size_t s = 0; s < m; ++s) {
            Cyclotomic term = weight * testchars[s].at(i).conjugate();
            sums[s] = subtract ? sums[s] - term : sums[s] + term;
        }
    };
    std::vector<Cyclotomic> sums(m, Cyclotomic(0));
    for (int i = 1; i <= n; ++i)
        if (alts[i - 1].values.size() == 1) contribution(i, alts[i - 1].values[0], sums, false);

    if (amb.empty())
        return admissible(sums) ? RefineOutcome::Settled : RefineOutcome::Dead;
    if (total < params.minamb || total > params.maxamb ||
        static_cast<int>(amb.size()) > params.maxlen)
        return RefineOutcome::Skipped;

    // odometer over the value choices at the ambiguous positions
    std::vector<size_t> idx(amb.size(), 0);
    for (int i : amb) contribution(i, alts[i - 1].values[0], sums, false);
    std::vector<std::set<size_t>> survivors(amb.size());
    bool any = false;
    while (true) {
        if (admissible(sums)) {
            any = true;
            for (size_t a = 0; a < amb.size(); ++a) survivors[a].insert(idx[a]);
        }
        size_t a = 0;
        while (a < amb.size()) {
            int i = amb[a];
            contribution(i, alts[i - 1].values[idx[a]], sums, true);
            idx[a] = (idx[a] + 1) % alts[i - 1].values.size();
            contribution(i, alts[i - 1].values[idx[a]], sums, false);
            if (idx[a] != 0) break;
            ++a;
        }
        if (a == amb.size()) break;
    }
    if (!any) return RefineOutcome::Dead;
    bool improved = false;
    for (size_t a = 0; a < amb.size(); ++a) {
        if (survivors[a].size() == alts[amb[a] - 1].values.size()) continue;
        std::vector<int> keep;
        for (size_t vi : survivors[a])
            for (int j : alts[amb[a] - 1].cands[vi]) keep.push_back(j);
        bool local = false;
        if (!refine_entry(map, amb[a], keep, local)) return RefineOutcome::Dead;
        if (local) improved = true;
    }
    return improved ? RefineOutcome::Improved : RefineOutcome::Unchanged;
}

struct SearchContext {
    const CharacterTable* target;
    const std::vector<ClassFunction>* testchars;
    std::vector<std::function<Cyclotomic(int, int)>> functions;
    bool nonnegative = true;
    FusionParameters params;
    std::vector<ParamMap> results;
    size_t leaves = 0;
    size_t leaf_bound = 10000000;

    // A character whose parametrized restriction became determined has been
    // verified once and stays determined in every descendant of the branch,
    // so it never needs rechecking below that node.
    bool refine_to_fixpoint(ParamMap& map, std::vector<bool>& settled) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t c = 0; c < functions.size(); ++c) {
                if (settled[c]) continue;
                RefineOutcome out =
                    refine_one(*target, map, functions[c], *testchars, nonnegative, params);
                if (out == RefineOutcome::Dead) return false;
                if (out == RefineOutcome::Improved) changed = true;
                if (out == RefineOutcome::Settled) settled[c] = true;
            }
        }
        return true;
    }

    void branch(ParamMap map, std::vector<bool> settled) {
        if (!refine_to_fixpoint(map, settled)) return;
        if (map.determined()) {
            if (++leaves > leaf_bound) throw Error("fusion search bound exceeded");
            results.push_back(std::move(map));
            return;
        }
        int pos = 0;
        size_t best = 0;
        for (int i = 1; i <= map.size(); ++i) {
            size_t c = map.at(i).count();
            if (c >= 2 && (pos == 0 || c < best)) {
                pos = i;
                best = c;
            }
        }
        for (int v : map.at(pos).candidates()) {
            ParamMap child = map;
            child.at(pos) = MapEntry(v);
            branch(std::move(child), settled);
        }
    }

    void run(const ParamMap& approx) {
        branch(approx, std::vector<bool>(functions.size(), false));
    }
};

}  // namespace

std::vector<ParamMap> fusions_allowed_by_restrictions(
    const CharacterTable& sub, const CharacterTable& big,
    const std::vector<ClassFunction>& sub_chars, const std::vector<ClassFunction>& big_chars,
    const ParamMap& approx, const FusionParameters& params) {
    (void)big;
    SearchContext ctx;
    ctx.target = &sub;
    ctx.testchars = &sub_chars;
    ctx.nonnegative = true;
    ctx.params = params;
    for (auto& chi : big_chars)
        ctx.functions.push_back([&chi](int, int j) { return chi.at(j); });
    ctx.run(approx);
    std::sort(ctx.results.begin(), ctx.results.end());
    return ctx.results;
}

std::vector<ParamMap> power_maps_allowed_by_symmetrizations(
    const CharacterTable& tbl, const std::vector<ClassFunction>& subchars,
    const std::vector<ClassFunction>& chars, const ParamMap& pow, long p,
    const FusionParameters& params) {
    std::vector<ClassFunction> testchars = subchars;
    for (auto& c : chars)
        if (std::find(testchars.begin(), testchars.end(), c) == testchars.end())
            testchars.push_back(c);
    SearchContext ctx;
    ctx.target = &tbl;
    ctx.testchars = &testchars;
    ctx.nonnegative = false;
    ctx.params = params;
    Cyclotomic invp{Rat(1, p)};
    for (auto& chi : chars)
        ctx.functions.push_back([&chi, p, invp](int i, int j) {
            return (chi.at(i).pow(p) - chi.at(j)) * invp;
        });
    ParamMap map = pow;
    std::vector<bool> settled(ctx.functions.size(), false);
    if (!ctx.refine_to_fixpoint(map, settled)) return {};
    return {map};
}

std::vector<ParamMap> possible_class_fusions(const CharacterTable& sub, const CharacterTable& big,
                                             const FusionOptions& options) {
    auto fus0 = init_fusion(sub, big);
    if (!fus0) return {};
    ParamMap fus = *fus0;
    if (options.prescribed) {
        if (!meet(fus, *options.prescribed)) return {};
    }
    std::map<long, ParamMap> pow_sub = sub.power_maps();
    std::map<long, ParamMap> pow_big = big.power_maps();
    if (!test_consistency(pow_sub, fus, pow_big)) return {};
    SearchContext ctx;
    ctx.target = &sub;
    ctx.testchars = &sub.irreducibles();
    ctx.nonnegative = true;
    ctx.params = options.parameters;
    if (options.search_bound.fits_ulong_p())
        ctx.leaf_bound = options.search_bound.get_ui();
    for (auto& chi : big.irreducibles())
        ctx.functions.push_back([&chi](int, int j) { return chi.at(j); });
    ctx.run(fus);
    std::vector<ParamMap> out;
    for (auto& m : ctx.results) {
        std::map<long, ParamMap> ps = sub.power_maps();
        std::map<long, ParamMap> pb = big.power_maps();
        ParamMap copy = m;
        if (test_consistency(ps, copy, pb)) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ParamMap> possible_power_maps(const CharacterTable& tbl, long p,
                                          const PowerMapOptions& options) {
    ParamMap pow = init_power_map(tbl, p);
    if (options.prescribed) {
        if (!meet(pow, PartialMap(*options.prescribed))) return {};
    }
    const auto& irr = tbl.irreducibles();
    if (!congruences(tbl, irr, pow, p)) return {};
    if (!consider_smaller_powermaps(tbl, pow, p)) return {};
    auto refined = power_maps_allowed_by_symmetrizations(tbl, irr, irr, pow, p,
                                                         options.parameters);
    if (refined.empty()) return {};
    pow = refined[0];
    if (indeterminateness(pow) > options.search_bound)
        throw Error("possible_power_maps: search bound exceeded");
    std::vector<ParamMap> out;
    for (auto& cand : contained_maps(pow, options.search_bound)) {
        ParamMap copy = cand;
        if (!congruences(tbl, irr, copy, p)) continue;
        bool ok = true;
        for (auto& chi : irr) {
            ClassFunction minus(tbl.num_classes());
            for (int i = 1; i <= tbl.num_classes(); ++i)
                minus.at(i) =
                    (chi.at(i).pow(p) - chi.at(cand.at(i).value())) * Cyclotomic(Rat(1, p));
            for (auto& other : irr) {
                Cyclotomic sp = scalar_product(tbl, minus, other);
                if (!sp.is_rational() ||
                    !is_integer(sp.is_zero() ? Rat(0) : sp.rational_value())) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ParamMap> representatives_fusions(const std::vector<Permutation>& sub_autos,
                                              const std::vector<ParamMap>& maps,
                                              const std::vector<Permutation>& big_autos) {
    std::set<std::vector<int>> seen;
    std::vector<ParamMap> reps;
    for (auto& m : maps) {
        std::vector<int> start = m.images();
        if (seen.count(start)) continue;
        std::set<std::vector<int>> orbit{start};
        std::vector<std::vector<int>> frontier{start};
        while (!frontier.empty()) {
            std::vector<std::vector<int>> next;
            for (auto& f : frontier) {
                for (auto& s : sub_autos) {
                    // act on positions: f' = f o s^{-1}
                    std::vector<int> g(f.size());
                    for (size_t i = 0; i < f.size(); ++i) g[s[i] - 1] = f[i];
                    if (orbit.insert(g).second) next.push_back(std::move(g));
                }
                for (auto& b : big_autos) {
                    // act on values
                    std::vector<int> g(f.size());
                    for (size_t i = 0; i < f.size(); ++i) g[i] = b[f[i] - 1];
                    if (orbit.insert(g).second) next.push_back(std::move(g));
                }
            }
            frontier = std::move(next);
        }
        reps.push_back(ParamMap(*orbit.begin()));
        for (auto& f : orbit) seen.insert(f);
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

}  // namespace chartab
