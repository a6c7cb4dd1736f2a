#include "chartab/extension.hpp"

#include <algorithm>

#include "chartab/chars.hpp"
#include "chartab/maps.hpp"

namespace chartab {

namespace {
bool member(const std::vector<int>& sorted, int v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}
void add_sorted(std::vector<int>& sorted, int v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) sorted.insert(it, v);
}
}  // namespace

bool SplitState::is_split(int c) const { return member(mustsplit, c); }
bool SplitState::is_nonsplit(int c) const { return member(mustnotsplit, c); }

void SplitState::add_split(int c, const std::string& reason) {
    if (is_split(c)) return;
    if (is_nonsplit(c)) throw Error("contradiction for class " + std::to_string(c));
    log.push_back("#I  class " + std::to_string(c) + " splits (" + reason + ")");
    add_sorted(mustsplit, c);
}

void SplitState::add_nonsplit(int c, const std::string& reason) {
    if (is_nonsplit(c)) return;
    if (is_split(c)) throw Error("contradiction for class " + std::to_string(c));
    log.push_back("#I  class " + std::to_string(c) + " does not split (" + reason + ")");
    add_sorted(mustnotsplit, c);
}

std::string ordinal(long n) {
    long mod100 = n % 100;
    const char* suffix = "th";
    if (mod100 < 11 || mod100 > 13) {
        switch (n % 10) {
            case 1: suffix = "st"; break;
            case 2: suffix = "nd"; break;
            case 3: suffix = "rd"; break;
        }
    }
    return std::to_string(n) + suffix;
}

std::vector<int> odd_order_classes_split(const CharacterTable& tbl) {
    std::vector<int> out;
    for (int i = 1; i <= tbl.num_classes(); ++i)
        if (tbl.order(i) % 2 == 1) out.push_back(i);
    return out;
}

void self_centralizing_classes_split(const CharacterTable& tbl, SplitState& state) {
    for (int i = 1; i <= tbl.num_classes(); ++i)
        if (tbl.centralizer(i) == Int(tbl.order(i)) && !state.is_split(i))
            state.add_split(i, "self-centralizing");
}

void odd_roots_of_splitting_classes_split(const CharacterTable& tbl, SplitState& state) {
    bool found = true;
    while (found) {
        found = false;
        for (auto& [p, map] : tbl.power_maps()) {
            if (p % 2 == 0) continue;
            for (int i = 1; i <= map.size(); ++i) {
                if (!map.at(i).determined()) continue;
                int img = map.at(i).value();
                if (state.is_split(img) && !state.is_split(i)) {
                    state.add_split(i, ordinal(p) + " root of " + std::to_string(img));
                    found = true;
                }
            }
        }
    }
}

void not_splitting_classes_of_subgroup_do_not_split(const ParamMap& sub_factor_fusion,
                                                    const ParamMap& sub_to_g, SplitState& state) {
    PartialMap inv = inverse_map(sub_factor_fusion, sub_to_g.size());
    for (int j = 1; j <= sub_to_g.size(); ++j) {
        if (!inv.bound(j) || !inv.at(j).determined()) continue;
        int img = sub_to_g.at(j).value();
        if (!state.is_nonsplit(img)) state.add_nonsplit(img, "as in subgroup");
    }
}

void splitting_classes_with_odd_centralizer_index_split(const CharacterTable& sub,
                                                        const CharacterTable& big,
                                                        const ParamMap& sub_to_g,
                                                        const ParamMap& sub_factor_fusion,
                                                        SplitState& state) {
    PartialMap inv = inverse_map(sub_factor_fusion, sub.num_classes());
    for (int i = 1; i <= sub_to_g.size(); ++i) {
        if (!inv.bound(i) || inv.at(i).determined()) continue;  // only split classes of U
        int img = sub_to_g.at(i).value();
        Int index = big.centralizer(img) / sub.centralizer(i);
        if (big.centralizer(img) % sub.centralizer(i) != 0)
            throw Error("centralizer order does not divide");
        if (index % 2 == 1 && !state.is_split(img))
            state.add_split(img, "odd centralizer index");
    }
    odd_roots_of_splitting_classes_split(big, state);
}

ContributionRecord contribution_data(const CharacterTable& sub, const CharacterTable& big,
                                     const PartialMap& inv, const ClassFunction& chiprime,
                                     const std::vector<int>& mustsplit) {
    ContributionRecord rec;
    rec.safepart = Cyclotomic(0);
    Rat sizesq(sub.group_order() * sub.group_order());
    auto is_rat_int = [](const Cyclotomic& v) {
        return v.is_rational() && (v.is_zero() || is_integer(v.rational_value()));
    };
    for (int i = 1; i <= inv.size(); ++i) {
        if (!inv.bound(i)) continue;
        Cyclotomic weight{Rat(big.centralizer(i)) / sizesq};
        if (inv.at(i).determined()) {
            int j = inv.at(i).value();
            Cyclotomic val = Cyclotomic(sub.class_size(j)) * chiprime.at(j);
            val = weight * val * val.conjugate();
            if (is_rat_int(val)) continue;
            if (member(mustsplit, i)) {
                rec.safepart += val;
            } else {
                rec.contrib[i] = {Cyclotomic(0), val};
                std::sort(rec.contrib[i].begin(), rec.contrib[i].end());
                rec.zeroonlyifnonsplit[i] = true;
                rec.size *= 2;
            }
        } else {
            const auto& pre = inv.at(i).candidates();
            if (pre.size() > 24) throw Error("contribution_data: too many preimage classes");
            std::vector<Cyclotomic> choices;
            for (int j : pre) choices.push_back(Cyclotomic(sub.class_size(j)) * chiprime.at(j));
            std::vector<Cyclotomic> cand;
            for (size_t mask = 0; mask < (size_t(1) << pre.size()); ++mask) {
                Cyclotomic sum(0);
                for (size_t b = 0; b < pre.size(); ++b)
                    sum += (mask >> b) & 1 ? -choices[b] : choices[b];
                Cyclotomic val = weight * sum * sum.conjugate();
                if (std::find(cand.begin(), cand.end(), val) == cand.end())
                    cand.push_back(std::move(val));
            }
            std::sort(cand.begin(), cand.end());
            bool all_int = true;
            for (auto& v : cand)
                if (!is_rat_int(v)) all_int = false;
            if (all_int) continue;
            if (cand.size() == 1) {
                if (member(mustsplit, i)) {
                    rec.safepart += cand[0];
                } else {
                    if (std::find(cand.begin(), cand.end(), Cyclotomic(0)) == cand.end())
                        cand.insert(cand.begin(), Cyclotomic(0));
                    std::sort(cand.begin(), cand.end());
                    rec.zeroonlyifnonsplit[i] = true;
                    rec.contrib[i] = cand;
                    rec.size *= static_cast<long>(cand.size());
                }
            } else {
                if (!member(mustsplit, i) &&
                    std::find(cand.begin(), cand.end(), Cyclotomic(0)) == cand.end()) {
                    cand.insert(cand.begin(), Cyclotomic(0));
                    std::sort(cand.begin(), cand.end());
                    rec.zeroonlyifnonsplit[i] = true;
                }
                rec.contrib[i] = cand;
                rec.size *= static_cast<long>(cand.size());
            }
        }
    }
    for (auto& [c, vals] : rec.contrib) rec.bound.push_back(c);
    return rec;
}

std::vector<std::vector<Cyclotomic>> integral_contributions(const ContributionRecord& rec) {
    std::vector<std::vector<Cyclotomic>> solutions;
    size_t len = rec.bound.size();
    std::vector<const std::vector<Cyclotomic>*> images;
    for (int c : rec.bound) images.push_back(&rec.contrib.at(c));
    std::vector<size_t> index(len, 0);
    std::vector<int> direction(len, 1);
    Cyclotomic norm = rec.safepart;
    for (size_t a = 0; a < len; ++a) norm += (*images[a])[0];
    auto is_rat_int = [](const Cyclotomic& v) {
        return v.is_rational() && (v.is_zero() || is_integer(v.rational_value()));
    };
    auto snapshot = [&]() {
        std::vector<Cyclotomic> tuple;
        tuple.reserve(len);
        for (size_t a = 0; a < len; ++a) tuple.push_back((*images[a])[index[a]]);
        return tuple;
    };
    if (is_rat_int(norm)) solutions.push_back(snapshot());
    while (true) {
        // advance one position, changing a single coordinate per step
        size_t a = 0;
        while (a < len && ((index[a] + 1 == images[a]->size() && direction[a] == 1) ||
                           (index[a] == 0 && direction[a] == -1))) {
            direction[a] = -direction[a];
            ++a;
        }
        if (a >= len) return solutions;
        norm -= (*images[a])[index[a]];
        index[a] = static_cast<size_t>(static_cast<long>(index[a]) + direction[a]);
        norm += (*images[a])[index[a]];
        if (is_rat_int(norm)) solutions.push_back(snapshot());
    }
}

void evaluate_contributions(const ContributionRecord& rec,
                            const std::vector<std::vector<Cyclotomic>>& tuples,
                            SplitState& state) {
    for (size_t a = 0; a < rec.bound.size(); ++a) {
        int c = rec.bound[a];
        std::vector<Cyclotomic> seen;
        for (auto& tup : tuples)
            if (std::find(seen.begin(), seen.end(), tup[a]) == seen.end()) seen.push_back(tup[a]);
        auto zero_flag = rec.zeroonlyifnonsplit.count(c) && rec.zeroonlyifnonsplit.at(c);
        if (seen.size() == 1 && seen[0].is_zero()) {
            if (zero_flag && !state.is_nonsplit(c)) state.add_nonsplit(c, "contribution criterion");
        } else if (seen.size() == 1 && seen[0].is_rational()) {
            if (!state.is_split(c)) state.add_split(c, "contribution criterion");
        } else if (seen.size() > 1 &&
                   std::find(seen.begin(), seen.end(), Cyclotomic(0)) == seen.end()) {
            if (!state.is_split(c)) state.add_split(c, "contribution criterion");
        }
    }
}

void compute_contributions(const CharacterTable& sub, const CharacterTable& big,
                           const ParamMap& sub_to_g, const std::vector<ClassFunction>& chars,
                           const Int& bound, SplitState& state) {
    PartialMap inv = inverse_map(sub_to_g, big.num_classes());
    while (true) {
        for (int c : state.mustnotsplit)
            if (c <= inv.size() && inv.bound(c)) inv.unset(c);
        auto known_split = state.mustsplit;
        auto known_nonsplit = state.mustnotsplit;
        std::vector<ContributionRecord> candidates;
        for (auto& chi : chars) {
            ContributionRecord r = contribution_data(sub, big, inv, chi, state.mustsplit);
            if (r.size < bound) candidates.push_back(std::move(r));
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const ContributionRecord& a, const ContributionRecord& b) {
                             return a.size < b.size;
                         });
        for (auto& r : candidates) {
            auto res = integral_contributions(r);
            if (res.empty()) throw Error("no solution");
            evaluate_contributions(r, res, state);
            odd_roots_of_splitting_classes_split(big, state);
        }
        if (known_split == state.mustsplit && known_nonsplit == state.mustnotsplit) break;
    }
}

void compute_contributions2(const CharacterTable& s2, const CharacterTable& cover_s,
                            const CharacterTable& t2, const CharacterTable& cover_t,
                            const ParamMap& s2fust2, const ParamMap& sfus_s2_embedding,
                            const ParamMap& cover_fusion, const ParamMap& tfust2,
                            const std::vector<ClassFunction>& chars, const Int& bound,
                            SplitState& state, const std::vector<int>& projection) {
    PartialMap inv = inverse_map(s2fust2, t2.num_classes());
    while (true) {
        for (int c : state.mustnotsplit)
            if (c <= inv.size() && inv.bound(c)) inv.unset(c);
        for (int i = 1; i <= tfust2.size(); ++i) {
            int img = tfust2.at(i).value();
            if (inv.bound(img)) inv.unset(img);
        }
        auto known_split = state.mustsplit;
        auto known_nonsplit = state.mustnotsplit;
        std::vector<ContributionRecord> candidates;
        for (auto& chi : chars) {
            ClassFunction chiprime(s2.num_classes());
            for (int j = 1; j <= s2.num_classes(); ++j) chiprime.at(j) = chi.at(projection[j - 1]);
            ContributionRecord r = contribution_data(s2, t2, inv, chiprime, state.mustsplit);
            if (r.size < bound) {
                // restrict the character to the cover subgroup, induce to 2.G
                ClassFunction res(cover_s.num_classes());
                for (int i = 1; i <= cover_s.num_classes(); ++i)
                    res.at(i) = chi.at(sfus_s2_embedding.at(i).value());
                auto ind = induce_by_fusion(cover_s, cover_t, {res}, cover_fusion);
                Rat half = rational_scalar_product(cover_t, ind[0], ind[0]) / 2;
                r.safepart += Cyclotomic(half);
                candidates.push_back(std::move(r));
            }
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const ContributionRecord& a, const ContributionRecord& b) {
                             return a.size < b.size;
                         });
        for (auto& r : candidates) {
            auto res = integral_contributions(r);
            if (res.empty()) throw Error("no solution");
            evaluate_contributions(r, res, state);
            odd_roots_of_splitting_classes_split(t2, state);
        }
        if (known_split == state.mustsplit && known_nonsplit == state.mustnotsplit) break;
    }
}

CharacterTable table_head(const CharacterTable& t, const std::vector<int>& tosplit,
                          const std::vector<int>& invmustlift,
                          const std::vector<int>& invmaylift) {
    std::vector<int> mustlift = invmustlift;
    std::vector<int> maylift = invmaylift;
    if (!invmustlift.empty() || !invmaylift.empty()) {
        for (int i = 2; i <= t.num_classes(); ++i) {
            if (t.order(i) % 2 != 0) continue;
            int pow = t.power_class(i, t.order(i) / 2);
            if (std::find(invmustlift.begin(), invmustlift.end(), pow) != invmustlift.end())
                mustlift.push_back(i);
            else if (std::find(invmaylift.begin(), invmaylift.end(), pow) != invmaylift.end())
                maylift.push_back(i);
        }
    }
    auto lifts = [](const std::vector<int>& v, int i) {
        return std::find(v.begin(), v.end(), i) != v.end();
    };
    std::vector<int> factor;  // head class -> class of t
    std::vector<Int> cents;
    std::vector<std::vector<long>> orders;
    for (int i = 1; i <= t.num_classes(); ++i) {
        long ord = t.order(i);
        if (member(tosplit, i)) {
            factor.push_back(i);
            factor.push_back(i);
            cents.push_back(t.centralizer(i) * 2);
            cents.push_back(t.centralizer(i) * 2);
            if (ord % 2 == 1) {
                orders.push_back({ord});
                orders.push_back({2 * ord});
            } else if (lifts(mustlift, i)) {
                orders.push_back({2 * ord});
                orders.push_back({2 * ord});
            } else if (lifts(maylift, i)) {
                orders.push_back({ord, 2 * ord});
                orders.push_back({ord, 2 * ord});
            } else {
                orders.push_back({ord});
                orders.push_back({ord});
            }
        } else {
            factor.push_back(i);
            cents.push_back(t.centralizer(i));
            if (lifts(mustlift, i))
                orders.push_back({2 * ord});
            else if (lifts(maylift, i))
                orders.push_back({ord, 2 * ord});
            else
                orders.push_back({ord});
        }
    }
    CharacterTable head = CharacterTable::build("2." + t.identifier(), std::move(orders),
                                                std::move(cents), t.group_order() * 2);
    head.store_fusion(t.identifier(), ParamMap(factor));
    return head;
}

std::optional<ParamMap> initial_fusion(const CharacterTable& cover_sub,
                                       const CharacterTable& cover_big,
                                       const ParamMap& sub_factor, const ParamMap& big_factor,
                                       const ParamMap& sub_to_g, std::vector<int> defined) {
    auto fus0 = init_fusion(cover_sub, cover_big);
    if (!fus0) return std::nullopt;
    ParamMap fus = *fus0;
    int max_g = 0;
    for (int i = 1; i <= sub_to_g.size(); ++i)
        for (int v : sub_to_g.at(i).candidates()) max_g = std::max(max_g, v);
    for (int i = 1; i <= big_factor.size(); ++i)
        for (int v : big_factor.at(i).candidates()) max_g = std::max(max_g, v);
    PartialMap comp = compose(inverse_map(big_factor, max_g),
                              compose(PartialMap(sub_to_g), PartialMap(sub_factor)));
    if (!meet(fus, comp)) return std::nullopt;

    PartialMap inv = inverse_map(sub_factor, [&] {
        int m = 0;
        for (int i = 1; i <= sub_factor.size(); ++i)
            for (int v : sub_factor.at(i).candidates()) m = std::max(m, v);
        return m;
    }());
    for (int j = 1; j <= inv.size(); ++j) {
        if (!inv.bound(j)) continue;
        if (!inv.at(j).determined()) {
            const auto& pre = inv.at(j).candidates();
            std::vector<int> cands = fus.at(pre[0]).candidates();
            if (fus.at(pre[0]) == fus.at(pre[1]) && cands.size() > 1) {
                // both preimages target the same candidate pair; the choice is
                // free when the underlying classes are not yet defined
                std::vector<int> under;
                for (int v : cands) under.push_back(big_factor.at(v).value());
                bool fresh = true;
                for (int u : under)
                    if (std::find(defined.begin(), defined.end(), u) != defined.end())
                        fresh = false;
                if (fresh) {
                    fus.at(pre[0]) = MapEntry(cands[0]);
                    fus.at(pre[1]) = MapEntry(cands[1]);
                    for (int u : under)
                        if (std::find(defined.begin(), defined.end(), u) == defined.end())
                            defined.push_back(u);
                }
            }
        } else if (!fus.at(inv.at(j).value()).determined()) {
            // the class splits in the image but not in the preimage
            return std::nullopt;
        }
    }
    return fus;
}

std::optional<ParamMap> initial_fusion2(const CharacterTable& cover_sub2,
                                        const CharacterTable& cover_big2,
                                        const ParamMap& sub2_factor, const ParamMap& big2_factor,
                                        const ParamMap& s2fust2, const ParamMap& sub_embedding,
                                        const ParamMap& cover_big_embedding,
                                        const ParamMap& cover_fusion, std::vector<int> defined) {
    auto fus0 = init_fusion(cover_sub2, cover_big2);
    if (!fus0) return std::nullopt;
    ParamMap fus = *fus0;
    int max_t2 = 0;
    for (int i = 1; i <= s2fust2.size(); ++i)
        for (int v : s2fust2.at(i).candidates()) max_t2 = std::max(max_t2, v);
    for (int i = 1; i <= big2_factor.size(); ++i)
        for (int v : big2_factor.at(i).candidates()) max_t2 = std::max(max_t2, v);
    // right face of the cube
    PartialMap comp = compose(inverse_map(big2_factor, max_t2),
                              compose(PartialMap(s2fust2), PartialMap(sub2_factor)));
    if (!meet(fus, comp)) return std::nullopt;
    // bottom face of the cube
    int max_s2cover = 0;
    for (int i = 1; i <= sub_embedding.size(); ++i)
        for (int v : sub_embedding.at(i).candidates()) max_s2cover = std::max(max_s2cover, v);
    max_s2cover = std::max(max_s2cover, cover_sub2.num_classes());
    PartialMap comp2 = compose(PartialMap(cover_big_embedding),
                               compose(PartialMap(cover_fusion),
                                       inverse_map(sub_embedding, max_s2cover)));
    if (!meet(fus, comp2)) return std::nullopt;

    PartialMap inv = inverse_map(sub2_factor, [&] {
        int m = 0;
        for (int i = 1; i <= sub2_factor.size(); ++i)
            for (int v : sub2_factor.at(i).candidates()) m = std::max(m, v);
        return m;
    }());
    for (int j = 1; j <= inv.size(); ++j) {
        if (!inv.bound(j)) continue;
        if (!inv.at(j).determined()) {
            const auto& pre = inv.at(j).candidates();
            std::vector<int> cands = fus.at(pre[0]).candidates();
            if (fus.at(pre[0]) == fus.at(pre[1]) && cands.size() > 1) {
                bool fresh = true;
                for (int v : cands)
                    if (std::find(defined.begin(), defined.end(), v) != defined.end())
                        fresh = false;
                if (fresh) {
                    fus.at(pre[0]) = MapEntry(cands[0]);
                    fus.at(pre[1]) = MapEntry(cands[1]);
                    for (int v : cands)
                        if (std::find(defined.begin(), defined.end(), v) == defined.end())
                            defined.push_back(v);
                }
            }
        } else if (!fus.at(inv.at(j).value()).determined()) {
            return std::nullopt;
        }
    }
    return fus;
}

bool use_induced_class_function(const CharacterTable& cover_sub, const CharacterTable& cover_big,
                                const ClassFunction& chi, const ParamMap& sub_factor,
                                ParamMap& fus) {
    ParamMap localfus = fus;
    std::vector<int> unknown;
    for (int i = 1; i <= fus.size(); ++i) {
        if (!fus.at(i).determined()) {
            if (chi.at(i).is_zero())
                localfus.at(i) = MapEntry(fus.at(i).candidates()[0]);
            else
                unknown.push_back(i);
        }
    }
    PartialMap inv = inverse_map(sub_factor, [&] {
        int m = 0;
        for (int i = 1; i <= sub_factor.size(); ++i)
            for (int v : sub_factor.at(i).candidates()) m = std::max(m, v);
        return m;
    }());
    std::vector<std::pair<int, int>> swaps;
    for (int i = 1; i <= localfus.size(); ++i) {
        if (localfus.at(i).determined()) continue;
        std::vector<int> pre = inv.at(sub_factor.at(i).value()).candidates();
        if (pre.size() != 2) throw Error("use_induced_class_function: preimage is not a pair");
        swaps.emplace_back(pre[0], pre[1]);
        std::vector<int> cands = localfus.at(i).candidates();
        localfus.at(pre[0]) = MapEntry(cands[0]);
        localfus.at(pre[1]) = MapEntry(cands[1]);
    }
    std::vector<ParamMap> good;
    size_t total = size_t(1) << swaps.size();
    if (swaps.size() > 24) throw Error("use_induced_class_function: too many swaps");
    for (size_t mask = 0; mask < total; ++mask) {
        ParamMap map = localfus;
        for (size_t b = 0; b < swaps.size(); ++b)
            if ((mask >> b) & 1) {
                MapEntry tmp = map.at(swaps[b].first);
                map.at(swaps[b].first) = map.at(swaps[b].second);
                map.at(swaps[b].second) = tmp;
            }
        auto ind = induce_by_fusion(cover_sub, cover_big, {chi}, map);
        Cyclotomic norm = scalar_product(cover_big, ind[0], ind[0]);
        if (norm.is_rational() && is_integer(norm.is_zero() ? Rat(0) : norm.rational_value()))
            good.push_back(std::move(map));
    }
    if (good.empty()) return false;
    for (int i : unknown) {
        bool agree = true;
        int v = good[0].at(i).value();
        for (auto& m : good)
            if (m.at(i).value() != v) agree = false;
        if (agree) fus.at(i) = MapEntry(v);
    }
    return true;
}

namespace {
std::optional<ParamMap> run_tests(const CharacterTable& cover_sub,
                                  const CharacterTable& cover_big, const ParamMap& sub_factor,
                                  std::optional<ParamMap> fus,
                                  const std::vector<ClassFunction>& testchars) {
    if (!fus) return std::nullopt;
    std::vector<int> ambiguous;
    for (int i = 1; i <= fus->size(); ++i)
        if (!fus->at(i).determined()) ambiguous.push_back(i);
    std::vector<std::pair<long, size_t>> order;
    for (size_t c = 0; c < testchars.size(); ++c) {
        long zeros = 0;
        for (int i : ambiguous)
            if (testchars[c].at(i).is_zero()) ++zeros;
        order.emplace_back(-zeros, c);
    }
    std::stable_sort(order.begin(), order.end());
    for (auto& [key, c] : order)
        if (!use_induced_class_function(cover_sub, cover_big, testchars[c], sub_factor, *fus))
            return std::nullopt;
    return fus;
}
}  // namespace

std::optional<ParamMap> run_one_test(const CharacterTable& cover_sub,
                                     const CharacterTable& cover_big,
                                     const ParamMap& sub_factor, const ParamMap& big_factor,
                                     const ParamMap& sub_to_g,
                                     const std::vector<ClassFunction>& testchars,
                                     const std::vector<int>& defined) {
    auto fus = initial_fusion(cover_sub, cover_big, sub_factor, big_factor, sub_to_g, defined);
    return run_tests(cover_sub, cover_big, sub_factor, std::move(fus), testchars);
}

std::optional<ParamMap> run_one_test2(const CharacterTable& cover_sub2,
                                      const CharacterTable& cover_big2,
                                      const ParamMap& sub2_factor, const ParamMap& big2_factor,
                                      const ParamMap& s2fust2, const ParamMap& sub_embedding,
                                      const ParamMap& cover_big_embedding,
                                      const ParamMap& cover_fusion,
                                      const std::vector<ClassFunction>& testchars,
                                      const std::vector<int>& defined) {
    auto fus = initial_fusion2(cover_sub2, cover_big2, sub2_factor, big2_factor, s2fust2,
                               sub_embedding, cover_big_embedding, cover_fusion, defined);
    return run_tests(cover_sub2, cover_big2, sub2_factor, std::move(fus), testchars);
}

InducedBundle split_fusion_and_characters(const InducedBundle& bundle, const CharacterTable& t,
                                          const std::vector<int>& tosplit) {
    const ParamMap& fusion = bundle.factor_fusion;
    PartialMap inv = inverse_map(fusion, t.num_classes());
    std::vector<int> tosplit_positions;
    for (int c : tosplit) {
        if (!inv.bound(c)) throw Error("split_fusion_and_characters: class not in the image");
        if (!inv.at(c).determined())
            throw Error("the classes in " + std::to_string(c) + " were already split");
        tosplit_positions.push_back(inv.at(c).value());
    }
    std::sort(tosplit_positions.begin(), tosplit_positions.end());
    for (auto& chi : bundle.characters)
        for (int p : tosplit_positions)
            if (!chi.at(p).is_zero())
                throw Error("all characters must vanish on the classes to be split");
    int n = fusion.size();
    std::vector<int> spl;
    for (int i = 1; i <= n; ++i) spl.push_back(i);
    for (int p : tosplit_positions) spl.push_back(p);
    std::sort(spl.begin(), spl.end());
    InducedBundle out;
    {
        std::vector<int> images;
        for (int p : spl) images.push_back(fusion.at(p).value());
        out.factor_fusion = ParamMap(images);
    }
    for (auto& chi : bundle.characters) {
        ClassFunction f(static_cast<int>(spl.size()));
        for (size_t pos = 0; pos < spl.size(); ++pos) f.at(static_cast<int>(pos) + 1) = chi.at(spl[pos]);
        out.characters.push_back(std::move(f));
    }
    if (bundle.map) {
        for (int v : *bundle.map)
            if (std::binary_search(tosplit_positions.begin(), tosplit_positions.end(), v))
                throw Error("the classes to be split must not occur in the subgroup");
        std::vector<int> boundary = tosplit_positions;
        boundary.push_back(n + 1);
        std::vector<int> shift(n + 1, 0);
        for (size_t a = 0; a + 1 < boundary.size(); ++a)
            for (int j = boundary[a]; j < boundary[a + 1] && j <= n; ++j)
                shift[j] = static_cast<int>(a) + 1;
        std::vector<int> adjusted;
        for (int v : *bundle.map) adjusted.push_back(v + shift[v]);
        out.map = adjusted;
    }
    return out;
}

void set_galois_info(std::map<long, ParamMap>& powermaps, std::pair<int, int> classes,
                     const CharacterTable& tbl, const std::vector<long>& primes,
                     const Cyclotomic& x) {
    long ord = tbl.order(classes.first);
    for (long p : primes) {
        if (ord % p == 0) continue;
        auto it = powermaps.find(p);
        if (it == powermaps.end()) continue;
        if (x.galois(p) == x) {
            it->second.at(classes.first) = MapEntry(classes.first);
            it->second.at(classes.second) = MapEntry(classes.second);
        } else {
            it->second.at(classes.first) = MapEntry(classes.second);
            it->second.at(classes.second) = MapEntry(classes.first);
        }
    }
}

}  // namespace chartab
