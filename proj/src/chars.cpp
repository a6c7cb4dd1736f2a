#include "chartab/chars.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace chartab {

std::vector<ClassFunction> induce_by_fusion(const CharacterTable& sub, const CharacterTable& big,
                                            const std::vector<ClassFunction>& chars,
                                            const ParamMap& fus) {
    if (!fus.determined()) throw Error("induce_by_fusion: fusion map not determined");
    if (fus.size() != sub.num_classes()) throw Error("induce_by_fusion: length mismatch");
    for (int i = 1; i <= fus.size(); ++i)
        if (fus.at(i).value() < 1 || fus.at(i).value() > big.num_classes())
            throw Error("induce_by_fusion: image class " + std::to_string(fus.at(i).value()) +
                        " outside the target table");
    std::vector<ClassFunction> out;
    out.reserve(chars.size());
    for (auto& chi : chars) {
        if (chi.size() != sub.num_classes()) throw Error("induce_by_fusion: character length");
        ClassFunction psi(big.num_classes());
        for (int i = 1; i <= sub.num_classes(); ++i) {
            if (chi.at(i).is_zero()) continue;
            int j = fus.at(i).value();
            psi.at(j) += chi.at(i) * Cyclotomic(Rat(Int(1), sub.centralizer(i)));
        }
        for (int j = 1; j <= big.num_classes(); ++j)
            psi.at(j) *= Cyclotomic(big.centralizer(j));
        out.push_back(std::move(psi));
    }
    return out;
}

std::vector<ClassFunction> induced_cyclic(const CharacterTable& tbl,
                                          const std::vector<int>& classes,
                                          InducedCyclicMode mode) {
    std::set<ClassFunction> out;
    for (int c : classes) {
        long n = tbl.order(c);
        std::vector<int> power_of(n);
        for (long m = 0; m < n; ++m) {
            std::vector<int> cand = tbl.power_class_candidates(c, m);
            if (cand.size() != 1)
                throw Error("induced_cyclic: power map ambiguous at class " + std::to_string(c));
            power_of[m] = cand[0];
        }
        std::vector<long> ks;
        if (mode == InducedCyclicMode::All)
            for (long k = 0; k < n; ++k) ks.push_back(k);
        else
            ks.push_back(1);
        for (long k : ks) {
            ClassFunction ind(tbl.num_classes());
            for (long m = 0; m < n; ++m)
                ind.at(power_of[m]) += Cyclotomic::root_of_unity(n, k * m);
            for (int j = 1; j <= tbl.num_classes(); ++j)
                ind.at(j) *= Cyclotomic(Rat(tbl.centralizer(j), Int(n)));
            out.insert(std::move(ind));
        }
    }
    return std::vector<ClassFunction>(out.begin(), out.end());
}

std::vector<ClassFunction> restrict_by_fusion(const CharacterTable& big,
                                              const CharacterTable& sub,
                                              const std::vector<ClassFunction>& chars,
                                              const ParamMap& fus) {
    (void)big;
    if (!fus.determined()) throw Error("restrict_by_fusion: fusion map not determined");
    std::vector<ClassFunction> out;
    out.reserve(chars.size());
    for (auto& chi : chars) {
        ClassFunction res(sub.num_classes());
        for (int i = 1; i <= sub.num_classes(); ++i) res.at(i) = chi.at(fus.at(i).value());
        out.push_back(std::move(res));
    }
    return out;
}

ReduceResult reduce(const CharacterTable& tbl, const std::vector<ClassFunction>& irreducibles,
                    const std::vector<ClassFunction>& chars) {
    ReduceResult result;
    std::vector<ClassFunction> known = irreducibles;
    auto reduce_once = [&](const ClassFunction& chi) {
        ClassFunction red = chi;
        for (auto& iota : known) {
            Cyclotomic sp = scalar_product(tbl, red, iota);
            if (sp.is_zero()) continue;
            if (!sp.is_rational() || !is_integer(sp.rational_value()))
                throw Error("reduce: non-integral coefficient " + sp.to_string() +
                            " (input is not a virtual character)");
            red = red - iota.scaled(sp);
        }
        return red;
    };
    std::vector<ClassFunction> work = chars;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<ClassFunction> keep;
        for (auto& chi : work) {
            ClassFunction red = reduce_once(chi);
            if (red.is_zero()) continue;
            Rat norm = rational_scalar_product(tbl, red, red);
            if (norm == 1) {
                Cyclotomic deg = red.degree();
                if (!deg.is_rational()) throw Error("reduce: irrational degree");
                if (deg.rational_value() < 0) red = -red;
                if (red.degree().rational_value() == 0)
                    throw Error("reduce: norm-1 remainder of degree zero");
                known.push_back(red);
                result.irreducibles.push_back(red);
                changed = true;
            } else {
                keep.push_back(std::move(red));
            }
        }
        work = std::move(keep);
    }
    result.remainders = std::move(work);
    return result;
}

std::vector<ClassFunction> tensor(const std::vector<ClassFunction>& chars1,
                                  const std::vector<ClassFunction>& chars2) {
    std::set<ClassFunction> out;
    for (auto& a : chars1)
        for (auto& b : chars2) out.insert(a * b);
    return std::vector<ClassFunction>(out.begin(), out.end());
}

// ---------------------------------------------------------------------------
// symmetric group character data (Murnaghan-Nakayama)

namespace {

void gen_partitions(int n, int maxpart, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, maxpart); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

// chi_lambda(mu) by border strip removal on beta-sets
long mn_value(std::vector<int> beta, const std::vector<int>& mu, size_t pos) {
    if (pos == mu.size()) return 1;
    int r = mu[pos];
    long total = 0;
    std::set<int> bset(beta.begin(), beta.end());
    for (size_t t = 0; t < beta.size(); ++t) {
        int b = beta[t];
        if (b - r < 0 || bset.count(b - r)) continue;
        int height = 0;
        for (int x : beta)
            if (b - r < x && x < b) ++height;
        std::vector<int> nb = beta;
        nb[t] = b - r;
        long sign = (height % 2 == 0) ? 1 : -1;
        total += sign * mn_value(std::move(nb), mu, pos + 1);
    }
    return total;
}

}  // namespace

const SymmetricGroupData& symmetric_group_data(int n) {
    if (n < 1 || n > 7) throw Error("symmetric group data available for 1 <= n <= 7");
    static std::mutex mtx;
    static std::map<int, SymmetricGroupData> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    SymmetricGroupData data;
    std::vector<int> cur;
    gen_partitions(n, n, cur, data.partitions);
    Int factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    for (auto& mu : data.partitions) {
        std::map<int, int> mult;
        for (int part : mu) mult[part]++;
        Int denom = 1;
        for (auto& [j, m] : mult) {
            for (int t = 0; t < m; ++t) denom *= j;
            for (int t = 2; t <= m; ++t) denom *= t;
        }
        data.class_sizes.push_back(factorial / denom);
    }
    for (auto& lambda : data.partitions) {
        std::vector<int> beta;
        int k = static_cast<int>(lambda.size());
        for (int i = 0; i < k; ++i) beta.push_back(lambda[i] + (k - 1 - i));
        std::vector<long> row;
        for (auto& mu : data.partitions) row.push_back(mn_value(beta, mu, 0));
        data.character_values.push_back(std::move(row));
    }
    return cache[n] = std::move(data);
}

namespace {

// chi evaluated on the c-th power of class i; candidate images must agree.
Cyclotomic value_at_power(const CharacterTable& tbl, const ClassFunction& chi, int i, long c) {
    std::vector<int> cands = tbl.power_class_candidates(i, c);
    Cyclotomic v = chi.at(cands[0]);
    for (size_t t = 1; t < cands.size(); ++t)
        if (chi.at(cands[t]) != v)
            throw Error("ambiguous power map at class " + std::to_string(i) +
                        " with differing character values");
    return v;
}

}  // namespace

std::vector<ClassFunction> symmetrizations(const CharacterTable& tbl,
                                           const std::vector<ClassFunction>& chars, int n) {
    const SymmetricGroupData& sym = symmetric_group_data(n);
    Int factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    std::vector<ClassFunction> out;
    for (auto& chi : chars) {
        // cache chi(g^c) per class and cycle length
        std::vector<std::vector<Cyclotomic>> powvals(tbl.num_classes(),
                                                     std::vector<Cyclotomic>(n + 1));
        for (int i = 1; i <= tbl.num_classes(); ++i)
            for (long c = 1; c <= n; ++c) powvals[i - 1][c] = value_at_power(tbl, chi, i, c);
        for (size_t l = 0; l < sym.partitions.size(); ++l) {
            ClassFunction f(tbl.num_classes());
            for (int i = 1; i <= tbl.num_classes(); ++i) {
                Cyclotomic acc(0);
                for (size_t m = 0; m < sym.partitions.size(); ++m) {
                    long psi = sym.character_values[l][m];
                    if (psi == 0) continue;
                    Cyclotomic prod(Int(sym.class_sizes[m] * psi));
                    for (int part : sym.partitions[m]) prod *= powvals[i - 1][part];
                    acc += prod;
                }
                f.at(i) = acc * Cyclotomic(Rat(Int(1), factorial));
            }
            out.push_back(std::move(f));
        }
    }
    return out;
}

ClassFunction minus_character(const CharacterTable& tbl, const ClassFunction& chi,
                              const ParamMap& pow_p, long p) {
    if (pow_p.size() != tbl.num_classes()) throw Error("minus_character: length mismatch");
    ClassFunction out(tbl.num_classes());
    for (int i = 1; i <= tbl.num_classes(); ++i) {
        const MapEntry& e = pow_p.at(i);
        Cyclotomic img = chi.at(e.candidates()[0]);
        for (size_t t = 1; t < e.count(); ++t)
            if (chi.at(e.candidates()[t]) != img)
                throw Error("minus_character: ambiguous power image at class " +
                            std::to_string(i));
        out.at(i) = (chi.at(i).pow(p) - img) * Cyclotomic(Rat(1, p));
    }
    return out;
}

}  // namespace chartab
