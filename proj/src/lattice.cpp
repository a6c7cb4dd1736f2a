#include "chartab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "chartab/chars.hpp"

namespace chartab {

IntMatrix gram_matrix(const CharacterTable& tbl, const std::vector<ClassFunction>& chars) {
    size_t m = chars.size();
    IntMatrix g(m, std::vector<Int>(m));
    for (size_t r = 0; r < m; ++r)
        for (size_t c = r; c < m; ++c) {
            Rat v = rational_scalar_product(tbl, chars[r], chars[c]);
            if (!is_integer(v))
                throw Error("gram_matrix: non-integral scalar product " + v.get_str());
            g[r][c] = v.get_num();
            g[c][r] = g[r][c];
        }
    return g;
}

RatMatrix rat_inverse(const RatMatrix& m) {
    size_t n = m.size();
    RatMatrix a = m;
    RatMatrix inv(n, std::vector<Rat>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw Error("matrix is singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

void hnf_rows(const IntMatrix& a, IntMatrix& h, IntMatrix& u) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    h = a;
    u.assign(rows, std::vector<Int>(rows, 0));
    for (size_t i = 0; i < rows; ++i) u[i][i] = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // gcd elimination in column c below row r
        while (true) {
            size_t piv = rows;
            for (size_t i = r; i < rows; ++i)
                if (h[i][c] != 0 && (piv == rows || abs(h[i][c]) < abs(h[piv][c]))) piv = i;
            if (piv == rows) break;
            std::swap(h[piv], h[r]);
            std::swap(u[piv], u[r]);
            bool clean = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (h[i][c] == 0) continue;
                Int q = h[i][c] / h[r][c];  // truncated division is fine for descent
                if (q != 0) {
                    for (size_t j = 0; j < cols; ++j) h[i][j] -= q * h[r][j];
                    for (size_t j = 0; j < rows; ++j) u[i][j] -= q * u[r][j];
                }
                if (h[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (h[r][c] == 0) continue;
        if (h[r][c] < 0) {
            for (size_t j = 0; j < cols; ++j) h[r][j] = -h[r][j];
            for (size_t j = 0; j < rows; ++j) u[r][j] = -u[r][j];
        }
        // reduce the rows above
        for (size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[r][c].get_mpz_t());
            if (q != 0) {
                for (size_t j = 0; j < cols; ++j) h[i][j] -= q * h[r][j];
                for (size_t j = 0; j < rows; ++j) u[i][j] -= q * u[r][j];
            }
        }
        ++r;
    }
}

IntMatrix integer_left_kernel(const IntMatrix& a) {
    IntMatrix h, u;
    hnf_rows(a, h, u);
    IntMatrix kernel;
    for (size_t i = 0; i < h.size(); ++i) {
        bool zero = true;
        for (auto& v : h[i])
            if (v != 0) zero = false;
        if (zero) kernel.push_back(u[i]);
    }
    return kernel;
}

// ---------------------------------------------------------------------------
// LLL

namespace {

// Dependent generators are eliminated first: each new generator either lies in
// the lattice spanned so far (discarded), is independent (appended), or spans
// a finer lattice in the same subspace (basis recomputed by HNF).
struct LatticeBuilder {
    const CharacterTable* tbl;
    const std::vector<ClassFunction>* inputs;
    IntMatrix input_gram;
    std::vector<std::vector<Int>> basis;    // coordinate rows over the inputs
    std::vector<std::vector<Int>> basis_w;  // cached rows basis * input_gram

    std::vector<Int> weighted(const std::vector<Int>& x) const {
        size_t m = x.size();
        std::vector<Int> w(m, 0);
        for (size_t i = 0; i < m; ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < m; ++j) w[j] += x[i] * input_gram[i][j];
        }
        return w;
    }

    static Rat dot(const std::vector<Int>& w, const std::vector<Int>& y) {
        Int acc = 0;
        for (size_t j = 0; j < y.size(); ++j)
            if (y[j] != 0) acc += w[j] * y[j];
        return Rat(acc);
    }

    void rebuild_cache() {
        basis_w.clear();
        for (auto& row : basis) basis_w.push_back(weighted(row));
    }

    // inner product of basis row i with an arbitrary coordinate row
    Rat ip_cached(size_t i, const std::vector<Int>& y) const { return dot(basis_w[i], y); }

    Rat ip_rows(const std::vector<Int>& x, const std::vector<Int>& y) const {
        return dot(weighted(x), y);
    }

    void add_generator(size_t g) {
        std::vector<Int> coords((*inputs).size(), 0);
        coords[g] = 1;
        // rational coordinates of the new vector on the current basis
        size_t r = basis.size();
        if (r == 0) {
            if (input_gram[g][g] != 0) basis.push_back(coords);
            return;
        }
        if (basis_w.size() != basis.size()) rebuild_cache();
        RatMatrix gram(r, std::vector<Rat>(r));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) gram[i][j] = ip_cached(i, basis[j]);
        std::vector<Rat> rhs(r);
        for (size_t i = 0; i < r; ++i) rhs[i] = ip_cached(i, coords);
        // solve gram * q = rhs
        RatMatrix inv = rat_inverse(gram);
        std::vector<Rat> q(r, 0);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) q[i] += inv[i][j] * rhs[j];
        // residual norm decides independence
        Rat resid = ip_rows(coords, coords);
        for (size_t i = 0; i < r; ++i) resid -= q[i] * rhs[i];
        if (resid != 0) {
            basis.push_back(coords);
            basis_w.push_back(weighted(coords));
            return;
        }
        bool integral = true;
        for (auto& v : q)
            if (!is_integer(v)) integral = false;
        if (integral) return;  // already in the lattice
        // new lattice: HNF of the old basis extended by the dependent vector
        Int den = 1;
        for (auto& v : q) den = den * v.get_den() / gcd(den, Int(v.get_den()));
        IntMatrix ext(r + 1, std::vector<Int>(r + 1, 0));
        for (size_t i = 0; i < r; ++i) ext[i][i] = den;
        for (size_t i = 0; i < r; ++i) ext[r][i] = q[i].get_num() * (den / q[i].get_den());
        ext[r][r] = 0;  // augmented coefficient column handled via transformation
        IntMatrix h, u;
        hnf_rows(ext, h, u);
        // nonzero rows of h are the new basis; the transformation expresses
        // them as integer combinations of the old basis and the new vector
        std::vector<std::vector<Int>> newbasis;
        for (size_t i = 0; i < h.size(); ++i) {
            bool zero = true;
            for (auto& v : h[i])
                if (v != 0) zero = false;
            if (zero) continue;
            std::vector<Int> row((*inputs).size(), 0);
            for (size_t t = 0; t < r; ++t)
                for (size_t s = 0; s < row.size(); ++s) row[s] += u[i][t] * basis[t][s];
            for (size_t s = 0; s < row.size(); ++s) row[s] += u[i][r] * coords[s];
            newbasis.push_back(std::move(row));
        }
        basis = std::move(newbasis);
        rebuild_cache();
    }
};

}  // namespace

LLLResult lll_reduce(const CharacterTable& tbl, const std::vector<ClassFunction>& chars,
                     const Rat& delta, bool sort) {
    if (delta <= Rat(1, 4) || delta > 1) throw Error("lll_reduce: delta must be in (1/4, 1]");
    std::vector<size_t> input_index(chars.size());
    for (size_t i = 0; i < chars.size(); ++i) input_index[i] = i;
    if (sort) {
        std::vector<Rat> norms_in;
        norms_in.reserve(chars.size());
        for (auto& c : chars) norms_in.push_back(rational_scalar_product(tbl, c, c));
        std::stable_sort(input_index.begin(), input_index.end(), [&](size_t a, size_t b) {
            if (norms_in[a] != norms_in[b]) return norms_in[a] < norms_in[b];
            return chars[a] < chars[b];
        });
    }
    std::vector<ClassFunction> inputs;
    inputs.reserve(chars.size());
    for (size_t i : input_index) inputs.push_back(chars[i]);
    LLLResult result;
    if (inputs.empty()) return result;

    LatticeBuilder builder;
    builder.tbl = &tbl;
    builder.inputs = &inputs;
    builder.input_gram = gram_matrix(tbl, inputs);
    for (size_t g = 0; g < inputs.size(); ++g) builder.add_generator(g);

    // exact LLL, Gram version, on the independent basis
    auto& basis = builder.basis;
    size_t n = basis.size();
    if (n > 0) {
        if (builder.basis_w.size() != n) builder.rebuild_cache();
        auto ip = [&](size_t i, size_t j) {
            return LatticeBuilder::dot(builder.basis_w[i], basis[j]);
        };
        std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, 0));
        std::vector<Rat> B(n, 0);
        // full Gram-Schmidt
        auto recompute = [&]() {
            for (size_t i = 0; i < n; ++i) {
                for (size_t j = 0; j < i; ++j) {
                    Rat d = ip(i, j);
                    for (size_t l = 0; l < j; ++l) d -= mu[j][l] * mu[i][l] * B[l];
                    mu[i][j] = d / B[j];
                }
                Rat b = ip(i, i);
                for (size_t l = 0; l < i; ++l) b -= mu[i][l] * mu[i][l] * B[l];
                B[i] = b;
            }
        };
        recompute();
        auto size_reduce = [&](size_t k, size_t l) {
            if (mu[k][l] * 2 > 1 || mu[k][l] * 2 < -1) {
                Rat half = mu[k][l] + Rat(1, 2);
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
                if (q != 0) {
                    for (size_t s = 0; s < basis[k].size(); ++s) {
                        basis[k][s] -= q * basis[l][s];
                        builder.basis_w[k][s] -= q * builder.basis_w[l][s];
                    }
                    mu[k][l] -= Rat(q);
                    for (size_t i = 0; i < l; ++i) mu[k][i] -= Rat(q) * mu[l][i];
                }
            }
        };
        size_t k = 1;
        while (k < n) {
            size_reduce(k, k - 1);
            if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
                std::swap(basis[k - 1], basis[k]);
                std::swap(builder.basis_w[k - 1], builder.basis_w[k]);
                // standard swap updates
                Rat mu_ = mu[k][k - 1];
                Rat Bnew = B[k] + mu_ * mu_ * B[k - 1];
                mu[k][k - 1] = mu_ * B[k - 1] / Bnew;
                Rat Bk = B[k - 1] * B[k] / Bnew;
                B[k] = Bk;
                B[k - 1] = Bnew;
                for (size_t j = 0; j + 1 < k; ++j) std::swap(mu[k - 1][j], mu[k][j]);
                for (size_t i = k + 1; i < n; ++i) {
                    Rat t = mu[i][k];
                    mu[i][k] = mu[i][k - 1] - mu_ * t;
                    mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
                }
                k = (k > 1) ? k - 1 : 1;
            } else {
                for (size_t l = k; l-- > 0;) size_reduce(k, l);
                ++k;
            }
        }
    }

    // materialize the basis vectors and sort out the irreducibles
    struct Tracked {
        ClassFunction f;
        std::vector<Int> coords;
    };
    auto materialize = [&](const std::vector<Int>& coords) {
        ClassFunction f(tbl.num_classes());
        for (size_t i = 0; i < inputs.size(); ++i) {
            if (coords[i] == 0) continue;
            f = f + inputs[i].scaled(Cyclotomic(coords[i]));
        }
        return f;
    };
    std::vector<Tracked> irr, rest;
    for (auto& row : basis) {
        Tracked t{materialize(row), row};
        Rat norm = rational_scalar_product(tbl, t.f, t.f);
        if (norm == 1) {
            if (!t.f.degree().is_rational()) throw Error("lll_reduce: irrational degree");
            if (t.f.degree().rational_value() < 0) {
                t.f = -t.f;
                for (auto& v : t.coords) v = -v;
            }
            irr.push_back(std::move(t));
        } else {
            rest.push_back(std::move(t));
        }
    }
    // reduce the remainders against the found irreducibles, promoting new
    // norm-1 vectors until stable
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Tracked> keep;
        for (auto& t : rest) {
            ClassFunction red = t.f;
            std::vector<Int> coords = t.coords;
            for (auto& iota : irr) {
                Cyclotomic sp = scalar_product(tbl, red, iota.f);
                if (sp.is_zero()) continue;
                if (!sp.is_rational() || !is_integer(sp.rational_value()))
                    throw Error("lll_reduce: non-integral reduction coefficient");
                Int c = sp.rational_value().get_num();
                red = red - iota.f.scaled(Cyclotomic(c));
                for (size_t s = 0; s < coords.size(); ++s) coords[s] -= c * iota.coords[s];
            }
            if (red.is_zero()) continue;
            Rat norm = rational_scalar_product(tbl, red, red);
            if (norm == 1) {
                if (red.degree().rational_value() < 0) {
                    red = -red;
                    for (auto& v : coords) v = -v;
                }
                irr.push_back(Tracked{std::move(red), std::move(coords)});
                changed = true;
            } else {
                keep.push_back(Tracked{std::move(red), std::move(coords)});
            }
        }
        rest = std::move(keep);
    }
    for (auto& t : irr) {
        result.irreducibles.push_back(t.f);
        result.irr_coords.push_back(t.coords);
    }
    for (auto& t : rest) {
        result.norms.push_back(rational_scalar_product(tbl, t.f, t.f));
        result.remainders.push_back(t.f);
        result.rem_coords.push_back(t.coords);
    }
    if (sort) {
        // coordinates refer to the sorted inputs; re-express over the caller's order
        auto remap = [&](std::vector<std::vector<Int>>& rows) {
            for (auto& row : rows) {
                std::vector<Int> out(chars.size(), 0);
                for (size_t i = 0; i < row.size(); ++i) out[input_index[i]] = row[i];
                row = std::move(out);
            }
        };
        remap(result.irr_coords);
        remap(result.rem_coords);
    }
    return result;
}

// ---------------------------------------------------------------------------
// orthogonal embeddings

namespace {

// exact decomposition Q = U^T D U with unit upper triangular U
void ldl_upper(const RatMatrix& q, std::vector<Rat>& d, RatMatrix& u) {
    size_t n = q.size();
    RatMatrix a = q;
    d.assign(n, 0);
    u.assign(n, std::vector<Rat>(n, 0));
    for (size_t i = 0; i < n; ++i) u[i][i] = 1;
    for (size_t i = 0; i < n; ++i) {
        d[i] = a[i][i];
        if (d[i] <= 0) throw Error("matrix is not positive definite");
        for (size_t j = i + 1; j < n; ++j) u[i][j] = a[i][j] / d[i];
        for (size_t r = i + 1; r < n; ++r)
            for (size_t c = i + 1; c < n; ++c) a[r][c] -= a[r][i] * a[i][c] / d[i];
    }
}

// integer points of the ellipsoid x^T Q x <= 1, up to sign
std::vector<std::vector<Int>> short_dual_vectors(const RatMatrix& q, const Rat& bound) {
    size_t n = q.size();
    std::vector<Rat> d;
    RatMatrix u;
    ldl_upper(q, d, u);
    std::vector<std::vector<Int>> out;
    std::vector<Int> x(n, 0);
    // enumerate x[level] given the tail x[level+1..]
    auto rec = [&](auto&& self, size_t level, const Rat& remaining) -> void {
        if (level == static_cast<size_t>(-1)) return;
        // center c = sum_{j>level} u[level][j] x[j]
        Rat c = 0;
        for (size_t j = level + 1; j < n; ++j)
            if (x[j] != 0) c += u[level][j] * Rat(x[j]);
        // D (t + c)^2 <= remaining
        Rat r2 = remaining / d[level];
        double approx = std::sqrt(std::max(0.0, r2.get_d()));
        double cc = c.get_d();
        auto fits = [&](const Int& t) {
            Rat tc = Rat(t) + c;
            return tc * tc <= r2;
        };
        Int hi(static_cast<long>(std::floor(-cc + approx)));
        while (fits(hi + 1)) hi += 1;
        while (hi >= Int(static_cast<long>(std::ceil(-cc - approx))) - 2 && !fits(hi)) hi -= 1;
        Int lo(static_cast<long>(std::ceil(-cc - approx)));
        while (fits(lo - 1)) lo -= 1;
        while (lo <= hi && !fits(lo)) lo += 1;
        for (Int t = lo; t <= hi; t += 1) {
            x[level] = t;
            Rat tc = Rat(t) + c;
            Rat used = d[level] * tc * tc;
            if (level == 0) {
                // skip zero and sign-normalize: first nonzero coordinate positive
                int firstnz = -1;
                for (size_t i = 0; i < n; ++i)
                    if (x[i] != 0) {
                        firstnz = static_cast<int>(i);
                        break;
                    }
                if (firstnz >= 0 && x[firstnz] > 0) out.push_back(x);
            } else {
                self(self, level - 1, remaining - used);
            }
        }
        x[level] = 0;
    };
    rec(rec, n - 1, bound);
    return out;
}

struct EmbedSearch {
    const IntMatrix* gram;
    const std::vector<std::vector<Int>>* cands;
    std::vector<std::vector<bool>> suffix_support;  // [idx][pos]
    int maxdim;
    Int max_norm = 1;
    std::vector<std::vector<int>> solutions;
    std::vector<int> current;

    void run() {
        size_t n = gram->size();
        IntMatrix r = *gram;
        size_t m = cands->size();
        suffix_support.assign(m + 1, std::vector<bool>(n, false));
        for (size_t idx = m; idx-- > 0;) {
            suffix_support[idx] = suffix_support[idx + 1];
            for (size_t pos = 0; pos < n; ++pos)
                if ((*cands)[idx][pos] != 0) suffix_support[idx][pos] = true;
        }
        for (auto& x : *cands) {
            Int nn = 0;
            for (auto& v : x) nn += v * v;
            if (nn > max_norm) max_norm = nn;
        }
        descend(r, 0, 0);
    }

    void descend(IntMatrix& r, size_t startidx, int used) {
        size_t n = r.size();
        int open = -1;
        Int trace = 0;
        for (size_t dpos = 0; dpos < n; ++dpos) {
            if (r[dpos][dpos] < 0) return;
            trace += r[dpos][dpos];
            if (r[dpos][dpos] == 0) {
                for (size_t l = 0; l < n; ++l)
                    if (r[dpos][l] != 0) return;  // dead column can never be fixed
            } else if (open < 0) {
                open = static_cast<int>(dpos);
            }
        }
        if (open < 0) {
            std::vector<int> sol = current;
            std::sort(sol.begin(), sol.end());
            solutions.push_back(std::move(sol));
            return;
        }
        if (used >= maxdim) return;
        // enough rows left to absorb the remaining trace?
        if (Int(maxdim - used) * max_norm < trace) return;
        size_t d = static_cast<size_t>(open);
        size_t begin = startidx;
        for (size_t idx = begin; idx < cands->size(); ++idx) {
            const auto& x = (*cands)[idx];
            if (x[d] == 0) continue;
            if (!suffix_support[idx][d]) break;  // no later candidate touches d
            bool feasible = true;
            for (size_t ppos = 0; ppos < n && feasible; ++ppos) {
                if (x[ppos] == 0) continue;
                if (r[ppos][ppos] < x[ppos] * x[ppos]) feasible = false;
            }
            if (!feasible) continue;
            IntMatrix r2 = r;
            for (size_t a = 0; a < n; ++a) {
                if (x[a] == 0) continue;
                for (size_t b = 0; b < n; ++b) r2[a][b] -= x[a] * x[b];
            }
            current.push_back(static_cast<int>(idx) + 1);
            // stay in the same phase while d is open, restart otherwise
            size_t next_start = (r2[d][d] > 0) ? idx : 0;
            descend(r2, next_start, used + 1);
            current.pop_back();
        }
    }
};

}  // namespace

EmbeddingResult orthogonal_embeddings(const IntMatrix& gram, int maxdim) {
    size_t n = gram.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (gram[i][j] != gram[j][i]) throw Error("gram matrix is not symmetric");
    RatMatrix g(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i][j] = Rat(gram[i][j]);
    RatMatrix q = rat_inverse(g);
    {
        // positive definiteness check via the LDL pivots of G itself
        std::vector<Rat> d;
        RatMatrix u;
        ldl_upper(g, d, u);
    }
    EmbeddingResult res;
    res.vectors = short_dual_vectors(q, Rat(1));
    auto dual_norm = [&](const std::vector<Int>& x) {
        Rat acc = 0;
        for (size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                if (x[j] == 0) continue;
                acc += Rat(x[i] * x[j]) * q[i][j];
            }
        }
        return acc;
    };
    std::stable_sort(res.vectors.begin(), res.vectors.end(),
                     [&](const std::vector<Int>& a, const std::vector<Int>& b) {
                         Rat na = dual_norm(a), nb = dual_norm(b);
                         if (na != nb) return na > nb;
                         return a < b;
                     });
    res.norms.reserve(res.vectors.size());
    for (auto& x : res.vectors) res.norms.push_back(dual_norm(x));
    EmbedSearch search;
    search.gram = &gram;
    search.cands = &res.vectors;
    search.maxdim = maxdim;
    search.run();
    std::sort(search.solutions.begin(), search.solutions.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    res.solutions = std::move(search.solutions);
    return res;
}

// ---------------------------------------------------------------------------
// decreased

std::optional<DecreasedResult> decreased(const CharacterTable& tbl,
                                         const std::vector<ClassFunction>& chars,
                                         const std::vector<std::vector<Int>>& rows) {
    size_t m = rows.size(), k = chars.size();
    if (m < k) throw Error("decreased: fewer rows than characters");
    IntMatrix gram = gram_matrix(tbl, chars);
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
            Int acc = 0;
            for (size_t t = 0; t < m; ++t) acc += rows[t][a] * rows[t][b];
            if (acc != gram[a][b]) throw Error("decreased: rows do not reproduce the gram matrix");
        }
    // particular solution z* = X G^{-1} chars
    RatMatrix g(k, std::vector<Rat>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) g[i][j] = Rat(gram[i][j]);
    RatMatrix ginv = rat_inverse(g);
    RatMatrix coef(m, std::vector<Rat>(k, 0));  // z*_t = sum_j coef[t][j] chars[j]
    for (size_t t = 0; t < m; ++t)
        for (size_t j = 0; j < k; ++j) {
            Rat acc = 0;
            for (size_t l = 0; l < k; ++l) acc += Rat(rows[t][l]) * ginv[l][j];
            coef[t][j] = acc;
        }
    // integer kernel of the row map v -> v * X
    IntMatrix x = rows;
    IntMatrix kernel = integer_left_kernel(x);
    std::vector<bool> undetermined(m, false);
    for (auto& v : kernel)
        for (size_t t = 0; t < m; ++t)
            if (v[t] != 0) undetermined[t] = true;

    auto materialize = [&](const std::vector<Rat>& row) {
        ClassFunction f(tbl.num_classes());
        for (size_t j = 0; j < k; ++j) {
            if (row[j] == 0) continue;
            f = f + chars[j].scaled(Cyclotomic(row[j]));
        }
        return f;
    };

    DecreasedResult res;
    for (size_t t = 0; t < m; ++t) {
        if (undetermined[t]) continue;
        ClassFunction z = materialize(coef[t]);
        if (!z.degree().is_rational()) return std::nullopt;
        Rat deg = z.degree().is_zero() ? Rat(0) : z.degree().rational_value();
        if (deg < 0) {
            z = -z;
            deg = -deg;
        }
        if (deg == 0 || !is_integer(deg)) return std::nullopt;
        bool integral = true;
        for (int i = 1; i <= tbl.num_classes(); ++i)
            if (!z.at(i).is_integral()) integral = false;
        if (!integral) return std::nullopt;
        if (rational_scalar_product(tbl, z, z) != 1) return std::nullopt;
        res.irreducibles.push_back(std::move(z));
    }
    // determined integral combinations of the unresolved coordinates
    std::vector<int> upos;
    for (size_t t = 0; t < m; ++t)
        if (undetermined[t]) upos.push_back(static_cast<int>(t));
    if (!upos.empty()) {
        // {a in Z^U : K|_U a^T = 0}: right kernel of the restricted kernel matrix
        IntMatrix restricted(upos.size(), std::vector<Int>(kernel.size()));
        for (size_t col = 0; col < kernel.size(); ++col)
            for (size_t riw = 0; riw < upos.size(); ++riw)
                restricted[riw][col] = kernel[col][upos[riw]];
        IntMatrix combos = integer_left_kernel(restricted);
        for (auto& a : combos) {
            std::vector<Rat> row(k, 0);
            for (size_t riw = 0; riw < upos.size(); ++riw)
                for (size_t j = 0; j < k; ++j)
                    row[j] += Rat(a[riw]) * coef[upos[riw]][j];
            ClassFunction w = materialize(row);
            Rat deg = w.degree().is_zero() ? Rat(0) : w.degree().rational_value();
            if (deg < 0) w = -w;
            bool integral = true;
            for (int i = 1; i <= tbl.num_classes(); ++i)
                if (!w.at(i).is_integral()) integral = false;
            if (!integral) return std::nullopt;
            res.remainders.push_back(std::move(w));
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// D_n lattices

namespace {

struct Component {
    std::vector<int> members;  // indices into the current norm-2 list
};

std::vector<Component> split_components(const IntMatrix& gram) {
    size_t n = gram.size();
    std::vector<int> comp(n, -1);
    std::vector<Component> out;
    for (size_t i = 0; i < n; ++i) {
        if (comp[i] != -1) continue;
        Component c;
        std::vector<size_t> queue{i};
        comp[i] = static_cast<int>(out.size());
        while (!queue.empty()) {
            size_t a = queue.back();
            queue.pop_back();
            c.members.push_back(static_cast<int>(a));
            for (size_t b = 0; b < n; ++b)
                if (comp[b] == -1 && gram[a][b] != 0) {
                    comp[b] = static_cast<int>(out.size());
                    queue.push_back(b);
                }
        }
        std::sort(c.members.begin(), c.members.end());
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

DnResult dn_lattice_iterative(const CharacterTable& tbl,
                              const std::vector<ClassFunction>& norm2_chars) {
    for (auto& chi : norm2_chars)
        if (rational_scalar_product(tbl, chi, chi) != 2)
            throw Error("dn_lattice_iterative: input of norm != 2");
    DnResult res;
    std::vector<ClassFunction> current = norm2_chars;
    std::vector<ClassFunction> leftovers;
    bool progress = true;
    while (progress) {
        progress = false;
        if (current.empty()) break;
        IntMatrix gram = gram_matrix(tbl, current);
        std::vector<ClassFunction> promoted;
        std::vector<bool> consumed(current.size(), false);
        for (auto& comp : split_components(gram)) {
            if (comp.members.size() < 4) continue;
            // basis of the component sublattice
            std::vector<ClassFunction> sub;
            for (int i : comp.members) sub.push_back(current[i]);
            LatticeBuilder builder;
            builder.tbl = &tbl;
            builder.inputs = &sub;
            builder.input_gram = gram_matrix(tbl, sub);
            for (size_t gidx = 0; gidx < sub.size(); ++gidx) builder.add_generator(gidx);
            size_t rank = builder.basis.size();
            if (rank < 4) continue;
            // norm-1 vectors of the dual lattice
            RatMatrix bg(rank, std::vector<Rat>(rank));
            for (size_t a = 0; a < rank; ++a)
                for (size_t b = 0; b < rank; ++b)
                    bg[a][b] = builder.ip_rows(builder.basis[a], builder.basis[b]);
            RatMatrix binv = rat_inverse(bg);
            std::vector<std::vector<Int>> duals;
            try {
                duals = short_dual_vectors(binv, Rat(1));
            } catch (const Error&) {
                continue;  // component form not definite (cannot happen for genuine data)
            }
            std::vector<ClassFunction> candidates;
            for (auto& t : duals) {
                // w = sum (B^{-1} t)_a * basis_a ; exact norm must be 1
                std::vector<Rat> coords(rank, 0);
                for (size_t a = 0; a < rank; ++a)
                    for (size_t b = 0; b < rank; ++b) coords[a] += binv[a][b] * Rat(t[b]);
                Rat norm = 0;
                for (size_t a = 0; a < rank; ++a) norm += coords[a] * Rat(t[a]);
                if (norm != 1) continue;
                ClassFunction w(tbl.num_classes());
                for (size_t a = 0; a < rank; ++a) {
                    if (coords[a] == 0) continue;
                    ClassFunction basechar(tbl.num_classes());
                    for (size_t s = 0; s < sub.size(); ++s) {
                        if (builder.basis[a][s] == 0) continue;
                        basechar = basechar + sub[s].scaled(Cyclotomic(builder.basis[a][s]));
                    }
                    w = w + basechar.scaled(Cyclotomic(coords[a]));
                }
                if (!w.degree().is_rational()) continue;
                Rat deg = w.degree().is_zero() ? Rat(0) : w.degree().rational_value();
                if (deg < 0) {
                    w = -w;
                    deg = -deg;
                }
                if (deg == 0 || !is_integer(deg)) continue;
                bool integral = true;
                for (int i = 1; i <= tbl.num_classes(); ++i)
                    if (!w.at(i).is_integral()) integral = false;
                if (!integral) continue;
                if (std::find(candidates.begin(), candidates.end(), w) == candidates.end())
                    candidates.push_back(std::move(w));
            }
            // find orthonormal frames of full rank among the candidates
            std::vector<std::vector<size_t>> frames;
            std::vector<size_t> frame;
            auto extend = [&](auto&& self, size_t from) -> void {
                if (frame.size() == rank) {
                    frames.push_back(frame);
                    return;
                }
                for (size_t cidx = from; cidx < candidates.size(); ++cidx) {
                    bool ok = true;
                    for (size_t inframe : frame)
                        if (!scalar_product(tbl, candidates[cidx], candidates[inframe])
                                 .is_zero())
                            ok = false;
                    if (!ok) continue;
                    frame.push_back(cidx);
                    self(self, cidx + 1);
                    frame.pop_back();
                }
            };
            extend(extend, 0);
            // the frame must express every member with integral coefficients
            std::vector<std::vector<size_t>> valid;
            for (auto& fr : frames) {
                bool ok = true;
                for (int i : comp.members) {
                    ClassFunction recon(tbl.num_classes());
                    for (size_t cidx : fr) {
                        Cyclotomic sp = scalar_product(tbl, current[i], candidates[cidx]);
                        if (!sp.is_rational() ||
                            (!sp.is_zero() && !is_integer(sp.rational_value()))) {
                            ok = false;
                            break;
                        }
                        recon = recon + candidates[cidx].scaled(sp);
                    }
                    if (!ok || !(recon == current[i])) {
                        ok = false;
                        break;
                    }
                }
                if (ok) valid.push_back(fr);
            }
            if (valid.size() != 1) continue;  // ambiguous (D4 triality) or not of type D
            for (size_t cidx : valid[0]) promoted.push_back(candidates[cidx]);
            for (int i : comp.members) consumed[i] = true;
            progress = true;
        }
        if (!progress) break;
        // promoted irreducibles reduce everything that remains
        std::vector<ClassFunction> remaining;
        for (size_t i = 0; i < current.size(); ++i)
            if (!consumed[i]) remaining.push_back(current[i]);
        for (auto& l : leftovers) remaining.push_back(l);
        leftovers.clear();
        ReduceResult red = reduce(tbl, promoted, remaining);
        for (auto& z : promoted) res.irreducibles.push_back(z);
        for (auto& z : red.irreducibles) res.irreducibles.push_back(z);
        current.clear();
        for (auto& r : red.remainders) {
            if (rational_scalar_product(tbl, r, r) == 2)
                current.push_back(r);
            else
                leftovers.push_back(r);
        }
    }
    for (auto& c : current) res.remainders.push_back(c);
    for (auto& l : leftovers) res.remainders.push_back(l);
    return res;
}

}  // namespace chartab
