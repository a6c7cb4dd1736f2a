#include "oracle/dixon.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace oracle {

namespace {

using Row = std::vector<long>;  // vectors over F_p
using Mat = std::vector<Row>;

long addm(long a, long b, long p) { return (a + b) % p; }
long subm(long a, long b, long p) { return ((a - b) % p + p) % p; }
long mulm(long a, long b, long p) {
    return static_cast<long>(static_cast<unsigned long long>(a) * b % p);
}

long invm(long a, long p) { return chartab::inverse_mod(a, p); }

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m, long p) {
    std::vector<int> pivots;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        long iv = invm(m[r][c], p);
        for (size_t j = 0; j < cols; ++j) m[r][j] = mulm(m[r][j], iv, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            long f = m[i][c];
            for (size_t j = 0; j < cols; ++j) m[i][j] = subm(m[i][j], mulm(f, m[r][j], p), p);
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);
    return pivots;
}

// Characteristic polynomial (monic, coefficients low to high) via
// Faddeev-LeVerrier; requires p > dim.
Row char_poly(const Mat& a, long p) {
    size_t d = a.size();
    Row coeffs(d + 1, 0);
    coeffs[d] = 1;
    Mat mk(d, Row(d, 0));
    for (size_t i = 0; i < d; ++i) mk[i][i] = 1;
    for (size_t k = 1; k <= d; ++k) {
        // cur = A * mk
        Mat prod(d, Row(d, 0));
        for (size_t i = 0; i < d; ++i)
            for (size_t l = 0; l < d; ++l) {
                if (mk[l].empty()) continue;
                long f = a[i][l];
                if (f == 0) continue;
                for (size_t j = 0; j < d; ++j)
                    prod[i][j] = addm(prod[i][j], mulm(f, mk[l][j], p), p);
            }
        long tr = 0;
        for (size_t i = 0; i < d; ++i) tr = addm(tr, prod[i][i], p);
        long ck = mulm(tr, invm(static_cast<long>(k), p), p);
        ck = (p - ck) % p;
        coeffs[d - k] = ck;
        mk = prod;
        for (size_t i = 0; i < d; ++i) mk[i][i] = addm(mk[i][i], ck, p);
    }
    return coeffs;
}

long eval_poly(const Row& poly, long x, long p) {
    long acc = 0;
    for (size_t i = poly.size(); i-- > 0;) acc = addm(mulm(acc, x, p), poly[i], p);
    return acc;
}

// Nullspace basis (rows) of m (not modified).
Mat nullspace(Mat m, long p) {
    size_t cols = m.empty() ? 0 : m[0].size();
    std::vector<int> pivots = rref(m, p);
    std::vector<bool> ispivot(cols, false);
    for (int c : pivots) ispivot[c] = true;
    Mat basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (ispivot[fc]) continue;
        Row v(cols, 0);
        v[fc] = 1;
        for (size_t r = 0; r < m.size(); ++r) {
            // pivot row r has pivot at pivots[r]
            v[pivots[r]] = subm(0, m[r][fc], p);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

chartab::CharacterTable dixon_table(const Group& g, const ClassData& cd,
                                    const std::string& identifier) {
    using chartab::Cyclotomic;
    using chartab::Int;

    const long n = static_cast<long>(g.size());
    const int k = cd.k();

    // exponent of the group
    long e = 1;
    for (int c = 0; c < k; ++c) e = std::lcm(e, cd.orders[c]);

    // prime p = 1 mod e, p not dividing |G|, p > 2 sqrt(|G|)
    long p = e + 1;
    auto ok = [&](long q) {
        return chartab::is_prime(q) && n % q != 0 && static_cast<double>(q) * q > 4.0 * n;
    };
    while (!ok(p)) p += e;

    // z: element of order e in F_p
    long z = (e == 1) ? 1 : 0;
    for (long cand = 2; z == 0 && cand < p; ++cand) {
        bool good = chartab::power_mod(cand, e, p) == 1;
        if (good)
            for (long q : chartab::prime_divisors(e))
                if (chartab::power_mod(cand, e / q, p) == 1) good = false;
        if (good) {
            z = cand;
            break;
        }
    }
    if (z == 0) throw std::runtime_error("no element of order e mod p");

    // class matrices: m[a][b][c] = #{ (x,y) in C_a x C_b : xy = rep_c }
    std::vector<Mat> mats(k, Mat(k, Row(k, 0)));
    for (int a = 0; a < k; ++a)
        for (int x : cd.classes[a]) {
            int xi = g.inv(x);
            for (int c = 0; c < k; ++c) {
                int y = g.mul(xi, cd.reps[c]);
                mats[a][cd.class_of[y]][c] += 1;
            }
        }
    for (auto& m : mats)
        for (auto& row : m)
            for (auto& v : row) v %= p;

    // split the common eigenspaces
    std::vector<Mat> spaces;
    {
        Mat full(k, Row(k, 0));
        for (int i = 0; i < k; ++i) full[i][i] = 1;
        spaces.push_back(std::move(full));
    }
    for (int a = 0; a < k; ++a) {
        std::vector<Mat> next;
        for (auto& space : spaces) {
            size_t d = space.size();
            if (d == 1) {
                next.push_back(space);
                continue;
            }
            // work in the reduced basis of the subspace throughout
            Mat basis = space;
            std::vector<int> pivots = rref(basis, p);
            d = basis.size();
            // action of mats[a] on the basis rows; rows transform as columns of
            // M, so right eigenvectors of M appear as row eigenvectors here
            Mat w(d, Row(k, 0));
            for (size_t r = 0; r < d; ++r)
                for (int col = 0; col < k; ++col) {
                    long acc = 0;
                    for (int l = 0; l < k; ++l)
                        acc = addm(acc, mulm(basis[r][l], mats[a][col][l], p), p);
                    w[r][col] = acc;
                }
            Mat act(d, Row(d, 0));
            for (size_t r = 0; r < d; ++r) {
                Row residue = w[r];
                for (size_t s = 0; s < d; ++s) {
                    long f = residue[pivots[s]];
                    act[r][s] = f;
                    if (f == 0) continue;
                    for (int col = 0; col < k; ++col)
                        residue[col] = subm(residue[col], mulm(f, basis[s][col], p), p);
                }
                for (int col = 0; col < k; ++col)
                    if (residue[col] != 0) throw std::runtime_error("subspace not invariant");
            }
            // coordinates transform as c -> c * act; transpose so eigencoords
            // are ordinary (right) nullspace vectors
            {
                Mat actT(d, Row(d, 0));
                for (size_t r = 0; r < d; ++r)
                    for (size_t s = 0; s < d; ++s) actT[s][r] = act[r][s];
                act = std::move(actT);
            }
            Row poly = char_poly(act, p);
            std::vector<long> roots;
            for (long lam = 0; lam < p; ++lam)
                if (eval_poly(poly, lam, p) == 0) roots.push_back(lam);
            bool split_any = false;
            for (long lam : roots) {
                Mat shifted = act;
                for (size_t i = 0; i < d; ++i) shifted[i][i] = subm(shifted[i][i], lam, p);
                Mat ns = nullspace(shifted, p);
                if (ns.empty()) continue;
                Mat lifted;
                for (auto& coords : ns) {
                    Row v(k, 0);
                    for (size_t s = 0; s < d; ++s) {
                        if (coords[s] == 0) continue;
                        for (int col = 0; col < k; ++col)
                            v[col] = addm(v[col], mulm(coords[s], basis[s][col], p), p);
                    }
                    lifted.push_back(std::move(v));
                }
                next.push_back(std::move(lifted));
                split_any = true;
            }
            if (!split_any) throw std::runtime_error("eigen splitting failed");
        }
        spaces = std::move(next);
        bool alldone = true;
        for (auto& s : spaces)
            if (s.size() != 1) alldone = false;
        if (alldone) break;
    }
    if (static_cast<int>(spaces.size()) != k)
        throw std::runtime_error("common eigenspaces do not split completely");

    int identity_class = -1;
    for (int c = 0; c < k; ++c)
        if (cd.orders[c] == 1) identity_class = c;
    std::vector<int> inverse_class(k);
    for (int c = 0; c < k; ++c) inverse_class[c] = cd.class_of[g.inv(cd.reps[c])];

    // characters mod p
    std::vector<std::vector<long>> charsmod;  // [chi][class]
    std::vector<long> degrees;
    for (auto& space : spaces) {
        Row omega = space[0];
        long norm = invm(omega[identity_class], p);
        for (auto& v : omega) v = mulm(v, norm, p);
        // degree^2 = |G| / sum_b omega_b omega_{b'} / size_{b'}
        long denom = 0;
        for (int b = 0; b < k; ++b) {
            long term = mulm(omega[b], omega[inverse_class[b]], p);
            term = mulm(term, invm(cd.sizes[inverse_class[b]] % p, p), p);
            denom = addm(denom, term, p);
        }
        long d2 = mulm(n % p, invm(denom, p), p);
        long deg = -1;
        for (long r = 0; r * r <= 4 * n; ++r)
            if (mulm(r % p, r % p, p) == d2) {
                deg = r;
                break;
            }
        if (deg <= 0) throw std::runtime_error("degree recovery failed");
        std::vector<long> vals(k);
        for (int b = 0; b < k; ++b)
            vals[b] = mulm(mulm(deg % p, omega[b], p), invm(cd.sizes[b] % p, p), p);
        charsmod.push_back(std::move(vals));
        degrees.push_back(deg);
    }

    // lift to cyclotomics
    std::vector<chartab::ClassFunction> irr;
    for (size_t chi = 0; chi < charsmod.size(); ++chi) {
        chartab::ClassFunction f(k);
        for (int b = 0; b < k; ++b) {
            long ordb = cd.orders[b];
            long zeta = chartab::power_mod(z, e / ordb, p);
            // values of chi at the powers rep^t
            std::vector<long> powvals(ordb);
            int x = g.id();
            for (long t = 0; t < ordb; ++t) {
                powvals[t] = charsmod[chi][cd.class_of[x]];
                x = g.mul(x, cd.reps[b]);
            }
            Cyclotomic val(0);
            long invord = invm(ordb % p, p);
            for (long j = 0; j < ordb; ++j) {
                long m = 0;
                for (long t = 0; t < ordb; ++t) {
                    long w = chartab::power_mod(zeta, (ordb - j % ordb) * t % ordb, p);
                    m = addm(m, mulm(powvals[t], w, p), p);
                }
                m = mulm(m, invord, p);
                if (m > degrees[chi])
                    throw std::runtime_error("multiplicity lift out of range");
                if (m != 0)
                    val += Cyclotomic(m) * Cyclotomic::root_of_unity(ordb, j);
            }
            f.at(b + 1) = val;
        }
        irr.push_back(std::move(f));
    }
    std::sort(irr.begin(), irr.end(), [](const chartab::ClassFunction& a,
                                         const chartab::ClassFunction& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a < b;
    });

    // assemble the table
    std::vector<long> orders(cd.orders.begin(), cd.orders.end());
    std::vector<Int> cents;
    for (int c = 0; c < k; ++c) cents.push_back(Int(n / cd.sizes[c]));
    chartab::CharacterTable t = chartab::CharacterTable::build(identifier, orders, cents);
    for (long q : chartab::primes_up_to(e)) {
        std::vector<int> images(k);
        for (int c = 0; c < k; ++c) images[c] = cd.power_class(c, q) + 1;
        t.set_power_map(q, chartab::ParamMap(images));
    }
    t.set_irreducibles(std::move(irr));
    return t;
}

}  // namespace oracle
