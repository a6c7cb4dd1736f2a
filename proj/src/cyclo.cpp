#include "chartab/cyclo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace chartab {

namespace {

// Per-conductor data for the Zumbroich basis of Q(zeta_n).
// An exponent e mod n decomposes into digit coordinates j_p = e * u_p mod p^v
// (u_p the inverse of n / p^v), so that zeta_n^e = prod_p zeta_{p^v}^{j_p}.
// The basis consists of the exponents whose digits are admissible:
// for p = 2: j < 2^(v-1); for odd p: balanced lower digits and nonzero top digit.
struct PrimePart {
    long p;
    long q;     // p^v
    long v;     // exponent
    long mult;  // n / q
    long u;     // inverse of mult mod q
};

struct ConductorInfo {
    long n;
    std::vector<PrimePart> parts;
};

const ConductorInfo& conductor_info(long n) {
    static std::mutex mtx;
    static std::unordered_map<long, std::unique_ptr<ConductorInfo>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
    auto info = std::make_unique<ConductorInfo>();
    info->n = n;
    for (auto& [p, e] : factorize(n)) {
        PrimePart part;
        part.p = p;
        part.v = e;
        part.q = 1;
        for (int i = 0; i < e; ++i) part.q *= p;
        part.mult = n / part.q;
        part.u = (part.mult == 1) ? 1 : inverse_mod(part.mult % part.q, part.q);
        info->parts.push_back(part);
    }
    auto& ref = *(cache[n] = std::move(info));
    return ref;
}

// Digit of exponent e at the prime part.
inline long digit_of(const PrimePart& part, long e) {
    return (e % part.q) * part.u % part.q;
}

// Splits the digit j (for odd p) into balanced lower digits and the top digit;
// returns the top digit in {0 .. p-1}.
long top_digit(const PrimePart& part, long j) {
    long t = j;
    long half = (part.p - 1) / 2;
    for (long k = 0; k + 1 < part.v; ++k) {
        long d = ((t % part.p) + part.p) % part.p;
        if (d > half) d -= part.p;
        t = (t - d) / part.p;
    }
    return ((t % part.p) + part.p) % part.p;
}

}  // namespace

// Accumulates terms over a fixed conductor, expanding arbitrary exponents into
// the Zumbroich basis, then normalizes (zero removal, conductor reduction).
class CycloBuilder {
public:
    explicit CycloBuilder(long n) : n_(n) {}

    void add(long exponent, const Rat& coeff) {
        if (coeff == 0) return;
        long e = ((exponent % n_) + n_) % n_;
        expand(e, coeff);
    }

    // Adds a value of conductor m (dividing or lifted into n_) scaled into this conductor.
    void add_value(const Cyclotomic& x, const Rat& scale) {
        if (scale == 0) return;
        long f = n_ / x.conductor();
        for (auto& [e, c] : x.coefficients()) add(e * f, c * scale);
    }

    Cyclotomic finish() {
        std::vector<std::pair<long, Rat>> coeffs;
        coeffs.reserve(acc_.size());
        for (auto& [e, c] : acc_)
            if (c != 0) coeffs.emplace_back(e, c);
        return Cyclotomic::from_parts(n_, std::move(coeffs));
    }

private:
    void expand(long e, const Rat& coeff) {
        const ConductorInfo& info = conductor_info(n_);
        std::vector<std::pair<long, Rat>> terms{{e, coeff}};
        for (const auto& part : info.parts) {
            std::vector<std::pair<long, Rat>> next;
            next.reserve(terms.size());
            for (auto& [te, tc] : terms) {
                long j = digit_of(part, te);
                if (part.p == 2) {
                    if (j < part.q / 2) {
                        next.emplace_back(te, tc);
                    } else {
                        next.emplace_back((te + n_ / 2) % n_, -tc);
                    }
                } else if (top_digit(part, j) != 0) {
                    next.emplace_back(te, tc);
                } else {
                    long step = n_ / part.p;
                    long cur = te;
                    for (long s = 1; s < part.p; ++s) {
                        cur = (cur + step) % n_;
                        next.emplace_back(cur, -tc);
                    }
                }
            }
            terms = std::move(next);
        }
        for (auto& [te, tc] : terms) acc_[te] += tc;
    }

    long n_;
    std::map<long, Rat> acc_;
};

Cyclotomic::Cyclotomic(const Int& rational) : conductor_(1) {
    if (rational != 0) coeffs_.emplace_back(0, Rat(rational));
}

Cyclotomic::Cyclotomic(const Rat& rational) : conductor_(1) {
    Rat r = rational;
    r.canonicalize();
    if (r != 0) coeffs_.emplace_back(0, r);
}

Cyclotomic Cyclotomic::from_parts(long n, std::vector<std::pair<long, Rat>> raw) {
    Cyclotomic x;
    x.conductor_ = n;
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    x.coeffs_ = std::move(raw);
    if (x.coeffs_.empty()) {
        x.conductor_ = 1;
        return x;
    }
    x.reduce_conductor();
    return x;
}

void Cyclotomic::reduce_conductor() {
    // The digit coordinates j_q are intrinsic to the value (zeta_n^e factors as
    // prod_q zeta_q^{j_q}), so descending to a smaller conductor just reassembles
    // the exponent from adjusted digits with the new conductor's weights.
    bool changed = true;
    while (changed && conductor_ > 1 && !coeffs_.empty()) {
        changed = false;
        const ConductorInfo& info = conductor_info(conductor_);
        for (const auto& part : info.parts) {
            if (part.v >= 2) {
                bool all = true;
                for (auto& [e, c] : coeffs_)
                    if (digit_of(part, e) % part.p != 0) {
                        all = false;
                        break;
                    }
                if (!all) continue;
                bool remove = (part.p == 2 && part.v == 2);
                long nprime = remove ? conductor_ / 4 : conductor_ / part.p;
                std::vector<std::pair<long, Rat>> next;
                next.reserve(coeffs_.size());
                for (auto& [e, c] : coeffs_) {
                    long acc = 0;
                    for (const auto& op : info.parts) {
                        long j = digit_of(op, e);
                        long qnew = op.q;
                        if (op.p == part.p) {
                            if (remove) continue;
                            j /= part.p;
                            qnew = op.q / part.p;
                        }
                        acc = (acc + nprime / qnew * j) % nprime;
                    }
                    next.emplace_back(acc, c);
                }
                conductor_ = nprime;
                std::sort(next.begin(), next.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                coeffs_ = std::move(next);
                changed = true;
                break;
            } else if (part.p != 2) {
                // v = 1: the element descends iff within each residue group mod n/p
                // all p-1 digit slots appear, carrying one common coefficient.
                long nprime = conductor_ / part.p;
                std::map<long, std::pair<long, Rat>> groups;  // key -> (count, coefficient)
                std::map<long, long> sample;                  // key -> a representative exponent
                bool ok = true;
                for (auto& [e, c] : coeffs_) {
                    long key = e % nprime;
                    auto it = groups.find(key);
                    if (it == groups.end()) {
                        groups[key] = {1, c};
                        sample[key] = e;
                    } else {
                        if (it->second.second != c) {
                            ok = false;
                            break;
                        }
                        ++it->second.first;
                    }
                }
                if (!ok) continue;
                for (auto& [key, cnt] : groups)
                    if (cnt.first != part.p - 1) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                std::vector<std::pair<long, Rat>> next;
                next.reserve(groups.size());
                for (auto& [key, cnt] : groups) {
                    long eold = sample[key];
                    long acc = 0;
                    for (const auto& op : info.parts) {
                        if (op.p == part.p) continue;
                        long j = digit_of(op, eold);
                        acc = (acc + nprime / op.q * j) % nprime;
                    }
                    next.emplace_back(acc, -cnt.second);
                }
                conductor_ = nprime;
                std::sort(next.begin(), next.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                coeffs_ = std::move(next);
                changed = true;
                break;
            }
        }
    }
    if (coeffs_.empty()) conductor_ = 1;
    if (conductor_ == 1 && !coeffs_.empty() && coeffs_[0].first != 0)
        throw Error("internal: rational with nonzero exponent");
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
    if (n < 1) throw Error("root_of_unity requires n >= 1");
    long kk = ((k % n) + n) % n;
    long g = std::gcd(n, kk);
    long nn = n / g;
    kk = (g == n) ? 0 : kk / g;
    Rat sign = 1;
    if (nn % 4 == 2) {
        // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
        long m = nn / 2;
        long inv2 = (m + 1) / 2;
        if (kk % 2 == 1) sign = -1;
        nn = m;
        kk = kk % m * (inv2 % m) % m;
    }
    CycloBuilder b(nn);
    b.add(kk, sign);
    return b.finish();
}

bool Cyclotomic::is_integer() const {
    return is_rational() && (coeffs_.empty() || chartab::is_integer(coeffs_[0].second));
}

bool Cyclotomic::is_integral() const {
    for (auto& [e, c] : coeffs_)
        if (!chartab::is_integer(c)) return false;
    return true;
}

bool Cyclotomic::is_real() const { return *this == conjugate(); }

Rat Cyclotomic::rational_value() const {
    if (!is_rational()) throw Error("value is irrational: " + to_string());
    return coeffs_.empty() ? Rat(0) : coeffs_[0].second;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& [e, c] : r.coeffs_) c = -c;
    return r;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    long n = std::lcm(conductor_, o.conductor_);
    CycloBuilder b(n);
    b.add_value(*this, 1);
    b.add_value(o, 1);
    return b.finish();
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    if (o.is_zero()) return *this;
    long n = std::lcm(conductor_, o.conductor_);
    CycloBuilder b(n);
    b.add_value(*this, 1);
    b.add_value(o, -1);
    return b.finish();
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    if (is_zero() || o.is_zero()) return Cyclotomic();
    if (o.is_rational()) {
        Cyclotomic r = *this;
        const Rat& q = o.coeffs_[0].second;
        for (auto& [e, c] : r.coeffs_) c *= q;
        return r;
    }
    if (is_rational()) return o * *this;
    long n = std::lcm(conductor_, o.conductor_);
    long f1 = n / conductor_, f2 = n / o.conductor_;
    CycloBuilder b(n);
    for (auto& [e1, c1] : coeffs_)
        for (auto& [e2, c2] : o.coeffs_) b.add(e1 * f1 + e2 * f2, c1 * c2);
    return b.finish();
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& o) const {
    if (o.is_zero()) throw Error("division by zero");
    if (o.is_rational()) {
        Cyclotomic r = *this;
        const Rat& q = o.coeffs_[0].second;
        for (auto& [e, c] : r.coeffs_) c /= q;
        return r;
    }
    // Invert via the product of the nontrivial Galois conjugates.
    long n = o.conductor_;
    Cyclotomic prod(1);
    for (long k = 2; k <= n; ++k) {
        if (std::gcd(k, n) == 1) prod *= o.galois(k);
    }
    Cyclotomic norm = o * prod;
    if (!norm.is_rational()) throw Error("internal: field norm is irrational");
    return *this * prod / norm;
}

bool Cyclotomic::operator<(const Cyclotomic& o) const {
    if (conductor_ != o.conductor_) return conductor_ < o.conductor_;
    size_t m = std::min(coeffs_.size(), o.coeffs_.size());
    for (size_t i = 0; i < m; ++i) {
        if (coeffs_[i].first != o.coeffs_[i].first) return coeffs_[i].first < o.coeffs_[i].first;
        int c = cmp(coeffs_[i].second, o.coeffs_[i].second);
        if (c != 0) return c < 0;
    }
    return coeffs_.size() < o.coeffs_.size();
}

Cyclotomic Cyclotomic::galois(long k) const {
    long n = conductor_;
    long kk = ((k % n) + n) % n;
    if (n == 1) return *this;
    if (std::gcd(kk, n) != 1)
        throw Error("galois exponent " + std::to_string(k) + " not coprime to conductor " +
                    std::to_string(n));
    CycloBuilder b(n);
    for (auto& [e, c] : coeffs_) b.add(e * kk % n, c);
    return b.finish();
}

Cyclotomic Cyclotomic::conjugate() const { return galois(conductor_ - 1 == 0 ? 1 : conductor_ - 1); }

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return Cyclotomic(1) / pow(-e);
    Cyclotomic base = *this, r(1);
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

bool Cyclotomic::integral_divisible_by(const Int& d) const {
    for (auto& [e, c] : coeffs_) {
        Rat q = c / Rat(d);
        q.canonicalize();
        if (!chartab::is_integer(q)) return false;
    }
    return true;
}

Cyclotomic Cyclotomic::sqrt_integer(long m) {
    if (m == 0) throw Error("sqrt of zero is trivial but disallowed: pass nonzero m");
    long a = std::abs(m);
    // Extract the square part.
    long f = 1, s = 1;
    for (long d = 2; d * d <= a; ++d) {
        int e = 0;
        while (a % d == 0) {
            a /= d;
            ++e;
        }
        for (int i = 0; i + 1 < e; i += 2) f *= d;
        if (e % 2 == 1) s *= d;
    }
    s *= a;  // s is the squarefree part of |m|
    Cyclotomic r(f);
    int icount = 0;  // number of positive-imaginary factors
    long rest = s;
    if (rest % 2 == 0) {
        // sqrt(2) = E(8) - E(8)^3, positive real
        Cyclotomic s2 = root_of_unity(8, 1) - root_of_unity(8, 3);
        r *= s2;
        rest /= 2;
    }
    for (long p = 3; p <= rest; p += 2) {
        if (rest % p != 0) continue;
        rest /= p;
        // Quadratic Gauss sum: sqrt(p) for p = 1 mod 4, sqrt(-p) for p = 3 mod 4.
        CycloBuilder b(p);
        for (long x = 1; x < p; ++x) {
            long sq = power_mod(x, (p - 1) / 2, p);
            b.add(x, sq == 1 ? 1 : -1);
        }
        r *= b.finish();
        if (p % 4 == 3) ++icount;
    }
    // Square of the current product is +|s| when icount is even, -|s| when odd.
    bool square_negative = (icount % 2 == 1);
    if (square_negative != (m < 0)) {
        r *= root_of_unity(4, 1);
        ++icount;
    }
    // Fix the ray: positive real for m > 0, positive imaginary for m < 0.
    int rmod = icount % 4;
    if ((m > 0 && rmod == 2) || (m < 0 && rmod == 3)) r = -r;
    return r;
}

Cyclotomic Cyclotomic::gaussian_period_cubic(long q) {
    if (!is_prime(q) || q % 3 != 1)
        throw Error("gaussian_period_cubic requires a prime q = 1 mod 3");
    std::set<long> cubes;
    for (long x = 1; x < q; ++x) cubes.insert(power_mod(x, 3, q));
    CycloBuilder b(q);
    for (long j : cubes) b.add(j, 1);
    return b.finish();
}

bool field_membership(const Cyclotomic& x, const std::vector<Cyclotomic>& generators) {
    long n = x.conductor();
    for (auto& g : generators) n = std::lcm(n, g.conductor());
    for (long k = 2; k < n; ++k) {
        if (std::gcd(k, n) != 1) continue;
        bool fixes_all = true;
        for (auto& g : generators)
            if (g.galois(k) != g) {
                fixes_all = false;
                break;
            }
        if (fixes_all && x.galois(k) != x) return false;
    }
    return true;
}

std::string Cyclotomic::to_string() const {
    if (is_zero()) return "0";
    if (is_rational()) return coeffs_[0].second.get_str();
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : coeffs_) {
        std::string term;
        if (e == 0) {
            term = c.get_str();
        } else {
            std::string root = "E(" + std::to_string(conductor_) + ")";
            if (e != 1) root += "^" + std::to_string(e);
            if (c == 1)
                term = root;
            else if (c == -1)
                term = "-" + root;
            else
                term = c.get_str() + "*" + root;
        }
        if (!first && term[0] != '-') os << "+";
        os << term;
        first = false;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.to_string(); }

}  // namespace chartab
