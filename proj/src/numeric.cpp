#include "chartab/numeric.hpp"

namespace chartab {

long checked_long(const Int& v) {
    if (!v.fits_slong_p()) throw Error("integer too large for machine word: " + v.get_str());
    return v.get_si();
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
    if (n <= 0) throw Error("factorize requires a positive integer");
    std::vector<std::pair<long, int>> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<long> prime_divisors(long n) {
    std::vector<long> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    for (long p = 2; p <= n; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

long power_mod(long base, long exp, long mod) {
    unsigned long long r = 1, b = static_cast<unsigned long long>(((base % mod) + mod) % mod);
    while (exp > 0) {
        if (exp & 1) r = r * b % static_cast<unsigned long long>(mod);
        b = b * b % static_cast<unsigned long long>(mod);
        exp >>= 1;
    }
    return static_cast<long>(r);
}

long inverse_mod(long a, long mod) {
    long t = 0, newt = 1, r = mod, newr = ((a % mod) + mod) % mod;
    while (newr != 0) {
        long q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (r != 1) throw Error("not invertible mod " + std::to_string(mod));
    return ((t % mod) + mod) % mod;
}

}  // namespace chartab
