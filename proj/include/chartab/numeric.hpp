#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace chartab {

using Int = mpz_class;
using Rat = mpq_class;

/// Error type for precondition violations; "failure" results are values, not exceptions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_integer(const Rat& q) {
    if (!is_integer(q)) throw Error("expected an integer, got " + q.get_str());
    return q.get_num();
}

inline bool divides(const Int& a, const Int& b) {
    if (a == 0) return b == 0;
    return b % a == 0;
}

long checked_long(const Int& v);

bool is_prime(long n);

/// Prime factorization of n > 0 as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<long, int>> factorize(long n);

/// Distinct prime divisors of n > 0, ascending.
std::vector<long> prime_divisors(long n);

/// All primes <= n, ascending.
std::vector<long> primes_up_to(long n);

long power_mod(long base, long exp, long mod);
long inverse_mod(long a, long mod);

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

}  // namespace chartab
