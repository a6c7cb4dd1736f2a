#pragma once

#include <compare>
#include <iosfwd>
#include <vector>

#include "chartab/numeric.hpp"

namespace chartab {

/// An element of a cyclotomic field Q(zeta_n), held in canonical form:
/// the conductor n is minimal (n = 1 for rationals, never n = 2 mod 4),
/// and the coefficients are taken over the Zumbroich basis of Q(zeta_n).
/// Equal field elements therefore have identical representations, so
/// structural comparison is field equality.  All arithmetic is exact.
class Cyclotomic {
public:
    Cyclotomic() : conductor_(1) {}
    Cyclotomic(long rational) : Cyclotomic(Rat(rational)) {}
    Cyclotomic(const Int& rational);
    Cyclotomic(const Rat& rational);

    /// zeta_n^k (k may be any integer; reduced mod n).
    static Cyclotomic root_of_unity(long n, long k);

    /// Canonical square root of the nonzero integer m: positive real root for
    /// m > 0, root with positive imaginary part for m < 0.  Built from quadratic
    /// Gauss sums, matching the classical printed expansions (e.g. E(3)-E(3)^2).
    static Cyclotomic sqrt_integer(long m);

    /// The cubic Gaussian period eta_0 = sum of zeta_q^j over nonzero cubic
    /// residues j mod q, for a prime q = 1 mod 3.  Its Galois orbit has size 3.
    static Cyclotomic gaussian_period_cubic(long q);

    long conductor() const { return conductor_; }
    const std::vector<std::pair<long, Rat>>& coefficients() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_rational() const { return conductor_ == 1; }
    bool is_integer() const;
    /// True iff all basis coefficients are rational integers, i.e. the value
    /// is an algebraic integer (the Zumbroich basis is an integral basis).
    bool is_integral() const;
    bool is_real() const;

    Rat rational_value() const;

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator/(const Cyclotomic& o) const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

    bool operator==(const Cyclotomic& o) const {
        return conductor_ == o.conductor_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    /// Total order (conductor first, then coefficient lists); used for
    /// deterministic sorting and set semantics, not an order of the reals.
    bool operator<(const Cyclotomic& o) const;

    /// Galois conjugate under zeta_n -> zeta_n^k; requires gcd(k, n) = 1.
    Cyclotomic galois(long k) const;
    Cyclotomic conjugate() const;

    Cyclotomic pow(long e) const;

    /// True iff every coefficient divided by d is still integral.
    bool integral_divisible_by(const Int& d) const;

    /// GAP-style rendering: "E(n)^k" sums with rational coefficients.
    std::string to_string() const;

private:
    long conductor_;
    std::vector<std::pair<long, Rat>> coeffs_;  // sorted by exponent; nonzero coefficients only

    void reduce_conductor();
    static Cyclotomic from_parts(long n, std::vector<std::pair<long, Rat>> raw);
    friend class CycloBuilder;
};

/// True iff x is fixed by every Galois automorphism of the enclosing
/// cyclotomic field that fixes all the generators.
bool field_membership(const Cyclotomic& x, const std::vector<Cyclotomic>& generators);

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x);

}  // namespace chartab
