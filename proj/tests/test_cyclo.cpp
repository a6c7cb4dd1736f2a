#include <doctest.h>

#include <random>
#include <sstream>

#include "chartab/cyclo.hpp"

using chartab::Cyclotomic;
using chartab::Rat;

namespace {
Cyclotomic E(long n, long k = 1) { return Cyclotomic::root_of_unity(n, k); }
}  // namespace

TEST_CASE("roots of unity canonicalize") {
    CHECK(E(1, 0) == Cyclotomic(1));
    CHECK(E(4, 2) == Cyclotomic(-1));
    CHECK(E(3, 1) + E(3, 2) == Cyclotomic(-1));
    CHECK(E(2, 1) == Cyclotomic(-1));
    CHECK(E(6).conductor() == 3);  // E(6) = -E(3)^2
    CHECK(E(6).to_string() == "-E(3)^2");
    CHECK(E(9, 3) == E(3));
    CHECK(E(12, 4) == E(3));
    CHECK(E(5).pow(5) == Cyclotomic(1));
    CHECK(E(45).pow(45) == Cyclotomic(1));
}

TEST_CASE("known GAP basis expansions") {
    // E(9) is not a basis element: E(9) = -E(9)^4-E(9)^7.
    CHECK(E(9).to_string() == "-E(9)^4-E(9)^7");
    CHECK(E(9, 8).to_string() == "-E(9)^2-E(9)^5");
    CHECK((E(5) + E(5, 4)).to_string() == "E(5)+E(5)^4");
}

TEST_CASE("exact arithmetic") {
    Cyclotomic sqrtm3 = E(3) - E(3, 2);
    CHECK(sqrtm3 * sqrtm3 == Cyclotomic(-3));
    Cyclotomic sqrtm2 = E(8) + E(8, 3);
    CHECK(sqrtm2 * sqrtm2 == Cyclotomic(-2));
    Cyclotomic x = E(7) + Cyclotomic(Rat(2, 3)) * E(7, 3);
    CHECK(x * Cyclotomic(1) == x);
    CHECK((x * E(5)) / E(5) == x);
    CHECK(x - x == Cyclotomic(0));
    CHECK_THROWS_AS(x / Cyclotomic(0), chartab::Error);
}

TEST_CASE("division round trips") {
    std::mt19937_64 rng(42);
    std::vector<long> conductors{3, 4, 5, 7, 8, 9, 12, 15, 24};
    for (int trial = 0; trial < 60; ++trial) {
        long n = conductors[rng() % conductors.size()];
        Cyclotomic x(0), y(0);
        for (int t = 0; t < 3; ++t) {
            x += Cyclotomic(static_cast<long>(rng() % 7) - 3) * E(n, rng() % n);
            y += Cyclotomic(static_cast<long>(rng() % 7) - 3) * E(n, rng() % n);
        }
        if (y.is_zero()) continue;
        CHECK((x * y) / y == x);
    }
}

TEST_CASE("square roots match the printed expansions") {
    CHECK(Cyclotomic::sqrt_integer(-3).to_string() == "E(3)-E(3)^2");
    CHECK(Cyclotomic::sqrt_integer(-1).to_string() == "E(4)");
    CHECK(Cyclotomic::sqrt_integer(-2).to_string() == "E(8)+E(8)^3");
    CHECK(Cyclotomic::sqrt_integer(-6).to_string() == "E(24)+E(24)^11-E(24)^17-E(24)^19");
    CHECK(Cyclotomic::sqrt_integer(2).to_string() == "E(8)-E(8)^3");
    CHECK(Cyclotomic::sqrt_integer(3).to_string() == "-E(12)^7+E(12)^11");
    CHECK(Cyclotomic::sqrt_integer(5).to_string() == "E(5)-E(5)^2-E(5)^3+E(5)^4");
    CHECK(Cyclotomic::sqrt_integer(4) == Cyclotomic(2));
    CHECK(Cyclotomic::sqrt_integer(-4) == Cyclotomic(2) * E(4));
}

TEST_CASE("square root squares back") {
    for (long m = -50; m <= 50; ++m) {
        if (m == 0) continue;
        Cyclotomic r = Cyclotomic::sqrt_integer(m);
        CHECK(r * r == Cyclotomic(m));
    }
}

TEST_CASE("galois action") {
    Cyclotomic sqrtm3 = Cyclotomic::sqrt_integer(-3);
    CHECK(sqrtm3.galois(1) == sqrtm3);
    CHECK(sqrtm3.galois(2) == -sqrtm3);
    Cyclotomic x = E(24) + Cyclotomic(2) * E(24, 11);
    for (long k : {5L, 7L, 11L, 13L}) {
        for (long kk : {5L, 7L, 11L, 13L}) {
            CHECK(x.galois(k).galois(kk) == x.galois(k * kk % 24));
        }
    }
    CHECK(Cyclotomic(Rat(5, 7)).galois(3) == Cyclotomic(Rat(5, 7)));
    CHECK_THROWS_AS(E(9).galois(3), chartab::Error);
    // conjugation is galois(-1)
    CHECK((E(5) + E(5, 4)).is_real());
    CHECK(!E(5).is_real());
    CHECK(E(7).conjugate() == E(7, 6));
}

TEST_CASE("cubic gaussian periods") {
    for (long q : {7L, 13L, 31L}) {
        Cyclotomic eta = Cyclotomic::gaussian_period_cubic(q);
        // Orbit under a generator of the multiplicative group is {eta0, eta1, eta2},
        // and the three periods sum to -1.
        long r = 0;
        for (long g = 2; g < q; ++g) {
            bool is_cube = false;
            for (long x = 1; x < q; ++x)
                if (chartab::power_mod(x, 3, q) == g) is_cube = true;
            if (!is_cube) {
                r = g;
                break;
            }
        }
        Cyclotomic eta1 = eta.galois(r);
        Cyclotomic eta2 = eta1.galois(r);
        CHECK(eta != eta1);
        CHECK(eta1 != eta2);
        CHECK(eta2 != eta);
        CHECK(eta2.galois(r) == eta);
        CHECK(eta + eta1 + eta2 == Cyclotomic(-1));
        // Fixed by every cube.
        CHECK(eta.galois(chartab::power_mod(r, 3, q)) == eta);
    }
    // Paper's J4 usage: multipliers {1,5,25} give the three conjugates for q=31.
    Cyclotomic c31 = Cyclotomic::gaussian_period_cubic(31);
    CHECK(c31.galois(5) != c31);
    CHECK(c31.galois(25) != c31);
    CHECK(c31.galois(5).galois(5) == c31.galois(25));
    CHECK_THROWS_AS(Cyclotomic::gaussian_period_cubic(11), chartab::Error);
}

TEST_CASE("field membership") {
    Cyclotomic sqrtm3 = Cyclotomic::sqrt_integer(-3);
    CHECK(chartab::field_membership(sqrtm3, {E(3)}));
    CHECK(!chartab::field_membership(E(4), {Cyclotomic(1)}));
    CHECK(chartab::field_membership(E(4), {E(4)}));
    // NF(15,[1,2,4,8]) is generated by the period zeta15+zeta15^2+zeta15^4+zeta15^8;
    // it contains sqrt(-15).
    Cyclotomic eta = E(15) + E(15, 2) + E(15, 4) + E(15, 8);
    CHECK(chartab::field_membership(Cyclotomic::sqrt_integer(-15), {eta}));
    CHECK(!chartab::field_membership(Cyclotomic::sqrt_integer(-3), {eta}));
    // x is always a member of the field it generates.
    CHECK(chartab::field_membership(eta, {eta}));
}

TEST_CASE("integrality checks") {
    CHECK(E(5).is_integral());
    CHECK(!(E(5) / Cyclotomic(2)).is_integral());
    CHECK((E(3) * Cyclotomic(6)).integral_divisible_by(3));
    CHECK(!(E(3) * Cyclotomic(6)).integral_divisible_by(4));
    CHECK(Cyclotomic(0).is_integer());
    CHECK(Cyclotomic(Rat(4, 2)).is_integer());
    CHECK(!Cyclotomic(Rat(1, 2)).is_integer());
}

TEST_CASE("total order is consistent") {
    std::vector<Cyclotomic> vals{Cyclotomic(0), Cyclotomic(1), E(3), E(4), E(3) + E(4),
                                 Cyclotomic(-2), E(5, 2)};
    std::sort(vals.begin(), vals.end());
    for (size_t i = 0; i + 1 < vals.size(); ++i) {
        CHECK(vals[i] < vals[i + 1]);
        CHECK(!(vals[i + 1] < vals[i]));
    }
}

TEST_CASE("rendering") {
    CHECK(Cyclotomic(Rat(-3, 2)).to_string() == "-3/2");
    CHECK((Cyclotomic(2) * E(4)).to_string() == "2*E(4)");
    CHECK((E(4) / Cyclotomic(2)).to_string() == "1/2*E(4)");
    CHECK((Cyclotomic(1) + E(4)).to_string() == "1+E(4)");
    std::ostringstream os;
    os << Cyclotomic::sqrt_integer(-3);
    CHECK(os.str() == "E(3)-E(3)^2");
}
