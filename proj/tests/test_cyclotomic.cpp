#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "k3lat/cyclotomic.hpp"

using namespace k3lat;

namespace {

CyclotomicNumber random_element(std::mt19937_64& rng, long n) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<long> pow(0, n - 1);
    auto x = CyclotomicNumber(n, Rat(num(rng), den(rng)));
    for (int t = 0; t < 3; ++t)
        x += CyclotomicNumber(n, Rat(num(rng), den(rng))) *
             CyclotomicNumber::zeta_pow(n, pow(rng));
    return x;
}

}  // namespace

TEST_CASE("cyclotomic polynomial degrees and values") {
    long expected_phi[] = {0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
    for (long n = 1; n <= 12; ++n) {
        REQUIRE(euler_phi(n) == expected_phi[n]);
        REQUIRE(static_cast<long>(cyclotomic_polynomial(n).size()) == expected_phi[n] + 1);
    }
    REQUIRE(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
    REQUIRE(cyclotomic_polynomial(2) == std::vector<Int>{1, 1});
    REQUIRE(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
    REQUIRE(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});
    REQUIRE(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
}

TEST_CASE("zeta is a primitive N-th root of unity for N <= 66") {
    for (long n = 2; n <= 66; ++n) {
        auto one = CyclotomicNumber(n, Rat(1));
        REQUIRE(CyclotomicNumber::zeta_pow(n, n) == one);
        // primitivity: zeta^k != 1 for 0 < k < n
        for (long k = 1; k < n; ++k)
            REQUIRE(!(CyclotomicNumber::zeta_pow(n, k) == one));
    }
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(20260826);
    for (long n : {5L, 7L, 12L, 20L}) {
        auto zero = CyclotomicNumber(n);
        auto one = CyclotomicNumber(n, Rat(1));
        for (int iter = 0; iter < 60; ++iter) {
            auto a = random_element(rng, n);
            auto b = random_element(rng, n);
            auto c = random_element(rng, n);
            REQUIRE((a + b) * c == a * c + b * c);
            REQUIRE(a * b == b * a);
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a + (-a) == zero);
            if (!a.is_zero()) {
                REQUIRE(a * a.inverse() == one);
                REQUIRE(a / a == one);
            }
        }
    }
}

TEST_CASE("rational embedding and detection") {
    auto x = CyclotomicNumber(7, Rat(3, 4));
    REQUIRE(x.is_rational());
    REQUIRE(*x.rational_value() == Rat(3, 4));
    auto z = CyclotomicNumber::zeta_pow(7, 2);
    REQUIRE(!z.is_rational());
    // zeta_2 = -1 is rational in Q(zeta_2)
    auto m1 = CyclotomicNumber::zeta_pow(2, 1);
    REQUIRE(m1.is_rational());
    REQUIRE(*m1.rational_value() == Rat(-1));
}

TEST_CASE("galois conjugation and traces") {
    // trace of zeta_p is -1 for primes
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        REQUIRE(CyclotomicNumber::zeta_pow(p, 1).trace() == Rat(-1));
        REQUIRE(CyclotomicNumber(p, Rat(1)).trace() == Rat(p - 1));
    }
    // galois orbit sums are rational for random elements
    std::mt19937_64 rng(9);
    for (long n : {8L, 12L, 15L}) {
        for (int iter = 0; iter < 30; ++iter) {
            auto a = random_element(rng, n);
            auto sum = CyclotomicNumber(n);
            for (long k = 1; k < n; ++k)
                if (std::gcd(k, n) == 1) sum += a.galois(k);
            REQUIRE(sum.is_rational());
            REQUIRE(*sum.rational_value() == a.trace());
        }
    }
    // galois(k) maps zeta to zeta^k
    REQUIRE(CyclotomicNumber::zeta_pow(7, 1).galois(3) == CyclotomicNumber::zeta_pow(7, 3));
}

TEST_CASE("lift and descend round trips") {
    std::mt19937_64 rng(13);
    for (auto [m, factor] : {std::pair<long, long>{5, 3}, {4, 5}, {7, 2}, {3, 11}}) {
        for (int iter = 0; iter < 25; ++iter) {
            auto a = random_element(rng, m);
            auto lifted = a.lift(factor);
            REQUIRE(lifted.conductor() == m * factor);
            auto back = lifted.descend(m);
            REQUIRE(back.has_value());
            REQUIRE(*back == a);
        }
    }
    // an element not in the subfield does not descend
    auto z15 = CyclotomicNumber::zeta_pow(15, 1);
    REQUIRE(!z15.descend(5).has_value());
    // but zeta_15^3 = zeta_5 does
    auto d = CyclotomicNumber::zeta_pow(15, 3).descend(5);
    REQUIRE(d.has_value());
    REQUIRE(*d == CyclotomicNumber::zeta_pow(5, 1));
}

TEST_CASE("1 + zeta_m^{-1} vanishes exactly when m = 2") {
    for (long m = 1; m <= 66; ++m) {
        auto v = CyclotomicNumber(m, Rat(1)) + CyclotomicNumber::zeta_pow(m, -1);
        REQUIRE(v.is_zero() == (m == 2));
    }
}

TEST_CASE("division by zero throws") {
    REQUIRE_THROWS(CyclotomicNumber(5).inverse());
}
