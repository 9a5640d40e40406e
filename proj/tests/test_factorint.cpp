#include "doctest.h"

#include <cstdint>
#include <random>
#include <vector>

#include "taulab/errors.hpp"
#include "taulab/factorint.hpp"

using namespace taulab;

namespace {

mpz_class next_prime_after(const mpz_class& n) {
    mpz_class p;
    mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
    return p;
}

}  // namespace

TEST_CASE("prime sieve endpoints") {
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(2) == std::vector<std::uint64_t>{2});
    CHECK(primes_up_to(10) == std::vector<std::uint64_t>({2, 3, 5, 7}));
    CHECK(primes_up_to(100).size() == 25);
}

TEST_CASE("primality on knowns and a strong-pseudoprime trap") {
    CHECK(!is_prime(mpz_class(0)));
    CHECK(!is_prime(mpz_class(1)));
    CHECK(is_prime(mpz_class(2)));
    CHECK(is_prime(mpz_class(359)));
    CHECK(!is_prime(mpz_class(1403)));  // 23 * 61
    CHECK(!is_prime(mpz_class("3215031751")));  // psp to bases 2,3,5,7
    mpz_class mersenne61 = (mpz_class(1) << 61) - 1;
    CHECK(is_prime(mersenne61));
    CHECK(!is_prime(mersenne61 * 3));
    CHECK(is_prime(next_prime_after(mpz_class(1) << 128)));
}

TEST_CASE("small factorizations are exact") {
    Factorization f = factor(mpz_class(-24));
    CHECK(f.sign == -1);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<mpz_class, unsigned>(mpz_class(2), 3u));
    CHECK(f.factors[1] == std::pair<mpz_class, unsigned>(mpz_class(3), 1u));
    CHECK(f.complete);
    CHECK(!f.cofactor.has_value());
    CHECK(f.reassemble() == -24);

    f = factor(mpz_class(1));
    CHECK(f.sign == 1);
    CHECK(f.factors.empty());
    CHECK(f.reassemble() == 1);
    f = factor(mpz_class(-1));
    CHECK(f.sign == -1);
    CHECK(f.reassemble() == -1);
    CHECK_THROWS_AS(factor(mpz_class(0)), OutOfRangeError);

    f = factor(mpz_class(84480));  // 2^9 * 3 * 5 * 11
    REQUIRE(f.factors.size() == 4);
    CHECK(f.factors[0] == std::pair<mpz_class, unsigned>(mpz_class(2), 9u));
    CHECK(f.factors[3] == std::pair<mpz_class, unsigned>(mpz_class(11), 1u));
}

TEST_CASE("factorization reassembles over random inputs") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 150; ++i) {
        std::int64_t v = static_cast<std::int64_t>(rng() % 999999999) + 2;
        if (i % 2) v = -v;
        mpz_class n(static_cast<long>(v));
        Factorization f = factor(n);
        CAPTURE(v);
        CHECK(f.complete);
        CHECK(f.reassemble() == n);
        for (std::size_t k = 0; k < f.factors.size(); ++k) {
            CHECK(is_prime(f.factors[k].first));
            if (k) CHECK(f.factors[k - 1].first < f.factors[k].first);
        }
    }
}

TEST_CASE("rho splits semiprimes past the trial range") {
    mpz_class p = next_prime_after(mpz_class(1) << 40);
    mpz_class q = next_prime_after(p);
    Factorization f = factor(p * q);
    CHECK(f.complete);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == p);
    CHECK(f.factors[1].first == q);
    CHECK(f.reassemble() == p * q);
}

TEST_CASE("factor is a pure function of its input") {
    mpz_class p = next_prime_after(mpz_class(1) << 44);
    mpz_class q = next_prime_after(mpz_class(1) << 45);
    Factorization a = factor(p * q);
    Factorization b = factor(p * q);
    CHECK(a.factors == b.factors);
    CHECK(a.complete == b.complete);
    CHECK(a.cofactor == b.cofactor);
}

TEST_CASE("perfect powers unwrap without rho effort") {
    mpz_class p = next_prime_after(mpz_class(1) << 41);
    Factorization f = factor(p * p * p, 1);  // budget too small for rho splits
    CHECK(f.complete);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == std::pair<mpz_class, unsigned>(p, 3u));

    f = factor(mpz_class(1) << 64);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == std::pair<mpz_class, unsigned>(mpz_class(2), 64u));
}

TEST_CASE("budget exhaustion reports an honest cofactor") {
    mpz_class p = next_prime_after(mpz_class(1) << 200);
    mpz_class q = next_prime_after(mpz_class(1) << 201);
    mpz_class n = p * q;
    Factorization f = factor(n, 16);
    CHECK(!f.complete);
    REQUIRE(f.cofactor.has_value());
    CHECK(*f.cofactor == n);
    CHECK(f.factors.empty());
    CHECK(f.reassemble() == n);

    Budgeted<mpz_class> lpf = largest_prime_factor(n, 16);
    CHECK(!lpf.complete);
    CHECK(lpf.value == 1);  // nothing split off: the bound degenerates
}

TEST_CASE("largest prime factor on conventions and knowns") {
    CHECK(largest_prime_factor(mpz_class(0)) == Budgeted<mpz_class>{mpz_class(1), true});
    CHECK(largest_prime_factor(mpz_class(1)).value == 1);
    CHECK(largest_prime_factor(mpz_class(-1)).value == 1);
    CHECK(largest_prime_factor(mpz_class(-24)).value == 3);
    CHECK(largest_prime_factor(mpz_class(-1472)).value == 23);
    CHECK(largest_prime_factor(mpz_class(359)).value == 359);
}

TEST_CASE("omega and radical on conventions and knowns") {
    CHECK(omega(mpz_class(0)).value == 0);
    CHECK(omega(mpz_class(1)).value == 0);
    CHECK(omega(mpz_class(-24)).value == 2);
    CHECK(omega(mpz_class(-6048)).value == 3);  // 2^5 3^3 7
    CHECK(radical(mpz_class(0)).value == 1);
    CHECK(radical(mpz_class(-24)).value == 6);
    CHECK(radical(mpz_class(84480)).value == 330);  // 2*3*5*11
}

TEST_CASE("smoothness thresholds at the boundary") {
    CHECK(is_smooth(mpz_class(16), 2.0));   // P=2 vs (ln 16)^2 ~ 7.69
    CHECK(!is_smooth(mpz_class(14), 2.0));  // P=7 vs (ln 14)^2 ~ 6.96
    CHECK(!is_smooth(mpz_class(2), 2.0));   // P=2 vs (ln 2)^2 ~ 0.48
    CHECK(is_smooth(mpz_class(10), 2.0));   // P=5 vs (ln 10)^2 ~ 5.30
    CHECK_THROWS_AS(is_smooth(mpz_class(1), 2.0), OutOfRangeError);
    CHECK_THROWS_AS(is_smooth(mpz_class(-5), 2.0), OutOfRangeError);
}

TEST_CASE("smooth census agrees with the pointwise test") {
    CHECK(count_smooth(5, 2.0) == 0);
    CHECK(count_smooth(30, 2.0) == 15);
    for (double a : {1.5, 2.0}) {
        std::uint64_t direct = 0;
        for (std::uint64_t n = 2; n <= 1000; ++n)
            if (is_smooth(mpz_class(static_cast<unsigned long>(n)), a)) ++direct;
        CAPTURE(a);
        CHECK(count_smooth(1000, a) == direct);
    }
    CHECK(count_smooth(100, 1.5) <= count_smooth(200, 1.5));
    CHECK_THROWS_AS(count_smooth(1, 2.0), OutOfRangeError);
    CHECK_THROWS_AS(count_smooth((std::uint64_t(1) << 31) + 1, 2.0), ResourceError);
}

TEST_CASE("logarithms far past double range") {
    CHECK(mpz_log(mpz_class(2)) == doctest::Approx(0.6931471805599453));
    CHECK(mpz_log(mpz_class(-8)) == doctest::Approx(3 * 0.6931471805599453));
    mpz_class big = mpz_class(1) << 1000;
    CHECK(mpz_log(big) == doctest::Approx(1000 * 0.6931471805599453).epsilon(1e-12));
    CHECK_THROWS_AS(mpz_log(mpz_class(0)), OutOfRangeError);
}
