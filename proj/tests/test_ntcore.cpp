#include "qchar/chi_sieve.hpp"
#include "qchar/lambda_sieve.hpp"
#include "qchar/ntcore.hpp"
#include "qchar/quad_char.hpp"
#include "qchar/rational.hpp"
#include "qchar/wide.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>
#include <stdexcept>

using namespace qchar;

TEST_CASE("rational arithmetic stays in lowest terms")
{
    const Rational a(6, -8);
    CHECK(a.to_string() == "-3/4");
    CHECK((a + Rational(3, 4)).is_zero());
    CHECK((Rational(1, 3) * Rational(3, 7)).to_string() == "1/7");
    CHECK((Rational(1, 2) / Rational(1, 4)).to_string() == "2/1");
    CHECK(Rational(5).to_string() == "5/1");
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational parsing")
{
    CHECK(Rational::parse("7/163") == Rational(7, 163));
    CHECK(Rational::parse("-4/6") == Rational(-2, 3));
    CHECK(Rational::parse("12") == Rational(12));
    CHECK_THROWS(Rational::parse("0.043"));
    CHECK_THROWS(Rational::parse("1/"));
    CHECK_THROWS(Rational::parse("a/b"));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK(Rational::parse_decimal("0.001") == Rational(1, 1000));
    CHECK(Rational::parse_decimal("-2.50") == Rational(-5, 2));
    CHECK(Rational::parse_decimal(".5") == Rational(1, 2));
    CHECK_THROWS(Rational::parse_decimal("1e-3"));
}

TEST_CASE("pi lower bound is below pi and close to it")
{
    const double lo = pi_lower_bound().to_double();
    CHECK(lo < 3.14159265358979323846);
    CHECK(lo > 3.14159265358979);
}

TEST_CASE("wide integers: checked arithmetic and printing")
{
    const wide_int big = static_cast<wide_int>(INT64_MAX) * 1000;
    CHECK(to_string(big) == "9223372036854775807000");
    CHECK(to_string(-big) == "-9223372036854775807000");
    CHECK(to_wide(to_bigint(-big)) == -big);
    CHECK_THROWS_AS(checked_mul(big, big), std::overflow_error);
    CHECK_THROWS_AS(to_int64(big), std::overflow_error);
    CHECK(to_int64(-5) == -5);
}

TEST_CASE("jacobi symbol agrees with Euler's criterion")
{
    for (std::uint64_t m = 3; m < 400; m += 2)
        for (std::int64_t n = -60; n < 500; ++n) REQUIRE(jacobi(n, m) == oracle::jacobi(n, m));
    CHECK_THROWS(jacobi(3, 10));
    CHECK_THROWS(jacobi(3, 0));
    CHECK(jacobi(5, 1) == 1);
}

TEST_CASE("jacobi symbol for large moduli")
{
    std::mt19937_64 rng(7);
    const std::uint64_t p = 1'000'000'007;
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t n = rng() % (p * 3);
        REQUIRE(jacobi_u(n, p) == oracle::legendre(static_cast<std::int64_t>(n % p), p));
    }
}

TEST_CASE("deterministic primality")
{
    for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(is_prime(n) == oracle::is_prime(n));
    CHECK(is_prime(1'000'000'007));
    CHECK(is_prime(18446744073709551557ULL)); // largest 64-bit prime
    CHECK_FALSE(is_prime(3215031751ULL));     // strong pseudoprime to bases 2,3,5,7
    CHECK_FALSE(is_prime(3825123056546413051ULL));
}

TEST_CASE("segmented prime ranges match trial division, with residue filters")
{
    auto naive = [](std::uint64_t lo, std::uint64_t hi, std::uint64_t r, std::uint64_t m) {
        std::vector<std::uint64_t> out;
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (oracle::is_prime(n) && n % m == r) out.push_back(n);
        return out;
    };
    CHECK(primes_in_range(0, 5000) == naive(0, 5000, 0, 1));
    CHECK(primes_in_range(1000, 9000, ResidueFilter{3, 8}) == naive(1000, 9000, 3, 8));
    CHECK(primes_in_range(2, 2, ResidueFilter{7, 8}).empty());
    CHECK(primes_in_range(10, 9).empty());
    // A window straddling a segment boundary.
    const std::uint64_t s = PrimeRange::kSegment;
    CHECK(primes_in_range(s - 3000, s + 3000, ResidueFilter{3, 4}) == naive(s - 3000, s + 3000, 3, 4));
    CHECK(primes_in_range(3 * s - 100, 3 * s + 100) == naive(3 * s - 100, 3 * s + 100, 0, 1));
    CHECK(small_primes(30) == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("trial factorization")
{
    for (std::uint64_t n = 2; n < 3000; ++n) {
        std::vector<std::uint64_t> flat;
        for (const auto& pp : trial_factor(n))
            for (unsigned e = 0; e < pp.exponent; ++e) flat.push_back(pp.prime);
        REQUIRE(flat == oracle::prime_factors(n));
    }
}

TEST_CASE("quadratic character validation")
{
    CHECK_NOTHROW(QuadChar::make(11));
    CHECK_NOTHROW(QuadChar::make(163));
    CHECK_NOTHROW(QuadChar::make(35)); // squarefree composite, 3 mod 8
    CHECK_FALSE(QuadChar::make(35).prime_modulus());
    CHECK_THROWS_AS(QuadChar::make(3), std::invalid_argument);
    CHECK_THROWS_AS(QuadChar::make(7), std::invalid_argument);   // 7 mod 8
    CHECK_THROWS_AS(QuadChar::make(99), std::invalid_argument);  // 9 * 11
    CHECK_THROWS_AS(QuadChar::make(13), std::invalid_argument);  // 1 mod 4
    CHECK_NOTHROW(QuadChar::make_odd(7));
    CHECK_NOTHROW(QuadChar::make_odd(2647));
    CHECK_THROWS_AS(QuadChar::make_odd(5), std::invalid_argument);
    const QuadChar chi = QuadChar::make(163);
    CHECK(chi(-1) == -1);
    CHECK(chi(2) == -1);
    CHECK(chi(163) == 0);
    CHECK(chi.three_mod_eight());
}

TEST_CASE("character sieve matches direct symbols across block boundaries")
{
    for (std::uint64_t q : {11ULL, 163ULL, 35ULL, 1'000'003ULL}) {
        const QuadChar chi = QuadChar::make_odd(q);
        const std::uint64_t limit = 2 * ChiSieve::kBlock + 12345;
        ChiSieve sieve(chi, limit);
        std::uint64_t seen = 0;
        std::mt19937_64 rng(q);
        for (auto blk = sieve.next_block(); !blk.empty(); blk = sieve.next_block()) {
            REQUIRE(sieve.block_start() == seen);
            // Dense check of the first few thousand, random spot checks after.
            for (std::size_t i = 0; i < blk.size(); ++i) {
                const std::uint64_t n = sieve.block_start() + i;
                if (n < 5000 || rng() % 512 == 0) REQUIRE(blk[i] == oracle::jacobi(static_cast<std::int64_t>(n), q));
            }
            seen += blk.size();
        }
        CHECK(seen == limit + 1);
    }
    const auto small = chi_values(QuadChar::make(19), 40);
    REQUIRE(small.size() == 41);
    for (std::uint64_t n = 0; n <= 40; ++n) CHECK(small[n] == oracle::jacobi(static_cast<std::int64_t>(n), 19));
}

TEST_CASE("liouville sieve matches factorization")
{
    const LiouvilleTable t = liouville_sieve(100000);
    for (std::uint64_t n = 1; n <= 100000; ++n) REQUIRE(t[n] == oracle::liouville(n));
    const auto c1 = cached_liouville(1000);
    const auto c2 = cached_liouville(50000);
    CHECK(c2->limit() >= 50000);
    CHECK((*c1)[997] == -1);
    CHECK((*c2)[48] == -1); // 2^4 * 3, five prime factors
}
