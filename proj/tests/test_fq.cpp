#include "qchar/charsum.hpp"
#include "qchar/fq.hpp"
#include "qchar/ntcore.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qchar;

namespace {

double series_oracle(std::uint64_t q, double x, std::uint64_t N)
{
    return oracle::sine_series([q](std::uint64_t n) { return oracle::jacobi(static_cast<std::int64_t>(n), q); }, x, N);
}

} // namespace

TEST_CASE("f_q at lattice points is 2 pi^2 W(a) / q^(3/2)")
{
    const QuadChar chi = QuadChar::make(163);
    const auto w = w_values(chi, 81);
    for (std::uint64_t a = 0; a <= 81; ++a) {
        const FqValue v = fq_exact(chi, Rational(static_cast<long long>(a), 163));
        CHECK(v.coefficient * Rational(163) == Rational::from_wide(w[a]));
        CHECK(v.value == doctest::Approx(2 * std::numbers::pi * std::numbers::pi * static_cast<double>(w[a]) /
                                         std::pow(163.0, 1.5)));
    }
}

TEST_CASE("f_q symmetries")
{
    const QuadChar chi = QuadChar::make(43);
    const Rational x(7, 30);
    const Rational c = fq_exact(chi, x).coefficient;
    CHECK(fq_exact(chi, -x).coefficient == -c);
    CHECK(fq_exact(chi, x + Rational(3)).coefficient == c);
    CHECK(fq_exact(chi, Rational(1) - x).coefficient == -c);
    CHECK(fq_exact(chi, Rational(0)).coefficient.is_zero());
    CHECK(fq_exact(chi, Rational(1, 2)).coefficient.is_zero());
}

TEST_CASE("exact f_q agrees with the defining series")
{
    std::mt19937_64 rng(11);
    for (std::uint64_t q : {11ULL, 19ULL, 35ULL, 43ULL, 163ULL, 7ULL, 23ULL}) {
        const QuadChar chi = QuadChar::make_odd(q);
        for (int i = 0; i < 20; ++i) {
            const long long den = 2 + static_cast<long long>(rng() % 500);
            const long long num = static_cast<long long>(rng() % (2 * den)) - den;
            const Rational x(num, den);
            const double exact = fq_exact(chi, x).value;
            const std::uint64_t N = 20000;
            INFO("q = " << q << ", x = " << x);
            REQUIRE(std::fabs(series_oracle(q, x.to_double(), N) - exact) <= 1.0 / N + 1e-12);
            REQUIRE(std::fabs(fq_series(chi, x.to_double(), N).value - exact) <= 1.0 / N + 1e-12);
        }
    }
}

TEST_CASE("series truncation reports its tail bound")
{
    const SeriesValue s = fq_series(QuadChar::make(11), 0.1, 250);
    CHECK(s.terms == 250);
    CHECK(s.tail_bound == doctest::Approx(1.0 / 250));
    CHECK_THROWS(fq_series(QuadChar::make(11), 0.1, 0));
}

TEST_CASE("piecewise-linear evaluator matches the direct one")
{
    std::mt19937_64 rng(5);
    for (std::uint64_t q : {11ULL, 163ULL, 1019ULL, 2647ULL}) {
        const QuadChar chi = QuadChar::make_odd(q);
        const PiecewiseLinearFq pl(chi);
        CHECK(pl.h() == class_number(chi).h);
        for (std::uint64_t a = 0; a <= q / 2; ++a)
            REQUIRE(pl.lattice_W(a) == pl.slope(a) * static_cast<wide_int>(a) + pl.intercept(a));
        for (int i = 0; i < 50; ++i) {
            const Rational x(static_cast<long long>(rng() % 10007) - 5000, 1 + static_cast<long long>(rng() % 997));
            REQUIRE(pl.coefficient(x) == fq_exact(chi, x).coefficient);
        }
    }
}

TEST_CASE("exact threshold comparison")
{
    // 2 pi^2 c / sqrt(q) > t: c = 1, q = 1 gives 19.7392...
    CHECK(certified_above(Rational(1), 1, Rational(19)));
    CHECK_FALSE(certified_above(Rational(1), 1, Rational(20)));
    // Non-positive values are never certified, whatever the threshold.
    CHECK_FALSE(certified_above(Rational(-1), 1, Rational(-30)));
    CHECK(certified_above(Rational(1, 1000), 1, Rational(-1)));
    const QuadChar chi = QuadChar::make(163);
    CHECK(certified_above(fq_exact(chi, Rational(6, 163)).coefficient, 163, Rational(1, 20)));
    CHECK_FALSE(certified_above(fq_exact(chi, Rational(5, 163)).coefficient, 163, Rational(1, 20)));
}

TEST_CASE("minimum and zeros on [0, 1/2]")
{
    const FqMinZeros m163 = fq_min_and_zeros(QuadChar::make(163));
    CHECK(m163.zeros.empty());
    CHECK(m163.zero_intervals.empty());
    CHECK(m163.nonnegative);
    CHECK(m163.min_W == 1);

    // Moduli 7 mod 8 give genuine sign changes; every reported zero must be one.
    std::uint64_t with_zeros = 0;
    for (auto q : primes_in_range(7, 3000, ResidueFilter{7, 8})) {
        const QuadChar chi = QuadChar::make_odd(q);
        const FqMinZeros m = fq_min_and_zeros(chi);
        const auto w = w_values(chi, q / 2);
        wide_int best = w[1];
        for (std::uint64_t a = 1; a <= q / 2; ++a) best = std::min(best, w[a]);
        REQUIRE(m.min_W == best);
        for (auto a : m.argmins) REQUIRE(w[a] == best);
        REQUIRE(m.nonnegative == (best >= 0));
        for (const auto& z : m.zeros) {
            REQUIRE(z.sign() > 0);
            REQUIRE(z < Rational(1, 2));
            REQUIRE(fq_exact(chi, z).coefficient.is_zero());
        }
        REQUIRE(std::is_sorted(m.zeros.begin(), m.zeros.end()));
        if (best < 0) {
            REQUIRE_FALSE(m.zeros.empty());
            ++with_zeros;
        }
    }
    CHECK(with_zeros > 0);
}

TEST_CASE("finite b^2 sum for f_q(a/p) against brute force")
{
    const auto ps = primes_in_range(3, 80, ResidueFilter{3, 4});
    for (auto q : ps) {
        if (q < 7) continue;
        const QuadChar chi = QuadChar::make_odd(q);
        for (auto p : ps) {
            if (p >= q) break;
            for (std::uint64_t a = 1; 2 * a < p; ++a) {
                const TestPQ t = fq_theorem5(a, p, chi);
                const oracle::i128 D = oracle::theorem5_bracket(a, p, q);
                INFO("a = " << a << ", p = " << p << ", q = " << q);
                REQUIRE(t.bracket == D);
                REQUIRE(D % static_cast<oracle::i128>(p * q) == 0);
                REQUIRE(t.test == D / static_cast<oracle::i128>(p * q));
                REQUIRE(t.positive == (t.test > 0));
                const double exact = fq_exact(chi, Rational(static_cast<long long>(a), static_cast<long long>(p))).value;
                REQUIRE(t.f_value == doctest::Approx(exact).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("q-divisible test values")
{
    const TestPQ t1 = fq_theorem5(1, 1163, QuadChar::make_odd(3511));
    CHECK(t1.test == 561760);
    CHECK(t1.test == 32 * 5 * 3511);
    CHECK(t1.q_divides_test);
    CHECK(t1.bracket == oracle::theorem5_bracket(1, 1163, 3511));
    const TestPQ t2 = fq_theorem5(1, 719, QuadChar::make(2971));
    CHECK(t2.test == 130724);
    CHECK(t2.test == 4 * 11 * 2971);
    CHECK(t2.q_divides_test);
}

TEST_CASE("finite b^2 sum preconditions")
{
    const QuadChar chi = QuadChar::make(43);
    CHECK_THROWS(fq_theorem5(0, 11, chi));  // a = 0
    CHECK_THROWS(fq_theorem5(6, 11, chi));  // a > p/2
    CHECK_THROWS(fq_theorem5(1, 13, chi));  // p = 1 mod 4
    CHECK_THROWS(fq_theorem5(1, 59, chi));  // p > q
    CHECK_THROWS(fq_theorem5(1, 15, chi));  // p composite
    CHECK_THROWS(fq_theorem5(1, 11, QuadChar::make(35))); // q composite
}

TEST_CASE("K(a) = 4 q W(a)")
{
    for (std::uint64_t q : {11ULL, 19ULL, 43ULL, 35ULL, 7ULL, 23ULL, 163ULL}) {
        const QuadChar chi = QuadChar::make_odd(q);
        const IdentityScan s = identity_scan(chi);
        INFO("q = " << q);
        CHECK(s.failures.empty());
        std::uint64_t coprime = 0;
        for (std::uint64_t a = 1; a < q; ++a) coprime += std::gcd(a, q) == 1;
        CHECK(s.checked == coprime);
    }
    for (std::uint64_t q : {11ULL, 19ULL, 35ULL, 43ULL}) {
        const QuadChar chi = QuadChar::make_odd(q);
        for (std::uint64_t a = 1; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            const Theorem6 t = fq_theorem6(a, chi);
            REQUIRE(t.K == oracle::theorem6_K(a, q));
            REQUIRE(t.outside_hypotheses == (q == 35));
            REQUIRE(identity_check(chi, a));
        }
    }
    CHECK_THROWS(fq_theorem6(0, QuadChar::make(11)));
    CHECK_THROWS(fq_theorem6(7, QuadChar::make(35)));
}

TEST_CASE("values at 1/3 and 1/5 through twisted L(2) series")
{
    const double s3 = std::sqrt(3.0) / 2;
    for (std::uint64_t q : {11ULL, 19ULL, 43ULL, 163ULL, 2647ULL}) {
        const QuadChar chi = QuadChar::make_odd(q);
        const L2Value l3 = l2_truncated(chi, AuxPattern::chi3, 200000);
        CHECK(l3.imag == 0);
        CHECK(std::fabs(s3 * l3.real - fq_exact(chi, Rational(1, 3)).value) <= 2 * l3.tail_bound);
        const L2Value l5 = l2_truncated(chi, AuxPattern::psi5, 200000);
        CHECK(std::fabs(fq_one_fifth_from_l2(l5) - fq_exact(chi, Rational(1, 5)).value) <= 4 * l5.tail_bound);
        CHECK(l5.real >= psi5_real_lower_bound() - l5.tail_bound);
        CHECK(std::fabs(l5.imag) <= psi5_imag_upper_bound() + l5.tail_bound);
    }
    const double z2 = std::numbers::pi * std::numbers::pi / 6;
    CHECK(psi5_real_lower_bound() == doctest::Approx(85.0 / 36.0 - z2));
    CHECK(psi5_imag_upper_bound() == doctest::Approx(z2 - 1));
}
