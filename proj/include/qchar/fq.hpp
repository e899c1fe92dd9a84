#pragma once

// Evaluators of f_q(x) = sum_n chi_q(n) sin(2 pi n x) / n^2.
//
// Exact values are returned as a rational coefficient r with
// f_q(x) = r * 2 pi^2 / sqrt(q). On [a/q, (a+1)/q] the coefficient is linear:
// r(x) = x (h - A(a)) + B(a)/q, and at lattice points r(a/q) = W(a)/q.
// Floating point is used for display only; signs, zeros and minima are
// decided on integers and rationals.

#include "qchar/charsum.hpp"
#include "qchar/quad_char.hpp"
#include "qchar/rational.hpp"
#include "qchar/wide.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qchar {

/// 2 pi^2 / sqrt(q).
double fq_scale(std::uint64_t q);

struct FqValue {
    Rational coefficient;
    double value;
};

/// Exact f_q(x) for any rational x (reduced mod 1, then odd symmetry).
FqValue fq_exact(const QuadChar& chi, const Rational& x);

/// Whether 2 pi^2 coefficient / sqrt(q) > threshold, decided exactly with a
/// rational lower bound for pi. A true answer is a proof; false may be a
/// borderline miss but is never wrong in the other direction.
bool certified_above(const Rational& coefficient, std::uint64_t q, const Rational& threshold);

/// Precomputed linear pieces of f_q on [0, 1/2].
class PiecewiseLinearFq {
public:
    explicit PiecewiseLinearFq(const QuadChar& chi);

    std::uint64_t q() const { return q_; }
    std::int64_t h() const { return h_; }
    /// Number of breakpoints a/q, a = 0..last_breakpoint() (ceil(q/2)).
    std::uint64_t last_breakpoint() const { return slope_.size() - 1; }
    /// h - A(a): slope of q * r(x) in the variable q x on piece a.
    wide_int slope(std::uint64_t a) const { return slope_[a]; }
    /// B(a): q * r(a/q) = a * slope(a) + intercept(a) = W(a).
    wide_int intercept(std::uint64_t a) const { return intercept_[a]; }
    wide_int lattice_W(std::uint64_t a) const;

    Rational coefficient(const Rational& x) const;
    FqValue operator()(const Rational& x) const;

private:
    std::uint64_t q_;
    std::int64_t h_;
    std::vector<wide_int> slope_;
    std::vector<wide_int> intercept_;
};

struct SeriesValue {
    double value;
    double tail_bound; // 1/N
    std::uint64_t terms;
};

/// First N terms of the defining series, Neumaier-compensated.
SeriesValue fq_series(const QuadChar& chi, double x, std::uint64_t N);

struct FqMinZeros {
    wide_int min_W = 0;                       // over a = 1..floor(q/2)
    std::vector<std::uint64_t> argmins;       // every a attaining min_W
    std::vector<Rational> zeros;              // interior zeros in (0, 1/2), ascending
    std::vector<std::pair<Rational, Rational>> zero_intervals; // pieces identically 0
    bool nonnegative = false;                 // f_q >= 0 on [0, 1/2]
};

/// The minimum is attained at a lattice point (pieces are linear and the
/// function is continuous); each piece has at most one rational root.
FqMinZeros fq_min_and_zeros(const QuadChar& chi);

/// chi_q(n) for 0 <= n < q; reduction mod q makes any argument valid.
class ChiTable {
public:
    explicit ChiTable(const QuadChar& chi);
    std::uint64_t q() const { return q_; }
    int operator()(std::int64_t n) const;
    int at(std::uint64_t n) const { return values_[n % q_]; }

private:
    std::uint64_t q_;
    std::vector<std::int8_t> values_;
};

struct TestPQ {
    std::uint64_t a = 0;
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    /// -chi_q(p) (sum_{b <= pq, b = aq (p)} b^2 chi_q(b) - sum_{b = -aq (p)} ...).
    wide_int bracket = 0;
    /// bracket / (p q); always an exact division. This is the integer the
    /// divisibility curiosities refer to.
    wide_int test = 0;
    double f_value = 0; // pi^2 bracket / (2 p^2 q^{5/2})
    bool positive = false;
    bool q_divides_test = false;
};

/// f_q(a/p) through the finite b^2-sum. p, q prime, both 3 mod 4, p < q,
/// 1 <= a < p/2.
TestPQ fq_theorem5(std::uint64_t a, std::uint64_t p, const QuadChar& chi);
TestPQ fq_theorem5(std::uint64_t a, std::uint64_t p, const ChiTable& table);

struct Theorem6 {
    wide_int K = 0; // q^2 chi(a) - sum_{c=1}^{q-1} c^2 (chi(c-a) - chi(c+a))
    double value = 0; // pi^2 K / (2 q^{5/2})
    bool outside_hypotheses = false; // composite q
};

/// 1 <= a < q, gcd(a, q) = 1.
Theorem6 fq_theorem6(std::uint64_t a, const QuadChar& chi);
Theorem6 fq_theorem6(std::uint64_t a, const ChiTable& table, bool composite);

/// K(a) == 4 q W(a), exactly.
bool identity_check(const QuadChar& chi, std::uint64_t a);

struct IdentityScan {
    std::uint64_t checked = 0;
    std::vector<std::uint64_t> failures;
};

/// identity_check for every admissible a in 1..q-1, sharing one chi table.
IdentityScan identity_scan(const QuadChar& chi);

enum class AuxPattern {
    chi3, // the character mod 3
    psi5, // {1, i, -i, -1, 0} on n mod 5; real/imaginary parts kept separate
};

struct L2Value {
    double real = 0;
    double imag = 0;
    double tail_bound = 0; // 1/N for each part
};

/// Truncation of sum_n chi_q(n) psi(n) / n^2 at N terms.
L2Value l2_truncated(const QuadChar& chi, AuxPattern pattern, std::uint64_t N);

/// f_q(1/5) from the psi5 series: sin(2pi/5) * real + sin(4pi/5) * imag.
double fq_one_fifth_from_l2(const L2Value& v);

/// 1 - sum_{n >= 4} n^-2, the floor on the real part of the psi5 series.
double psi5_real_lower_bound();
/// sum_{n >= 2} n^-2, the ceiling on the magnitude of its imaginary part.
double psi5_imag_upper_bound();

} // namespace qchar
