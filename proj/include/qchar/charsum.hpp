#pragma once

// Exact prefix character sums and the quantities built from them: class
// numbers, the weighted sum S_q, the lattice profile W(a), T(q) and W(q, x).
//
// Notation: A(a) = sum_{n<=a} chi(n), B(a) = sum_{n<=a} n chi(n). The lattice
// value W(a) = a (h - A(a)) + B(a) satisfies f_q(a/q) = 2 pi^2 W(a) / q^{3/2}
// and obeys W(a+1) - W(a) = h - A(a).

#include "qchar/chi_sieve.hpp"
#include "qchar/quad_char.hpp"
#include "qchar/rational.hpp"
#include "qchar/wide.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qchar {

struct PrefixSums {
    std::uint64_t upto = 0;
    wide_int A = 0;
    wide_int B = 0;
    std::optional<wide_int> C; // sum n^2 chi(n), only when requested

    explicit PrefixSums(bool with_squares = false)
    {
        if (with_squares) C = 0;
    }

    void push(int chi_next)
    {
        ++upto;
        A += chi_next;
        const wide_int n = static_cast<wide_int>(upto);
        B = checked_add(B, chi_next * n);
        if (C) *C = checked_add(*C, chi_next * checked_mul(n, n));
    }
};

/// Prefix sums at a, computed by a fresh sieve pass.
PrefixSums prefix_sums(const QuadChar& chi, std::uint64_t a, bool with_squares = false);

struct ClassNumber {
    std::uint64_t q;
    std::int64_t h;
    wide_int a_half; // A((q-1)/2)
    wide_int b_half; // B((q-1)/2)

    /// L(1, chi_q) = pi h / sqrt(q); floating point only for display.
    double l_at_one() const;
};

/// h = A((q-1)/2) - 2 B((q-1)/2) / q, exactly. Throws std::logic_error if the
/// division is inexact or h <= 0, which can only mean a broken modulus.
ClassNumber class_number(const QuadChar& chi);

/// S(t) = sum_{n <= t} chi(n) (1 - n/t) = A(floor t) - B(floor t)/t, t > 0.
Rational s_q(const QuadChar& chi, const Rational& t);

struct LatticePoint {
    std::uint64_t a;
    wide_int A;
    wide_int B;
    wide_int W;
};

/// Calls fn(const LatticePoint&) for a = 1..upto in order.
template <class F>
void for_each_lattice(const QuadChar& chi, std::int64_t h, std::uint64_t upto, F&& fn)
{
    ChiSieve sieve(chi, upto);
    LatticePoint pt{0, 0, 0, 0};
    for (auto blk = sieve.next_block(); !blk.empty(); blk = sieve.next_block()) {
        std::uint64_t n = sieve.block_start();
        for (std::size_t i = (n == 0 ? 1 : 0); i < blk.size(); ++i) {
            n = sieve.block_start() + i;
            pt.W = checked_add(pt.W, h - pt.A);
            pt.A += blk[i];
            pt.B = checked_add(pt.B, blk[i] * static_cast<wide_int>(n));
            pt.a = n;
            fn(static_cast<const LatticePoint&>(pt));
        }
    }
}

struct WProfile {
    std::uint64_t q = 0;
    std::int64_t h = 0;
    std::uint64_t upto = 0;     // floor(q/2)
    wide_int min_W = 0;
    std::uint64_t argmin = 0;   // least a attaining min_W
    wide_int max_abs_A = 0;     // max |A(N)| over the scan
    bool pv_warning = false;    // max |A| >= 2 sqrt(q) log q (diagnostic only)
};

/// Single pass over a = 1..floor(q/2) with min and argmin of W.
WProfile w_lattice(const QuadChar& chi);

/// W(0..upto); index a holds W(a).
std::vector<wide_int> w_values(const QuadChar& chi, std::uint64_t upto);

/// T(q) = sum_{n <= q/4} n chi_q(n) for prime q = 7 (mod 8).
wide_int t_stat(std::uint64_t q);

struct WRational {
    Rational value;
    bool q_divides_numerator;
};

/// W(q, x) = h - S(q x) for rational 0 < x < 1/2.
WRational w_rational(const QuadChar& chi, const Rational& x);

struct Inequality7 {
    std::uint64_t bound = 0;          // floor(q/4)
    wide_int min_W = 0;
    std::uint64_t argmin = 0;
    bool holds = false;               // min_W >= 0
    // Reported only: the same minimum over floor(q/4) < N <= floor(q/2).
    std::optional<wide_int> beyond_min;
    std::uint64_t beyond_argmin = 0;
};

/// max_{N <= q/4} S(N) <= h, in the cross-multiplied form W(N) >= 0.
Inequality7 inequality7_margin(const QuadChar& chi);

} // namespace qchar
