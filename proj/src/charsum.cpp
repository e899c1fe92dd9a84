#include "qchar/charsum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qchar {

PrefixSums prefix_sums(const QuadChar& chi, std::uint64_t a, bool with_squares)
{
    PrefixSums ps(with_squares);
    ChiSieve sieve(chi, a);
    for (auto blk = sieve.next_block(); !blk.empty(); blk = sieve.next_block()) {
        for (std::size_t i = (sieve.block_start() == 0 ? 1 : 0); i < blk.size(); ++i) ps.push(blk[i]);
    }
    return ps;
}

double ClassNumber::l_at_one() const
{
    return std::numbers::pi * static_cast<double>(h) / std::sqrt(static_cast<double>(q));
}

namespace {

ClassNumber finish_class_number(std::uint64_t q, wide_int a_half, wide_int b_half, bool three_mod_eight)
{
    const wide_int wq = static_cast<wide_int>(q);
    const wide_int num = checked_sub(checked_mul(wq, a_half), checked_mul(2, b_half));
    if (num % wq != 0) {
        throw std::logic_error("class number: inexact division for q = " + std::to_string(q));
    }
    const wide_int h = num / wq;
    if (h <= 0) throw std::logic_error("class number: non-positive h for q = " + std::to_string(q));
    if (three_mod_eight && (a_half != 3 * h || b_half != wq * h)) {
        throw std::logic_error("class number: half-sum identities fail for q = " + std::to_string(q));
    }
    return ClassNumber{q, to_int64(h), a_half, b_half};
}

} // namespace

ClassNumber class_number(const QuadChar& chi)
{
    const std::uint64_t q = chi.modulus();
    const PrefixSums ps = prefix_sums(chi, (q - 1) / 2);
    return finish_class_number(q, ps.A, ps.B, chi.three_mod_eight());
}

Rational s_q(const QuadChar& chi, const Rational& t)
{
    if (t.sign() <= 0) throw std::domain_error("s_q: t must be positive");
    const BigInt m = t.floor();
    if (m == 0) return Rational(0);
    if (!m.fits_ulong_p()) throw std::domain_error("s_q: t too large");
    const PrefixSums ps = prefix_sums(chi, m.get_ui());
    return Rational::from_wide(ps.A) - Rational::from_wide(ps.B) / t;
}

WProfile w_lattice(const QuadChar& chi)
{
    WProfile prof;
    prof.q = chi.modulus();
    prof.upto = prof.q / 2;

    auto visit = [&prof](const LatticePoint& pt) {
        if (pt.a == 1 || pt.W < prof.min_W) {
            prof.min_W = pt.W;
            prof.argmin = pt.a;
        }
        const wide_int absA = pt.A < 0 ? -pt.A : pt.A;
        if (absA > prof.max_abs_A) prof.max_abs_A = absA;
    };

    if (prof.upto < ChiSieve::kBlock) {
        // One sieve block covers [0, q/2]: reuse it for both h and W.
        const auto values = chi_values(chi, prof.upto);
        wide_int A = 0;
        wide_int B = 0;
        const std::uint64_t half = (prof.q - 1) / 2;
        for (std::uint64_t n = 1; n <= half; ++n) {
            A += values[n];
            B += values[n] * static_cast<wide_int>(n);
        }
        prof.h = finish_class_number(prof.q, A, B, chi.three_mod_eight()).h;
        LatticePoint pt{0, 0, 0, 0};
        for (std::uint64_t n = 1; n <= prof.upto; ++n) {
            pt.W = checked_add(pt.W, prof.h - pt.A);
            pt.A += values[n];
            pt.B += values[n] * static_cast<wide_int>(n);
            pt.a = n;
            visit(pt);
        }
    } else {
        prof.h = class_number(chi).h;
        for_each_lattice(chi, prof.h, prof.upto, visit);
    }

    const double q = static_cast<double>(prof.q);
    prof.pv_warning = static_cast<double>(prof.max_abs_A) >= 2.0 * std::sqrt(q) * std::log(q);
    return prof;
}

std::vector<wide_int> w_values(const QuadChar& chi, std::uint64_t upto)
{
    std::vector<wide_int> out(upto + 1, 0);
    const std::int64_t h = class_number(chi).h;
    for_each_lattice(chi, h, upto, [&out](const LatticePoint& pt) { out[pt.a] = pt.W; });
    return out;
}

wide_int t_stat(std::uint64_t q)
{
    if (q % 8 != 7 || !is_prime(q)) {
        throw std::invalid_argument("t_stat: q must be a prime = 7 mod 8, got " + std::to_string(q));
    }
    return prefix_sums(QuadChar::make_odd(q), q / 4).B;
}

WRational w_rational(const QuadChar& chi, const Rational& x)
{
    if (x.sign() <= 0 || x >= Rational(1, 2)) throw std::domain_error("w_rational: need 0 < x < 1/2");
    const Rational h(class_number(chi).h);
    const Rational t = Rational(static_cast<long long>(chi.modulus())) * x;
    Rational value = h - s_q(chi, t);
    const bool divisible = value.num() % BigInt(std::to_string(chi.modulus())) == 0;
    return WRational{std::move(value), divisible};
}

Inequality7 inequality7_margin(const QuadChar& chi)
{
    const std::uint64_t q = chi.modulus();
    Inequality7 out;
    out.bound = q / 4;
    const std::int64_t h = class_number(chi).h;
    for_each_lattice(chi, h, q / 2, [&out](const LatticePoint& pt) {
        if (pt.a <= out.bound) {
            if (pt.a == 1 || pt.W < out.min_W) {
                out.min_W = pt.W;
                out.argmin = pt.a;
            }
        } else if (!out.beyond_min || pt.W < *out.beyond_min) {
            out.beyond_min = pt.W;
            out.beyond_argmin = pt.a;
        }
    });
    out.holds = out.bound == 0 || out.min_W >= 0;
    return out;
}

} // namespace qchar
