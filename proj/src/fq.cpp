#include "qchar/fq.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qchar {

namespace {

constexpr double kPi = std::numbers::pi;

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0;
    double comp_ = 0;
};

double frac_of_product(std::uint64_t n, double x)
{
    const double p = static_cast<double>(n) * x;
    return p - std::floor(p);
}

Rational reduce_unit(const Rational& x)
{
    return x - Rational(x.floor(), 1);
}

// Coefficient on [0, 1/2] from prefix sums at floor(q y).
Rational half_coefficient(const QuadChar& chi, std::int64_t h, const Rational& y)
{
    const std::uint64_t q = chi.modulus();
    const BigInt m = (Rational(static_cast<long long>(q)) * y).floor();
    const PrefixSums ps = prefix_sums(chi, m.get_ui());
    return y * Rational::from_wide(h - ps.A) + Rational::from_wide(ps.B, static_cast<wide_int>(q));
}

double to_display(const Rational& coefficient, std::uint64_t q)
{
    return coefficient.to_double() * fq_scale(q);
}

} // namespace

double fq_scale(std::uint64_t q)
{
    return 2.0 * kPi * kPi / std::sqrt(static_cast<double>(q));
}

FqValue fq_exact(const QuadChar& chi, const Rational& x)
{
    const std::int64_t h = class_number(chi).h;
    const Rational y = reduce_unit(x);
    const Rational half(1, 2);
    Rational c = y <= half ? half_coefficient(chi, h, y) : -half_coefficient(chi, h, Rational(1) - y);
    const double v = to_display(c, chi.modulus());
    return FqValue{std::move(c), v};
}

bool certified_above(const Rational& coefficient, std::uint64_t q, const Rational& threshold)
{
    if (coefficient.sign() <= 0) return false;
    if (threshold.sign() < 0) return true;
    // 2 pi^2 c / sqrt(q) > t  <=>  4 pi^4 c^2 > t^2 q   (both sides positive)
    const Rational pi = pi_lower_bound();
    const Rational pi2 = pi * pi;
    const Rational lhs = Rational(4) * pi2 * pi2 * coefficient * coefficient;
    const Rational rhs = threshold * threshold * Rational(static_cast<long long>(q));
    return lhs > rhs;
}

PiecewiseLinearFq::PiecewiseLinearFq(const QuadChar& chi) : q_(chi.modulus()), h_(class_number(chi).h)
{
    const std::uint64_t top = (q_ + 1) / 2;
    const auto values = chi_values(chi, top);
    slope_.resize(top + 1);
    intercept_.resize(top + 1);
    wide_int A = 0;
    wide_int B = 0;
    for (std::uint64_t a = 0; a <= top; ++a) {
        if (a > 0) {
            A += values[a];
            B = checked_add(B, values[a] * static_cast<wide_int>(a));
        }
        slope_[a] = h_ - A;
        intercept_[a] = B;
    }
}

wide_int PiecewiseLinearFq::lattice_W(std::uint64_t a) const
{
    return checked_add(checked_mul(static_cast<wide_int>(a), slope_[a]), intercept_[a]);
}

Rational PiecewiseLinearFq::coefficient(const Rational& x) const
{
    const Rational y = reduce_unit(x);
    const Rational half(1, 2);
    const bool mirrored = y > half;
    const Rational z = mirrored ? Rational(1) - y : y;
    const std::uint64_t a = (Rational(static_cast<long long>(q_)) * z).floor().get_ui();
    const Rational c = z * Rational::from_wide(slope_[a]) + Rational::from_wide(intercept_[a], static_cast<wide_int>(q_));
    return mirrored ? -c : c;
}

FqValue PiecewiseLinearFq::operator()(const Rational& x) const
{
    Rational c = coefficient(x);
    const double v = to_display(c, q_);
    return FqValue{std::move(c), v};
}

SeriesValue fq_series(const QuadChar& chi, double x, std::uint64_t N)
{
    if (N == 0) throw std::invalid_argument("fq_series: N must be positive");
    CompensatedSum sum;
    ChiSieve sieve(chi, N);
    for (auto blk = sieve.next_block(); !blk.empty(); blk = sieve.next_block()) {
        for (std::size_t i = 0; i < blk.size(); ++i) {
            if (blk[i] == 0) continue;
            const std::uint64_t n = sieve.block_start() + i;
            const double dn = static_cast<double>(n);
            sum.add(blk[i] * std::sin(2.0 * kPi * frac_of_product(n, x)) / (dn * dn));
        }
    }
    return SeriesValue{sum.value(), 1.0 / static_cast<double>(N), N};
}

FqMinZeros fq_min_and_zeros(const QuadChar& chi)
{
    const std::uint64_t q = chi.modulus();
    const std::uint64_t last = q / 2;
    const std::int64_t h = class_number(chi).h;
    const wide_int wq = static_cast<wide_int>(q);
    FqMinZeros out;
    for_each_lattice(chi, h, last, [&](const LatticePoint& pt) {
        if (pt.a == 1 || pt.W < out.min_W) {
            out.min_W = pt.W;
            out.argmins.clear();
        }
        if (pt.W == out.min_W) out.argmins.push_back(pt.a);

        // Piece [a, end) in the variable t = q x; the last piece ends at q/2.
        const wide_int s = h - pt.A;
        const wide_int a = static_cast<wide_int>(pt.a);
        const Rational t_end = pt.a == last ? Rational(static_cast<long long>(q), 2) : Rational::from_wide(a + 1);
        if (s == 0) {
            if (pt.W == 0) out.zero_intervals.emplace_back(Rational::from_wide(a, wq), t_end / Rational::from_wide(wq));
            return;
        }
        if (pt.W == 0) {
            out.zeros.push_back(Rational::from_wide(a, wq));
            return;
        }
        // Root t* = a - W/s lies strictly inside the piece when its sign fits.
        const Rational t_root = Rational::from_wide(a) - Rational::from_wide(pt.W, s);
        if (t_root > Rational::from_wide(a) && t_root < t_end) out.zeros.push_back(t_root / Rational::from_wide(wq));
    });
    out.nonnegative = last >= 1 && out.min_W >= 0;
    return out;
}

ChiTable::ChiTable(const QuadChar& chi) : q_(chi.modulus()), values_(chi_values(chi, chi.modulus() - 1)) {}

int ChiTable::operator()(std::int64_t n) const
{
    const auto wq = static_cast<std::int64_t>(q_);
    const std::int64_t r = ((n % wq) + wq) % wq;
    return values_[static_cast<std::uint64_t>(r)];
}

namespace {

wide_int class_sum_b2(std::uint64_t residue, std::uint64_t p, const ChiTable& table)
{
    // b = residue + k p for k = 0..q-1 runs over b <= pq in the class.
    const std::uint64_t q = table.q();
    wide_int sum = 0;
    std::uint64_t b = residue;
    std::uint64_t b_mod_q = residue % q;
    for (std::uint64_t k = 0; k < q; ++k) {
        const int c = table.at(b_mod_q);
        if (c != 0) {
            const wide_int bb = static_cast<wide_int>(b);
            sum = checked_add(sum, c * checked_mul(bb, bb));
        }
        b += p;
        b_mod_q += p;
        if (b_mod_q >= q) b_mod_q -= q;
    }
    return sum;
}

} // namespace

TestPQ fq_theorem5(std::uint64_t a, std::uint64_t p, const ChiTable& table)
{
    const std::uint64_t q = table.q();
    if (!is_prime(p) || p % 4 != 3) throw std::invalid_argument("theorem5: p must be a prime = 3 mod 4");
    if (!is_prime(q) || q % 4 != 3) throw std::invalid_argument("theorem5: q must be a prime = 3 mod 4");
    if (p >= q) throw std::invalid_argument("theorem5: need p < q");
    if (a < 1 || 2 * a >= p) throw std::invalid_argument("theorem5: need 1 <= a < p/2");

    const std::uint64_t r_plus = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * q) % p);
    const std::uint64_t r_minus = p - r_plus;
    const wide_int diff = checked_sub(class_sum_b2(r_plus, p, table), class_sum_b2(r_minus, p, table));

    TestPQ out;
    out.a = a;
    out.p = p;
    out.q = q;
    out.bracket = checked_mul(-table.at(p), diff);
    const wide_int pq = checked_mul(static_cast<wide_int>(p), static_cast<wide_int>(q));
    if (out.bracket % pq != 0) throw std::logic_error("theorem5: bracket not divisible by pq");
    out.test = out.bracket / pq;
    const long double pi = std::numbers::pi_v<long double>;
    const long double dq = static_cast<long double>(q);
    out.f_value = static_cast<double>(pi * pi * static_cast<long double>(out.test) /
                                      (2.0L * static_cast<long double>(p) * dq * std::sqrt(dq)));
    out.positive = out.bracket > 0;
    out.q_divides_test = out.test % static_cast<wide_int>(q) == 0;
    return out;
}

TestPQ fq_theorem5(std::uint64_t a, std::uint64_t p, const QuadChar& chi)
{
    return fq_theorem5(a, p, ChiTable(chi));
}

Theorem6 fq_theorem6(std::uint64_t a, const ChiTable& table, bool composite)
{
    const std::uint64_t q = table.q();
    if (a < 1 || a >= q || std::gcd(a, q) != 1) throw std::invalid_argument("theorem6: need 1 <= a < q, gcd(a, q) = 1");
    wide_int sum = 0;
    std::uint64_t minus = q - a + 1; // (1 - a) mod q
    if (minus >= q) minus -= q;
    std::uint64_t plus = (1 + a) % q;
    for (std::uint64_t c = 1; c < q; ++c) {
        const int d = table.at(minus) - table.at(plus);
        if (d != 0) {
            const wide_int cc = static_cast<wide_int>(c);
            sum = checked_add(sum, d * checked_mul(cc, cc));
        }
        if (++minus == q) minus = 0;
        if (++plus == q) plus = 0;
    }
    const wide_int wq = static_cast<wide_int>(q);
    Theorem6 out;
    out.K = checked_sub(checked_mul(checked_mul(wq, wq), table.at(a)), sum);
    const double dq = static_cast<double>(q);
    out.value = kPi * kPi * static_cast<double>(out.K) / (2.0 * dq * dq * std::sqrt(dq));
    out.outside_hypotheses = composite;
    return out;
}

Theorem6 fq_theorem6(std::uint64_t a, const QuadChar& chi)
{
    return fq_theorem6(a, ChiTable(chi), !chi.prime_modulus());
}

namespace {

wide_int lattice_W_from_table(const ChiTable& table, std::int64_t h, std::uint64_t a)
{
    wide_int A = 0;
    wide_int B = 0;
    for (std::uint64_t n = 1; n <= a; ++n) {
        const int c = table.at(n);
        A += c;
        B += c * static_cast<wide_int>(n);
    }
    return checked_add(checked_mul(static_cast<wide_int>(a), h - A), B);
}

} // namespace

bool identity_check(const QuadChar& chi, std::uint64_t a)
{
    const ChiTable table(chi);
    const std::int64_t h = class_number(chi).h;
    const Theorem6 t6 = fq_theorem6(a, table, !chi.prime_modulus());
    const wide_int W = lattice_W_from_table(table, h, a);
    return t6.K == checked_mul(4 * static_cast<wide_int>(chi.modulus()), W);
}

IdentityScan identity_scan(const QuadChar& chi)
{
    const ChiTable table(chi);
    const std::uint64_t q = chi.modulus();
    const std::int64_t h = class_number(chi).h;
    const bool composite = !chi.prime_modulus();
    IdentityScan out;
    wide_int W = 0;
    wide_int A = 0;
    for (std::uint64_t a = 1; a < q; ++a) {
        W = checked_add(W, h - A);
        A += table.at(a);
        if (table.at(a) == 0) continue;
        ++out.checked;
        const Theorem6 t6 = fq_theorem6(a, table, composite);
        if (t6.K != checked_mul(4 * static_cast<wide_int>(q), W)) out.failures.push_back(a);
    }
    return out;
}

L2Value l2_truncated(const QuadChar& chi, AuxPattern pattern, std::uint64_t N)
{
    if (N == 0) throw std::invalid_argument("l2_truncated: N must be positive");
    CompensatedSum re;
    CompensatedSum im;
    ChiSieve sieve(chi, N);
    for (auto blk = sieve.next_block(); !blk.empty(); blk = sieve.next_block()) {
        for (std::size_t i = 0; i < blk.size(); ++i) {
            if (blk[i] == 0) continue;
            const std::uint64_t n = sieve.block_start() + i;
            const double dn = static_cast<double>(n);
            const double term = blk[i] / (dn * dn);
            if (pattern == AuxPattern::chi3) {
                switch (n % 3) {
                case 1: re.add(term); break;
                case 2: re.add(-term); break;
                default: break;
                }
            } else {
                switch (n % 5) {
                case 1: re.add(term); break;
                case 4: re.add(-term); break;
                case 2: im.add(term); break;
                case 3: im.add(-term); break;
                default: break;
                }
            }
        }
    }
    return L2Value{re.value(), im.value(), 1.0 / static_cast<double>(N)};
}

double fq_one_fifth_from_l2(const L2Value& v)
{
    return std::sin(2.0 * kPi / 5.0) * v.real + std::sin(4.0 * kPi / 5.0) * v.imag;
}

double psi5_real_lower_bound()
{
    return 85.0 / 36.0 - kPi * kPi / 6.0;
}

double psi5_imag_upper_bound()
{
    return kPi * kPi / 6.0 - 1.0;
}

} // namespace qchar
