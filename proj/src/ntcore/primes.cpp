#include "qchar/ntcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qchar {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1u) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s)
{
    a %= n;
    if (a == 0) return true;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : kSmall) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is deterministic below 3.3e24, which covers all 64-bit n.
    for (std::uint64_t a : kSmall) {
        if (!strong_probable_prime(n, a, d, s)) return false;
    }
    return true;
}

std::vector<std::uint32_t> small_primes(std::uint32_t n)
{
    std::vector<std::uint32_t> out;
    if (n < 2) return out;
    std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

PrimeRange::PrimeRange(std::uint64_t lo, std::uint64_t hi, std::optional<ResidueFilter> filter)
    : hi_(hi), filter_(filter), seg_lo_(std::max<std::uint64_t>(lo, 2))
{
    if (filter_ && (filter_->modulus == 0 || filter_->residue >= filter_->modulus)) {
        throw std::invalid_argument("residue filter needs 0 <= r < m");
    }
    if (hi_ > (std::uint64_t{1} << 62)) throw std::invalid_argument("prime range upper bound too large");
    if (seg_lo_ > hi_) {
        done_ = true;
        return;
    }
    const std::uint64_t root = isqrt(hi_);
    base_primes_ = small_primes(static_cast<std::uint32_t>(root));
    composite_.resize(kSegment);
    fill_segment();
}

void PrimeRange::fill_segment()
{
    seg_len_ = std::min<std::uint64_t>(kSegment, hi_ - seg_lo_ + 1);
    std::fill(composite_.begin(), composite_.begin() + static_cast<std::ptrdiff_t>(seg_len_), 0);
    const std::uint64_t seg_hi = seg_lo_ + seg_len_ - 1;
    for (std::uint64_t p : base_primes_) {
        if (p * p > seg_hi) break;
        std::uint64_t start = std::max(p * p, (seg_lo_ + p - 1) / p * p);
        for (std::uint64_t j = start; j <= seg_hi; j += p) composite_[j - seg_lo_] = 1;
    }
    for (std::uint64_t i = 0; i < seg_len_; ++i) {
        if (seg_lo_ + i < 2) composite_[i] = 1;
    }
    cursor_ = 0;
}

std::optional<std::uint64_t> PrimeRange::next()
{
    while (!done_) {
        while (cursor_ < seg_len_) {
            const std::uint64_t idx = cursor_++;
            if (composite_[idx]) continue;
            const std::uint64_t n = seg_lo_ + idx;
            if (filter_ && n % filter_->modulus != filter_->residue) continue;
            return n;
        }
        const std::uint64_t next_lo = seg_lo_ + seg_len_;
        if (next_lo > hi_) {
            done_ = true;
            break;
        }
        seg_lo_ = next_lo;
        fill_segment();
    }
    return std::nullopt;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi, std::optional<ResidueFilter> filter)
{
    std::vector<std::uint64_t> out;
    PrimeRange range(lo, hi, filter);
    while (auto p = range.next()) out.push_back(*p);
    return out;
}

std::vector<PrimePower> trial_factor(std::uint64_t n)
{
    std::vector<PrimePower> out;
    if (n < 2) return out;
    auto take = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
    };
    take(2);
    for (std::uint64_t d = 3; d <= n / d; d += 2) take(d);
    if (n > 1) out.push_back({n, 1});
    return out;
}

} // namespace qchar
