#include "qchar/chi_sieve.hpp"

#include <algorithm>
#include <stdexcept>

namespace qchar {

namespace {

struct SpfData {
    std::vector<std::uint32_t> spf;
    std::vector<std::uint32_t> primes;
};

const SpfData& spf_data()
{
    static const SpfData data = [] {
        SpfData d;
        const std::uint32_t n = static_cast<std::uint32_t>(ChiSieve::kBlock);
        d.spf.assign(n, 0);
        for (std::uint32_t i = 2; i < n; ++i) {
            if (d.spf[i] == 0) {
                d.spf[i] = i;
                d.primes.push_back(i);
            }
            for (std::uint32_t p : d.primes) {
                const std::uint64_t m = std::uint64_t{p} * i;
                if (p > d.spf[i] || m >= n) break;
                d.spf[m] = p;
            }
        }
        return d;
    }();
    return data;
}

} // namespace

std::span<const std::uint32_t> spf_table()
{
    return spf_data().spf;
}

ChiSieve::ChiSieve(const QuadChar& chi, std::uint64_t limit) : q_(chi.modulus()), limit_(limit)
{
    if (limit_ > (std::uint64_t{1} << 40)) throw std::invalid_argument("chi sieve limit above 2^40");
}

void ChiSieve::fill_first()
{
    const auto& spf = spf_data().spf;
    const std::uint64_t top = std::min(limit_, kBlock - 1);
    small_.assign(top + 1, 0);
    if (top >= 1) small_[1] = 1;
    for (std::uint64_t n = 2; n <= top; ++n) {
        const std::uint32_t p = spf[n];
        if (p == n) {
            small_[n] = static_cast<std::int8_t>(jacobi_u(n, q_));
        } else {
            small_[n] = static_cast<std::int8_t>(small_[p] * small_[n / p]);
        }
    }
}

void ChiSieve::fill_segment(std::uint64_t lo, std::uint64_t hi)
{
    const std::size_t len = hi - lo + 1;
    block_.assign(len, 1);
    rem_.resize(len);
    for (std::size_t i = 0; i < len; ++i) rem_[i] = lo + i;
    for (std::uint32_t p : spf_data().primes) {
        if (std::uint64_t{p} * p > hi) break;
        const std::int8_t cp = small_[p];
        for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
            const std::size_t i = m - lo;
            std::uint64_t r = rem_[i] / p;
            std::int8_t v = static_cast<std::int8_t>(block_[i] * cp);
            while (r % p == 0) {
                r /= p;
                v = static_cast<std::int8_t>(v * cp);
            }
            rem_[i] = r;
            block_[i] = v;
        }
    }
    for (std::size_t i = 0; i < len; ++i) {
        const std::uint64_t r = rem_[i];
        if (r == 1 || block_[i] == 0) continue;
        const int cr = r < kBlock ? small_[r] : jacobi_u(r, q_);
        block_[i] = static_cast<std::int8_t>(block_[i] * cr);
    }
}

std::span<const std::int8_t> ChiSieve::next_block()
{
    if (next_ > limit_) return {};
    start_ = next_;
    if (start_ == 0) {
        fill_first();
        next_ = kBlock;
        return small_;
    }
    const std::uint64_t hi = std::min(limit_, start_ + kBlock - 1);
    fill_segment(start_, hi);
    next_ = hi + 1;
    return block_;
}

std::vector<std::int8_t> chi_values(const QuadChar& chi, std::uint64_t m)
{
    std::vector<std::int8_t> out;
    out.reserve(m + 1);
    ChiSieve sieve(chi, m);
    for (auto blk = sieve.next_block(); !blk.empty(); blk = sieve.next_block()) {
        out.insert(out.end(), blk.begin(), blk.end());
    }
    return out;
}

} // namespace qchar
