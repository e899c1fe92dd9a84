#pragma once

#include "qchar/quad_char.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qchar {

/// Streams chi_q(n) for 0 <= n <= limit in blocks of kBlock entries.
///
/// chi is evaluated by the Jacobi symbol on primes only and extended
/// multiplicatively. The first block uses a shared smallest-prime-factor
/// table; later blocks divide out base primes segment by segment. Memory is
/// two blocks regardless of limit. Limits above 2^40 are rejected.
class ChiSieve {
public:
    static constexpr std::uint64_t kBlock = std::uint64_t{1} << 20;

    ChiSieve(const QuadChar& chi, std::uint64_t limit);

    /// Next block of values; index i holds chi(block_start() + i). The first
    /// block starts at n = 0. Empty once the limit has been passed.
    std::span<const std::int8_t> next_block();
    std::uint64_t block_start() const { return start_; }

private:
    void fill_first();
    void fill_segment(std::uint64_t lo, std::uint64_t hi);

    std::uint64_t q_;
    std::uint64_t limit_;
    std::uint64_t start_ = 0;
    std::uint64_t next_ = 0;
    std::vector<std::int8_t> small_;
    std::vector<std::int8_t> block_;
    std::vector<std::uint64_t> rem_;
};

/// chi(n) for n = 0..m in one vector. Convenience for small m and tests.
std::vector<std::int8_t> chi_values(const QuadChar& chi, std::uint64_t m);

/// Smallest prime factor for 0 <= n < ChiSieve::kBlock (0 and 1 map to 0).
std::span<const std::uint32_t> spf_table();

} // namespace qchar
