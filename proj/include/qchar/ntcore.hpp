#pragma once

// Integer primitives: Jacobi symbol, 64-bit primality, segmented prime ranges.

#include <cstdint>
#include <optional>
#include <vector>

namespace qchar {

/// Jacobi symbol (n|m) for odd m >= 1. Throws std::invalid_argument otherwise.
int jacobi(std::int64_t n, std::uint64_t m);
int jacobi_u(std::uint64_t n, std::uint64_t m);

/// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

struct ResidueFilter {
    std::uint64_t residue;
    std::uint64_t modulus;
};

/// Ascending primes in [lo, hi], optionally restricted to p = r (mod m).
/// Segmented: memory is one fixed-size segment plus the base primes up to
/// sqrt(hi), independent of hi - lo.
class PrimeRange {
public:
    static constexpr std::uint64_t kSegment = 1u << 20;

    PrimeRange(std::uint64_t lo, std::uint64_t hi, std::optional<ResidueFilter> filter = std::nullopt);

    std::optional<std::uint64_t> next();

private:
    void fill_segment();

    std::uint64_t hi_;
    std::optional<ResidueFilter> filter_;
    std::vector<std::uint32_t> base_primes_;
    std::vector<std::uint8_t> composite_;
    std::uint64_t seg_lo_;
    std::uint64_t seg_len_ = 0;
    std::uint64_t cursor_ = 0;
    bool done_ = false;
};

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                           std::optional<ResidueFilter> filter = std::nullopt);

/// Plain sieve of Eratosthenes up to n inclusive.
std::vector<std::uint32_t> small_primes(std::uint32_t n);

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
};

/// Trial-division factorization. Intended for validation of moduli, not speed.
std::vector<PrimePower> trial_factor(std::uint64_t n);

} // namespace qchar
