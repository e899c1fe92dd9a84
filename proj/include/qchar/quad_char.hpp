#pragma once

#include "qchar/ntcore.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qchar {

/// The real character n -> (n|q) for a squarefree modulus q > 3, q = 3 (mod 4).
///
/// `make` is the strict form used throughout the positivity machinery and
/// additionally requires q = 3 (mod 8), i.e. chi(2) = -1. `make_odd` admits
/// q = 7 (mod 8) as well, which the T(q) statistic and the (a/p)-evaluation
/// need. Moduli that are not prime are validated by trial division.
class QuadChar {
public:
    static constexpr std::uint64_t kMaxCompositeModulus = 100'000'000'000'000ULL;

    static QuadChar make(std::uint64_t q);
    static QuadChar make_odd(std::uint64_t q);

    std::uint64_t modulus() const { return q_; }
    std::span<const PrimePower> factorization() const { return factors_; }
    bool prime_modulus() const { return factors_.size() == 1; }
    bool three_mod_eight() const { return q_ % 8 == 3; }

    int operator()(std::int64_t n) const { return jacobi(n, q_); }
    int at(std::uint64_t n) const { return jacobi_u(n, q_); }

    friend bool operator==(const QuadChar& a, const QuadChar& b) { return a.q_ == b.q_; }

private:
    QuadChar(std::uint64_t q, std::vector<PrimePower> f) : q_(q), factors_(std::move(f)) {}
    static QuadChar validate(std::uint64_t q, bool strict);

    std::uint64_t q_;
    std::vector<PrimePower> factors_;
};

} // namespace qchar
