#pragma once

// The Liouville-side series f(x) = sum_n lambda(n) sin(2 pi n x) / n^2 and
// its relation to f_q through characters that agree with lambda on 1..N.

#include "qchar/fq.hpp"
#include "qchar/quad_char.hpp"
#include "qchar/rational.hpp"

#include <cstdint>
#include <optional>

namespace qchar {

/// First N terms of f(x); lambda comes from the shared cached table.
SeriesValue f_series(double x, std::uint64_t N);

struct AgreementRecord {
    std::uint64_t q = 0;
    std::uint64_t N = 0;              // chi_q(n) = lambda(n) for all n <= N
    std::uint64_t first_mismatch = 0; // N + 1, always a prime
};

/// Both sides are completely multiplicative with lambda(p) = -1, so the
/// agreement ends at the least prime p with chi_q(p) != -1 (p = q at worst).
AgreementRecord agreement_length(const QuadChar& chi);

struct ImitatorSearch {
    std::optional<std::uint64_t> q; // least qualifying prime, if found
    std::uint64_t searched_to = 0;  // every candidate <= this was examined
};

struct ImitatorOptions {
    std::uint64_t start = 11;                      // first candidate considered
    std::uint64_t ceiling = (std::uint64_t{1} << 62); // search budget
    unsigned jobs = 1;
};

/// Least prime q = 3 (mod 8), q > 3, with agreement_length(q) >= N.
ImitatorSearch find_imitator(std::uint64_t N, const ImitatorOptions& opts = {});

struct FLowerBound {
    Rational fq_coefficient; // f_q(x) = fq_coefficient * 2 pi^2 / sqrt(q)
    Rational error_bound;    // 2 / N, N the agreement length
    double lower = 0;        // display value of f_q(x) - 2/N
    bool certified_positive = false;
};

/// f(x) >= f_q(x) - 2/N where N is the agreement length of chi.
FLowerBound f_lower_bound(const Rational& x, const QuadChar& chi);

} // namespace qchar
