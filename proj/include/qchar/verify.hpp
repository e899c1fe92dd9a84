#pragma once

// Campaign-level verification: Conjecture-1 scans over prime ranges,
// positivity certificates for f on intervals, and test_a(p, q) scans.

#include "qchar/certificate.hpp"
#include "qchar/fq.hpp"
#include "qchar/quad_char.hpp"
#include "qchar/rational.hpp"
#include "qchar/wide.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qchar {

struct Conj1Report {
    std::uint64_t q = 0;
    bool holds = false;          // min_W >= 0
    wide_int min_W = 0;          // min of W(a) over a = 1..floor(q/2)
    std::uint64_t argmin_a = 0;  // least a attaining min_W
    std::int64_t h = 0;
    std::chrono::duration<double> elapsed{0};
};

/// f_q >= 0 on [0, 1/2] iff W(a) >= 0 for every a <= q/2, since f_q is
/// continuous and linear between lattice points. One O(q) pass.
Conj1Report verify_conjecture1(const QuadChar& chi);

/// Raised for unreadable or unwritable checkpoint files. Checkpoint lines
/// already written stay valid.
class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScanOptions {
    std::uint64_t q_min = 5;
    std::uint64_t q_max = 0;
    unsigned jobs = 1;
    std::optional<std::filesystem::path> checkpoint;
    /// Primes per checkpoint line.
    std::uint64_t checkpoint_every = std::uint64_t{1} << 16;
};

struct ScanReport {
    std::string campaign;
    std::uint64_t q_min = 0;
    std::uint64_t q_max = 0;
    std::uint64_t count = 0;                 // primes verified
    std::optional<wide_int> min_W;           // least min_W over all q
    std::uint64_t argmin_q = 0;              // least q attaining it
    std::uint64_t last_q = 0;                // largest q verified
    std::vector<Conj1Report> violations;     // ascending q
    std::optional<std::uint64_t> resumed_after; // last_q read from the checkpoint
    std::chrono::duration<double> elapsed{0};

    bool all_hold() const { return violations.empty(); }
};

/// Campaign name written into checkpoint lines for a range.
std::string conjecture1_campaign(std::uint64_t q_min, std::uint64_t q_max);

/// Every prime q = 3 (mod 8) in [max(q_min, 5), q_max]. Requires
/// q_min <= q_max unless the range is empty. The aggregate is independent of
/// the job count and of interruption and resumption.
ScanReport scan_conjecture1(const ScanOptions& opts);

struct CertifyRequest {
    Rational eps;
    std::optional<std::uint64_t> q;      // absent: search for an imitator
    Rational xmax = Rational(1, 4);
    std::uint64_t auto_q_ceiling = 20'000'000;
    unsigned jobs = 1;
};

struct CertifyResult {
    bool complete = false;               // [eps, xmax] is covered
    std::uint64_t q = 0;                 // modulus of the final attempt
    std::uint64_t agreement_N = 0;
    std::optional<PositivityCertificate> certificate; // best interval found, if any
    /// Least a with every margin from a up to the end of the range passing;
    /// absent if even the last lattice point fails.
    std::optional<std::uint64_t> best_a0;
    /// Last lattice point of the passing run that starts at the eps cell
    /// (ceil(q xmax) when the right end is reached); 0 if the eps cell fails.
    std::uint64_t reached = 0;
    std::vector<std::uint64_t> tried;    // moduli attempted, in order
    std::string message;
};

/// Certificate that f >= 0 on [a0/q, xmax] with a0/q <= eps. Throws
/// std::invalid_argument unless 0 < eps < xmax <= 1/2.
CertifyResult certify_f_positive(const CertifyRequest& req);

/// Certificate attempt with a fixed modulus.
CertifyResult certify_with(const Rational& eps, const QuadChar& chi, const Rational& xmax);

enum class PQCongruence {
    mod8_3, // p, q = 3 (mod 8)
    mod4_3, // p, q = 3 (mod 4)
};

struct TestPQOptions {
    std::uint64_t p_min = 3;
    std::uint64_t p_max = 0;
    std::uint64_t q_min = 5;
    std::uint64_t q_max = 0;
    std::optional<std::uint64_t> a_max;
    PQCongruence congruence = PQCongruence::mod8_3;
};

struct TestPQSummary {
    std::uint64_t count = 0;
    std::uint64_t nonpositive = 0;
    std::uint64_t q_divisible = 0;
};

/// Every admissible (q, p, a) in ascending q, then p, then a; each result is
/// passed to sink as it is computed.
TestPQSummary scan_test_pq(const TestPQOptions& opts, const std::function<void(const TestPQ&)>& sink);

} // namespace qchar
