#pragma once

// Positivity certificates for f(x) on [a0/q, xmax].
//
// A certificate names a modulus q whose character agrees with lambda on
// 1..N, so |f - f_q| < 2/N everywhere. It lists W(a) for every lattice point
// a0 <= a <= ceil(q xmax); each satisfies 2 pi^2 W(a) / q^{3/2} >= 2/N, and
// because f_q is linear between lattice points this bounds f_q below on every
// cell, hence f >= 0 on the interval. The checker re-derives h, the agreement
// length and each cited W(a) from Jacobi symbols and trial factorization
// alone, without the sieves used to produce the certificate.

#include "qchar/rational.hpp"
#include "qchar/wide.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qchar {

inline constexpr const char* kCertificateVersion = "v1";
inline constexpr const char* kCertificateVerdict = "nonnegative";

struct LatticeMargin {
    std::uint64_t a;
    wide_int W;

    friend bool operator==(const LatticeMargin&, const LatticeMargin&) = default;
};

struct PositivityCertificate {
    std::string version = kCertificateVersion;
    std::uint64_t q = 0;
    std::int64_t h = 0;
    std::uint64_t agreement_N = 0;
    std::uint64_t a0 = 0;
    Rational xmax;
    std::vector<LatticeMargin> margins;
    std::string verdict = kCertificateVerdict;

    Rational error_bound() const;
    Rational lower() const;
};

/// 2 pi^2 W / q^{3/2} >= 2 / N, decided exactly with a rational lower bound
/// for pi (so a pass is a proof).
bool margin_passes(std::uint64_t q, wide_int W, std::uint64_t N);

nlohmann::json certificate_to_json(const PositivityCertificate& cert);
/// Throws std::invalid_argument on any missing or malformed field.
PositivityCertificate certificate_from_json(const nlohmann::json& j);

void write_certificate(const std::filesystem::path& path, const PositivityCertificate& cert);
PositivityCertificate read_certificate(const std::filesystem::path& path);

struct CheckResult {
    bool ok = false;
    std::string reason; // empty when ok
};

CheckResult check_certificate(const PositivityCertificate& cert);
CheckResult check_certificate(const nlohmann::json& j);

/// Union of two certificates for the same q whose intervals overlap or touch.
std::optional<PositivityCertificate> merge_certificates(const PositivityCertificate& a,
                                                        const PositivityCertificate& b);

} // namespace qchar
