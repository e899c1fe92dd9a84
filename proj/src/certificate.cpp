#include "qchar/certificate.hpp"

#include "qchar/ntcore.hpp"
#include "qchar/quad_char.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace qchar {

using nlohmann::json;

Rational PositivityCertificate::error_bound() const
{
    return Rational(2, static_cast<long long>(agreement_N));
}

Rational PositivityCertificate::lower() const
{
    return Rational(static_cast<long long>(a0), static_cast<long long>(q));
}

bool margin_passes(std::uint64_t q, wide_int W, std::uint64_t N)
{
    if (W <= 0 || N == 0) return false;
    // pi^2 W N >= q^{3/2}  <=>  pi^4 W^2 N^2 >= q^3
    const Rational pi = pi_lower_bound();
    const Rational pi2 = pi * pi;
    const Rational wn = Rational::from_wide(W) * Rational(static_cast<long long>(N));
    const Rational qq(static_cast<long long>(q));
    return pi2 * pi2 * wn * wn >= qq * qq * qq;
}

json certificate_to_json(const PositivityCertificate& cert)
{
    json margins = json::array();
    for (const auto& m : cert.margins) margins.push_back({{"a", m.a}, {"W", to_int64(m.W)}});
    return json{{"version", cert.version},
                {"q", cert.q},
                {"h", cert.h},
                {"agreement_N", cert.agreement_N},
                {"a0", cert.a0},
                {"xmax_num", cert.xmax.num().get_si()},
                {"xmax_den", cert.xmax.den().get_si()},
                {"margins", std::move(margins)},
                {"verdict", cert.verdict}};
}

namespace {

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("certificate: missing field ") + key);
    return j.at(key);
}

std::uint64_t unsigned_field(const json& j, const char* key)
{
    const json& v = field(j, key);
    if (!v.is_number_unsigned()) throw std::invalid_argument(std::string("certificate: ") + key + " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::int64_t integer_field(const json& j, const char* key)
{
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw std::invalid_argument(std::string("certificate: ") + key + " must be an integer");
    return v.get<std::int64_t>();
}

std::string string_field(const json& j, const char* key)
{
    const json& v = field(j, key);
    if (!v.is_string()) throw std::invalid_argument(std::string("certificate: ") + key + " must be a string");
    return v.get<std::string>();
}

} // namespace

PositivityCertificate certificate_from_json(const json& j)
{
    PositivityCertificate c;
    c.version = string_field(j, "version");
    c.q = unsigned_field(j, "q");
    c.h = integer_field(j, "h");
    c.agreement_N = unsigned_field(j, "agreement_N");
    c.a0 = unsigned_field(j, "a0");
    const std::int64_t num = integer_field(j, "xmax_num");
    const std::int64_t den = integer_field(j, "xmax_den");
    if (den <= 0) throw std::invalid_argument("certificate: xmax_den must be positive");
    c.xmax = Rational(num, den);
    if (c.xmax.num() != num || c.xmax.den() != den) throw std::invalid_argument("certificate: xmax not in lowest terms");
    const json& margins = field(j, "margins");
    if (!margins.is_array()) throw std::invalid_argument("certificate: margins must be an array");
    for (const auto& m : margins) {
        c.margins.push_back(LatticeMargin{unsigned_field(m, "a"), integer_field(m, "W")});
    }
    c.verdict = string_field(j, "verdict");
    return c;
}

void write_certificate(const std::filesystem::path& path, const PositivityCertificate& cert)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << certificate_to_json(cert).dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

PositivityCertificate read_certificate(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return certificate_from_json(json::parse(in));
}

namespace {

CheckResult reject(std::string why)
{
    return CheckResult{false, std::move(why)};
}

int liouville_by_factoring(std::uint64_t n)
{
    unsigned omega = 0;
    for (const auto& pp : trial_factor(n)) omega += pp.exponent;
    return omega % 2 == 0 ? 1 : -1;
}

} // namespace

CheckResult check_certificate(const PositivityCertificate& c)
{
    if (c.version != kCertificateVersion) return reject("unknown version '" + c.version + "'");
    if (c.verdict != kCertificateVerdict) return reject("unknown verdict '" + c.verdict + "'");
    try {
        (void)QuadChar::make(c.q);
    } catch (const std::invalid_argument& e) {
        return reject(e.what());
    }
    if (c.agreement_N == 0 || c.a0 == 0 || c.h <= 0) return reject("non-positive h, agreement_N or a0");
    const Rational half(1, 2);
    if (c.xmax.sign() <= 0 || c.xmax > half) return reject("xmax outside (0, 1/2]");
    if (c.lower() >= c.xmax) return reject("empty interval");

    const std::uint64_t q = c.q;
    const BigInt last_big = (Rational(static_cast<long long>(q)) * c.xmax).ceil();
    const std::uint64_t last = last_big.get_ui();
    if (c.margins.size() != last - c.a0 + 1) return reject("margin list does not span a0..ceil(q xmax)");
    for (std::size_t i = 0; i < c.margins.size(); ++i) {
        if (c.margins[i].a != c.a0 + i) return reject("margin list not contiguous at index " + std::to_string(i));
    }

    // h from the half-range sums, directly from Jacobi symbols.
    wide_int A = 0;
    wide_int B = 0;
    for (std::uint64_t n = 1; n <= (q - 1) / 2; ++n) {
        const int c_n = jacobi_u(n, q);
        A += c_n;
        B += c_n * static_cast<wide_int>(n);
    }
    const wide_int h_num = static_cast<wide_int>(q) * A - 2 * B;
    if (h_num % static_cast<wide_int>(q) != 0 || h_num / static_cast<wide_int>(q) != c.h) return reject("class number mismatch");

    // Exact agreement length against lambda from factorizations.
    for (std::uint64_t n = 1; n <= c.agreement_N + 1; ++n) {
        const bool equal = jacobi_u(n, q) == liouville_by_factoring(n);
        if (n <= c.agreement_N && !equal) return reject("chi and lambda differ at n = " + std::to_string(n));
        if (n == c.agreement_N + 1 && equal) return reject("agreement_N is not the exact agreement length");
    }

    // Cited margins, plus minimality of a0.
    A = 0;
    B = 0;
    std::size_t next = 0;
    for (std::uint64_t a = 0; a <= last; ++a) {
        if (a > 0) {
            const int c_a = jacobi_u(a, q);
            A += c_a;
            B += c_a * static_cast<wide_int>(a);
        }
        if (a + 1 < c.a0) continue;
        const wide_int W = static_cast<wide_int>(a) * (c.h - A) + B;
        if (a + 1 == c.a0) {
            if (margin_passes(q, W, c.agreement_N)) return reject("a0 is not minimal");
            continue;
        }
        if (c.margins[next].W != W) return reject("W mismatch at a = " + std::to_string(a));
        if (!margin_passes(q, W, c.agreement_N)) return reject("margin fails at a = " + std::to_string(a));
        ++next;
    }
    return CheckResult{true, {}};
}

CheckResult check_certificate(const json& j)
{
    try {
        return check_certificate(certificate_from_json(j));
    } catch (const std::exception& e) {
        return reject(e.what());
    }
}

std::optional<PositivityCertificate> merge_certificates(const PositivityCertificate& a, const PositivityCertificate& b)
{
    if (a.q != b.q || a.h != b.h || a.agreement_N != b.agreement_N || a.version != b.version) return std::nullopt;
    const PositivityCertificate& left = a.a0 <= b.a0 ? a : b;
    const PositivityCertificate& right = a.a0 <= b.a0 ? b : a;
    if (left.margins.empty() || right.margins.empty()) return std::nullopt;
    if (right.a0 > left.margins.back().a) return std::nullopt; // gap between the intervals

    PositivityCertificate out = left;
    out.xmax = std::max(left.xmax, right.xmax);
    for (const auto& m : right.margins) {
        if (m.a > out.margins.back().a) out.margins.push_back(m);
    }
    return out;
}

} // namespace qchar
