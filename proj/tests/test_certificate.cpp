#include "qchar/certificate.hpp"
#include "qchar/verify.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>

using namespace qchar;
using nlohmann::json;

namespace {

PositivityCertificate q163_certificate()
{
    const CertifyResult r = certify_with(Rational(7, 163), QuadChar::make(163), Rational(1, 4));
    REQUIRE(r.certificate);
    return *r.certificate;
}

} // namespace

TEST_CASE("margin test is exact")
{
    // q = 163, N = 40: W = 6 passes, W = 5 fails (2 pi^2 W / 163^1.5 vs 1/20).
    CHECK(margin_passes(163, 6, 40));
    CHECK_FALSE(margin_passes(163, 5, 40));
    CHECK_FALSE(margin_passes(163, 0, 40));
    CHECK_FALSE(margin_passes(163, -3, 40));
    CHECK_FALSE(margin_passes(163, 6, 0));
}

TEST_CASE("certificate fields for q = 163")
{
    const PositivityCertificate c = q163_certificate();
    CHECK(c.version == "v1");
    CHECK(c.verdict == "nonnegative");
    CHECK(c.q == 163);
    CHECK(c.h == 1);
    CHECK(c.agreement_N == 40);
    CHECK(c.a0 == 6);
    CHECK(c.xmax == Rational(1, 4));
    CHECK(c.error_bound() == Rational(1, 20));
    CHECK(c.lower() == Rational(6, 163));
    REQUIRE(c.margins.size() == 41 - 6 + 1);
    CHECK(c.margins.front() == LatticeMargin{6, 7});
    CHECK(c.margins.back().a == 41);
    const CheckResult r = check_certificate(c);
    CHECK(r.ok);
    CHECK(r.reason.empty());
}

TEST_CASE("json round trip and file I/O")
{
    const PositivityCertificate c = q163_certificate();
    const json j = certificate_to_json(c);
    CHECK(j.at("xmax_num") == 1);
    CHECK(j.at("xmax_den") == 4);
    CHECK(j.at("margins").size() == c.margins.size());
    const PositivityCertificate back = certificate_from_json(j);
    CHECK(back.margins == c.margins);
    CHECK(back.xmax == c.xmax);
    CHECK(check_certificate(j).ok);

    const auto path = std::filesystem::temp_directory_path() / "qchar_cert_roundtrip.json";
    write_certificate(path, c);
    CHECK(check_certificate(read_certificate(path)).ok);
    std::filesystem::remove(path);
    CHECK_THROWS(read_certificate(path));
    CHECK_THROWS(write_certificate("/nonexistent-dir/x.json", c));
}

TEST_CASE("malformed certificates are rejected, not thrown")
{
    json j = certificate_to_json(q163_certificate());
    json missing = j;
    missing.erase("h");
    CHECK_FALSE(check_certificate(missing).ok);
    CHECK_THROWS_AS(certificate_from_json(missing), std::invalid_argument);
    json wrong_type = j;
    wrong_type["q"] = "163";
    CHECK_FALSE(check_certificate(wrong_type).ok);
    json unreduced = j;
    unreduced["xmax_num"] = 2;
    unreduced["xmax_den"] = 8;
    CHECK_FALSE(check_certificate(unreduced).ok);
    CHECK_FALSE(check_certificate(json::array()).ok);
}

TEST_CASE("every single-field mutation is rejected")
{
    const json good = certificate_to_json(q163_certificate());
    std::vector<std::pair<const char*, std::function<void(json&)>>> mutations{
        {"version", [](json& j) { j["version"] = "v2"; }},
        {"verdict", [](json& j) { j["verdict"] = "positive"; }},
        {"q", [](json& j) { j["q"] = j["q"].get<std::uint64_t>() + 1; }},
        {"q -> other prime", [](json& j) { j["q"] = 163 + 8 * 6; }}, // 211 = 3 mod 8
        {"h", [](json& j) { j["h"] = j["h"].get<std::int64_t>() + 1; }},
        {"agreement_N up", [](json& j) { j["agreement_N"] = j["agreement_N"].get<std::uint64_t>() + 1; }},
        {"agreement_N down", [](json& j) { j["agreement_N"] = j["agreement_N"].get<std::uint64_t>() - 1; }},
        {"a0 up", [](json& j) { j["a0"] = j["a0"].get<std::uint64_t>() + 1; }},
        {"a0 down", [](json& j) { j["a0"] = j["a0"].get<std::uint64_t>() - 1; }},
        {"xmax_num", [](json& j) { j["xmax_num"] = j["xmax_num"].get<std::int64_t>() + 1; }},
        {"xmax_den", [](json& j) { j["xmax_den"] = j["xmax_den"].get<std::int64_t>() - 1; }},
        {"margin W", [](json& j) { j["margins"][3]["W"] = j["margins"][3]["W"].get<std::int64_t>() + 1; }},
        {"margin a", [](json& j) { j["margins"][3]["a"] = j["margins"][3]["a"].get<std::uint64_t>() + 1; }},
        {"margin dropped", [](json& j) { j["margins"].erase(j["margins"].size() - 1); }},
        {"margin added", [](json& j) { j["margins"].push_back(json{{"a", 42}, {"W", 30}}); }},
    };
    for (const auto& [name, mutate] : mutations) {
        json bad = good;
        mutate(bad);
        INFO("mutation: " << name);
        CHECK_FALSE(check_certificate(bad).ok);
    }
}

TEST_CASE("a padded certificate with a non-minimal a0 is rejected")
{
    PositivityCertificate c = q163_certificate();
    c.a0 = 7;
    c.margins.erase(c.margins.begin());
    const CheckResult r = check_certificate(c);
    CHECK_FALSE(r.ok);
    CHECK(r.reason.find("minimal") != std::string::npos);
}

TEST_CASE("adjacent certificates merge into one that still verifies")
{
    const QuadChar chi = QuadChar::make(163);
    const auto left = certify_with(Rational(7, 163), chi, Rational(1, 8)).certificate;
    const auto right = certify_with(Rational(1, 8), chi, Rational(1, 4)).certificate;
    REQUIRE(left);
    REQUIRE(right);
    CHECK(check_certificate(*left).ok);
    CHECK(check_certificate(*right).ok);
    const auto merged = merge_certificates(*left, *right);
    REQUIRE(merged);
    CHECK(merged->xmax == Rational(1, 4));
    CHECK(merged->lower() == Rational(6, 163));
    CHECK(check_certificate(*merged).ok);
    CHECK(merge_certificates(*right, *left)->margins == merged->margins);

    PositivityCertificate other = *right;
    other.q = 211;
    CHECK_FALSE(merge_certificates(*left, other));
}
