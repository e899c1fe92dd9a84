#include "qchar/liouville.hpp"

#include "qchar/lambda_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qchar {

SeriesValue f_series(double x, std::uint64_t N)
{
    if (N == 0) throw std::invalid_argument("f_series: N must be positive");
    const auto lambda = cached_liouville(N);
    double sum = 0;
    double comp = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const double dn = static_cast<double>(n);
        const double p = dn * x;
        const double v = (*lambda)[n] * std::sin(2.0 * std::numbers::pi * (p - std::floor(p))) / (dn * dn);
        const double t = sum + v;
        comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return SeriesValue{sum + comp, 1.0 / static_cast<double>(N), N};
}

AgreementRecord agreement_length(const QuadChar& chi)
{
    const std::uint64_t q = chi.modulus();
    PrimeRange primes(2, q);
    while (auto p = primes.next()) {
        if (chi.at(*p) != -1) return AgreementRecord{q, *p - 1, *p};
    }
    throw std::logic_error("agreement_length: chi(q) = 0 was never reached");
}

namespace {

std::optional<std::uint64_t> scan_window(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint32_t>& small,
                                         std::uint64_t N)
{
    PrimeRange candidates(lo, hi, ResidueFilter{3, 8});
    while (auto q = candidates.next()) {
        if (*q <= 3 || *q <= N) continue;
        bool ok = true;
        for (std::uint32_t p : small) {
            if (jacobi_u(p, *q) != -1) {
                ok = false;
                break;
            }
        }
        if (ok) return *q;
    }
    return std::nullopt;
}

} // namespace

ImitatorSearch find_imitator(std::uint64_t N, const ImitatorOptions& opts)
{
    if (N == 0) throw std::invalid_argument("find_imitator: N must be positive");
    if (N > (std::uint64_t{1} << 31)) throw std::invalid_argument("find_imitator: N too large");
    const auto small = small_primes(static_cast<std::uint32_t>(N));
    constexpr std::uint64_t kWindow = std::uint64_t{1} << 22;
    const unsigned jobs = std::max(1u, opts.jobs);

    ImitatorSearch out;
    std::uint64_t lo = std::max<std::uint64_t>(opts.start, 4);
    while (lo <= opts.ceiling) {
        // One wave of `jobs` consecutive windows; the earliest hit wins.
        std::vector<std::future<std::optional<std::uint64_t>>> wave;
        std::vector<std::uint64_t> tops;
        for (unsigned j = 0; j < jobs && lo <= opts.ceiling; ++j) {
            const std::uint64_t hi = std::min(opts.ceiling, lo + kWindow - 1);
            wave.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, scan_window, lo, hi,
                                      std::cref(small), N));
            tops.push_back(hi);
            if (hi == opts.ceiling) {
                lo = opts.ceiling + 1;
                break;
            }
            lo = hi + 1;
        }
        for (std::size_t j = 0; j < wave.size(); ++j) {
            auto hit = wave[j].get();
            if (hit && !out.q) {
                out.q = hit;
                out.searched_to = *hit;
            }
            if (!out.q) out.searched_to = tops[j];
        }
        if (out.q) return out;
        if (lo == 0) break; // wrapped
    }
    return out;
}

FLowerBound f_lower_bound(const Rational& x, const QuadChar& chi)
{
    const AgreementRecord rec = agreement_length(chi);
    FqValue fq = fq_exact(chi, x);
    FLowerBound out;
    out.error_bound = Rational(2, 1) / Rational(static_cast<long long>(rec.N));
    out.lower = fq.value - out.error_bound.to_double();
    out.certified_positive = certified_above(fq.coefficient, chi.modulus(), out.error_bound);
    out.fq_coefficient = std::move(fq.coefficient);
    return out;
}

} // namespace qchar
