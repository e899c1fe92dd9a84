#include "qchar/verify.hpp"

#include "qchar/charsum.hpp"
#include "qchar/liouville.hpp"
#include "qchar/ntcore.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <thread>

namespace qchar {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

Conj1Report verify_conjecture1(const QuadChar& chi)
{
    const auto t0 = Clock::now();
    const WProfile prof = w_lattice(chi);
    Conj1Report r;
    r.q = prof.q;
    r.h = prof.h;
    r.min_W = prof.min_W;
    r.argmin_a = prof.argmin;
    r.holds = prof.min_W >= 0;
    r.elapsed = Clock::now() - t0;
    return r;
}

std::string conjecture1_campaign(std::uint64_t q_min, std::uint64_t q_max)
{
    return "conj1:" + std::to_string(q_min) + "-" + std::to_string(q_max);
}

namespace {

struct ScanState {
    std::uint64_t count = 0;
    std::optional<wide_int> min_W;
    std::uint64_t argmin_q = 0;
    std::uint64_t last_q = 0;
    std::vector<std::uint64_t> failures;

    // Folding in ascending q keeps the least q on ties.
    void fold(const Conj1Report& r)
    {
        ++count;
        last_q = r.q;
        if (!min_W || r.min_W < *min_W) {
            min_W = r.min_W;
            argmin_q = r.q;
        }
        if (!r.holds) failures.push_back(r.q);
    }
};

json checkpoint_line(const std::string& campaign, const ScanState& s)
{
    return json{{"campaign", campaign},
                {"last_q", s.last_q},
                {"count", s.count},
                {"min_W", s.min_W ? json(to_int64(*s.min_W)) : json(nullptr)},
                {"argmin_q", s.argmin_q},
                {"failures", s.failures}};
}

std::optional<ScanState> read_checkpoint(const std::filesystem::path& path, const std::string& campaign)
{
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw CheckpointError("cannot read checkpoint " + path.string());
    std::optional<ScanState> last;
    std::string line;
    while (std::getline(in, line)) {
        // A torn final line from an interrupted write is skipped.
        const json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || j.value("campaign", std::string{}) != campaign) continue;
        try {
            ScanState s;
            s.last_q = j.at("last_q").get<std::uint64_t>();
            s.count = j.at("count").get<std::uint64_t>();
            if (!j.at("min_W").is_null()) s.min_W = j.at("min_W").get<std::int64_t>();
            s.argmin_q = j.at("argmin_q").get<std::uint64_t>();
            if (j.contains("failures")) s.failures = j.at("failures").get<std::vector<std::uint64_t>>();
            last = std::move(s);
        } catch (const json::exception& e) {
            throw CheckpointError("malformed checkpoint line in " + path.string() + ": " + e.what());
        }
    }
    if (in.bad()) throw CheckpointError("error reading checkpoint " + path.string());
    return last;
}

class CheckpointWriter {
public:
    explicit CheckpointWriter(const std::filesystem::path& path) : path_(path)
    {
        bool needs_newline = false;
        {
            std::ifstream in(path, std::ios::binary | std::ios::ate);
            if (in && in.tellg() > 0) {
                in.seekg(-1, std::ios::end);
                needs_newline = in.get() != '\n';
            }
        }
        out_.open(path, std::ios::app);
        if (!out_) throw CheckpointError("cannot open checkpoint " + path.string() + " for appending");
        if (needs_newline) out_ << '\n';
    }

    void append(const json& line)
    {
        out_ << line.dump() << '\n';
        out_.flush();
        if (!out_) throw CheckpointError("write failed: " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

// Splits [0, qs.size()) into about `parts` contiguous chunks of equal sum q.
std::vector<std::size_t> balanced_chunks(const std::vector<std::uint64_t>& qs, std::size_t parts)
{
    long double total = 0;
    for (auto q : qs) total += static_cast<long double>(q);
    std::vector<std::size_t> bounds{0};
    long double acc = 0;
    std::size_t k = 1;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        acc += static_cast<long double>(qs[i]);
        if (acc >= total * static_cast<long double>(k) / static_cast<long double>(parts) && i + 1 < qs.size()) {
            bounds.push_back(i + 1);
            while (acc >= total * static_cast<long double>(k) / static_cast<long double>(parts)) ++k;
        }
    }
    bounds.push_back(qs.size());
    return bounds;
}

std::vector<Conj1Report> verify_batch(const std::vector<std::uint64_t>& qs, unsigned jobs)
{
    std::vector<Conj1Report> out(qs.size());
    auto run = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = verify_conjecture1(QuadChar::make(qs[i]));
    };
    if (jobs <= 1 || qs.size() < 2) {
        run(0, qs.size());
        return out;
    }
    const auto bounds = balanced_chunks(qs, std::size_t{jobs} * 16);
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (std::size_t c = next++; c + 1 < bounds.size(); c = next++) run(bounds[c], bounds[c + 1]);
            });
        }
    }
    return out;
}

} // namespace

ScanReport scan_conjecture1(const ScanOptions& opts)
{
    if (opts.q_min > opts.q_max) throw std::invalid_argument("scan: q_min > q_max");
    if (opts.checkpoint_every == 0) throw std::invalid_argument("scan: checkpoint_every must be positive");
    const auto t0 = Clock::now();

    ScanReport rep;
    rep.campaign = conjecture1_campaign(opts.q_min, opts.q_max);
    rep.q_min = opts.q_min;
    rep.q_max = opts.q_max;

    ScanState state;
    std::uint64_t start = std::max<std::uint64_t>(opts.q_min, 5);
    if (opts.checkpoint) {
        if (auto prev = read_checkpoint(*opts.checkpoint, rep.campaign)) {
            state = std::move(*prev);
            rep.resumed_after = state.last_q;
            start = std::max(start, state.last_q + 1);
        }
    }
    for (std::uint64_t q : state.failures) rep.violations.push_back(verify_conjecture1(QuadChar::make(q)));

    std::optional<CheckpointWriter> writer;
    if (start <= opts.q_max) {
        PrimeRange primes(start, opts.q_max, ResidueFilter{3, 8});
        std::vector<std::uint64_t> batch;
        for (bool more = true; more;) {
            batch.clear();
            while (batch.size() < opts.checkpoint_every) {
                auto q = primes.next();
                if (!q) {
                    more = false;
                    break;
                }
                batch.push_back(*q);
            }
            if (batch.empty()) break;
            for (const auto& r : verify_batch(batch, opts.jobs)) {
                state.fold(r);
                if (!r.holds) rep.violations.push_back(r);
            }
            if (opts.checkpoint) {
                if (!writer) writer.emplace(*opts.checkpoint);
                writer->append(checkpoint_line(rep.campaign, state));
            }
        }
    }

    rep.count = state.count;
    rep.min_W = state.min_W;
    rep.argmin_q = state.argmin_q;
    rep.last_q = state.last_q;
    rep.elapsed = Clock::now() - t0;
    return rep;
}

namespace {

// margin_passes with a floating-point shortcut far from the boundary.
bool margin_passes_fast(std::uint64_t q, wide_int W, std::uint64_t N)
{
    if (W <= 0) return false;
    const long double pi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;
    const long double lhs = pi2 * static_cast<long double>(W) * static_cast<long double>(N);
    const long double rhs = std::pow(static_cast<long double>(q), 1.5L);
    if (lhs > rhs * (1 + 1e-9L)) return true;
    if (lhs < rhs * (1 - 1e-9L)) return false;
    return margin_passes(q, W, N);
}

} // namespace

CertifyResult certify_with(const Rational& eps, const QuadChar& chi, const Rational& xmax)
{
    if (eps.sign() <= 0 || eps >= xmax || xmax > Rational(1, 2))
        throw std::invalid_argument("certify: need 0 < eps < xmax <= 1/2");

    const std::uint64_t q = chi.modulus();
    const Rational qr(static_cast<long long>(q));
    const std::uint64_t a_e = (qr * eps).floor().get_ui();
    const std::uint64_t top = (qr * xmax).ceil().get_ui();
    const std::uint64_t lim = std::min(top, q / 2);

    CertifyResult res;
    res.q = q;
    res.agreement_N = agreement_length(chi).N;
    res.tried.push_back(q);
    const std::int64_t h = class_number(chi).h;
    const auto W = w_values(chi, lim);

    std::vector<char> pass(lim + 1);
    for (std::uint64_t a = 0; a <= lim; ++a) pass[a] = margin_passes_fast(q, W[a], res.agreement_N);

    if (pass[lim]) {
        std::uint64_t a = lim;
        while (a > 0 && pass[a - 1]) --a;
        res.best_a0 = a;
    }

    // The run [a0, R] of passing lattice points that certificate will cite.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> run;
    if (a_e <= lim && pass[a_e]) {
        std::uint64_t lo = a_e;
        std::uint64_t hi = a_e;
        while (lo > 0 && pass[lo - 1]) --lo;
        while (hi < lim && pass[hi + 1]) ++hi;
        run.emplace(lo, hi);
        res.reached = hi;
    } else if (res.best_a0) {
        run.emplace(*res.best_a0, lim);
    }

    if (run) {
        const auto [a0, R] = *run;
        PositivityCertificate cert;
        cert.q = q;
        cert.h = h;
        cert.agreement_N = res.agreement_N;
        cert.a0 = a0;
        cert.xmax = R == top ? xmax : Rational(static_cast<long long>(R), static_cast<long long>(q));
        if (cert.lower() < cert.xmax) {
            for (std::uint64_t a = a0; a <= R; ++a) cert.margins.push_back(LatticeMargin{a, W[a]});
            res.complete = cert.lower() <= eps && R == top;
            res.certificate = std::move(cert);
        }
    }

    if (res.complete) {
        res.message = "covered [" + res.certificate->lower().to_string() + ", " + res.certificate->xmax.to_string() + "]";
    } else if (res.certificate) {
        res.message = "bound insufficient; best interval [" + res.certificate->lower().to_string() + ", " +
                      res.certificate->xmax.to_string() + "]";
    } else {
        res.message = "bound insufficient; no lattice cell certified";
    }
    return res;
}

CertifyResult certify_f_positive(const CertifyRequest& req)
{
    if (req.eps.sign() <= 0 || req.eps >= req.xmax || req.xmax > Rational(1, 2))
        throw std::invalid_argument("certify: need 0 < eps < xmax <= 1/2");
    if (req.q) return certify_with(req.eps, QuadChar::make(*req.q), req.xmax);

    std::optional<CertifyResult> best;
    std::vector<std::uint64_t> tried;
    std::uint64_t N = 1;
    std::uint64_t start = 11;
    while (start <= req.auto_q_ceiling) {
        const ImitatorSearch found = find_imitator(N, ImitatorOptions{start, req.auto_q_ceiling, req.jobs});
        if (!found.q) break;
        CertifyResult res = certify_with(req.eps, QuadChar::make(*found.q), req.xmax);
        tried.push_back(*found.q);
        N = res.agreement_N + 1;
        const bool better = !best || (res.certificate && (!best->certificate ||
                                                           res.certificate->lower() < best->certificate->lower()));
        if (res.complete || better) best = std::move(res);
        if (best->complete) break;
        start = *found.q + 1;
    }
    if (!best) {
        CertifyResult none;
        none.message = "no imitator found below " + std::to_string(req.auto_q_ceiling);
        return none;
    }
    best->tried = std::move(tried);
    if (!best->complete) best->message += " (auto search to q <= " + std::to_string(req.auto_q_ceiling) + ")";
    return *best;
}

TestPQSummary scan_test_pq(const TestPQOptions& opts, const std::function<void(const TestPQ&)>& sink)
{
    const bool strict = opts.congruence == PQCongruence::mod8_3;
    const ResidueFilter filter = strict ? ResidueFilter{3, 8} : ResidueFilter{3, 4};
    TestPQSummary sum;
    const std::uint64_t q_lo = std::max<std::uint64_t>(opts.q_min, 5);
    if (q_lo > opts.q_max) return sum;
    PrimeRange qs(q_lo, opts.q_max, filter);
    while (auto q = qs.next()) {
        const QuadChar chi = strict ? QuadChar::make(*q) : QuadChar::make_odd(*q);
        const ChiTable table(chi);
        const std::uint64_t p_lo = std::max<std::uint64_t>(opts.p_min, 3);
        const std::uint64_t p_hi = std::min(opts.p_max, *q - 1);
        if (p_lo > p_hi) continue;
        PrimeRange ps(p_lo, p_hi, filter);
        while (auto p = ps.next()) {
            std::uint64_t a_hi = (*p - 1) / 2;
            if (opts.a_max) a_hi = std::min(a_hi, *opts.a_max);
            for (std::uint64_t a = 1; a <= a_hi; ++a) {
                const TestPQ t = fq_theorem5(a, *p, table);
                ++sum.count;
                if (!t.positive) ++sum.nonpositive;
                if (t.q_divides_test) ++sum.q_divisible;
                sink(t);
            }
        }
    }
    return sum;
}

} // namespace qchar
