#include "qchar/cli.hpp"

#include "qchar/certificate.hpp"
#include "qchar/charsum.hpp"
#include "qchar/fq.hpp"
#include "qchar/liouville.hpp"
#include "qchar/ntcore.hpp"
#include "qchar/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <variant>

namespace qchar {

namespace {

using nlohmann::json;

inline constexpr const char* kReportSchema = "report.v1";

// Raised for bad user input found after parsing; maps to exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Maps to exit 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double v)
{
    if (v == 0) v = 0; // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Cell {
    std::variant<std::int64_t, std::uint64_t, double, std::string, bool> v;

    Cell(std::int64_t x) : v(x) {}
    Cell(std::uint64_t x) : v(x) {}
    Cell(int x) : v(static_cast<std::int64_t>(x)) {}
    Cell(double x) : v(x) {}
    Cell(bool x) : v(x) {}
    Cell(std::string x) : v(std::move(x)) {}
    Cell(const char* x) : v(std::string(x)) {}
    Cell(const Rational& r) : v(r.to_string()) {}

    static Cell wide(wide_int w)
    {
        if (w >= INT64_MIN && w <= INT64_MAX) return Cell(static_cast<std::int64_t>(w));
        return Cell(to_string(w));
    }

    std::string csv() const
    {
        return std::visit(
            [](const auto& x) -> std::string {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, double>) return format_double(x);
                else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
                else if constexpr (std::is_same_v<T, std::string>) return x;
                else return std::to_string(x);
            },
            v);
    }

    json to_json() const
    {
        return std::visit(
            [](const auto& x) -> json {
                using T = std::decay_t<decltype(x)>;
                // Floats go through the fixed 12-digit rendering so JSON and
                // CSV carry the same value.
                if constexpr (std::is_same_v<T, double>) return json::parse(format_double(x));
                else return json(x);
            },
            v);
    }
};

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

enum class Format { csv, json };

void emit(const Table& t, Format fmt, std::ostream& out)
{
    if (fmt == Format::csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].csv();
            out << '\n';
        }
        return;
    }
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (const auto& c : row) r.push_back(c.to_json());
        rows.push_back(std::move(r));
    }
    out << json{{"schema", kReportSchema}, {"command", t.command}, {"columns", t.columns}, {"rows", rows}}.dump(2)
        << '\n';
}

std::string join(const std::vector<std::string>& parts)
{
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + parts[i];
    return s;
}

Rational parse_exact(const std::string& text, const char* what)
{
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": expected an integer or a/b, got '" + text + "'");
    }
}

Rational parse_grid(const std::string& text, const char* what)
{
    try {
        return Rational::parse_decimal(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": expected a number or a/b, got '" + text + "'");
    }
}

QuadChar make_char(std::uint64_t q, bool odd = false)
{
    try {
        return odd ? QuadChar::make_odd(q) : QuadChar::make(q);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

struct Shared {
    std::string format = "csv";
    Format fmt() const { return format == "json" ? Format::json : Format::csv; }
};

void add_format(CLI::App* sub, Shared& shared)
{
    sub->add_option("--format", shared.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

class Timer {
public:
    Timer(std::ostream& err, std::string label) : err_(err), label_(std::move(label)) {}
    ~Timer()
    {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0_;
        err_ << label_ << ": " << format_double(dt.count()) << " s\n";
    }

private:
    std::ostream& err_;
    std::string label_;
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact quadratic-character sums, f_q(x) and positivity certificates for f(x)", "qchar"};
    app.require_subcommand(1);
    Shared shared;
    std::function<int()> action;

    // verify
    std::optional<std::uint64_t> v_qmin;
    std::uint64_t v_qmax = 0;
    unsigned v_jobs = 1;
    std::string v_checkpoint;
    auto* verify = app.add_subcommand("verify", "Check f_q >= 0 on [0,1/2] for every prime q = 3 mod 8 in a range");
    verify->add_option("--q-min", v_qmin, "Least modulus (>= 5)");
    verify->add_option("--q-max", v_qmax, "Largest modulus")->required();
    verify->add_option("--jobs", v_jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    verify->add_option("--checkpoint", v_checkpoint, "JSON-lines checkpoint file (resumed if present)");
    add_format(verify, shared);
    verify->callback([&] {
        action = [&]() -> int {
            ScanOptions opts;
            if (v_qmin) {
                if (*v_qmin < 5) throw UsageError("--q-min must be at least 5");
                if (*v_qmin > v_qmax) throw UsageError("--q-min exceeds --q-max");
                opts.q_min = *v_qmin;
            } else {
                opts.q_min = std::min<std::uint64_t>(5, v_qmax);
            }
            opts.q_max = v_qmax;
            opts.jobs = v_jobs;
            if (!v_checkpoint.empty()) opts.checkpoint = v_checkpoint;
            ScanReport rep;
            try {
                rep = scan_conjecture1(opts);
            } catch (const CheckpointError& e) {
                throw IoError(e.what());
            }
            Table t{"verify", {"campaign", "q_min", "q_max", "count", "min_W", "argmin_q", "last_q", "violations"}, {}};
            std::vector<std::string> bad;
            for (const auto& v : rep.violations) bad.push_back(std::to_string(v.q));
            t.add({rep.campaign, rep.q_min, rep.q_max, rep.count, rep.min_W ? Cell::wide(*rep.min_W) : Cell(""),
                   rep.argmin_q, rep.last_q, join(bad)});
            emit(t, shared.fmt(), out);
            err << "verify: " << rep.count << " moduli in " << format_double(rep.elapsed.count()) << " s\n";
            return rep.all_hold() ? kExitOk : kExitMath;
        };
    });

    // certify
    std::string c_eps;
    std::optional<std::uint64_t> c_q;
    bool c_auto = false;
    std::string c_xmax = "1/4";
    std::string c_out = "certificate.json";
    std::uint64_t c_ceiling = 20'000'000;
    unsigned c_jobs = 1;
    auto* certify = app.add_subcommand("certify", "Certify f >= 0 on [eps, xmax]");
    certify->add_option("--eps", c_eps, "Left end a/b")->required();
    auto* q_opt = certify->add_option("--q", c_q, "Modulus q = 3 mod 8");
    auto* auto_opt = certify->add_flag("--auto", c_auto, "Search imitators automatically");
    q_opt->excludes(auto_opt);
    certify->add_option("--xmax", c_xmax, "Right end a/b (<= 1/2)");
    certify->add_option("--out", c_out, "Certificate file");
    certify->add_option("--auto-ceiling", c_ceiling, "Largest modulus tried by --auto");
    certify->add_option("--jobs", c_jobs, "Worker threads for the imitator search")->check(CLI::Range(1u, 1024u));
    add_format(certify, shared);
    certify->callback([&] {
        action = [&]() -> int {
            if (!c_q && !c_auto) throw UsageError("certify needs --q or --auto");
            CertifyRequest req;
            req.eps = parse_exact(c_eps, "--eps");
            req.xmax = parse_exact(c_xmax, "--xmax");
            if (req.eps.sign() <= 0 || req.eps >= req.xmax || req.xmax > Rational(1, 2))
                throw UsageError("need 0 < eps < xmax <= 1/2");
            if (c_q) {
                (void)make_char(*c_q);
                req.q = c_q;
            }
            req.auto_q_ceiling = c_ceiling;
            req.jobs = c_jobs;
            CertifyResult res;
            {
                Timer timer(err, "certify");
                res = certify_f_positive(req);
            }
            if (res.certificate) {
                try {
                    write_certificate(c_out, *res.certificate);
                } catch (const std::exception& e) {
                    throw IoError(e.what());
                }
            }
            Table t{"certify", {"q", "agreement_N", "error_bound", "a0", "lower", "upper", "complete", "best_a0", "certificate"}, {}};
            const auto& cert = res.certificate;
            t.add({res.q, res.agreement_N,
                   res.agreement_N ? Cell(Rational(2, static_cast<long long>(res.agreement_N))) : Cell(""),
                   cert ? Cell(cert->a0) : Cell(""), cert ? Cell(cert->lower()) : Cell(""),
                   cert ? Cell(cert->xmax) : Cell(""), res.complete, res.best_a0 ? Cell(*res.best_a0) : Cell(""),
                   cert ? c_out : std::string()});
            emit(t, shared.fmt(), out);
            err << "certify: " << res.message << '\n';
            return res.complete ? kExitOk : kExitMath;
        };
    });

    // plot
    std::string p_mode;
    std::optional<std::uint64_t> p_q;
    std::string p_xmax = "1/2";
    std::string p_step = "1/1000";
    std::uint64_t p_terms = 1000;
    auto* plot = app.add_subcommand("plot", "Tabulate f, f_q or f - f_q on a grid");
    plot->add_option("mode", p_mode, "f | fq | diff")->required()->check(CLI::IsMember({"f", "fq", "diff"}));
    plot->add_option("--q", p_q, "Modulus for fq and diff");
    plot->add_option("--xmax", p_xmax, "Grid end");
    plot->add_option("--step", p_step, "Grid step");
    plot->add_option("--terms", p_terms, "Series terms for f")->check(CLI::PositiveNumber);
    add_format(plot, shared);
    plot->callback([&] {
        action = [&]() -> int {
            const Rational xmax = parse_grid(p_xmax, "--xmax");
            const Rational step = parse_grid(p_step, "--step");
            if (step.sign() <= 0) throw UsageError("--step must be positive");
            if (xmax.sign() < 0) throw UsageError("--xmax must be non-negative");
            if (p_mode != "f" && !p_q) throw UsageError("plot " + p_mode + " needs --q");
            std::optional<PiecewiseLinearFq> fq;
            if (p_q) fq.emplace(make_char(*p_q, true));
            const double tail = 1.0 / static_cast<double>(p_terms);
            Table t{"plot " + p_mode, {"x", "value", "error_bound"}, {}};
            const BigInt count = (xmax / step).floor();
            for (BigInt k = 0; k <= count; ++k) {
                const Rational x = Rational(k, 1) * step;
                const double xd = x.to_double();
                if (p_mode == "f") {
                    t.add({xd, f_series(xd, p_terms).value, tail});
                } else if (p_mode == "fq") {
                    t.add({xd, (*fq)(x).value, 0.0});
                } else {
                    t.add({xd, f_series(xd, p_terms).value - (*fq)(x).value, tail});
                }
            }
            emit(t, shared.fmt(), out);
            return kExitOk;
        };
    });

    // class-number
    std::vector<std::uint64_t> cn_q;
    auto* cn = app.add_subcommand("class-number", "h(-q) from exact character sums");
    cn->add_option("q", cn_q, "Moduli")->required();
    add_format(cn, shared);
    cn->callback([&] {
        action = [&]() -> int {
            Table t{"class-number", {"q", "h"}, {}};
            for (auto q : cn_q) t.add({q, class_number(make_char(q, true)).h});
            emit(t, shared.fmt(), out);
            return kExitOk;
        };
    });

    // agreement
    std::uint64_t ag_q = 0;
    auto* ag = app.add_subcommand("agreement", "Largest N with chi_q = lambda on 1..N");
    ag->add_option("--q", ag_q, "Modulus")->required();
    add_format(ag, shared);
    ag->callback([&] {
        action = [&]() -> int {
            const auto rec = agreement_length(make_char(ag_q));
            Table t{"agreement", {"q", "N", "first_mismatch"}, {}};
            t.add({rec.q, rec.N, rec.first_mismatch});
            emit(t, shared.fmt(), out);
            return kExitOk;
        };
    });

    // imitator
    std::uint64_t im_n = 0;
    ImitatorOptions im_opts;
    im_opts.ceiling = std::uint64_t{1} << 40;
    auto* im = app.add_subcommand("imitator", "Least prime q = 3 mod 8 whose character agrees with lambda on 1..N");
    im->add_option("--n", im_n, "Agreement length")->required()->check(CLI::PositiveNumber);
    im->add_option("--start", im_opts.start, "First candidate");
    im->add_option("--ceiling", im_opts.ceiling, "Search limit");
    im->add_option("--jobs", im_opts.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    add_format(im, shared);
    im->callback([&] {
        action = [&]() -> int {
            ImitatorSearch s;
            {
                Timer timer(err, "imitator");
                s = find_imitator(im_n, im_opts);
            }
            Table t{"imitator", {"N", "q", "agreement_N", "searched_to"}, {}};
            if (s.q) {
                t.add({im_n, *s.q, agreement_length(QuadChar::make(*s.q)).N, s.searched_to});
            } else {
                t.add({im_n, "", "", s.searched_to});
            }
            emit(t, shared.fmt(), out);
            return s.q ? kExitOk : kExitMath;
        };
    });

    // tq
    std::uint64_t tq_max = 0;
    auto* tq = app.add_subcommand("tq", "T(q) = sum_{n <= q/4} n chi_q(n) for primes q = 7 mod 8");
    tq->add_option("--q-max", tq_max, "Largest modulus")->required();
    add_format(tq, shared);
    tq->callback([&] {
        action = [&]() -> int {
            Table t{"tq", {"T", "q"}, {}};
            for (auto q : primes_in_range(7, tq_max, ResidueFilter{7, 8})) t.add({Cell::wide(t_stat(q)), q});
            emit(t, shared.fmt(), out);
            return kExitOk;
        };
    });

    // testpq
    TestPQOptions tp;
    bool tp_mod4 = false;
    auto* testpq = app.add_subcommand("testpq", "Signs and q-divisibility of test_a(p, q)");
    testpq->add_option("--p-min", tp.p_min, "Least p");
    testpq->add_option("--p-max", tp.p_max, "Largest p")->required();
    testpq->add_option("--q-min", tp.q_min, "Least q");
    testpq->add_option("--q-max", tp.q_max, "Largest q")->required();
    testpq->add_option("--a-max", tp.a_max, "Largest a");
    testpq->add_flag("--mod4", tp_mod4, "Allow p, q = 3 mod 4 instead of 3 mod 8");
    add_format(testpq, shared);
    testpq->callback([&] {
        action = [&]() -> int {
            tp.congruence = tp_mod4 ? PQCongruence::mod4_3 : PQCongruence::mod8_3;
            Table t{"testpq", {"a", "p", "q", "test", "f_value", "positive", "q_divides_test"}, {}};
            const auto sum = scan_test_pq(tp, [&](const TestPQ& r) {
                t.add({r.a, r.p, r.q, Cell::wide(r.test), r.f_value, r.positive, r.q_divides_test});
            });
            emit(t, shared.fmt(), out);
            err << "testpq: " << sum.count << " values, " << sum.nonpositive << " non-positive, " << sum.q_divisible
                << " divisible by q\n";
            return sum.nonpositive == 0 ? kExitOk : kExitMath;
        };
    });

    // fq-eval
    std::uint64_t fe_q = 0;
    std::vector<std::string> fe_x;
    auto* fe = app.add_subcommand("fq-eval", "Exact f_q(x) at rational points");
    fe->add_option("--q", fe_q, "Modulus")->required();
    fe->add_option("--x", fe_x, "Points a/b")->required();
    add_format(fe, shared);
    fe->callback([&] {
        action = [&]() -> int {
            const QuadChar chi = make_char(fe_q, true);
            Table t{"fq-eval", {"q", "x", "coefficient", "value"}, {}};
            for (const auto& s : fe_x) {
                const Rational x = parse_exact(s, "--x");
                const FqValue v = fq_exact(chi, x);
                t.add({fe_q, x, v.coefficient, v.value});
            }
            emit(t, shared.fmt(), out);
            return kExitOk;
        };
    });

    // fq-zeros
    std::uint64_t fz_q = 0;
    auto* fz = app.add_subcommand("fq-zeros", "Minimum and zeros of f_q on (0, 1/2)");
    fz->add_option("--q", fz_q, "Modulus")->required();
    add_format(fz, shared);
    fz->callback([&] {
        action = [&]() -> int {
            const FqMinZeros mz = fq_min_and_zeros(make_char(fz_q, true));
            std::vector<std::string> argmins;
            std::vector<std::string> zeros;
            std::vector<std::string> intervals;
            for (auto a : mz.argmins) argmins.push_back(std::to_string(a));
            for (const auto& z : mz.zeros) zeros.push_back(z.to_string());
            for (const auto& [lo, hi] : mz.zero_intervals) intervals.push_back(lo.to_string() + ":" + hi.to_string());
            Table t{"fq-zeros", {"q", "min_W", "argmins", "zeros", "zero_intervals", "nonnegative"}, {}};
            t.add({fz_q, Cell::wide(mz.min_W), join(argmins), join(zeros), join(intervals), mz.nonnegative});
            emit(t, shared.fmt(), out);
            return kExitOk;
        };
    });

    // identity
    std::uint64_t id_q = 0;
    bool id_odd = false;
    auto* id = app.add_subcommand("identity", "Check K(a) = 4 q W(a) for every admissible a");
    id->add_option("--q", id_q, "Modulus")->required();
    id->add_flag("--odd", id_odd, "Accept any squarefree q = 3 mod 4");
    add_format(id, shared);
    id->callback([&] {
        action = [&]() -> int {
            const QuadChar chi = make_char(id_q, id_odd);
            const IdentityScan s = identity_scan(chi);
            std::vector<std::string> bad;
            for (auto a : s.failures) bad.push_back(std::to_string(a));
            Table t{"identity", {"q", "prime", "checked", "failures"}, {}};
            t.add({id_q, chi.prime_modulus(), s.checked, join(bad)});
            emit(t, shared.fmt(), out);
            return s.failures.empty() ? kExitOk : kExitMath;
        };
    });

    // check-cert
    std::string cc_file;
    auto* cc = app.add_subcommand("check-cert", "Independently re-check a certificate file");
    cc->add_option("file", cc_file, "Certificate JSON")->required();
    add_format(cc, shared);
    cc->callback([&] {
        action = [&]() -> int {
            std::ifstream in(cc_file);
            if (!in) throw IoError("cannot open " + cc_file);
            const json j = json::parse(in, nullptr, false);
            CheckResult r = j.is_discarded() ? CheckResult{false, "not valid JSON"} : check_certificate(j);
            Table t{"check-cert", {"file", "ok", "reason"}, {}};
            t.add({cc_file, r.ok, r.reason});
            emit(t, shared.fmt(), out);
            return r.ok ? kExitOk : kExitMath;
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return kExitMath;
    }
}

} // namespace qchar
