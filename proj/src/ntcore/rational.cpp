#include "qchar/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace qchar {

std::string to_string(wide_int v)
{
    if (v == 0) return "0";
    const bool neg = v < 0;
    // Work on the unsigned magnitude so INT128_MIN is handled.
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                : static_cast<unsigned __int128>(v);
    std::string out;
    while (mag != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
        mag /= 10;
    }
    if (neg) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

std::int64_t to_int64(wide_int v)
{
    if (v > INT64_MAX || v < INT64_MIN) throw_overflow("narrowing to int64");
    return static_cast<std::int64_t>(v);
}

BigInt to_bigint(wide_int v)
{
    return BigInt(to_string(v));
}

wide_int to_wide(const BigInt& v)
{
    static const BigInt lo = to_bigint(static_cast<wide_int>(-(static_cast<unsigned __int128>(1) << 127)));
    static const BigInt hi = to_bigint(static_cast<wide_int>((static_cast<unsigned __int128>(1) << 127) - 1));
    if (v < lo || v > hi) throw_overflow("narrowing to int128");
    BigInt mag = abs(v);
    unsigned __int128 acc = 0;
    const std::string digits = mag.get_str(16);
    for (char c : digits) {
        const int d = std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : c - 'a' + 10;
        acc = (acc << 4) | static_cast<unsigned>(d);
    }
    return sgn(v) < 0 ? -static_cast<wide_int>(acc) : static_cast<wide_int>(acc);
}

Rational::Rational(mpq_class v) : value_(std::move(v))
{
    value_.canonicalize();
}

Rational::Rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational::Rational(long long num, long long den)
    : Rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)))
{
}

Rational Rational::from_wide(wide_int num, wide_int den)
{
    return Rational(to_bigint(num), to_bigint(den));
}

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

BigInt parse_integer(std::string_view s)
{
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    BigInt v(std::string(body), 10);
    return neg ? BigInt(-v) : v;
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text), 1);
    const std::string_view den = text.substr(slash + 1);
    if (!all_digits(den)) throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(text.substr(0, slash)), BigInt(std::string(den), 10));
}

Rational Rational::parse_decimal(std::string_view text)
{
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return parse(text);
    std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (!all_digits(frac)) throw std::invalid_argument("bad decimal '" + std::string(text) + "'");
    bool neg = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
        neg = whole.front() == '-';
        whole.remove_prefix(1);
    }
    if (!whole.empty() && !all_digits(whole)) throw std::invalid_argument("bad decimal '" + std::string(text) + "'");
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    Rational r(num, scale);
    return neg ? -r : r;
}

BigInt Rational::floor() const
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
}

BigInt Rational::ceil() const
{
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
}

std::string Rational::to_string() const
{
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::operator-() const
{
    return Rational(mpq_class(-value_));
}

Rational& Rational::operator+=(const Rational& o)
{
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    value_ -= o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
}

Rational pi_lower_bound()
{
    // 3.141592653589793 < pi
    return Rational(BigInt("3141592653589793"), BigInt("1000000000000000"));
}

} // namespace qchar
