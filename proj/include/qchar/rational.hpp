#pragma once

#include "qchar/wide.hpp"

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace qchar {

using BigInt = mpz_class;

BigInt to_bigint(wide_int v);
wide_int to_wide(const BigInt& v);

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long long v) : value_(static_cast<long>(v)) {}
    Rational(long long num, long long den);
    Rational(const BigInt& num, const BigInt& den);

    static Rational from_wide(wide_int num, wide_int den = 1);

    /// Accepts "a/b" or a bare integer "a". Decimal points are rejected.
    static Rational parse(std::string_view text);
    /// Accepts "a/b", an integer, or a finite decimal such as "0.001",
    /// converted exactly (1/1000).
    static Rational parse_decimal(std::string_view text);

    BigInt num() const { return value_.get_num(); }
    BigInt den() const { return value_.get_den(); }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    BigInt floor() const;
    BigInt ceil() const;
    double to_double() const { return value_.get_d(); }

    /// Always "num/den", including for integers ("5/1").
    std::string to_string() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

    const mpq_class& raw() const { return value_; }

private:
    explicit Rational(mpq_class v);
    mpq_class value_{0};
};

/// A rational strictly below pi, used wherever pi enters an exact inequality.
Rational pi_lower_bound();

} // namespace qchar
