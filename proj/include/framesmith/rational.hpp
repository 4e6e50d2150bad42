#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace framesmith {

/// Exact rational number backed by GMP.
///
/// Frequencies are stored in units of pi: the rational q denotes the
/// frequency q*pi, so translation by 2k*pi is `+ 2k` and the dual dilation
/// A* = a is integer multiplication.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }
    explicit Rational(const mpz_class& value) : value_(value) {}

    /// Parses "p", "p/q", "-p/q" or a finite decimal such as "0.25".
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return value_; }
    mpz_class num() const { return value_.get_num(); }
    mpz_class den() const { return value_.get_den(); }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    Rational abs() const { return Rational(::abs(value_)); }
    /// Largest integer <= value.
    mpz_class floor() const;
    /// Smallest integer >= value.
    mpz_class ceil() const;
    double to_double() const { return value_.get_d(); }

    /// Canonical "num/den" form; integers print without a denominator.
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class value_;
};

/// A frequency xi = q*pi, stored as the rational q.
using PiRational = Rational;

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// a^e for an integer exponent (negative exponents invert).
Rational pow(const Rational& base, long exponent);

/// Midpoint (a + b) / 2.
Rational midpoint(const Rational& a, const Rational& b);

}  // namespace framesmith
