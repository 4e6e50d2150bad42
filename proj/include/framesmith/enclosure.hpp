#pragma once

#include <string>

#include "framesmith/rational.hpp"

namespace framesmith {

/// Default working precision for enclosures: widths of order 2^-64.
inline constexpr int kDefaultPrecisionBits = 64;

/// Reads FRAMESMITH_PRECISION (bits) or returns kDefaultPrecisionBits.
int precision_from_environment();

/// Closed interval [lo, hi] with exact rational endpoints that is known to
/// contain a real number. Arithmetic is exact on the endpoints, so every
/// result is a valid enclosure; `rounded` widens outward onto a dyadic grid
/// to keep endpoint sizes bounded.
class Enclosure {
public:
    Enclosure() = default;
    Enclosure(const Rational& exact) : lo_(exact), hi_(exact) {}  // NOLINT(google-explicit-constructor)
    Enclosure(Rational lo, Rational hi);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    bool is_exact() const { return lo_ == hi_; }
    Rational width() const { return hi_ - lo_; }
    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return contains(Rational(0)); }

    /// Upper bound of |x| over the enclosure.
    Rational magnitude() const { return max(lo_.abs(), hi_.abs()); }
    /// Lower bound of |x| over the enclosure.
    Rational mignitude() const;
    double mid_double() const { return ((lo_ + hi_) / Rational(2)).to_double(); }

    /// Outward rounding to multiples of 2^-bits.
    Enclosure rounded(int bits) const;

    Enclosure operator-() const { return {-hi_, -lo_}; }
    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo_ + b.lo_, a.hi_ + b.hi_}; }
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo_ - b.hi_, a.hi_ - b.lo_}; }
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
    Enclosure& operator+=(const Enclosure& o) { return *this = *this + o; }

    /// Tight enclosure of x^2 (nonnegative even when the input straddles 0).
    Enclosure square() const;

    /// "[lo, hi]" as decimals with 20 significant digits, or the exact rational.
    std::string str() const;

private:
    Rational lo_;
    Rational hi_;
};

/// Complex number enclosed componentwise.
struct ComplexEnclosure {
    Enclosure re;
    Enclosure im;

    ComplexEnclosure conj() const { return {re, -im}; }
    Enclosure norm_squared() const { return re.square() + im.square(); }
    ComplexEnclosure rounded(int bits) const { return {re.rounded(bits), im.rounded(bits)}; }

    friend ComplexEnclosure operator+(const ComplexEnclosure& a, const ComplexEnclosure& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexEnclosure operator-(const ComplexEnclosure& a, const ComplexEnclosure& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexEnclosure operator*(const ComplexEnclosure& a, const ComplexEnclosure& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    ComplexEnclosure& operator+=(const ComplexEnclosure& o) { return *this = *this + o; }
};

/// Enclosure of sqrt(r) for r >= 0 with width <= 2^-bits; exact when r is
/// the square of a rational.
Enclosure sqrt_enclosure(const Rational& r, int bits);

/// Enclosure of pi with width <= 2^-bits.
Enclosure pi_enclosure(int bits);

/// Enclosures of cos(pi*x) and sin(pi*x) for rational x; exact when x is a
/// multiple of 1/2.
struct CosSin {
    Enclosure cos;
    Enclosure sin;
};
CosSin cos_sin_pi(const Rational& x, int bits);

/// e^{-i pi x}.
ComplexEnclosure unit_phase(const Rational& x, int bits);

}  // namespace framesmith
