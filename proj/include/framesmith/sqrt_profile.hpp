#pragma once

#include "framesmith/enclosure.hpp"
#include "framesmith/interval_set.hpp"
#include "framesmith/piecewise_linear.hpp"

namespace framesmith {

/// Fourier-domain profile xi -> sqrt(square(xi)) * chi_domain(xi).
///
/// The square root is never expanded: squared values are exact rationals and
/// point values are exact square roots, enclosed on demand.
class SqrtProfile {
public:
    SqrtProfile() = default;
    /// Throws ValidationError if `square` is negative somewhere on `domain`.
    SqrtProfile(PiecewiseLinear square, IntervalSet domain);

    const PiecewiseLinear& square() const { return square_; }
    const IntervalSet& domain() const { return domain_; }

    /// |profile|^2 = square * chi_domain, as a piecewise-linear function.
    const PiecewiseLinear& effective_square() const { return effective_; }
    /// |profile(x)|^2, exact.
    Rational squared_at(const Rational& x) const { return effective_.value(x); }
    Enclosure value_at(const Rational& x, int bits) const { return sqrt_enclosure(squared_at(x), bits); }

    IntervalSet support() const { return effective_.support(); }
    bool is_zero() const { return effective_.is_zero(); }

    /// Fourier side of D_A: xi -> |a|^{-1/2} profile(xi / a).
    SqrtProfile dilated(long a) const;
    /// c * profile for c > 0; the square scales by c^2.
    SqrtProfile scaled(const Rational& c) const;

    friend bool operator==(const SqrtProfile& x, const SqrtProfile& y) {
        return x.square_ == y.square_ && x.domain_ == y.domain_;
    }

private:
    PiecewiseLinear square_;
    IntervalSet domain_;
    PiecewiseLinear effective_;
};

/// sqrt(|p(x)|^2 |q(y)|^2): the product p(x) * q(y) of two real nonnegative
/// profiles, exact whenever the product of the squares is a rational square.
Enclosure profile_product(const SqrtProfile& p, const Rational& x, const SqrtProfile& q, const Rational& y, int bits);

}  // namespace framesmith
