#include "framesmith/sqrt_profile.hpp"

#include <cstdlib>
#include <stdexcept>

#include "framesmith/errors.hpp"

namespace framesmith {

SqrtProfile::SqrtProfile(PiecewiseLinear square, IntervalSet domain)
    : square_(std::move(square)), domain_(std::move(domain)), effective_(square_.restricted(domain_)) {
    if (auto w = effective_.negative_witness())
        throw ValidationError("profile square nonnegative", "square < 0 at xi = " + w->str());
}

SqrtProfile SqrtProfile::dilated(long a) const {
    if (a == 0) throw std::domain_error("SqrtProfile::dilated by zero");
    const Rational ar(a);
    return SqrtProfile(square_.compose_scale(Rational(1) / ar).scaled(Rational(1) / ar.abs()), domain_.dilate(ar));
}

SqrtProfile SqrtProfile::scaled(const Rational& c) const {
    if (c.sign() <= 0) throw std::domain_error("SqrtProfile::scaled requires c > 0");
    return SqrtProfile(square_.scaled(c * c), domain_);
}

Enclosure profile_product(const SqrtProfile& p, const Rational& x, const SqrtProfile& q, const Rational& y, int bits) {
    const Rational a = p.squared_at(x);
    if (a.is_zero()) return Enclosure(Rational(0));
    const Rational b = q.squared_at(y);
    if (b.is_zero()) return Enclosure(Rational(0));
    return sqrt_enclosure(a * b, bits);
}

}  // namespace framesmith
