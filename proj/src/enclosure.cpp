#include "framesmith/enclosure.hpp"

#include <cstdlib>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace framesmith {

int precision_from_environment() {
    if (const char* env = std::getenv("FRAMESMITH_PRECISION")) {
        char* end = nullptr;
        const long bits = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && bits >= 1 && bits <= 4096) return static_cast<int>(bits);
    }
    return kDefaultPrecisionBits;
}

Enclosure::Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::logic_error("Enclosure: lo > hi");
}

Rational Enclosure::mignitude() const {
    if (contains_zero()) return Rational(0);
    return min(lo_.abs(), hi_.abs());
}

Enclosure Enclosure::rounded(int bits) const {
    if (is_exact() && lo_.is_integer()) return *this;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    const mpq_class q(scale);
    const Rational s(q);
    const Rational lo(mpq_class(Rational(lo_ * s).floor(), scale));
    const Rational hi(mpq_class(Rational(hi_ * s).ceil(), scale));
    // Never loosen an enclosure whose endpoints are already simpler.
    return {lo_.den() <= scale ? lo_ : lo, hi_.den() <= scale ? hi_ : hi};
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    if (a.is_exact() && b.is_exact()) return Enclosure(a.lo_ * b.lo_);
    const Rational p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
}

Enclosure Enclosure::square() const {
    const Rational a = lo_ * lo_, b = hi_ * hi_;
    if (contains_zero()) return {Rational(0), max(a, b)};
    return {min(a, b), max(a, b)};
}

std::string Enclosure::str() const {
    if (is_exact()) return lo_.str();
    std::ostringstream os;
    os << std::setprecision(20) << "[" << lo_.to_double() << ", " << hi_.to_double() << "]";
    return os.str();
}

Enclosure sqrt_enclosure(const Rational& r, int bits) {
    if (r.sign() < 0) throw std::domain_error("sqrt_enclosure of a negative number");
    if (r.is_zero()) return Enclosure(Rational(0));
    const mpz_class p = r.num(), q = r.den();
    if (mpz_perfect_square_p(p.get_mpz_t()) && mpz_perfect_square_p(q.get_mpz_t())) {
        mpz_class sp, sq;
        mpz_sqrt(sp.get_mpz_t(), p.get_mpz_t());
        mpz_sqrt(sq.get_mpz_t(), q.get_mpz_t());
        return Enclosure(Rational(mpq_class(sp, sq)));
    }
    // sqrt(p/q) = sqrt(p*q)/q; bracket sqrt(p*q*4^bits) between consecutive integers.
    mpz_class n = p * q;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), 2 * static_cast<unsigned long>(bits));
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    mpz_class den = q;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(bits));
    return {Rational(mpq_class(s, den)), Rational(mpq_class(s + 1, den))};
}

namespace {

// Partial sums of an alternating series with terms decreasing in modulus
// bracket the limit; the first omitted term bounds the error.
Enclosure alternating_sum(Rational term, const Rational& ratio_num, int bits,
                          long (*denominator)(long)) {
    const Rational eps = pow(Rational(2), -bits);
    Rational sum;
    for (long n = 0;; ++n) {
        sum += term;
        term = -term * ratio_num / Rational(denominator(n));
        if (term.abs() < eps) break;
    }
    const Rational r = term.abs();
    return {sum - r, sum + r};
}

Enclosure sin_series(const Rational& theta, int bits) {
    if (theta.is_zero()) return Enclosure(Rational(0));
    return alternating_sum(theta, theta * theta, bits, [](long n) { return (2 * n + 2) * (2 * n + 3); });
}

Enclosure cos_series(const Rational& theta, int bits) {
    if (theta.is_zero()) return Enclosure(Rational(1));
    return alternating_sum(Rational(1), theta * theta, bits, [](long n) { return (2 * n + 1) * (2 * n + 2); });
}

// arctan(1/m) as an alternating series.
Enclosure arctan_inverse(long m, int bits) {
    const Rational inv(1, m);
    const Rational eps = pow(Rational(2), -bits);
    Rational sum;
    Rational power = inv;
    for (long n = 0;; ++n) {
        const Rational term = power / Rational(2 * n + 1);
        if (term < eps) return {sum - term, sum + term};
        sum += (n % 2 == 0) ? term : -term;
        power *= inv * inv;
    }
}

}  // namespace

Enclosure pi_enclosure(int bits) {
    static std::mutex mutex;
    static std::map<int, Enclosure> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(bits); it != cache.end()) return it->second;
    const int w = bits + 8;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    const Enclosure a = arctan_inverse(5, w), b = arctan_inverse(239, w);
    const Enclosure pi = (Enclosure(Rational(16)) * a - Enclosure(Rational(4)) * b).rounded(w);
    cache.emplace(bits, pi);
    return pi;
}

CosSin cos_sin_pi(const Rational& x, int bits) {
    // Reduce x into [0, 2).
    Rational y = x - Rational(2) * Rational(mpz_class(Rational(x / Rational(2)).floor()));
    bool negate_both = false;
    if (y >= Rational(1)) {
        y -= Rational(1);
        negate_both = true;
    }
    // y in [0, 1): cos(pi y) = -cos(pi (1 - y)), sin(pi y) = sin(pi (1 - y)).
    bool negate_cos = false;
    if (y > Rational(1, 2)) {
        y = Rational(1) - y;
        negate_cos = true;
    }
    // y in [0, 1/2]; for y > 1/4 swap through the complementary angle.
    bool swap = false;
    if (y > Rational(1, 4)) {
        y = Rational(1, 2) - y;
        swap = true;
    }

    CosSin base;
    if (y.is_zero()) {
        base = {Enclosure(Rational(1)), Enclosure(Rational(0))};
    } else {
        const int w = bits + 8;
        const Enclosure pi = pi_enclosure(w);
        const Rational tlo = pi.lo() * y, thi = pi.hi() * y;
        const Enclosure s_lo = sin_series(tlo, w), s_hi = sin_series(thi, w);
        const Enclosure c_lo = cos_series(thi, w), c_hi = cos_series(tlo, w);
        base = {Enclosure(c_lo.lo(), c_hi.hi()).rounded(w), Enclosure(s_lo.lo(), s_hi.hi()).rounded(w)};
    }
    CosSin out = swap ? CosSin{base.sin, base.cos} : base;
    if (negate_cos) out.cos = -out.cos;
    if (negate_both) {
        out.cos = -out.cos;
        out.sin = -out.sin;
    }
    return out;
}

ComplexEnclosure unit_phase(const Rational& x, int bits) {
    const CosSin cs = cos_sin_pi(x, bits);
    return {cs.cos, -cs.sin};
}

}  // namespace framesmith
