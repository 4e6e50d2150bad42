#include "framesmith/grid.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace framesmith {

namespace {

constexpr long kGridDenominator = 1000003;  // prime: avoids dyadic breakpoints

Rational draw(std::mt19937_64& rng, const Interval& hull) {
    const mpz_class lo = Rational(hull.lo * Rational(kGridDenominator)).ceil();
    const mpz_class hi = Rational(hull.hi * Rational(kGridDenominator)).floor() - 1;
    if (hi < lo) throw std::invalid_argument("grid hull too narrow: " + hull.lo.str() + ", " + hull.hi.str());
    // Span fits in a long for every hull used here.
    std::uniform_int_distribution<long> d(0, mpz_class(hi - lo).get_si());
    return Rational(mpq_class(lo + d(rng), kGridDenominator));
}

bool excluded(const std::vector<Rational>& sorted_breaks, const Rational& x) {
    return x.is_zero() || std::binary_search(sorted_breaks.begin(), sorted_breaks.end(), x);
}

void sort_unique(std::vector<Rational>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<Rational> verification_grid(std::vector<Rational> breakpoints, const Interval& hull, int random_points,
                                        std::uint64_t seed) {
    breakpoints.push_back(hull.lo);
    breakpoints.push_back(hull.hi);
    sort_unique(breakpoints);
    std::vector<Rational> out;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (breakpoints[i - 1] < hull.lo || breakpoints[i] > hull.hi) continue;
        const Rational m = midpoint(breakpoints[i - 1], breakpoints[i]);
        if (!m.is_zero()) out.push_back(m);
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_points; ++i) {
        const Rational x = draw(rng, hull);
        if (!excluded(breakpoints, x)) out.push_back(x);
    }
    sort_unique(out);
    return out;
}

std::vector<Rational> random_grid(const std::vector<Rational>& breakpoints, const Interval& hull, int count,
                                  std::uint64_t seed) {
    std::vector<Rational> breaks = breakpoints;
    sort_unique(breaks);
    std::mt19937_64 rng(seed);
    std::vector<Rational> out;
    while (static_cast<int>(out.size()) < count) {
        const Rational x = draw(rng, hull);
        if (excluded(breaks, x)) continue;
        out.push_back(x);
        sort_unique(out);
    }
    return out;
}

}  // namespace framesmith
