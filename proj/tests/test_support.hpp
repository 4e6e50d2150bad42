#pragma once

// Hand-rolled generators for property tests.

#include <array>
#include <random>
#include <vector>

#include "framesmith/interval_set.hpp"
#include "framesmith/piecewise_linear.hpp"
#include "framesmith/rational.hpp"

namespace framesmith::testing {

inline Rational R(long n, long d = 1) { return Rational(n, d); }

/// Random rational n/den with n uniform in [lo*den, hi*den].
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
    std::uniform_int_distribution<long> d(lo * den, hi * den);
    return Rational(d(rng), den);
}

/// Random finite union of (possibly overlapping) intervals with endpoints on
/// the grid (1/den)Z inside [lo, hi].
inline std::vector<Interval> random_pieces(std::mt19937_64& rng, long lo, long hi, long den, int max_pieces) {
    std::uniform_int_distribution<int> count(0, max_pieces);
    std::vector<Interval> out;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        Rational a = random_rational(rng, lo, hi, den);
        Rational b = random_rational(rng, lo, hi, den);
        if (b < a) std::swap(a, b);
        out.push_back({a, b});
    }
    return out;
}

inline IntervalSet random_set(std::mt19937_64& rng, long lo, long hi, long den, int max_pieces) {
    return IntervalSet(random_pieces(rng, lo, hi, den, max_pieces));
}

/// Random piecewise-linear function on disjoint grid-aligned pieces.
inline PiecewiseLinear random_pwl(std::mt19937_64& rng, long lo, long hi, long den, int max_pieces) {
    std::vector<LinearPiece> pieces;
    const IntervalSet s = random_set(rng, lo, hi, den, max_pieces);
    for (const auto& p : s.pieces()) {
        // Split each piece once at a random interior grid point.
        Rational cut = midpoint(p.lo, p.hi);
        pieces.push_back({p.lo, cut, random_rational(rng, -3, 3, 4), random_rational(rng, -3, 3, 4)});
        pieces.push_back({cut, p.hi, random_rational(rng, -3, 3, 4), random_rational(rng, -3, 3, 4)});
    }
    return PiecewiseLinear(std::move(pieces));
}

/// Random admissible spectral function: on each side of 0 a nonincreasing
/// (in |xi|) chain of linear pieces starting at 1, with optional downward
/// jumps, ending in a jump to 0. `symmetric` mirrors the right side, which
/// keeps sigma(a xi) <= sigma(xi) valid for negative a.
inline PiecewiseLinear random_admissible_sigma(std::mt19937_64& rng, bool symmetric = false) {
    std::uniform_int_distribution<int> count(1, 3);
    auto side = [&]() {
        // (start, end, value at start, value at end) in |xi|.
        std::vector<std::array<Rational, 4>> out;
        Rational x(0), u(1);
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            const Rational len = random_rational(rng, 1, 12, 1) / Rational(8);
            const Rational w = u - u * random_rational(rng, 0, 4, 1) / Rational(4);
            out.push_back({x, x + len, u, w});
            x += len;
            u = w - w * random_rational(rng, 0, 2, 1) / Rational(4);
            if (u.is_zero()) break;
        }
        return out;
    };
    const auto right = side();
    const auto left = symmetric ? right : side();
    std::vector<LinearPiece> pieces;
    for (const auto& [x0, x1, u, w] : right) {
        const Rational slope = (w - u) / (x1 - x0);
        pieces.push_back({x0, x1, slope, u - slope * x0});
    }
    for (const auto& [x0, x1, u, w] : left) {
        // Mirror: value u at -x0, w at -x1, linear in between.
        const Rational slope = (u - w) / (x1 - x0);
        pieces.push_back({-x1, -x0, slope, u + slope * x0});
    }
    return PiecewiseLinear(std::move(pieces));
}

}  // namespace framesmith::testing
