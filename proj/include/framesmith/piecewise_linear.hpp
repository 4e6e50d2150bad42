#pragma once

#include <optional>
#include <string>
#include <vector>

#include "framesmith/interval_set.hpp"
#include "framesmith/rational.hpp"

namespace framesmith {

/// One affine piece: value(x) = slope * x + intercept on [lo, hi).
struct LinearPiece {
    Rational lo;
    Rational hi;
    Rational slope;
    Rational intercept;

    Rational at(const Rational& x) const { return slope * x + intercept; }
    bool is_zero() const { return slope.is_zero() && intercept.is_zero(); }

    friend bool operator==(const LinearPiece&, const LinearPiece&) = default;
};

/// Exactly represented piecewise-linear function with bounded support.
///
/// Pieces are half-open, sorted, disjoint; the function is 0 outside them.
/// The stored form is canonical: identically-zero pieces are dropped and
/// touching pieces carrying the same affine map are merged. Point values
/// follow the half-open convention, so f(x) is the right limit at x.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    /// Validates (nonempty, non-overlapping pieces) and canonicalizes.
    explicit PiecewiseLinear(std::vector<LinearPiece> pieces);

    static PiecewiseLinear indicator(const IntervalSet& set);
    static PiecewiseLinear affine_on(const IntervalSet& set, const Rational& slope, const Rational& intercept);

    const std::vector<LinearPiece>& pieces() const { return pieces_; }
    bool is_zero() const { return pieces_.empty(); }

    Rational operator()(const Rational& x) const { return value(x); }
    Rational value(const Rational& x) const;
    /// lim_{y -> x-} f(y).
    Rational left_limit(const Rational& x) const;
    /// lim_{y -> x+} f(y); equals value(x).
    Rational right_limit(const Rational& x) const { return value(x); }

    /// Exact set where f != 0 (isolated zeros inside a piece are ignored).
    IntervalSet support() const;
    /// Sorted, deduplicated piece endpoints.
    std::vector<Rational> breakpoints() const;

    /// x -> f(c*x), c != 0.
    PiecewiseLinear compose_scale(const Rational& c) const;
    /// x -> f(x + t).
    PiecewiseLinear compose_shift(const Rational& t) const;
    /// x -> c * f(x).
    PiecewiseLinear scaled(const Rational& c) const;
    PiecewiseLinear restricted(const IntervalSet& set) const;
    /// max(f, 0), split exactly at zero crossings.
    PiecewiseLinear positive_part() const;

    friend PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g);
    friend PiecewiseLinear operator-(const PiecewiseLinear& f, const PiecewiseLinear& g);
    friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;

    /// First point (breakpoint or left limit at a breakpoint) where f < 0.
    /// A piecewise-linear function is nonnegative iff it is nonnegative at
    /// both closed ends of every piece.
    std::optional<Rational> negative_witness() const;
    bool nonnegative() const { return !negative_witness().has_value(); }

    /// sup f over the real line (0 included since f vanishes off the support).
    Rational supremum() const;
    /// Exact integral of f.
    Rational integral() const;
    /// Exact integral of f^2.
    Rational integral_of_square() const;

    std::string str() const;

private:
    std::vector<LinearPiece> pieces_;
};

}  // namespace framesmith
