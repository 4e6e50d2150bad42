#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framesmith/rational.hpp"

namespace framesmith {

/// Half-open interval [lo, hi) of frequencies in units of pi.
struct Interval {
    Rational lo;
    Rational hi;

    bool empty() const { return !(lo < hi); }
    Rational length() const { return empty() ? Rational(0) : hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x < hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint half-open intervals in canonical form.
///
/// Pieces are nonempty, sorted ascending, pairwise disjoint, and pieces that
/// touch (`hi == next.lo`) are merged, so two sets are equal exactly when
/// their piece lists are equal. Since every nonempty piece has positive
/// measure, equality of canonical sets is also equality almost everywhere.
class IntervalSet {
public:
    IntervalSet() = default;
    /// Canonicalizes arbitrary (possibly overlapping, unsorted) pieces.
    explicit IntervalSet(std::vector<Interval> pieces);
    IntervalSet(std::initializer_list<Interval> pieces) : IntervalSet(std::vector<Interval>(pieces)) {}

    static IntervalSet single(const Rational& lo, const Rational& hi) { return IntervalSet({Interval{lo, hi}}); }

    const std::vector<Interval>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    std::size_t size() const { return pieces_.size(); }

    bool contains(const Rational& x) const;
    Rational measure() const;
    /// Smallest interval containing the set; requires a nonempty set.
    Interval hull() const;
    /// max |x| over the closure of the set (0 for the empty set).
    Rational radius() const;
    /// inf |x| over the set (0 when the closure touches 0).
    Rational distance_from_zero() const;

    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet subtract(const IntervalSet& other) const;
    /// Shift by t: {x + t}. Translation by 2k*pi is t = 2k.
    IntervalSet translate(const Rational& t) const;
    /// Dilation {c*x} for c != 0. For c < 0 each [l, r) maps to [c*r, c*l),
    /// which differs from the exact image only at endpoints (measure zero).
    IntervalSet dilate(const Rational& c) const;

    /// Sorted list of all piece endpoints.
    std::vector<Rational> endpoints() const;

    std::string str() const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> pieces_;
};

/// Union of many sets in one canonicalization pass.
IntervalSet unite_all(std::span<const IntervalSet> sets);

}  // namespace framesmith
