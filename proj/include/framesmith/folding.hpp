#pragma once

#include <vector>

#include "framesmith/interval_set.hpp"

namespace framesmith {

/// A piece of a set folded into the fundamental domain [-1, 1): the original
/// points are `folded + 2 * shift`.
struct FoldedPiece {
    Interval folded;
    long shift;
};

/// Cuts every piece of `set` at the odd integers and translates each chunk
/// into [-1, 1). Output is sorted by (shift, folded.lo).
std::vector<FoldedPiece> fold(const IntervalSet& set);

/// Per(chi_K) restricted to the fundamental domain: a piecewise-constant,
/// integer-valued function on [-1, 1) counting the points of K congruent to
/// xi modulo 2*pi.
class FoldedMultiplicity {
public:
    struct Level {
        Interval where;
        long count;
        friend bool operator==(const Level&, const Level&) = default;
    };

    /// `levels` must cover [-1, 1) without gaps; touching equal counts merge.
    explicit FoldedMultiplicity(std::vector<Level> levels);

    const std::vector<Level>& levels() const { return levels_; }
    /// Value at a point of [-1, 1); points outside are first reduced mod 2.
    long at(const Rational& xi) const;
    /// p = max Per(chi_K).
    long max() const;
    /// Part of [-1, 1) where the multiplicity is >= m.
    IntervalSet at_least(long m) const;
    /// Part of [-1, 1) where the multiplicity equals m.
    IntervalSet exactly(long m) const;
    /// Integral over [-1, 1); equals the measure of K.
    Rational integral() const;

    friend bool operator==(const FoldedMultiplicity&, const FoldedMultiplicity&) = default;

private:
    std::vector<Level> levels_;
};

/// Reduces xi into the fundamental domain [-1, 1).
Rational reduce_to_fundamental(const Rational& xi);

FoldedMultiplicity per_multiplicity(const IntervalSet& K);

/// Greedy layering K_1, ..., K_p of K: each residue with m representatives
/// in K sends them, in ascending position, to K_1, ..., K_m. Each layer is
/// injective mod 2 and K_i is congruent to {Per(chi_K) >= i}.
std::vector<IntervalSet> layered_partition(const IntervalSet& K);

/// Alternative partition K cap [2k - 1, 2k + 1), one layer per window that
/// meets K, ordered by k. May produce more than p layers.
std::vector<IntervalSet> window_partition(const IntervalSet& K);

}  // namespace framesmith
