#pragma once

#include <cstdint>
#include <vector>

#include "framesmith/interval_set.hpp"

namespace framesmith {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr int kDefaultRandomPoints = 97;

/// Evaluation grid for identities between piecewise objects: the midpoint of
/// every gap between consecutive breakpoints inside `hull`, plus
/// `random_points` rationals n / 1000003 drawn uniformly from `hull`.
/// 0 and the breakpoints themselves (measure-zero exceptions) are excluded.
/// The result is sorted and free of duplicates.
std::vector<Rational> verification_grid(std::vector<Rational> breakpoints, const Interval& hull,
                                        int random_points = kDefaultRandomPoints, std::uint64_t seed = kDefaultSeed);

/// Exactly `count` distinct random grid points from `hull`, with the same
/// exclusions as verification_grid.
std::vector<Rational> random_grid(const std::vector<Rational>& breakpoints, const Interval& hull, int count,
                                  std::uint64_t seed = kDefaultSeed);

}  // namespace framesmith
