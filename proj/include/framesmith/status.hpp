#pragma once

#include <string>

#include "framesmith/enclosure.hpp"

namespace framesmith {

enum class Status { pass, fail, uncertain };

std::string to_string(Status s);

/// Absolute tolerance for numerically evaluated identities.
Rational default_tolerance();  // 2^-40

/// pass if |diff| <= tol for every point of the enclosure, fail if
/// |diff| > tol for every point, uncertain otherwise.
Status within_tolerance(const Enclosure& diff, const Rational& tol);

/// Worst of two verdicts: fail > uncertain > pass.
Status combine(Status a, Status b);

}  // namespace framesmith
