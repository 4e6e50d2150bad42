#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framesmith/interval_set.hpp"
#include "framesmith/piecewise_linear.hpp"
#include "framesmith/sqrt_profile.hpp"

namespace framesmith {

/// Candidate spectral function together with the integer dilation a.
struct SpectralSpec {
    PiecewiseLinear sigma;
    long dilation = 2;
};

/// Throws ValidationError unless |a| >= 2.
void require_dilation(long a);

/// Outcome of one named condition, with an exact witness point on failure.
struct ConditionResult {
    std::string id;
    std::string description;
    bool passed = false;
    std::optional<Rational> witness;
    std::string detail;
};

struct AdmissibilityReport {
    std::vector<ConditionResult> conditions;
    /// max Per(chi_K) for K = support(sigma(xi/a) - sigma(xi)).
    long layers = 0;

    bool admissible() const;
    /// First violated condition in check order, or nullptr.
    const ConditionResult* first_failure() const;
    const ConditionResult& condition(std::string_view id) const;
};

/// Checks nonnegativity and integrability, sigma(a xi) <= sigma(xi), bounded
/// periodization of K, both one-sided limits at 0 equal to 1, and vanishing
/// at infinity. For bounded piecewise-linear sigma the two limit conditions
/// are decided structurally and exactly.
AdmissibilityReport admissibility_check(const SpectralSpec& spec);

/// The telescoping difference xi -> sigma(xi / a) - sigma(xi).
PiecewiseLinear dilation_difference(const SpectralSpec& spec);

/// Scaling profiles phi_k = sqrt(sigma) on the window [2k - 1, 2k + 1).
struct ScalingFamily {
    long dilation = 2;
    PiecewiseLinear sigma;
    std::map<long, SqrtProfile> phis;

    std::vector<SqrtProfile> profiles() const;
};

/// Wavelet profiles psi_i with |psi_i|^2 = sigma(xi/a) - sigma(xi) on K_i.
/// `partition[i]` is the layer carrying `psis[i]`.
struct WaveletFamily {
    long dilation = 2;
    PiecewiseLinear sigma;
    std::vector<IntervalSet> partition;
    std::vector<SqrtProfile> psis;
};

enum class PartitionRule { layered, window };

/// Both builders throw ValidationError when the spec is not admissible.
ScalingFamily build_scaling(const SpectralSpec& spec);
WaveletFamily build_wavelets(const SpectralSpec& spec, PartitionRule rule = PartitionRule::layered);

/// Result of closing a seed under E -> union_{j >= 1} a^{-j} E.
struct ClosureResult {
    bool stabilized = false;
    int iterations = 0;
    /// The exact union when stabilized, otherwise the partial union after
    /// `iterations` dilation steps.
    IntervalSet set;
};

inline constexpr int kDefaultClosureBudget = 64;

/// Computes union_{j >= 1} a^{-j} E by iterated dilation. After J steps the
/// partial union P_J is completed with a hole-filler around 0 that covers all
/// later terms; the candidate is accepted once it is a fixed point of
/// X -> a^{-1}(E u X). A bounded fixed point equals the union almost
/// everywhere, so acceptance is exact.
ClosureResult dilation_closure(const IntervalSet& E, long a, int budget = kDefaultClosureBudget);

class NonTerminatingClosure : public std::runtime_error {
public:
    NonTerminatingClosure(IntervalSet partial, int iterations);
    const IntervalSet& partial() const { return partial_; }
    int iterations() const { return iterations_; }

private:
    IntervalSet partial_;
    int iterations_;
};

/// sigma = chi of the dilation closure; throws NonTerminatingClosure when the
/// union does not stabilize near 0 within `budget` iterations.
PiecewiseLinear waveletset_sigma(const IntervalSet& E, long a, int budget = kDefaultClosureBudget);

enum class SeedClass { not_admissible, ntf, orthonormal, ntf_multi };
std::string to_string(SeedClass c);

struct SeedClassification {
    SeedClass kind = SeedClass::not_admissible;
    std::vector<ConditionResult> conditions;
    /// aE \ E and the maximum of its periodization.
    IntervalSet difference;
    long max_periodization = 0;
};

/// Decides whether sigma = chi_E yields a wavelet set: `orthonormal` when
/// Per(chi_{aE\E}) = 1 a.e., `ntf` when it is <= 1, `ntf_multi` when it is
/// bounded but exceeds 1.
SeedClassification classify_waveletset_seed(const IntervalSet& E, long a);

// Built-in generators (all frequencies in units of pi).

/// Piecewise-linear bump: x/a + 1 on [-a, 0), -x/b + 1 on [0, b).
PiecewiseLinear bump_sigma(const Rational& a, const Rational& b);
/// chi_[-1, 1).
PiecewiseLinear shannon_sigma();
/// [-2, -1) u [1, 2).
IntervalSet shannon_set();
/// [-32/7, -4) u [-1, -4/7) u [4/7, 1) u [4, 32/7).
IntervalSet journe_set();
/// 1 - |x| / w on [-w, w).
PiecewiseLinear tent_sigma(const Rational& half_width);

/// Parses "pwl:a=1/2,b=1/2", "shannon", "journe", "tent" or "tent:w=2"
/// into a spectral spec with the given dilation.
SpectralSpec builtin_spec(std::string_view name, long dilation = 2);

}  // namespace framesmith
