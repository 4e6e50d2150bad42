#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framesmith/construction.hpp"
#include "framesmith/grid.hpp"
#include "framesmith/status.hpp"

namespace framesmith {

/// Where an identity was observed to break, with both sides printed.
struct Witness {
    Rational xi;
    std::optional<long> s;
    std::optional<long> j;
    std::string lhs;
    std::string rhs;
};

struct Check {
    std::string name;
    Status status = Status::pass;
    std::optional<Witness> witness;
    std::optional<Rational> tail_bound;
    std::string detail;
};

class VerificationReport {
public:
    /// Throws std::logic_error for a failing check without a witness.
    void add(Check check);
    void append(const VerificationReport& other);

    const std::vector<Check>& checks() const { return checks_; }
    /// Worst status over all checks; pass when empty.
    Status status() const;
    /// Throws std::out_of_range for an unknown name.
    const Check& check(std::string_view name) const;

private:
    std::vector<Check> checks_;
};

/// Breakpoints and support hull of all profiles, fed into verification_grid.
std::vector<Rational> default_grid(const WaveletFamily& psi, std::uint64_t seed = kDefaultSeed);
std::vector<Rational> default_grid(const ScalingFamily& phi, const WaveletFamily& psi,
                                   std::uint64_t seed = kDefaultSeed);

enum class NtfMode { exact, numeric };

/// Sum over psi and j in Z of |psi|^2(a^j xi) = 1 at every grid point, and
/// the cross sums over j >= 0 for s not in aZ vanish. Exact mode evaluates
/// the j-sum as a finite exact part plus the closed-form geometric tail on
/// the linear pieces of sum |psi|^2 next to 0; the tail is reported as
/// tail_bound. Numeric mode sums |j| <= 40 in double precision, tolerance 1e-9.
VerificationReport check_ntf_multiwavelet(const WaveletFamily& psi, NtfMode mode, const std::vector<Rational>& grid,
                                          int bits = precision_from_environment());

/// s-window ceil(|a| R) + 1 where R is the largest support radius; every
/// term vanishes beyond it.
long default_s_window(const ScalingFamily& phi, const WaveletFamily& psi);

/// Wavelets from scaling: for s not in aZ, -P(xi, s) = Q(xi, s); for s in aZ,
/// P(xi/a, s/a) - P(xi, s) = Q(xi, s), where P and Q are the cross sums
/// sum phi(xi) conj phi(xi + 2s) and sum psi(xi) conj psi(xi + 2s).
/// s_window = 0 selects default_s_window.
VerificationReport check_wavelets_from_scaling(const ScalingFamily& phi, const WaveletFamily& psi, const std::vector<Rational>& grid,
                               long s_window = 0, int bits = precision_from_environment());

/// Smallest j0 >= 0 with sum |phi|^2(a^j xi) = 0 for all j >= j0.
long decay_exit_index(const ScalingFamily& phi, const Rational& xi);

/// check_wavelets_from_scaling plus the decay condition, with the exit index of every grid
/// point. Exit indices above j_max are reported as uncertain.
VerificationReport check_characterization(const ScalingFamily& phi, const WaveletFamily& psi, const std::vector<Rational>& grid,
                               long j_max = 64, long s_window = 0, int bits = precision_from_environment());

/// The five sufficiency hypotheses; the limit at 0 is decided from both
/// one-sided limits of sum |phi|^2.
VerificationReport check_sufficiency(const ScalingFamily& phi, const WaveletFamily& psi, const std::vector<Rational>& grid,
                               long s_window = 0, int bits = precision_from_environment());

/// Density (limit of sum |phi|^2(a^-j xi) is 1) and monotonicity of that
/// sequence for 0 <= j <= j_max at every grid point.
VerificationReport check_density(const ScalingFamily& phi, const std::vector<Rational>& grid, long j_max = 64);

/// Multiwavelet-set conditions: the E_i are disjoint, each E_i meets none of
/// its 2k-translates, and the dilates a^j U of U = union E_i tile
/// [-W, -eps) u [eps, W) with eps = W |a|^-j_range. All j whose dilate meets
/// the window are included, so the tiling verdict is exact there; the
/// untested gap (-eps, eps) is reported as tail_bound (its measure).
VerificationReport check_waveletset(const std::vector<IntervalSet>& sets, long a, const Rational& window,
                                    long j_range);

/// Semi-orthogonality: certified when support(psi) and a^j support(psi')
/// are disjoint for every pair and j >= 1. Otherwise the inner products
/// <D^j T_k psi', psi> for |k| <= 8 are computed by quadrature; a modulus
/// above 1e-8 fails.
VerificationReport check_semiorthogonal(const WaveletFamily& psi);

}  // namespace framesmith
