#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "framesmith/construction.hpp"
#include "framesmith/quadrature.hpp"

namespace framesmith {

/// Signal given by its Fourier transform (pi units), compactly supported.
struct TestSignal {
    std::string name;
    PiecewiseLinear hat;

    /// "tent:[l,r)" (peak 1 at the midpoint) or "box:[l,r)".
    static TestSignal parse(std::string_view text);
    /// ||f||^2 = (1/2) * integral of |hat|^2 dq, exact.
    Rational norm_squared() const;
};

/// One piece of q -> L(q) sqrt(M1(q)) sqrt(M2(q)) on [lo, hi), with L, M1, M2
/// affine and M1, M2 >= 0 there.
struct ProductPiece {
    Rational lo, hi;
    Rational l_slope, l_intercept;
    Rational m1_slope, m1_intercept;
    Rational m2_slope = Rational(0), m2_intercept = Rational(1);

    /// Both radicands are constant: the integral has a closed form.
    bool closed_form() const { return m1_slope.is_zero() && m2_slope.is_zero(); }
};

/// Pieces of linear * sqrt(square1) * sqrt(square2) on the common support;
/// pass a null `square2` to drop the second factor.
std::vector<ProductPiece> product_pieces(const PiecewiseLinear& linear, const PiecewiseLinear& square1,
                                         const PiecewiseLinear* square2 = nullptr);

/// Integral of the piece times e^{i omega q}, to absolute error `tol`.
Complex integrate_piece(const ProductPiece& piece, double omega, double tol);

/// <f, D^j T_k psi> = (1/2) |a|^{-j/2} integral of hat(q) psi(a^{-j} q) e^{i pi k a^{-j} q} dq,
/// by adaptive quadrature with square-root endpoint substitution (closed
/// form where psi is locally constant). Exactly 0 when supports do not meet.
Complex coefficient(const TestSignal& f, const SqrtProfile& psi, long a, long j, long k, double tol = 1e-8);

struct FrameEnergyOptions {
    long jmin = -24;
    long jmax = 24;
    /// A level j stops once a k-doubling block adds less than tail_rel * ||f||^2.
    double tail_rel = 1e-7;
    long k_budget = 1L << 23;
};

struct LevelEnergy {
    long j = 0;
    double energy = 0;
    long k_max = 0;
    /// Energy of the last k-block, an estimate of what truncation left out.
    double last_block = 0;
    bool converged = true;
};

struct FrameEnergy {
    double norm_squared = 0;
    double energy = 0;
    double ratio = 0;
    double tail_estimate = 0;
    /// Some level ran out of k budget before meeting its tail target.
    bool inconclusive = false;
    std::vector<LevelEnergy> levels;
};

/// sum_{j, k, psi} |<f, D^j T_k psi>|^2 over the j range, with k truncated
/// per level by explicit tail summation. Throws ValidationError for a zero
/// signal.
FrameEnergy frame_energy(const TestSignal& f, const std::vector<SqrtProfile>& psis, long a,
                         const FrameEnergyOptions& options = {});
FrameEnergy frame_energy(const TestSignal& f, const WaveletFamily& family, const FrameEnergyOptions& options = {});

}  // namespace framesmith
