#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framesmith/construction.hpp"
#include "framesmith/enclosure.hpp"
#include "framesmith/errors.hpp"
#include "framesmith/sqrt_profile.hpp"
#include "framesmith/status.hpp"

namespace framesmith {

/// Gaussian rational re + i im.
struct Gaussian {
    Rational re;
    Rational im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    Gaussian conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }
    ComplexEnclosure enclosure() const { return {Enclosure(re), Enclosure(im)}; }
    std::string str() const;

    friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re + b.re, a.im + b.im}; }
    friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re - b.re, a.im - b.im}; }
    friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    Gaussian operator-() const { return {-re, -im}; }
    friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

/// Finitely supported sequence on Z with Gaussian-rational entries. Only
/// nonzero entries are stored.
class Sequence {
public:
    Sequence() = default;
    static Sequence delta(long k, Gaussian value = {Rational(1), Rational(0)});
    /// "1@0,1@1", "-1/2@3", "i@2", "1+2i@-1", "1/3-i@0". Repeated indices add.
    static Sequence parse(std::string_view text);

    void set(long k, const Gaussian& v);
    Gaussian at(long k) const;
    const std::map<long, Gaussian>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    Rational norm_squared() const;

    /// <f, g> = sum_k f(k) conj(g(k)).
    friend Gaussian inner(const Sequence& f, const Sequence& g);
    friend Sequence operator+(const Sequence& f, const Sequence& g);
    friend Sequence operator-(const Sequence& f, const Sequence& g);
    friend bool operator==(const Sequence&, const Sequence&) = default;
    std::string str() const;

private:
    std::map<long, Gaussian> entries_;
};

/// Fourier profile xi -> e^{-i pi shift xi} profile(xi). The phase carries
/// integer translates and their dilates.
struct Generator {
    SqrtProfile profile;
    Rational shift;

    ComplexEnclosure value_at(const Rational& xi, int bits) const;
};

/// g(x) * conj(h(y)), exact whenever the squared moduli multiply to a
/// rational square and the phase difference is a multiple of 1/2.
ComplexEnclosure cross_value(const Generator& g, const Rational& x, const Generator& h, const Rational& y, int bits);

struct GeneratorSet {
    long dilation = 2;
    std::vector<Generator> generators;

    /// Largest |x| over all generator supports.
    Rational radius() const;
    std::vector<Rational> breakpoints() const;
};

GeneratorSet generators_of(const ScalingFamily& family);
GeneratorSet generators_of(const WaveletFamily& family);
/// NTF generator of D_A V given one of V: {D_A T_d g : 0 <= d < |a|}.
GeneratorSet dilated_generators(const GeneratorSet& set);

/// One fiber entry e^{-i pi phase} sqrt(radicand), kept symbolic.
struct FiberValue {
    Rational radicand;
    Rational phase;
};

/// T_per g(xi) = (g(xi + 2k))_k, nonzero entries only.
std::map<long, FiberValue> fiber(const Generator& g, const Rational& xi);
std::map<long, ComplexEnclosure> fiber_enclosure(const Generator& g, const Rational& xi, int bits);

/// tau_{V,f}(xi) = sum_g |<f, T_per g(xi)>|^2.
Enclosure restricted_trace(const GeneratorSet& set, const Sequence& f, const Rational& xi,
                           int bits = kDefaultPrecisionBits);
/// sigma_V(xi) = tau_{V, delta_0}(xi).
Enclosure spectral_function(const GeneratorSet& set, const Rational& xi, int bits = kDefaultPrecisionBits);

/// Hermitian matrix on the index window [first, first + n), extended by 0 or
/// by the identity outside the window.
class WindowOperator {
public:
    enum class Padding { zero, identity };

    /// Throws ValidationError unless the matrix is square and Hermitian.
    WindowOperator(long first, std::vector<std::vector<Gaussian>> matrix, Padding padding = Padding::zero);
    static WindowOperator identity(long first, long n);
    /// The identity on all of l^2(Z).
    static WindowOperator full_identity() { return WindowOperator(0, {}, Padding::identity); }

    long first() const { return first_; }
    long size() const { return static_cast<long>(matrix_.size()); }
    Padding padding() const { return padding_; }
    const Gaussian& entry(long i, long j) const { return matrix_[i][j]; }

    /// A window vector x with x* T x < 0, or nullopt when T is positive
    /// semidefinite. Decided exactly by LDL* elimination.
    std::optional<std::vector<Gaussian>> negative_direction() const;

private:
    long first_;
    std::vector<std::vector<Gaussian>> matrix_;
    Padding padding_;
};

class NotPositiveOperator : public ValidationError {
public:
    explicit NotPositiveOperator(std::vector<Gaussian> witness);
    const std::vector<Gaussian>& witness() const { return witness_; }

private:
    std::vector<Gaussian> witness_;
};

/// tau_{V,T}(xi) = sum_g <T T_per g(xi), T_per g(xi)>. Throws
/// NotPositiveOperator when T is not positive semidefinite.
Enclosure operator_trace(const GeneratorSet& set, const WindowOperator& T, const Rational& xi,
                         int bits = kDefaultPrecisionBits);
/// dim_V(xi) = tau_{V,I}(xi).
Enclosure dimension_function(const GeneratorSet& set, const Rational& xi, int bits = kDefaultPrecisionBits);

/// Coset operators for a dilation a and residue 0 <= d < |a|:
/// (D_d alpha)(k) = alpha(l) if k = d + a l, else 0; (D_d* beta)(l) = beta(d + a l).
Sequence coset_op(long a, long d, const Sequence& alpha);
Sequence coset_op_adjoint(long a, long d, const Sequence& beta);

/// Largest deviation found while comparing two sides over a grid.
struct TraceComparison {
    Status status = Status::pass;
    /// Upper bound on max |lhs - rhs| over the grid.
    Rational max_discrepancy;
    std::size_t points = 0;
    /// First failing (or else first uncertain) grid point.
    std::optional<Rational> witness;
    std::string detail;
};

/// tau_{D_A V, f}(xi) against sum_d tau_{V, D_d* f}((xi + 2d) / a).
TraceComparison dilation_trace_check(const GeneratorSet& set, const Sequence& f, const std::vector<Rational>& grid,
                                     int bits = kDefaultPrecisionBits, const Rational& tol = default_tolerance());

/// Compares tau_{V, delta_0 + alpha delta_l} computed from `set` and from
/// `reference` for alpha in {0, 1, i} and 0 < |l| <= l_max. By the NTF
/// generator characterization both agree iff the two sets generate the same
/// space as normalized tight frames. l_max = 0 picks a window covering all
/// fibers.
TraceComparison ntf_generator_test(const GeneratorSet& set, const GeneratorSet& reference,
                                   const std::vector<Rational>& grid, long l_max = 0,
                                   int bits = kDefaultPrecisionBits, const Rational& tol = default_tolerance());

/// sum_{j>=1} sum_psi psi(a^j xi) conj psi(a^j (xi + 2s)) against
/// sum_phi phi(xi) conj phi(xi + 2s). The j-sum is finite: a term vanishes
/// once a^j xi leaves the support hull.
TraceComparison series_identity_check(const GeneratorSet& scaling, const GeneratorSet& wavelets, long s,
                                      const std::vector<Rational>& grid, int bits = kDefaultPrecisionBits,
                                      const Rational& tol = default_tolerance());

/// tau_{V_1,f} = tau_{V_0,f} + tau_{W_0,f}, with V_1 generated by the dilated
/// scaling generators and W_0 by the wavelets; also tau_{V_0,f} <= tau_{V_1,f}.
struct AdditivityReport {
    TraceComparison additivity;
    Status monotone = Status::pass;
    std::optional<Rational> monotone_witness;
};
AdditivityReport additivity_check(const GeneratorSet& scaling, const GeneratorSet& wavelets, const Sequence& f,
                                  const std::vector<Rational>& grid, int bits = kDefaultPrecisionBits,
                                  const Rational& tol = default_tolerance());

}  // namespace framesmith
