#include "framesmith/frametest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "framesmith/errors.hpp"

namespace framesmith {

namespace {

struct Affine {
    Rational slope, intercept;
    bool present = false;
};

Affine affine_at(const PiecewiseLinear& f, const Rational& x) {
    for (const auto& p : f.pieces())
        if (p.lo <= x && x < p.hi) return {p.slope, p.intercept, true};
    return {};
}

// Compensated (Neumaier) accumulator for reproducible energy sums.
class Accumulator {
public:
    void add(double x) {
        const double t = sum_ + x;
        comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0, comp_ = 0;
};

double sqrt_affine(double slope, double intercept, double q) { return std::sqrt(std::max(0.0, slope * q + intercept)); }

struct DoublePiece {
    double lo, hi, ls, li, m1s, m1i, m2s, m2i;
    explicit DoublePiece(const ProductPiece& p)
        : lo(p.lo.to_double()),
          hi(p.hi.to_double()),
          ls(p.l_slope.to_double()),
          li(p.l_intercept.to_double()),
          m1s(p.m1_slope.to_double()),
          m1i(p.m1_intercept.to_double()),
          m2s(p.m2_slope.to_double()),
          m2i(p.m2_intercept.to_double()) {}
    double operator()(double q) const {
        return (ls * q + li) * sqrt_affine(m1s, m1i, q) * sqrt_affine(m2s, m2i, q);
    }
};

Rational parse_endpoint(std::string_view text, std::string_view full) {
    try {
        return Rational::parse(text);
    } catch (const ParseError&) {
        throw ParseError("bad signal endpoint '" + std::string(text) + "'", std::string(full));
    }
}

}  // namespace

TestSignal TestSignal::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected kind:[l,r)", std::string(text));
    const std::string_view kind = text.substr(0, colon);
    std::string_view range = text.substr(colon + 1);
    if (range.size() < 4 || range.front() != '[' || range.back() != ')')
        throw ParseError("expected half-open interval [l,r)", std::string(text));
    range = range.substr(1, range.size() - 2);
    const auto comma = range.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected [l,r)", std::string(text));
    const Rational l = parse_endpoint(range.substr(0, comma), text);
    const Rational r = parse_endpoint(range.substr(comma + 1), text);
    if (!(l < r)) throw ValidationError("signal support nonempty", std::string(text));
    if (kind == "box") return {std::string(text), PiecewiseLinear::indicator(IntervalSet::single(l, r))};
    if (kind == "tent") {
        const Rational m = midpoint(l, r), h = (r - l) / Rational(2);
        return {std::string(text), PiecewiseLinear({{l, m, Rational(1) / h, -l / h}, {m, r, -Rational(1) / h, r / h}})};
    }
    throw ParseError("unknown signal kind '" + std::string(kind) + "'", std::string(text));
}

Rational TestSignal::norm_squared() const { return hat.integral_of_square() / Rational(2); }

std::vector<ProductPiece> product_pieces(const PiecewiseLinear& linear, const PiecewiseLinear& square1,
                                         const PiecewiseLinear* square2) {
    std::vector<Rational> cuts = linear.breakpoints();
    const auto b1 = square1.breakpoints();
    cuts.insert(cuts.end(), b1.begin(), b1.end());
    if (square2) {
        const auto b2 = square2->breakpoints();
        cuts.insert(cuts.end(), b2.begin(), b2.end());
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<ProductPiece> out;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const Rational m = midpoint(cuts[i - 1], cuts[i]);
        const Affine l = affine_at(linear, m), s1 = affine_at(square1, m);
        if (!l.present || !s1.present) continue;
        ProductPiece p{cuts[i - 1], cuts[i], l.slope, l.intercept, s1.slope, s1.intercept};
        if (square2) {
            const Affine s2 = affine_at(*square2, m);
            if (!s2.present) continue;
            p.m2_slope = s2.slope;
            p.m2_intercept = s2.intercept;
        }
        out.push_back(std::move(p));
    }
    return out;
}

Complex integrate_piece(const ProductPiece& piece, double omega, double tol) {
    const DoublePiece d(piece);
    if (piece.closed_form()) {
        const double m = std::sqrt(Rational(piece.m1_intercept * piece.m2_intercept).to_double());
        return m * linear_times_phase(d.ls, d.li, omega, d.lo, d.hi);
    }
    auto g = [&](double q) { return d(q) * std::polar(1.0, omega * q); };
    return integrate_sqrt_endpoints(g, d.lo, d.hi, tol).value;
}

namespace {

// Dilated square q -> |psi(a^{-j} q)|^2 and the frequency step pi a^{-j}.
struct Level {
    PiecewiseLinear square;
    double scale = 0;  // (1/2) |a|^{-j/2}
    double theta = 0;  // omega_k = k * theta
};

Level level_of(const SqrtProfile& psi, long a, long j) {
    const Rational c = pow(Rational(a), -j);
    return {psi.effective_square().compose_scale(c), 0.5 * std::pow(static_cast<double>(std::labs(a)), -0.5 * j),
            M_PI * c.to_double()};
}

}  // namespace

Complex coefficient(const TestSignal& f, const SqrtProfile& psi, long a, long j, long k, double tol) {
    require_dilation(a);
    const Level lv = level_of(psi, a, j);
    const auto pieces = product_pieces(f.hat, lv.square);
    if (pieces.empty()) return {};
    const double omega = lv.theta * static_cast<double>(k);
    Complex sum;
    const double share = tol / (lv.scale * static_cast<double>(pieces.size()));
    for (const auto& p : pieces) sum += integrate_piece(p, omega, share);
    return lv.scale * sum;
}

namespace {

// Coefficients of one (psi, j) for a range of k >= 0, sharing quadrature
// nodes across k and advancing e^{i k theta q} by rotation.
class LevelEvaluator {
public:
    LevelEvaluator(std::vector<ProductPiece> pieces, const Level& level) : level_(level) {
        for (auto& p : pieces) (p.closed_form() ? closed_ : open_).push_back(DoublePiece(p));
        for (const auto& p : pieces)
            if (p.closed_form()) closed_scale_.push_back(std::sqrt(Rational(p.m1_intercept * p.m2_intercept).to_double()));
    }

    bool empty() const { return closed_.empty() && open_.empty(); }

    /// Nodes needed to resolve frequencies up to k_max.
    std::size_t node_count(long k_max) const {
        std::size_t n = 0;
        for (const auto& p : open_) n += 20 * panels(p, k_max);
        return n;
    }

    /// sum over k in [k0, k1] of w_k |c_k|^2 with w_0 = 1 and w_k = 2 for
    /// k > 0 (c_{-k} = conj c_k because the integrand is real).
    double block_energy(long k0, long k1) const {
        const long n = k1 - k0 + 1;
        std::vector<double> re(n, 0.0), im(n, 0.0);
        for (const auto& p : open_) accumulate_open(p, k0, k1, re, im);
        for (std::size_t i = 0; i < closed_.size(); ++i) {
            const auto& p = closed_[i];
            for (long k = k0; k <= k1; ++k) {
                const Complex v = closed_scale_[i] * linear_times_phase(p.ls, p.li, level_.theta * k, p.lo, p.hi);
                re[k - k0] += v.real();
                im[k - k0] += v.imag();
            }
        }
        Accumulator acc;
        const double s2 = level_.scale * level_.scale;
        for (long k = k0; k <= k1; ++k) {
            const double e = s2 * (re[k - k0] * re[k - k0] + im[k - k0] * im[k - k0]);
            acc.add(k == 0 ? e : 2 * e);
        }
        return acc.value();
    }

private:
    // Phase change over a half piece is theta k h / 2; keep about 3 radians
    // per panel at the fast end of the t-substitution.
    int panels(const DoublePiece& p, long k_max) const {
        const double phase = std::abs(level_.theta) * static_cast<double>(k_max) * (p.hi - p.lo);
        return 2 + static_cast<int>(std::ceil(phase / 3.0));
    }

    void accumulate_open(const DoublePiece& p, long k0, long k1, std::vector<double>& re,
                         std::vector<double>& im) const {
        const int np = panels(p, k1);
        const double mid = 0.5 * (p.lo + p.hi);
        for (int side = 0; side < 2; ++side) {
            const double span = std::sqrt(side == 0 ? mid - p.lo : p.hi - mid);
            const Rule rule = composite_gauss(0, span, np);
            for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
                const double t = rule.nodes[n];
                const double q = side == 0 ? p.lo + t * t : p.hi - t * t;
                const double v = rule.weights[n] * 2 * t * p(q);
                if (v == 0) continue;
                const double th = level_.theta * q;
                double cr = std::cos(th * k0), ci = std::sin(th * k0);
                const double sr = std::cos(th), si = std::sin(th);
                for (long k = k0; k <= k1; ++k) {
                    re[k - k0] += v * cr;
                    im[k - k0] += v * ci;
                    const double nr = cr * sr - ci * si;
                    ci = cr * si + ci * sr;
                    cr = nr;
                }
            }
        }
    }

    Level level_;
    std::vector<DoublePiece> closed_;
    std::vector<double> closed_scale_;
    std::vector<DoublePiece> open_;
};

// Work cap (node-frequency pairs) for a single k-block.
constexpr double kMaxBlockWork = 4e9;

}  // namespace

FrameEnergy frame_energy(const TestSignal& f, const std::vector<SqrtProfile>& psis, long a,
                         const FrameEnergyOptions& options) {
    require_dilation(a);
    const Rational norm = f.norm_squared();
    if (norm.is_zero()) throw ValidationError("signal nonzero", f.name);
    FrameEnergy out;
    out.norm_squared = norm.to_double();
    const double target = options.tail_rel * out.norm_squared;
    Accumulator total, tail;
    for (long j = options.jmin; j <= options.jmax; ++j) {
        std::vector<LevelEvaluator> evals;
        for (const auto& psi : psis) {
            const Level lv = level_of(psi, a, j);
            LevelEvaluator e(product_pieces(f.hat, lv.square), lv);
            if (!e.empty()) evals.push_back(std::move(e));
        }
        if (evals.empty()) continue;
        LevelEnergy level{j};
        Accumulator energy;
        long k0 = 0, k1 = 16;
        for (int block = 0;; ++block) {
            double work = 0;
            for (const auto& e : evals) work += static_cast<double>(e.node_count(k1)) * static_cast<double>(k1 - k0 + 1);
            if (k1 > options.k_budget || work > kMaxBlockWork) {
                level.converged = false;
                break;
            }
            double block_sum = 0;
            for (const auto& e : evals) block_sum += e.block_energy(k0, k1);
            energy.add(block_sum);
            level.k_max = k1;
            level.last_block = block_sum;
            if (block > 0 && block_sum < target) break;
            k0 = k1 + 1;
            k1 = 2 * k1;
        }
        level.energy = energy.value();
        total.add(level.energy);
        tail.add(level.last_block);
        if (!level.converged) out.inconclusive = true;
        out.levels.push_back(level);
    }
    out.energy = total.value();
    out.ratio = out.energy / out.norm_squared;
    out.tail_estimate = tail.value() / out.norm_squared;
    return out;
}

FrameEnergy frame_energy(const TestSignal& f, const WaveletFamily& family, const FrameEnergyOptions& options) {
    return frame_energy(f, family.psis, family.dilation, options);
}

}  // namespace framesmith
