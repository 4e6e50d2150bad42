#include "framesmith/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "framesmith/errors.hpp"
#include "framesmith/folding.hpp"
#include "framesmith/frametest.hpp"

namespace framesmith {

void VerificationReport::add(Check check) {
    if (check.status == Status::fail && !check.witness)
        throw std::logic_error("failing check '" + check.name + "' has no witness");
    checks_.push_back(std::move(check));
}

void VerificationReport::append(const VerificationReport& other) {
    for (const auto& c : other.checks_) add(c);
}

Status VerificationReport::status() const {
    Status s = Status::pass;
    for (const auto& c : checks_) s = combine(s, c.status);
    return s;
}

const Check& VerificationReport::check(std::string_view name) const {
    for (const auto& c : checks_)
        if (c.name == name) return c;
    throw std::out_of_range("no check named " + std::string(name));
}

namespace {

PiecewiseLinear sum_of_squares(const std::vector<SqrtProfile>& profiles) {
    PiecewiseLinear s;
    for (const auto& p : profiles) s = s + p.effective_square();
    return s;
}

Rational support_radius(const std::vector<SqrtProfile>& profiles) {
    Rational r;
    for (const auto& p : profiles)
        if (!p.is_zero()) r = max(r, p.support().radius());
    return r;
}

std::vector<Rational> all_breakpoints(const std::vector<SqrtProfile>& profiles) {
    std::vector<Rational> out;
    for (const auto& p : profiles) {
        const auto b = p.effective_square().breakpoints();
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

IntervalSet joint_support(const std::vector<SqrtProfile>& profiles) {
    IntervalSet u;
    for (const auto& p : profiles) u = u.unite(p.support());
    return u;
}

std::vector<Rational> grid_for(const std::vector<SqrtProfile>& profiles, std::uint64_t seed) {
    const IntervalSet u = joint_support(profiles);
    if (u.empty()) return verification_grid({}, Interval{Rational(-1), Rational(1)}, kDefaultRandomPoints, seed);
    return verification_grid(all_breakpoints(profiles), u.hull(), kDefaultRandomPoints, seed);
}

/// sum_p p(x) p(y) for nonnegative square-root profiles.
Enclosure cross_sum(const std::vector<SqrtProfile>& profiles, const Rational& x, const Rational& y, int bits) {
    Enclosure out(Rational(0));
    for (const auto& p : profiles) out += profile_product(p, x, p, y, bits);
    return out;
}

bool in_lattice(long s, long a) { return s % a == 0; }

// A negative dilation maps [l, r) onto (a r, a l], so piecewise objects
// built by dilation can differ from the exact formula at breakpoints. For
// a < 0, evaluation points that are breakpoints (or orbits through one) are
// measure-zero exceptions and are skipped.
class Exceptions {
public:
    Exceptions(long a, std::vector<Rational> points) : active_(a < 0), abs_a_(std::labs(a)) {
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        points_ = std::move(points);
    }

    bool point(const Rational& x) const { return active_ && std::binary_search(points_.begin(), points_.end(), x); }

    /// Some a^j xi, j in Z, is a nonzero breakpoint.
    bool orbit(const Rational& xi) const {
        if (!active_ || xi.is_zero()) return false;
        for (const auto& b : points_)
            if (!b.is_zero() && power_of_a((b / xi).abs())) return true;
        return false;
    }

private:
    bool power_of_a(const Rational& r) const {
        mpz_class n = r.num(), d = r.den();
        if (n != 1 && d != 1) return false;
        mpz_class m = n == 1 ? d : n;
        while (m % abs_a_ == 0) m /= abs_a_;
        return m == 1;
    }

    bool active_;
    long abs_a_;
    std::vector<Rational> points_;
};

std::string skipped_note(std::size_t skipped) {
    return skipped == 0 ? std::string()
                        : std::to_string(skipped) + " measure-zero exceptions skipped (breakpoints under a < 0)";
}

/// Accumulates per-cell verdicts of one identity: keeps the first failing
/// cell (or else the first uncertain one) and the largest discrepancy.
class Tally {
public:
    explicit Tally(std::string name) : name_(std::move(name)) {}

    void record(Status s, const Enclosure& lhs, const Enclosure& rhs, const Rational& xi, std::optional<long> sv,
                std::optional<long> j = std::nullopt) {
        ++cells_;
        worst_ = max(worst_, (lhs - rhs).magnitude());
        if (s == Status::pass) return;
        const bool replace = !witness_ || (s == Status::fail && status_ != Status::fail);
        status_ = combine(status_, s);
        if (replace) witness_ = Witness{xi, sv, j, lhs.str(), rhs.str()};
    }

    Check finish(std::string extra = {}) const {
        Check c{name_, status_, witness_, std::nullopt, {}};
        std::ostringstream d;
        d << cells_ << " cells, max |lhs - rhs| <= " << worst_.to_double();
        if (!extra.empty()) d << "; " << extra;
        c.detail = d.str();
        return c;
    }

private:
    std::string name_;
    Status status_ = Status::pass;
    std::optional<Witness> witness_;
    Rational worst_;
    std::size_t cells_ = 0;
};

void require_nonzero_grid(const std::vector<Rational>& grid) {
    if (grid.empty()) throw ValidationError("grid nonempty", "no evaluation points");
}

std::string measure_zero_note(const std::vector<Rational>& grid) {
    const bool has_zero = std::any_of(grid.begin(), grid.end(), [](const Rational& x) { return x.is_zero(); });
    return has_zero ? "xi = 0 skipped (measure-zero exception)" : std::string();
}

// ---- sum over j in Z of S(a^j xi) -------------------------------------------

/// Closed-form sum over m > J of S(a^-m xi) when all those points lie on the
/// linear pieces of S next to 0 where S(x) = c_side |x|.
struct ZeroTail {
    long a;
    Rational c_right, c_left;
    Rational delta;  // nearest nonzero breakpoint distance

    Rational at(const Rational& xi, long J) const {
        const Rational abs_a(std::labs(a), 1);
        const Rational mag = xi.abs() * pow(abs_a, -(J + 1));
        auto side = [&](long m) {
            const bool positive = (xi.sign() > 0) == (a > 0 || m % 2 == 0);
            return positive ? c_right : c_left;
        };
        if (a > 0) return side(J + 1) * mag * abs_a / (abs_a - Rational(1));
        const Rational a2 = abs_a * abs_a;
        return (side(J + 1) * mag + side(J + 2) * mag / abs_a) * a2 / (a2 - Rational(1));
    }

    bool applies(const Rational& xi, long J) const {
        return xi.abs() * pow(Rational(std::labs(a), 1), -(J + 1)) < delta;
    }
};

ZeroTail zero_tail(const PiecewiseLinear& s, long a) {
    ZeroTail t{a, Rational(0), Rational(0), Rational(0)};
    for (const auto& p : s.pieces()) {
        if (p.lo <= Rational(0) && Rational(0) < p.hi) t.c_right = p.slope;
        if (p.lo < Rational(0) && Rational(0) <= p.hi) t.c_left = -p.slope;
    }
    bool found = false;
    for (const auto& b : s.breakpoints()) {
        if (b.is_zero()) continue;
        if (!found || b.abs() < t.delta) t.delta = b.abs();
        found = true;
    }
    if (!found) t.delta = Rational(1);
    return t;
}

const Rational& ntf_tail_target() {
    static const Rational target(1, 1000000000);
    return target;
}

Check ntf_sum_exact(const PiecewiseLinear& s, long a, const std::vector<Rational>& grid) {
    Check c{"orbit-sum", Status::pass, std::nullopt, std::nullopt, {}};
    const Rational l = s.left_limit(Rational(0)), r = s.right_limit(Rational(0));
    if (!l.is_zero() || !r.is_zero()) {
        c.status = Status::fail;
        c.witness = Witness{Rational(0), std::nullopt, std::nullopt,
                            "sum over j diverges: limits at 0 are " + l.str() + ", " + r.str(), "1"};
        c.detail = "sum |psi|^2 does not vanish at 0";
        return c;
    }
    const ZeroTail tail = zero_tail(s, a);
    const Rational radius = s.support().empty() ? Rational(0) : s.support().radius();
    const Rational abs_a(std::labs(a), 1);
    const Rational aq(a, 1);
    const Exceptions exceptions(a, s.breakpoints());
    Rational worst_tail;
    std::size_t points = 0, skipped = 0;
    for (const auto& xi : grid) {
        if (xi.is_zero()) continue;
        if (exceptions.orbit(xi)) {
            ++skipped;
            continue;
        }
        ++points;
        long j_hi = 0;
        while (xi.abs() * pow(abs_a, j_hi) <= radius) ++j_hi;
        long j_lo = 0;
        while (!tail.applies(xi, j_lo) || tail.at(xi, j_lo) > ntf_tail_target()) ++j_lo;
        Rational total = tail.at(xi, j_lo);
        worst_tail = max(worst_tail, total);
        for (long j = -j_lo; j < j_hi; ++j) total += s(xi * pow(aq, j));
        if (total != Rational(1) && c.status == Status::pass) {
            c.status = Status::fail;
            c.witness = Witness{xi, std::nullopt, std::nullopt, total.str(), "1"};
        }
    }
    c.tail_bound = worst_tail;
    std::ostringstream d;
    d << points << " points, finite part exact, geometric tail <= " << worst_tail.to_double();
    c.detail = d.str();
    if (skipped) c.detail += "; " + skipped_note(skipped);
    return c;
}

Check ntf_sum_numeric(const PiecewiseLinear& s, long a, const std::vector<Rational>& grid) {
    constexpr long kLevels = 40;
    constexpr double kTol = 1e-9;
    Check c{"orbit-sum", Status::pass, std::nullopt, std::nullopt, {}};
    const Rational aq(a, 1);
    const Exceptions exceptions(a, s.breakpoints());
    double worst = 0;
    std::size_t points = 0, skipped = 0;
    for (const auto& xi : grid) {
        if (xi.is_zero()) continue;
        if (exceptions.orbit(xi)) {
            ++skipped;
            continue;
        }
        ++points;
        double sum = 0;
        for (long j = -kLevels; j <= kLevels; ++j) sum += s(xi * pow(aq, j)).to_double();
        const double err = std::abs(sum - 1);
        worst = std::max(worst, err);
        if (err > kTol && c.status == Status::pass) {
            c.status = Status::fail;
            std::ostringstream lhs;
            lhs.precision(17);
            lhs << sum;
            c.witness = Witness{xi, std::nullopt, std::nullopt, lhs.str(), "1"};
        }
    }
    c.detail = std::to_string(points) + " points, |j| <= 40, max |sum - 1| = " + std::to_string(worst);
    if (skipped) c.detail += "; " + skipped_note(skipped);
    return c;
}

Check ntf_cross(const WaveletFamily& family, const std::vector<Rational>& grid, int bits) {
    bool disjoint = true;
    for (const auto& p : family.psis)
        if (per_multiplicity(p.support()).max() > 1) disjoint = false;
    if (disjoint) return {"cross-orbit", Status::pass, std::nullopt, std::nullopt,
                          "every psi support meets its 2k-translates in measure zero; all terms vanish"};
    const long a = family.dilation;
    const Rational aq(a, 1);
    const Rational radius = support_radius(family.psis);
    const long window = static_cast<long>(radius.ceil().get_si()) + 1;
    Tally tally("cross-orbit");
    const Exceptions exceptions(a, all_breakpoints(family.psis));
    std::size_t skipped = 0;
    const Enclosure zero(Rational(0));
    for (const auto& xi : grid) {
        if (xi.is_zero()) continue;
        for (long s = -window; s <= window; ++s) {
            if (in_lattice(s, a)) continue;
            if (exceptions.orbit(xi) || exceptions.orbit(xi + Rational(2 * s, 1))) {
                ++skipped;
                continue;
            }
            Enclosure sum(Rational(0));
            for (long j = 0; xi.abs() * pow(aq, j).abs() <= radius; ++j) {
                const Rational x = xi * pow(aq, j);
                sum += cross_sum(family.psis, x, x + Rational(2 * s, 1) * pow(aq, j), bits);
            }
            tally.record(within_tolerance(sum, default_tolerance()), sum, zero, xi, s);
        }
    }
    std::string note = "supports overlap their translates, evaluated on the grid";
    if (skipped) note += "; " + skipped_note(skipped);
    return tally.finish(note);
}

// ---- scaling/wavelet identities -----------------------------------------

struct IdentityNames {
    std::string outside_lattice, on_lattice;
};

void add_scaling_identities(VerificationReport& report, const ScalingFamily& phi, const WaveletFamily& psi,
                            const std::vector<Rational>& grid, long s_window, int bits, const IdentityNames& names) {
    const long a = phi.dilation;
    const Rational aq(a, 1);
    const auto phis = phi.profiles();
    if (s_window <= 0) s_window = default_s_window(phi, psi);
    Tally off(names.outside_lattice), on(names.on_lattice);
    const Rational tol = default_tolerance();
    auto breakpoints = all_breakpoints(phis);
    const auto psi_breakpoints = all_breakpoints(psi.psis);
    breakpoints.insert(breakpoints.end(), psi_breakpoints.begin(), psi_breakpoints.end());
    const Exceptions exceptions(a, std::move(breakpoints));
    std::size_t skipped = 0;
    for (const auto& xi : grid) {
        for (long s = -s_window; s <= s_window; ++s) {
            const Rational y = xi + Rational(2 * s, 1);
            if (exceptions.point(xi) || exceptions.point(y) || exceptions.point(xi / aq) ||
                exceptions.point(y / aq)) {
                ++skipped;
                continue;
            }
            const Enclosure p = cross_sum(phis, xi, y, bits);
            const Enclosure q = cross_sum(psi.psis, xi, y, bits);
            if (!in_lattice(s, a)) {
                const Enclosure lhs = -p;
                off.record(within_tolerance(lhs - q, tol), lhs, q, xi, s);
            } else {
                const Enclosure lhs = cross_sum(phis, xi / aq, y / aq, bits) - p;
                on.record(within_tolerance(lhs - q, tol), lhs, q, xi, s);
            }
        }
    }
    std::string window = "|s| <= " + std::to_string(s_window);
    if (skipped) window += "; " + skipped_note(skipped);
    report.add(off.finish(window));
    report.add(on.finish(window));
}

long exit_index(const PiecewiseLinear& p0, long a, const Rational& xi) {
    if (xi.is_zero() || p0.is_zero()) return 0;
    const Rational aq(a, 1);
    const Rational radius = p0.support().radius();
    long j = 0;
    while (xi.abs() * pow(aq, j).abs() <= radius) ++j;
    while (j > 0 && p0(xi * pow(aq, j - 1)).is_zero()) --j;
    return j;
}

Check decay_check(const std::string& name, const ScalingFamily& phi, const std::vector<Rational>& grid, long j_max) {
    const PiecewiseLinear p0 = sum_of_squares(phi.profiles());
    Check c{name, Status::pass, std::nullopt, std::nullopt, {}};
    long worst = 0;
    std::optional<Rational> worst_at;
    std::size_t points = 0;
    for (const auto& xi : grid) {
        if (xi.is_zero()) continue;
        ++points;
        const long e = exit_index(p0, phi.dilation, xi);
        if (!worst_at || e > worst) {
            worst = e;
            worst_at = xi;
        }
    }
    std::ostringstream d;
    d << points << " points, bounded support: sum |phi|^2(a^j xi) = 0 for j >= exit index";
    if (worst_at) d << "; max exit index " << worst << " at xi = " << worst_at->str();
    const std::string note = measure_zero_note(grid);
    if (!note.empty()) d << "; " << note;
    if (worst > j_max) {
        c.status = Status::uncertain;
        d << "; exceeds j_max = " << j_max;
    }
    c.detail = d.str();
    return c;
}

Check limit_at_zero(const std::string& name, const ScalingFamily& phi) {
    const PiecewiseLinear p0 = sum_of_squares(phi.profiles());
    const Rational l = p0.left_limit(Rational(0)), r = p0.right_limit(Rational(0));
    Check c{name, Status::pass, std::nullopt, std::nullopt,
            "one-sided limits of sum |phi|^2 at 0: " + l.str() + " (left), " + r.str() + " (right)"};
    if (l != Rational(1) || r != Rational(1)) {
        c.status = Status::fail;
        c.witness = Witness{Rational(0), std::nullopt, std::nullopt, "limits " + l.str() + ", " + r.str(), "1"};
    }
    return c;
}

}  // namespace

std::vector<Rational> default_grid(const WaveletFamily& psi, std::uint64_t seed) { return grid_for(psi.psis, seed); }

std::vector<Rational> default_grid(const ScalingFamily& phi, const WaveletFamily& psi, std::uint64_t seed) {
    auto all = phi.profiles();
    for (const auto& p : phi.profiles()) all.push_back(p.dilated(phi.dilation));
    all.insert(all.end(), psi.psis.begin(), psi.psis.end());
    return grid_for(all, seed);
}

VerificationReport check_ntf_multiwavelet(const WaveletFamily& psi, NtfMode mode, const std::vector<Rational>& grid,
                                          int bits) {
    require_dilation(psi.dilation);
    require_nonzero_grid(grid);
    VerificationReport report;
    const PiecewiseLinear s = sum_of_squares(psi.psis);
    report.add(mode == NtfMode::exact ? ntf_sum_exact(s, psi.dilation, grid)
                                      : ntf_sum_numeric(s, psi.dilation, grid));
    report.add(ntf_cross(psi, grid, bits));
    if (!psi.sigma.is_zero()) {
        const PiecewiseLinear d = dilation_difference({psi.sigma, psi.dilation});
        Check c{"telescoping", Status::pass, std::nullopt, std::nullopt,
                "sum |psi|^2 = sigma(xi/a) - sigma(xi) as piecewise-linear functions"};
        const PiecewiseLinear diff = s - d;
        if (!diff.is_zero()) {
            const auto& p = diff.pieces().front();
            const Rational x = midpoint(p.lo, p.hi);
            c.status = Status::fail;
            c.witness = Witness{x, std::nullopt, std::nullopt, s(x).str(), d(x).str()};
        }
        report.add(std::move(c));
    }
    return report;
}

long default_s_window(const ScalingFamily& phi, const WaveletFamily& psi) {
    const Rational r = max(support_radius(phi.profiles()), support_radius(psi.psis));
    return static_cast<long>((r * Rational(std::labs(phi.dilation), 1)).ceil().get_si()) + 1;
}

VerificationReport check_wavelets_from_scaling(const ScalingFamily& phi, const WaveletFamily& psi, const std::vector<Rational>& grid,
                               long s_window, int bits) {
    require_dilation(phi.dilation);
    if (psi.dilation != phi.dilation) throw ValidationError("families share the dilation", "scaling and wavelet a differ");
    require_nonzero_grid(grid);
    VerificationReport report;
    add_scaling_identities(report, phi, psi, grid, s_window, bits, {"cross-off-lattice", "cross-on-lattice"});
    return report;
}

long decay_exit_index(const ScalingFamily& phi, const Rational& xi) {
    return exit_index(sum_of_squares(phi.profiles()), phi.dilation, xi);
}

VerificationReport check_characterization(const ScalingFamily& phi, const WaveletFamily& psi, const std::vector<Rational>& grid,
                               long j_max, long s_window, int bits) {
    VerificationReport report = check_wavelets_from_scaling(phi, psi, grid, s_window, bits);
    report.add(decay_check("decay", phi, grid, j_max));
    return report;
}

VerificationReport check_sufficiency(const ScalingFamily& phi, const WaveletFamily& psi, const std::vector<Rational>& grid,
                               long s_window, int bits) {
    require_dilation(phi.dilation);
    if (psi.dilation != phi.dilation) throw ValidationError("families share the dilation", "scaling and wavelet a differ");
    require_nonzero_grid(grid);
    VerificationReport report;
    const PiecewiseLinear p0 = sum_of_squares(phi.profiles());
    report.add({"bounded-profiles", Status::pass, std::nullopt, std::nullopt,
                std::to_string(phi.phis.size()) + " bounded profiles, sum |phi|^2 <= " + p0.supremum().str()});
    add_scaling_identities(report, phi, psi, grid, s_window, bits, {"sufficient-off-lattice", "sufficient-on-lattice"});
    report.add(decay_check("sufficient-decay", phi, grid, 64));
    report.add(limit_at_zero("limit-at-zero", phi));
    return report;
}

VerificationReport check_density(const ScalingFamily& phi, const std::vector<Rational>& grid, long j_max) {
    require_dilation(phi.dilation);
    require_nonzero_grid(grid);
    VerificationReport report;
    report.add(limit_at_zero("density", phi));
    const PiecewiseLinear p0 = sum_of_squares(phi.profiles());
    const Rational aq(phi.dilation, 1);
    Check mono{"monotone-orbit", Status::pass, std::nullopt, std::nullopt, {}};
    std::size_t points = 0;
    for (const auto& xi : grid) {
        if (xi.is_zero()) continue;
        ++points;
        Rational prev = p0(xi);
        for (long j = 1; j <= j_max; ++j) {
            const Rational cur = p0(xi * pow(aq, -j));
            if (cur < prev) {
                mono.status = Status::fail;
                mono.witness = Witness{xi, std::nullopt, j, cur.str(), ">= " + prev.str()};
                break;
            }
            prev = cur;
        }
        if (mono.status == Status::fail) break;
    }
    mono.detail = std::to_string(points) + " points, sum |phi|^2(a^-j xi) nondecreasing for 0 <= j <= " +
                  std::to_string(j_max);
    report.add(std::move(mono));
    return report;
}

namespace {

/// Pieces of the line where `count` of the given intervals overlap, from a
/// sweep over their endpoints.
std::vector<std::pair<Interval, long>> coverage(const std::vector<Interval>& intervals) {
    std::vector<std::pair<Rational, long>> events;
    for (const auto& iv : intervals) {
        if (iv.empty()) continue;
        events.emplace_back(iv.lo, 1);
        events.emplace_back(iv.hi, -1);
    }
    std::sort(events.begin(), events.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<Interval, long>> out;
    long count = 0;
    for (std::size_t i = 0; i < events.size();) {
        const Rational x = events[i].first;
        while (i < events.size() && events[i].first == x) count += events[i++].second;
        if (i < events.size()) out.push_back({Interval{x, events[i].first}, count});
    }
    return out;
}

}  // namespace

VerificationReport check_waveletset(const std::vector<IntervalSet>& sets, long a, const Rational& window,
                                    long j_range) {
    require_dilation(a);
    if (!(window > Rational(0))) throw ValidationError("window positive", window.str());
    if (j_range < 0) throw ValidationError("j_range nonnegative", std::to_string(j_range));
    VerificationReport report;

    Check disjoint{"disjoint", Status::pass, std::nullopt, std::nullopt, "the sets are pairwise disjoint"};
    for (std::size_t i = 0; i < sets.size() && disjoint.status == Status::pass; ++i)
        for (std::size_t k = i + 1; k < sets.size(); ++k) {
            const IntervalSet both = sets[i].intersect(sets[k]);
            if (both.empty()) continue;
            const Interval& p = both.pieces().front();
            disjoint.status = Status::fail;
            disjoint.witness = Witness{midpoint(p.lo, p.hi), std::nullopt, std::nullopt,
                                       "E_" + std::to_string(i) + " and E_" + std::to_string(k) + " share " +
                                           both.str(),
                                       "empty"};
            break;
        }
    report.add(std::move(disjoint));

    Check translates{"translate-free", Status::pass, std::nullopt, std::nullopt,
                     "each set meets its 2k-translates (k != 0) in measure zero"};
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const FoldedMultiplicity m = per_multiplicity(sets[i]);
        if (m.max() <= 1) continue;
        const Interval where = m.at_least(2).pieces().front();
        const Rational xi = midpoint(where.lo, where.hi);
        std::vector<long> shifts;
        for (const auto& fp : fold(sets[i]))
            if (fp.folded.contains(xi)) shifts.push_back(fp.shift);
        const Rational point = xi + Rational(2 * shifts.at(0), 1);
        translates.status = Status::fail;
        translates.witness = Witness{point, shifts.at(1) - shifts.at(0), std::nullopt,
                                     "xi and xi + 2s both in E_" + std::to_string(i), "at most one"};
        break;
    }
    report.add(std::move(translates));

    Check tiling{"dilation-tiling", Status::pass, std::nullopt, std::nullopt, {}};
    const IntervalSet u = unite_all(sets);
    const Rational abs_a(std::labs(a), 1);
    const Rational eps = window * pow(abs_a, -j_range);
    if (u.empty()) {
        tiling.status = Status::fail;
        tiling.witness = Witness{window / Rational(2), std::nullopt, std::nullopt, "covered 0 times", "1"};
        tiling.detail = "the union is empty";
        report.add(std::move(tiling));
        return report;
    }
    if (u.distance_from_zero().is_zero()) {
        // Some piece [l, r) has l <= 0 <= r; x and a^2 x then both lie in it.
        const Interval p = *std::find_if(u.pieces().begin(), u.pieces().end(),
                                         [](const Interval& iv) { return iv.hi >= Rational(0); });
        const Rational a2 = abs_a * abs_a;
        const Rational x = p.hi > Rational(0) ? p.hi / (Rational(2) * a2) : p.lo / (Rational(2) * a2);
        tiling.status = Status::fail;
        tiling.witness = Witness{x, std::nullopt, std::nullopt, "covered by U and a^-2 U", "1"};
        tiling.detail = "the union touches 0";
        report.add(std::move(tiling));
        return report;
    }
    const IntervalSet region =
        IntervalSet::single(-window, -eps).unite(IntervalSet::single(eps, window));
    // Dilates a^j U meet the region only if |a|^j dist(U) < W and
    // |a|^j radius(U) > eps.
    long j_lo = 0, j_hi = 0;
    while (pow(abs_a, j_lo) * u.radius() > eps) --j_lo;
    while (pow(abs_a, j_hi) * u.distance_from_zero() < window) ++j_hi;
    std::vector<Interval> pieces;
    const Rational aq(a, 1);
    for (long j = j_lo; j <= j_hi; ++j) {
        const IntervalSet part = u.dilate(pow(aq, j)).intersect(region);
        pieces.insert(pieces.end(), part.pieces().begin(), part.pieces().end());
    }
    std::vector<Interval> overlaps, gaps;
    IntervalSet covered;
    for (const auto& [iv, count] : coverage(pieces)) {
        if (count > 1) overlaps.push_back(iv);
        if (count > 0) covered = covered.unite(IntervalSet::single(iv.lo, iv.hi));
    }
    const IntervalSet uncovered = region.subtract(covered);
    gaps = uncovered.pieces();
    std::ostringstream d;
    d << "dilates j in [" << j_lo << ", " << j_hi << "] on [-" << window.str() << ", " << window.str()
      << "] minus (-eps, eps), eps = " << eps.str() << "; untested gap measure " << (eps * Rational(2)).str();
    tiling.tail_bound = eps * Rational(2);
    auto near_u = [&](const std::vector<Interval>& list) {
        for (const auto& iv : list)
            if (!u.intersect(IntervalSet::single(iv.lo, iv.hi)).empty()) return iv;
        return list.front();
    };
    if (!overlaps.empty()) {
        const Interval w = near_u(overlaps);
        tiling.status = Status::fail;
        tiling.witness = Witness{midpoint(w.lo, w.hi), std::nullopt, std::nullopt,
                                 "covered at least twice on [" + w.lo.str() + ", " + w.hi.str() + ")", "1"};
        d << "; " << overlaps.size() << " overlap intervals";
    } else if (!gaps.empty()) {
        const Interval w = near_u(gaps);
        tiling.status = Status::fail;
        tiling.witness = Witness{midpoint(w.lo, w.hi), std::nullopt, std::nullopt,
                                 "covered 0 times on [" + w.lo.str() + ", " + w.hi.str() + ")", "1"};
        d << "; " << gaps.size() << " gap intervals";
    }
    tiling.detail = d.str();
    report.add(std::move(tiling));
    return report;
}

VerificationReport check_semiorthogonal(const WaveletFamily& psi) {
    require_dilation(psi.dilation);
    constexpr long kMaxLevel = 64;
    constexpr long kWindow = 8;
    constexpr double kThreshold = 1e-8;
    const long a = psi.dilation;
    const Rational aq(a, 1);
    VerificationReport report;
    Check c{"semiorthogonal", Status::pass, std::nullopt, std::nullopt, {}};
    struct Overlap {
        std::size_t i, k;
        long j;
        IntervalSet where;
    };
    std::optional<Overlap> first;
    bool capped = false;
    for (std::size_t i = 0; i < psi.psis.size() && !first; ++i)
        for (std::size_t k = 0; k < psi.psis.size() && !first; ++k) {
            const IntervalSet target = psi.psis[i].support(), source = psi.psis[k].support();
            if (target.empty() || source.empty()) continue;
            long j = 1;
            for (; j <= kMaxLevel; ++j) {
                const Rational scale = pow(aq, j);
                if (scale.abs() * source.distance_from_zero() >= target.radius()) break;
                const IntervalSet both = target.intersect(source.dilate(scale));
                if (!both.empty()) {
                    first = Overlap{i, k, j, both};
                    break;
                }
            }
            if (j > kMaxLevel) capped = true;
        }
    if (!first) {
        c.status = capped ? Status::uncertain : Status::pass;
        c.detail = capped ? "supports reach 0; no overlap found up to j = 64"
                          : "support(psi) and a^j support(psi') are disjoint for all pairs and j >= 1";
        report.add(std::move(c));
        return report;
    }
    // <D^j T_k psi', psi> = (1/2) |a|^{-j/2} integral psi'(a^-j q) psi(q) e^{-i pi k a^-j q} dq.
    const auto& target = psi.psis[first->i];
    const auto& source = psi.psis[first->k];
    const Rational c_inv = pow(aq, -first->j);
    const auto pieces = product_pieces(PiecewiseLinear::indicator(first->where),
                                       source.effective_square().compose_scale(c_inv), &target.effective_square());
    const double scale = 0.5 * std::pow(static_cast<double>(std::labs(a)), -0.5 * static_cast<double>(first->j));
    double best = 0;
    long best_k = 0;
    for (long k = -kWindow; k <= kWindow; ++k) {
        Complex sum;
        const double omega = -M_PI * static_cast<double>(k) * c_inv.to_double();
        for (const auto& p : pieces) sum += integrate_piece(p, omega, 1e-12);
        const double m = scale * std::abs(sum);
        if (m > best) {
            best = m;
            best_k = k;
        }
    }
    std::ostringstream d;
    d << "support(psi_" << first->i << ") meets a^" << first->j << " support(psi_" << first->k
      << ") on " << first->where.str() << "; max |<D^j T_k psi', psi>| over |k| <= " << kWindow << " is " << best;
    c.detail = d.str();
    if (best > kThreshold) {
        std::ostringstream lhs;
        lhs.precision(12);
        lhs << "|<D^" << first->j << " T_" << best_k << " psi_" << first->k << ", psi_" << first->i << ">| = " << best;
        const Interval& p = first->where.pieces().front();
        c.status = Status::fail;
        c.witness = Witness{midpoint(p.lo, p.hi), best_k, first->j, lhs.str(), "0"};
    } else {
        c.status = Status::uncertain;
    }
    report.add(std::move(c));
    return report;
}

}  // namespace framesmith
