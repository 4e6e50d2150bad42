#include "framesmith/trace.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace framesmith {

namespace {

const Gaussian kZero{Rational(0), Rational(0)};

// Keeps endpoint sizes bounded after long sums.
constexpr int kGuardBits = 16;

Rational floor_div2(const Rational& x) { return Rational(Rational(x / Rational(2)).floor()); }

long to_long(const mpz_class& z) { return z.get_si(); }

// Parses "p", "p/q", "i", "-i", "3/2i", "1+2i", "1/3-i".
Gaussian parse_gaussian(std::string_view text, std::string_view full) {
    if (text.empty()) throw ParseError("empty sequence value", std::string(full));
    auto imaginary = [&](std::string_view t) -> Rational {
        if (t.empty() || t == "+") return Rational(1);
        if (t == "-") return Rational(-1);
        return Rational::parse(t);
    };
    if (text.back() != 'i') return {Rational::parse(text), Rational(0)};
    const std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not leading.
    std::size_t split = std::string_view::npos;
    for (std::size_t p = body.size(); p-- > 1;)
        if (body[p] == '+' || body[p] == '-') {
            split = p;
            break;
        }
    if (split == std::string_view::npos) return {Rational(0), imaginary(body)};
    return {Rational::parse(body.substr(0, split)), imaginary(body.substr(split))};
}

std::string strip(std::string_view s) {
    std::string out;
    for (char c : s)
        if (c != ' ' && c != '\t') out.push_back(c);
    return out;
}

Enclosure real_part(const ComplexEnclosure& z) { return z.re; }

}  // namespace

std::string Gaussian::str() const {
    if (im.is_zero()) return re.str();
    const std::string imag = (im == Rational(1) ? "" : im == Rational(-1) ? "-" : im.str()) + "i";
    if (re.is_zero()) return imag;
    return re.str() + (im.sign() > 0 ? "+" : "") + imag;
}

Sequence Sequence::delta(long k, Gaussian value) {
    Sequence s;
    s.set(k, value);
    return s;
}

Sequence Sequence::parse(std::string_view text) {
    const std::string clean = strip(text);
    Sequence out;
    std::string_view rest = clean;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        const auto at = item.find('@');
        if (at == std::string_view::npos) throw ParseError("expected value@index", std::string(item));
        long k = 0;
        try {
            std::size_t used = 0;
            const std::string index(item.substr(at + 1));
            k = std::stol(index, &used);
            if (used != index.size()) throw ParseError("bad index", std::string(item));
        } catch (const std::logic_error&) {
            throw ParseError("bad index", std::string(item));
        }
        out.set(k, out.at(k) + parse_gaussian(item.substr(0, at), item));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

void Sequence::set(long k, const Gaussian& v) {
    if (v.is_zero())
        entries_.erase(k);
    else
        entries_[k] = v;
}

Gaussian Sequence::at(long k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? kZero : it->second;
}

Rational Sequence::norm_squared() const {
    Rational total;
    for (const auto& [k, v] : entries_) total += v.norm();
    return total;
}

Gaussian inner(const Sequence& f, const Sequence& g) {
    Gaussian total = kZero;
    for (const auto& [k, v] : f.entries_) {
        auto it = g.entries_.find(k);
        if (it != g.entries_.end()) total = total + v * it->second.conj();
    }
    return total;
}

Sequence operator+(const Sequence& f, const Sequence& g) {
    Sequence out = f;
    for (const auto& [k, v] : g.entries_) out.set(k, out.at(k) + v);
    return out;
}

Sequence operator-(const Sequence& f, const Sequence& g) {
    Sequence out = f;
    for (const auto& [k, v] : g.entries_) out.set(k, out.at(k) - v);
    return out;
}

std::string Sequence::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : entries_) {
        if (!first) os << ',';
        first = false;
        os << v.str() << '@' << k;
    }
    return os.str();
}

ComplexEnclosure Generator::value_at(const Rational& xi, int bits) const {
    const Enclosure modulus = profile.value_at(xi, bits);
    if (shift.is_zero()) return {modulus, Enclosure(Rational(0))};
    const ComplexEnclosure phase = unit_phase(shift * xi, bits);
    return {phase.re * modulus, phase.im * modulus};
}

ComplexEnclosure cross_value(const Generator& g, const Rational& x, const Generator& h, const Rational& y, int bits) {
    const Enclosure modulus = profile_product(g.profile, x, h.profile, y, bits);
    if (modulus.is_exact() && modulus.lo().is_zero()) return {Enclosure(Rational(0)), Enclosure(Rational(0))};
    const Rational phase = g.shift * x - h.shift * y;
    if (phase.is_zero()) return {modulus, Enclosure(Rational(0))};
    const ComplexEnclosure p = unit_phase(phase, bits);
    return {p.re * modulus, p.im * modulus};
}

Rational GeneratorSet::radius() const {
    Rational r;
    for (const auto& g : generators)
        if (!g.profile.is_zero()) r = max(r, g.profile.support().radius());
    return r;
}

std::vector<Rational> GeneratorSet::breakpoints() const {
    std::vector<Rational> out;
    for (const auto& g : generators) {
        const auto b = g.profile.effective_square().breakpoints();
        out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GeneratorSet generators_of(const ScalingFamily& family) {
    GeneratorSet out{family.dilation, {}};
    for (const auto& [k, phi] : family.phis) out.generators.push_back({phi, Rational(0)});
    return out;
}

GeneratorSet generators_of(const WaveletFamily& family) {
    GeneratorSet out{family.dilation, {}};
    for (const auto& psi : family.psis) out.generators.push_back({psi, Rational(0)});
    return out;
}

GeneratorSet dilated_generators(const GeneratorSet& set) {
    require_dilation(set.dilation);
    const long a = set.dilation;
    GeneratorSet out{a, {}};
    for (const auto& g : set.generators) {
        const SqrtProfile dilated = g.profile.dilated(a);
        // (D_A T_d g)^(xi) = |a|^{-1/2} e^{-i pi (t + d) xi / a} g0(xi / a).
        for (long d = 0; d < std::labs(a); ++d)
            out.generators.push_back({dilated, (g.shift + Rational(d)) / Rational(a)});
    }
    return out;
}

std::map<long, FiberValue> fiber(const Generator& g, const Rational& xi) {
    std::map<long, FiberValue> out;
    if (g.profile.is_zero()) return out;
    const Interval hull = g.profile.support().hull();
    const long first = to_long(Rational((hull.lo - xi) / Rational(2)).ceil());
    const long last = to_long(floor_div2(hull.hi - xi).floor());
    for (long k = first; k <= last; ++k) {
        const Rational x = xi + Rational(2 * k);
        const Rational r = g.profile.squared_at(x);
        if (!r.is_zero()) out.emplace(k, FiberValue{r, g.shift * x});
    }
    return out;
}

std::map<long, ComplexEnclosure> fiber_enclosure(const Generator& g, const Rational& xi, int bits) {
    std::map<long, ComplexEnclosure> out;
    for (const auto& [k, v] : fiber(g, xi)) {
        const Enclosure m = sqrt_enclosure(v.radicand, bits);
        if (v.phase.is_zero()) {
            out.emplace(k, ComplexEnclosure{m, Enclosure(Rational(0))});
        } else {
            const ComplexEnclosure p = unit_phase(v.phase, bits);
            out.emplace(k, ComplexEnclosure{p.re * m, p.im * m});
        }
    }
    return out;
}

Enclosure restricted_trace(const GeneratorSet& set, const Sequence& f, const Rational& xi, int bits) {
    // |sum_k f(k) conj v_k|^2 = sum_{k,m} f(k) conj f(m) v_m conj v_k,
    // expanded so products of equal square roots stay exact.
    ComplexEnclosure total;
    for (const auto& g : set.generators) {
        const auto fib = fiber(g, xi);
        std::vector<std::pair<long, Gaussian>> terms;
        for (const auto& [k, v] : f.entries())
            if (fib.count(k)) terms.emplace_back(k, v);
        for (const auto& [k, fk] : terms)
            for (const auto& [m, fm] : terms) {
                const Gaussian w = fk * fm.conj();
                const Rational xk = xi + Rational(2 * k), xm = xi + Rational(2 * m);
                total += w.enclosure() * cross_value(g, xm, g, xk, bits);
            }
        total = total.rounded(bits + kGuardBits);
    }
    return real_part(total);
}

Enclosure spectral_function(const GeneratorSet& set, const Rational& xi, int bits) {
    return restricted_trace(set, Sequence::delta(0), xi, bits);
}

WindowOperator::WindowOperator(long first, std::vector<std::vector<Gaussian>> matrix, Padding padding)
    : first_(first), matrix_(std::move(matrix)), padding_(padding) {
    const std::size_t n = matrix_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix_[i].size() != n)
            throw ValidationError("operator matrix square", "row " + std::to_string(i) + " has " +
                                                                std::to_string(matrix_[i].size()) + " entries, expected " +
                                                                std::to_string(n));
        for (std::size_t j = 0; j <= i; ++j)
            if (matrix_[i][j] != matrix_[j][i].conj())
                throw ValidationError("operator Hermitian",
                                      "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                          matrix_[i][j].str() + " vs conjugate of " + matrix_[j][i].str());
    }
}

WindowOperator WindowOperator::identity(long first, long n) {
    std::vector<std::vector<Gaussian>> m(n, std::vector<Gaussian>(n, kZero));
    for (long i = 0; i < n; ++i) m[i][i] = {Rational(1), Rational(0)};
    return WindowOperator(first, std::move(m));
}

std::optional<std::vector<Gaussian>> WindowOperator::negative_direction() const {
    const std::size_t n = matrix_.size();
    std::vector<std::vector<Gaussian>> S = matrix_;
    // Unit lower-triangular factor; column i is filled when pivot i is eliminated.
    std::vector<std::vector<Gaussian>> L(n, std::vector<Gaussian>(n, kZero));
    for (std::size_t i = 0; i < n; ++i) L[i][i] = {Rational(1), Rational(0)};

    // x = L^{-*} y, so that x* M x = y* (D + S) y for y supported on the
    // not-yet-eliminated indices.
    auto pull_back = [&](std::vector<Gaussian> y) {
        for (std::size_t k = n; k-- > 0;)
            for (std::size_t j = k + 1; j < n; ++j) y[k] = y[k] - L[j][k].conj() * y[j];
        return y;
    };

    for (std::size_t i = 0; i < n; ++i) {
        const Rational pivot = S[i][i].re;
        if (pivot.sign() < 0) {
            std::vector<Gaussian> y(n, kZero);
            y[i] = {Rational(1), Rational(0)};
            return pull_back(std::move(y));
        }
        if (pivot.is_zero()) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Gaussian c = S[j][i];
                if (c.is_zero()) continue;
                // y = e_j + t e_i with t = -conj(c) m gives y* S y = S_jj - 2 m |c|^2 < 0.
                const Rational m = (S[j][j].re.abs() + Rational(1)) / c.norm();
                std::vector<Gaussian> y(n, kZero);
                y[j] = {Rational(1), Rational(0)};
                y[i] = {-c.re * m, c.im * m};
                return pull_back(std::move(y));
            }
            continue;
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const Gaussian lji{S[j][i].re / pivot, S[j][i].im / pivot};
            L[j][i] = lji;
            for (std::size_t k = i + 1; k < n; ++k) S[j][k] = S[j][k] - lji * S[i][k];
        }
        for (std::size_t j = i + 1; j < n; ++j) S[j][i] = S[i][j] = kZero;
    }
    return std::nullopt;
}

NotPositiveOperator::NotPositiveOperator(std::vector<Gaussian> witness)
    : ValidationError("operator positive semidefinite",
                      [&] {
                          std::string s = "x* T x < 0 for x = (";
                          for (std::size_t i = 0; i < witness.size(); ++i) s += (i ? ", " : "") + witness[i].str();
                          return s + ")";
                      }()),
      witness_(std::move(witness)) {}

Enclosure operator_trace(const GeneratorSet& set, const WindowOperator& T, const Rational& xi, int bits) {
    if (auto w = T.negative_direction()) throw NotPositiveOperator(std::move(*w));
    ComplexEnclosure total;
    const long lo = T.first(), hi = T.first() + T.size();
    for (const auto& g : set.generators) {
        const auto fib = fiber(g, xi);
        std::vector<long> inside;
        for (const auto& [k, v] : fib) {
            if (k >= lo && k < hi) {
                inside.push_back(k);
            } else if (T.padding() == WindowOperator::Padding::identity) {
                total += ComplexEnclosure{Enclosure(v.radicand), Enclosure(Rational(0))};
            }
        }
        // <T v, v> = sum_{i,j} T_ij v_j conj v_i.
        for (long i : inside)
            for (long j : inside) {
                const Gaussian& t = T.entry(i - lo, j - lo);
                if (t.is_zero()) continue;
                total += t.enclosure() * cross_value(g, xi + Rational(2 * j), g, xi + Rational(2 * i), bits);
            }
        total = total.rounded(bits + kGuardBits);
    }
    return real_part(total);
}

Enclosure dimension_function(const GeneratorSet& set, const Rational& xi, int bits) {
    return operator_trace(set, WindowOperator::full_identity(), xi, bits);
}

namespace {

void require_residue(long a, long d) {
    require_dilation(a);
    if (d < 0 || d >= std::labs(a))
        throw ValidationError("coset residue 0 <= d < |a|", "d = " + std::to_string(d) + ", a = " + std::to_string(a));
}

// Exact division test; a may be negative.
bool divides(long a, long x, long& quotient) {
    if (x % a != 0) return false;
    quotient = x / a;
    return true;
}

}  // namespace

Sequence coset_op(long a, long d, const Sequence& alpha) {
    require_residue(a, d);
    Sequence out;
    for (const auto& [l, v] : alpha.entries()) out.set(d + a * l, v);
    return out;
}

Sequence coset_op_adjoint(long a, long d, const Sequence& beta) {
    require_residue(a, d);
    Sequence out;
    for (const auto& [k, v] : beta.entries()) {
        long l = 0;
        if (divides(a, k - d, l)) out.set(l, v);
    }
    return out;
}

namespace {

class Comparator {
public:
    explicit Comparator(Rational tol) : tol_(std::move(tol)) {}

    void add(const Rational& xi, const Enclosure& lhs, const Enclosure& rhs, const std::string& context = {}) {
        const Enclosure diff = lhs - rhs;
        const Status s = within_tolerance(diff, tol_);
        ++out_.points;
        out_.max_discrepancy = max(out_.max_discrepancy, diff.magnitude());
        const bool first_fail = s == Status::fail && out_.status != Status::fail;
        const bool first_uncertain = s == Status::uncertain && out_.status == Status::pass;
        if (first_fail || first_uncertain) {
            out_.witness = xi;
            out_.detail = (context.empty() ? "" : context + ": ") + "lhs " + lhs.str() + ", rhs " + rhs.str() +
                          " at xi = " + xi.str();
        }
        out_.status = combine(out_.status, s);
    }

    TraceComparison result() const { return out_; }

private:
    Rational tol_;
    TraceComparison out_;
};

}  // namespace

TraceComparison dilation_trace_check(const GeneratorSet& set, const Sequence& f, const std::vector<Rational>& grid,
                                     int bits, const Rational& tol) {
    const long a = set.dilation;
    const GeneratorSet dilated = dilated_generators(set);
    std::vector<Sequence> pulled;
    for (long d = 0; d < std::labs(a); ++d) pulled.push_back(coset_op_adjoint(a, d, f));
    Comparator cmp(tol);
    for (const auto& xi : grid) {
        const Enclosure lhs = restricted_trace(dilated, f, xi, bits);
        Enclosure rhs(Rational(0));
        for (long d = 0; d < std::labs(a); ++d)
            if (!pulled[d].empty()) rhs += restricted_trace(set, pulled[d], (xi + Rational(2 * d)) / Rational(a), bits);
        cmp.add(xi, lhs, rhs);
    }
    return cmp.result();
}

TraceComparison ntf_generator_test(const GeneratorSet& set, const GeneratorSet& reference,
                                   const std::vector<Rational>& grid, long l_max, int bits, const Rational& tol) {
    if (l_max <= 0) l_max = to_long(max(set.radius(), reference.radius()).ceil()) + 1;
    const Gaussian one{Rational(1), Rational(0)}, i{Rational(0), Rational(1)};
    Comparator cmp(tol);
    auto compare = [&](const Sequence& f, const std::string& label) {
        for (const auto& xi : grid)
            cmp.add(xi, restricted_trace(set, f, xi, bits), restricted_trace(reference, f, xi, bits), label);
    };
    compare(Sequence::delta(0), "alpha = 0");
    for (const auto& [alpha, name] : {std::pair{one, "1"}, std::pair{i, "i"}})
        for (long l = -l_max; l <= l_max; ++l) {
            if (l == 0) continue;
            Sequence f = Sequence::delta(0);
            f.set(l, alpha);
            compare(f, std::string("alpha = ") + name + ", l = " + std::to_string(l));
        }
    return cmp.result();
}

TraceComparison series_identity_check(const GeneratorSet& scaling, const GeneratorSet& wavelets, long s,
                                      const std::vector<Rational>& grid, int bits, const Rational& tol) {
    const Rational R = wavelets.radius();
    const Rational a(scaling.dilation);
    Comparator cmp(tol);
    for (const auto& xi : grid) {
        const Rational eta = xi + Rational(2 * s);
        ComplexEnclosure lhs;
        Rational x = xi * a, y = eta * a;
        while (x.abs() <= R && y.abs() <= R) {
            for (const auto& psi : wavelets.generators) lhs += cross_value(psi, x, psi, y, bits);
            lhs = lhs.rounded(bits + kGuardBits);
            x *= a;
            y *= a;
        }
        ComplexEnclosure rhs;
        for (const auto& phi : scaling.generators) rhs += cross_value(phi, xi, phi, eta, bits);
        // Both sides are real for phase-free families; compare the full complex value.
        cmp.add(xi, lhs.re, rhs.re, "s = " + std::to_string(s) + " (real part)");
        cmp.add(xi, lhs.im, rhs.im, "s = " + std::to_string(s) + " (imaginary part)");
    }
    auto out = cmp.result();
    out.points = grid.size();
    return out;
}

AdditivityReport additivity_check(const GeneratorSet& scaling, const GeneratorSet& wavelets, const Sequence& f,
                                  const std::vector<Rational>& grid, int bits, const Rational& tol) {
    const GeneratorSet fine = dilated_generators(scaling);
    Comparator cmp(tol);
    AdditivityReport out;
    for (const auto& xi : grid) {
        const Enclosure v1 = restricted_trace(fine, f, xi, bits);
        const Enclosure v0 = restricted_trace(scaling, f, xi, bits);
        const Enclosure w0 = restricted_trace(wavelets, f, xi, bits);
        cmp.add(xi, v1, v0 + w0);
        const Enclosure gap = v1 - v0;
        Status s = Status::pass;
        if (gap.hi() < -tol)
            s = Status::fail;
        else if (gap.lo() < -tol)
            s = Status::uncertain;
        if (s != Status::pass && !out.monotone_witness) out.monotone_witness = xi;
        out.monotone = combine(out.monotone, s);
    }
    out.additivity = cmp.result();
    return out;
}

}  // namespace framesmith
