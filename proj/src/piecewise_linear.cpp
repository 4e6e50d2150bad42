#include "framesmith/piecewise_linear.hpp"

#include <algorithm>
#include <stdexcept>

#include "framesmith/errors.hpp"

namespace framesmith {

namespace {

std::vector<LinearPiece> canonicalize(std::vector<LinearPiece> pieces) {
    std::vector<LinearPiece> out;
    for (auto& p : pieces) {
        if (p.is_zero()) continue;
        if (!out.empty() && out.back().hi == p.lo && out.back().slope == p.slope &&
            out.back().intercept == p.intercept) {
            out.back().hi = std::move(p.hi);
        } else {
            out.push_back(std::move(p));
        }
    }
    return out;
}

// Index of the piece containing x (lo <= x < hi), or -1.
long find_piece(const std::vector<LinearPiece>& pieces, const Rational& x) {
    auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                               [](const Rational& v, const LinearPiece& p) { return v < p.lo; });
    if (it == pieces.begin()) return -1;
    --it;
    return x < it->hi ? static_cast<long>(it - pieces.begin()) : -1;
}

template <typename Op>
PiecewiseLinear combine(const PiecewiseLinear& f, const PiecewiseLinear& g, Op op) {
    std::vector<Rational> points = f.breakpoints();
    const auto pg = g.breakpoints();
    points.insert(points.end(), pg.begin(), pg.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    const auto& F = f.pieces();
    const auto& G = g.pieces();
    std::size_t i_f = 0, i_g = 0;
    std::vector<LinearPiece> out;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const Rational& x = points[i];
        while (i_f < F.size() && F[i_f].hi <= x) ++i_f;
        while (i_g < G.size() && G[i_g].hi <= x) ++i_g;
        Rational sf, bf, sg, bg;
        if (i_f < F.size() && F[i_f].lo <= x) { sf = F[i_f].slope; bf = F[i_f].intercept; }
        if (i_g < G.size() && G[i_g].lo <= x) { sg = G[i_g].slope; bg = G[i_g].intercept; }
        out.push_back({x, points[i + 1], op(sf, sg), op(bf, bg)});
    }
    return PiecewiseLinear(std::move(out));
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<LinearPiece> pieces) {
    std::sort(pieces.begin(), pieces.end(), [](const LinearPiece& a, const LinearPiece& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!(pieces[i].lo < pieces[i].hi))
            throw ValidationError("piece nonempty", "[" + pieces[i].lo.str() + ", " + pieces[i].hi.str() + ")");
        if (i > 0 && pieces[i].lo < pieces[i - 1].hi)
            throw ValidationError("pieces disjoint", "overlap at " + pieces[i].lo.str());
    }
    pieces_ = canonicalize(std::move(pieces));
}

PiecewiseLinear PiecewiseLinear::indicator(const IntervalSet& set) { return affine_on(set, Rational(0), Rational(1)); }

PiecewiseLinear PiecewiseLinear::affine_on(const IntervalSet& set, const Rational& slope, const Rational& intercept) {
    std::vector<LinearPiece> pieces;
    for (const auto& p : set.pieces()) pieces.push_back({p.lo, p.hi, slope, intercept});
    return PiecewiseLinear(std::move(pieces));
}

Rational PiecewiseLinear::value(const Rational& x) const {
    const long i = find_piece(pieces_, x);
    return i < 0 ? Rational(0) : pieces_[static_cast<std::size_t>(i)].at(x);
}

Rational PiecewiseLinear::left_limit(const Rational& x) const {
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                               [](const LinearPiece& p, const Rational& v) { return p.lo < v; });
    // `it` is the first piece with lo >= x; the candidate is the one before it.
    if (it == pieces_.begin()) return Rational(0);
    --it;
    return x <= it->hi ? it->at(x) : Rational(0);
}

IntervalSet PiecewiseLinear::support() const {
    std::vector<Interval> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back({p.lo, p.hi});
    return IntervalSet(std::move(out));
}

std::vector<Rational> PiecewiseLinear::breakpoints() const {
    std::vector<Rational> out;
    for (const auto& p : pieces_) {
        if (out.empty() || out.back() != p.lo) out.push_back(p.lo);
        out.push_back(p.hi);
    }
    return out;
}

PiecewiseLinear PiecewiseLinear::compose_scale(const Rational& c) const {
    if (c.is_zero()) throw std::domain_error("PiecewiseLinear::compose_scale by zero");
    std::vector<LinearPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) {
        if (c.sign() > 0)
            out.push_back({p.lo / c, p.hi / c, p.slope * c, p.intercept});
        else
            out.push_back({p.hi / c, p.lo / c, p.slope * c, p.intercept});
    }
    return PiecewiseLinear(std::move(out));
}

PiecewiseLinear PiecewiseLinear::compose_shift(const Rational& t) const {
    std::vector<LinearPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back({p.lo - t, p.hi - t, p.slope, p.intercept + p.slope * t});
    return PiecewiseLinear(std::move(out));
}

PiecewiseLinear PiecewiseLinear::scaled(const Rational& c) const {
    std::vector<LinearPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back({p.lo, p.hi, p.slope * c, p.intercept * c});
    return PiecewiseLinear(std::move(out));
}

PiecewiseLinear PiecewiseLinear::restricted(const IntervalSet& set) const {
    std::vector<LinearPiece> out;
    const auto& S = set.pieces();
    std::size_t j = 0;
    for (const auto& p : pieces_) {
        while (j < S.size() && S[j].hi <= p.lo) ++j;
        for (std::size_t k = j; k < S.size() && S[k].lo < p.hi; ++k) {
            Rational lo = max(p.lo, S[k].lo);
            Rational hi = min(p.hi, S[k].hi);
            if (lo < hi) out.push_back({std::move(lo), std::move(hi), p.slope, p.intercept});
        }
    }
    return PiecewiseLinear(std::move(out));
}

PiecewiseLinear PiecewiseLinear::positive_part() const {
    std::vector<LinearPiece> out;
    for (const auto& p : pieces_) {
        const Rational vl = p.at(p.lo);
        const Rational vh = p.at(p.hi);
        if (vl.sign() >= 0 && vh.sign() >= 0) {
            out.push_back(p);
        } else if (vl.sign() > 0 || vh.sign() > 0) {
            const Rational root = -p.intercept / p.slope;
            if (vl.sign() > 0)
                out.push_back({p.lo, root, p.slope, p.intercept});
            else
                out.push_back({root, p.hi, p.slope, p.intercept});
        }
    }
    return PiecewiseLinear(std::move(out));
}

PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    return combine(f, g, [](const Rational& a, const Rational& b) { return a + b; });
}

PiecewiseLinear operator-(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    return combine(f, g, [](const Rational& a, const Rational& b) { return a - b; });
}

std::optional<Rational> PiecewiseLinear::negative_witness() const {
    for (const auto& p : pieces_) {
        const Rational vl = p.at(p.lo);
        if (vl.sign() < 0) return p.lo;
        const Rational vh = p.at(p.hi);
        if (vh.sign() < 0) {
            // vl >= 0 > vh: the root lies in [lo, hi); every point after it is negative.
            const Rational root = -p.intercept / p.slope;
            return midpoint(root, p.hi);
        }
    }
    return std::nullopt;
}

Rational PiecewiseLinear::supremum() const {
    Rational best(0);
    for (const auto& p : pieces_) best = max(best, max(p.at(p.lo), p.at(p.hi)));
    return best;
}

Rational PiecewiseLinear::integral() const {
    Rational total;
    for (const auto& p : pieces_)
        total += p.slope * (p.hi * p.hi - p.lo * p.lo) / Rational(2) + p.intercept * (p.hi - p.lo);
    return total;
}

Rational PiecewiseLinear::integral_of_square() const {
    Rational total;
    for (const auto& p : pieces_) {
        const Rational h3 = p.hi * p.hi * p.hi - p.lo * p.lo * p.lo;
        const Rational h2 = p.hi * p.hi - p.lo * p.lo;
        total += p.slope * p.slope * h3 / Rational(3) + p.slope * p.intercept * h2 +
                 p.intercept * p.intercept * (p.hi - p.lo);
    }
    return total;
}

std::string PiecewiseLinear::str() const {
    if (pieces_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (i) s += "; ";
        s += "[" + p.lo.str() + ", " + p.hi.str() + "): " + p.slope.str() + "*x + " + p.intercept.str();
    }
    return s;
}

}  // namespace framesmith
