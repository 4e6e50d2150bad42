#include "framesmith/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace framesmith {

namespace {

// Keeps the segments [p_i, p_{i+1}) of the merged endpoint list for which
// `keep(in_a, in_b)` holds. Both inputs must be canonical.
template <typename Keep>
IntervalSet combine(const IntervalSet& a, const IntervalSet& b, Keep keep) {
    std::vector<Rational> points = a.endpoints();
    const auto pb = b.endpoints();
    points.insert(points.end(), pb.begin(), pb.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<Interval> out;
    std::size_t ia = 0, ib = 0;
    const auto& A = a.pieces();
    const auto& B = b.pieces();
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const Rational& x = points[i];
        while (ia < A.size() && A[ia].hi <= x) ++ia;
        while (ib < B.size() && B[ib].hi <= x) ++ib;
        const bool in_a = ia < A.size() && A[ia].lo <= x;
        const bool in_b = ib < B.size() && B[ib].lo <= x;
        if (keep(in_a, in_b)) out.push_back({x, points[i + 1]});
    }
    return IntervalSet(std::move(out));
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> pieces) {
    std::erase_if(pieces, [](const Interval& p) { return p.empty(); });
    std::sort(pieces.begin(), pieces.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    for (auto& p : pieces) {
        if (!pieces_.empty() && p.lo <= pieces_.back().hi) {
            if (pieces_.back().hi < p.hi) pieces_.back().hi = std::move(p.hi);
        } else {
            pieces_.push_back(std::move(p));
        }
    }
}

bool IntervalSet::contains(const Rational& x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Rational& v, const Interval& p) { return v < p.lo; });
    if (it == pieces_.begin()) return false;
    return std::prev(it)->contains(x);
}

Rational IntervalSet::measure() const {
    Rational m;
    for (const auto& p : pieces_) m += p.length();
    return m;
}

Interval IntervalSet::hull() const {
    if (pieces_.empty()) throw std::logic_error("IntervalSet::hull of empty set");
    return {pieces_.front().lo, pieces_.back().hi};
}

Rational IntervalSet::radius() const {
    if (pieces_.empty()) return Rational(0);
    return max(pieces_.front().lo.abs(), pieces_.back().hi.abs());
}

Rational IntervalSet::distance_from_zero() const {
    if (pieces_.empty()) return Rational(0);
    Rational best = radius();
    for (const auto& p : pieces_) {
        if (p.lo <= Rational(0) && Rational(0) <= p.hi) return Rational(0);
        best = min(best, min(p.lo.abs(), p.hi.abs()));
    }
    return best;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all = pieces_;
    all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
    return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    return combine(*this, other, [](bool x, bool y) { return x && y; });
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const {
    return combine(*this, other, [](bool x, bool y) { return x && !y; });
}

IntervalSet IntervalSet::translate(const Rational& t) const {
    IntervalSet out;
    out.pieces_.reserve(pieces_.size());
    for (const auto& p : pieces_) out.pieces_.push_back({p.lo + t, p.hi + t});
    return out;
}

IntervalSet IntervalSet::dilate(const Rational& c) const {
    if (c.is_zero()) throw std::domain_error("IntervalSet::dilate by zero");
    std::vector<Interval> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) {
        if (c.sign() > 0)
            out.push_back({p.lo * c, p.hi * c});
        else
            out.push_back({p.hi * c, p.lo * c});
    }
    return IntervalSet(std::move(out));
}

std::vector<Rational> IntervalSet::endpoints() const {
    std::vector<Rational> out;
    out.reserve(2 * pieces_.size());
    for (const auto& p : pieces_) {
        out.push_back(p.lo);
        out.push_back(p.hi);
    }
    return out;
}

std::string IntervalSet::str() const {
    if (pieces_.empty()) return "{}";
    std::string s;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (i) s += " u ";
        s += "[" + pieces_[i].lo.str() + ", " + pieces_[i].hi.str() + ")";
    }
    return s;
}

IntervalSet unite_all(std::span<const IntervalSet> sets) {
    std::vector<Interval> all;
    for (const auto& s : sets) all.insert(all.end(), s.pieces().begin(), s.pieces().end());
    return IntervalSet(std::move(all));
}

}  // namespace framesmith
