#include "framesmith/folding.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace framesmith {

namespace {

long window_of(const Rational& x) {
    // Window k is [2k - 1, 2k + 1).
    return mpz_class(Rational((x + Rational(1)) / Rational(2)).floor()).get_si();
}

std::vector<Rational> fundamental_breakpoints(const std::vector<FoldedPiece>& folded) {
    std::vector<Rational> points{Rational(-1), Rational(1)};
    for (const auto& f : folded) {
        points.push_back(f.folded.lo);
        points.push_back(f.folded.hi);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

}  // namespace

Rational reduce_to_fundamental(const Rational& xi) {
    return xi - Rational(2 * window_of(xi));
}

std::vector<FoldedPiece> fold(const IntervalSet& set) {
    std::vector<FoldedPiece> out;
    for (const auto& piece : set.pieces()) {
        Rational lo = piece.lo;
        long k = window_of(lo);
        while (lo < piece.hi) {
            const Rational window_hi(2 * k + 1);
            const Rational hi = min(piece.hi, window_hi);
            const Rational shift(2 * k);
            out.push_back({{lo - shift, hi - shift}, k});
            lo = window_hi;
            ++k;
        }
    }
    std::sort(out.begin(), out.end(), [](const FoldedPiece& a, const FoldedPiece& b) {
        return a.shift != b.shift ? a.shift < b.shift : a.folded.lo < b.folded.lo;
    });
    return out;
}

FoldedMultiplicity::FoldedMultiplicity(std::vector<Level> levels) {
    for (auto& level : levels) {
        if (level.where.empty()) continue;
        if (!levels_.empty()) {
            if (levels_.back().where.hi != level.where.lo)
                throw std::invalid_argument("FoldedMultiplicity: levels must tile [-1, 1)");
            if (levels_.back().count == level.count) {
                levels_.back().where.hi = level.where.hi;
                continue;
            }
        }
        levels_.push_back(std::move(level));
    }
    if (levels_.empty() || levels_.front().where.lo != Rational(-1) || levels_.back().where.hi != Rational(1))
        throw std::invalid_argument("FoldedMultiplicity: levels must tile [-1, 1)");
}

long FoldedMultiplicity::at(const Rational& xi) const {
    const Rational r = reduce_to_fundamental(xi);
    for (const auto& level : levels_)
        if (level.where.contains(r)) return level.count;
    return 0;
}

long FoldedMultiplicity::max() const {
    long best = 0;
    for (const auto& level : levels_) best = std::max(best, level.count);
    return best;
}

IntervalSet FoldedMultiplicity::at_least(long m) const {
    std::vector<Interval> out;
    for (const auto& level : levels_)
        if (level.count >= m) out.push_back(level.where);
    return IntervalSet(std::move(out));
}

IntervalSet FoldedMultiplicity::exactly(long m) const {
    std::vector<Interval> out;
    for (const auto& level : levels_)
        if (level.count == m) out.push_back(level.where);
    return IntervalSet(std::move(out));
}

Rational FoldedMultiplicity::integral() const {
    Rational total;
    for (const auto& level : levels_) total += Rational(level.count) * level.where.length();
    return total;
}

FoldedMultiplicity per_multiplicity(const IntervalSet& K) {
    const auto folded = fold(K);
    std::map<Rational, long> delta;
    for (const auto& f : folded) {
        delta[f.folded.lo] += 1;
        delta[f.folded.hi] -= 1;
    }
    const auto points = fundamental_breakpoints(folded);
    std::vector<FoldedMultiplicity::Level> levels;
    long count = 0;
    auto it = delta.begin();
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        while (it != delta.end() && it->first <= points[i]) count += (it++)->second;
        levels.push_back({{points[i], points[i + 1]}, count});
    }
    return FoldedMultiplicity(std::move(levels));
}

std::vector<IntervalSet> layered_partition(const IntervalSet& K) {
    const auto folded = fold(K);
    if (folded.empty()) return {};
    const auto points = fundamental_breakpoints(folded);

    std::vector<std::vector<Interval>> layers;
    std::vector<long> shifts;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const Rational& u = points[i];
        const Rational& v = points[i + 1];
        shifts.clear();
        // `folded` is sorted by shift, so representatives arrive in ascending position.
        for (const auto& f : folded)
            if (f.folded.lo <= u && v <= f.folded.hi) shifts.push_back(f.shift);
        if (layers.size() < shifts.size()) layers.resize(shifts.size());
        for (std::size_t layer = 0; layer < shifts.size(); ++layer) {
            const Rational t(2 * shifts[layer]);
            layers[layer].push_back({u + t, v + t});
        }
    }
    std::vector<IntervalSet> out;
    out.reserve(layers.size());
    for (auto& l : layers) out.emplace_back(std::move(l));
    return out;
}

std::vector<IntervalSet> window_partition(const IntervalSet& K) {
    std::map<long, std::vector<Interval>> windows;
    for (const auto& f : fold(K)) {
        const Rational t(2 * f.shift);
        windows[f.shift].push_back({f.folded.lo + t, f.folded.hi + t});
    }
    std::vector<IntervalSet> out;
    for (auto& [k, pieces] : windows) out.emplace_back(std::move(pieces));
    return out;
}

}  // namespace framesmith
