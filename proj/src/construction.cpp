#include "framesmith/construction.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "framesmith/errors.hpp"
#include "framesmith/folding.hpp"

namespace framesmith {

void require_dilation(long a) {
    if (a > -2 && a < 2) throw ValidationError("dilation |a| >= 2", "got a = " + std::to_string(a));
}

bool AdmissibilityReport::admissible() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.passed; });
}

const ConditionResult* AdmissibilityReport::first_failure() const {
    for (const auto& c : conditions)
        if (!c.passed) return &c;
    return nullptr;
}

const ConditionResult& AdmissibilityReport::condition(std::string_view id) const {
    for (const auto& c : conditions)
        if (c.id == id) return c;
    throw std::out_of_range("no condition " + std::string(id));
}

PiecewiseLinear dilation_difference(const SpectralSpec& spec) {
    return spec.sigma.compose_scale(Rational(1) / Rational(spec.dilation)) - spec.sigma;
}

AdmissibilityReport admissibility_check(const SpectralSpec& spec) {
    require_dilation(spec.dilation);
    const PiecewiseLinear& sigma = spec.sigma;
    AdmissibilityReport report;

    {
        ConditionResult c{"nonnegative-integrable", "sigma in L^1 and sigma >= 0", true, std::nullopt, {}};
        if (auto w = sigma.negative_witness()) {
            c.passed = false;
            c.witness = *w;
            c.detail = "sigma(" + w->str() + ") = " + sigma(*w).str() + " < 0";
        } else {
            c.detail = "bounded support, integral = " + sigma.integral().str();
        }
        report.conditions.push_back(std::move(c));
    }
    {
        ConditionResult c{"dilation-monotone", "sigma(a xi) <= sigma(xi)", true, std::nullopt, {}};
        const PiecewiseLinear gap = sigma - sigma.compose_scale(Rational(spec.dilation));
        if (auto w = gap.negative_witness()) {
            c.passed = false;
            c.witness = *w;
            c.detail = "sigma(a*" + w->str() + ") = " + sigma(Rational(spec.dilation) * *w).str() + " > sigma(" +
                       w->str() + ") = " + sigma(*w).str();
        }
        report.conditions.push_back(std::move(c));
    }
    {
        const IntervalSet K = dilation_difference(spec).support();
        report.layers = per_multiplicity(K).max();
        ConditionResult c{"bounded-periodization", "Per(chi_K) bounded, K = supp(sigma(xi/a) - sigma(xi))", true, std::nullopt,
                          "max Per(chi_K) = " + std::to_string(report.layers)};
        report.conditions.push_back(std::move(c));
    }
    {
        const Rational left = sigma.left_limit(Rational(0));
        const Rational right = sigma.right_limit(Rational(0));
        ConditionResult c{"limit-at-zero", "lim sigma(a^-J xi) = 1 (both one-sided limits at 0 equal 1)", true, std::nullopt,
                          "left limit " + left.str() + ", right limit " + right.str()};
        if (left != Rational(1) || right != Rational(1)) {
            c.passed = false;
            c.witness = Rational(0);
            c.detail = right != Rational(1) ? "right limit at 0 is " + right.str() : "left limit at 0 is " + left.str();
        }
        report.conditions.push_back(std::move(c));
    }
    {
        const IntervalSet support = sigma.support();
        ConditionResult c{"vanishes-at-infinity", "lim sigma(a^J xi) = 0 (bounded support)", true, std::nullopt,
                          "support radius " + support.radius().str()};
        report.conditions.push_back(std::move(c));
    }
    return report;
}

std::vector<SqrtProfile> ScalingFamily::profiles() const {
    std::vector<SqrtProfile> out;
    out.reserve(phis.size());
    for (const auto& [k, phi] : phis) out.push_back(phi);
    return out;
}

namespace {

void require_admissible(const SpectralSpec& spec) {
    const auto report = admissibility_check(spec);
    if (const auto* failure = report.first_failure())
        throw ValidationError("admissibility (" + failure->id + ")", failure->detail);
}

}  // namespace

ScalingFamily build_scaling(const SpectralSpec& spec) {
    require_admissible(spec);
    ScalingFamily family{spec.dilation, spec.sigma, {}};
    const IntervalSet support = spec.sigma.support();
    if (support.empty()) return family;
    const Interval hull = support.hull();
    const long first = mpz_class(Rational((hull.lo + Rational(1)) / Rational(2)).floor()).get_si();
    const long last = mpz_class(Rational((hull.hi + Rational(1)) / Rational(2)).ceil()).get_si();
    for (long k = first; k <= last; ++k) {
        SqrtProfile phi(spec.sigma, IntervalSet::single(Rational(2 * k - 1), Rational(2 * k + 1)));
        if (!phi.is_zero()) family.phis.emplace(k, std::move(phi));
    }
    return family;
}

WaveletFamily build_wavelets(const SpectralSpec& spec, PartitionRule rule) {
    require_admissible(spec);
    const PiecewiseLinear difference = dilation_difference(spec);
    const IntervalSet K = difference.support();
    WaveletFamily family{spec.dilation, spec.sigma, {}, {}};
    const auto layers = rule == PartitionRule::layered ? layered_partition(K) : window_partition(K);
    for (const auto& layer : layers) {
        SqrtProfile psi(difference, layer);
        if (psi.is_zero()) continue;
        family.partition.push_back(layer);
        family.psis.push_back(std::move(psi));
    }
    return family;
}

ClosureResult dilation_closure(const IntervalSet& E, long a, int budget) {
    require_dilation(a);
    const Rational inv = Rational(1) / Rational(a);
    const Rational radius = E.radius();
    const Rational shrink = Rational(1) / Rational(std::labs(a));
    IntervalSet partial;
    Rational scale(1);         // a^{-J}
    Rational filler = radius;  // |a|^{-J-1} * radius after the update below
    for (int J = 1; J <= budget; ++J) {
        scale *= inv;
        partial = partial.unite(E.dilate(scale));
        filler *= shrink;
        const IntervalSet candidate = partial.unite(IntervalSet::single(-filler, filler));
        if (E.unite(candidate).dilate(inv) == candidate) return {true, J, candidate};
    }
    return {false, budget, partial};
}

NonTerminatingClosure::NonTerminatingClosure(IntervalSet partial, int iterations)
    : std::runtime_error("dilation closure non-terminating near 0 after " + std::to_string(iterations) +
                         " iterations; partial union " + partial.str()),
      partial_(std::move(partial)),
      iterations_(iterations) {}

PiecewiseLinear waveletset_sigma(const IntervalSet& E, long a, int budget) {
    auto closure = dilation_closure(E, a, budget);
    if (!closure.stabilized) throw NonTerminatingClosure(std::move(closure.set), closure.iterations);
    return PiecewiseLinear::indicator(closure.set);
}

std::string to_string(SeedClass c) {
    switch (c) {
        case SeedClass::not_admissible: return "not_admissible";
        case SeedClass::ntf: return "ntf";
        case SeedClass::orthonormal: return "orthonormal";
        case SeedClass::ntf_multi: return "ntf_multi";
    }
    return "unknown";
}

SeedClassification classify_waveletset_seed(const IntervalSet& E, long a) {
    require_dilation(a);
    SeedClassification out;
    const IntervalSet aE = E.dilate(Rational(a));
    out.difference = aE.subtract(E);
    const FoldedMultiplicity per = per_multiplicity(out.difference);
    out.max_periodization = per.max();

    out.conditions.push_back({"finite-measure", "E has finite measure", true, std::nullopt, "measure " + E.measure().str()});
    {
        ConditionResult c{"nested-dilate", "E subset of aE", true, std::nullopt, {}};
        const IntervalSet outside = E.subtract(aE);
        if (!outside.empty()) {
            c.passed = false;
            c.witness = midpoint(outside.pieces().front().lo, outside.pieces().front().hi);
            c.detail = "E \\ aE = " + outside.str();
        }
        out.conditions.push_back(std::move(c));
    }
    out.conditions.push_back({"bounded-periodization", "Per(chi_{aE\\E}) bounded", true, std::nullopt,
                              "max Per = " + std::to_string(out.max_periodization)});
    {
        // a^{-j} xi eventually in E for a.e. xi iff E contains a punctured
        // neighbourhood of 0, i.e. a canonical piece straddles 0.
        ConditionResult c{"punctured-neighbourhood", "E contains a punctured neighbourhood of 0", false, Rational(0), {}};
        for (const auto& p : E.pieces())
            if (p.lo < Rational(0) && Rational(0) < p.hi) {
                c.passed = true;
                c.witness.reset();
            }
        if (!c.passed) {
            const bool left = std::any_of(E.pieces().begin(), E.pieces().end(),
                                          [](const Interval& p) { return p.lo < Rational(0) && Rational(0) <= p.hi; });
            c.detail = left ? "no right neighbourhood of 0" : "no left neighbourhood of 0";
        }
        out.conditions.push_back(std::move(c));
    }
    out.conditions.push_back({"bounded", "E bounded", true, std::nullopt, "radius " + E.radius().str()});

    const bool admissible = std::all_of(out.conditions.begin(), out.conditions.end(),
                                        [](const ConditionResult& c) { return c.passed; });
    if (!admissible) {
        out.kind = SeedClass::not_admissible;
    } else if (out.max_periodization > 1) {
        out.kind = SeedClass::ntf_multi;
    } else if (per.exactly(1) == IntervalSet::single(Rational(-1), Rational(1))) {
        out.kind = SeedClass::orthonormal;
    } else {
        out.kind = SeedClass::ntf;
    }
    return out;
}

PiecewiseLinear bump_sigma(const Rational& a, const Rational& b) {
    if (a.sign() <= 0 || b.sign() <= 0) throw ValidationError("bump half-widths positive", a.str() + ", " + b.str());
    return PiecewiseLinear({{-a, Rational(0), Rational(1) / a, Rational(1)},
                            {Rational(0), b, -Rational(1) / b, Rational(1)}});
}

PiecewiseLinear shannon_sigma() { return PiecewiseLinear::indicator(IntervalSet::single(Rational(-1), Rational(1))); }

IntervalSet shannon_set() { return IntervalSet{{Rational(-2), Rational(-1)}, {Rational(1), Rational(2)}}; }

IntervalSet journe_set() {
    return IntervalSet{{Rational(-32, 7), Rational(-4)},
                       {Rational(-1), Rational(-4, 7)},
                       {Rational(4, 7), Rational(1)},
                       {Rational(4), Rational(32, 7)}};
}

PiecewiseLinear tent_sigma(const Rational& half_width) { return bump_sigma(half_width, half_width); }

namespace {

// "key=value,key=value" after the first ':'.
std::map<std::string, Rational> parse_params(std::string_view text, std::string_view full) {
    std::map<std::string, Rational> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key=value", std::string(full));
        out[std::string(item.substr(0, eq))] = Rational::parse(item.substr(eq + 1));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

Rational param(const std::map<std::string, Rational>& params, const std::string& key, const Rational& fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

SpectralSpec builtin_spec(std::string_view name, long dilation) {
    require_dilation(dilation);
    const auto colon = name.find(':');
    const std::string_view kind = name.substr(0, colon);
    const auto params =
        colon == std::string_view::npos ? std::map<std::string, Rational>{} : parse_params(name.substr(colon + 1), name);
    if (kind == "pwl") return {bump_sigma(param(params, "a", Rational(1, 2)), param(params, "b", Rational(1, 2))), dilation};
    if (kind == "shannon") return {shannon_sigma(), dilation};
    if (kind == "journe") return {waveletset_sigma(journe_set(), dilation), dilation};
    if (kind == "tent") return {tent_sigma(param(params, "w", Rational(2))), dilation};
    throw ParseError("unknown built-in example", std::string(name));
}

}  // namespace framesmith
