#include "framesmith/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "framesmith/errors.hpp"

namespace framesmith {

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"ntf",     "ntf-numeric", "wavelets", "characterization",
                                                "sufficiency", "density", "semiorth", "dilation",
                                                "series",  "additivity"};
    return names;
}

std::vector<std::string> parse_suites(std::string_view csv) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string name(csv.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (name == "all") {
            out.insert(out.end(), suite_names().begin(), suite_names().end());
        } else if (std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end()) {
            out.push_back(name);
        } else {
            throw ParseError("unknown suite '" + name + "'", std::string(csv));
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

Check to_check(std::string name, const TraceComparison& comparison) {
    Check c{std::move(name), comparison.status, std::nullopt, std::nullopt, {}};
    std::ostringstream d;
    d << comparison.points << " points, max |lhs - rhs| <= " << comparison.max_discrepancy.to_double();
    c.detail = d.str();
    if (comparison.status != Status::pass && comparison.witness)
        c.witness = Witness{*comparison.witness, std::nullopt, std::nullopt, comparison.detail, "within 2^-40"};
    return c;
}

namespace {

void append_prefixed(VerificationReport& out, const std::string& prefix, const VerificationReport& part) {
    for (Check c : part.checks()) {
        c.name = prefix + "/" + c.name;
        out.add(std::move(c));
    }
}

Check condition_check(const std::string& prefix, const ConditionResult& r) {
    Check c{prefix + "/" + r.id, r.passed ? Status::pass : Status::fail, std::nullopt, std::nullopt, r.description};
    if (!r.detail.empty()) c.detail += "; " + r.detail;
    if (!r.passed) c.witness = Witness{r.witness.value_or(Rational(0)), std::nullopt, std::nullopt, r.detail, r.description};
    return c;
}

}  // namespace

VerificationReport run_suites(const FamilyFile& family, const std::vector<std::string>& suites,
                              const SuiteOptions& options) {
    const ScalingFamily& phi = family.scaling;
    const WaveletFamily& psi = family.wavelets;
    const auto pair_grid = default_grid(phi, psi, options.seed);
    const Sequence f = Sequence::parse(options.f);
    const Rational tol = default_tolerance();
    VerificationReport report;
    for (const auto& suite : suites) {
        if (suite == "ntf") {
            append_prefixed(report, suite,
                            check_ntf_multiwavelet(psi, NtfMode::exact, default_grid(psi, options.seed), options.bits));
        } else if (suite == "ntf-numeric") {
            append_prefixed(report, suite,
                            check_ntf_multiwavelet(psi, NtfMode::numeric, default_grid(psi, options.seed), options.bits));
        } else if (suite == "wavelets") {
            append_prefixed(report, suite, check_wavelets_from_scaling(phi, psi, pair_grid, 0, options.bits));
        } else if (suite == "characterization") {
            append_prefixed(report, suite, check_characterization(phi, psi, pair_grid, options.j_max, 0, options.bits));
        } else if (suite == "sufficiency") {
            append_prefixed(report, suite, check_sufficiency(phi, psi, pair_grid, 0, options.bits));
        } else if (suite == "density") {
            append_prefixed(report, suite, check_density(phi, pair_grid, options.j_max));
        } else if (suite == "semiorth") {
            append_prefixed(report, suite, check_semiorthogonal(psi));
        } else if (suite == "dilation") {
            report.add(to_check("dilation/scaling",
                                dilation_trace_check(generators_of(phi), f, pair_grid, options.bits, tol)));
            report.add(to_check("dilation/wavelets",
                                dilation_trace_check(generators_of(psi), f, pair_grid, options.bits, tol)));
        } else if (suite == "series") {
            const auto scaling = generators_of(phi);
            const auto wavelets = generators_of(psi);
            for (long s = -options.series_window; s <= options.series_window; ++s)
                report.add(to_check("series/s=" + std::to_string(s),
                                    series_identity_check(scaling, wavelets, s, pair_grid, options.bits, tol)));
        } else if (suite == "additivity") {
            const auto r = additivity_check(generators_of(phi), generators_of(psi), f, pair_grid, options.bits, tol);
            report.add(to_check("additivity/sum", r.additivity));
            Check mono{"additivity/monotone", r.monotone, std::nullopt, std::nullopt,
                       "tau_V0 <= tau_V1 at " + std::to_string(pair_grid.size()) + " points"};
            if (r.monotone != Status::pass && r.monotone_witness)
                mono.witness = Witness{*r.monotone_witness, std::nullopt, std::nullopt, "tau_V0", "tau_V1"};
            report.add(std::move(mono));
        } else {
            throw ParseError("unknown suite '" + suite + "'", suite);
        }
    }
    return report;
}

VerificationReport admissibility_report(const AdmissibilityReport& report) {
    VerificationReport out;
    for (const auto& c : report.conditions) out.add(condition_check("admissible", c));
    return out;
}

VerificationReport classification_report(const SeedClassification& c) {
    VerificationReport out;
    for (const auto& r : c.conditions) out.add(condition_check("classify", r));
    std::string detail = to_string(c.kind) + "; aE \\ E = " + c.difference.str() +
                         "; max periodization " + std::to_string(c.max_periodization);
    Check kind{"classify/kind", Status::pass, std::nullopt, std::nullopt, detail};
    if (c.kind == SeedClass::not_admissible) {
        kind.status = Status::fail;
        kind.witness = Witness{Rational(0), std::nullopt, std::nullopt, "not_admissible", "a wavelet-set seed"};
    }
    out.add(std::move(kind));
    return out;
}

VerificationReport frame_test_report(const WaveletFamily& family, const std::vector<TestSignal>& signals,
                                     const FrameTestOptions& options) {
    VerificationReport out;
    for (const auto& signal : signals) {
        const FrameEnergy e = frame_energy(signal, family, options.energy);
        const double deviation = std::abs(e.ratio - options.expected);
        const double slack = e.norm_squared > 0 ? e.tail_estimate / e.norm_squared : 0;
        Check c{"frame/" + signal.name, Status::pass, std::nullopt, std::nullopt, {}};
        char buf[256];
        std::snprintf(buf, sizeof buf, "ratio %.12f, ||f||^2 %.12g, energy %.12g, %zu levels, tail estimate %.3g%s",
                      e.ratio, e.norm_squared, e.energy, e.levels.size(), e.tail_estimate,
                      e.inconclusive ? ", inconclusive" : "");
        c.detail = buf;
        if (deviation > options.tol) {
            c.status = e.inconclusive && deviation <= options.tol + slack ? Status::uncertain : Status::fail;
        } else if (e.inconclusive) {
            c.status = Status::uncertain;
        }
        if (c.status != Status::pass) {
            char lhs[64], rhs[64];
            std::snprintf(lhs, sizeof lhs, "ratio %.12f", e.ratio);
            std::snprintf(rhs, sizeof rhs, "%.12g +- %.3g", options.expected, options.tol);
            c.witness = Witness{midpoint(signal.hat.support().hull().lo, signal.hat.support().hull().hi),
                                std::nullopt, std::nullopt, lhs, rhs};
        }
        out.add(std::move(c));
    }
    return out;
}

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<Rational> cell_midpoints(const Interval& hull, long n) {
    if (n <= 0) throw ValidationError("grid size positive", std::to_string(n));
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n));
    const Rational h = hull.length() / Rational(n, 1);
    for (long i = 0; i < n; ++i) out.push_back(hull.lo + h * Rational(2 * i + 1, 2));
    return out;
}

}  // namespace

std::string sample_csv(const FamilyFile& family, long n) {
    const WaveletFamily& w = family.wavelets;
    IntervalSet u = w.sigma.support();
    for (const auto& p : w.psis) u = u.unite(p.support());
    const Interval hull = u.empty() ? Interval{Rational(-1), Rational(1)} : u.hull();
    std::string out = "xi";
    for (std::size_t i = 0; i < w.psis.size(); ++i) out += ",psi_hat_" + std::to_string(i);
    out += ",sigma\n";
    for (const auto& xi : cell_midpoints(hull, n)) {
        out += g17(xi.to_double());
        for (const auto& p : w.psis) out += "," + g17(std::sqrt(p.squared_at(xi).to_double()));
        out += "," + g17(w.sigma(xi).to_double()) + "\n";
    }
    return out;
}

TraceSpace parse_trace_space(std::string_view name) {
    if (name == "V0") return TraceSpace::scaling;
    if (name == "W0") return TraceSpace::wavelets;
    if (name == "V1") return TraceSpace::dilated;
    throw ParseError("unknown space (expected V0, W0 or V1)", std::string(name));
}

std::string trace_csv(const FamilyFile& family, TraceSpace space, const Sequence& f, long n, int bits) {
    GeneratorSet set;
    switch (space) {
        case TraceSpace::scaling: set = generators_of(family.scaling); break;
        case TraceSpace::wavelets: set = generators_of(family.wavelets); break;
        case TraceSpace::dilated: set = dilated_generators(generators_of(family.scaling)); break;
    }
    std::string out = "xi,spectral,dim,tau_f\n";
    for (const auto& xi : cell_midpoints({Rational(-1), Rational(1)}, n)) {
        out += g17(xi.to_double()) + "," + g17(spectral_function(set, xi, bits).mid_double()) + "," +
               g17(dimension_function(set, xi, bits).mid_double()) + "," +
               g17(restricted_trace(set, f, xi, bits).mid_double()) + "\n";
    }
    return out;
}

}  // namespace framesmith
