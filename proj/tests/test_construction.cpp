#include <random>

#include "doctest.h"
#include "framesmith/construction.hpp"
#include "framesmith/errors.hpp"
#include "framesmith/folding.hpp"
#include "test_support.hpp"

using namespace framesmith;
using framesmith::testing::R;

namespace {

// Closed-form bump with half-widths a, b, written independently of the
// library: linear from 0 at -a up to 1 at 0, then down to 0 at b.
Rational bump_formula(const Rational& x, const Rational& a, const Rational& b) {
    if (-a <= x && x < Rational(0)) return Rational(1) + x / a;
    if (Rational(0) <= x && x < b) return Rational(1) - x / b;
    return Rational(0);
}

// |eta|^2 for the bump with a = b = 1/2 and dilation 2, worked out by hand.
Rational eta_squared(const Rational& x) {
    if (R(-1) <= x && x < R(-1, 2)) return x + R(1);
    if (R(-1, 2) <= x && x < R(0)) return -x;
    if (R(0) <= x && x < R(1, 2)) return x;
    if (R(1, 2) <= x && x < R(1)) return R(1) - x;
    return R(0);
}

// x lies in union_{j >= 1} a^{-j} E iff a^j x is in E for some j >= 1.
bool in_closure_orbit(const IntervalSet& E, long a, const Rational& x) {
    Rational y = x;
    for (int j = 1; j <= 200; ++j) {
        y *= Rational(a);
        if (E.contains(y)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("bump example is admissible and yields one wavelet") {
    const SpectralSpec spec{bump_sigma(R(1, 2), R(1, 2)), 2};
    const auto report = admissibility_check(spec);
    CHECK(report.admissible());
    CHECK(report.first_failure() == nullptr);
    CHECK(report.layers == 1);

    const auto family = build_wavelets(spec);
    REQUIRE(family.psis.size() == 1);
    CHECK(family.partition[0] == IntervalSet::single(R(-1), R(1)));
    const auto& psi = family.psis[0];
    CHECK(psi.squared_at(R(-1, 2)) == R(1, 2));
    CHECK(psi.squared_at(R(-1, 4)) == R(1, 4));
    for (long n = -300; n <= 300; ++n) {
        const Rational x(n, 240);
        CHECK(psi.squared_at(x) == eta_squared(x));
        CHECK(spec.sigma(x) == bump_formula(x, R(1, 2), R(1, 2)));
    }
}

TEST_CASE("scaling profiles tile sigma by 2pi windows") {
    const SpectralSpec unit{bump_sigma(R(1), R(1)), 2};
    const auto one = build_scaling(unit);
    REQUIRE(one.phis.size() == 1);
    REQUIRE(one.phis.count(0) == 1);
    for (long n = -20; n <= 20; ++n) {
        const Rational x(n, 8);
        CHECK(one.phis.at(0).squared_at(x) == bump_formula(x, R(1), R(1)));
    }

    const SpectralSpec wide{tent_sigma(R(2)), 2};
    const auto three = build_scaling(wide);
    REQUIRE(three.phis.size() == 3);
    CHECK(three.phis.count(-1) == 1);
    CHECK(three.phis.count(1) == 1);
    for (long n = -40; n <= 40; ++n) {
        const Rational x(n, 9);
        Rational total;
        for (const auto& [k, phi] : three.phis) total += phi.squared_at(x);
        CHECK(total == bump_formula(x, R(2), R(2)));
    }

    const auto shannon = build_scaling({shannon_sigma(), 2});
    REQUIRE(shannon.phis.size() == 1);
    CHECK(shannon.phis.at(0).support() == IntervalSet::single(R(-1), R(1)));
}

TEST_CASE("shannon wavelet support") {
    const auto family = build_wavelets({shannon_sigma(), 2});
    REQUIRE(family.psis.size() == 1);
    CHECK(family.psis[0].support() == shannon_set());
    CHECK(family.psis[0].squared_at(R(3, 2)) == R(1));
    CHECK(family.psis[0].squared_at(R(1, 2)) == R(0));
}

TEST_CASE("wide bump needs several wavelets") {
    const SpectralSpec spec{bump_sigma(R(2), R(2)), 2};
    CHECK(admissibility_check(spec).layers == 4);
    const auto layered = build_wavelets(spec, PartitionRule::layered);
    const auto windowed = build_wavelets(spec, PartitionRule::window);
    CHECK(layered.psis.size() == 4);
    CHECK(windowed.psis.size() == 5);
    const auto D = dilation_difference(spec);
    for (const auto* family : {&layered, &windowed}) {
        for (long n = -40; n <= 40; ++n) {
            const Rational x(n, 9);
            Rational total;
            for (const auto& psi : family->psis) total += psi.squared_at(x);
            CHECK(total == D(x));
        }
    }
}

TEST_CASE("inadmissible spectral functions report witnesses") {
    // chi_[1,2): sigma(a xi) <= sigma(xi) fails first, the limit at 0 fails too.
    const SpectralSpec box{PiecewiseLinear::indicator(IntervalSet::single(R(1), R(2))), 2};
    const auto report = admissibility_check(box);
    CHECK_FALSE(report.admissible());
    REQUIRE(report.first_failure() != nullptr);
    CHECK(report.first_failure()->id == "dilation-monotone");
    const auto w = *report.condition("dilation-monotone").witness;
    CHECK(box.sigma(R(2) * w) > box.sigma(w));
    CHECK_FALSE(report.condition("limit-at-zero").passed);
    CHECK(report.condition("limit-at-zero").detail.find("right limit at 0 is 0") != std::string::npos);
    CHECK_THROWS_AS(build_wavelets(box), ValidationError);
    CHECK_THROWS_AS(build_scaling(box), ValidationError);

    const SpectralSpec corrupted{bump_sigma(R(1, 2), R(1, 2)).scaled(R(101, 100)), 2};
    const auto bad = admissibility_check(corrupted);
    CHECK(bad.first_failure()->id == "limit-at-zero");

    const SpectralSpec negative{bump_sigma(R(1), R(1)) - PiecewiseLinear::indicator(IntervalSet::single(R(2), R(3))),
                                2};
    const auto neg = admissibility_check(negative);
    CHECK(neg.first_failure()->id == "nonnegative-integrable");
    CHECK(negative.sigma(*neg.condition("nonnegative-integrable").witness).sign() < 0);

    // sigma(2 xi) > sigma(xi) on a shoulder away from 0.
    const SpectralSpec shoulder{bump_sigma(R(1), R(1)) + PiecewiseLinear::indicator(IntervalSet::single(R(3), R(4))), 2};
    const auto sh = admissibility_check(shoulder);
    CHECK(sh.first_failure()->id == "dilation-monotone");

    CHECK_THROWS_AS(require_dilation(1), ValidationError);
    CHECK_THROWS_AS(require_dilation(-1), ValidationError);
    CHECK_NOTHROW(require_dilation(-2));
}

TEST_CASE("dilation closure examples") {
    const auto shannon = dilation_closure(shannon_set(), 2);
    CHECK(shannon.stabilized);
    CHECK(shannon.set == IntervalSet::single(R(-1), R(1)));

    const auto unit = dilation_closure(IntervalSet::single(R(-1), R(1)), 2);
    CHECK(unit.stabilized);
    CHECK(unit.set == IntervalSet::single(R(-1, 2), R(1, 2)));

    const auto journe = dilation_closure(journe_set(), 2);
    REQUIRE(journe.stabilized);
    std::mt19937_64 rng(0x5EED);
    for (int i = 0; i < 300; ++i) {
        const Rational x = framesmith::testing::random_rational(rng, -5, 5, 997);
        if (x.is_zero()) continue;
        CHECK(journe.set.contains(x) == in_closure_orbit(journe_set(), 2, x));
    }

    const auto open = dilation_closure(IntervalSet::single(R(1), R(3, 2)), 2, 16);
    CHECK_FALSE(open.stabilized);
    CHECK(open.iterations == 16);
    CHECK_THROWS_AS(waveletset_sigma(IntervalSet::single(R(1), R(3, 2)), 2, 16), NonTerminatingClosure);

    const auto sigma = waveletset_sigma(shannon_set(), 2);
    CHECK(sigma == shannon_sigma());
}

TEST_CASE("dilation closure matches orbit membership on random seeds") {
    std::mt19937_64 rng(0x5EED + 1);
    for (int trial = 0; trial < 60; ++trial) {
        const long a = trial % 3 == 0 ? 3 : (trial % 3 == 1 ? 2 : -2);
        // Seeds containing a neighbourhood of 0 plus a few outer pieces.
        const Rational delta = framesmith::testing::random_rational(rng, 1, 8, 1) / R(8);
        IntervalSet E = IntervalSet::single(-delta, delta).unite(framesmith::testing::random_set(rng, -4, 4, 4, 3));
        const auto closure = dilation_closure(E, a);
        REQUIRE(closure.stabilized);
        CHECK(E.unite(closure.set).dilate(Rational(1) / Rational(a)) == closure.set);
        for (int i = 0; i < 40; ++i) {
            const Rational x = framesmith::testing::random_rational(rng, -5, 5, 1009);
            if (x.is_zero()) continue;
            CHECK(closure.set.contains(x) == in_closure_orbit(E, a, x));
        }
    }
}

TEST_CASE("wavelet set seed classification") {
    CHECK(classify_waveletset_seed(IntervalSet::single(R(-1), R(1)), 2).kind == SeedClass::orthonormal);
    const auto half = classify_waveletset_seed(IntervalSet::single(R(-1, 2), R(1, 2)), 2);
    CHECK(half.kind == SeedClass::ntf);
    CHECK(half.difference == IntervalSet{{R(-1), R(-1, 2)}, {R(1, 2), R(1)}});
    CHECK(half.max_periodization == 1);

    const auto box = classify_waveletset_seed(IntervalSet::single(R(1), R(2)), 2);
    CHECK(box.kind == SeedClass::not_admissible);

    const auto wide = classify_waveletset_seed(IntervalSet::single(R(-2), R(2)), 3);
    CHECK(wide.kind == SeedClass::ntf_multi);
    CHECK(wide.max_periodization == 4);

    // Journe closure as a seed is orthonormal by construction.
    const auto journe = dilation_closure(journe_set(), 2).set;
    CHECK(classify_waveletset_seed(journe, 2).kind == SeedClass::orthonormal);
    CHECK(journe.dilate(R(2)).subtract(journe) == journe_set());

    CHECK(to_string(SeedClass::ntf) == "ntf");
}

TEST_CASE("built-in spec names") {
    CHECK(builtin_spec("pwl:a=1/2,b=1/2").sigma == bump_sigma(R(1, 2), R(1, 2)));
    CHECK(builtin_spec("pwl").sigma == bump_sigma(R(1, 2), R(1, 2)));
    CHECK(builtin_spec("pwl:a=1,b=2", 3).dilation == 3);
    CHECK(builtin_spec("shannon").sigma == shannon_sigma());
    CHECK(builtin_spec("tent:w=3").sigma == tent_sigma(R(3)));
    CHECK(admissibility_check(builtin_spec("journe")).admissible());
    CHECK_THROWS_AS(builtin_spec("nope"), ParseError);
    CHECK_THROWS_AS(builtin_spec("pwl:a"), ParseError);
    CHECK_THROWS_AS(builtin_spec("shannon", 1), ValidationError);
}

TEST_CASE("construction invariants on random admissible sigma") {
    std::mt19937_64 rng(0x5EED + 2);
    for (int trial = 0; trial < 80; ++trial) {
        const long a = trial % 4 == 3 ? -2 : 2 + trial % 2;
        const SpectralSpec spec{framesmith::testing::random_admissible_sigma(rng, a < 0), a};
        const auto report = admissibility_check(spec);
        REQUIRE(report.admissible());
        CHECK(spec.sigma.supremum() <= R(1));

        const auto scaling = build_scaling(spec);
        const auto wavelets = build_wavelets(spec);
        CHECK(static_cast<long>(wavelets.psis.size()) <= report.layers);
        const auto D = dilation_difference(spec);
        CHECK(D.nonnegative());
        for (int i = 0; i < 30; ++i) {
            const Rational x = framesmith::testing::random_rational(rng, -4, 4, 1009);
            Rational phis, psis;
            for (const auto& [k, phi] : scaling.phis) phis += phi.squared_at(x);
            for (const auto& psi : wavelets.psis) psis += psi.squared_at(x);
            CHECK(phis == spec.sigma(x));
            CHECK(psis == D(x));
            // Telescoping: sum_{j=0}^{J} D(a^j x) = sigma(x/a) - sigma(a^J x).
            Rational sum, y = x;
            const int J = 6;
            for (int j = 0; j < J; ++j, y *= Rational(a)) sum += D(y);
            CHECK(sum + D(y) == spec.sigma(x / Rational(a)) - spec.sigma(y));
        }
        for (const auto& layer : wavelets.partition) CHECK(per_multiplicity(layer).max() <= 1);
    }
}
