#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "framesmith/errors.hpp"
#include "framesmith/verification.hpp"
#include "test_support.hpp"

using namespace framesmith;
using framesmith::testing::R;

namespace {

WaveletFamily scaled_family(WaveletFamily w, const Rational& c) {
    for (auto& p : w.psis) p = p.scaled(c);
    return w;
}

// Brute-force sum over |j| <= 80 in double precision.
double orbit_sum(const WaveletFamily& w, double xi) {
    double sum = 0;
    for (long j = -80; j <= 80; ++j) {
        const double x = xi * std::pow(static_cast<double>(w.dilation), static_cast<double>(j));
        if (std::abs(x) > 1e6) continue;
        const Rational q(static_cast<long>(std::llround(x * 1e12)), 1000000000000L);
        for (const auto& p : w.psis) sum += p.squared_at(q).to_double();
    }
    return sum;
}

// Smallest j0 with sum |phi|^2(a^j xi) = 0 for j0 <= j <= 200.
long brute_exit(const ScalingFamily& phi, const Rational& xi) {
    long last_nonzero = -1;
    for (long j = 0; j <= 200; ++j) {
        Rational s;
        for (const auto& p : phi.profiles()) s += p.squared_at(xi * pow(Rational(phi.dilation), j));
        if (!s.is_zero()) last_nonzero = j;
    }
    return last_nonzero + 1;
}

// Number of j in [-60, 60] with xi in a^j E.
int dilate_count(const IntervalSet& e, long a, const Rational& xi) {
    int n = 0;
    for (long j = -60; j <= 60; ++j) n += e.contains(xi * pow(Rational(a), -j)) ? 1 : 0;
    return n;
}

}  // namespace

TEST_CASE("report rejects failing checks without witness") {
    VerificationReport r;
    r.add({"ok", Status::pass, std::nullopt, std::nullopt, ""});
    CHECK_THROWS_AS(r.add({"bad", Status::fail, std::nullopt, std::nullopt, ""}), std::logic_error);
    r.add({"maybe", Status::uncertain, std::nullopt, std::nullopt, ""});
    CHECK(r.status() == Status::uncertain);
    CHECK(r.check("ok").status == Status::pass);
    CHECK_THROWS_AS(r.check("nope"), std::out_of_range);
}

TEST_CASE("NTF multiwavelet, exact mode") {
    const auto shannon = build_wavelets(builtin_spec("shannon"));
    const auto rs = check_ntf_multiwavelet(shannon, NtfMode::exact, default_grid(shannon));
    CHECK(rs.status() == Status::pass);
    CHECK(rs.check("orbit-sum").tail_bound == R(0));

    const auto bump = build_wavelets(builtin_spec("pwl:a=1/2,b=1/2"));
    const auto grid = random_grid({}, Interval{R(-3), R(3)}, 200);
    const auto rb = check_ntf_multiwavelet(bump, NtfMode::exact, grid);
    CHECK(rb.status() == Status::pass);
    REQUIRE(rb.check("orbit-sum").tail_bound);
    CHECK(*rb.check("orbit-sum").tail_bound <= R(1, 1000000000));
    CHECK(*rb.check("orbit-sum").tail_bound > R(0));
    for (int i = 0; i < 200; i += 20) CHECK(std::abs(orbit_sum(bump, grid[i].to_double()) - 1) < 1e-9);

    const auto bad = check_ntf_multiwavelet(scaled_family(bump, R(101, 100)), NtfMode::exact, grid);
    const auto& c = bad.check("orbit-sum");
    CHECK(c.status == Status::fail);
    REQUIRE(c.witness);
    CHECK(c.witness->lhs == "10201/10000");
    CHECK(bad.check("telescoping").status == Status::fail);
}

TEST_CASE("NTF multiwavelet, numeric mode agrees") {
    for (const char* name : {"shannon", "pwl:a=1/2,b=1/2", "tent:w=3"}) {
        const auto w = build_wavelets(builtin_spec(name));
        CHECK(check_ntf_multiwavelet(w, NtfMode::numeric, default_grid(w)).status() == Status::pass);
        const auto bad = scaled_family(w, R(99, 100));
        CHECK(check_ntf_multiwavelet(bad, NtfMode::numeric, default_grid(bad)).status() == Status::fail);
    }
}

TEST_CASE("NTF multiwavelet on random admissible sigma, both signs of a") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const long a = std::array<long, 3>{2, 3, -2}[trial % 3];
        const auto w = build_wavelets({framesmith::testing::random_admissible_sigma(rng, a < 0), a});
        const auto r = check_ntf_multiwavelet(w, NtfMode::exact, default_grid(w));
        const std::string sigma = w.sigma.str();
        const std::string where = r.check("orbit-sum").witness ? r.check("orbit-sum").witness->xi.str() : std::string("-");
        const std::string lhs = r.check("orbit-sum").witness ? r.check("orbit-sum").witness->lhs : std::string("-");
        CHECK_MESSAGE(r.status() == Status::pass, "trial ", trial, " a=", a, " sigma=", sigma, " xi=", where,
                      " lhs=", lhs);
    }
}

TEST_CASE("merging the layers of K breaks the cross condition") {
    // pwl:a=1,b=1 has K = [-2, 2) with Per = 2: one profile on all of K is
    // not allowed, the two layered profiles are.
    const auto spec = builtin_spec("pwl:a=1,b=1");
    const auto layered = build_wavelets(spec);
    REQUIRE(layered.psis.size() == 2);
    CHECK(check_ntf_multiwavelet(layered, NtfMode::exact, default_grid(layered)).status() == Status::pass);

    WaveletFamily merged = layered;
    const PiecewiseLinear d = dilation_difference(spec);
    merged.psis = {SqrtProfile(d, d.support())};
    merged.partition = {d.support()};
    const auto r = check_ntf_multiwavelet(merged, NtfMode::exact, default_grid(merged));
    CHECK(r.check("orbit-sum").status == Status::pass);
    const auto& c = r.check("cross-orbit");
    CHECK(c.status == Status::fail);
    REQUIRE(c.witness);
    REQUIRE(c.witness->s);
    CHECK(*c.witness->s % 2 != 0);
}

TEST_CASE("sum |psi|^2 that does not vanish at 0 diverges") {
    const auto phi = build_scaling(builtin_spec("shannon"));
    WaveletFamily w{2, PiecewiseLinear(), {}, phi.profiles()};
    const auto r = check_ntf_multiwavelet(w, NtfMode::exact, default_grid(w));
    CHECK(r.check("orbit-sum").status == Status::fail);
}

TEST_CASE("wavelets from scaling and the characterization") {
    for (const char* name : {"shannon", "pwl:a=1/2,b=1/2", "pwl:a=1,b=1"}) {
        const auto spec = builtin_spec(name);
        const auto phi = build_scaling(spec);
        const auto psi = build_wavelets(spec);
        const auto r = check_characterization(phi, psi, default_grid(phi, psi));
        CHECK_MESSAGE(r.status() == Status::pass, name);
        CHECK(r.checks().size() == 3);
    }
    const auto phi = build_scaling(builtin_spec("shannon"));
    const auto bump = build_wavelets(builtin_spec("pwl:a=1/2,b=1/2"));
    const auto r = check_wavelets_from_scaling(phi, bump, default_grid(phi, bump));
    const auto& c = r.check("cross-on-lattice");
    CHECK(c.status == Status::fail);
    REQUIRE(c.witness);
    CHECK(c.witness->s == 0L);
    CHECK(r.check("cross-off-lattice").status == Status::pass);

    const auto psi = build_wavelets(builtin_spec("shannon"));
    CHECK(check_wavelets_from_scaling(phi, scaled_family(psi, R(101, 100)), default_grid(phi, psi)).status() == Status::fail);
}

TEST_CASE("decay exit index") {
    const auto shannon = build_scaling(builtin_spec("shannon"));
    // sigma = chi_[-1,1): exits once 2^j |xi| >= 1.
    for (const auto& xi : {R(3, 10), R(1, 3), R(-3, 10), R(7, 1000), R(9, 10)}) {
        CHECK(decay_exit_index(shannon, xi) == brute_exit(shannon, xi));
        if (xi > R(0)) {
            const long expected = static_cast<long>(std::ceil(std::log2(1 / xi.to_double())));
            CHECK(decay_exit_index(shannon, xi) == expected);
        }
    }
    CHECK(decay_exit_index(shannon, R(-1, 2)) == 2);
    const auto wide = build_scaling(builtin_spec("pwl:a=1,b=1"));
    CHECK(decay_exit_index(wide, R(1, 2)) == 1);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const auto xi = framesmith::testing::random_rational(rng, -3, 3, 97);
        if (xi.is_zero()) continue;
        CHECK(decay_exit_index(wide, xi) == brute_exit(wide, xi));
    }
}

TEST_CASE("sufficient conditions") {
    const auto spec = builtin_spec("pwl:a=1/2,b=1/2");
    const auto phi = build_scaling(spec);
    const auto psi = build_wavelets(spec);
    const auto r = check_sufficiency(phi, psi, default_grid(phi, psi));
    CHECK(r.status() == Status::pass);
    CHECK(r.checks().size() == 5);

    // Halved sigma: phi^2 = sigma / 2.
    ScalingFamily halved = phi;
    for (auto& [k, p] : halved.phis) p = SqrtProfile(p.square().scaled(R(1, 2)), p.domain());
    const auto h = check_sufficiency(halved, psi, default_grid(halved, psi));
    const auto& c = h.check("limit-at-zero");
    CHECK(c.status == Status::fail);
    REQUIRE(c.witness);
    CHECK(c.witness->lhs == "limits 1/2, 1/2");

    const auto shannon = build_scaling(builtin_spec("shannon"));
    const WaveletFamily empty{2, shannon.sigma, {}, {}};
    const auto e = check_sufficiency(shannon, empty, default_grid(shannon, empty));
    const auto& c2 = e.check("sufficient-on-lattice");
    CHECK(c2.status == Status::fail);
    REQUIRE(c2.witness);
    CHECK(c2.witness->s == 0L);
}

TEST_CASE("soundness chain on random admissible sigma") {
    std::mt19937_64 rng(0x5EED);
    for (int trial = 0; trial < 20; ++trial) {
        const long a = std::array<long, 3>{2, 3, -2}[trial % 3];
        const SpectralSpec spec{framesmith::testing::random_admissible_sigma(rng, a < 0), a};
        REQUIRE(admissibility_check(spec).admissible());
        const auto phi = build_scaling(spec);
        const auto psi = build_wavelets(spec);
        const auto grid = default_grid(phi, psi);
        const auto t = check_sufficiency(phi, psi, grid);
        const std::string sigma = spec.sigma.str();
        CHECK_MESSAGE(t.status() == Status::pass, "trial ", trial, " sigma=", sigma);
        if (t.status() == Status::pass) CHECK(check_ntf_multiwavelet(psi, NtfMode::exact, grid).status() == Status::pass);
    }
}

TEST_CASE("density and monotonicity") {
    for (const char* name : {"pwl:a=1/2,b=1/2", "shannon"}) {
        const auto phi = build_scaling(builtin_spec(name));
        CHECK(check_density(phi, verification_grid({}, Interval{R(-2), R(2)})).status() == Status::pass);
    }
    const auto narrow = builtin_spec("pwl:a=1/2,b=1/2");
    SpectralSpec quarter{PiecewiseLinear::indicator(IntervalSet::single(R(-1, 4), R(1, 4))), 2};
    CHECK(admissibility_check(quarter).admissible());
    const auto phi = build_scaling(quarter);
    CHECK(check_density(phi, verification_grid({}, Interval{R(-1), R(1)})).status() == Status::pass);
    (void)narrow;

    // sigma = chi_[-1/4,1/4) + chi_[1/2,1): 3/4 -> 3/8 drops from 1 to 0.
    const auto bumpy = PiecewiseLinear::indicator(
        IntervalSet::single(R(-1, 4), R(1, 4)).unite(IntervalSet::single(R(1, 2), R(1))));
    ScalingFamily odd{2, bumpy, {{0, SqrtProfile(bumpy, IntervalSet::single(R(-1), R(1)))}}};
    const auto r = check_density(odd, {R(3, 4)});
    CHECK(r.check("density").status == Status::pass);
    const auto& c = r.check("monotone-orbit");
    CHECK(c.status == Status::fail);
    REQUIRE(c.witness);
    CHECK(c.witness->j == 1L);
}

TEST_CASE("wavelet sets") {
    const Rational W(64);
    CHECK(check_waveletset({shannon_set()}, 2, W, 24).status() == Status::pass);
    CHECK(check_waveletset({journe_set()}, 2, W, 24).status() == Status::pass);

    const auto perturbed = IntervalSet::single(R(-2), R(-1)).unite(IntervalSet::single(R(1), R(21, 10)));
    const auto r = check_waveletset({perturbed}, 2, W, 24);
    const auto& c = r.check("dilation-tiling");
    CHECK(c.status == Status::fail);
    REQUIRE(c.witness);
    CHECK(c.witness->lhs.find("covered at least twice on [") == 0);
    CHECK(dilate_count(perturbed, 2, c.witness->xi) >= 2);
    CHECK(c.tail_bound == W * pow(R(2), -24) * R(2));
    CHECK(r.check("disjoint").status == Status::pass);
    // [-2,-1) + 4 meets [2, 21/10) as well.
    REQUIRE(r.check("translate-free").witness);
    CHECK(std::labs(*r.check("translate-free").witness->s) == 2);

    // Shannon split into two pieces is a multiwavelet set of two functions.
    CHECK(check_waveletset({IntervalSet::single(R(-2), R(-1)), IntervalSet::single(R(1), R(2))}, 2, W, 24).status() ==
          Status::pass);
    const auto overlap = check_waveletset({shannon_set(), IntervalSet::single(R(3, 2), R(2))}, 2, W, 24);
    CHECK(overlap.check("disjoint").status == Status::fail);

    const auto translate = check_waveletset({IntervalSet::single(R(1, 2), R(1)).unite(IntervalSet::single(R(5, 2), R(3)))},
                                            2, W, 10);
    const auto& t = translate.check("translate-free");
    CHECK(t.status == Status::fail);
    REQUIRE(t.witness);
    REQUIRE(t.witness->s);
    CHECK(perturbed.contains(R(0)) == false);
    const Rational x = t.witness->xi, y = x + R(2 * *t.witness->s);
    CHECK(translate.check("translate-free").witness->s == 1L);
    CHECK((IntervalSet::single(R(1, 2), R(1)).contains(x) || IntervalSet::single(R(5, 2), R(3)).contains(x)));
    CHECK((IntervalSet::single(R(1, 2), R(1)).contains(y) || IntervalSet::single(R(5, 2), R(3)).contains(y)));

    const auto gap = check_waveletset({IntervalSet::single(R(1), R(3, 2))}, 2, W, 24);
    CHECK(gap.check("dilation-tiling").status == Status::fail);
    CHECK(gap.check("dilation-tiling").witness->lhs.find("covered 0 times") == 0);

    const auto touching = check_waveletset({IntervalSet::single(R(0), R(1))}, 2, W, 24);
    const auto& z = touching.check("dilation-tiling");
    CHECK(z.status == Status::fail);
    CHECK(IntervalSet::single(R(0), R(1)).contains(z.witness->xi));
    CHECK(IntervalSet::single(R(0), R(1)).contains(z.witness->xi * R(4)));

    // Negative dilation: [-2,-1) u [1,2) also tiles under a = -2.
    CHECK(check_waveletset({shannon_set()}, -2, W, 24).status() == Status::pass);
}

TEST_CASE("wavelet set round trip through classification") {
    for (const auto& seed : {IntervalSet::single(R(-1), R(1)), dilation_closure(journe_set(), 2).set}) {
        const auto cls = classify_waveletset_seed(seed, 2);
        REQUIRE(cls.kind == SeedClass::orthonormal);
        const auto w = build_wavelets({PiecewiseLinear::indicator(seed), 2});
        CHECK(check_waveletset(w.partition, 2, R(64), 24).status() == Status::pass);
    }
}

TEST_CASE("semi-orthogonality") {
    CHECK(check_semiorthogonal(build_wavelets(builtin_spec("shannon"))).status() == Status::pass);
    CHECK(check_semiorthogonal(WaveletFamily{}).status() == Status::pass);
    // Wavelet-set family (chi of E_i): dilated supports are disjoint.
    const auto journe = build_wavelets(builtin_spec("journe"));
    CHECK(check_semiorthogonal(journe).status() == Status::pass);

    const auto bump = build_wavelets(builtin_spec("pwl:a=1/2,b=1/2"));
    const auto r = check_semiorthogonal(bump);
    const auto& c = r.check("semiorthogonal");
    CHECK(c.status == Status::fail);
    REQUIRE(c.witness);
    CHECK(c.witness->j == 1L);
}
