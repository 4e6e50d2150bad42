#include <random>

#include "doctest.h"
#include "framesmith/folding.hpp"
#include "test_support.hpp"

using namespace framesmith;
using framesmith::testing::R;

namespace {

// Brute-force Per(chi_K)(x): count even shifts 2k with x + 2k in K.
long brute_multiplicity(const IntervalSet& K, const Rational& x) {
    if (K.empty()) return 0;
    const long reach = mpz_class(K.radius().ceil()).get_si() + 2;
    long count = 0;
    for (long k = -reach; k <= reach; ++k)
        if (K.contains(x + Rational(2 * k))) ++count;
    return count;
}

void check_multiplicity_against_oracle(const IntervalSet& K, long den) {
    const auto m = per_multiplicity(K);
    // Midpoints of a grid finer than every endpoint grid.
    for (long n = -2 * den; n < 2 * den; ++n) {
        const Rational x(2 * n + 1, 4 * den);
        CHECK(m.at(x) == brute_multiplicity(K, x));
    }
    CHECK(m.integral() == K.measure());
}

void check_partition_postconditions(const IntervalSet& K) {
    const auto layers = layered_partition(K);
    const auto m = per_multiplicity(K);
    CHECK(static_cast<long>(layers.size()) == (K.empty() ? 0 : m.max()));
    IntervalSet unionset;
    Rational total;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        CHECK(per_multiplicity(layers[i]).max() <= 1);
        for (std::size_t j = 0; j < i; ++j) CHECK(layers[i].intersect(layers[j]).empty());
        // Congruence audit: folding K_i gives {Per >= i}.
        CHECK(per_multiplicity(layers[i]).at_least(1) == m.at_least(static_cast<long>(i) + 1));
        unionset = unionset.unite(layers[i]);
        total += layers[i].measure();
    }
    CHECK(unionset == K);
    CHECK(total == K.measure());
    CHECK(layered_partition(K) == layers);
}

}  // namespace

TEST_CASE("per multiplicity of simple sets") {
    const auto unit = per_multiplicity(IntervalSet::single(R(-1), R(1)));
    CHECK(unit.max() == 1);
    CHECK(unit.levels().size() == 1);

    // (-2, 2) is stored half-open as [-2, 2); the fold is 2 everywhere
    // (the open-set value 1 at xi = 0 is a measure-zero difference).
    const IntervalSet wide = IntervalSet::single(R(-2), R(2));
    const auto m = per_multiplicity(wide);
    CHECK(m.max() == 2);
    CHECK(m.at(R(-1, 2)) == 2);
    CHECK(m.at(R(1, 2)) == 2);
    check_multiplicity_against_oracle(wide, 4);

    const IntervalSet shannon{{R(-2), R(-1)}, {R(1), R(2)}};
    CHECK(per_multiplicity(shannon).max() == 1);
    CHECK(per_multiplicity(shannon).exactly(1) == IntervalSet::single(R(-1), R(1)));
    check_multiplicity_against_oracle(shannon, 4);

    const auto empty = per_multiplicity(IntervalSet());
    CHECK(empty.max() == 0);
    CHECK(reduce_to_fundamental(R(3)) == R(-1));
    CHECK(reduce_to_fundamental(R(-5, 2)) == R(-1, 2));
}

TEST_CASE("layered partition examples") {
    const auto layers = layered_partition(IntervalSet::single(R(-2), R(2)));
    REQUIRE(layers.size() == 2);
    CHECK(layers[0] == IntervalSet::single(R(-2), R(0)));
    CHECK(layers[1] == IntervalSet::single(R(0), R(2)));

    const IntervalSet shannon{{R(-2), R(-1)}, {R(1), R(2)}};
    const auto one = layered_partition(shannon);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == shannon);

    const auto unit = layered_partition(IntervalSet::single(R(-1), R(1)));
    REQUIRE(unit.size() == 1);
    CHECK(unit[0] == IntervalSet::single(R(-1), R(1)));

    CHECK(layered_partition(IntervalSet()).empty());
}

TEST_CASE("window partition cuts at odd integers") {
    const auto windows = window_partition(IntervalSet::single(R(-4), R(4)));
    REQUIRE(windows.size() == 5);
    CHECK(windows[0] == IntervalSet::single(R(-4), R(-3)));
    CHECK(windows[2] == IntervalSet::single(R(-1), R(1)));
    CHECK(windows[4] == IntervalSet::single(R(3), R(4)));
    CHECK(layered_partition(IntervalSet::single(R(-4), R(4))).size() == 4);
}

TEST_CASE("partition postconditions on random sets") {
    std::mt19937_64 rng(0x5EED);
    for (int trial = 0; trial < 150; ++trial) {
        const IntervalSet K = framesmith::testing::random_set(rng, -6, 6, 3, 6);
        check_multiplicity_against_oracle(K, 6);
        check_partition_postconditions(K);
    }
}
