#include "latcirc/circle_enumeration.hpp"
#include "latcirc/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace latcirc;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

}  // namespace

TEST(KeyTriangle, Membership) {
    EXPECT_TRUE(KeyTriangle::contains(R(1, 2), R(0)));
    EXPECT_TRUE(KeyTriangle::contains(R(1, 2), R(1, 2)));
    EXPECT_TRUE(KeyTriangle::contains(R(1), R(0)));
    EXPECT_TRUE(KeyTriangle::contains(R(7, 10), R(1, 10)));
    EXPECT_FALSE(KeyTriangle::contains(R(49, 100), R(0)));
    EXPECT_FALSE(KeyTriangle::contains(R(3, 4), R(-1, 100)));
    EXPECT_FALSE(KeyTriangle::contains(R(3, 4), R(1, 3)));
}

TEST(Circumcircle, Examples) {
    const auto c = circumcircle({0, 0}, {1, 0}, {0, 1});
    ASSERT_TRUE(c);
    EXPECT_EQ(c->cx, R(1, 2));
    EXPECT_EQ(c->cy, R(1, 2));
    EXPECT_EQ(c->r2, R(1, 2));

    EXPECT_FALSE(circumcircle({0, 0}, {2, 0}, {4, 0}));
    EXPECT_FALSE(circumcircle({1, 1}, {1, 1}, {4, 0}));

    // Perpendicular bisectors of (0,3)-(1,-1) and (0,3)-(-3,2) meet at
    // (-23/26, 17/26); squared distance to (0,3) is 2125/338.
    const auto m = circumcircle({0, 3}, {1, -1}, {-3, 2});
    ASSERT_TRUE(m);
    EXPECT_EQ(m->cx, R(-23, 26));
    EXPECT_EQ(m->cy, R(17, 26));
    EXPECT_EQ(m->r2, R(2125, 338));
    EXPECT_EQ(count_points(*m).interior, 18);
}

TEST(Canonicalize, Examples) {
    const Circle fixed(R(1, 2), R(1, 2), R(5, 2));
    EXPECT_EQ(canonicalize(fixed), fixed);

    // (27/10, 39/10) -> translate (7/10, 9/10) -> y -> 1-y gives (7/10, 1/10).
    const Circle a = canonicalize(Circle(R(27, 10), R(39, 10), R(3)));
    EXPECT_EQ(a.cx, R(7, 10));
    EXPECT_EQ(a.cy, R(1, 10));
    EXPECT_TRUE(KeyTriangle::contains(a.cx, a.cy));

    const Circle orig(R(3, 10), R(1, 10), R(5));
    const Circle b = canonicalize(orig);
    EXPECT_EQ(b.cx, R(7, 10));
    EXPECT_EQ(b.cy, R(1, 10));
    EXPECT_EQ(count_points(b), naive_count(orig));
}

TEST(Canonicalize, RandomCirclesLandInTriangleWithSameCounts) {
    std::mt19937_64 rng(200);
    std::uniform_int_distribution<std::int64_t> den(1, 15), r2(1, 600);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t dx = den(rng), dy = den(rng), dr = den(rng);
        std::uniform_int_distribution<std::int64_t> cx(-9 * dx, 9 * dx), cy(-9 * dy, 9 * dy);
        const Circle c(R(cx(rng), dx), R(cy(rng), dy), R(r2(rng), dr));
        const CanonicalForm f = canonicalize_with_map(c);
        EXPECT_TRUE(KeyTriangle::contains(f.circle.cx, f.circle.cy));
        EXPECT_EQ(f.circle.r2, c.r2);
        EXPECT_EQ(count_points(f.circle), count_points(c));
        // the recorded map carries the center and every boundary point
        EXPECT_EQ(f.map.apply(c.cx, c.cy), std::make_pair(f.circle.cx, f.circle.cy));
        std::vector<LatticePoint> moved;
        for (auto p : boundary_points(c)) moved.push_back(f.map.apply(p));
        std::sort(moved.begin(), moved.end());
        EXPECT_EQ(moved, boundary_points(f.circle));
    }
}

TEST(Enumerate, SmallBounds) {
    const auto half = enumerate_lattice_circles(R(1, 2));
    ASSERT_EQ(half.size(), 1u);
    EXPECT_EQ(half[0], (CircleKey{R(1, 2), R(1, 2), R(1, 2)}));

    const auto s1 = enumerate_lattice_circles(R(5, 2));
    EXPECT_TRUE(std::ranges::count(s1, CircleKey{R(1, 2), R(1, 2), R(5, 2)}) == 1);

    const auto big = enumerate_lattice_circles(R(13));
    EXPECT_TRUE(std::ranges::any_of(big, [](const CircleKey& k) { return k.r2 == R(13); }));

    EXPECT_THROW(enumerate_lattice_circles(R(0)), std::invalid_argument);
    EXPECT_THROW(enumerate_lattice_circles(R(-1)), std::invalid_argument);
}

TEST(Enumerate, MatchesAllTriplesOracle) {
    for (const Rational& b2 : {R(1, 2), R(5, 2), R(4), R(9)}) {
        const auto fast = enumerate_lattice_circles(b2);
        const std::set<CircleKey> fast_set(fast.begin(), fast.end());
        EXPECT_EQ(fast_set.size(), fast.size()) << "duplicate at b2=" << b2;
        EXPECT_EQ(fast_set, naive_enumerate(b2)) << "b2=" << b2;
    }
}

TEST(Enumerate, EveryCircleIsAKeyedLatticeCircleWithCorrectCounts) {
    const auto all = enumerate_compact(R(30));
    ASSERT_FALSE(all.empty());
    for (std::size_t i = 0; i < all.size(); ++i) {
        const CircleKey k = all[i].circle.key();
        EXPECT_TRUE(KeyTriangle::contains(k.cx, k.cy));
        EXPECT_LE(k.r2, R(30));
        EXPECT_EQ(all[i].count, count_points(k.circle()));
        EXPECT_GE(all[i].count.boundary, 3);
        if (i > 0) {
            EXPECT_LT(all[i - 1].circle.key(), k);
        }
    }
}

TEST(Enumerate, IndependentOfWorkerCount) {
    EnumerationOptions one, three;
    one.threads = 1;
    three.threads = 3;
    const auto a = enumerate_lattice_circles(R(60), one);
    const auto b = enumerate_lattice_circles(R(60), three);
    EXPECT_EQ(a, b);
}

TEST(Enumerate, MaxInteriorFilter) {
    EnumerationOptions opts;
    opts.max_interior = 10;
    for (const auto& c : enumerate_compact(R(20), opts)) EXPECT_LE(c.count.interior, 10);
}

TEST(Enumerate, RejectsBoundsBeyondKernelRange) {
    EXPECT_THROW(enumerate_lattice_circles(R(1000000)), std::out_of_range);
}
