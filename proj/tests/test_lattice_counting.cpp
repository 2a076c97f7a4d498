#include "latcirc/circle_enumeration.hpp"
#include "latcirc/lattice_counting.hpp"
#include "latcirc/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace latcirc;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }
Circle C(Rational x, Rational y, Rational r2) { return Circle(std::move(x), std::move(y), std::move(r2)); }

Circle random_circle(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> den(1, 12);
    const std::int64_t dx = den(rng), dy = den(rng), dr = den(rng);
    std::uniform_int_distribution<std::int64_t> cx(-3 * dx, 3 * dx), cy(-3 * dy, 3 * dy), r2(1, 100 * dr);
    return C(R(cx(rng), dx), R(cy(rng), dy), R(r2(rng), dr));
}

}  // namespace

TEST(Circle, RejectsNonpositiveRadius) {
    EXPECT_THROW(C(R(0), R(0), R(0)), std::invalid_argument);
    EXPECT_THROW(C(R(0), R(0), R(-1)), std::invalid_argument);
}

TEST(CountPoints, Examples) {
    EXPECT_EQ(count_points(C(R(1, 2), R(1, 2), R(5, 2))), (PointCount{4, 8}));
    EXPECT_EQ(count_points(C(R(1, 2), R(1, 2), R(1, 2))), (PointCount{0, 4}));
    EXPECT_EQ(count_points(C(R(0), R(0), R(9))), (PointCount{25, 4}));
    EXPECT_EQ(count_points(C(R(0), R(0), R(1))), (PointCount{1, 4}));
    EXPECT_EQ(count_points(C(R(0), R(0), R(25))), (PointCount{69, 12}));
}

TEST(CountPoints, AgreesWithNaiveScanOnRandomCircles) {
    std::mt19937_64 rng(500);
    for (int i = 0; i < 500; ++i) {
        const Circle c = random_circle(rng);
        ASSERT_EQ(count_points(c), naive_count(c)) << c.cx << " " << c.cy << " " << c.r2;
    }
}

TEST(CountPoints, TinyCircleBetweenLatticePoints) {
    EXPECT_EQ(count_points(C(R(1, 2), R(1, 2), R(1, 100))), (PointCount{0, 0}));
    EXPECT_EQ(count_points(C(R(0), R(0), R(1, 100))), (PointCount{1, 0}));
}

TEST(CountPoints, MonotoneInRadius) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const Circle c = random_circle(rng);
        const Circle bigger = C(c.cx, c.cy, c.r2 + R(1, 7));
        const auto a = count_points(c), b = count_points(bigger);
        EXPECT_LE(a.interior, b.interior);
        EXPECT_LE(a.interior + a.boundary, b.interior + b.boundary);
    }
}

TEST(CountPoints, InvariantUnderLatticeIsometries) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 60; ++i) {
        const Circle c = random_circle(rng);
        const auto base = count_points(c);
        for (const Isometry& g : Isometry::point_group()) {
            for (const Isometry& t : {Isometry::translation(0, 0), Isometry::translation(3, -2)}) {
                const Isometry m = t.after(g);
                auto [x, y] = m.apply(c.cx, c.cy);
                EXPECT_EQ(count_points(C(x, y, c.r2)), base);
            }
        }
        // half-integer mirrors
        for (const Isometry& m : {Isometry::mirror_x_half(), Isometry::mirror_y_half(), Isometry::mirror_antidiagonal()}) {
            auto [x, y] = m.apply(c.cx, c.cy);
            EXPECT_EQ(count_points(C(x, y, c.r2)), base);
        }
    }
}

TEST(BoundaryPoints, Examples) {
    const std::vector<LatticePoint> corners{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    EXPECT_EQ(boundary_points(C(R(1, 2), R(1, 2), R(1, 2))), corners);

    const std::vector<LatticePoint> s1{{-1, 0}, {-1, 1}, {0, -1}, {0, 2}, {1, -1}, {1, 2}, {2, 0}, {2, 1}};
    EXPECT_EQ(boundary_points(C(R(1, 2), R(1, 2), R(5, 2))), s1);

    EXPECT_TRUE(boundary_points(C(R(0), R(0), R(3))).empty());
}

TEST(ClosedCountN, Examples) {
    EXPECT_EQ(closed_count_N(R(1)), 5);
    EXPECT_EQ(closed_count_N(R(4)), 13);
    EXPECT_EQ(closed_count_N(R(100)), 317);
    EXPECT_EQ(closed_count_N(R(2)), 9);  // irrational radius sqrt(2)
    EXPECT_THROW(closed_count_N(R(0)), std::domain_error);
}

TEST(ClosedCountNu, Examples) {
    EXPECT_EQ(closed_count_nu(R(1)), 1);
    EXPECT_EQ(closed_count_nu(R(2)), 5);
    EXPECT_EQ(closed_count_nu(R(9)), 25);
    EXPECT_THROW(closed_count_nu(R(-1)), std::domain_error);
}

TEST(ClosedCounts, MatchScanForOriginCircles) {
    for (std::int64_t num = 1; num <= 400; ++num)
        for (std::int64_t den : {1, 2, 3, 7}) {
            const Rational r2(num, den);
            const auto pc = naive_count(C(R(0), R(0), r2));
            EXPECT_EQ(closed_count_N(r2), pc.interior + pc.boundary) << r2;
            EXPECT_EQ(closed_count_nu(r2), pc.interior) << r2;
        }
}

TEST(ClosedCounts, DifferenceCountsCircumferencePoints) {
    for (std::int64_t k = 1; k <= 100; ++k) {
        std::int64_t direct = 0;
        for (std::int64_t p = -k; p <= k; ++p)
            for (std::int64_t q = -k; q <= k; ++q) direct += (p * p + q * q == k * k);
        EXPECT_EQ(closed_count_N(R(k * k)) - closed_count_nu(R(k * k)), direct) << k;
    }
}

TEST(GaussError, Examples) {
    const auto one = gauss_error(R(1));
    EXPECT_NEAR(one.error, 5 - M_PI, 1e-12);
    EXPECT_TRUE(one.within_bound);
    const auto two = gauss_error(R(2));
    EXPECT_NEAR(two.error, 13 - 4 * M_PI, 1e-12);
    EXPECT_TRUE(two.within_bound);
    EXPECT_TRUE(gauss_error(R(50)).within_bound);
    EXPECT_THROW(gauss_error(R(0)), std::domain_error);
}
