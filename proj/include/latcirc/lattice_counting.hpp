#pragma once

// Counting lattice points strictly inside and exactly on a circle with a
// rational center and a rational squared radius, plus the closed-form
// origin-centered counters N(r) and nu(r).

#include "latcirc/exact_arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace latcirc {

struct LatticePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// Circle with rational center and positive rational squared radius.
struct Circle {
    Rational cx;
    Rational cy;
    Rational r2;

    Circle() : r2(1) {}
    Circle(Rational x, Rational y, Rational rr) : cx(std::move(x)), cy(std::move(y)), r2(std::move(rr)) {
        if (r2.sign() <= 0) throw std::invalid_argument("Circle: squared radius must be positive");
    }

    friend bool operator==(const Circle&, const Circle&) = default;
};

struct PointCount {
    std::int64_t interior = 0;
    std::int64_t boundary = 0;

    friend bool operator==(const PointCount&, const PointCount&) = default;
};

namespace detail {

// Circle scaled to a common denominator: center (x/d, y/d), r2 = q/d^2, d > 0.
template <class Int>
struct ScaledCircle {
    Int x;
    Int y;
    Int d;
    Int q;
};

inline ScaledCircle<Integer> scale(const Circle& c) {
    Integer d = boost::multiprecision::lcm(c.cx.den(), c.cy.den());
    d = boost::multiprecision::lcm(d, c.r2.den());
    return {c.cx.num() * (d / c.cx.den()), c.cy.num() * (d / c.cy.den()), d,
            c.r2.num() * ((d * d) / c.r2.den())};
}

// Scans rows [row_lo, row_hi]; each row is decided by one integer square
// root. on_boundary(p, q) is invoked for every point exactly on the circle,
// in increasing (q, p) order.
template <class Int, class OnBoundary>
PointCount count_rows(const ScaledCircle<Int>& c, Int row_lo, Int row_hi, OnBoundary&& on_boundary) {
    PointCount out;
    for (Int row = row_lo; row <= row_hi; ++row) {
        const Int e = c.d * row - c.y;
        const Int t = c.q - e * e;
        if (t < 0) continue;
        if (t > 0) {
            const Int s = isqrt_floor(Int(t - 1));
            const Int lo = ceil_div(Int(c.x - s), c.d);
            const Int hi = floor_div(Int(c.x + s), c.d);
            if (hi >= lo) out.interior += static_cast<std::int64_t>(hi - lo + 1);
        }
        const Int u = isqrt_floor(t);
        if (u * u != t) continue;
        const Int left = c.x - u;
        if (left % c.d == 0) {
            ++out.boundary;
            on_boundary(Int(left / c.d), row);
        }
        if (u != 0) {
            const Int right = c.x + u;
            if (right % c.d == 0) {
                ++out.boundary;
                on_boundary(Int(right / c.d), row);
            }
        }
    }
    return out;
}

template <class OnBoundary>
PointCount scan_circle(const Circle& c, OnBoundary&& on_boundary) {
    const auto sc = scale(c);
    const Rational hi = rational_sqrt_bounds(c.r2).hi;
    Integer row_lo = (c.cy - hi).floor() - 1;
    Integer row_hi = (c.cy + hi).ceil() + 1;
    return count_rows(sc, std::move(row_lo), std::move(row_hi), on_boundary);
}

}  // namespace detail

/// Interior and boundary lattice point counts, decided exactly.
inline PointCount count_points(const Circle& c) {
    return detail::scan_circle(c, [](const Integer&, const Integer&) {});
}

/// Boundary lattice points in lexicographic (x, y) order.
inline std::vector<LatticePoint> boundary_points(const Circle& c) {
    std::vector<LatticePoint> pts;
    detail::scan_circle(c, [&](const Integer& p, const Integer& q) {
        pts.push_back({p.convert_to<std::int64_t>(), q.convert_to<std::int64_t>()});
    });
    std::sort(pts.begin(), pts.end());
    return pts;
}

/// Lattice points inside or on the origin circle of squared radius r2.
inline Integer closed_count_N(const Rational& r2) {
    if (r2.sign() <= 0) throw std::domain_error("closed_count_N: nonpositive r2");
    const Integer fr = floor_sqrt(r2);
    Integer sum = 0;
    for (Integer j = 1; j <= fr; ++j) sum += floor_sqrt(r2 - Rational(Integer(j * j)));
    return 1 + 4 * fr + 4 * sum;
}

/// Lattice points strictly inside the origin circle of squared radius r2.
inline Integer closed_count_nu(const Rational& r2) {
    if (r2.sign() <= 0) throw std::domain_error("closed_count_nu: nonpositive r2");
    const Integer cr = ceil_sqrt(r2);
    Integer sum = 0;
    for (Integer j = 1; j <= cr - 1; ++j) sum += ceil_sqrt(r2 - Rational(Integer(j * j))) - 1;
    return 4 * cr - 3 + 4 * sum;
}

struct GaussError {
    double error;
    bool within_bound;
};

/// E(r) = N(r) - pi r^2 against |E| <= 2 sqrt(2) pi r.
inline GaussError gauss_error(const Rational& r) {
    if (r.sign() <= 0) throw std::domain_error("gauss_error: nonpositive radius");
    const double rd = r.to_double();
    const double n = closed_count_N(r * r).convert_to<double>();
    const double e = n - std::numbers::pi * rd * rd;
    const double bound = 2.0 * std::numbers::sqrt2 * std::numbers::pi * rd;
    return {e, std::abs(e) <= bound + 1e-9};
}

}  // namespace latcirc
