#pragma once

// Mirror symmetries of the boundary lattice points of a circle.
//
// Lattice-invariant mirrors are x = c or y = c with 2c an integer, and
// y = +-x + m with m an integer. Any mirror of a boundary set passes through
// the center, so the lattice-invariant ones are read off the center alone.
// Geometric mirrors (any direction) are found by testing every line through
// the center and a boundary point, and every perpendicular bisector of a
// chord.

#include "latcirc/circle_enumeration.hpp"
#include "latcirc/exact_arith.hpp"
#include "latcirc/lattice_counting.hpp"
#include "latcirc/mc_classifier.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace latcirc {

enum class AxisFamily { vertical, horizontal, diagonal, antidiagonal, general };

inline std::string_view to_string(AxisFamily f) {
    switch (f) {
        case AxisFamily::vertical: return "vertical";
        case AxisFamily::horizontal: return "horizontal";
        case AxisFamily::diagonal: return "diagonal";
        case AxisFamily::antidiagonal: return "antidiagonal";
        case AxisFamily::general: return "general";
    }
    return "?";
}

/// Mirror line through a circle center.
///   vertical x = offset, horizontal y = offset,
///   diagonal y = x + offset, antidiagonal y = -x + offset,
///   general dy*x - dx*y = offset.
struct MirrorAxis {
    AxisFamily family = AxisFamily::general;
    Rational offset;
    bool lattice_invariant = false;
    std::int64_t dx = 0;  // primitive direction, dx > 0 or (dx == 0, dy > 0)
    std::int64_t dy = 1;

    bool is_slant() const { return family == AxisFamily::diagonal || family == AxisFamily::antidiagonal; }
    bool is_hv() const { return family == AxisFamily::vertical || family == AxisFamily::horizontal; }

    friend bool operator==(const MirrorAxis&, const MirrorAxis&) = default;
};

inline MirrorAxis axis_through(const Rational& cx, const Rational& cy, std::int64_t dx, std::int64_t dy) {
    const std::int64_t g = std::gcd(dx, dy);
    dx /= g;
    dy /= g;
    if (dx < 0 || (dx == 0 && dy < 0)) {
        dx = -dx;
        dy = -dy;
    }
    MirrorAxis a;
    a.dx = dx;
    a.dy = dy;
    if (dx == 0) {
        a.family = AxisFamily::vertical;
        a.offset = cx;
        a.lattice_invariant = (Rational(2) * cx).is_integer();
    } else if (dy == 0) {
        a.family = AxisFamily::horizontal;
        a.offset = cy;
        a.lattice_invariant = (Rational(2) * cy).is_integer();
    } else if (dx == dy) {
        a.family = AxisFamily::diagonal;
        a.offset = cy - cx;
        a.lattice_invariant = a.offset.is_integer();
    } else if (dx == -dy) {
        a.family = AxisFamily::antidiagonal;
        a.offset = cx + cy;
        a.lattice_invariant = a.offset.is_integer();
    } else {
        a.family = AxisFamily::general;
        a.offset = Rational(dy) * cx - Rational(dx) * cy;
    }
    return a;
}

/// Exact reflection of p across the axis through (cx, cy); empty when the
/// image is not a lattice point.
inline std::optional<LatticePoint> reflect(LatticePoint p, const Rational& cx, const Rational& cy,
                                           const MirrorAxis& axis) {
    const Rational wx = Rational(p.x) - cx, wy = Rational(p.y) - cy;
    const Rational vx(axis.dx), vy(axis.dy);
    const Rational k = Rational(2) * (wx * vx + wy * vy) / (vx * vx + vy * vy);
    const Rational rx = cx + k * vx - wx, ry = cy + k * vy - wy;
    if (!rx.is_integer() || !ry.is_integer()) return std::nullopt;
    return LatticePoint{rx.num().convert_to<std::int64_t>(), ry.num().convert_to<std::int64_t>()};
}

/// Lattice-invariant mirror lines through the center.
inline std::vector<MirrorAxis> lattice_axes(const Circle& c) {
    std::vector<MirrorAxis> out;
    for (auto [dx, dy] : {std::pair{0, 1}, {1, 0}, {1, 1}, {1, -1}}) {
        MirrorAxis a = axis_through(c.cx, c.cy, dx, dy);
        if (a.lattice_invariant) out.push_back(std::move(a));
    }
    return out;
}

/// Every line through the center whose reflection maps `points` onto itself.
inline std::vector<MirrorAxis> geometric_axes(std::span<const LatticePoint> points, const Circle& c) {
    const Integer den = boost::multiprecision::lcm(c.cx.den(), c.cy.den());
    auto scaled = [&](const Rational& r) { return (r * Rational(den)).num().convert_to<std::int64_t>(); };
    const std::int64_t sx = scaled(c.cx), sy = scaled(c.cy), sd = den.convert_to<std::int64_t>();

    std::set<std::pair<std::int64_t, std::int64_t>> directions;
    auto add = [&](std::int64_t dx, std::int64_t dy) {
        if (dx == 0 && dy == 0) return;
        const std::int64_t g = std::gcd(dx, dy);
        dx /= g;
        dy /= g;
        if (dx < 0 || (dx == 0 && dy < 0)) {
            dx = -dx;
            dy = -dy;
        }
        directions.insert({dx, dy});
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
        add(points[i].x * sd - sx, points[i].y * sd - sy);
        for (std::size_t j = i + 1; j < points.size(); ++j)
            add(-(points[j].y - points[i].y), points[j].x - points[i].x);
    }

    const std::set<LatticePoint> members(points.begin(), points.end());
    std::vector<MirrorAxis> out;
    for (auto [dx, dy] : directions) {
        MirrorAxis axis = axis_through(c.cx, c.cy, dx, dy);
        bool ok = true;
        for (const auto& p : points) {
            auto img = reflect(p, c.cx, c.cy, axis);
            if (!img || !members.contains(*img)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(std::move(axis));
    }
    return out;
}

enum class SymmetryBucket { two_plus_axes, slant_45, one_hv_axis, asymmetric_3pt, asymmetric_4pt, other };

inline std::string_view to_string(SymmetryBucket b) {
    switch (b) {
        case SymmetryBucket::two_plus_axes: return "two-plus-axes";
        case SymmetryBucket::slant_45: return "slant-45";
        case SymmetryBucket::one_hv_axis: return "one-hv-axis";
        case SymmetryBucket::asymmetric_3pt: return "asymmetric-3pt";
        case SymmetryBucket::asymmetric_4pt: return "asymmetric-4pt";
        case SymmetryBucket::other: return "other";
    }
    return "?";
}

inline constexpr std::array<SymmetryBucket, 6> kBucketPrecedence = {
    SymmetryBucket::two_plus_axes,  SymmetryBucket::slant_45,       SymmetryBucket::one_hv_axis,
    SymmetryBucket::asymmetric_3pt, SymmetryBucket::asymmetric_4pt, SymmetryBucket::other};

/// First matching rule in kBucketPrecedence order: >= 2 lattice axes; one
/// slant lattice axis; one horizontal/vertical lattice axis; no lattice
/// axis with 3 points; no lattice axis with 4 points; anything else.
inline SymmetryBucket bucket_for(std::span<const MirrorAxis> lattice, std::int64_t boundary_count) {
    if (lattice.size() >= 2) return SymmetryBucket::two_plus_axes;
    if (lattice.size() == 1) return lattice[0].is_slant() ? SymmetryBucket::slant_45 : SymmetryBucket::one_hv_axis;
    if (boundary_count == 3) return SymmetryBucket::asymmetric_3pt;
    if (boundary_count == 4) return SymmetryBucket::asymmetric_4pt;
    return SymmetryBucket::other;
}

struct SymmetryReport {
    std::int64_t n = 0;
    bool strong = false;
    std::int64_t boundary_count = 0;
    std::vector<MirrorAxis> lattice_axes;
    std::vector<MirrorAxis> geometric_axes;
    SymmetryBucket bucket = SymmetryBucket::other;

    std::int64_t geometric_axes_count() const { return static_cast<std::int64_t>(geometric_axes.size()); }
};

inline SymmetryReport analyze_circle(std::int64_t n, const Circle& c) {
    SymmetryReport r;
    r.n = n;
    const auto pts = boundary_points(c);
    r.boundary_count = static_cast<std::int64_t>(pts.size());
    r.lattice_axes = lattice_axes(c);
    r.geometric_axes = geometric_axes(pts, c);
    r.bucket = bucket_for(r.lattice_axes, r.boundary_count);
    return r;
}

struct CensusBin {
    std::int64_t mc = 0;
    std::int64_t lattice_symmetric = 0;    // at least one lattice-invariant axis
    std::int64_t geometric_symmetric = 0;  // at least one axis of any direction
    std::map<SymmetryBucket, std::int64_t> buckets;
};

struct SymmetryCensus {
    std::vector<SymmetryReport> reports;     // one per MC n, from its witness circle
    std::map<std::int64_t, CensusBin> bins;  // keyed by floor(n / bin_width)
    CensusBin all;
    CensusBin strong;
    std::int64_t bin_width = 100;
};

inline SymmetryCensus symmetry_census(std::span<const Classification> rows, const RhoTable& table,
                                      std::int64_t bin_width = 100) {
    SymmetryCensus census;
    census.bin_width = bin_width;
    auto tally = [](CensusBin& bin, const SymmetryReport& r) {
        ++bin.mc;
        if (!r.lattice_axes.empty()) ++bin.lattice_symmetric;
        if (!r.geometric_axes.empty()) ++bin.geometric_symmetric;
        ++bin.buckets[r.bucket];
    };
    for (const auto& row : rows) {
        if (!row.is_mc()) continue;
        SymmetryReport r = analyze_circle(row.n, table.at(row.n)->witness.circle());
        r.strong = row.strong;
        tally(census.bins[row.n / bin_width], r);
        tally(census.all, r);
        if (r.strong) tally(census.strong, r);
        census.reports.push_back(std::move(r));
    }
    return census;
}

}  // namespace latcirc
