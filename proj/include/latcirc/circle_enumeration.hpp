#pragma once

// Lattice circles (at least three lattice points on the circumference):
// circumcircles, folding into the key triangle, and complete deduplicated
// enumeration of all lattice circles centered in the key triangle.
//
// The key triangle has vertices (1/2,0), (1/2,1/2), (1,0) and is a closed
// fundamental domain for the lattice-invariant isometries, so a circle
// centered in it is its own canonical representative.

#include "latcirc/exact_arith.hpp"
#include "latcirc/lattice_counting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace latcirc {

struct KeyTriangle {
    static bool contains(const Rational& x, const Rational& y) {
        static const Rational half(1, 2);
        return x >= half && y.sign() >= 0 && x + y <= Rational(1);
    }
};

/// Identity of a lattice circle centered in the key triangle.
struct CircleKey {
    Rational cx;
    Rational cy;
    Rational r2;

    Circle circle() const { return Circle(cx, cy, r2); }

    friend bool operator==(const CircleKey&, const CircleKey&) = default;
    friend std::strong_ordering operator<=>(const CircleKey& a, const CircleKey& b) {
        if (auto c = a.cx <=> b.cx; c != 0) return c;
        if (auto c = a.cy <=> b.cy; c != 0) return c;
        return a.r2 <=> b.r2;
    }
};

/// Exact circumcircle; nullopt for collinear or repeated points.
inline std::optional<Circle> circumcircle(LatticePoint a, LatticePoint b, LatticePoint c) {
    const Integer ux = b.x - a.x, uy = b.y - a.y;
    const Integer vx = c.x - a.x, vy = c.y - a.y;
    const Integer d = 2 * (ux * vy - uy * vx);
    if (d == 0) return std::nullopt;
    const Integer uu = ux * ux + uy * uy;
    const Integer vv = vx * vx + vy * vy;
    const Integer ox = vy * uu - uy * vv;
    const Integer oy = ux * vv - vx * uu;
    Rational r2(Integer(ox * ox + oy * oy), Integer(d * d));
    return Circle(Rational(a.x) + Rational(ox, d), Rational(a.y) + Rational(oy, d), std::move(r2));
}

/// Lattice-invariant isometry p -> A p + t, A a signed permutation matrix.
struct Isometry {
    std::array<int, 4> a{1, 0, 0, 1};  // row-major 2x2
    std::int64_t tx = 0;
    std::int64_t ty = 0;

    LatticePoint apply(LatticePoint p) const {
        return {a[0] * p.x + a[1] * p.y + tx, a[2] * p.x + a[3] * p.y + ty};
    }
    std::pair<Rational, Rational> apply(const Rational& x, const Rational& y) const {
        return {Rational(a[0]) * x + Rational(a[1]) * y + Rational(tx),
                Rational(a[2]) * x + Rational(a[3]) * y + Rational(ty)};
    }
    /// (this o first)(p) = this(first(p))
    Isometry after(const Isometry& first) const {
        Isometry out;
        out.a = {a[0] * first.a[0] + a[1] * first.a[2], a[0] * first.a[1] + a[1] * first.a[3],
                 a[2] * first.a[0] + a[3] * first.a[2], a[2] * first.a[1] + a[3] * first.a[3]};
        out.tx = a[0] * first.tx + a[1] * first.ty + tx;
        out.ty = a[2] * first.tx + a[3] * first.ty + ty;
        return out;
    }

    static Isometry translation(std::int64_t x, std::int64_t y) { return {{1, 0, 0, 1}, x, y}; }
    static Isometry mirror_y_half() { return {{1, 0, 0, -1}, 0, 1}; }     // y -> 1 - y
    static Isometry mirror_x_half() { return {{-1, 0, 0, 1}, 1, 0}; }     // x -> 1 - x
    static Isometry mirror_antidiagonal() { return {{0, -1, -1, 0}, 1, 1}; }  // (x,y) -> (1-y, 1-x)

    /// All eight point-group elements (rotations by 90 degrees and mirrors).
    static std::array<Isometry, 8> point_group() {
        return {{{{1, 0, 0, 1}, 0, 0},
                 {{0, -1, 1, 0}, 0, 0},
                 {{-1, 0, 0, -1}, 0, 0},
                 {{0, 1, -1, 0}, 0, 0},
                 {{-1, 0, 0, 1}, 0, 0},
                 {{1, 0, 0, -1}, 0, 0},
                 {{0, 1, 1, 0}, 0, 0},
                 {{0, -1, -1, 0}, 0, 0}}};
    }
};

struct CanonicalForm {
    Circle circle;
    Isometry map;  // carries the input circle onto `circle`
};

/// Folds the center into the key triangle: translate into [0,1)^2, then
/// mirror y -> 1-y if cy > 1/2, x -> 1-x if cx < 1/2, and
/// (x,y) -> (1-y,1-x) if cx + cy > 1.
inline CanonicalForm canonicalize_with_map(const Circle& c) {
    static const Rational half(1, 2);
    Isometry map = Isometry::translation(static_cast<std::int64_t>(-c.cx.floor()),
                                         static_cast<std::int64_t>(-c.cy.floor()));
    auto [x, y] = map.apply(c.cx, c.cy);
    auto step = [&](bool cond, const Isometry& m) {
        if (!cond) return;
        map = m.after(map);
        std::tie(x, y) = m.apply(x, y);
    };
    step(y > half, Isometry::mirror_y_half());
    step(x < half, Isometry::mirror_x_half());
    step(x + y > Rational(1), Isometry::mirror_antidiagonal());
    return {Circle(std::move(x), std::move(y), c.r2), map};
}

inline Circle canonicalize(const Circle& c) { return canonicalize_with_map(c).circle; }

inline CircleKey make_key(const Circle& c) {
    auto canon = canonicalize(c);
    return {canon.cx, canon.cy, canon.r2};
}

/// Lattice circle in scaled integer form: center (x/d, y/d), r2 = q/d^2,
/// d > 0 and gcd(x, y, d) = 1.
struct CompactCircle {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t d = 1;
    std::int64_t q = 0;

    Rational cx() const { return Rational(x, d); }
    Rational cy() const { return Rational(y, d); }
    Rational r2() const { return Rational(Integer(q), Integer(Integer(d) * d)); }
    CircleKey key() const { return {cx(), cy(), r2()}; }

    friend bool operator==(const CompactCircle&, const CompactCircle&) = default;
};

namespace detail {

using i128 = __int128;

inline int cmp128(i128 a, i128 b) { return a < b ? -1 : (a > b ? 1 : 0); }

inline int compare_r2(const CompactCircle& a, const CompactCircle& b) {
    return cmp128(i128(a.q) * b.d * b.d, i128(b.q) * a.d * a.d);
}

// Lexicographic (cx, cy, r2) order, matching CircleKey.
inline int compare_key(const CompactCircle& a, const CompactCircle& b) {
    if (int c = cmp128(i128(a.x) * b.d, i128(b.x) * a.d)) return c;
    if (int c = cmp128(i128(a.y) * b.d, i128(b.y) * a.d)) return c;
    return compare_r2(a, b);
}

}  // namespace detail

struct EnumeratedCircle {
    CompactCircle circle;
    PointCount count;
};

struct EnumerationOptions {
    /// Drop circles enclosing more than this many points.
    std::optional<std::int64_t> max_interior;
    /// Worker count; 0 means the THREADS environment variable, else hardware.
    unsigned threads = 0;
};

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Scan box for lattice circles centered in the key triangle with r2 <= b2.
struct ScanBox {
    std::int64_t x_lo, x_hi, y_lo, y_hi;

    static ScanBox for_bound(const Rational& b2) {
        const Rational hi = rational_sqrt_bounds(b2).hi;
        const Rational half(1, 2);
        auto to64 = [](const Integer& v) { return v.convert_to<std::int64_t>(); };
        return {to64((half - hi).floor() - 1), to64((Rational(1) + hi).ceil() + 1),
                to64((-hi).floor() - 1), to64((half + hi).ceil() + 1)};
    }
};

namespace detail {

class CircleEnumerator {
public:
    CircleEnumerator(const Rational& b2, std::optional<std::int64_t> max_interior)
        : max_interior_(max_interior) {
        if (b2.sign() <= 0) throw std::invalid_argument("enumerate: bound must be positive");
        const ScanBox box = ScanBox::for_bound(b2);
        const std::int64_t extent = std::max({-box.x_lo, box.x_hi, -box.y_lo, box.y_hi});
        if (extent > 250 || b2.num() > Integer(1) << 40 || b2.den() > Integer(1) << 40)
            throw std::out_of_range("enumerate: bound outside the 64-bit kernel range");
        bn_ = b2.num().convert_to<std::int64_t>();
        bd_ = b2.den().convert_to<std::int64_t>();

        // Any boundary point lies within sqrt(b2) of a center in the triangle,
        // hence within sqrt(b2) + sqrt(5)/6 of its centroid (2/3, 1/6).
        const double reach = std::sqrt(b2.to_double()) + std::sqrt(5.0) / 6.0 + 1e-6;
        for (std::int64_t px = box.x_lo; px <= box.x_hi; ++px)
            for (std::int64_t py = box.y_lo; py <= box.y_hi; ++py) {
                const double gx = (6.0 * px - 4.0) / 6.0, gy = (6.0 * py - 1.0) / 6.0;
                if (gx * gx + gy * gy <= reach * reach) points_.push_back({px, py});
            }
        std::sort(points_.begin(), points_.end());
    }

    std::size_t anchor_count() const { return points_.size(); }

    // Visits every lattice circle whose lexicographically smallest boundary
    // point is points_[anchor].
    template <class Visit>
    void visit_anchor(std::size_t anchor, Visit&& visit) {
        const LatticePoint a = points_[anchor];
        below_.clear();
        above_.clear();
        for (std::size_t j = 0; j < points_.size(); ++j) {
            if (j == anchor) continue;
            const LatticePoint b = points_[j];
            if (!bisector_meets_triangle(a, b)) continue;
            const std::int64_t dx = b.x - a.x, dy = b.y - a.y;
            if (i128(dx * dx + dy * dy) * bd_ > i128(4) * bn_) continue;
            (j < anchor ? below_ : above_).push_back(b);
        }

        centers_.clear();
        for (std::size_t i = 0; i < above_.size(); ++i) {
            const std::int64_t ux = above_[i].x - a.x, uy = above_[i].y - a.y;
            const std::int64_t uu = ux * ux + uy * uy;
            for (std::size_t k = i + 1; k < above_.size(); ++k) {
                const std::int64_t vx = above_[k].x - a.x, vy = above_[k].y - a.y;
                std::int64_t d = 2 * (ux * vy - uy * vx);
                if (d == 0) continue;
                const std::int64_t vv = vx * vx + vy * vy;
                std::int64_t ox = vy * uu - uy * vv;
                std::int64_t oy = ux * vv - vx * uu;
                if (d < 0) {
                    d = -d;
                    ox = -ox;
                    oy = -oy;
                }
                const std::int64_t x = a.x * d + ox, y = a.y * d + oy;
                if (2 * x < d || y < 0 || x + y > d) continue;
                const std::int64_t q = ox * ox + oy * oy;
                if (i128(q) * bd_ > i128(bn_) * d * d) continue;
                const std::int64_t g = std::gcd(std::gcd(x, y), d);
                centers_.push_back({x / g, y / g, d / g, q / (g * g)});
            }
        }
        std::sort(centers_.begin(), centers_.end(), [](const CompactCircle& l, const CompactCircle& r) {
            return std::tie(l.d, l.x, l.y) < std::tie(r.d, r.x, r.y);
        });
        centers_.erase(std::unique(centers_.begin(), centers_.end()), centers_.end());

        for (const CompactCircle& c : centers_) {
            if (std::any_of(below_.begin(), below_.end(), [&](LatticePoint p) { return on_circle(c, p); }))
                continue;
            const std::int64_t root = isqrt_floor(c.q);
            ScaledCircle<std::int64_t> sc{c.x, c.y, c.d, c.q};
            const PointCount count = count_rows(sc, ceil_div(c.y - root, c.d), floor_div(c.y + root, c.d),
                                                [](std::int64_t, std::int64_t) {});
            if (max_interior_ && count.interior > *max_interior_) continue;
            visit(EnumeratedCircle{c, count});
        }
    }

private:
    static bool on_circle(const CompactCircle& c, LatticePoint p) {
        const std::int64_t ex = c.d * p.x - c.x, ey = c.d * p.y - c.y;
        return ex * ex + ey * ey == c.q;
    }

    // |O-a|^2 - |O-b|^2 is affine in O; evaluate it at the doubled vertices
    // (1,0), (1,1), (2,0) of the key triangle.
    static bool bisector_meets_triangle(LatticePoint a, LatticePoint b) {
        const std::int64_t wx = b.x - a.x, wy = b.y - a.y;
        const std::int64_t base = a.x * a.x + a.y * a.y - b.x * b.x - b.y * b.y;
        const std::int64_t h1 = wx + base, h2 = wx + wy + base, h3 = 2 * wx + base;
        const std::int64_t lo = std::min({h1, h2, h3}), hi = std::max({h1, h2, h3});
        return lo <= 0 && hi >= 0;
    }

    std::optional<std::int64_t> max_interior_;
    std::int64_t bn_ = 0;
    std::int64_t bd_ = 1;
    std::vector<LatticePoint> points_;
    std::vector<LatticePoint> below_;
    std::vector<LatticePoint> above_;
    std::vector<CompactCircle> centers_;
};

}  // namespace detail

/// Map-reduce over all lattice circles centered in the key triangle with
/// r2 <= b2. Anchors are striped across workers; `fold` accumulates into a
/// per-worker state and `merge` combines states in worker order. Results
/// are partition-independent when `merge` is commutative.
template <class State, class Fold, class Merge>
State reduce_lattice_circles(const Rational& b2, const EnumerationOptions& opts, State init, Fold fold,
                             Merge merge) {
    detail::CircleEnumerator probe(b2, opts.max_interior);
    const std::size_t anchors = probe.anchor_count();
    const unsigned workers = std::min<std::size_t>(resolve_threads(opts.threads), std::max<std::size_t>(anchors, 1));

    std::vector<State> states(workers, init);
    auto run = [&](unsigned w) {
        detail::CircleEnumerator local(b2, opts.max_interior);
        for (std::size_t i = w; i < anchors; i += workers)
            local.visit_anchor(i, [&](const EnumeratedCircle& c) { fold(states[w], c); });
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    State out = std::move(init);
    for (auto& s : states) merge(out, std::move(s));
    return out;
}

/// All lattice circles centered in the key triangle with r2 <= b2, sorted
/// by key, each exactly once.
inline std::vector<EnumeratedCircle> enumerate_compact(const Rational& b2, const EnumerationOptions& opts = {}) {
    using Vec = std::vector<EnumeratedCircle>;
    Vec all = reduce_lattice_circles(
        b2, opts, Vec{}, [](Vec& v, const EnumeratedCircle& c) { v.push_back(c); },
        [](Vec& out, Vec&& part) { out.insert(out.end(), part.begin(), part.end()); });
    std::sort(all.begin(), all.end(), [](const EnumeratedCircle& l, const EnumeratedCircle& r) {
        return detail::compare_key(l.circle, r.circle) < 0;
    });
    return all;
}

inline std::vector<CircleKey> enumerate_lattice_circles(const Rational& b2, const EnumerationOptions& opts = {}) {
    std::vector<CircleKey> keys;
    for (const auto& c : enumerate_compact(b2, opts)) keys.push_back(c.circle.key());
    return keys;
}

}  // namespace latcirc
