#pragma once

// Independent, deliberately slow verifiers. Nothing here reuses the row
// scanner or the pair-based enumerator: points are tested one at a time with
// plain rational comparisons, and circles come from every point triple.

#include "latcirc/circle_enumeration.hpp"
#include "latcirc/exact_arith.hpp"
#include "latcirc/lattice_counting.hpp"
#include "latcirc/mc_classifier.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcirc {

struct OracleReport {
    OracleReport(std::string s = {}) : subject(std::move(s)) {}

    std::string subject;
    bool agreement = true;
    std::optional<std::string> first_divergence;
    /// Reports with gate == false are informational and never fail a run.
    bool gate = true;
};

inline bool all_agree(std::span<const OracleReport> reports) {
    for (const auto& r : reports)
        if (r.gate && !r.agreement) return false;
    return true;
}

namespace oracle_detail {

// Smallest integer h >= 0 with h^2 >= r2, by counting up.
inline std::int64_t radius_ceiling(const Rational& r2) {
    std::int64_t h = 0;
    while (Rational(h * h) < r2) ++h;
    return h;
}

inline Rational dist2(const Rational& px, const Rational& py, const Rational& cx, const Rational& cy) {
    const Rational dx = px - cx, dy = py - cy;
    return dx * dx + dy * dy;
}

}  // namespace oracle_detail

/// Point-by-point count over a box two units wider than the circle.
inline PointCount naive_count(const Circle& c) {
    const std::int64_t h = oracle_detail::radius_ceiling(c.r2) + 2;
    const std::int64_t x0 = c.cx.floor().convert_to<std::int64_t>();
    const std::int64_t y0 = c.cy.floor().convert_to<std::int64_t>();
    PointCount out;
    for (std::int64_t x = x0 - h; x <= x0 + h + 1; ++x)
        for (std::int64_t y = y0 - h; y <= y0 + h + 1; ++y) {
            const Rational d = oracle_detail::dist2(Rational(x), Rational(y), c.cx, c.cy);
            if (d < c.r2)
                ++out.interior;
            else if (d == c.r2)
                ++out.boundary;
        }
    return out;
}

/// Every circle through three non-collinear points of the scan box whose
/// center lies in the key triangle and whose r2 <= b2. Restricting to the
/// triangle is equivalent to canonicalizing and deduplicating: each circle
/// has an isometric copy centered there, carried by points of the same box.
inline std::set<CircleKey> naive_enumerate(const Rational& b2) {
    if (b2.sign() <= 0) throw std::invalid_argument("naive_enumerate: bound must be positive");
    if (b2 > Rational(9)) throw std::invalid_argument("naive_enumerate: bound above 9 is out of oracle scale");
    const std::int64_t h = oracle_detail::radius_ceiling(b2);
    std::vector<LatticePoint> pts;
    for (std::int64_t x = -h - 1; x <= h + 2; ++x)
        for (std::int64_t y = -h - 1; y <= h + 2; ++y) pts.push_back({x, y});

    const Rational half(1, 2), one(1);
    std::set<CircleKey> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                // Solve 2(b-a).o = |b|^2-|a|^2, 2(c-a).o = |c|^2-|a|^2 by Cramer's rule.
                const auto &a = pts[i], &b = pts[j], &c = pts[k];
                const Rational a11(2 * (b.x - a.x)), a12(2 * (b.y - a.y));
                const Rational a21(2 * (c.x - a.x)), a22(2 * (c.y - a.y));
                const Rational det = a11 * a22 - a12 * a21;
                if (det.sign() == 0) continue;
                const Rational r1(b.x * b.x + b.y * b.y - a.x * a.x - a.y * a.y);
                const Rational r2(c.x * c.x + c.y * c.y - a.x * a.x - a.y * a.y);
                const Rational ox = (r1 * a22 - a12 * r2) / det;
                const Rational oy = (a11 * r2 - r1 * a21) / det;
                if (ox < half || oy < Rational(0) || ox + oy > one) continue;
                const Rational rr = oracle_detail::dist2(Rational(a.x), Rational(a.y), ox, oy);
                if (rr > b2) continue;
                out.insert(CircleKey{ox, oy, rr});
            }
    return out;
}

/// Theorem-level consistency checks over a classification run.
inline std::vector<OracleReport> theorem_suite(std::span<const Classification> rows, const RhoTable& table) {
    std::vector<OracleReport> out;
    auto fail = [](OracleReport& r, std::int64_t n, const std::string& what) {
        if (!r.agreement) return;
        r.agreement = false;
        r.first_divergence = "n=" + std::to_string(n) + ": " + what;
    };

    OracleReport monotone{"radius-nondecreasing"};
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].r2 < rows[i - 1].r2) fail(monotone, rows[i].n, "R_n^2 < R_{n-1}^2");
    out.push_back(monotone);

    OracleReport inherit{"non-mc-inherits-radius"};
    std::optional<std::int64_t> last_mc;
    for (const auto& row : rows) {
        if (row.is_mc()) {
            if (row.source != row.n) fail(inherit, row.n, "MC row not self-sourced");
            last_mc = row.n;
            continue;
        }
        if (!last_mc || row.source != *last_mc)
            fail(inherit, row.n, "source is not the nearest smaller MC number");
        else if (row.r2 != rows[static_cast<std::size_t>(*last_mc)].r2)
            fail(inherit, row.n, "r2 differs from R_k^2");
    }
    out.push_back(inherit);

    // n/pi < n/pi_lo < R^2 proves the lower bound; the upper bound is
    // checked against lower estimates of sqrt(2) and sqrt(n/pi_hi).
    OracleReport bounds{"radius-bound"};
    const Rational sqrt2_lo = rational_sqrt_bounds(Rational(2)).lo;
    for (const auto& row : rows) {
        if (row.n < 1) continue;
        if (!(Rational(row.n) / kPiLow < row.r2)) fail(bounds, row.n, "R_n^2 <= n/pi");
        const Rational s = sqrt2_lo + rational_sqrt_bounds(Rational(row.n) / kPiHigh).lo;
        if (!(row.r2 < s * s)) fail(bounds, row.n, "R_n >= sqrt(2) + sqrt(n/pi)");
    }
    out.push_back(bounds);

    OracleReport dec{"non-mc-rho-strictly-below"};
    for (const auto& row : rows) {
        if (row.is_mc() || !table.has(row.n)) continue;
        if (!(table.at(row.n)->rho2 < row.r2)) fail(dec, row.n, "rho_n^2 >= R_k^2");
    }
    out.push_back(dec);

    OracleReport witness{"mc-witness-is-lattice-circle"};
    for (const auto& row : rows) {
        if (!row.is_mc()) continue;
        if (!table.has(row.n)) {
            fail(witness, row.n, "no rho-table entry");
            continue;
        }
        const auto& e = *table.at(row.n);
        const PointCount pc = naive_count(e.witness.circle());
        if (pc.interior != row.n) fail(witness, row.n, "witness encloses " + std::to_string(pc.interior));
        if (pc.boundary < 3) fail(witness, row.n, "witness has fewer than 3 boundary points");
        if (e.rho2 != row.r2 || e.witness.r2 != row.r2) fail(witness, row.n, "witness radius differs from R_n");
    }
    out.push_back(witness);

    OracleReport strict{"mc-radius-strictly-increasing"};
    strict.gate = false;
    std::optional<Rational> prev;
    for (const auto& row : rows) {
        if (!row.is_mc()) continue;
        if (prev && !(*prev < row.r2)) fail(strict, row.n, "R_n^2 equals an earlier MC radius");
        prev = row.r2;
    }
    out.push_back(strict);
    return out;
}

/// Compares the fast enumeration with the all-triples oracle.
inline OracleReport enumeration_agreement(const Rational& b2) {
    OracleReport r{"enumerate b2=" + b2.str()};
    const auto fast = enumerate_lattice_circles(b2);
    const std::set<CircleKey> fast_set(fast.begin(), fast.end());
    const auto slow = naive_enumerate(b2);
    if (fast_set.size() != fast.size()) {
        r.agreement = false;
        r.first_divergence = "fast enumeration yielded a duplicate";
        return r;
    }
    if (fast_set != slow) {
        std::ostringstream msg;
        msg << "fast " << fast_set.size() << " circles, oracle " << slow.size();
        for (const auto& k : slow)
            if (!fast_set.contains(k)) {
                msg << "; missing (" << k.cx << ", " << k.cy << ") r2=" << k.r2;
                break;
            }
        for (const auto& k : fast_set)
            if (!slow.contains(k)) {
                msg << "; extra (" << k.cx << ", " << k.cy << ") r2=" << k.r2;
                break;
            }
        r.agreement = false;
        r.first_divergence = msg.str();
    }
    return r;
}

}  // namespace latcirc
