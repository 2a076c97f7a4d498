#pragma once

// Maximal lattice-circle radii per interior count (the rho-table) and the
// MC / non-MC classification derived from it.
//
// rho_n is the largest squared radius over lattice circles enclosing exactly
// n points. Scanning upward from the MC number 0 with k the last MC number,
// n is MC iff rho_n exists and rho_n >= rho_k; then R_n = rho_n, otherwise
// R_n = R_k.

#include "latcirc/circle_enumeration.hpp"
#include "latcirc/exact_arith.hpp"
#include "latcirc/lattice_counting.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace latcirc {

/// pi is bracketed by these rationals in every bound check.
inline const Rational kPiLow(314159265, 100000000);
inline const Rational kPiHigh(314159266, 100000000);

/// Rational b2 > (sqrt(2) + sqrt(m/pi))^2, rounded up to hundredths. It
/// exceeds R_n^2 for every n <= m.
inline Rational radius_bound(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("radius_bound: m must be >= 1");
    const Rational over_pi = Rational(m) / kPiLow;
    const Rational cross = rational_sqrt_bounds(Rational(2) * over_pi).hi;
    const Rational exact = Rational(2) + over_pi + Rational(2) * cross;
    return Rational((exact * Rational(100)).ceil(), Integer(100));
}

struct RhoEntry {
    Rational rho2;
    CircleKey witness;       // lexicographically smallest circle attaining rho2
    PointCount witness_count;
    std::int64_t multiplicity = 1;  // lattice circles attaining rho2
};

struct RhoTable {
    std::int64_t max_n = 0;
    Rational bound;  // enumeration bound on r2
    std::vector<std::optional<RhoEntry>> entries;  // index n = 0..max_n

    const std::optional<RhoEntry>& at(std::int64_t n) const { return entries.at(static_cast<std::size_t>(n)); }
    bool has(std::int64_t n) const { return at(n).has_value(); }

    friend bool operator==(const RhoTable& a, const RhoTable& b) {
        if (a.max_n != b.max_n || a.bound != b.bound || a.entries.size() != b.entries.size()) return false;
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            const auto& x = a.entries[i];
            const auto& y = b.entries[i];
            if (x.has_value() != y.has_value()) return false;
            if (x && (x->rho2 != y->rho2 || x->witness != y->witness || x->witness_count != y->witness_count ||
                      x->multiplicity != y->multiplicity))
                return false;
        }
        return true;
    }
};

/// Per-n running maximum over enumerated circles. Merging is associative
/// and commutative, so the result does not depend on the partitioning.
class RhoAccumulator {
public:
    explicit RhoAccumulator(std::int64_t max_n = 0) : best_(static_cast<std::size_t>(max_n) + 1) {}

    void add(const EnumeratedCircle& c) {
        if (c.count.interior < 0 || c.count.interior >= static_cast<std::int64_t>(best_.size())) return;
        offer(best_[static_cast<std::size_t>(c.count.interior)], Best{c.circle, c.count, 1});
    }

    void merge(RhoAccumulator&& other) {
        if (best_.size() < other.best_.size()) best_.resize(other.best_.size());
        for (std::size_t i = 0; i < other.best_.size(); ++i)
            if (other.best_[i]) offer(best_[i], *other.best_[i]);
    }

    RhoTable finish(std::int64_t max_n, const Rational& bound) const {
        RhoTable t{max_n, bound, {}};
        t.entries.resize(static_cast<std::size_t>(max_n) + 1);
        for (std::size_t i = 0; i < t.entries.size() && i < best_.size(); ++i)
            if (const auto& b = best_[i]) t.entries[i] = RhoEntry{b->circle.r2(), b->circle.key(), b->count, b->multiplicity};
        return t;
    }

private:
    struct Best {
        CompactCircle circle;
        PointCount count;
        std::int64_t multiplicity;
    };

    static void offer(std::optional<Best>& slot, const Best& cand) {
        if (!slot) {
            slot = cand;
            return;
        }
        const int by_r2 = detail::compare_r2(cand.circle, slot->circle);
        if (by_r2 > 0) {
            slot = cand;
        } else if (by_r2 == 0) {
            const std::int64_t mult = slot->multiplicity + cand.multiplicity;
            if (detail::compare_key(cand.circle, slot->circle) < 0) slot = cand;
            slot->multiplicity = mult;
        }
    }

    std::vector<std::optional<Best>> best_;
};

inline RhoTable rho_table_from(std::span<const EnumeratedCircle> circles, std::int64_t max_n, const Rational& bound) {
    RhoAccumulator acc(max_n);
    for (const auto& c : circles)
        if (c.circle.r2() <= bound) acc.add(c);
    return acc.finish(max_n, bound);
}

inline RhoTable build_rho_table(std::int64_t m, const EnumerationOptions& base = {}) {
    if (m < 1) throw std::invalid_argument("build_rho_table: m must be >= 1");
    const Rational bound = radius_bound(m);
    EnumerationOptions opts = base;
    opts.max_interior = m;
    RhoAccumulator acc = reduce_lattice_circles(
        bound, opts, RhoAccumulator(m), [](RhoAccumulator& a, const EnumeratedCircle& c) { a.add(c); },
        [](RhoAccumulator& into, RhoAccumulator&& part) { into.merge(std::move(part)); });
    return acc.finish(m, bound);
}

enum class McStatus { mc, non_mc };

struct Classification {
    std::int64_t n = 0;
    McStatus status = McStatus::mc;
    Rational r2;       // R_n^2
    SurdRadius surd;   // R_n
    std::int64_t source = 0;  // n itself for MC rows, else the MC number inherited from
    // MC rows only. A run still open at the top of the range is
    // indeterminate: impacting_index is empty and observed_run is a lower bound.
    std::optional<std::int64_t> impacting_index;
    std::int64_t observed_run = 0;
    bool strong = false;
    std::optional<std::vector<LatticePoint>> witness_boundary;

    bool is_mc() const { return status == McStatus::mc; }
};

struct ImpactingIndex {
    std::int64_t run = 0;
    bool determinate = false;
};

/// Length of the non-MC run after each MC number.
inline std::map<std::int64_t, ImpactingIndex> impacting_index(std::span<const Classification> rows) {
    std::map<std::int64_t, ImpactingIndex> out;
    std::optional<std::int64_t> last;
    for (const auto& row : rows) {
        if (row.is_mc()) {
            if (last) out[*last].determinate = true;
            out[row.n] = {};
            last = row.n;
        } else if (last) {
            ++out[*last].run;
        }
    }
    return out;
}

/// Classifies every n in [0, max_rows]; max_rows defaults to the table's max_n.
inline std::vector<Classification> classify(const RhoTable& table, std::optional<std::int64_t> max_rows = {},
                                            bool with_witness_points = true) {
    const std::int64_t top = max_rows.value_or(table.max_n);
    if (top < 0 || top > table.max_n) throw std::invalid_argument("classify: row range outside the table");
    if (!table.has(0)) throw std::logic_error("classify: rho-table has no entry for n = 0");

    std::vector<Classification> rows;
    std::int64_t k = 0;
    for (std::int64_t n = 0; n <= top; ++n) {
        Classification row;
        row.n = n;
        const auto& entry = table.at(n);
        const bool mc = n == 0 || (entry && entry->rho2 >= table.at(k)->rho2);
        if (mc) {
            k = n;
            row.status = McStatus::mc;
            row.r2 = entry->rho2;
            row.source = n;
            if (with_witness_points) row.witness_boundary = boundary_points(entry->witness.circle());
        } else {
            row.status = McStatus::non_mc;
            row.r2 = table.at(k)->rho2;
            row.source = k;
        }
        row.surd = surd_normalize(row.r2);
        rows.push_back(std::move(row));
    }
    for (const auto& [n, idx] : impacting_index(rows)) {
        auto& row = rows[static_cast<std::size_t>(n)];
        row.observed_run = idx.run;
        if (idx.determinate) row.impacting_index = idx.run;
        row.strong = idx.run > 0;
    }
    return rows;
}

inline std::vector<Classification> classify(std::int64_t m, const EnumerationOptions& opts = {}) {
    if (m < 0) throw std::invalid_argument("classify: m must be >= 0");
    return classify(build_rho_table(std::max<std::int64_t>(m, 1), opts), m);
}

/// n with rho_n^2 < rho_{n-1}^2, both present.
inline std::vector<std::int64_t> rho_dips(const RhoTable& table) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 1; n <= table.max_n; ++n)
        if (table.has(n) && table.has(n - 1) && table.at(n)->rho2 < table.at(n - 1)->rho2) out.push_back(n);
    return out;
}

}  // namespace latcirc
