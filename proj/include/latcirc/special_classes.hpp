#pragma once

// Two parametric circle families:
//   S_k: center (1/2,1/2), r2 = k^2 + k + 1/2, through (-k,0), (-k,1),
//        (0,k+1), (1,k+1), (k+1,1), (k+1,0), (1,-k), (0,-k); encloses f(k).
//   T_k: center (0,0), r2 = k^2 + 1, through (+-k,+-1), (+-1,+-k); encloses g(k).

#include "latcirc/exact_arith.hpp"
#include "latcirc/lattice_counting.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace latcirc {

enum class Family { S, T };

inline Circle s_circle(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("s_circle: k must be >= 1");
    return Circle(Rational(1, 2), Rational(1, 2), Rational(Integer(2 * k * k + 2 * k + 1), Integer(2)));
}

inline Circle t_circle(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("t_circle: k must be >= 1");
    return Circle(Rational(0), Rational(0), Rational(k * k + 1));
}

inline std::array<LatticePoint, 8> s_defining_points(std::int64_t k) {
    return {{{-k, 0}, {-k, 1}, {0, k + 1}, {1, k + 1}, {k + 1, 1}, {k + 1, 0}, {1, -k}, {0, -k}}};
}

inline std::array<LatticePoint, 8> t_defining_points(std::int64_t k) {
    return {{{k, 1}, {k, -1}, {-k, 1}, {-k, -1}, {1, k}, {1, -k}, {-1, k}, {-1, -k}}};
}

/// f(k) = 4 * sum_{j=1..k} (ceil(sqrt(k^2 + k + 1/2 - (j - 1/2)^2) + 1/2) - 1).
inline std::int64_t f_closed(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("f_closed: k must be >= 1");
    const Rational r2 = s_circle(k).r2;
    Integer sum = 0;
    for (std::int64_t j = 1; j <= k; ++j) {
        const Rational h = Rational(2 * j - 1, 2);
        const Rational x = r2 - h * h;
        // ceil(sqrt(x) + 1/2) is the least c with 2c - 1 >= sqrt(4x).
        const Integer t = ceil_sqrt(Rational(4) * x);
        const Integer c = detail::ceil_div(Integer(t + 1), Integer(2));
        sum += c - 1;
    }
    return (4 * sum).convert_to<std::int64_t>();
}

inline std::int64_t g_count(std::int64_t k) { return count_points(t_circle(k)).interior; }

struct SpecialCircleRecord {
    std::int64_t k = 0;
    Family family = Family::S;
    Circle circle;
    std::int64_t count = 0;
    Rational r2;
};

inline SpecialCircleRecord special_record(Family family, std::int64_t k) {
    const Circle c = family == Family::S ? s_circle(k) : t_circle(k);
    const std::int64_t n = count_points(c).interior;
    return {k, family, c, n, c.r2};
}

inline std::vector<SpecialCircleRecord> special_table(Family family, std::int64_t max_k) {
    if (max_k < 1) throw std::invalid_argument("special_table: max_k must be >= 1");
    std::vector<SpecialCircleRecord> out;
    for (std::int64_t k = 1; k <= max_k; ++k) out.push_back(special_record(family, k));
    return out;
}

struct GEqualsNReport {
    bool holds = true;
    std::optional<std::int64_t> first_failure;
};

/// Checks g(k) == N(k) for every k <= kmax.
inline GEqualsNReport g_equals_N(std::int64_t kmax) {
    if (kmax < 1) throw std::invalid_argument("g_equals_N: kmax must be >= 1");
    for (std::int64_t k = 1; k <= kmax; ++k)
        if (Integer(g_count(k)) != closed_count_N(Rational(k * k))) return {false, k};
    return {};
}

}  // namespace latcirc
