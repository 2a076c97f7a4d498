#pragma once

// Exact arithmetic substrate: arbitrary-precision integers, canonical
// rationals, integer square roots and quadratic-surd normalization.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace latcirc {

using Integer = boost::multiprecision::cpp_int;

namespace detail {

inline Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd_int(Integer a, Integer b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

template <class Int>
Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

template <class Int>
Int ceil_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

}  // namespace detail

/// Largest m with m*m <= x.
template <std::integral Int>
Int isqrt_floor(Int x) {
    if (x < 0) throw std::domain_error("isqrt_floor: negative argument");
    if (x < 2) return x;
    auto r = static_cast<Int>(std::sqrt(static_cast<double>(x)));
    using Wide = unsigned __int128;
    auto sq = [](Int v) { return static_cast<Wide>(v) * static_cast<Wide>(v); };
    const auto ux = static_cast<Wide>(x);
    while (sq(r) > ux) --r;
    while (sq(r + 1) <= ux) ++r;
    return r;
}

inline Integer isqrt_floor(const Integer& x) {
    if (x < 0) throw std::domain_error("isqrt_floor: negative argument");
    return boost::multiprecision::sqrt(x);
}

/// Smallest m with m*m >= x.
template <class Int>
Int isqrt_ceil(const Int& x) {
    Int r = isqrt_floor(x);
    if (r * r < x) ++r;
    return r;
}

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by intent
    Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT
    Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(std::int64_t n, std::int64_t d) : Rational(Integer(n), Integer(d)) {}

    /// Parses "a", "-a" or "a/b".
    static Rational parse(std::string_view text) {
        auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.remove_suffix(1);
            return s;
        };
        auto to_int = [](std::string_view s) {
            if (s.empty()) throw std::invalid_argument("empty integer");
            std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (i == s.size()) throw std::invalid_argument("malformed integer");
            for (std::size_t k = i; k < s.size(); ++k)
                if (s[k] < '0' || s[k] > '9')
                    throw std::invalid_argument("malformed integer: " + std::string(s));
            Integer v(std::string(s[0] == '+' ? s.substr(1) : s));
            return v;
        };
        text = trim(text);
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(to_int(text));
        Integer d = to_int(trim(text.substr(slash + 1)));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(to_int(trim(text.substr(0, slash))), std::move(d));
    }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Integer floor() const { return detail::floor_div(num_, den_); }
    Integer ceil() const { return detail::ceil_div(num_, den_); }

    double to_double() const {
        return static_cast<double>(boost::multiprecision::cpp_rational(num_, den_));
    }

    std::string str() const {
        return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
    }

    Rational operator-() const { return Rational(Integer(-num_), den_, Canonical{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const Integer lhs = a.num_ * b.den_;
        const Integer rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    struct Canonical {};
    Rational(Integer n, Integer d, Canonical) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Integer g = detail::gcd_int(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    Integer num_;
    Integer den_;
};

inline std::strong_ordering rational_cmp(const Rational& a, const Rational& b) { return a <=> b; }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Largest integer m with m <= sqrt(x).
inline Integer floor_sqrt(const Rational& x) {
    if (x.sign() < 0) throw std::domain_error("floor_sqrt: negative argument");
    return isqrt_floor(x.floor());
}

/// Smallest integer m with m >= sqrt(x).
inline Integer ceil_sqrt(const Rational& x) {
    Integer f = floor_sqrt(x);
    if (Rational(f * f) < x) ++f;
    return f;
}

struct SqrtBounds {
    Rational lo;
    Rational hi;
};

/// Rational enclosure of sqrt(x) of width at most 1e-7.
inline SqrtBounds rational_sqrt_bounds(const Rational& x) {
    if (x.sign() < 0) throw std::domain_error("rational_sqrt_bounds: negative argument");
    const Integer scale = 10000000;  // 1e7
    const Integer scaled = x.num() * scale * scale;
    const Integer t = scaled / x.den();
    const Integer s = isqrt_floor(t);
    Rational lo(s, scale);
    if (s * s == t && t * x.den() == scaled) return {lo, lo};
    return {std::move(lo), Rational(Integer(s + 1), scale)};
}

/// Radius s*sqrt(d)/q with d squarefree and gcd(s, q) = 1.
struct SurdRadius {
    Integer s;
    Integer d;
    Integer q;

    Rational square() const { return Rational(Integer(s * s * d), Integer(q * q)); }

    /// "s√d/q", omitting s and /q when they are 1 and the root when d is 1.
    std::string str() const {
        std::string out;
        if (d == 1) {
            out = s.str();
        } else {
            if (s != 1) out += s.str();
            out += "√" + d.str();
        }
        if (q != 1) out += "/" + q.str();
        return out;
    }

    double to_double() const {
        return s.convert_to<double>() * std::sqrt(d.convert_to<double>()) / q.convert_to<double>();
    }

    friend bool operator==(const SurdRadius&, const SurdRadius&) = default;
};

/// Splits x = square^2 * core with core squarefree, by trial division.
inline std::pair<Integer, Integer> squarefree_decompose(Integer x) {
    if (x <= 0) throw std::domain_error("squarefree_decompose: nonpositive argument");
    Integer square = 1;
    Integer core = 1;
    auto strip = [&](const Integer& p) {
        int e = 0;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) square *= p;
        if (e % 2 == 1) core *= p;
    };
    strip(2);
    for (Integer p = 3; p * p <= x; p += 2) strip(p);
    core *= x;  // leftover is 1 or a prime
    return {square, core};
}

inline SurdRadius surd_normalize(const Rational& r2) {
    if (r2.sign() <= 0) throw std::domain_error("surd_normalize: nonpositive argument");
    // sqrt(p/q) = sqrt(p*q)/q
    auto [square, core] = squarefree_decompose(r2.num() * r2.den());
    Integer q = r2.den();
    Integer g = detail::gcd_int(square, q);
    return {square / g, core, q / g};
}

inline bool is_squarefree(const Integer& d) {
    if (d <= 0) return false;
    for (Integer p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

}  // namespace latcirc
