#pragma once

// Serialization: classification CSV/JSON, rho-table and special-class
// tables, symmetry reports, OEIS b-file ingestion, and the enumeration cache.

#include "latcirc/circle_enumeration.hpp"
#include "latcirc/exact_arith.hpp"
#include "latcirc/lattice_counting.hpp"
#include "latcirc/mc_classifier.hpp"
#include "latcirc/special_classes.hpp"
#include "latcirc/symmetry.hpp"

#include "json.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latcirc {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kClassificationSchemaVersion = 1;
inline constexpr std::string_view kClassificationSchema = "latcirc.classification";

namespace io_detail {

inline std::string fixed6(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(6) << v;
    return out.str();
}

// Integers are JSON numbers when they fit in 64 bits, decimal strings otherwise.
inline ordered_json integer_json(const Integer& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

inline Integer integer_from(const ordered_json& j) {
    if (j.is_string()) return Integer(j.get<std::string>());
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    throw std::invalid_argument("expected an integer");
}

inline std::string source_text(const Classification& row) {
    return row.is_mc() ? std::string("own") : "inherited:" + std::to_string(row.source);
}

inline std::string impacting_text(const Classification& row) {
    if (!row.is_mc()) return "";
    if (row.impacting_index) return std::to_string(*row.impacting_index);
    return ">=" + std::to_string(row.observed_run);
}

inline std::string rational_slash(const Rational& r) { return r.num().str() + "/" + r.den().str(); }

}  // namespace io_detail

// ---------------------------------------------------------------- classification

inline constexpr std::string_view kClassificationCsvHeader =
    "n,status,r2_num,r2_den,surd_s,surd_d,surd_q,source,impacting_index";

/// One row per n. An impacting index whose run reaches the top of the range
/// is written as ">=k"; non-MC rows leave the column empty.
inline void write_classification_csv(std::ostream& out, std::span<const Classification> rows, bool approx = false) {
    out << kClassificationCsvHeader << (approx ? ",approx" : "") << '\n';
    for (const auto& row : rows) {
        out << row.n << ',' << (row.is_mc() ? "mc" : "non-mc") << ',' << row.r2.num() << ',' << row.r2.den() << ','
            << row.surd.s << ',' << row.surd.d << ',' << row.surd.q << ',' << io_detail::source_text(row) << ','
            << io_detail::impacting_text(row);
        if (approx) out << ',' << io_detail::fixed6(row.surd.to_double());
        out << '\n';
    }
}

inline ordered_json classification_record(const Classification& row) {
    ordered_json j;
    j["n"] = row.n;
    j["status"] = row.is_mc() ? "mc" : "non-mc";
    j["r2"] = {{"num", io_detail::integer_json(row.r2.num())}, {"den", io_detail::integer_json(row.r2.den())}};
    j["surd"] = {{"s", io_detail::integer_json(row.surd.s)},
                 {"d", io_detail::integer_json(row.surd.d)},
                 {"q", io_detail::integer_json(row.surd.q)},
                 {"text", row.surd.str()}};
    j["source"] = io_detail::source_text(row);
    if (row.impacting_index)
        j["impacting_index"] = *row.impacting_index;
    else
        j["impacting_index"] = nullptr;
    if (row.is_mc() && !row.impacting_index) j["impacting_index_at_least"] = row.observed_run;
    j["strong"] = row.strong;
    if (row.witness_boundary) {
        ordered_json pts = ordered_json::array();
        for (const auto& p : *row.witness_boundary) pts.push_back({p.x, p.y});
        j["witness_boundary"] = std::move(pts);
    } else {
        j["witness_boundary"] = nullptr;
    }
    return j;
}

inline ordered_json classification_json(std::span<const Classification> rows) {
    ordered_json j;
    j["schema"] = kClassificationSchema;
    j["version"] = kClassificationSchemaVersion;
    j["max_n"] = rows.empty() ? -1 : rows.back().n;
    ordered_json recs = ordered_json::array();
    for (const auto& row : rows) recs.push_back(classification_record(row));
    j["records"] = std::move(recs);
    return j;
}

inline Classification classification_from_json(const ordered_json& j) {
    Classification row;
    row.n = j.at("n").get<std::int64_t>();
    const auto status = j.at("status").get<std::string>();
    if (status != "mc" && status != "non-mc") throw std::invalid_argument("bad status: " + status);
    row.status = status == "mc" ? McStatus::mc : McStatus::non_mc;
    row.r2 = Rational(io_detail::integer_from(j.at("r2").at("num")), io_detail::integer_from(j.at("r2").at("den")));
    row.surd = {io_detail::integer_from(j.at("surd").at("s")), io_detail::integer_from(j.at("surd").at("d")),
                io_detail::integer_from(j.at("surd").at("q"))};
    if (row.surd.square() != row.r2) throw std::invalid_argument("surd does not reconstruct r2");
    const auto source = j.at("source").get<std::string>();
    if (source == "own") {
        row.source = row.n;
    } else if (source.starts_with("inherited:")) {
        row.source = std::stoll(source.substr(10));
    } else {
        throw std::invalid_argument("bad source: " + source);
    }
    if (!j.at("impacting_index").is_null()) {
        row.impacting_index = j.at("impacting_index").get<std::int64_t>();
        row.observed_run = *row.impacting_index;
    } else if (j.contains("impacting_index_at_least")) {
        row.observed_run = j.at("impacting_index_at_least").get<std::int64_t>();
    }
    row.strong = j.at("strong").get<bool>();
    if (!j.at("witness_boundary").is_null()) {
        std::vector<LatticePoint> pts;
        for (const auto& p : j.at("witness_boundary")) pts.push_back({p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>()});
        row.witness_boundary = std::move(pts);
    }
    return row;
}

inline std::vector<Classification> classifications_from_json(const ordered_json& j) {
    if (j.at("schema").get<std::string>() != kClassificationSchema)
        throw std::invalid_argument("not a classification document");
    if (j.at("version").get<int>() != kClassificationSchemaVersion)
        throw std::invalid_argument("unsupported classification schema version");
    std::vector<Classification> rows;
    for (const auto& rec : j.at("records")) rows.push_back(classification_from_json(rec));
    return rows;
}

// ---------------------------------------------------------------- rho table

inline void write_rho_csv(std::ostream& out, const RhoTable& t) {
    out << "n,rho2_num,rho2_den,surd,witness_cx,witness_cy,interior,boundary,multiplicity\n";
    for (std::int64_t n = 0; n <= t.max_n; ++n) {
        out << n;
        if (const auto& e = t.at(n)) {
            out << ',' << e->rho2.num() << ',' << e->rho2.den() << ',' << surd_normalize(e->rho2).str() << ','
                << e->witness.cx << ',' << e->witness.cy << ',' << e->witness_count.interior << ','
                << e->witness_count.boundary << ',' << e->multiplicity;
        } else {
            out << ",,,,,,,,";
        }
        out << '\n';
    }
}

inline ordered_json rho_json(const RhoTable& t) {
    ordered_json j;
    j["schema"] = "latcirc.rho";
    j["version"] = 1;
    j["max_n"] = t.max_n;
    j["bound"] = {{"num", io_detail::integer_json(t.bound.num())}, {"den", io_detail::integer_json(t.bound.den())}};
    ordered_json entries = ordered_json::array();
    for (std::int64_t n = 0; n <= t.max_n; ++n) {
        ordered_json e;
        e["n"] = n;
        if (const auto& r = t.at(n)) {
            e["rho2"] = {{"num", io_detail::integer_json(r->rho2.num())}, {"den", io_detail::integer_json(r->rho2.den())}};
            e["surd"] = surd_normalize(r->rho2).str();
            e["witness"] = {{"cx", r->witness.cx.str()}, {"cy", r->witness.cy.str()}, {"r2", r->witness.r2.str()}};
            e["boundary"] = r->witness_count.boundary;
            e["multiplicity"] = r->multiplicity;
        } else {
            e["rho2"] = nullptr;
        }
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

// ---------------------------------------------------------------- special classes

inline void write_special_csv(std::ostream& out, std::span<const SpecialCircleRecord> recs) {
    out << "family,k,count,r2_num,r2_den,surd\n";
    for (const auto& r : recs)
        out << (r.family == Family::S ? "f" : "g") << ',' << r.k << ',' << r.count << ',' << r.r2.num() << ','
            << r.r2.den() << ',' << surd_normalize(r.r2).str() << '\n';
}

inline ordered_json special_json(std::span<const SpecialCircleRecord> recs) {
    ordered_json j;
    j["schema"] = "latcirc.special";
    j["version"] = 1;
    ordered_json rows = ordered_json::array();
    for (const auto& r : recs) {
        const auto s = surd_normalize(r.r2);
        rows.push_back({{"family", r.family == Family::S ? "f" : "g"},
                        {"k", r.k},
                        {"count", r.count},
                        {"r2", {{"num", io_detail::integer_json(r.r2.num())}, {"den", io_detail::integer_json(r.r2.den())}}},
                        {"surd", s.str()}});
    }
    j["records"] = std::move(rows);
    return j;
}

// ---------------------------------------------------------------- symmetry

inline std::string axes_text(std::span<const MirrorAxis> axes) {
    std::string out;
    for (const auto& a : axes) {
        if (!out.empty()) out += ';';
        out += std::string(to_string(a.family)) + "@" + a.offset.str();
    }
    return out;
}

inline std::string bucket_precedence_text() {
    std::string out;
    for (auto b : kBucketPrecedence) {
        if (!out.empty()) out += " > ";
        out += to_string(b);
    }
    return out;
}

inline void write_symmetry_csv(std::ostream& out, const SymmetryCensus& census) {
    out << "n,strong,boundary_count,lattice_axes,geometric_axes_count,bucket\n";
    for (const auto& r : census.reports)
        out << r.n << ',' << (r.strong ? 1 : 0) << ',' << r.boundary_count << ',' << axes_text(r.lattice_axes) << ','
            << r.geometric_axes_count() << ',' << to_string(r.bucket) << '\n';
}

inline void write_census_csv(std::ostream& out, const SymmetryCensus& census) {
    out << "bin_lo,bin_hi,mc,lattice_symmetric,geometric_symmetric";
    for (auto b : kBucketPrecedence) out << ',' << to_string(b);
    out << '\n';
    auto row = [&](const std::string& lo, const std::string& hi, const CensusBin& bin) {
        out << lo << ',' << hi << ',' << bin.mc << ',' << bin.lattice_symmetric << ',' << bin.geometric_symmetric;
        for (auto b : kBucketPrecedence) {
            auto it = bin.buckets.find(b);
            out << ',' << (it == bin.buckets.end() ? 0 : it->second);
        }
        out << '\n';
    };
    for (const auto& [k, bin] : census.bins)
        row(std::to_string(k * census.bin_width), std::to_string((k + 1) * census.bin_width - 1), bin);
    row("all", "", census.all);
    row("strong", "", census.strong);
}

inline ordered_json census_bin_json(const CensusBin& bin) {
    ordered_json j;
    j["mc"] = bin.mc;
    j["lattice_symmetric"] = bin.lattice_symmetric;
    j["geometric_symmetric"] = bin.geometric_symmetric;
    ordered_json b;
    for (auto key : kBucketPrecedence) {
        auto it = bin.buckets.find(key);
        b[std::string(to_string(key))] = it == bin.buckets.end() ? 0 : it->second;
    }
    j["buckets"] = std::move(b);
    return j;
}

inline ordered_json symmetry_json(const SymmetryCensus& census) {
    ordered_json j;
    j["schema"] = "latcirc.symmetry";
    j["version"] = 1;
    j["basis"] = "witness-based";
    j["bucket_precedence"] = bucket_precedence_text();
    ordered_json reports = ordered_json::array();
    for (const auto& r : census.reports) {
        ordered_json axes = ordered_json::array();
        for (const auto& a : r.lattice_axes) axes.push_back({{"family", to_string(a.family)}, {"offset", a.offset.str()}});
        reports.push_back({{"n", r.n},
                           {"strong", r.strong},
                           {"boundary_count", r.boundary_count},
                           {"lattice_axes", std::move(axes)},
                           {"geometric_axes_count", r.geometric_axes_count()},
                           {"bucket", to_string(r.bucket)}});
    }
    j["reports"] = std::move(reports);
    ordered_json bins = ordered_json::array();
    for (const auto& [k, bin] : census.bins) {
        ordered_json b = census_bin_json(bin);
        b["bin_lo"] = k * census.bin_width;
        b["bin_hi"] = (k + 1) * census.bin_width - 1;
        bins.push_back(std::move(b));
    }
    j["bins"] = std::move(bins);
    j["all"] = census_bin_json(census.all);
    j["strong"] = census_bin_json(census.strong);
    return j;
}

// ---------------------------------------------------------------- OEIS b-files

struct BFileSeries {
    std::string sequence_id;
    std::map<std::int64_t, Integer> terms;
};

class BFileError : public std::runtime_error {
public:
    BFileError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Lines "index value"; '#' comments and blank lines are skipped; indices
/// must strictly increase.
inline BFileSeries parse_bfile(std::istream& in, std::string sequence_id) {
    BFileSeries s{std::move(sequence_id), {}};
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::int64_t> last;
    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::string idx, val, extra;
        fields >> idx >> val;
        if (val.empty() || (fields >> extra) || !is_int(idx) || !is_int(val))
            throw BFileError(lineno, "expected \"index value\", got \"" + line + "\"");
        std::int64_t i = 0;
        try {
            i = std::stoll(idx);
        } catch (const std::exception&) {
            throw BFileError(lineno, "index out of range");
        }
        if (last && i <= *last) throw BFileError(lineno, "indices must strictly increase");
        last = i;
        s.terms.emplace(i, Integer(val));
    }
    return s;
}

// ---------------------------------------------------------------- enumeration cache

inline constexpr std::string_view kCacheMagic = "latticecirclecache v1";

struct EnumerationCache {
    std::int64_t max_n = 0;
    Rational b2;
    std::vector<EnumeratedCircle> circles;  // sorted by key
};

namespace io_detail {

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 14695981039346656037ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline CompactCircle compact_from(const Rational& cx, const Rational& cy, const Rational& r2) {
    const Integer d = boost::multiprecision::lcm(cx.den(), cy.den());
    const Rational q = r2 * Rational(Integer(d * d));
    if (!q.is_integer()) throw std::invalid_argument("cache: radius not compatible with center denominator");
    return {(cx.num() * (d / cx.den())).convert_to<std::int64_t>(),
            (cy.num() * (d / cy.den())).convert_to<std::int64_t>(), d.convert_to<std::int64_t>(),
            q.num().convert_to<std::int64_t>()};
}

}  // namespace io_detail

inline std::string cache_header(std::int64_t max_n, const Rational& b2) {
    return std::string(kCacheMagic) + " M=" + std::to_string(max_n) + " b2=" + io_detail::rational_slash(b2);
}

/// Header, one "cx cy r2 interior boundary" line per circle, then a
/// checksum line covering everything before it.
inline void write_cache(std::ostream& out, const EnumerationCache& cache) {
    std::string body = cache_header(cache.max_n, cache.b2) + "\n";
    for (const auto& c : cache.circles) {
        body += io_detail::rational_slash(c.circle.cx()) + ' ' + io_detail::rational_slash(c.circle.cy()) + ' ' +
                io_detail::rational_slash(c.circle.r2()) + ' ' + std::to_string(c.count.interior) + ' ' +
                std::to_string(c.count.boundary) + '\n';
    }
    out << body << "checksum " << io_detail::hex64(io_detail::fnv1a(body)) << '\n';
}

/// Parses a cache; throws std::runtime_error on any version, format or
/// checksum problem so the caller can fall back to recomputing.
inline EnumerationCache read_cache(std::istream& in) {
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string all = ss.str();
    const auto trailer = all.rfind("checksum ");
    if (trailer == std::string::npos || (trailer != 0 && all[trailer - 1] != '\n'))
        throw std::runtime_error("cache: missing checksum (truncated?)");
    const std::string body = all.substr(0, trailer);
    std::string stored = all.substr(trailer + 9);
    while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r')) stored.pop_back();
    if (stored != io_detail::hex64(io_detail::fnv1a(body))) throw std::runtime_error("cache: checksum mismatch");

    std::istringstream lines(body);
    std::string header;
    std::getline(lines, header);
    const std::string magic(kCacheMagic);
    if (!header.starts_with(magic + " M=")) throw std::runtime_error("cache: unsupported version or format");
    EnumerationCache cache;
    {
        std::istringstream h(header.substr(magic.size()));
        std::string m_field, b_field;
        h >> m_field >> b_field;
        if (!m_field.starts_with("M=") || !b_field.starts_with("b2=")) throw std::runtime_error("cache: bad header");
        cache.max_n = std::stoll(m_field.substr(2));
        cache.b2 = Rational::parse(b_field.substr(3));
    }
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream f(line);
        std::string cx, cy, r2;
        std::int64_t interior = -1, boundary = -1;
        if (!(f >> cx >> cy >> r2 >> interior >> boundary)) throw std::runtime_error("cache: malformed record");
        cache.circles.push_back(
            {io_detail::compact_from(Rational::parse(cx), Rational::parse(cy), Rational::parse(r2)), {interior, boundary}});
    }
    return cache;
}

inline EnumerationCache build_cache(std::int64_t max_n, const EnumerationOptions& base = {}) {
    EnumerationOptions opts = base;
    opts.max_interior = max_n;
    const Rational b2 = radius_bound(max_n);
    return {max_n, b2, enumerate_compact(b2, opts)};
}

/// Whether a cache built for cache.max_n answers queries up to m.
inline bool cache_covers(const EnumerationCache& cache, std::int64_t m) {
    return cache.max_n >= m && cache.b2 >= radius_bound(m);
}

inline RhoTable rho_table_from_cache(const EnumerationCache& cache, std::int64_t m) {
    if (!cache_covers(cache, m)) throw std::invalid_argument("cache does not cover the requested range");
    return rho_table_from(cache.circles, m, radius_bound(m));
}

struct CacheLoad {
    RhoTable table;
    bool reused = false;
    std::optional<std::string> warning;
};

/// Loads the rho-table for m from `path` when it holds a valid covering
/// cache; otherwise enumerates, rewrites the cache, and explains why.
inline CacheLoad rho_table_with_cache(const std::string& path, std::int64_t m, const EnumerationOptions& opts = {}) {
    CacheLoad out;
    if (std::ifstream in(path); in) {
        try {
            EnumerationCache cache = read_cache(in);
            if (cache_covers(cache, m)) {
                out.table = rho_table_from_cache(cache, m);
                out.reused = true;
                return out;
            }
            out.warning = "cache at " + path + " covers M=" + std::to_string(cache.max_n) + " only; recomputing";
        } catch (const std::exception& e) {
            out.warning = std::string(e.what()) + "; recomputing";
        }
    }
    EnumerationCache fresh = build_cache(m, opts);
    out.table = rho_table_from_cache(fresh, m);
    std::ofstream of(path, std::ios::binary | std::ios::trunc);
    if (!of) {
        out.warning = (out.warning ? *out.warning + "; " : std::string()) + "cannot write cache " + path;
    } else {
        write_cache(of, fresh);
    }
    return out;
}

}  // namespace latcirc
