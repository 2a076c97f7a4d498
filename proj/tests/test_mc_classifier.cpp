#include "latcirc/mc_classifier.hpp"
#include "latcirc/oracles.hpp"

#include <gtest/gtest.h>

using namespace latcirc;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

const RhoTable& table130() {
    static const RhoTable t = build_rho_table(130);
    return t;
}

}  // namespace

TEST(RadiusBound, Examples) {
    // (sqrt 2 + sqrt(m/pi))^2 rounded up to hundredths: 6.464... -> 6.47, 49.788... -> 49.79.
    EXPECT_GE(radius_bound(4), R(647, 100));
    EXPECT_LE(radius_bound(4), R(648, 100));
    EXPECT_GE(radius_bound(100), R(4979, 100));
    EXPECT_LE(radius_bound(100), R(4980, 100));
    for (std::int64_t m : {1, 2, 7, 50, 1100}) {
        EXPECT_GT(radius_bound(m), R(m) / kPiLow);
        const double exact = std::pow(std::sqrt(2.0) + std::sqrt(m / M_PI), 2);
        EXPECT_GE(radius_bound(m).to_double(), exact);
    }
    EXPECT_THROW(radius_bound(0), std::invalid_argument);
}

TEST(RhoTable, SmallFacts) {
    const RhoTable t = build_rho_table(6);
    ASSERT_TRUE(t.has(4));
    EXPECT_EQ(t.at(4)->rho2, R(5, 2));
    EXPECT_FALSE(t.has(6));
    ASSERT_TRUE(t.has(5));
    EXPECT_LT(t.at(5)->rho2, R(5, 2));
    EXPECT_EQ(t.at(0)->rho2, R(1, 2));
}

TEST(RhoTable, EntriesAreConsistentWitnesses) {
    const RhoTable& t = table130();
    for (std::int64_t n = 0; n <= t.max_n; ++n) {
        if (!t.has(n)) continue;
        const auto& e = *t.at(n);
        EXPECT_EQ(e.witness.r2, e.rho2);
        EXPECT_EQ(count_points(e.witness.circle()), e.witness_count);
        EXPECT_EQ(e.witness_count.interior, n);
        EXPECT_GE(e.witness_count.boundary, 3);
        EXPECT_GE(e.multiplicity, 1);
    }
}

TEST(RhoTable, IndependentOfWorkerCount) {
    EnumerationOptions four;
    four.threads = 4;
    EXPECT_EQ(build_rho_table(130, four), table130());
}

TEST(Classify, UpToSix) {
    const auto rows = classify(6);
    ASSERT_EQ(rows.size(), 7u);
    for (int n = 0; n <= 4; ++n) EXPECT_TRUE(rows[n].is_mc()) << n;
    EXPECT_FALSE(rows[5].is_mc());
    EXPECT_FALSE(rows[6].is_mc());
    EXPECT_EQ(rows[5].r2, R(5, 2));
    EXPECT_EQ(rows[6].r2, R(5, 2));
    EXPECT_EQ(rows[5].source, 4);
    EXPECT_EQ(rows[0].r2, R(1, 2));
    EXPECT_EQ(rows[3].r2, R(50, 36));
    EXPECT_EQ(rows[4].surd.str(), "√10/2");
    ASSERT_TRUE(rows[4].witness_boundary);
    EXPECT_EQ(rows[4].witness_boundary->size(), 8u);
    EXPECT_FALSE(rows[5].witness_boundary);
}

TEST(Classify, ZeroOnly) {
    const auto rows = classify(0);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].r2, R(1, 2));
    EXPECT_TRUE(rows[0].is_mc());
    EXPECT_FALSE(rows[0].impacting_index);
}

TEST(Classify, ImpactingIndices) {
    const auto rows = classify(table130());
    auto idx = impacting_index(rows);
    EXPECT_EQ(idx.at(4).run, 2);
    EXPECT_TRUE(idx.at(4).determinate);
    EXPECT_EQ(idx.at(16).run, 2);
    EXPECT_EQ(idx.at(32).run, 4);
    EXPECT_EQ(idx.at(37).run, 1);
    EXPECT_EQ(*rows[4].impacting_index, 2);
    EXPECT_TRUE(rows[4].strong);
    EXPECT_FALSE(rows[3].strong);
    for (const auto& row : rows) {
        if (!row.is_mc()) continue;
        EXPECT_EQ(row.strong, row.observed_run > 0);
    }
}

TEST(Classify, UnterminatedRunIsIndeterminate) {
    // 5 and 6 are non-MC, so the run after 4 is still open at M = 5.
    const auto rows = classify(5);
    EXPECT_FALSE(rows[4].impacting_index);
    EXPECT_EQ(rows[4].observed_run, 1);
    const auto idx = impacting_index(rows);
    EXPECT_FALSE(idx.at(4).determinate);
}

TEST(Classify, PrefixStable) {
    const auto full = classify(table130());
    const auto part = classify(table130(), 40);
    for (std::size_t i = 0; i < part.size(); ++i) {
        EXPECT_EQ(part[i].status, full[i].status);
        EXPECT_EQ(part[i].r2, full[i].r2);
    }
}

TEST(Classify, RhoDipsAt130) {
    const auto rows = classify(table130());
    std::vector<std::int64_t> both_non_mc;
    for (auto n : rho_dips(table130()))
        if (!rows[n].is_mc() && !rows[n - 1].is_mc()) both_non_mc.push_back(n);
    EXPECT_EQ(both_non_mc, std::vector<std::int64_t>{129});
}

TEST(Classify, RejectsBadRanges) {
    EXPECT_THROW(classify(std::int64_t{-1}), std::invalid_argument);
    EXPECT_THROW(classify(table130(), 131), std::invalid_argument);
    EXPECT_THROW(build_rho_table(0), std::invalid_argument);
}
