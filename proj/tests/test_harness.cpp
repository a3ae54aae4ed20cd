#include <biunivalent/harness.hpp>

#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

using namespace biuni;

namespace
{

CampaignConfig small(std::uint64_t seed, std::uint64_t n = 20000)
{
    CampaignConfig cfg;
    cfg.n_samples = n;
    cfg.seed = seed;
    return cfg;
}

std::string csv_of(const FamilyParams &params, CampaignConfig cfg)
{
    cfg.keep_records = true;
    std::ostringstream os;
    write_campaign_csv(os, falsify(params, cfg));
    return os.str();
}

} // namespace

TEST(Falsify, AlphaUnitParametersHaveNoViolations)
{
    const auto s = falsify(AlphaParams(1, 1, 1), small(1));
    EXPECT_TRUE(s.violations.empty());
    EXPECT_GT(s.n_admissible, 0u);
    EXPECT_EQ(s.n_admissible + s.n_filtered_modulus + s.n_filtered_toeplitz, 20000u);
    EXPECT_LE(s.max_a2, s.bounds.a2_bound + violation_tolerance);
    EXPECT_LE(s.max_a3, s.bounds.a3_bound + violation_tolerance);
}

TEST(Falsify, BetaZeroUnitLambdaMu)
{
    const auto s = falsify(BetaParams(0, 1, 1), small(2));
    EXPECT_TRUE(s.violations.empty());
    EXPECT_LE(s.max_a2, std::sqrt(2.0 / 3) + 1e-9);
}

TEST(Falsify, SingleSampleSingleAtom)
{
    CampaignConfig cfg = small(3, 1);
    cfg.atoms = 1;
    cfg.keep_records = true;
    const auto s = falsify(AlphaParams(1, 1, 1), cfg);
    ASSERT_EQ(s.records.size(), 1u);
    const auto &r = s.records[0];
    EXPECT_NEAR(std::abs(r.tuple.p1), 2.0, 1e-13);
    EXPECT_NEAR(std::abs(r.tuple.p2), 2.0, 1e-13);
    EXPECT_EQ(r.tuple.q1, -r.tuple.p1);
    EXPECT_EQ(r.admissible, r.filter_verdict == AdmissibilityVerdict::pass);
    EXPECT_EQ(s.n_admissible + s.n_filtered_modulus + s.n_filtered_toeplitz, 1u);
}

TEST(Falsify, RejectsEmptyCampaign)
{
    EXPECT_THROW(falsify(AlphaParams(1, 1, 1), small(0, 0)), std::invalid_argument);
}

TEST(Falsify, ModulusFilterAdmitsAtLeastAsMuch)
{
    auto cfg = small(4, 5000);
    const auto toeplitz = falsify(BetaParams(0, 1, 0), cfg);
    cfg.filter = AdmissibilityFilter::modulus;
    const auto modulus = falsify(BetaParams(0, 1, 0), cfg);
    EXPECT_GE(modulus.n_admissible, toeplitz.n_admissible);
    EXPECT_EQ(modulus.n_filtered_toeplitz, 0u);
    EXPECT_TRUE(modulus.violations.empty());
}

TEST(Falsify, CsvIsDeterministic)
{
    const auto a = csv_of(AlphaParams(0.5, 2, 0.5), small(7, 2000));
    const auto b = csv_of(AlphaParams(0.5, 2, 0.5), small(7, 2000));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, csv_of(AlphaParams(0.5, 2, 0.5), small(8, 2000)));
    EXPECT_EQ(a.substr(0, campaign_csv_header.size()), campaign_csv_header);
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 2001);
}

TEST(Falsify, ThreadCountDoesNotChangeOutput)
{
    auto cfg = small(9, 3000);
    const auto serial = csv_of(BetaParams(0.5, 1, 3), cfg);
    cfg.threads = 4;
    EXPECT_EQ(serial, csv_of(BetaParams(0.5, 1, 3), cfg));
}

TEST(Falsify, HistogramsCountAdmissibleRecords)
{
    const auto s = falsify(AlphaParams(0.25, 1, 0), small(10, 5000));
    std::uint64_t h2 = 0, h3 = 0;
    for (auto c : s.a2_margin_histogram) {
        h2 += c;
    }
    for (auto c : s.a3_margin_histogram) {
        h3 += c;
    }
    EXPECT_EQ(h2, s.n_admissible);
    EXPECT_EQ(h3, s.n_admissible);
}

TEST(EvaluatePrefix, ExtremalTupleSitsOnTheBound)
{
    // p1 = 2, p2 = 2 at alpha = lambda = mu = 1 induces q2 = 4: filtered.
    const FamilyParams params = AlphaParams(1, 1, 1);
    const auto rec = evaluate_prefix(2, 2, params, family_bounds(params), AdmissibilityFilter::toeplitz);
    EXPECT_FALSE(rec.admissible);
    EXPECT_EQ(rec.filter_verdict, AdmissibilityVerdict::fail_modulus);
    EXPECT_FALSE(rec.violates());
}

TEST(Extremal, AlphaA2StaysBelowBound)
{
    ExtremalConfig cfg;
    cfg.budget = 10000;
    cfg.seed = 1;
    const auto e = extremal_search(AlphaParams(1, 1, 1), cfg);
    EXPECT_TRUE(e.feasible);
    EXPECT_EQ(e.evaluations, 10000u);
    EXPECT_LE(e.achieved, std::sqrt(2.0 / 3) + 1e-9);
    EXPECT_GE(e.gap, -1e-9);
    EXPECT_NEAR(e.gap, e.bound - e.achieved, 0.0);
    // The search gets within a few percent of the bound.
    EXPECT_GT(e.achieved, 0.9 * e.bound);
}

TEST(Extremal, BetaA2AgainstLinearArm)
{
    ExtremalConfig cfg;
    cfg.budget = 5000;
    cfg.seed = 2;
    const auto e = extremal_search(BetaParams(0.5, 1, 1), cfg);
    EXPECT_NEAR(e.bound, 0.5, 1e-15);
    EXPECT_LE(e.achieved, 0.5 + 1e-9);
    EXPECT_GE(e.gap, -1e-9);
}

TEST(Extremal, A3Objective)
{
    ExtremalConfig cfg;
    cfg.objective = Objective::a3;
    cfg.budget = 5000;
    cfg.seed = 3;
    const auto e = extremal_search(BetaParams(0, 1, 0), cfg);
    EXPECT_NEAR(e.bound, 2.0, 1e-15);
    EXPECT_GE(e.gap, -1e-9);
}

TEST(Extremal, BudgetOneEvaluatesOnePoint)
{
    ExtremalConfig cfg;
    cfg.budget = 1;
    cfg.seed = 4;
    const auto e = extremal_search(AlphaParams(1, 1, 1), cfg);
    EXPECT_EQ(e.evaluations, 1u);
    EXPECT_EQ(e.starts, 1u);
    // The single point is the first start.
    const auto p = herglotz(random_atoms(derive_seed(4, 0), 3), 2);
    EXPECT_NEAR(std::abs(e.best_tuple.p1 - p.coeff(1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(e.best_tuple.p2 - p.coeff(2)), 0.0, 1e-12);
}

TEST(Extremal, MonotoneInBudget)
{
    ExtremalConfig cfg;
    cfg.seed = 5;
    double prev = -1;
    for (std::uint64_t budget : {1u, 10u, 100u, 1000u, 3000u, 6000u}) {
        cfg.budget = budget;
        const auto e = extremal_search(AlphaParams(0.5, 2, 3), cfg);
        const double value = e.feasible ? e.achieved : -1;
        EXPECT_GE(value, prev) << budget;
        prev = value;
    }
}

TEST(Extremal, RejectsZeroBudget)
{
    ExtremalConfig cfg;
    cfg.budget = 0;
    EXPECT_THROW(extremal_search(AlphaParams(1, 1, 1), cfg), std::invalid_argument);
}

TEST(Random, DerivedSeedsDiffer)
{
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(7, 42), derive_seed(7, 42));
}
