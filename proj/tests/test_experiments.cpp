/*
   Copyright 2026 The gammagh Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "gammagh/experiments.hpp"
#include "gammagh/report_io.hpp"

using namespace gammagh;

namespace {

MonteCarloConfig small_config(std::size_t reps, std::size_t cells) {
    MonteCarloConfig cfg;
    cfg.replications = reps;
    cfg.cells = cells;
    cfg.workers = 1;
    cfg.var_rel_tol = 0.2;
    return cfg;
}

}  // namespace

TEST(PairwiseSum, MatchesNaiveAndIsExactForIntegers) {
    std::vector<double> xs(1000);
    std::iota(xs.begin(), xs.end(), 1.0);
    EXPECT_EQ(pairwise_sum(xs), 500500.0);
    EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
    // naive left-to-right summation would drop every 1e-16 term after the leading 1
    std::vector<double> tiny(1 << 20, 1e-16);
    tiny[0] = 1.0;
    EXPECT_NEAR(pairwise_sum(tiny), 1.0 + 1e-16 * ((1 << 20) - 1), 1e-13);
}

TEST(Summarize, KnownValues) {
    const std::vector<double> xs{1, 2, 3, 4};
    const auto s = summarize(xs);
    EXPECT_EQ(s.n, 4u);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_DOUBLE_EQ(s.var, 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(s.mean_se, std::sqrt(5.0 / 12.0));
    EXPECT_THROW(summarize(std::vector<double>{1.0}), DomainError);
}

TEST(Correlation, Basic) {
    const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8}, z{4, 3, 2, 1};
    EXPECT_NEAR(sample_correlation(x, y), 1.0, 1e-15);
    EXPECT_NEAR(sample_correlation(x, z), -1.0, 1e-15);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
    for (unsigned w : {1u, 2u, 5u}) {
        std::vector<int> hits(1001, 0);
        parallel_for(hits.size(), w, [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits) EXPECT_EQ(h, 1);
    }
}

TEST(Config, Validation) {
    auto cfg = small_config(50, 16);
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg.replications = 100;
    EXPECT_NO_THROW(cfg.validate());
    cfg.u_grid = {-1.0, 0.0, 2.0};
    EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(VariationExperiment, SmallRunPasses) {
    const auto rep = run_variation_experiment(small_config(2000, 256));
    EXPECT_EQ(rep.statistic, "V_k");
    EXPECT_EQ(rep.cells, 256u);
    EXPECT_EQ(rep.replications, 2000u);
    EXPECT_TRUE(rep.bounds_lo && rep.bounds_hi);
    EXPECT_TRUE(rep.passed());
    EXPECT_NEAR(rep.mean_mc, rep.mean_theory, 4 * rep.mean_se);
    for (const auto& c : rep.checks) EXPECT_FALSE(c.source.empty()) << c.name;
}

TEST(VariationExperiment, BoundsCheckAdvisoryOnCoarseMesh) {
    const auto rep = run_variation_experiment(small_config(200, 8));
    bool found = false;
    for (const auto& c : rep.checks) {
        if (c.name.find("bound") != std::string::npos) {
            found = true;
            EXPECT_FALSE(c.asserted);
        }
    }
    EXPECT_TRUE(found);
}

TEST(QvExperiment, LadderRunAndBrownianContrast) {
    const std::vector<std::size_t> ladder{16, 64, 256};
    const auto res = run_qv_experiment(small_config(2000, 0), ladder);
    ASSERT_EQ(res.gamma.size(), 3u);
    ASSERT_EQ(res.brownian.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(res.gamma[i].cells, ladder[i]);
        EXPECT_DOUBLE_EQ(res.gamma[i].mean_theory, 0.25);
        EXPECT_DOUBLE_EQ(res.brownian[i].var_theory, 2.0 / ladder[i]);
        EXPECT_NEAR(res.brownian[i].mean_mc, 1.0, 4 * res.brownian[i].mean_se);
    }
    EXPECT_LT(res.brownian[2].var_mc, res.brownian[0].var_mc / 8);
    EXPECT_GT(res.gamma[2].var_mc, 0.1);
    EXPECT_FALSE(res.checks.empty());
    EXPECT_THROW(run_qv_experiment(small_config(200, 0), std::vector<std::size_t>{64, 16}), DomainError);
}

TEST(Determinism, WorkerCountDoesNotChangeResults) {
    auto cfg = small_config(600, 128);
    std::string first;
    for (unsigned w : {1u, 3u}) {
        cfg.workers = w;
        const std::vector<std::size_t> ladder{32, 128};
        const auto s = to_json(run_variation_experiment(cfg)).dump() +
                       to_json(run_qv_experiment(cfg, ladder)).dump();
        if (first.empty()) first = s;
        else EXPECT_EQ(first, s);
    }
    std::string cf;
    for (unsigned w : {1u, 4u}) {
        cfg.workers = w;
        cfg.replications = 9000;  // spans several sample blocks
        const auto s = to_json(run_charfn_check(cfg)).dump() +
                       to_json(run_idecomp_check(cfg.params, 4, 9000, 7, w)).dump() +
                       to_json(run_fdd_check(cfg.params, 1.0, 40, 0.3, 0.7, 500, 7, w)).dump();
        if (cf.empty()) cf = s;
        else EXPECT_EQ(cf, s);
    }
}

TEST(Determinism, SeedChangesResults) {
    auto cfg = small_config(200, 64);
    const double m1 = run_variation_experiment(cfg).mean_mc;
    cfg.master_seed = 43;
    EXPECT_NE(m1, run_variation_experiment(cfg).mean_mc);
}

TEST(Charfn, ZeroFrequencyIsExact) {
    auto cfg = small_config(5000, 1);
    cfg.u_grid = {-1.0, 0.0, 1.0};
    const auto rep = run_charfn_check(cfg);
    EXPECT_EQ(rep.errors[1], 0.0);
    EXPECT_EQ(rep.samples, 5000u);
    EXPECT_DOUBLE_EQ(rep.bound, 4.0 / std::sqrt(5000.0));
    EXPECT_TRUE(rep.passed);
}

TEST(Charfn, DriftShiftLeavesModulusErrorsBounded) {
    auto cfg = small_config(20000, 1);
    cfg.params = GammaGhParams(1.0, 1.0, 3.0, 0.5);
    const auto shifted = run_charfn_check(cfg);
    cfg.params = GammaGhParams(1.0, 1.0, 0.0, 0.5);
    const auto centred = run_charfn_check(cfg);
    EXPECT_TRUE(shifted.passed);
    EXPECT_TRUE(centred.passed);
    // same draws up to the deterministic shift: errors agree up to rounding
    for (std::size_t i = 0; i < centred.errors.size(); ++i)
        EXPECT_NEAR(shifted.errors[i], centred.errors[i], 1e-9);
}

TEST(Ks, Sanity) {
    std::vector<double> a{1, 2, 3, 4}, b{1, 2, 3, 4}, c{10, 11, 12, 13};
    EXPECT_EQ(ks_two_sample(a, b), 0.0);
    EXPECT_EQ(ks_two_sample(a, c), 1.0);
    EXPECT_DOUBLE_EQ(ks_two_sample({1, 2}, {2, 3}), 0.5);
    EXPECT_NEAR(ks_critical_1pct(100000, 100000), 1.63 * std::sqrt(2e-5), 1e-15);
}

TEST(Idecomp, SinglePartIsTrivialAndTenPartsPass) {
    const GammaGhParams p(1.0, 1.0, 1.0, 0.5);
    const auto one = run_idecomp_check(p, 1, 20000, 11, 1);
    EXPECT_EQ(one.identity_max_error, 0.0);
    EXPECT_TRUE(one.passed);
    const auto ten = run_idecomp_check(p, 10, 20000, 11, 1);
    EXPECT_LE(ten.identity_max_error, 1e-12);
    EXPECT_LT(ten.ks_statistic, ten.ks_critical);
    EXPECT_TRUE(ten.passed);
}

TEST(Fdd, AlignedTimesHaveNoDiscretisationGap) {
    const GammaGhParams p(1.0, 1.0, 1.0, 0.5);
    const auto rep = run_fdd_check(p, 1.0, 500, 0.3, 0.7, 4000, 5, 1);
    EXPECT_EQ(rep.cell_count, 200u);
    EXPECT_LE(rep.max_gap, 1e-14);
    EXPECT_TRUE(rep.passed());
    EXPECT_LE(std::abs(rep.correlation), rep.correlation_bound);
}

TEST(Fdd, MisalignedTimesShowGap) {
    const GammaGhParams p(1.0, 1.0, 1.0, 0.5);
    const auto rep = run_fdd_check(p, 1.0, 50, 0.31, 0.7, 4000, 5, 1);
    EXPECT_EQ(rep.cell_count, 35u - 15u);
    EXPECT_GT(rep.max_gap, 1e-3);
    EXPECT_LE(rep.max_error_vs_finite, rep.mc_bound);
    EXPECT_THROW(run_fdd_check(p, 1.0, 50, 0.7, 0.3, 100, 5, 1), DomainError);
}

TEST(StandardErrors, ShrinkWithReplications) {
    const auto small = run_variation_experiment(small_config(2000, 64));
    const auto large = run_variation_experiment(small_config(8000, 64));
    EXPECT_NEAR(small.mean_se / large.mean_se, 2.0, 0.2);
}

TEST(ReportIo, MomentReportKeysAndCsv) {
    const auto rep = run_variation_experiment(small_config(200, 32));
    const auto j = to_json(rep);
    for (const char* key : {"statistic", "mean_theory", "mean_mc", "mean_se", "var_theory", "var_mc",
                            "var_se", "var_limit", "bounds_lo", "bounds_hi", "mesh", "cells",
                            "replications", "passed", "checks"})
        EXPECT_TRUE(j.contains(key)) << key;
    std::ostringstream os;
    write_csv_row(os, rep);
    const std::string header = kMomentCsvHeader;
    const auto commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
    EXPECT_EQ(commas(os.str()), commas(header));
}
