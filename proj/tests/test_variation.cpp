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
#include <numbers>
#include <vector>

#include "gammagh/paths.hpp"
#include "gammagh/variation.hpp"
#include "oracles.hpp"

using namespace gammagh;

namespace {

// Closed forms: I1 = Gamma(1/2, 1) = sqrt(pi) erfc(1), I2 = E_1(1) = -Ei(-1).
const double kI1 = std::sqrt(std::numbers::pi) * std::erfc(1.0);
const double kI2 = -std::expint(-1.0);

const GammaGhParams kBase(1.0, 1.0, 0.0, 0.5);

IncrementSet make_increments(std::vector<double> d) {
    std::vector<double> pts(d.size() + 1);
    for (std::size_t j = 0; j < pts.size(); ++j) pts[j] = static_cast<double>(j);
    return IncrementSet(Partition(std::move(pts)), std::move(d));
}

}  // namespace

TEST(UniformPartition, Examples) {
    const auto p = uniform_partition(1.0, 4);
    const std::vector<double> expected{0, 0.25, 0.5, 0.75, 1};
    EXPECT_TRUE(std::equal(p.points().begin(), p.points().end(), expected.begin()));
    EXPECT_EQ(p.mesh(), 0.25);
    const auto q = uniform_partition(2.0, 1);
    EXPECT_EQ(q.cells(), 1u);
    EXPECT_EQ(q.points()[1], 2.0);
    for (std::size_t n : {1u, 10u, 1000u}) {
        EXPECT_NEAR(uniform_partition(1.0, n).mesh(), 1.0 / n, 1e-15);
        EXPECT_EQ(uniform_partition(1.0, n).horizon(), 1.0);
    }
    EXPECT_THROW(uniform_partition(1.0, 0), DomainError);
    EXPECT_THROW(Partition({0.1, 1.0}), DomainError);
    EXPECT_THROW(Partition({0.0}), DomainError);
}

TEST(RandomPartition, CellsSumToHorizon) {
    RngStream rng(1, 0);
    for (int i = 0; i < 20; ++i) {
        const auto p = random_partition(3.0, 50, rng);
        EXPECT_EQ(p.cells(), 50u);
        EXPECT_EQ(p.horizon(), 3.0);
        double total = 0;
        for (double d : p.deltas()) {
            EXPECT_GT(d, 0.0);
            total += d;
        }
        EXPECT_NEAR(total, 3.0, 1e-12);
        EXPECT_LE(p.min_mesh(), p.mesh());
    }
}

TEST(Variation, DirectSums) {
    EXPECT_EQ(total_variation(make_increments({0, 0, 0})), 0.0);
    EXPECT_EQ(quadratic_variation(make_increments({0, 0, 0})), 0.0);
    EXPECT_EQ(total_variation(make_increments({1, -2, 0.5})), 3.5);
    EXPECT_EQ(quadratic_variation(make_increments({1, -2, 0.5})), 5.25);
    EXPECT_THROW(IncrementSet(uniform_partition(1, 3), {1.0}), DomainError);
}

TEST(Variation, QuadraticBoundedByMaxTimesTotal) {
    RngStream rng(2, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto part = random_partition(1.0, 1 + static_cast<std::size_t>(300 * rng.uniform()), rng);
        const auto incr = sample_increments(GammaGhParams(0.1 + 3 * rng.uniform(), 1, 0, 1), part, rng);
        double max_abs = 0, sum = 0;
        for (double d : incr.deltas) {
            max_abs = std::max(max_abs, std::abs(d));
            sum += d;
        }
        EXPECT_LE(quadratic_variation(incr), max_abs * total_variation(incr) * (1 + 1e-12));
        EXPECT_GE(total_variation(incr), std::abs(sum) * (1 - 1e-12));
    }
}

TEST(Superpose, Examples) {
    const Partition a({0, 0.5, 1}), b({0, 0.25, 1});
    const std::vector<Partition> both{a, b};
    const auto s = superpose(both);
    const std::vector<double> expected{0, 0.25, 0.5, 1};
    EXPECT_TRUE(std::equal(s.points().begin(), s.points().end(), expected.begin()));
    const std::vector<Partition> twice{a, a};
    EXPECT_EQ(superpose(twice), a);
    const std::vector<Partition> bad{a, Partition({0, 2})};
    EXPECT_THROW(superpose(bad), MismatchedHorizon);
}

TEST(Superpose, MeshShrinksAndVariationGrowsOnFixedPaths) {
    RngStream rng(3, 0);
    const GammaGhParams p(1.0, 1.0, 1.0, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const Path path = simulate_path(p, 1.0, 400, rng);
        std::vector<Partition> parts;
        const int q = 2 + static_cast<int>(3 * rng.uniform());
        for (int k = 0; k < q; ++k) parts.push_back(random_partition(1.0, 3 + static_cast<std::size_t>(40 * rng.uniform()), rng));
        const auto star = superpose(parts);
        const double v_star = total_variation(increments_on(path, star));
        for (const auto& part : parts) {
            EXPECT_LE(star.mesh(), part.mesh());
            EXPECT_LE(total_variation(increments_on(path, part)), v_star * (1 + 1e-12));
        }
    }
}

TEST(TheoryConstantsTest, ValuesAndSchemesAgree) {
    const auto de = TheoryConstants::compute(QuadratureScheme::double_exponential);
    const auto gk = TheoryConstants::compute(QuadratureScheme::gauss_kronrod);
    EXPECT_NEAR(de.I1, gk.I1, 1e-10);
    EXPECT_NEAR(de.I2, gk.I2, 1e-10);
    EXPECT_NEAR(de.I1, kI1, 1e-12);
    EXPECT_NEAR(de.I2, kI2, 1e-12);
    EXPECT_NEAR(de.I1, 0.278806, 5e-7);
    EXPECT_NEAR(de.I2, 0.219384, 5e-7);
    EXPECT_NEAR(de.E1, 1.014564, 5e-7);
    EXPECT_NEAR(de.E2, 6.194436, 5e-7);
    EXPECT_LT(0.0, de.E1);
    EXPECT_LT(de.E1, de.E2);
}

TEST(ExpectedAbsIncrement, UnitCellValue) {
    EXPECT_NEAR(expected_abs_increment(GammaGhParams(1, 1, 0, 1), 1.0), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(ExpectedAbsIncrement, MatchesQuadratureOracle) {
    for (double a : {0.5, 1.0, 3.0}) {
        for (double delta : {1e-6, 1e-3, 0.01, 0.3, 2.0}) {
            const GammaGhParams p(a, 1.7, 0.0, 0.6);
            const double expected =
                p.sigma * std::sqrt(2.0 / std::numbers::pi) * oracle::mean_sqrt_gamma(a * delta, p.beta);
            EXPECT_NEAR(expected_abs_increment(p, delta) / expected, 1.0, 1e-9) << a << ' ' << delta;
        }
    }
}

TEST(ExpectedAbsIncrement, SmallCellAsymptotics) {
    const GammaGhParams p(1.3, 2.0, 0.0, 0.7);
    const double front = p.sigma * std::sqrt(2.0 / (std::numbers::pi * p.beta));
    const double ratio = expected_abs_increment(p, 1e-8) / (p.sigma * std::sqrt(2.0 / p.beta) * p.a * 1e-8);
    EXPECT_NEAR(ratio, 1.0, 1e-6);
    const double e1 = 2 / std::numbers::e + kI1, e2 = std::numbers::e * (2 + kI1);
    for (double delta : {1e-3, 1e-4, 1e-6}) {
        const double v = expected_abs_increment(p, delta);
        EXPECT_GE(v, front * e1 * p.a * delta);
        EXPECT_LE(v, front * e2 * p.a * delta);
    }
    EXPECT_THROW(expected_abs_increment(p, 0.0), DomainError);
}

TEST(VariationTheory, BoundsAndLimits) {
    const auto t = variation_moment_theory(kBase, uniform_partition(1.0, 4096));
    const double front = 0.5 * std::sqrt(2.0 / std::numbers::pi);
    EXPECT_NEAR(t.bound_lo, front * (2 / std::numbers::e + kI1), 1e-12);
    EXPECT_NEAR(t.bound_hi, front * std::numbers::e * (2 + kI1), 1e-12);
    EXPECT_NEAR(t.bound_lo, 0.4048, 5e-5);
    EXPECT_NEAR(t.bound_hi, 2.4712, 5e-5);
    EXPECT_EQ(t.var_limit, 0.25);
    EXPECT_EQ(t.cells, 4096u);
    EXPECT_NEAR(t.mean_exact, std::sqrt(0.5), 1e-3);
    EXPECT_LT(t.var_finite, t.var_limit);
    EXPECT_NEAR(t.var_finite, 0.25, 1e-3);
}

TEST(VariationTheory, ExactMeanInsideBoundsOnFineMeshes) {
    for (const auto& p : {kBase, GammaGhParams(0.5, 1, 1, 0.5), GammaGhParams(10, 1, 1, 0.5),
                          GammaGhParams(3, 0.2, 0, 2)}) {
        for (std::size_t cells : {100u, 1000u, 16384u}) {
            const auto t = variation_moment_theory(p, uniform_partition(1.0, cells));
            if (t.mesh * p.a > 1e-2) continue;  // sandwich is asymptotic in a * delta
            EXPECT_GE(t.mean_exact, t.bound_lo);
            EXPECT_LE(t.mean_exact, t.bound_hi);
        }
    }
}

TEST(QvTheory, FormulaValues) {
    const auto t = qv_moment_theory(kBase, uniform_partition(1.0, 4096));
    EXPECT_EQ(t.mean, 0.25);
    EXPECT_NEAR(t.var_limit, 0.1875, 1e-15);
    EXPECT_NEAR(t.var_finite, 2 * 0.0625 / 4096 + 0.1875, 1e-15);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t cells : {1u, 4u, 64u, 1024u}) {
        const auto q = qv_moment_theory(kBase, uniform_partition(1.0, cells));
        EXPECT_GE(q.var_finite, q.var_limit);
        EXPECT_LT(q.var_finite, prev);
        prev = q.var_finite;
    }
    const auto b = brownian_qv_theory(uniform_partition(1.0, 256));
    EXPECT_EQ(b.mean, 1.0);
    EXPECT_NEAR(b.var_finite, 2.0 / 256, 1e-15);
}
