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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "gammagh/distributions.hpp"
#include "gammagh/params.hpp"
#include "gammagh/partition.hpp"
#include "gammagh/paths.hpp"
#include "gammagh/rng.hpp"
#include "gammagh/variation.hpp"

namespace gammagh {

// ---------------------------------------------------------------------------
// Deterministic aggregation and scheduling
// ---------------------------------------------------------------------------

/// Pairwise summation in a fixed tree order: the result depends only on the
/// data, never on how it was produced.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 64) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double var = 0.0;      // unbiased sample variance
    double mean_se = 0.0;  // sqrt(var / n)
    double var_se = 0.0;   // sqrt((m4 - var^2) / n), large-sample SE of var
};

inline SampleSummary summarize(std::span<const double> xs) {
    detail::require(xs.size() >= 2, "need at least two replications");
    SampleSummary s;
    s.n = xs.size();
    const double n = static_cast<double>(s.n);
    s.mean = pairwise_sum(xs) / n;
    std::vector<double> d2(xs.size()), d4(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - s.mean;
        d2[i] = d * d;
        d4[i] = d2[i] * d2[i];
    }
    s.var = pairwise_sum(d2) / (n - 1.0);
    const double m4 = pairwise_sum(d4) / n;
    s.mean_se = std::sqrt(s.var / n);
    s.var_se = std::sqrt(std::max(m4 - s.var * s.var, 0.0) / n);
    return s;
}

inline double sample_correlation(std::span<const double> x, std::span<const double> y) {
    detail::require(x.size() == y.size() && x.size() >= 2, "correlation needs paired samples");
    const double n = static_cast<double>(x.size());
    const double mx = pairwise_sum(x) / n;
    const double my = pairwise_sum(y) / n;
    std::vector<double> sxy(x.size()), sxx(x.size()), syy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy[i] = dx * dy;
        sxx[i] = dx * dx;
        syy[i] = dy * dy;
    }
    return pairwise_sum(sxy) / std::sqrt(pairwise_sum(sxx) * pairwise_sum(syy));
}

/// Runs fn(i) for i in [0, count) on `workers` threads (0 = hardware
/// concurrency). fn must only write state owned by index i.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    constexpr std::size_t kChunk = 16;
    auto worker = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= count) return;
            const std::size_t end = std::min(count, begin + kChunk);
            for (std::size_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
}

// ---------------------------------------------------------------------------
// Configuration and reports
// ---------------------------------------------------------------------------

struct MonteCarloConfig {
    std::size_t replications = 10000;
    std::uint64_t master_seed = 42;
    GammaGhParams params{1.0, 1.0, 0.0, 0.5};
    double horizon = 1.0;
    std::size_t cells = 4096;                        // uniform partition, unless
    std::optional<std::vector<double>> points;       // explicit points are given
    std::vector<double> u_grid = default_u_grid();
    unsigned workers = 0;
    double var_rel_tol = 0.05;

    static std::vector<double> default_u_grid() {
        std::vector<double> g;
        for (int k = -10; k <= 10; ++k) g.push_back(0.5 * k);
        return g;
    }

    Partition partition() const {
        if (points) return Partition(*points);
        return uniform_partition(horizon, cells);
    }

    void validate() const {
        params.validate();
        detail::require(replications >= 100, "replications must be >= 100");
        detail::require(horizon > 0 && std::isfinite(horizon), "horizon must be > 0");
        detail::require(var_rel_tol > 0, "var_rel_tol must be > 0");
        for (std::size_t i = 0; i < u_grid.size(); ++i) {
            detail::require_finite(u_grid[i], "u_grid entry");
            detail::require(u_grid[i] == -u_grid[u_grid.size() - 1 - i],
                            "u_grid must be symmetric about 0");
        }
    }
};

/// One pass/fail comparison. `source` names where the tolerance comes from;
/// checks with asserted == false are reported but do not affect the verdict.
struct Check {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    std::string source;
    bool asserted = true;
};

inline bool all_passed(std::span<const Check> checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.passed || !c.asserted; });
}

struct MomentReport {
    std::string statistic;  // "V_k", "V_Q", "V_Q (brownian)"
    double mean_theory = 0.0;
    double mean_mc = 0.0;
    double mean_se = 0.0;
    double var_theory = 0.0;
    double var_mc = 0.0;
    double var_se = 0.0;
    double var_limit = 0.0;
    std::optional<double> bounds_lo;
    std::optional<double> bounds_hi;
    double mesh = 0.0;
    std::size_t cells = 0;
    std::size_t replications = 0;
    std::vector<Check> checks;

    bool passed() const { return all_passed(checks); }
};

namespace detail {

inline Check mean_check(const MomentReport& r) {
    const double tol = 3.0 * r.mean_se;
    return {"mean within 3 SE", std::abs(r.mean_mc - r.mean_theory) <= tol, r.mean_mc,
            r.mean_theory, tol, "3 * standard error of the sample mean"};
}

// Relative tolerance, widened to 3 SE of the variance estimator when the
// replication count is too small for the relative tolerance to be meaningful.
inline Check variance_check(const MomentReport& r, double rel_tol) {
    const double rel = rel_tol * r.var_theory;
    const double se = 3.0 * r.var_se;
    const double tol = std::max(rel, se);
    std::string source = rel >= se ? "relative tolerance " + format_number(rel_tol, 6)
                                   : "3 * standard error of the sample variance";
    return {"variance within tolerance", std::abs(r.var_mc - r.var_theory) <= tol, r.var_mc,
            r.var_theory, tol, std::move(source)};
}

inline void fill_mc(MomentReport& r, std::span<const double> values) {
    const auto s = summarize(values);
    r.mean_mc = s.mean;
    r.mean_se = s.mean_se;
    r.var_mc = s.var;
    r.var_se = s.var_se;
    r.replications = s.n;
}

inline constexpr std::uint64_t kBrownianArm = 0x42524f574e49414eULL;
inline constexpr std::uint64_t kIdecompSums = 0x53554d53ULL;
inline constexpr std::uint64_t kIdecompDirect = 0x44495245ULL;
inline constexpr std::size_t kSampleBlock = 4096;

// Fills out[i] for i in [0, count); samples are drawn in blocks of
// kSampleBlock, block b using stream (seed, b).
template <class Draw>
std::vector<double> draw_blocked(std::size_t count, std::uint64_t seed, unsigned workers,
                                 Draw&& draw) {
    std::vector<double> out(count);
    const std::size_t blocks = (count + kSampleBlock - 1) / kSampleBlock;
    parallel_for(blocks, workers, [&](std::size_t b) {
        RngStream rng(seed, b);
        const std::size_t end = std::min(count, (b + 1) * kSampleBlock);
        for (std::size_t i = b * kSampleBlock; i < end; ++i) out[i] = draw(rng);
    });
    return out;
}

inline ComplexValue empirical_charfn(std::span<const double> xs, double u) {
    std::vector<double> c(xs.size()), s(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        c[i] = std::cos(u * xs[i]);
        s[i] = std::sin(u * xs[i]);
    }
    const double n = static_cast<double>(xs.size());
    return {pairwise_sum(c) / n, pairwise_sum(s) / n};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Total variation
// ---------------------------------------------------------------------------

/// Monte Carlo moments of V_k against the exact finite-mesh theory.
/// Replication r uses stream (master_seed, r).
inline MomentReport run_variation_experiment(const MonteCarloConfig& cfg) {
    cfg.validate();
    const Partition partition = cfg.partition();
    std::vector<double> values(cfg.replications);
    parallel_for(cfg.replications, cfg.workers, [&](std::size_t r) {
        RngStream rng(cfg.master_seed, r);
        values[r] = total_variation(sample_increments(cfg.params, partition, rng));
    });

    const auto theory = variation_moment_theory(cfg.params, partition);
    MomentReport rep;
    rep.statistic = "V_k";
    rep.mean_theory = theory.mean_exact;
    rep.var_theory = theory.var_finite;
    rep.var_limit = theory.var_limit;
    rep.bounds_lo = theory.bound_lo;
    rep.bounds_hi = theory.bound_hi;
    rep.mesh = theory.mesh;
    rep.cells = theory.cells;
    detail::fill_mc(rep, values);

    rep.checks.push_back(detail::mean_check(rep));
    rep.checks.push_back(detail::variance_check(rep, cfg.var_rel_tol));
    // The sandwich holds only asymptotically; assert it once the mesh is fine.
    const bool inside = rep.mean_mc >= theory.bound_lo && rep.mean_mc <= theory.bound_hi;
    rep.checks.push_back({"mean inside asymptotic bounds", inside, rep.mean_mc,
                          0.5 * (theory.bound_lo + theory.bound_hi),
                          0.5 * (theory.bound_hi - theory.bound_lo),
                          "asymptotic bounds with E1, E2; asserted for mesh <= 1e-2",
                          theory.mesh <= 1e-2});
    return rep;
}

// ---------------------------------------------------------------------------
// Quadratic variation
// ---------------------------------------------------------------------------

struct QvExperimentResult {
    std::vector<MomentReport> gamma;     // one per mesh, gamma-GH arm
    std::vector<MomentReport> brownian;  // paired Brownian control
    std::vector<Check> checks;           // plateau / contrast verdicts

    bool passed() const {
        auto ok = [](const std::vector<MomentReport>& v) {
            return std::all_of(v.begin(), v.end(), [](const MomentReport& r) { return r.passed(); });
        };
        return ok(gamma) && ok(brownian) && all_passed(checks);
    }
};

/// V_Q moments on a ladder of uniform meshes, with a Brownian control run on
/// the same partitions and replication count. The gamma arm uses streams
/// (master_seed, r); the Brownian arm a derived seed.
inline QvExperimentResult run_qv_experiment(const MonteCarloConfig& cfg,
                                            std::span<const std::size_t> mesh_ladder) {
    cfg.validate();
    detail::require(!mesh_ladder.empty(), "mesh ladder must not be empty");
    for (std::size_t i = 0; i < mesh_ladder.size(); ++i) {
        detail::require(mesh_ladder[i] >= 1, "cell counts must be >= 1");
        detail::require(i == 0 || mesh_ladder[i] > mesh_ladder[i - 1],
                        "mesh ladder must be increasing");
    }
    const std::uint64_t brownian_seed = RngStream::derive_seed(cfg.master_seed, detail::kBrownianArm);

    QvExperimentResult out;
    for (std::size_t cells : mesh_ladder) {
        const Partition partition = uniform_partition(cfg.horizon, cells);
        std::vector<double> gamma_values(cfg.replications), brownian_values(cfg.replications);
        parallel_for(cfg.replications, cfg.workers, [&](std::size_t r) {
            RngStream rng(cfg.master_seed, r);
            gamma_values[r] = quadratic_variation(sample_increments(cfg.params, partition, rng));
            RngStream brng(brownian_seed, r);
            brownian_values[r] = quadratic_variation(sample_brownian_increments(partition, brng));
        });

        const auto gt = qv_moment_theory(cfg.params, partition);
        MomentReport g;
        g.statistic = "V_Q";
        g.mean_theory = gt.mean;
        g.var_theory = gt.var_finite;
        g.var_limit = gt.var_limit;
        g.mesh = gt.mesh;
        g.cells = gt.cells;
        detail::fill_mc(g, gamma_values);
        g.checks.push_back(detail::mean_check(g));
        g.checks.push_back(detail::variance_check(g, cfg.var_rel_tol));
        out.gamma.push_back(std::move(g));

        const auto bt = brownian_qv_theory(partition);
        MomentReport b;
        b.statistic = "V_Q (brownian)";
        b.mean_theory = bt.mean;
        b.var_theory = bt.var_finite;
        b.var_limit = bt.var_limit;
        b.mesh = bt.mesh;
        b.cells = bt.cells;
        detail::fill_mc(b, brownian_values);
        b.checks.push_back(detail::mean_check(b));
        b.checks.push_back(detail::variance_check(b, cfg.var_rel_tol));
        out.brownian.push_back(std::move(b));
    }

    const auto& finest = out.gamma.back();
    const double plateau = 0.9 * finest.var_limit;
    out.checks.push_back({"gamma V_Q variance plateau at finest mesh", finest.var_mc >= plateau,
                          finest.var_mc, finest.var_limit, finest.var_limit - plateau,
                          "0.9 * limiting variance 3 a sigma^4 T / beta^2"});
    if (out.brownian.size() >= 2) {
        const double coarse = out.brownian.front().var_mc;
        const double fine = out.brownian.back().var_mc;
        out.checks.push_back({"brownian V_Q variance collapses", fine <= 0.1 * coarse, fine, 0.0,
                              0.1 * coarse, "0.1 * brownian variance at the coarsest mesh"});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Characteristic function
// ---------------------------------------------------------------------------

struct CharfnReport {
    std::size_t samples = 0;
    std::vector<double> u_grid;
    std::vector<double> errors;  // |empirical - exact| per u
    double max_error = 0.0;
    double bound = 0.0;          // 4 / sqrt(N)
    bool passed = false;
};

/// Empirical charfn of N = cfg.replications exact draws against the closed form.
inline CharfnReport run_charfn_check(const MonteCarloConfig& cfg) {
    cfg.validate();
    detail::require(!cfg.u_grid.empty(), "u_grid must not be empty");
    const auto xs = detail::draw_blocked(cfg.replications, cfg.master_seed, cfg.workers,
                                         [&](RngStream& rng) {
                                             return sample_gamma_gh(cfg.params, cfg.horizon, rng);
                                         });
    CharfnReport rep;
    rep.samples = xs.size();
    rep.u_grid = cfg.u_grid;
    rep.bound = 4.0 / std::sqrt(static_cast<double>(xs.size()));
    for (double u : cfg.u_grid) {
        const auto emp = detail::empirical_charfn(xs, u);
        const auto exact = charfn_gamma_gh(cfg.params, cfg.horizon, u);
        const double err = (emp - exact).abs();
        rep.errors.push_back(err);
        rep.max_error = std::max(rep.max_error, err);
    }
    rep.passed = rep.max_error <= rep.bound;
    return rep;
}

// ---------------------------------------------------------------------------
// Infinite divisibility
// ---------------------------------------------------------------------------

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    detail::require(!a.empty() && !b.empty(), "KS needs non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// 1% critical value 1.63 sqrt((n + m) / (n m)) of the two-sample KS test.
inline double ks_critical_1pct(std::size_t n, std::size_t m) {
    const double a = static_cast<double>(n), b = static_cast<double>(m);
    return 1.63 * std::sqrt((a + b) / (a * b));
}

struct IdecompReport {
    std::size_t parts = 0;
    std::size_t samples = 0;
    double ks_statistic = 0.0;
    double ks_critical = 0.0;
    double charfn_max_distance = 0.0;  // between the two empirical charfns
    double charfn_bound = 0.0;         // 4 sqrt(2 / N), reported only
    double identity_max_error = 0.0;   // max_u |psi_{a/n}(u)^n - psi_a(u)|
    bool passed = false;
};

/// Sums of `parts` iid gamma-GH(a/n, beta, mu/n, sigma) draws against direct
/// gamma-GH(a, beta, mu, sigma) draws.
inline IdecompReport run_idecomp_check(const GammaGhParams& p, std::size_t parts,
                                       std::size_t samples, std::uint64_t seed,
                                       unsigned workers = 0,
                                       std::span<const double> u_grid = {}) {
    p.validate();
    detail::require(parts >= 1, "parts must be >= 1");
    detail::require(samples >= 2, "need at least two samples");
    std::vector<double> grid(u_grid.begin(), u_grid.end());
    if (grid.empty()) grid = MonteCarloConfig::default_u_grid();

    const double share = 1.0 / static_cast<double>(parts);
    auto sums = detail::draw_blocked(samples, RngStream::derive_seed(seed, detail::kIdecompSums),
                                     workers, [&](RngStream& rng) {
                                         double s = 0.0;
                                         for (std::size_t k = 0; k < parts; ++k) {
                                             s += sample_gamma_gh(p, share, rng);
                                         }
                                         return s;
                                     });
    auto direct = detail::draw_blocked(samples, RngStream::derive_seed(seed, detail::kIdecompDirect),
                                       workers, [&](RngStream& rng) {
                                           return sample_gamma_gh(p, 1.0, rng);
                                       });

    IdecompReport rep;
    rep.parts = parts;
    rep.samples = samples;
    for (double u : grid) {
        const auto ea = detail::empirical_charfn(sums, u);
        const auto eb = detail::empirical_charfn(direct, u);
        rep.charfn_max_distance = std::max(rep.charfn_max_distance, (ea - eb).abs());

        const auto root = charfn_gamma_gh(p, share, u);
        ComplexValue power{1.0, 0.0};
        for (std::size_t k = 0; k < parts; ++k) power = power * root;
        rep.identity_max_error =
            std::max(rep.identity_max_error, (power - charfn_gamma_gh(p, 1.0, u)).abs());
    }
    rep.charfn_bound = 4.0 * std::sqrt(2.0 / static_cast<double>(samples));
    rep.ks_statistic = ks_two_sample(std::move(sums), std::move(direct));
    rep.ks_critical = ks_critical_1pct(samples, samples);
    rep.passed = rep.ks_statistic < rep.ks_critical && rep.identity_max_error <= 1e-12;
    return rep;
}

// ---------------------------------------------------------------------------
// Finite-dimensional convergence of the empirical construction
// ---------------------------------------------------------------------------

struct FddReport {
    std::size_t n = 0;
    double horizon = 1.0;
    double t1 = 0.0;
    double t2 = 0.0;
    std::size_t samples = 0;
    std::size_t cell_count = 0;          // floor(n t2/T) - floor(n t1/T)
    std::vector<double> u_grid;
    std::vector<double> error_vs_limit;  // |empirical - limiting charfn|
    std::vector<double> error_vs_finite; // |empirical - finite-n charfn|
    std::vector<double> gap;             // |finite-n - limiting| (closed forms)
    double max_error_vs_limit = 0.0;
    double max_error_vs_finite = 0.0;
    double max_gap = 0.0;
    double mc_bound = 0.0;               // 4 / sqrt(N)
    double correlation = 0.0;            // corr(Y(t1), Y(t2) - Y(t1))
    double correlation_bound = 0.0;      // 3 / sqrt(N)
    std::vector<Check> checks;

    bool passed() const { return all_passed(checks); }
};

/// Compares Y_n(t2) - Y_n(t1) over N simulated paths with the limiting
/// margin law and with the exact finite-n law given by the floor counts.
inline FddReport run_fdd_check(const GammaGhParams& p, double horizon, std::size_t n, double t1,
                               double t2, std::size_t samples, std::uint64_t seed,
                               unsigned workers = 0, std::span<const double> u_grid = {}) {
    p.validate();
    detail::require(0 < t1 && t1 < t2 && t2 <= horizon, "need 0 < t1 < t2 <= T");
    detail::require(samples >= 2, "need at least two samples");
    std::vector<double> grid(u_grid.begin(), u_grid.end());
    if (grid.empty()) grid = MonteCarloConfig::default_u_grid();

    std::vector<double> first(samples), diff(samples);
    parallel_for(samples, workers, [&](std::size_t i) {
        RngStream rng(seed, i);
        const Path path = simulate_path(p, horizon, n, rng);
        first[i] = path.value_at(t1);
        diff[i] = path.value_at(t2) - first[i];
    });

    const Path probe(horizon, std::vector<double>(n, 0.0));
    FddReport rep;
    rep.n = n;
    rep.horizon = horizon;
    rep.t1 = t1;
    rep.t2 = t2;
    rep.samples = samples;
    rep.cell_count = probe.grid_index(t2) - probe.grid_index(t1);
    rep.u_grid = grid;
    rep.mc_bound = 4.0 / std::sqrt(static_cast<double>(samples));
    const double finite_scale =
        horizon * static_cast<double>(rep.cell_count) / static_cast<double>(n);
    for (double u : grid) {
        const auto emp = detail::empirical_charfn(diff, u);
        const auto limit = charfn_gamma_gh(p, t2 - t1, u);
        const ComplexValue finite =
            rep.cell_count == 0 ? ComplexValue{1.0, 0.0} : charfn_gamma_gh(p, finite_scale, u);
        rep.error_vs_limit.push_back((emp - limit).abs());
        rep.error_vs_finite.push_back((emp - finite).abs());
        rep.gap.push_back((finite - limit).abs());
        rep.max_error_vs_limit = std::max(rep.max_error_vs_limit, rep.error_vs_limit.back());
        rep.max_error_vs_finite = std::max(rep.max_error_vs_finite, rep.error_vs_finite.back());
        rep.max_gap = std::max(rep.max_gap, rep.gap.back());
    }
    rep.correlation = sample_correlation(first, diff);
    rep.correlation_bound = 3.0 / std::sqrt(static_cast<double>(samples));

    rep.checks.push_back({"empirical vs finite-n charfn", rep.max_error_vs_finite <= rep.mc_bound,
                          rep.max_error_vs_finite, 0.0, rep.mc_bound, "4 / sqrt(N)"});
    bool within = true;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        within = within && rep.error_vs_limit[k] <= rep.mc_bound + rep.gap[k];
    }
    rep.checks.push_back({"empirical vs limiting charfn", within,
                          rep.max_error_vs_limit, 0.0, rep.mc_bound + rep.max_gap,
                          "4 / sqrt(N) + closed-form discretization gap, per u"});
    rep.checks.push_back({"independent increments", std::abs(rep.correlation) <= rep.correlation_bound,
                          rep.correlation, 0.0, rep.correlation_bound, "3 / sqrt(N)"});
    return rep;
}

}  // namespace gammagh
