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
#include <cmath>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gammagh/distributions.hpp"
#include "gammagh/format.hpp"
#include "gammagh/params.hpp"
#include "gammagh/partition.hpp"
#include "gammagh/rng.hpp"

namespace gammagh {

/// A realized trajectory of the empirical construction on [0, T]:
/// Y_n(t) = sum of the first floor(n t / T) increments.
class Path {
public:
    Path(double horizon, std::vector<double> increments)
        : horizon_(horizon), increments_(std::move(increments)) {
        detail::require(horizon_ > 0 && std::isfinite(horizon_), "horizon must be > 0");
        detail::require(!increments_.empty(), "path needs at least one increment");
        prefix_.resize(increments_.size() + 1);
        prefix_[0] = 0.0;
        for (std::size_t j = 0; j < increments_.size(); ++j) {
            prefix_[j + 1] = prefix_[j] + increments_[j];
        }
    }

    double horizon() const { return horizon_; }
    std::size_t size() const { return increments_.size(); }
    std::span<const double> increments() const { return increments_; }
    std::span<const double> prefix() const { return prefix_; }
    double terminal() const { return prefix_.back(); }

    /// floor(n t / T), snapped to the nearest integer when within a few ulps
    /// of it so that t = j T / n always maps to j, and clamped to [0, n].
    std::size_t grid_index(double t) const {
        detail::require(t >= 0 && t <= horizon_, "evaluation time outside [0, T]");
        const double n = static_cast<double>(size());
        const double x = n * t / horizon_;
        const double nearest = std::round(x);
        double idx = std::abs(x - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest
                                                                             : std::floor(x);
        idx = std::clamp(idx, 0.0, n);
        return static_cast<std::size_t>(idx);
    }

    double value_at(double t) const { return prefix_[grid_index(t)]; }

    double grid_time(std::size_t j) const {
        return j == size() ? horizon_
                           : horizon_ * static_cast<double>(j) / static_cast<double>(size());
    }

    /// `t,value` rows at the grid points j T / n, 17 significant digits.
    void write_csv(std::ostream& os) const {
        os << "t,value\n";
        for (std::size_t j = 0; j <= size(); ++j) {
            os << format_number(grid_time(j)) << ',' << format_number(prefix_[j]) << '\n';
        }
    }

    /// Returns false when the file cannot be written.
    bool write_csv(const std::string& file) const {
        std::ofstream out(file, std::ios::binary);
        if (!out) return false;
        write_csv(out);
        return static_cast<bool>(out.flush());
    }

private:
    double horizon_;
    std::vector<double> increments_;
    std::vector<double> prefix_;
};

/// Signed increments Y(t_{j+1}) - Y(t_j) over the cells of a partition.
struct IncrementSet {
    Partition partition;
    std::vector<double> deltas;

    IncrementSet(Partition p, std::vector<double> d) : partition(std::move(p)), deltas(std::move(d)) {
        detail::require(deltas.size() == partition.cells(),
                        "one increment per partition cell is required");
    }
};

/// Empirical construction: n iid gamma-GH(aT/n, beta, mu T/n, sigma) increments.
inline Path simulate_path(const GammaGhParams& p, double horizon, std::size_t n, RngStream& rng) {
    p.validate();
    detail::require(n >= 1, "n must be >= 1");
    detail::require(horizon > 0 && std::isfinite(horizon), "horizon must be > 0");
    const double step = horizon / static_cast<double>(n);
    std::vector<double> incr(n);
    for (auto& x : incr) x = sample_gamma_gh(p, step, rng);
    return Path(horizon, std::move(incr));
}

/// A path together with the normal and mixing draws that built it.
struct PathComponents {
    Path path;
    std::vector<double> normals;
    std::vector<double> log_mixing;
};

/// Same construction as simulate_path, but the normal factors come from
/// `normal_rng` and the mixing variables from `mixing_rng`. Reusing the
/// normal stream across parameter sets gives common random numbers.
inline PathComponents simulate_path_components(const GammaGhParams& p, double horizon,
                                               std::size_t n, RngStream& normal_rng,
                                               RngStream& mixing_rng) {
    p.validate();
    detail::require(n >= 1, "n must be >= 1");
    detail::require(horizon > 0 && std::isfinite(horizon), "horizon must be > 0");
    const double step = horizon / static_cast<double>(n);
    std::vector<double> z(n), log_w(n), incr(n);
    for (std::size_t j = 0; j < n; ++j) {
        z[j] = normal_rng.normal();
        log_w[j] = sample_log_gamma(p.a * step, p.beta, mixing_rng);
        incr[j] = p.mu * step + p.sigma * z[j] * std::exp(0.5 * log_w[j]);
    }
    return {Path(horizon, std::move(incr)), std::move(z), std::move(log_w)};
}

/// Removes the drift: each increment is reduced by mu T / n.
inline Path center_path(const Path& path, const GammaGhParams& p) {
    const double drift = p.mu * path.horizon() / static_cast<double>(path.size());
    std::vector<double> incr(path.increments().begin(), path.increments().end());
    if (drift != 0.0) {
        for (auto& x : incr) x -= drift;
    }
    return Path(path.horizon(), std::move(incr));
}

/// Exact centred increments over a partition: sigma Z sqrt(gamma(a delta_j, beta)).
inline IncrementSet sample_increments(const GammaGhParams& p, const Partition& partition,
                                      RngStream& rng) {
    p.validate();
    std::vector<double> d(partition.cells());
    for (std::size_t j = 0; j < d.size(); ++j) {
        d[j] = detail::sample_mixture_increment(p.sigma, p.a * partition.delta(j), p.beta, rng);
    }
    return IncrementSet(partition, std::move(d));
}

/// Standard Brownian increments N(0, delta_j) over a partition.
inline IncrementSet sample_brownian_increments(const Partition& partition, RngStream& rng) {
    std::vector<double> d(partition.cells());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = std::sqrt(partition.delta(j)) * rng.normal();
    return IncrementSet(partition, std::move(d));
}

/// Z^n(t) = n^(-1/2) sum_{j <= floor(n t / T)} Z_j with Z_j ~ N(0, T).
inline Path simulate_brownian(double horizon, std::size_t n, RngStream& rng) {
    detail::require(n >= 1, "n must be >= 1");
    detail::require(horizon > 0 && std::isfinite(horizon), "horizon must be > 0");
    const double scale = std::sqrt(horizon) / std::sqrt(static_cast<double>(n));
    std::vector<double> incr(n);
    for (auto& x : incr) x = scale * rng.normal();
    return Path(horizon, std::move(incr));
}

/// Increments of a realized path read off at the points of a partition.
inline IncrementSet increments_on(const Path& path, const Partition& partition) {
    if (partition.horizon() != path.horizon()) {
        throw MismatchedHorizon("partition horizon differs from path horizon");
    }
    const auto pts = partition.points();
    std::vector<double> d(partition.cells());
    double prev = path.value_at(pts[0]);
    for (std::size_t j = 0; j < d.size(); ++j) {
        const double next = path.value_at(pts[j + 1]);
        d[j] = next - prev;
        prev = next;
    }
    return IncrementSet(partition, std::move(d));
}

}  // namespace gammagh
