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
#include <span>
#include <string>
#include <vector>

#include "gammagh/params.hpp"
#include "gammagh/rng.hpp"

namespace gammagh {

/// Strictly increasing grid 0 = t_0 < t_1 < ... < t_l = T.
class Partition {
public:
    explicit Partition(std::vector<double> points) : points_(std::move(points)) {
        detail::require(points_.size() >= 2, "partition needs at least two points");
        detail::require(points_.front() == 0.0, "partition must start at 0");
        for (std::size_t j = 0; j + 1 < points_.size(); ++j) {
            detail::require_finite(points_[j + 1], "partition point");
            detail::require(points_[j + 1] > points_[j],
                            "partition points must be strictly increasing");
        }
    }

    std::span<const double> points() const { return points_; }
    double horizon() const { return points_.back(); }
    std::size_t cells() const { return points_.size() - 1; }
    double delta(std::size_t j) const { return points_[j + 1] - points_[j]; }

    std::vector<double> deltas() const {
        std::vector<double> out(cells());
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = delta(j);
        return out;
    }

    double mesh() const {
        double m = 0.0;
        for (std::size_t j = 0; j < cells(); ++j) m = std::max(m, delta(j));
        return m;
    }

    /// Smallest cell width; reported only.
    double min_mesh() const {
        double m = delta(0);
        for (std::size_t j = 1; j < cells(); ++j) m = std::min(m, delta(j));
        return m;
    }

    double sum_squared_deltas() const {
        double s = 0.0;
        for (std::size_t j = 0; j < cells(); ++j) s += delta(j) * delta(j);
        return s;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<double> points_;
};

inline Partition uniform_partition(double horizon, std::size_t cells) {
    detail::require(horizon > 0 && std::isfinite(horizon), "horizon must be > 0");
    detail::require(cells >= 1, "cell count must be >= 1");
    std::vector<double> pts(cells + 1);
    for (std::size_t j = 0; j <= cells; ++j) {
        pts[j] = horizon * static_cast<double>(j) / static_cast<double>(cells);
    }
    pts.back() = horizon;
    return Partition(std::move(pts));
}

/// Partition whose cell widths are T times a flat Dirichlet vector.
inline Partition random_partition(double horizon, std::size_t cells, RngStream& rng) {
    detail::require(horizon > 0 && std::isfinite(horizon), "horizon must be > 0");
    detail::require(cells >= 1, "cell count must be >= 1");
    std::vector<double> gaps(cells);
    double total = 0.0;
    for (auto& g : gaps) {
        g = -std::log(rng.uniform());
        total += g;
    }
    std::vector<double> pts(cells + 1, 0.0);
    double acc = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
        acc += gaps[j];
        pts[j + 1] = horizon * acc / total;
    }
    pts.back() = horizon;
    return Partition(std::move(pts));
}

/// Sorted union of the points of all partitions (refines each input).
inline Partition superpose(std::span<const Partition> partitions) {
    detail::require(!partitions.empty(), "superpose needs at least one partition");
    const double horizon = partitions.front().horizon();
    std::vector<double> pts;
    for (const auto& p : partitions) {
        if (p.horizon() != horizon) {
            throw MismatchedHorizon("cannot superpose partitions of [0," + std::to_string(horizon) +
                                    "] and [0," + std::to_string(p.horizon()) + "]");
        }
        pts.insert(pts.end(), p.points().begin(), p.points().end());
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return Partition(std::move(pts));
}

}  // namespace gammagh
