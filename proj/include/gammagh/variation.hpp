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
#include <numbers>

#include "gammagh/params.hpp"
#include "gammagh/partition.hpp"
#include "gammagh/paths.hpp"
#include "gammagh/quadrature.hpp"

namespace gammagh {

/// V = sum_j |delta_j|.
inline double total_variation(const IncrementSet& incr) {
    double s = 0.0;
    for (double d : incr.deltas) s += std::abs(d);
    return s;
}

/// V_Q = sum_j delta_j^2.
inline double quadratic_variation(const IncrementSet& incr) {
    double s = 0.0;
    for (double d : incr.deltas) s += d * d;
    return s;
}

enum class QuadratureScheme { double_exponential, gauss_kronrod };

/// I1 = int_1^inf x^(-1/2) e^-x dx, I2 = int_1^inf x^-1 e^-x dx,
/// E1 = 2/e + I1, E2 = e (2 + I1).
struct TheoryConstants {
    double I1 = 0.0;
    double I2 = 0.0;
    double E1 = 0.0;
    double E2 = 0.0;

    static TheoryConstants compute(QuadratureScheme scheme = QuadratureScheme::double_exponential) {
        auto f1 = [](double x) { return std::exp(-x) / std::sqrt(x); };
        auto f2 = [](double x) { return std::exp(-x) / x; };
        constexpr double tol = 1e-14;
        TheoryConstants k;
        if (scheme == QuadratureScheme::double_exponential) {
            k.I1 = quadrature::integrate_half_line(f1, 1.0, tol).value;
            k.I2 = quadrature::integrate_half_line(f2, 1.0, tol).value;
        } else {
            k.I1 = quadrature::integrate_half_line_gauss_kronrod(f1, 1.0, tol).value;
            k.I2 = quadrature::integrate_half_line_gauss_kronrod(f2, 1.0, tol).value;
        }
        k.E1 = 2.0 / std::numbers::e + k.I1;
        k.E2 = (2.0 + k.I1) * std::numbers::e;
        return k;
    }
};

inline const TheoryConstants& theory_constants() {
    static const TheoryConstants k = TheoryConstants::compute();
    return k;
}

/// E|Y(t + delta) - Y(t)| = sigma sqrt(2/(pi beta)) Gamma(a delta + 1/2) / Gamma(a delta),
/// with the gamma ratio taken through log-gamma so tiny a*delta stays finite.
inline double expected_abs_increment(const GammaGhParams& p, double delta) {
    detail::require(delta > 0 && std::isfinite(delta), "delta must be > 0");
    const double s = p.a * delta;
    const double ratio = std::exp(std::lgamma(s + 0.5) - std::lgamma(s));
    return p.sigma * std::sqrt(2.0 / (std::numbers::pi * p.beta)) * ratio;
}

/// Theory for the total variation V_k of the centred process on a partition.
struct VariationTheory {
    double mean_exact = 0.0;      // sum_j E|delta_j|
    double bound_lo = 0.0;        // sigma sqrt(2/(pi beta)) E1 a T
    double bound_hi = 0.0;        // sigma sqrt(2/(pi beta)) E2 a T
    double var_limit = 0.0;       // sigma^2 a T / beta
    double var_finite = 0.0;      // sum_j [sigma^2 a delta_j / beta - (E|delta_j|)^2]
    double mesh = 0.0;
    double min_mesh = 0.0;
    std::size_t cells = 0;
};

inline VariationTheory variation_moment_theory(const GammaGhParams& p, const Partition& partition) {
    p.validate();
    const auto& k = theory_constants();
    const double horizon = partition.horizon();
    const double front = p.sigma * std::sqrt(2.0 / (std::numbers::pi * p.beta)) * p.a * horizon;
    VariationTheory t;
    for (std::size_t j = 0; j < partition.cells(); ++j) {
        const double delta = partition.delta(j);
        const double m = expected_abs_increment(p, delta);
        t.mean_exact += m;
        t.var_finite += p.sigma * p.sigma * p.a * delta / p.beta - m * m;
    }
    t.bound_lo = front * k.E1;
    t.bound_hi = front * k.E2;
    t.var_limit = p.sigma * p.sigma * p.a * horizon / p.beta;
    t.mesh = partition.mesh();
    t.min_mesh = partition.min_mesh();
    t.cells = partition.cells();
    return t;
}

/// Theory for the quadratic variation V_Q on a partition.
struct QvTheory {
    double mean = 0.0;        // a sigma^2 T / beta
    double var_finite = 0.0;  // 2 sigma^4 a^2 / beta^2 sum delta_j^2 + 3 a sigma^4 T / beta^2
    double var_limit = 0.0;   // 3 a sigma^4 T / beta^2
    double mesh = 0.0;
    std::size_t cells = 0;
};

inline QvTheory qv_moment_theory(const GammaGhParams& p, const Partition& partition) {
    p.validate();
    const double s2 = p.sigma * p.sigma;
    const double s4 = s2 * s2;
    const double b2 = p.beta * p.beta;
    const double horizon = partition.horizon();
    QvTheory t;
    t.mean = p.a * s2 * horizon / p.beta;
    t.var_limit = 3.0 * p.a * s4 * horizon / b2;
    t.var_finite = 2.0 * s4 * p.a * p.a / b2 * partition.sum_squared_deltas() + t.var_limit;
    t.mesh = partition.mesh();
    t.cells = partition.cells();
    return t;
}

/// Brownian counterpart: E V_Q = T, Var V_Q = 2 sum delta_j^2 -> 0.
inline QvTheory brownian_qv_theory(const Partition& partition) {
    QvTheory t;
    t.mean = partition.horizon();
    t.var_finite = 2.0 * partition.sum_squared_deltas();
    t.var_limit = 0.0;
    t.mesh = partition.mesh();
    t.cells = partition.cells();
    return t;
}

}  // namespace gammagh
