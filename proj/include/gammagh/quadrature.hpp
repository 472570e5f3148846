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
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gammagh/params.hpp"

namespace gammagh::quadrature {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;  // |last level - previous level|
    int levels = 0;
};

namespace detail {

inline void check_tolerance(double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-4)) {
        throw DomainError("rel_tol must lie in (0, 1e-4]");
    }
}

// Trapezoid sum of g(tau) over the nodes k*h, k odd only when `odd_only`.
// Walks outward from 0 and stops once terms are negligible against `scale`.
template <class G>
double trapezoid_nodes(const G& g, double h, bool odd_only, double scale) {
    constexpr double kTauMax = 6.5;
    constexpr double kNegligible = 1e-20;
    double sum = 0.0;
    if (!odd_only) sum += g(0.0);
    const int step = odd_only ? 2 : 1;
    for (int side = -1; side <= 1; side += 2) {
        int quiet = 0;
        for (int k = 1; k * h <= kTauMax; k += step) {
            const double term = g(side * k * h);
            if (!std::isfinite(term)) break;
            sum += term;
            const double ref = std::max(std::abs(sum), scale);
            if (std::abs(term) <= kNegligible * ref) {
                if (++quiet >= 2) break;
            } else {
                quiet = 0;
            }
        }
    }
    return sum;
}

template <class G>
Result refine(const G& g, double rel_tol, int max_levels) {
    double h = 1.0;
    double sum = trapezoid_nodes(g, h, false, 0.0);
    double estimate = h * sum;
    Result r{estimate, std::numeric_limits<double>::infinity(), 0};
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        sum += trapezoid_nodes(g, h, true, std::abs(sum));
        const double next = h * sum;
        r.error_estimate = std::abs(next - estimate);
        r.value = next;
        r.levels = level;
        estimate = next;
        if (level >= 3 && r.error_estimate <= rel_tol * std::abs(next)) break;
    }
    return r;
}

}  // namespace detail

/// Double-exponential (sinh-sinh) quadrature of f over the whole real line.
/// Halves the step until successive levels agree to rel_tol.
template <class F>
Result integrate_real_line(const F& f, double rel_tol, int max_levels = 12) {
    constexpr double half_pi = std::numbers::pi / 2;
    auto g = [&](double tau) {
        const double inner = half_pi * std::sinh(tau);
        const double u = std::sinh(inner);
        if (!std::isfinite(u)) return 0.0;
        const double fu = f(u);
        if (fu == 0.0) return 0.0;
        return fu * half_pi * std::cosh(tau) * std::cosh(inner);
    };
    return detail::refine(g, rel_tol, max_levels);
}

/// Double-exponential (exp-sinh) quadrature of f over [lower, +inf).
/// Tolerates integrable singularities at `lower`.
template <class F>
Result integrate_half_line(const F& f, double lower, double rel_tol, int max_levels = 12) {
    constexpr double half_pi = std::numbers::pi / 2;
    auto g = [&](double tau) {
        const double inner = half_pi * std::sinh(tau);
        const double offset = std::exp(inner);
        if (offset == 0.0 || !std::isfinite(offset)) return 0.0;
        const double fx = f(lower + offset);
        if (fx == 0.0) return 0.0;
        return fx * half_pi * std::cosh(tau) * offset;
    };
    return detail::refine(g, rel_tol, max_levels);
}

/// Adaptive 61-point Gauss-Kronrod over [lower, +inf), backed by Boost.Math.
/// Used as a second scheme independent of the double-exponential rules.
template <class F>
Result integrate_half_line_gauss_kronrod(const F& f, double lower, double rel_tol) {
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, lower, std::numeric_limits<double>::infinity(), 30, rel_tol, &err);
    return {value, err, 0};
}

}  // namespace gammagh::quadrature
