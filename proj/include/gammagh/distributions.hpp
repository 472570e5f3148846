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

#include "gammagh/params.hpp"
#include "gammagh/quadrature.hpp"
#include "gammagh/rng.hpp"

namespace gammagh {

inline constexpr double kDefaultRelTol = 1e-10;

// ---------------------------------------------------------------------------
// GIG normalizing constant C(a, b, c) = int_0^inf x^(a-1) exp(-(b x + c/x)/2) dx
// ---------------------------------------------------------------------------

/// log C(a, b, c) by double-exponential quadrature after x = e^t.
///
/// The log-integrand a t - (b e^t + c e^-t)/2 is concave in t; it is centred
/// on its maximum and scaled by its curvature there before integrating, and
/// the peak value is factored out so large or tiny constants do not overflow.
inline double log_gig_norm_constant(double a, double b, double c, double rel_tol = kDefaultRelTol) {
    quadrature::detail::check_tolerance(rel_tol);
    detail::require_finite(a, "a");
    detail::require_finite(b, "b");
    detail::require_finite(c, "c");
    if ((c == 0 && a <= 0) || (b == 0 && a >= 0)) {
        throw DivergentIntegral("C(a,b,c) diverges: needs a > 0 when c = 0 and a < 0 when b = 0");
    }
    detail::require(b >= 0 && c >= 0, "C(a,b,c) requires b >= 0 and c >= 0");

    // Stationary point: b e^{2t} - 2a e^t - c = 0, written to avoid cancellation.
    const double root = std::hypot(a, std::sqrt(b) * std::sqrt(c));
    const double peak_x = (a >= 0) ? (a + root) / b : c / (root - a);
    const double t_star = std::log(peak_x);

    auto log_integrand = [a, b, c](double t) {
        return a * t - 0.5 * (b * std::exp(t) + c * std::exp(-t));
    };
    const double log_peak = log_integrand(t_star);

    // Scale by the longer of the two distances over which the log-integrand
    // falls by one unit. Equals sqrt(2 / curvature) near a quadratic peak and
    // still covers the long flat plateau that appears when b c is tiny.
    auto unit_drop = [&](double dir) {
        auto drop = [&](double d) { return log_peak - log_integrand(t_star + dir * d) - 1.0; };
        double lo = 0.0, hi = 1.0;
        while (drop(hi) < 0 && hi < 1e4) {
            lo = hi;
            hi *= 2.0;
        }
        for (int i = 0; i < 60 && hi - lo > 1e-6 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (drop(mid) < 0 ? lo : hi) = mid;
        }
        return hi;
    };
    const double scale = std::max(unit_drop(-1.0), unit_drop(1.0)) / std::numbers::sqrt2;
    auto centred = [&](double u) {
        const double v = log_integrand(t_star + scale * u) - log_peak;
        return std::isfinite(v) ? std::exp(v) : 0.0;
    };
    const auto r = quadrature::integrate_real_line(centred, rel_tol);
    return log_peak + std::log(scale) + std::log(r.value);
}

inline double gig_norm_constant(double a, double b, double c, double rel_tol = kDefaultRelTol) {
    return std::exp(log_gig_norm_constant(a, b, c, rel_tol));
}

inline double gig_norm_constant(const GigParams& p, double rel_tol = kDefaultRelTol) {
    p.validate();
    return gig_norm_constant(p.a, p.b, p.c, rel_tol);
}

// ---------------------------------------------------------------------------
// Mixture densities
// ---------------------------------------------------------------------------

namespace detail {

inline double log_sqrt_two_pi() { return 0.5 * std::log(2.0 * std::numbers::pi); }

// log C(order, b, r^2), +inf in place of the divergence at r = 0. For r > 0
// uses C(a, b, c) = (c/b)^(a/2) C(a, sqrt(bc), sqrt(bc)) so r^2 is never formed.
inline double log_inner_constant(double order, double b, double r, double rel_tol) {
    if (r == 0) {
        if (order <= 0) return std::numeric_limits<double>::infinity();
        return log_gig_norm_constant(order, b, 0.0, rel_tol);
    }
    const double k = std::sqrt(b) * r;
    return order * (std::log(r) - 0.5 * std::log(b)) + log_gig_norm_constant(order, k, k, rel_tol);
}

}  // namespace detail

/// Density of the gamma-GH law. Diverges at u = mu when a <= 1/2.
inline double pdf_gamma_gh(const GammaGhParams& p, double u, double rel_tol = kDefaultRelTol) {
    p.validate();
    detail::require_finite(u, "u");
    const double z = (u - p.mu) / p.sigma;
    const double log_c = detail::log_inner_constant(p.a - 0.5, 2.0 * p.beta, std::abs(z), rel_tol);
    if (std::isinf(log_c)) return std::numeric_limits<double>::infinity();
    return std::exp(p.a * std::log(p.beta) - std::log(p.sigma) - detail::log_sqrt_two_pi()
                    - std::lgamma(p.a) + log_c);
}

/// Density of the inverse-gamma normal variance mixture (closed form).
inline double pdf_ig_gh(const IgParams& p, double mu, double sigma, double u) {
    p.validate();
    detail::require_finite(mu, "mu");
    detail::require_finite(sigma, "sigma");
    detail::require(sigma > 0, "sigma must be > 0");
    detail::require_finite(u, "u");
    const double z = (u - mu) / sigma;
    const double log_norm = (p.a + 0.5) * std::log(2.0) + p.a * std::log(p.beta)
                            + std::lgamma(p.a + 0.5) - std::log(sigma) - std::lgamma(p.a)
                            - detail::log_sqrt_two_pi();
    return std::exp(log_norm - (p.a + 0.5) * std::log(z * z + 2.0 * p.beta));
}

/// Density of the GIG normal variance mixture: ratio of two GIG constants.
inline double pdf_gig_gh(const GigParams& p, double mu, double sigma, double u,
                         double rel_tol = kDefaultRelTol) {
    p.validate();
    detail::require(p.b > 0, "gig-GH density requires b > 0");
    detail::require_finite(mu, "mu");
    detail::require_finite(sigma, "sigma");
    detail::require(sigma > 0, "sigma must be > 0");
    detail::require_finite(u, "u");
    const double z = (u - mu) / sigma;
    const double log_outer = log_gig_norm_constant(p.a, p.b, p.c, rel_tol);
    const double log_inner = detail::log_inner_constant(p.a - 0.5, p.b, std::hypot(std::sqrt(p.c), z), rel_tol);
    if (std::isinf(log_inner)) return std::numeric_limits<double>::infinity();
    return std::exp(log_inner - log_outer - std::log(sigma) - detail::log_sqrt_two_pi());
}

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

/// Characteristic function of the margin at `time_scale`:
/// exp(i mu s u) (1 + sigma^2 u^2 / (2 beta))^(-a s).
inline ComplexValue charfn_gamma_gh(const GammaGhParams& p, double time_scale, double u) {
    detail::require(time_scale > 0 && std::isfinite(time_scale), "time_scale must be > 0");
    const double modulus =
        std::exp(-p.a * time_scale * std::log1p(p.sigma * p.sigma * u * u / (2.0 * p.beta)));
    // evaluated at |u| so that psi(-u) is exactly conj(psi(u))
    const double phase = p.mu * time_scale * std::abs(u);
    const double im = modulus * std::sin(phase);
    return {modulus * std::cos(phase), u < 0 ? -im : im};
}

/// Laplace transform E exp(-t W) of the gamma(a, beta) mixing law.
inline double moment_transform_gamma(const GammaGhParams& p, double t) {
    detail::require(t >= 0, "moment transform argument must be >= 0");
    return std::exp(-p.a * std::log1p(t / p.beta));
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

namespace detail {

// log of a gamma(shape, 1) draw for shape >= 1, Marsaglia-Tsang squeeze/rejection.
inline double log_gamma_marsaglia_tsang(double shape, RngStream& rng) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = rng.normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 ||
            std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return std::log(d * v);
        }
    }
}

inline double log_rate(double rate) { return rate == 1.0 ? 0.0 : std::log(rate); }

// Below this, U^(1/shape) / rate forces sqrt(W) to underflow to 0 whatever the
// gamma(shape + 1) factor is (that factor would have to exceed e^100).
inline constexpr double kUnderflowLogW = -1600.0;

// scale * Z * sqrt(W) with W ~ gamma(shape, rate). For shape < 1 the boost
// uniform is drawn first so that cells whose sqrt(W) is exactly 0 in double
// precision skip the remaining draws.
inline double sample_mixture_increment(double scale, double shape, double rate, RngStream& rng) {
    if (shape < 1.0) {
        const double log_boost = std::log(rng.uniform()) / shape - log_rate(rate);
        if (log_boost < kUnderflowLogW) return 0.0;
        const double z = rng.normal();
        return scale * z * std::exp(0.5 * (log_gamma_marsaglia_tsang(shape + 1.0, rng) + log_boost));
    }
    const double z = rng.normal();
    return scale * z * std::exp(0.5 * (log_gamma_marsaglia_tsang(shape, rng) - log_rate(rate)));
}

inline void check_gamma_args(double shape, double rate) {
    require(shape > 0 && std::isfinite(shape), "gamma shape must be > 0");
    require(rate > 0 && std::isfinite(rate), "gamma rate must be > 0");
}

}  // namespace detail

/// Logarithm of one gamma(shape, rate) draw.
///
/// shape >= 1: Marsaglia-Tsang. shape < 1: the boost
/// gamma(shape) = gamma(shape + 1) * U^(1/shape), kept in log space because
/// U^(1/shape) underflows for the tiny shapes of fine partitions.
inline double sample_log_gamma(double shape, double rate, RngStream& rng) {
    detail::check_gamma_args(shape, rate);
    if (shape < 1.0) {
        const double log_g = detail::log_gamma_marsaglia_tsang(shape + 1.0, rng);
        return log_g + std::log(rng.uniform()) / shape - detail::log_rate(rate);
    }
    return detail::log_gamma_marsaglia_tsang(shape, rng) - detail::log_rate(rate);
}

/// One gamma(shape, rate) draw. Values below the smallest positive double
/// are returned as that value so draws stay strictly positive.
inline double sample_gamma(double shape, double rate, RngStream& rng) {
    const double v = std::exp(sample_log_gamma(shape, rate, rng));
    return std::max(v, std::numeric_limits<double>::denorm_min());
}

/// One draw of mu*s + sigma * Z * sqrt(W), W ~ gamma(a*s, beta): the margin
/// of the gamma-GH Levy process at time s.
inline double sample_gamma_gh(const GammaGhParams& p, double time_scale, RngStream& rng) {
    detail::require(time_scale > 0 && std::isfinite(time_scale), "time_scale must be > 0");
    return p.mu * time_scale +
           detail::sample_mixture_increment(p.sigma, p.a * time_scale, p.beta, rng);
}

}  // namespace gammagh
