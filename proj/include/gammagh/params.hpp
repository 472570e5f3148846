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

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace gammagh {

/// Parameter value outside the admissible domain of a law or operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The integral defining a normalizing constant does not converge.
class DivergentIntegral : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Partitions with different horizons cannot be superposed.
class MismatchedHorizon : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) [[unlikely]] throw DomainError(what);
}

inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

}  // namespace detail

/// Parameters (a, beta, mu, sigma) of the gamma-GH law mu + sigma*Z*sqrt(W),
/// W ~ gamma(a, beta) with rate beta. As a process, a is a rate per unit time.
struct GammaGhParams {
    double a = 1.0;
    double beta = 1.0;
    double mu = 0.0;
    double sigma = 1.0;

    GammaGhParams() = default;
    GammaGhParams(double a_, double beta_, double mu_, double sigma_)
        : a(a_), beta(beta_), mu(mu_), sigma(sigma_) {
        validate();
    }

    void validate() const {
        detail::require_finite(a, "a");
        detail::require_finite(beta, "beta");
        detail::require_finite(mu, "mu");
        detail::require_finite(sigma, "sigma");
        detail::require(a > 0, "a must be > 0");
        detail::require(beta > 0, "beta must be > 0");
        detail::require(sigma > 0, "sigma must be > 0");
    }
};

/// Parameters of the GIG(a, b, c) law with density proportional to
/// x^(a-1) exp(-(b x + c / x) / 2).
struct GigParams {
    double a = 1.0;
    double b = 1.0;
    double c = 0.0;

    GigParams() = default;
    GigParams(double a_, double b_, double c_) : a(a_), b(b_), c(c_) { validate(); }

    // a = 0 needs b, c > 0; a > 0 needs b > 0, c >= 0; a < 0 needs b >= 0, c > 0.
    void validate() const {
        detail::require_finite(a, "a");
        detail::require_finite(b, "b");
        detail::require_finite(c, "c");
        if (a == 0) {
            detail::require(b > 0 && c > 0, "GIG with a = 0 requires b > 0 and c > 0");
        } else if (a > 0) {
            detail::require(b > 0 && c >= 0, "GIG with a > 0 requires b > 0 and c >= 0");
        } else {
            detail::require(b >= 0 && c > 0, "GIG with a < 0 requires b >= 0 and c > 0");
        }
    }
};

/// Inverse gamma Ig(a, beta).
struct IgParams {
    double a = 1.0;
    double beta = 1.0;

    IgParams() = default;
    IgParams(double a_, double beta_) : a(a_), beta(beta_) { validate(); }

    void validate() const {
        detail::require_finite(a, "a");
        detail::require_finite(beta, "beta");
        detail::require(a > 0, "a must be > 0");
        detail::require(beta > 0, "beta must be > 0");
    }
};

struct ComplexValue {
    double re = 0.0;
    double im = 0.0;

    friend ComplexValue operator*(const ComplexValue& x, const ComplexValue& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend ComplexValue operator-(const ComplexValue& x, const ComplexValue& y) {
        return {x.re - y.re, x.im - y.im};
    }
    friend bool operator==(const ComplexValue&, const ComplexValue&) = default;

    ComplexValue conj() const { return {re, -im}; }
    double abs() const { return std::hypot(re, im); }
    std::complex<double> to_std() const { return {re, im}; }
};

}  // namespace gammagh
