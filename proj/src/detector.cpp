// SPDX-License-Identifier: Apache-2.0
//
// irsdet - IRS-assisted active device detection toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "irsdet/detector.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace irsdet {

namespace {

constexpr double kSeriesTol = 1e-14;
constexpr int kMaxSeriesTerms = 1000000;

// Regularized lower incomplete gamma by power series, for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxSeriesTerms; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma by Lentz continued fraction, x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxSeriesTerms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::invalid_argument("regularized_gamma_p: requires a > 0, x >= 0");
    if (x == 0.0)
        return 0.0;
    return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

DetectorConfig DetectorConfig::for_false_alarm(double false_alarm, double noise_power) {
    DetectorConfig cfg;
    cfg.target_false_alarm = false_alarm;
    cfg.noise_power = noise_power;
    cfg.threshold = threshold_for(false_alarm);
    cfg.validate();
    return cfg;
}

void DetectorConfig::validate() const {
    if (!(target_false_alarm > 0.0 && target_false_alarm < 1.0))
        throw std::invalid_argument("DetectorConfig: false-alarm probability outside (0,1)");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("DetectorConfig: noise power must be positive");
    if (std::abs(threshold - threshold_for(target_false_alarm)) >
        1e-12 * std::max(1.0, threshold))
        throw std::invalid_argument("DetectorConfig: threshold inconsistent with false alarm");
}

double glrt_statistic(const Eigen::Ref<const Eigen::VectorXcd>& y,
                      const Eigen::Ref<const Eigen::VectorXcd>& s, double noise_power) {
    if (y.size() != s.size())
        throw std::invalid_argument("glrt_statistic: observation/reference length mismatch");
    if (s.size() < 2)
        throw std::invalid_argument("glrt_statistic: requires more than one symbol");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("glrt_statistic: noise power must be positive");
    const double s_energy = s.squaredNorm();
    if (s_energy == 0.0)
        throw std::invalid_argument("glrt_statistic: zero reference signal");
    const std::complex<double> corr = s.dot(y); // s^H y
    return 2.0 * std::norm(corr) / (noise_power * s_energy);
}

double threshold_for(double false_alarm) {
    if (!(false_alarm > 0.0 && false_alarm < 1.0))
        throw std::invalid_argument("threshold_for: false-alarm probability outside (0,1)");
    return -2.0 * std::log(false_alarm);
}

double noncentrality(std::complex<double> h, const RadioConfig& radio) {
    radio.validate();
    return 2.0 * radio.sync_length * radio.bs_antennas * std::norm(h) * radio.tx_power /
           radio.noise_power;
}

double noncentral_chi2_cdf_2dof(double gamma, double t) {
    if (gamma < 0.0 || t < 0.0)
        throw std::invalid_argument("noncentral_chi2_cdf_2dof: negative argument");
    if (gamma > 2e15 || t > 2e15)
        throw std::domain_error("noncentral_chi2_cdf_2dof: argument outside supported range");
    if (t == 0.0)
        return 0.0;

    const double x = t / 2.0;
    if (gamma == 0.0)
        return -std::expm1(-x);

    // lower-tail bound 1 - Q1(a, b) <= exp(-(a-b)^2/2) for b < a: once the
    // exponent passes the subnormal range the value is 0 in double
    if (gamma > t) {
        const double deficit = std::sqrt(gamma) - std::sqrt(t);
        if (0.5 * deficit * deficit > 745.0)
            return 0.0;
    }

    // F(t) = sum_k pois(k; gamma/2) * P(k+1, t/2). The expansion starts at the
    // Poisson mode and sweeps both directions so the leading weight never
    // underflows for large gamma. P(k+1, x) decreases in k, and the
    // increments are u_k = e^{-x} x^k / k!:
    //   P(k+1, x) = P(k, x) - u_k
    const double lambda = gamma / 2.0;
    const long k0 = static_cast<long>(lambda);
    const double w0 =
        std::exp(k0 * std::log(lambda) - lambda - std::lgamma(static_cast<double>(k0) + 1.0));
    const double cdf0 = regularized_gamma_p(static_cast<double>(k0) + 1.0, x);
    const double u0 =
        std::exp(-x + k0 * std::log(x) - std::lgamma(static_cast<double>(k0) + 1.0));

    double sum = w0 * cdf0;

    // backward sweep: k0-1 down to 0 (CDF factors grow towards 1, weights
    // shrink; the sweep is short unless everything has underflowed anyway)
    {
        double w = w0;
        double cdf = cdf0;
        double u = u0;
        for (long k = k0; k-- > 0;) {
            w *= (k + 1.0) / lambda;
            cdf += u; // u holds u_{k+1}
            u *= (k + 1.0) / x;
            sum += w * cdf;
            if (w < 1e-305)
                break; // remaining terms are below double resolution
        }
    }

    // forward sweep: past the Poisson mode the weights decay geometrically
    // with ratio lambda/(k+1), so the remaining tail after term k is at most
    // term * lambda / (k+1-lambda)
    {
        double w = w0;
        double cdf = cdf0;
        double u = u0;
        for (long k = k0 + 1; k < k0 + kMaxSeriesTerms; ++k) {
            w *= lambda / k;
            u *= x / k;
            cdf -= u;
            if (cdf < 0.0)
                cdf = 0.0;
            const double term = w * cdf;
            sum += term;
            const double past_mode = k + 1.0 - lambda;
            if (past_mode > 0.0 && term * lambda < kSeriesTol * sum * past_mode)
                break;
            if (w < 1e-305)
                break;
        }
    }

    return std::min(1.0, std::max(0.0, sum));
}

double misdetection_probability(double gamma, double threshold) {
    return noncentral_chi2_cdf_2dof(gamma, threshold);
}

bool decide(const Eigen::Ref<const Eigen::VectorXcd>& y,
            const Eigen::Ref<const Eigen::VectorXcd>& s, const DetectorConfig& config) {
    config.validate();
    return glrt_statistic(y, s, config.noise_power) > config.threshold;
}

} // namespace irsdet
