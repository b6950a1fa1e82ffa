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

#ifndef IRSDET_DETECTOR_HPP
#define IRSDET_DETECTOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "irsdet/channel.hpp"

namespace irsdet {

/// Detector operating point: target false-alarm probability and the derived
/// threshold t = -2 ln(Gamma_FA).
struct DetectorConfig {
    double target_false_alarm = 0.0;
    double noise_power = 0.0;
    double threshold = 0.0;

    static DetectorConfig for_false_alarm(double false_alarm, double noise_power);
    void validate() const;
};

/// Analytical or empirical detection result.
struct DetectionStats {
    enum class Kind { Analytical, Empirical };

    double false_alarm = 0.0;
    double misdetection = 0.0;
    double noncentrality = 0.0;
    Kind kind = Kind::Analytical;
    std::int64_t trials = 0;         // empirical only
    double ci_half_width = 0.0;      // 95% binomial, empirical only
};

/// Post-matched-filter test statistic T = 2 |s^H y|^2 / (sigma_n^2 ||s||^2).
/// The unknown channel phase cancels in the magnitude.
double glrt_statistic(const Eigen::Ref<const Eigen::VectorXcd>& y,
                      const Eigen::Ref<const Eigen::VectorXcd>& s, double noise_power);

/// Threshold achieving the requested false-alarm probability under the
/// central chi-squared(2) null: t = -2 ln(Gamma_FA).
double threshold_for(double false_alarm);

/// Noncentrality gamma = 2 S M |h|^2 P_x / sigma_n^2.
double noncentrality(std::complex<double> h, const RadioConfig& radio);

/// CDF of the noncentral chi-squared distribution with 2 degrees of freedom,
/// i.e. 1 - Q1(sqrt(gamma), sqrt(t)) with Q1 the first-order Marcum
/// Q-function. Evaluated by the ascending Poisson-mixture series, expanded
/// outward from the dominant term, with tail truncation at 1e-14 relative.
double noncentral_chi2_cdf_2dof(double gamma, double t);

/// Misdetection probability F_{chi2_2(gamma)}(t).
double misdetection_probability(double gamma, double threshold);

/// Regularized lower incomplete gamma P(a, x). Exposed for reuse by the
/// series above and by tests.
double regularized_gamma_p(double a, double x);

/// Declares the device active iff the test statistic strictly exceeds the
/// threshold.
bool decide(const Eigen::Ref<const Eigen::VectorXcd>& y,
            const Eigen::Ref<const Eigen::VectorXcd>& s, const DetectorConfig& config);

} // namespace irsdet

#endif
