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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "irsdet/detector.hpp"
#include "irsdet/rng.hpp"
#include "oracles.hpp"

using namespace irsdet;

namespace {
constexpr double kPi = 3.14159265358979323846;

RadioConfig table1_radio() {
    RadioConfig radio;
    radio.wavelength = 0.1;
    radio.bs_distance = 30.0;
    radio.bs_direction = Direction{0.0, kPi / 2};
    radio.bs_antennas = 16;
    radio.tx_power = 0.63095734448019325;       // 28 dBm
    radio.noise_power = 3.1622776601683792e-13; // -95 dBm
    radio.sync_length = 32;
    return radio;
}
} // namespace

TEST_CASE("glrt_statistic closed-form cases") {
    Eigen::VectorXcd s(2), y(2);

    SUBCASE("phase of the channel cancels") {
        RandomStream stream(21);
        Eigen::VectorXcd sig(8);
        for (int i = 0; i < 8; ++i)
            sig(i) = stream.complex_normal(1.0);
        const double energy = sig.squaredNorm();
        for (double phase : {0.0, 0.7, -2.1, kPi}) {
            const Eigen::VectorXcd obs = sig * std::polar(1.0, phase);
            CHECK(glrt_statistic(obs, sig, 1.0) ==
                  doctest::Approx(2.0 * energy).epsilon(1e-12));
        }
    }
    SUBCASE("null observation scores zero") {
        s << 1.0, 1.0;
        y << 0.0, 0.0;
        CHECK(glrt_statistic(y, s, 1.0) == 0.0);
    }
    SUBCASE("hand-computed value") {
        s << 1.0, 1.0;
        y << 2.0, 0.0;
        CHECK(glrt_statistic(y, s, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
    }
    SUBCASE("scaling the reference cancels") {
        RandomStream stream(22);
        Eigen::VectorXcd sig(8), obs(8);
        for (int i = 0; i < 8; ++i) {
            sig(i) = stream.complex_normal(1.0);
            obs(i) = stream.complex_normal(1.0);
        }
        const double t0 = glrt_statistic(obs, sig, 0.5);
        CHECK(glrt_statistic(obs, (3.7 * sig).eval(), 0.5) ==
              doctest::Approx(t0).epsilon(1e-12));
    }
    SUBCASE("rejects degenerate input") {
        Eigen::VectorXcd zero2 = Eigen::VectorXcd::Zero(2);
        Eigen::VectorXcd one1 = Eigen::VectorXcd::Ones(1);
        y << 1.0, 1.0;
        CHECK_THROWS_AS(glrt_statistic(y, zero2, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(glrt_statistic(one1, one1, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(glrt_statistic(y, zero2 + Eigen::VectorXcd::Ones(2), 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("threshold_for inverts the null CDF") {
    CHECK(threshold_for(0.1) == doctest::Approx(4.605170185988091).epsilon(1e-14));
    CHECK(threshold_for(0.01) == doctest::Approx(9.210340371976182).epsilon(1e-14));
    CHECK(threshold_for(1.0 - 1e-9) == doctest::Approx(2e-9).epsilon(1e-5));
    CHECK_THROWS_AS(threshold_for(0.0), std::invalid_argument);
    CHECK_THROWS_AS(threshold_for(1.0), std::invalid_argument);
    // F_{chi2_2(0)}(t) = 1 - Gamma_FA closes the loop
    CHECK(noncentral_chi2_cdf_2dof(0.0, threshold_for(0.1)) ==
          doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("noncentrality parameter") {
    const RadioConfig radio = table1_radio();
    CHECK(noncentrality({0.0, 0.0}, radio) == 0.0);

    const std::complex<double> h(3e-7, -4e-7);
    CHECK(noncentrality(2.0 * h, radio) ==
          doctest::Approx(4.0 * noncentrality(h, radio)).epsilon(1e-12));

    // 2 * 32 * 16 * 1e-14 * 10^12.3
    const double gamma = noncentrality(std::complex<double>(1e-7, 0.0), radio);
    const double expected =
        2.0 * 32.0 * 16.0 * 1e-14 * std::pow(10.0, (28.0 + 95.0) / 10.0);
    CHECK(expected == doctest::Approx(20.431486105281726).epsilon(1e-12));
    CHECK(gamma == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("misdetection_probability limits") {
    const double t = threshold_for(0.1);
    CHECK(misdetection_probability(0.0, t) == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(misdetection_probability(1e6, t) == 0.0);
    CHECK(misdetection_probability(5.0, 0.0) == 0.0);
    CHECK_THROWS_AS(misdetection_probability(-1.0, t), std::invalid_argument);
}

TEST_CASE("misdetection_probability against the quadrature oracle") {
    SUBCASE("spot value gamma = 10") {
        const double t = 4.605170185988091;
        const double reference = oracles::noncentral_chi2_cdf_2dof_quadrature(10.0, t);
        CHECK(misdetection_probability(10.0, t) ==
              doctest::Approx(reference).epsilon(1e-10));
    }
    SUBCASE("grid over the working domain") {
        // acceptance runs the full 50x50 grid; a thinner grid here
        for (int i = 0; i < 17; ++i) {
            for (int j = 0; j < 17; ++j) {
                const double gamma = 200.0 * i / 16.0;
                const double t = 50.0 * j / 16.0;
                const double reference =
                    oracles::noncentral_chi2_cdf_2dof_quadrature(gamma, t);
                CHECK(std::abs(misdetection_probability(gamma, t) - reference) <= 1e-8);
            }
        }
    }
    SUBCASE("monotone in gamma and threshold") {
        double prev = 1.0;
        for (double gamma : {0.0, 1.0, 5.0, 20.0, 100.0, 400.0}) {
            const double md = misdetection_probability(gamma, 4.605170185988091);
            CHECK(md <= prev + 1e-15);
            prev = md;
        }
        prev = 0.0;
        for (double t : {0.0, 1.0, 4.0, 10.0, 30.0}) {
            const double md = misdetection_probability(8.0, t);
            CHECK(md >= prev - 1e-15);
            prev = md;
        }
    }
    SUBCASE("large noncentrality stays accurate") {
        // quadrature still works at gamma = 2000 (z <= ~316)
        const double reference = oracles::noncentral_chi2_cdf_2dof_quadrature(2000.0, 50.0);
        const double series = misdetection_probability(2000.0, 50.0);
        CHECK(std::abs(series - reference) <= 1e-10);
    }
}

TEST_CASE("regularized_gamma_p sanity") {
    CHECK(regularized_gamma_p(1.0, 0.0) == 0.0);
    CHECK(regularized_gamma_p(1.0, 2.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
    // P(2, x) = 1 - e^-x (1 + x)
    CHECK(regularized_gamma_p(2.0, 3.0) ==
          doctest::Approx(1.0 - std::exp(-3.0) * 4.0).epsilon(1e-13));
    CHECK(regularized_gamma_p(50.0, 200.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("null statistic follows the exponential law (KS at 0.01)") {
    const int n = 100000;
    const int symbols = 32;
    RandomStream stream(4242);
    Eigen::VectorXcd reference(symbols);
    for (int i = 0; i < symbols; ++i)
        reference(i) = std::polar(1.0, (stream.uniform() - 0.5) * 2.0 * kPi);

    std::vector<double> samples(n);
    Eigen::VectorXcd y(symbols);
    for (int trial = 0; trial < n; ++trial) {
        for (int i = 0; i < symbols; ++i)
            y(i) = stream.complex_normal(2.0);
        samples[static_cast<std::size_t>(trial)] = glrt_statistic(y, reference, 2.0);
    }
    std::sort(samples.begin(), samples.end());
    double d_stat = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = -std::expm1(-samples[static_cast<std::size_t>(i)] / 2.0);
        const double hi = static_cast<double>(i + 1) / n;
        const double lo = static_cast<double>(i) / n;
        d_stat = std::max({d_stat, std::abs(cdf - hi), std::abs(cdf - lo)});
    }
    const double critical = 1.628 / std::sqrt(static_cast<double>(n));
    CHECK(d_stat < critical);
}

TEST_CASE("rejection rate under activity matches the analytic law") {
    const double t = threshold_for(0.1);
    const int n = 100000;
    RandomStream stream(777);
    for (double gamma : {0.0, 1.0, 5.0, 20.0, 100.0}) {
        // T ~ chi2_2(gamma): sum of squares of N(sqrt(gamma), 1) and N(0, 1)
        int rejections = 0;
        const double mean = std::sqrt(gamma);
        for (int i = 0; i < n; ++i) {
            const double z1 = stream.normal() + mean;
            const double z2 = stream.normal();
            if (z1 * z1 + z2 * z2 > t)
                ++rejections;
        }
        const double expected = 1.0 - misdetection_probability(gamma, t);
        const double rate = static_cast<double>(rejections) / n;
        const double se =
            std::sqrt(std::max(expected * (1.0 - expected), 1e-12) / n);
        CHECK(std::abs(rate - expected) <= 3.0 * se + 1e-9);
    }
}

TEST_CASE("decide applies a strict threshold") {
    DetectorConfig cfg = DetectorConfig::for_false_alarm(0.1, 1.0);
    Eigen::VectorXcd s(2), y(2);
    s << 1.0, 3.0; // ||s||^2 = 10

    y << 0.0, 0.0;
    CHECK_FALSE(decide(y, s, cfg));

    y = s; // T = 2 * 10 = 20 > 4.605
    CHECK(decide(y, s, cfg));

    // exact tie: T = 4 with threshold 4 resolves to inactive
    DetectorConfig tie;
    tie.target_false_alarm = std::exp(-2.0);
    tie.noise_power = 1.0;
    tie.threshold = 4.0;
    tie.validate();
    Eigen::VectorXcd ones2 = Eigen::VectorXcd::Ones(2);
    CHECK(glrt_statistic(ones2, ones2, 1.0) == 4.0);
    CHECK_FALSE(decide(ones2, ones2, tie));
}

TEST_CASE("DetectorConfig invariants") {
    CHECK_THROWS_AS(DetectorConfig::for_false_alarm(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DetectorConfig::for_false_alarm(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DetectorConfig::for_false_alarm(0.1, 0.0), std::invalid_argument);
    DetectorConfig broken;
    broken.target_false_alarm = 0.1;
    broken.noise_power = 1.0;
    broken.threshold = 1.0; // inconsistent with -2 ln 0.1
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}
