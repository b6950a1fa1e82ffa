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

#include "irsdet/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace irsdet {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_phi(double phi) {
    phi = std::remainder(phi, 2.0 * kPi); // [-pi, pi]
    if (phi <= -kPi)
        phi = kPi;
    return phi;
}

} // namespace

void RadioConfig::validate() const {
    bs_direction.validate();
    if (!(wavelength > 0.0) || !(bs_distance > 0.0))
        throw std::invalid_argument("RadioConfig: wavelength and BS distance must be positive");
    if (bs_antennas < 1)
        throw std::invalid_argument("RadioConfig: antenna count must be positive");
    if (!(tx_power > 0.0) || !(noise_power > 0.0))
        throw std::invalid_argument("RadioConfig: powers must be positive");
    if (sync_length <= 1)
        throw std::invalid_argument("RadioConfig: sync length must exceed 1");
}

void ScatterModel::validate() const {
    if (path_count < 1)
        throw std::invalid_argument("ScatterModel: path count must be >= 1");
    if (power_ratio < 0.0)
        throw std::invalid_argument("ScatterModel: power ratio must be nonnegative");
    if (path_count == 1 && power_ratio != 0.0)
        throw std::invalid_argument("ScatterModel: single-path model requires zero power ratio");
    if (!(direction_stddev >= 0.0))
        throw std::invalid_argument("ScatterModel: direction stddev must be nonnegative");
}

std::complex<double> irs_bs_channel(const RadioConfig& radio) {
    radio.validate();
    const double magnitude = radio.wavelength / (4.0 * kPi * radio.bs_distance);
    const double phase = 2.0 * kPi * radio.bs_distance / radio.wavelength;
    return std::polar(magnitude, phase);
}

std::pair<std::complex<double>, Direction> device_irs_los(const CartesianPoint& q,
                                                          double wavelength) {
    if (!(wavelength > 0.0))
        throw std::invalid_argument("device_irs_los: wavelength must be positive");
    const auto [dir, distance] = direction_and_distance(q);
    const double magnitude = wavelength / (4.0 * kPi * distance);
    const double phase = 2.0 * kPi * distance / wavelength;
    return {std::polar(magnitude, phase), dir};
}

ChannelRealization sample_scattered_paths(const std::pair<std::complex<double>, Direction>& los,
                                          const ScatterModel& model, RandomStream& stream) {
    model.validate();
    ChannelRealization r;
    r.los_coefficient = los.first;
    r.los_direction = los.second;
    const int n_scattered = model.path_count - 1;
    if (n_scattered == 0)
        return r;

    const double los_power = std::norm(los.first);
    const double path_variance = model.power_ratio / n_scattered * los_power;
    r.nlos_coefficients.reserve(n_scattered);
    r.nlos_directions.reserve(n_scattered);
    for (int l = 0; l < n_scattered; ++l) {
        r.nlos_coefficients.push_back(stream.complex_normal(1.0) *
                                      std::sqrt(path_variance));
        Direction d;
        d.theta = los.second.theta + model.direction_stddev * stream.normal();
        d.theta = std::max(0.0, std::min(kPi, d.theta));
        d.phi = wrap_phi(los.second.phi + model.direction_stddev * stream.normal());
        r.nlos_directions.push_back(d);
    }
    return r;
}

std::complex<double> end_to_end_channel(const ChannelRealization& realization,
                                        const PhaseShiftVector& w, const RadioConfig& radio,
                                        const IrsGeometry& geom,
                                        const UnitCellFactorModel& ucf_model) {
    if (w.size() != geom.cell_count())
        throw std::invalid_argument("end_to_end_channel: phase-shift vector length mismatch");
    if (realization.nlos_coefficients.size() != realization.nlos_directions.size())
        throw std::invalid_argument("end_to_end_channel: inconsistent scattered-path lists");

    std::complex<double> sum =
        irs_response(realization.los_direction, radio.bs_direction, w, geom, ucf_model) *
        realization.los_coefficient;
    for (std::size_t l = 0; l < realization.nlos_coefficients.size(); ++l) {
        sum += irs_response(realization.nlos_directions[l], radio.bs_direction, w, geom,
                            ucf_model) *
               realization.nlos_coefficients[l];
    }
    return irs_bs_channel(radio) * sum;
}

} // namespace irsdet
