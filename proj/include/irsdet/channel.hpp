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

#ifndef IRSDET_CHANNEL_HPP
#define IRSDET_CHANNEL_HPP

#include <complex>
#include <utility>
#include <vector>

#include "irsdet/geometry.hpp"
#include "irsdet/irs_model.hpp"
#include "irsdet/rng.hpp"

namespace irsdet {

/// Radio-link parameters shared by channel synthesis and detection.
/// Only the BS antenna count enters the statistics; the BS steering vector
/// drops out after matched filtering.
struct RadioConfig {
    double wavelength = 0.0;    // [m]
    double bs_distance = 0.0;   // surface-to-BS distance [m]
    Direction bs_direction;     // reflection direction towards the BS
    int bs_antennas = 0;        // M
    double tx_power = 0.0;      // per-symbol transmit power [W]
    double noise_power = 0.0;   // receiver noise power [W]
    int sync_length = 0;        // synchronization-signal symbols S, > 1

    void validate() const;
};

/// Multipath model of the device-to-surface link: one deterministic LoS path
/// plus path_count-1 Rayleigh-faded scattered paths whose total average power
/// is power_ratio times the LoS power.
struct ScatterModel {
    int path_count = 1;            // L >= 1
    double power_ratio = 0.0;      // rho >= 0; must be 0 when L == 1
    double direction_stddev = 0.1; // radians, per angle component

    void validate() const;
};

/// One sampled device-to-surface channel: LoS coefficient/direction plus
/// path_count-1 scattered coefficients/directions.
struct ChannelRealization {
    std::complex<double> los_coefficient;
    Direction los_direction;
    std::vector<std::complex<double>> nlos_coefficients;
    std::vector<Direction> nlos_directions;
};

/// Free-space surface-to-BS coefficient (lambda/(4 pi d_r)) e^{j 2 pi d_r/lambda}.
std::complex<double> irs_bs_channel(const RadioConfig& radio);

/// LoS device-to-surface coefficient and direction for a device at q.
std::pair<std::complex<double>, Direction> device_irs_los(const CartesianPoint& q,
                                                          double wavelength);

/// Draws the scattered paths around a LoS anchor. Per-path variance is
/// power_ratio/(L-1) times the LoS power; scattered directions are normal
/// around the LoS direction (theta clamped to [0, pi], phi wrapped).
ChannelRealization sample_scattered_paths(const std::pair<std::complex<double>, Direction>& los,
                                          const ScatterModel& model, RandomStream& stream);

/// End-to-end coefficient h_r * sum_l g(dir_l, dir_bs) h_l for the given
/// phase-shift vector.
std::complex<double> end_to_end_channel(const ChannelRealization& realization,
                                        const PhaseShiftVector& w, const RadioConfig& radio,
                                        const IrsGeometry& geom,
                                        const UnitCellFactorModel& ucf_model);

} // namespace irsdet

#endif
