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

#ifndef IRSDET_SCENARIO_IO_HPP
#define IRSDET_SCENARIO_IO_HPP

#include <stdexcept>
#include <string>

#include "irsdet/simulation.hpp"

namespace irsdet {

/// Parse failure with 1-based line/column position inside the document.
struct ScenarioParseError : std::runtime_error {
    int line = 0;
    int column = 0;
    ScenarioParseError(const std::string& what, int line_, int column_)
        : std::runtime_error(what), line(line_), column(column_) {}
};

/// Parses a scenario document (JSON; angles in degrees, powers in dBm,
/// distances in meters). Unknown keys are rejected. Noise power may be given
/// directly or composed from PSD, bandwidth and noise figure; when both are
/// present they must agree within 0.05 dB.
ScenarioConfig parse_scenario(const std::string& text);

/// Reads and parses a scenario file.
ScenarioConfig load_scenario(const std::string& path);

/// Re-emits a scenario in the boundary units. parse(emit(parse(x))) equals
/// parse(x) within the 1e-12 conversion guarantee.
std::string emit_scenario(const ScenarioConfig& scenario);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double degrees_to_radians(double degrees);
double radians_to_degrees(double radians);

} // namespace irsdet

#endif
