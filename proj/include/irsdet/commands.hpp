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

#ifndef IRSDET_COMMANDS_HPP
#define IRSDET_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "irsdet/simulation.hpp"

namespace irsdet {

/// Flag overrides applied on top of the scenario's design section.
struct DesignOverrides {
    std::optional<std::string> variant;
    std::optional<int> tiles;
    std::optional<int> randomizations;
    std::optional<std::uint64_t> seed;
};

DesignSpec resolve_design_spec(const ScenarioConfig& scenario, const DesignOverrides& overrides);

/// `design`: builds a phase-shift design and writes the design file.
/// For the optimized variant the relaxation bound and the achieved worst-case
/// gain are reported on `log`.
void run_design(const std::string& scenario_path, const DesignOverrides& overrides,
                const std::string& out_path, std::ostream& log);

/// `map`: analytic misdetection map as CSV. design_path empty means build
/// the design from the scenario; grid_ny/grid_nz override the evaluation
/// grid resolution.
void run_map(const std::string& scenario_path, const std::string& design_path,
             const std::string& out_path, std::optional<int> grid_ny,
             std::optional<int> grid_nz, const DesignOverrides& overrides, std::ostream& log);

/// `sweep`: area-size rows (analytic, or empirical when mc_trials > 0) or
/// scattering rows (always empirical). Exactly one of sizes/rhos must be
/// nonempty.
void run_sweep(const std::string& scenario_path, const std::vector<double>& sizes,
               const std::vector<double>& rhos, const std::vector<std::string>& design_names,
               std::int64_t mc_trials, const std::string& out_path,
               const DesignOverrides& overrides, std::ostream& log);

/// `montecarlo`: empirical misdetection (or false alarm with h0 = true) for
/// one design; optional single-row CSV.
void run_montecarlo(const std::string& scenario_path, const std::string& design_path,
                    std::int64_t trials, bool h0, const std::string& out_path,
                    const DesignOverrides& overrides, std::ostream& log);

/// `validate`: parse, run invariant checks and print the canonical summary.
void run_validate(const std::string& scenario_path, std::ostream& log);

} // namespace irsdet

#endif
