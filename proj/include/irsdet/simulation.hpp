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

#ifndef IRSDET_SIMULATION_HPP
#define IRSDET_SIMULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irsdet/channel.hpp"
#include "irsdet/designs.hpp"
#include "irsdet/detector.hpp"
#include "irsdet/geometry.hpp"
#include "irsdet/irs_model.hpp"

namespace irsdet {

/// Full experiment description. Angles are radians and powers watts here;
/// unit conversion happens at the scenario-file boundary only.
struct ScenarioConfig {
    IrsGeometry geom;
    CoverageArea area;
    RadioConfig radio;
    DetectorConfig detector;
    DesignSpec design;
    ScatterModel scatter;
    UnitCellFactorModel ucf_model;
    std::uint64_t master_seed = 1;
    int optimized_repetitions = 80; // averaged-reporting protocol

    void validate() const;
};

/// Per-location misdetection probabilities on an evaluation grid.
struct MdMap {
    int grid_ny = 0;
    int grid_nz = 0;
    std::vector<CartesianPoint> points;
    std::vector<double> gamma;
    std::vector<double> md;
    std::string design_name;
};

struct SweepRow {
    double parameter = 0.0; // area side length or scattered-power ratio
    std::string design;
    double md = 0.0;
    double ci_half_width = 0.0;
};

/// Design plus, for the optimized variant, the relaxation solution behind it.
struct DesignResult {
    PhaseShiftVector w;
    std::optional<SdrSolution> sdr;
};

/// Builds the requested design for a scenario. The optimized variant solves
/// the relaxation on the scenario grid (or reuses `gains` when provided) and
/// rounds by Gaussian randomization.
DesignResult build_design(const ScenarioConfig& scenario, const DesignSpec& spec,
                          const GainMatrixSet* gains = nullptr);

/// LoS-analytic misdetection map over an evaluation grid.
MdMap analytic_md_map(const ScenarioConfig& scenario, const PhaseShiftVector& w,
                      const std::vector<CartesianPoint>& eval_grid);

/// Largest analytic misdetection probability over the scenario grid and
/// where it occurs.
std::pair<double, CartesianPoint> worst_case_md(const ScenarioConfig& scenario,
                                                const PhaseShiftVector& w);

/// Rebuilds grid and designs for each square area side length and reports
/// the worst-case misdetection per design. The optimized design reports the
/// mean over `scenario.optimized_repetitions` randomized vectors.
std::vector<SweepRow> sweep_area_sizes(const ScenarioConfig& scenario_template,
                                       const std::vector<double>& sizes,
                                       const std::vector<DesignSpec>& designs);

/// Empirical misdetection: per trial, sample the scattered channel, build the
/// received block under the active hypothesis and run the detector. Reports
/// the worst per-location rate over the scenario grid with a 95% binomial
/// confidence half-width. Deterministic in (seed, location, trial).
DetectionStats monte_carlo_md(const ScenarioConfig& scenario, const PhaseShiftVector& w,
                              std::int64_t trials, std::uint64_t seed);

/// Empirical false alarm under noise-only input, evaluated at the area
/// center.
DetectionStats monte_carlo_false_alarm(const ScenarioConfig& scenario, std::int64_t trials,
                                       std::uint64_t seed);

/// Monte-Carlo worst-case misdetection versus scattered-power ratio. The
/// rho = 0 row coincides with the LoS channel result.
std::vector<SweepRow> scattering_sweep(const ScenarioConfig& scenario, const PhaseShiftVector& w,
                                       const std::vector<double>& rho_values,
                                       std::int64_t trials);

/// Canonical full-precision rendering of a scenario (internal units) and the
/// FNV-1a hash over it, stamped into every output file.
std::string canonical_scenario_string(const ScenarioConfig& scenario);
std::string scenario_hash(const ScenarioConfig& scenario);

/// CSV emitters. Maps: "y,z,gamma,md" rows; sweeps: "size_or_rho,design,md,ci".
void write_md_map_csv(std::ostream& out, const MdMap& map, const std::string& hash,
                      std::uint64_t seed);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::string& hash, std::uint64_t seed);

} // namespace irsdet

#endif
