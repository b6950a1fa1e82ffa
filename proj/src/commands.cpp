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

#include "irsdet/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "irsdet/scenario_io.hpp"

namespace irsdet {

namespace {

DesignSpec spec_from_name(const std::string& name) {
    DesignSpec spec;
    if (name == "optimized") {
        spec.variant = DesignSpec::Variant::Optimized;
    } else if (name == "quadratic") {
        spec.variant = DesignSpec::Variant::Quadratic;
    } else if (name.rfind("linear", 0) == 0) {
        spec.variant = DesignSpec::Variant::Linear;
        spec.tiles = name.size() > 6 ? std::atoi(name.c_str() + 6) : 1;
    } else {
        throw std::invalid_argument("unknown design variant '" + name + "'");
    }
    return spec;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

PhaseShiftVector obtain_design(const ScenarioConfig& scenario, const std::string& design_path,
                               const DesignOverrides& overrides, std::ostream& log) {
    if (!design_path.empty()) {
        std::ifstream in(design_path);
        if (!in)
            throw std::runtime_error("cannot open design file: " + design_path);
        return load_design(in, scenario.geom);
    }
    ScenarioConfig local = scenario;
    local.design = resolve_design_spec(scenario, overrides);
    const DesignResult result = build_design(local, local.design);
    if (result.sdr)
        log << "sdr: tau = " << result.sdr->tau
            << ", iterations = " << result.sdr->diagnostics.iterations << "\n";
    return result.w;
}

} // namespace

DesignSpec resolve_design_spec(const ScenarioConfig& scenario,
                               const DesignOverrides& overrides) {
    DesignSpec spec = scenario.design;
    if (overrides.variant) {
        const DesignSpec named = spec_from_name(*overrides.variant);
        spec.variant = named.variant;
        if (named.variant == DesignSpec::Variant::Linear)
            spec.tiles = named.tiles;
    }
    if (overrides.tiles)
        spec.tiles = *overrides.tiles;
    if (overrides.randomizations)
        spec.randomization_count = *overrides.randomizations;
    if (overrides.seed)
        spec.seed = *overrides.seed;
    spec.validate(scenario.geom);
    return spec;
}

void run_design(const std::string& scenario_path, const DesignOverrides& overrides,
                const std::string& out_path, std::ostream& log) {
    ScenarioConfig scenario = load_scenario(scenario_path);
    scenario.design = resolve_design_spec(scenario, overrides);

    const DesignResult result = build_design(scenario, scenario.design);
    auto out = open_output(out_path);
    save_design(out, result.w, scenario.geom, scenario.design, scenario_hash(scenario));
    log << "design: " << scenario.design.name() << " -> " << out_path << "\n";
    if (result.sdr) {
        const GainMatrixSet gains =
            build_gain_matrices(coverage_grid(scenario.area), scenario.radio, scenario.geom,
                                scenario.ucf_model);
        const auto [gain, argmin] = worst_case_gain(result.w, gains);
        log << "tau (relaxation optimum): " << result.sdr->tau << "\n";
        log << "worst-case gain: " << gain << " at grid index " << argmin << "\n";
        log << "relative duality gap: " << result.sdr->diagnostics.relative_gap << "\n";
    }
}

void run_map(const std::string& scenario_path, const std::string& design_path,
             const std::string& out_path, std::optional<int> grid_ny,
             std::optional<int> grid_nz, const DesignOverrides& overrides, std::ostream& log) {
    const ScenarioConfig scenario = load_scenario(scenario_path);
    const PhaseShiftVector w = obtain_design(scenario, design_path, overrides, log);

    CoverageArea eval_area = scenario.area;
    if (grid_ny)
        eval_area.grid_ny = *grid_ny;
    if (grid_nz)
        eval_area.grid_nz = *grid_nz;
    eval_area.validate();

    MdMap map = analytic_md_map(scenario, w, coverage_grid(eval_area));
    map.grid_ny = eval_area.grid_ny;
    map.grid_nz = eval_area.grid_nz;

    auto out = open_output(out_path);
    write_md_map_csv(out, map, scenario_hash(scenario), scenario.master_seed);
    log << "map: " << map.points.size() << " locations -> " << out_path << "\n";
}

void run_sweep(const std::string& scenario_path, const std::vector<double>& sizes,
               const std::vector<double>& rhos, const std::vector<std::string>& design_names,
               std::int64_t mc_trials, const std::string& out_path,
               const DesignOverrides& overrides, std::ostream& log) {
    const ScenarioConfig scenario = load_scenario(scenario_path);
    if (sizes.empty() == rhos.empty())
        throw std::invalid_argument("sweep: give exactly one of --sizes or --rhos");

    std::vector<SweepRow> rows;
    if (!sizes.empty()) {
        std::vector<DesignSpec> specs;
        if (design_names.empty()) {
            specs.push_back(resolve_design_spec(scenario, overrides));
        } else {
            for (const auto& name : design_names) {
                DesignSpec spec = spec_from_name(name);
                spec.randomization_count = scenario.design.randomization_count;
                spec.seed = scenario.design.seed;
                if (overrides.randomizations)
                    spec.randomization_count = *overrides.randomizations;
                if (overrides.seed)
                    spec.seed = *overrides.seed;
                spec.validate(scenario.geom);
                specs.push_back(spec);
            }
        }
        if (mc_trials > 0) {
            for (double size : sizes) {
                ScenarioConfig resized = scenario;
                resized.area.extent_y = size;
                resized.area.extent_z = size;
                for (const DesignSpec& spec : specs) {
                    ScenarioConfig local = resized;
                    local.design = spec;
                    const DesignResult result = build_design(local, spec);
                    const DetectionStats stats =
                        monte_carlo_md(local, result.w, mc_trials, local.master_seed);
                    rows.push_back(
                        SweepRow{size, spec.name(), stats.misdetection, stats.ci_half_width});
                }
            }
        } else {
            rows = sweep_area_sizes(scenario, sizes, specs);
        }
    } else {
        const PhaseShiftVector w = obtain_design(scenario, "", overrides, log);
        const std::int64_t trials = mc_trials > 0 ? mc_trials : 10000;
        ScenarioConfig local = scenario;
        local.design = resolve_design_spec(scenario, overrides);
        rows = scattering_sweep(local, w, rhos, trials);
    }

    auto out = open_output(out_path);
    write_sweep_csv(out, rows, scenario_hash(scenario), scenario.master_seed);
    log << "sweep: " << rows.size() << " rows -> " << out_path << "\n";
}

void run_montecarlo(const std::string& scenario_path, const std::string& design_path,
                    std::int64_t trials, bool h0, const std::string& out_path,
                    const DesignOverrides& overrides, std::ostream& log) {
    ScenarioConfig scenario = load_scenario(scenario_path);
    scenario.design = resolve_design_spec(scenario, overrides);

    DetectionStats stats;
    std::string label;
    if (h0) {
        stats = monte_carlo_false_alarm(scenario, trials, scenario.master_seed);
        label = "h0";
        log << "false alarm: " << stats.false_alarm << " +- " << stats.ci_half_width << " ("
            << trials << " trials)\n";
    } else {
        const PhaseShiftVector w = obtain_design(scenario, design_path, overrides, log);
        stats = monte_carlo_md(scenario, w, trials, scenario.master_seed);
        label = scenario.design.name();
        log << "worst-case misdetection: " << stats.misdetection << " +- "
            << stats.ci_half_width << " (" << trials << " trials)\n";
    }

    if (!out_path.empty()) {
        std::vector<SweepRow> rows{SweepRow{
            scenario.scatter.power_ratio, label,
            h0 ? stats.false_alarm : stats.misdetection, stats.ci_half_width}};
        auto out = open_output(out_path);
        write_sweep_csv(out, rows, scenario_hash(scenario), scenario.master_seed);
    }
}

void run_validate(const std::string& scenario_path, std::ostream& log) {
    const ScenarioConfig scenario = load_scenario(scenario_path);
    log << canonical_scenario_string(scenario);
    log << "hash=" << scenario_hash(scenario) << "\n";
    log << "scenario OK\n";
}

} // namespace irsdet
