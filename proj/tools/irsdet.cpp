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

#include <CLI11.hpp>
#include <iostream>

#include "irsdet/commands.hpp"
#include "irsdet/designs.hpp"
#include "irsdet/scenario_io.hpp"

namespace {

// exit codes: 0 ok, 1 usage, 2 parse/config, 3 solver, 4 runtime/io
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitRuntime = 4;

struct CommonFlags {
    std::string scenario;
    std::string out;
    std::string variant;
    int tiles = 0;
    int randomizations = 0;
    std::uint64_t seed = 0;
    bool has_variant = false, has_tiles = false, has_g = false, has_seed = false;
};

void add_design_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--variant", flags.variant,
                    "design variant: optimized | linear | quadratic")
        ->check(CLI::IsMember({"optimized", "linear", "quadratic"}));
    cmd->add_option("--tiles", flags.tiles, "tile count for the linear design");
    cmd->add_option("--G", flags.randomizations, "randomization draw count");
    cmd->add_option("--seed", flags.seed, "randomization seed");
}

irsdet::DesignOverrides make_overrides(const CLI::App* cmd, const CommonFlags& flags) {
    irsdet::DesignOverrides o;
    if (cmd->count("--variant"))
        o.variant = flags.variant;
    if (cmd->count("--tiles"))
        o.tiles = flags.tiles;
    if (cmd->count("--G"))
        o.randomizations = flags.randomizations;
    if (cmd->count("--seed"))
        o.seed = flags.seed;
    return o;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRS-assisted active device detection toolkit"};
    app.require_subcommand(1);

    CommonFlags design_flags, map_flags, sweep_flags, mc_flags;
    std::string validate_scenario;
    std::string map_design_path, mc_design_path;
    std::vector<int> map_grid;
    std::vector<double> sweep_sizes, sweep_rhos;
    std::vector<std::string> sweep_designs;
    std::int64_t sweep_trials = 0, mc_trials = 10000;
    bool mc_h0 = false;

    auto* design = app.add_subcommand("design", "compute a phase-shift design file");
    design->add_option("--scenario", design_flags.scenario, "scenario file")->required();
    design->add_option("--out", design_flags.out, "output design file")->required();
    add_design_flags(design, design_flags);

    auto* map = app.add_subcommand("map", "analytic misdetection map as CSV");
    map->add_option("--scenario", map_flags.scenario, "scenario file")->required();
    map->add_option("--design", map_design_path, "design file (default: build from scenario)");
    map->add_option("--out", map_flags.out, "output CSV")->required();
    map->add_option("--grid", map_grid, "evaluation grid NY NZ")->expected(2);
    add_design_flags(map, map_flags);

    auto* sweep = app.add_subcommand("sweep", "area-size or scattering sweep as CSV");
    sweep->add_option("--scenario", sweep_flags.scenario, "scenario file")->required();
    sweep->add_option("--sizes", sweep_sizes, "area side lengths [m]")->delimiter(',');
    sweep->add_option("--rhos", sweep_rhos, "scattered power ratios")->delimiter(',');
    sweep->add_option("--designs", sweep_designs,
                      "designs, e.g. linear1,linear4,quadratic,optimized")
        ->delimiter(',');
    sweep->add_option("--montecarlo", sweep_trials, "trial count; switches to empirical mode");
    sweep->add_option("--out", sweep_flags.out, "output CSV")->required();
    add_design_flags(sweep, sweep_flags);

    auto* mc = app.add_subcommand("montecarlo", "empirical detection statistics");
    mc->add_option("--scenario", mc_flags.scenario, "scenario file")->required();
    mc->add_option("--design", mc_design_path, "design file (default: build from scenario)");
    mc->add_option("--trials", mc_trials, "trial count");
    mc->add_flag("--h0", mc_h0, "noise-only run: report the empirical false alarm");
    mc->add_option("--out", mc_flags.out, "optional CSV output");
    add_design_flags(mc, mc_flags);

    auto* validate = app.add_subcommand("validate", "parse a scenario and print its summary");
    validate->add_option("--scenario", validate_scenario, "scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) {
            irsdet::run_design(design_flags.scenario, make_overrides(design, design_flags),
                               design_flags.out, std::cout);
        } else if (map->parsed()) {
            irsdet::run_map(map_flags.scenario, map_design_path, map_flags.out,
                            map_grid.size() == 2 ? std::optional<int>(map_grid[0]) : std::nullopt,
                            map_grid.size() == 2 ? std::optional<int>(map_grid[1]) : std::nullopt,
                            make_overrides(map, map_flags), std::cout);
        } else if (sweep->parsed()) {
            irsdet::run_sweep(sweep_flags.scenario, sweep_sizes, sweep_rhos, sweep_designs,
                              sweep_trials, sweep_flags.out, make_overrides(sweep, sweep_flags),
                              std::cout);
        } else if (mc->parsed()) {
            irsdet::run_montecarlo(mc_flags.scenario, mc_design_path, mc_trials, mc_h0,
                                   mc_flags.out, make_overrides(mc, mc_flags), std::cout);
        } else if (validate->parsed()) {
            irsdet::run_validate(validate_scenario, std::cout);
        }
    } catch (const irsdet::ScenarioParseError& e) {
        std::cerr << "parse error";
        if (e.line > 0)
            std::cerr << " at line " << e.line << ", column " << e.column;
        std::cerr << ": " << e.what() << "\n";
        return kExitParse;
    } catch (const irsdet::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        std::cerr << "  iterations: " << e.diagnostics.iterations
                  << ", primal residual: " << e.diagnostics.primal_residual
                  << ", dual residual: " << e.diagnostics.dual_residual
                  << ", relative gap: " << e.diagnostics.relative_gap << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::out_of_range& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
