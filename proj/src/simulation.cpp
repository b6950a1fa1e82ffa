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

#include "irsdet/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <stdexcept>

#include "irsdet/parallel.hpp"

namespace irsdet {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

constexpr std::uint64_t kSyncSalt = 0x53594e43ull;   // sync-sequence stream
constexpr std::uint64_t kTrialSalt = 0x5452494cull;  // per-trial streams
constexpr std::uint64_t kH0Salt = 0x48594130ull;     // noise-only streams

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Seeded unit-modulus synchronization sequence scaled to sqrt(P_x) per
/// symbol. The test statistic depends on it only through its energy.
Eigen::VectorXcd sync_sequence(const ScenarioConfig& scenario, std::uint64_t seed) {
    RandomStream stream(derive_seed(seed, kSyncSalt));
    const double amplitude = std::sqrt(scenario.radio.tx_power);
    Eigen::VectorXcd x(scenario.radio.sync_length);
    for (int i = 0; i < scenario.radio.sync_length; ++i)
        x(i) = std::polar(amplitude, kTwoPi * stream.uniform());
    return x;
}

double binomial_ci_half_width(double rate, std::int64_t trials) {
    const double hw = 1.96 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
    return std::min(hw, 1.0);
}

} // namespace

void ScenarioConfig::validate() const {
    geom.validate();
    area.validate();
    radio.validate();
    detector.validate();
    design.validate(geom);
    scatter.validate();
    ucf_model.validate();
    if (radio.wavelength != geom.wavelength)
        throw std::invalid_argument("ScenarioConfig: radio and surface wavelengths differ");
    if (optimized_repetitions < 1)
        throw std::invalid_argument("ScenarioConfig: repetition count must be >= 1");
}

DesignResult build_design(const ScenarioConfig& scenario, const DesignSpec& spec,
                          const GainMatrixSet* gains) {
    scenario.validate();
    spec.validate(scenario.geom);
    switch (spec.variant) {
    case DesignSpec::Variant::Linear:
        return {linear_tiled_design(spec.tiles, scenario.area, scenario.radio, scenario.geom),
                std::nullopt};
    case DesignSpec::Variant::Quadratic:
        return {quadratic_design(coverage_grid(scenario.area), scenario.radio, scenario.geom),
                std::nullopt};
    case DesignSpec::Variant::Optimized: {
        GainMatrixSet local;
        if (gains == nullptr) {
            local = build_gain_matrices(coverage_grid(scenario.area), scenario.radio,
                                        scenario.geom, scenario.ucf_model);
            gains = &local;
        }
        SdrSolution sol = solve_sdr(*gains);
        PhaseShiftVector w =
            gaussian_randomization(sol, *gains, spec.randomization_count, spec.seed);
        return {std::move(w), std::move(sol)};
    }
    }
    throw std::logic_error("build_design: unknown variant");
}

MdMap analytic_md_map(const ScenarioConfig& scenario, const PhaseShiftVector& w,
                      const std::vector<CartesianPoint>& eval_grid) {
    scenario.validate();
    if (w.size() != scenario.geom.cell_count())
        throw std::invalid_argument("analytic_md_map: design does not match the surface");

    MdMap map;
    map.points = eval_grid;
    map.gamma.resize(eval_grid.size());
    map.md.resize(eval_grid.size());
    map.design_name = scenario.design.name();

    const std::complex<double> h_bs = irs_bs_channel(scenario.radio);
    parallel_for(static_cast<std::int64_t>(eval_grid.size()), [&](std::int64_t i) {
        const auto los = device_irs_los(eval_grid[static_cast<std::size_t>(i)],
                                        scenario.radio.wavelength);
        const std::complex<double> h =
            h_bs *
            irs_response(los.second, scenario.radio.bs_direction, w, scenario.geom,
                         scenario.ucf_model) *
            los.first;
        const double g = noncentrality(h, scenario.radio);
        map.gamma[static_cast<std::size_t>(i)] = g;
        map.md[static_cast<std::size_t>(i)] =
            misdetection_probability(g, scenario.detector.threshold);
    });
    return map;
}

std::pair<double, CartesianPoint> worst_case_md(const ScenarioConfig& scenario,
                                                const PhaseShiftVector& w) {
    const auto grid = coverage_grid(scenario.area);
    const MdMap map = analytic_md_map(scenario, w, grid);
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < map.md.size(); ++i)
        if (map.md[i] > map.md[argmax])
            argmax = i;
    return {map.md[argmax], grid[argmax]};
}

std::vector<SweepRow> sweep_area_sizes(const ScenarioConfig& scenario_template,
                                       const std::vector<double>& sizes,
                                       const std::vector<DesignSpec>& designs) {
    if (sizes.empty())
        throw std::invalid_argument("sweep_area_sizes: no sizes given");
    std::vector<SweepRow> rows;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        ScenarioConfig scenario = scenario_template;
        scenario.area.extent_y = sizes[si];
        scenario.area.extent_z = sizes[si];
        scenario.validate();

        const auto grid = coverage_grid(scenario.area);
        GainMatrixSet gains;
        bool have_gains = false;
        std::optional<SdrSolution> sdr;

        for (const DesignSpec& spec : designs) {
            SweepRow row;
            row.parameter = sizes[si];
            row.design = spec.name();
            if (spec.variant == DesignSpec::Variant::Optimized) {
                if (!have_gains) {
                    gains = build_gain_matrices(grid, scenario.radio, scenario.geom,
                                                scenario.ucf_model);
                    have_gains = true;
                }
                if (!sdr)
                    sdr = solve_sdr(gains);
                // mean worst-case over independently randomized vectors
                const int reps = scenario.optimized_repetitions;
                std::vector<double> md_values(static_cast<std::size_t>(reps));
                for (int r = 0; r < reps; ++r) {
                    const PhaseShiftVector w = gaussian_randomization(
                        *sdr, gains, spec.randomization_count,
                        derive_seed(spec.seed, si, static_cast<std::uint64_t>(r)));
                    md_values[static_cast<std::size_t>(r)] =
                        worst_case_md(scenario, w).first;
                }
                double mean = 0.0;
                for (double v : md_values)
                    mean += v;
                mean /= reps;
                double var = 0.0;
                for (double v : md_values)
                    var += (v - mean) * (v - mean);
                var = reps > 1 ? var / (reps - 1) : 0.0;
                row.md = mean;
                row.ci_half_width = reps > 1 ? 1.96 * std::sqrt(var / reps) : 0.0;
            } else {
                const DesignResult result = build_design(scenario, spec);
                row.md = worst_case_md(scenario, result.w).first;
                row.ci_half_width = 0.0;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

DetectionStats monte_carlo_md(const ScenarioConfig& scenario, const PhaseShiftVector& w,
                              std::int64_t trials, std::uint64_t seed) {
    scenario.validate();
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_md: trials must be >= 1");
    if (w.size() != scenario.geom.cell_count())
        throw std::invalid_argument("monte_carlo_md: design does not match the surface");

    const auto grid = coverage_grid(scenario.area);
    const Eigen::VectorXcd x = sync_sequence(scenario, seed);
    const int symbols = scenario.radio.sync_length;
    const double antenna_gain = std::sqrt(static_cast<double>(scenario.radio.bs_antennas));

    const std::complex<double> h_bs = irs_bs_channel(scenario.radio);
    std::vector<std::int64_t> misses(grid.size(), 0);
    parallel_for(static_cast<std::int64_t>(grid.size()), [&](std::int64_t loc) {
        const auto los = device_irs_los(grid[static_cast<std::size_t>(loc)],
                                        scenario.radio.wavelength);
        // LoS response is fixed per location; only scattered paths vary
        const std::complex<double> los_term =
            irs_response(los.second, scenario.radio.bs_direction, w, scenario.geom,
                         scenario.ucf_model) *
            los.first;
        Eigen::VectorXcd s(symbols), y(symbols);
        std::int64_t missed = 0;
        for (std::int64_t trial = 0; trial < trials; ++trial) {
            RandomStream stream(derive_seed(seed, kTrialSalt,
                                            static_cast<std::uint64_t>(loc),
                                            static_cast<std::uint64_t>(trial)));
            const ChannelRealization realization =
                sample_scattered_paths(los, scenario.scatter, stream);
            std::complex<double> sum = los_term;
            for (std::size_t l = 0; l < realization.nlos_coefficients.size(); ++l) {
                const std::complex<double> coeff = realization.nlos_coefficients[l];
                if (coeff == std::complex<double>(0.0, 0.0))
                    continue;
                sum += unit_cell_factor(realization.nlos_directions[l],
                                        scenario.radio.bs_direction, scenario.ucf_model) *
                       steering_projection(realization.nlos_directions[l],
                                           scenario.radio.bs_direction, w.coefficients,
                                           scenario.geom) *
                       coeff;
            }
            const std::complex<double> h = h_bs * sum;
            const double h_mag = std::abs(h);
            if (h_mag == 0.0) {
                // no energy reaches the BS; nothing to detect
                ++missed;
                continue;
            }
            const std::complex<double> rotation = h / h_mag;
            s = (antenna_gain * h_mag) * x;
            for (int i = 0; i < symbols; ++i)
                y(i) = s(i) * rotation +
                       stream.complex_normal(scenario.radio.noise_power);
            if (!(glrt_statistic(y, s, scenario.radio.noise_power) >
                  scenario.detector.threshold))
                ++missed;
        }
        misses[static_cast<std::size_t>(loc)] = missed;
    });

    std::size_t argmax = 0;
    for (std::size_t i = 1; i < misses.size(); ++i)
        if (misses[i] > misses[argmax])
            argmax = i;

    DetectionStats stats;
    stats.kind = DetectionStats::Kind::Empirical;
    stats.trials = trials;
    stats.false_alarm = scenario.detector.target_false_alarm;
    stats.misdetection = static_cast<double>(misses[argmax]) / static_cast<double>(trials);
    stats.ci_half_width = binomial_ci_half_width(stats.misdetection, trials);
    const auto los = device_irs_los(grid[argmax], scenario.radio.wavelength);
    const std::complex<double> h_los =
        irs_bs_channel(scenario.radio) *
        irs_response(los.second, scenario.radio.bs_direction, w, scenario.geom,
                     scenario.ucf_model) *
        los.first;
    stats.noncentrality = noncentrality(h_los, scenario.radio);
    return stats;
}

DetectionStats monte_carlo_false_alarm(const ScenarioConfig& scenario, std::int64_t trials,
                                       std::uint64_t seed) {
    scenario.validate();
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_false_alarm: trials must be >= 1");

    // Noise-only input against the reference for the area center. The
    // statistic is scale-invariant in the reference, so the null rate does
    // not depend on this choice.
    const Eigen::VectorXcd x = sync_sequence(scenario, seed);
    const int symbols = scenario.radio.sync_length;

    std::vector<std::uint8_t> alarms(static_cast<std::size_t>(trials), 0);
    parallel_for(trials, [&](std::int64_t trial) {
        RandomStream stream(derive_seed(seed, kH0Salt, 0, static_cast<std::uint64_t>(trial)));
        Eigen::VectorXcd y(symbols);
        for (int i = 0; i < symbols; ++i)
            y(i) = stream.complex_normal(scenario.radio.noise_power);
        alarms[static_cast<std::size_t>(trial)] =
            glrt_statistic(y, x, scenario.radio.noise_power) > scenario.detector.threshold
                ? 1
                : 0;
    });

    std::int64_t count = 0;
    for (auto a : alarms)
        count += a;

    DetectionStats stats;
    stats.kind = DetectionStats::Kind::Empirical;
    stats.trials = trials;
    stats.false_alarm = static_cast<double>(count) / static_cast<double>(trials);
    stats.misdetection = 0.0;
    stats.noncentrality = 0.0;
    stats.ci_half_width = binomial_ci_half_width(stats.false_alarm, trials);
    return stats;
}

std::vector<SweepRow> scattering_sweep(const ScenarioConfig& scenario, const PhaseShiftVector& w,
                                       const std::vector<double>& rho_values,
                                       std::int64_t trials) {
    if (rho_values.empty())
        throw std::invalid_argument("scattering_sweep: no rho values given");
    std::vector<SweepRow> rows;
    for (double rho : rho_values) {
        ScenarioConfig s = scenario;
        s.scatter.power_ratio = rho;
        s.scatter.validate();
        const DetectionStats stats = monte_carlo_md(s, w, trials, s.master_seed);
        SweepRow row;
        row.parameter = rho;
        row.design = s.design.name();
        row.md = stats.misdetection;
        row.ci_half_width = stats.ci_half_width;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string canonical_scenario_string(const ScenarioConfig& scenario) {
    std::string out = "irsdet-scenario-v1\n";
    auto add = [&out](const char* key, const std::string& value) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    };
    add("irs.u_count_x", std::to_string(scenario.geom.u_count_x));
    add("irs.u_count_y", std::to_string(scenario.geom.u_count_y));
    add("irs.spacing_x", format_double(scenario.geom.spacing_x));
    add("irs.spacing_y", format_double(scenario.geom.spacing_y));
    add("irs.wavelength", format_double(scenario.geom.wavelength));
    add("irs.ucf.kind",
        scenario.ucf_model.kind == UnitCellFactorModel::Kind::Constant ? "constant"
                                                                       : "cosine_product");
    add("irs.ucf.value", format_double(scenario.ucf_model.value));
    add("area.center.x", format_double(scenario.area.center.x));
    add("area.center.y", format_double(scenario.area.center.y));
    add("area.center.z", format_double(scenario.area.center.z));
    add("area.extent_y", format_double(scenario.area.extent_y));
    add("area.extent_z", format_double(scenario.area.extent_z));
    add("area.grid_ny", std::to_string(scenario.area.grid_ny));
    add("area.grid_nz", std::to_string(scenario.area.grid_nz));
    add("radio.bs_distance", format_double(scenario.radio.bs_distance));
    add("radio.bs_theta", format_double(scenario.radio.bs_direction.theta));
    add("radio.bs_phi", format_double(scenario.radio.bs_direction.phi));
    add("radio.bs_antennas", std::to_string(scenario.radio.bs_antennas));
    add("radio.tx_power", format_double(scenario.radio.tx_power));
    add("radio.noise_power", format_double(scenario.radio.noise_power));
    add("radio.sync_length", std::to_string(scenario.radio.sync_length));
    add("detector.false_alarm", format_double(scenario.detector.target_false_alarm));
    add("design.variant", scenario.design.name());
    add("design.randomizations", std::to_string(scenario.design.randomization_count));
    add("design.seed", std::to_string(scenario.design.seed));
    add("scatter.path_count", std::to_string(scenario.scatter.path_count));
    add("scatter.power_ratio", format_double(scenario.scatter.power_ratio));
    add("scatter.direction_stddev", format_double(scenario.scatter.direction_stddev));
    add("seed", std::to_string(scenario.master_seed));
    add("repetitions", std::to_string(scenario.optimized_repetitions));
    return out;
}

std::string scenario_hash(const ScenarioConfig& scenario) {
    const std::string canon = canonical_scenario_string(scenario);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_md_map_csv(std::ostream& out, const MdMap& map, const std::string& hash,
                      std::uint64_t seed) {
    out << "# scenario: " << hash << "\n";
    out << "# seed: " << seed << "\n";
    out << "# design: " << map.design_name << "\n";
    out << "y,z,gamma,md\n";
    for (std::size_t i = 0; i < map.points.size(); ++i) {
        out << format_value(map.points[i].y) << ',' << format_value(map.points[i].z) << ','
            << format_value(map.gamma[i]) << ',' << format_value(map.md[i]) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::string& hash, std::uint64_t seed) {
    out << "# scenario: " << hash << "\n";
    out << "# seed: " << seed << "\n";
    out << "size_or_rho,design,md,ci\n";
    for (const auto& row : rows) {
        out << format_value(row.parameter) << ',' << row.design << ','
            << format_value(row.md) << ',' << format_value(row.ci_half_width) << '\n';
    }
}

} // namespace irsdet
