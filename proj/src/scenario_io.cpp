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

#include "irsdet/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace irsdet {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

// byte offset -> 1-based line/column
std::pair<int, int> offset_to_position(const std::string& text, std::size_t offset) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw ScenarioParseError("unknown key '" + item.key() + "' in " + where, 0, 0);
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw ScenarioParseError("missing key '" + key + "' in " + where, 0, 0);
    if (!obj[key].is_number())
        throw ScenarioParseError("key '" + key + "' in " + where + " must be a number", 0, 0);
    return obj[key].get<double>();
}

int require_int(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number_integer())
        throw ScenarioParseError("key '" + key + "' in " + where + " must be an integer", 0, 0);
    return obj[key].get<int>();
}

} // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double degrees_to_radians(double degrees) { return degrees * kPi / 180.0; }

double radians_to_degrees(double radians) { return radians * 180.0 / kPi; }

ScenarioConfig parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = offset_to_position(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ScenarioParseError(e.what(), line, column);
    }
    if (!doc.is_object())
        throw ScenarioParseError("scenario document must be a JSON object", 1, 1);

    reject_unknown_keys(
        doc, {"irs", "area", "radio", "detector", "design", "scatter", "seed", "repetitions"},
        "scenario");

    ScenarioConfig cfg;

    // --- irs ---------------------------------------------------------------
    if (!doc.contains("irs"))
        throw ScenarioParseError("missing 'irs' section", 0, 0);
    const json& irs = doc["irs"];
    reject_unknown_keys(irs,
                        {"u_count_x", "u_count_y", "spacing_x", "spacing_y", "wavelength",
                         "unit_cell_factor"},
                        "irs");
    cfg.geom.u_count_x = require_int(irs, "u_count_x", "irs");
    cfg.geom.u_count_y = require_int(irs, "u_count_y", "irs");
    cfg.geom.spacing_x = require_number(irs, "spacing_x", "irs");
    cfg.geom.spacing_y = require_number(irs, "spacing_y", "irs");
    cfg.geom.wavelength = require_number(irs, "wavelength", "irs");
    cfg.geom.validate();

    if (irs.contains("unit_cell_factor")) {
        const json& ucf = irs["unit_cell_factor"];
        reject_unknown_keys(ucf, {"model", "value", "gain_scale"}, "irs.unit_cell_factor");
        const std::string model = ucf.value("model", "constant");
        if (model == "constant") {
            const double v = ucf.contains("value")
                                 ? require_number(ucf, "value", "irs.unit_cell_factor")
                                 : default_unit_cell_factor(cfg.geom).value;
            cfg.ucf_model = UnitCellFactorModel::constant(v);
        } else if (model == "cosine_product") {
            const double v = ucf.contains("gain_scale")
                                 ? require_number(ucf, "gain_scale", "irs.unit_cell_factor")
                                 : default_unit_cell_factor(cfg.geom).value;
            cfg.ucf_model = UnitCellFactorModel::cosine_product(v);
        } else {
            throw ScenarioParseError("unknown unit-cell factor model '" + model + "'", 0, 0);
        }
    } else {
        cfg.ucf_model = default_unit_cell_factor(cfg.geom);
    }

    // --- area --------------------------------------------------------------
    if (!doc.contains("area"))
        throw ScenarioParseError("missing 'area' section", 0, 0);
    const json& area = doc["area"];
    reject_unknown_keys(area, {"center", "extent_y", "extent_z", "grid_ny", "grid_nz"}, "area");
    if (!area.contains("center") || !area["center"].is_array() || area["center"].size() != 3)
        throw ScenarioParseError("'area.center' must be an [x, y, z] array", 0, 0);
    cfg.area.center = CartesianPoint{area["center"][0].get<double>(),
                                     area["center"][1].get<double>(),
                                     area["center"][2].get<double>()};
    cfg.area.extent_y = require_number(area, "extent_y", "area");
    cfg.area.extent_z = require_number(area, "extent_z", "area");
    cfg.area.grid_ny = require_int(area, "grid_ny", "area");
    cfg.area.grid_nz = require_int(area, "grid_nz", "area");
    cfg.area.validate();

    // --- radio -------------------------------------------------------------
    if (!doc.contains("radio"))
        throw ScenarioParseError("missing 'radio' section", 0, 0);
    const json& radio = doc["radio"];
    reject_unknown_keys(radio,
                        {"bs_distance", "bs_theta_deg", "bs_phi_deg", "bs_antennas",
                         "tx_power_dbm", "noise_power_dbm", "noise", "sync_length"},
                        "radio");
    cfg.radio.wavelength = cfg.geom.wavelength;
    cfg.radio.bs_distance = require_number(radio, "bs_distance", "radio");
    cfg.radio.bs_direction.theta =
        degrees_to_radians(require_number(radio, "bs_theta_deg", "radio"));
    cfg.radio.bs_direction.phi = degrees_to_radians(require_number(radio, "bs_phi_deg", "radio"));
    cfg.radio.bs_antennas = require_int(radio, "bs_antennas", "radio");
    cfg.radio.tx_power = dbm_to_watts(require_number(radio, "tx_power_dbm", "radio"));
    cfg.radio.sync_length = require_int(radio, "sync_length", "radio");

    double noise_direct = 0.0;
    bool have_direct = false;
    if (radio.contains("noise_power_dbm")) {
        noise_direct = require_number(radio, "noise_power_dbm", "radio");
        have_direct = true;
    }
    double noise_composed = 0.0;
    bool have_composed = false;
    if (radio.contains("noise")) {
        const json& noise = radio["noise"];
        reject_unknown_keys(noise, {"psd_dbm_per_hz", "bandwidth_hz", "figure_db"},
                            "radio.noise");
        const double psd = require_number(noise, "psd_dbm_per_hz", "radio.noise");
        const double bw = require_number(noise, "bandwidth_hz", "radio.noise");
        const double figure = require_number(noise, "figure_db", "radio.noise");
        noise_composed = psd + 10.0 * std::log10(bw) + figure;
        have_composed = true;
    }
    if (!have_direct && !have_composed)
        throw ScenarioParseError("radio: needs 'noise_power_dbm' or 'noise' composition", 0, 0);
    if (have_direct && have_composed && std::abs(noise_direct - noise_composed) > 0.05)
        throw ScenarioParseError("radio: noise power disagrees with PSD*bandwidth*figure", 0, 0);
    cfg.radio.noise_power = dbm_to_watts(have_direct ? noise_direct : noise_composed);
    cfg.radio.validate();

    // --- detector ----------------------------------------------------------
    if (!doc.contains("detector"))
        throw ScenarioParseError("missing 'detector' section", 0, 0);
    const json& detector = doc["detector"];
    reject_unknown_keys(detector, {"false_alarm"}, "detector");
    cfg.detector = DetectorConfig::for_false_alarm(
        require_number(detector, "false_alarm", "detector"), cfg.radio.noise_power);

    // --- design ------------------------------------------------------------
    if (doc.contains("design")) {
        const json& design = doc["design"];
        reject_unknown_keys(design, {"variant", "tiles", "randomizations", "seed"}, "design");
        const std::string variant = design.value("variant", "linear");
        if (variant == "linear")
            cfg.design.variant = DesignSpec::Variant::Linear;
        else if (variant == "quadratic")
            cfg.design.variant = DesignSpec::Variant::Quadratic;
        else if (variant == "optimized")
            cfg.design.variant = DesignSpec::Variant::Optimized;
        else
            throw ScenarioParseError("unknown design variant '" + variant + "'", 0, 0);
        if (design.contains("tiles"))
            cfg.design.tiles = require_int(design, "tiles", "design");
        if (design.contains("randomizations"))
            cfg.design.randomization_count = require_int(design, "randomizations", "design");
        if (design.contains("seed")) {
            if (!design["seed"].is_number_integer() && !design["seed"].is_number_unsigned())
                throw ScenarioParseError("'design.seed' must be an integer", 0, 0);
            cfg.design.seed = design["seed"].get<std::uint64_t>();
        }
    }
    cfg.design.validate(cfg.geom);

    // --- scatter -----------------------------------------------------------
    if (doc.contains("scatter")) {
        const json& scatter = doc["scatter"];
        reject_unknown_keys(scatter, {"path_count", "power_ratio", "direction_stddev"},
                            "scatter");
        if (scatter.contains("path_count"))
            cfg.scatter.path_count = require_int(scatter, "path_count", "scatter");
        if (scatter.contains("power_ratio"))
            cfg.scatter.power_ratio = require_number(scatter, "power_ratio", "scatter");
        if (scatter.contains("direction_stddev"))
            cfg.scatter.direction_stddev =
                require_number(scatter, "direction_stddev", "scatter");
    }
    cfg.scatter.validate();

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer() && !doc["seed"].is_number_unsigned())
            throw ScenarioParseError("'seed' must be an integer", 0, 0);
        cfg.master_seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("repetitions"))
        cfg.optimized_repetitions = require_int(doc, "repetitions", "scenario");

    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string emit_scenario(const ScenarioConfig& scenario) {
    scenario.validate();
    json doc;
    doc["irs"]["u_count_x"] = scenario.geom.u_count_x;
    doc["irs"]["u_count_y"] = scenario.geom.u_count_y;
    doc["irs"]["spacing_x"] = scenario.geom.spacing_x;
    doc["irs"]["spacing_y"] = scenario.geom.spacing_y;
    doc["irs"]["wavelength"] = scenario.geom.wavelength;
    doc["irs"]["unit_cell_factor"]["model"] =
        scenario.ucf_model.kind == UnitCellFactorModel::Kind::Constant ? "constant"
                                                                       : "cosine_product";
    if (scenario.ucf_model.kind == UnitCellFactorModel::Kind::Constant)
        doc["irs"]["unit_cell_factor"]["value"] = scenario.ucf_model.value;
    else
        doc["irs"]["unit_cell_factor"]["gain_scale"] = scenario.ucf_model.value;
    doc["area"]["center"] = {scenario.area.center.x, scenario.area.center.y,
                             scenario.area.center.z};
    doc["area"]["extent_y"] = scenario.area.extent_y;
    doc["area"]["extent_z"] = scenario.area.extent_z;
    doc["area"]["grid_ny"] = scenario.area.grid_ny;
    doc["area"]["grid_nz"] = scenario.area.grid_nz;
    doc["radio"]["bs_distance"] = scenario.radio.bs_distance;
    doc["radio"]["bs_theta_deg"] = radians_to_degrees(scenario.radio.bs_direction.theta);
    doc["radio"]["bs_phi_deg"] = radians_to_degrees(scenario.radio.bs_direction.phi);
    doc["radio"]["bs_antennas"] = scenario.radio.bs_antennas;
    doc["radio"]["tx_power_dbm"] = watts_to_dbm(scenario.radio.tx_power);
    doc["radio"]["noise_power_dbm"] = watts_to_dbm(scenario.radio.noise_power);
    doc["radio"]["sync_length"] = scenario.radio.sync_length;
    doc["detector"]["false_alarm"] = scenario.detector.target_false_alarm;
    switch (scenario.design.variant) {
    case DesignSpec::Variant::Linear:
        doc["design"]["variant"] = "linear";
        doc["design"]["tiles"] = scenario.design.tiles;
        break;
    case DesignSpec::Variant::Quadratic:
        doc["design"]["variant"] = "quadratic";
        break;
    case DesignSpec::Variant::Optimized:
        doc["design"]["variant"] = "optimized";
        doc["design"]["randomizations"] = scenario.design.randomization_count;
        doc["design"]["seed"] = scenario.design.seed;
        break;
    }
    doc["scatter"]["path_count"] = scenario.scatter.path_count;
    doc["scatter"]["power_ratio"] = scenario.scatter.power_ratio;
    doc["scatter"]["direction_stddev"] = scenario.scatter.direction_stddev;
    doc["seed"] = scenario.master_seed;
    doc["repetitions"] = scenario.optimized_repetitions;
    return doc.dump(2) + "\n";
}

} // namespace irsdet
