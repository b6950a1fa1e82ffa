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

#include "irsdet/irs_model.hpp"

#include <cmath>
#include <stdexcept>

namespace irsdet {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PhaseShiftVector PhaseShiftVector::from_phases(const std::vector<double>& phases) {
    PhaseShiftVector w;
    w.coefficients.resize(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t u = 0; u < phases.size(); ++u)
        w.coefficients(static_cast<Eigen::Index>(u)) =
            std::polar(1.0, phases[u]);
    return w;
}

PhaseShiftVector PhaseShiftVector::from_coefficients(Eigen::VectorXcd coeffs) {
    for (Eigen::Index u = 0; u < coeffs.size(); ++u) {
        if (std::abs(std::abs(coeffs(u)) - 1.0) > 1e-12)
            throw std::invalid_argument("PhaseShiftVector: coefficient not unit modulus");
    }
    PhaseShiftVector w;
    w.coefficients = std::move(coeffs);
    return w;
}

std::vector<double> PhaseShiftVector::phases() const {
    std::vector<double> p(static_cast<std::size_t>(coefficients.size()));
    for (Eigen::Index u = 0; u < coefficients.size(); ++u)
        p[static_cast<std::size_t>(u)] = std::arg(coefficients(u));
    return p;
}

UnitCellFactorModel UnitCellFactorModel::constant(double v) {
    UnitCellFactorModel m{Kind::Constant, v};
    m.validate();
    return m;
}

UnitCellFactorModel UnitCellFactorModel::cosine_product(double gain_scale) {
    UnitCellFactorModel m{Kind::CosineProduct, gain_scale};
    m.validate();
    return m;
}

void UnitCellFactorModel::validate() const {
    if (!(value > 0.0))
        throw std::invalid_argument("UnitCellFactorModel: scale must be positive");
}

UnitCellFactorModel default_unit_cell_factor(const IrsGeometry& geom) {
    geom.validate();
    return UnitCellFactorModel::constant(4.0 * kPi * geom.spacing_x * geom.spacing_y /
                                         (geom.wavelength * geom.wavelength));
}

SteeringVector steering_vector(const Direction& incident, const Direction& reflect,
                               const IrsGeometry& geom) {
    const Eigen::Vector3d k_sum =
        wave_vector(incident, geom.wavelength) + wave_vector(reflect, geom.wavelength);
    SteeringVector a;
    a.entries.resize(geom.cell_count());
    for (int u = 0; u < geom.cell_count(); ++u) {
        const CellIndex idx = unit_cell_index(u, geom);
        const CartesianPoint c = unit_cell_position(idx, geom);
        const double phase = -(k_sum.x() * c.x + k_sum.y() * c.y + k_sum.z() * c.z);
        a.entries(u) = std::polar(1.0, phase);
    }
    return a;
}

double unit_cell_factor(const Direction& incident, const Direction& reflect,
                        const UnitCellFactorModel& model) {
    incident.validate();
    reflect.validate();
    model.validate();
    switch (model.kind) {
    case UnitCellFactorModel::Kind::Constant:
        return model.value;
    case UnitCellFactorModel::Kind::CosineProduct: {
        const double ct = std::max(0.0, std::cos(incident.theta));
        const double cr = std::max(0.0, std::cos(reflect.theta));
        return model.value * std::sqrt(ct * cr);
    }
    }
    throw std::logic_error("unit_cell_factor: unknown model kind");
}

std::complex<double> steering_projection(const Direction& incident, const Direction& reflect,
                                         const Eigen::Ref<const Eigen::VectorXcd>& w,
                                         const IrsGeometry& geom) {
    if (w.size() != geom.cell_count())
        throw std::invalid_argument("steering_projection: vector length mismatch");
    const Eigen::Vector3d k_sum =
        wave_vector(incident, geom.wavelength) + wave_vector(reflect, geom.wavelength);
    std::complex<double> sum = 0.0;
    // conj(a_u) w_u accumulated in flat-index order
    for (int u = 0; u < geom.cell_count(); ++u) {
        const CellIndex idx{u % geom.u_count_x - geom.u_count_x / 2 + 1,
                            u / geom.u_count_x - geom.u_count_y / 2 + 1};
        const double phase =
            k_sum.x() * geom.spacing_x * idx.x + k_sum.y() * geom.spacing_y * idx.y;
        sum += std::polar(1.0, phase) * w(u);
    }
    return sum;
}

std::complex<double> irs_response(const Direction& incident, const Direction& reflect,
                                  const PhaseShiftVector& w, const IrsGeometry& geom,
                                  const UnitCellFactorModel& model) {
    if (w.size() != geom.cell_count())
        throw std::invalid_argument("irs_response: phase-shift vector length mismatch");
    return unit_cell_factor(incident, reflect, model) *
           steering_projection(incident, reflect, w.coefficients, geom);
}

} // namespace irsdet
