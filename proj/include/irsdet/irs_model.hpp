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

#ifndef IRSDET_IRS_MODEL_HPP
#define IRSDET_IRS_MODEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "irsdet/geometry.hpp"

namespace irsdet {

/// Per-cell unit-modulus reflection coefficients w, one per unit cell,
/// ordered by the flat cell index.
struct PhaseShiftVector {
    Eigen::VectorXcd coefficients;

    static PhaseShiftVector from_phases(const std::vector<double>& phases);
    /// Validates the unit-modulus invariant (1e-12) before accepting.
    static PhaseShiftVector from_coefficients(Eigen::VectorXcd coeffs);

    int size() const { return static_cast<int>(coefficients.size()); }
    std::vector<double> phases() const;
};

/// Array steering profile for an (incident, reflection) direction pair.
/// All entries are unit modulus.
struct SteeringVector {
    Eigen::VectorXcd entries;
    int size() const { return static_cast<int>(entries.size()); }
};

/// Direction-dependent scalar gain of a single cell. The physics reference
/// behind the factor is not fixed here; two selectable variants are shipped.
struct UnitCellFactorModel {
    enum class Kind { Constant, CosineProduct };

    Kind kind = Kind::Constant;
    double value = 1.0; // constant value, or broadside gain scale

    static UnitCellFactorModel constant(double v);
    static UnitCellFactorModel cosine_product(double gain_scale);
    void validate() const;
};

/// Default constant factor 4*pi*dx*dy/lambda^2 (broadside aperture scale).
UnitCellFactorModel default_unit_cell_factor(const IrsGeometry& geom);

/// Steering vector with entry exp(-j (k(incident)+k(reflect))^T c_u), the
/// cell positions taken in flat-index order.
SteeringVector steering_vector(const Direction& incident, const Direction& reflect,
                               const IrsGeometry& geom);

double unit_cell_factor(const Direction& incident, const Direction& reflect,
                        const UnitCellFactorModel& model);

/// a^H(t,r) w without materializing the steering vector; the Monte-Carlo
/// paths call this per scattered direction.
std::complex<double> steering_projection(const Direction& incident, const Direction& reflect,
                                         const Eigen::Ref<const Eigen::VectorXcd>& w,
                                         const IrsGeometry& geom);

/// Reflected-field response v(t,r) * a^H(t,r) * w.
std::complex<double> irs_response(const Direction& incident, const Direction& reflect,
                                  const PhaseShiftVector& w, const IrsGeometry& geom,
                                  const UnitCellFactorModel& model);

} // namespace irsdet

#endif
