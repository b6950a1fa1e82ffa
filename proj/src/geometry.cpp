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

#include "irsdet/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace irsdet {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void Direction::validate() const {
    if (!(theta >= 0.0 && theta <= kPi))
        throw std::invalid_argument("Direction: theta outside [0, pi]");
    if (!(phi > -kPi && phi <= kPi))
        throw std::invalid_argument("Direction: phi outside (-pi, pi]");
}

double CartesianPoint::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

void CartesianPoint::validate() const {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        throw std::invalid_argument("CartesianPoint: non-finite coordinate");
}

void IrsGeometry::validate() const {
    if (u_count_x <= 0 || u_count_y <= 0 || u_count_x % 2 != 0 || u_count_y % 2 != 0)
        throw std::invalid_argument("IrsGeometry: cell counts must be positive even integers");
    if (!(spacing_x > 0.0) || !(spacing_y > 0.0))
        throw std::invalid_argument("IrsGeometry: cell spacings must be positive");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("IrsGeometry: wavelength must be positive");
}

void CoverageArea::validate() const {
    center.validate();
    if (extent_y < 0.0 || extent_z < 0.0)
        throw std::invalid_argument("CoverageArea: extents must be nonnegative");
    if (grid_ny < 1 || grid_nz < 1)
        throw std::invalid_argument("CoverageArea: grid counts must be >= 1");
}

CellIndex unit_cell_index(int u, const IrsGeometry& geom) {
    geom.validate();
    if (u < 0 || u >= geom.cell_count())
        throw std::out_of_range("unit_cell_index: flat index outside [0, U)");
    return CellIndex{u % geom.u_count_x - geom.u_count_x / 2 + 1,
                     u / geom.u_count_x - geom.u_count_y / 2 + 1};
}

CartesianPoint unit_cell_position(CellIndex index, const IrsGeometry& geom) {
    geom.validate();
    const int half_x = geom.u_count_x / 2;
    const int half_y = geom.u_count_y / 2;
    if (index.x < -half_x + 1 || index.x > half_x || index.y < -half_y + 1 || index.y > half_y)
        throw std::out_of_range("unit_cell_position: cell index outside the surface");
    return CartesianPoint{geom.spacing_x * index.x, geom.spacing_y * index.y, 0.0};
}

Eigen::Vector3d wave_vector(const Direction& dir, double wavelength) {
    dir.validate();
    if (!(wavelength > 0.0))
        throw std::invalid_argument("wave_vector: wavelength must be positive");
    const double k0 = 2.0 * kPi / wavelength;
    const double st = std::sin(dir.theta);
    return Eigen::Vector3d(k0 * st * std::cos(dir.phi),
                           k0 * st * std::sin(dir.phi),
                           k0 * std::cos(dir.theta));
}

std::pair<Direction, double> direction_and_distance(const CartesianPoint& p) {
    p.validate();
    const double d = p.norm();
    if (d == 0.0)
        throw std::invalid_argument("direction_and_distance: point at the surface center");
    Direction dir;
    double cos_theta = p.z / d;
    cos_theta = std::max(-1.0, std::min(1.0, cos_theta));
    dir.theta = std::acos(cos_theta);
    dir.phi = (p.x == 0.0 && p.y == 0.0) ? 0.0 : std::atan2(p.y, p.x);
    if (dir.phi <= -kPi)
        dir.phi = kPi; // atan2 may yield -pi; the convention is (-pi, pi]
    return {dir, d};
}

std::vector<CartesianPoint> coverage_grid(const CoverageArea& area) {
    area.validate();
    auto axis = [](double center, double extent, int n) {
        std::vector<double> v(n);
        if (n == 1) {
            v[0] = center;
        } else {
            const double lo = center - extent / 2.0;
            const double step = extent / (n - 1);
            for (int i = 0; i < n; ++i)
                v[i] = lo + step * i;
        }
        return v;
    };
    const auto ys = axis(area.center.y, area.extent_y, area.grid_ny);
    const auto zs = axis(area.center.z, area.extent_z, area.grid_nz);
    std::vector<CartesianPoint> grid;
    grid.reserve(ys.size() * zs.size());
    for (double y : ys)
        for (double z : zs)
            grid.push_back(CartesianPoint{area.center.x, y, z});
    return grid;
}

} // namespace irsdet
