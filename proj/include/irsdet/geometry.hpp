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

#ifndef IRSDET_GEOMETRY_HPP
#define IRSDET_GEOMETRY_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace irsdet {

/// Incident/reflection direction on the surface: polar angle theta measured
/// from the +z axis and azimuth phi in the xy-plane, both in radians.
struct Direction {
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // (-pi, pi]

    void validate() const; // throws std::invalid_argument on range violation
};

struct CartesianPoint {
    double x = 0.0, y = 0.0, z = 0.0; // meters

    double norm() const;
    void validate() const; // all coordinates finite
};

/// Planar reflecting surface in the xy-plane, centered at the origin.
struct IrsGeometry {
    int u_count_x = 0;      // number of unit cells along x, even
    int u_count_y = 0;      // number of unit cells along y, even
    double spacing_x = 0.0; // cell spacing along x [m]
    double spacing_y = 0.0; // cell spacing along y [m]
    double wavelength = 0.0; // [m]

    int cell_count() const { return u_count_x * u_count_y; }
    void validate() const;
};

/// Rectangular coverage area parallel to the yz-plane plus the sampling grid
/// used to discretize it.
struct CoverageArea {
    CartesianPoint center;
    double extent_y = 0.0; // total side length along y [m]
    double extent_z = 0.0; // total side length along z [m]
    int grid_ny = 1;
    int grid_nz = 1;

    void validate() const;
};

/// Two-dimensional unit-cell index, zero-centered per the even-count layout.
struct CellIndex {
    int x = 0;
    int y = 0;
};

/// Maps flat index u in [0, U) to the two-dimensional cell index:
/// x = (u mod Ux) - Ux/2 + 1, y = floor(u/Ux) - Uy/2 + 1.
CellIndex unit_cell_index(int u, const IrsGeometry& geom);

/// Cell center coordinates (spacing_x*ix, spacing_y*iy, 0).
CartesianPoint unit_cell_position(CellIndex index, const IrsGeometry& geom);

/// Wave vector (2*pi/lambda) * [sin(t)cos(p), sin(t)sin(p), cos(t)].
Eigen::Vector3d wave_vector(const Direction& dir, double wavelength);

/// Spherical decomposition of a point seen from the surface center.
/// Convention: phi = 0 when the point lies on the z-axis.
std::pair<Direction, double> direction_and_distance(const CartesianPoint& p);

/// Samples the coverage area on a grid_ny x grid_nz grid, both interval
/// endpoints included (midpoint when a count is 1); x is fixed at the area
/// center. Ordering: y outer, z inner.
std::vector<CartesianPoint> coverage_grid(const CoverageArea& area);

} // namespace irsdet

#endif
