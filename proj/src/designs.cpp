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

#include "irsdet/designs.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "irsdet/parallel.hpp"

namespace irsdet {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cell_phase(const CartesianPoint& cell, const Eigen::Vector3d& gradient) {
    return cell.x * gradient.x() + cell.y * gradient.y(); // cell z is 0
}

// Steering gradient that phase-matches a target direction pair.
Eigen::Vector3d target_gradient(const Direction& towards, const RadioConfig& radio) {
    return -(wave_vector(towards, radio.wavelength) +
             wave_vector(radio.bs_direction, radio.wavelength));
}

} // namespace

double GainMatrixSet::quadratic_gain(const Eigen::Ref<const Eigen::VectorXcd>& w, int q) const {
    if (w.size() != effective_steering.rows())
        throw std::invalid_argument("quadratic_gain: vector length mismatch");
    if (q < 0 || q >= location_count())
        throw std::out_of_range("quadratic_gain: location index");
    return std::norm(effective_steering.col(q).dot(w));
}

void DesignSpec::validate(const IrsGeometry& geom) const {
    geom.validate();
    if (variant == Variant::Linear) {
        if (tiles < 1 || geom.u_count_y % tiles != 0)
            throw std::invalid_argument("DesignSpec: tile count must divide the y cell count");
    }
    if (variant == Variant::Optimized && randomization_count < 1)
        throw std::invalid_argument("DesignSpec: randomization count must be >= 1");
}

std::string DesignSpec::name() const {
    switch (variant) {
    case Variant::Optimized:
        return "optimized";
    case Variant::Linear:
        return "linear" + std::to_string(tiles);
    case Variant::Quadratic:
        return "quadratic";
    }
    return "unknown";
}

GainMatrixSet build_gain_matrices(const std::vector<CartesianPoint>& grid,
                                  const RadioConfig& radio, const IrsGeometry& geom,
                                  const UnitCellFactorModel& ucf_model) {
    if (grid.empty())
        throw std::invalid_argument("build_gain_matrices: empty grid");
    radio.validate();
    geom.validate();

    GainMatrixSet set;
    set.locations = grid;
    set.effective_steering.resize(geom.cell_count(), static_cast<Eigen::Index>(grid.size()));
    const double bs_path = radio.wavelength / (4.0 * kPi * radio.bs_distance);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto [dir, dist] = direction_and_distance(grid[j]);
        const double device_path = radio.wavelength / (4.0 * kPi * dist);
        const double amplitude =
            bs_path * device_path * unit_cell_factor(dir, radio.bs_direction, ucf_model);
        set.effective_steering.col(static_cast<Eigen::Index>(j)) =
            amplitude * steering_vector(dir, radio.bs_direction, geom).entries;
    }
    return set;
}

PhaseShiftVector gaussian_randomization(const SdrSolution& solution, const GainMatrixSet& gains,
                                        int count, std::uint64_t seed) {
    const int u = gains.cell_count();
    if (count < 1)
        throw std::invalid_argument("gaussian_randomization: count must be >= 1");
    if (solution.w_matrix.rows() != u || solution.w_matrix.cols() != u)
        throw std::invalid_argument("gaussian_randomization: matrix size mismatch");

    // Covariance factor with solver-tolerance negative eigenvalues clipped.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(solution.w_matrix);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gaussian_randomization: eigendecomposition failed");
    const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXcd factor = es.eigenvectors() * clipped.cwiseSqrt().asDiagonal();

    std::vector<double> min_gain(count);
    Eigen::MatrixXcd candidates(u, count);
    parallel_for(count, [&](std::int64_t g) {
        RandomStream stream(derive_seed(seed, static_cast<std::uint64_t>(g)));
        Eigen::VectorXcd xi(u);
        for (int i = 0; i < u; ++i)
            xi(i) = stream.complex_normal(1.0);
        Eigen::VectorXcd nu = factor * xi;
        for (int i = 0; i < u; ++i) {
            const double mag = std::abs(nu(i));
            nu(i) = mag == 0.0 ? std::complex<double>(1.0, 0.0) : nu(i) / mag;
        }
        double worst = std::numeric_limits<double>::infinity();
        for (int q = 0; q < gains.location_count(); ++q)
            worst = std::min(worst, gains.quadratic_gain(nu, q));
        candidates.col(g) = nu;
        min_gain[static_cast<std::size_t>(g)] = worst;
    });

    int best = 0;
    for (int g = 1; g < count; ++g)
        if (min_gain[static_cast<std::size_t>(g)] > min_gain[static_cast<std::size_t>(best)])
            best = g;
    return PhaseShiftVector::from_coefficients(candidates.col(best));
}

PhaseShiftVector linear_tiled_design(int tiles, const CoverageArea& area,
                                     const RadioConfig& radio, const IrsGeometry& geom) {
    geom.validate();
    area.validate();
    radio.validate();
    if (tiles < 1 || geom.u_count_y % tiles != 0)
        throw std::invalid_argument("linear_tiled_design: tile count must divide the y cell count");

    // Slab centers of the K equal y-slabs of the coverage area.
    std::vector<Eigen::Vector3d> gradients(static_cast<std::size_t>(tiles));
    for (int k = 0; k < tiles; ++k) {
        CartesianPoint slab_center = area.center;
        slab_center.y = area.center.y - area.extent_y / 2.0 +
                        (k + 0.5) * area.extent_y / tiles;
        const Direction dir = direction_and_distance(slab_center).first;
        gradients[static_cast<std::size_t>(k)] = target_gradient(dir, radio);
    }

    const int rows_per_tile = geom.u_count_y / tiles;
    std::vector<double> phases(static_cast<std::size_t>(geom.cell_count()));
    for (int cell = 0; cell < geom.cell_count(); ++cell) {
        const CellIndex idx = unit_cell_index(cell, geom);
        // tile k owns rows u_y in {k*Uy/K - Uy/2 + 1, ..., (k+1)*Uy/K - Uy/2}
        const int k = (idx.y + geom.u_count_y / 2 - 1) / rows_per_tile;
        const CartesianPoint pos = unit_cell_position(idx, geom);
        phases[static_cast<std::size_t>(cell)] =
            cell_phase(pos, gradients[static_cast<std::size_t>(k)]);
    }
    return PhaseShiftVector::from_phases(phases);
}

PhaseShiftVector quadratic_design(const std::vector<CartesianPoint>& grid,
                                  const RadioConfig& radio, const IrsGeometry& geom) {
    geom.validate();
    radio.validate();
    if (grid.empty())
        throw std::invalid_argument("quadratic_design: empty grid");

    Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector3d hi = -lo;
    for (const auto& q : grid) {
        const Direction dir = direction_and_distance(q).first;
        const Eigen::Vector3d g = target_gradient(dir, radio);
        lo = lo.cwiseMin(g);
        hi = hi.cwiseMax(g);
    }

    // Affine gradient alpha*i + beta pinned to the elementwise extremes at
    // the lowest and highest cell indices.
    const int ix_min = -geom.u_count_x / 2 + 1, ix_max = geom.u_count_x / 2;
    const int iy_min = -geom.u_count_y / 2 + 1, iy_max = geom.u_count_y / 2;
    const double alpha_x = (hi.x() - lo.x()) / (ix_max - ix_min);
    const double beta_x = lo.x() - alpha_x * ix_min;
    const double alpha_y = (hi.y() - lo.y()) / (iy_max - iy_min);
    const double beta_y = lo.y() - alpha_y * iy_min;

    std::vector<double> phases(static_cast<std::size_t>(geom.cell_count()));
    for (int cell = 0; cell < geom.cell_count(); ++cell) {
        const CellIndex idx = unit_cell_index(cell, geom);
        const CartesianPoint pos = unit_cell_position(idx, geom);
        const Eigen::Vector3d grad(alpha_x * idx.x + beta_x, alpha_y * idx.y + beta_y, 0.0);
        phases[static_cast<std::size_t>(cell)] = cell_phase(pos, grad);
    }
    return PhaseShiftVector::from_phases(phases);
}

std::pair<double, int> worst_case_gain(const PhaseShiftVector& w, const GainMatrixSet& gains) {
    if (w.size() != gains.cell_count())
        throw std::invalid_argument("worst_case_gain: vector length mismatch");
    double worst = std::numeric_limits<double>::infinity();
    int argmin = 0;
    for (int q = 0; q < gains.location_count(); ++q) {
        const double gain = gains.quadratic_gain(w.coefficients, q);
        if (gain < worst) {
            worst = gain;
            argmin = q;
        }
    }
    return {worst, argmin};
}

void save_design(std::ostream& out, const PhaseShiftVector& w, const IrsGeometry& geom,
                 const DesignSpec& spec, const std::string& scenario_hash) {
    if (w.size() != geom.cell_count())
        throw std::invalid_argument("save_design: vector length mismatch");
    out << "# irsdet design\n";
    out << "# variant: " << spec.name() << "\n";
    switch (spec.variant) {
    case DesignSpec::Variant::Linear:
        out << "# tiles: " << spec.tiles << "\n";
        break;
    case DesignSpec::Variant::Optimized:
        out << "# randomizations: " << spec.randomization_count << "\n";
        out << "# seed: " << spec.seed << "\n";
        break;
    case DesignSpec::Variant::Quadratic:
        break;
    }
    out << "# scenario: " << scenario_hash << "\n";
    out << "# cells: " << geom.cell_count() << "\n";
    const auto phases = w.phases();
    char line[80];
    for (int cell = 0; cell < geom.cell_count(); ++cell) {
        const CellIndex idx = unit_cell_index(cell, geom);
        std::snprintf(line, sizeof(line), "%d %d %.17g\n", idx.x, idx.y,
                      phases[static_cast<std::size_t>(cell)]);
        out << line;
    }
}

PhaseShiftVector load_design(std::istream& in, const IrsGeometry& geom) {
    geom.validate();
    std::vector<double> phases;
    phases.reserve(static_cast<std::size_t>(geom.cell_count()));
    std::string line;
    int declared_cells = -1;
    int cell = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto pos = line.find("# cells:");
            if (pos == 0)
                declared_cells = std::atoi(line.c_str() + 8);
            continue;
        }
        std::istringstream fields(line);
        int ux = 0, uy = 0;
        double phase = 0.0;
        if (!(fields >> ux >> uy >> phase))
            throw std::invalid_argument("load_design: malformed cell line: " + line);
        if (cell >= geom.cell_count())
            throw std::invalid_argument("load_design: more cells than the surface holds");
        const CellIndex expected = unit_cell_index(cell, geom);
        if (ux != expected.x || uy != expected.y)
            throw std::invalid_argument("load_design: cell index out of order: " + line);
        phases.push_back(phase);
        ++cell;
    }
    if (declared_cells >= 0 && declared_cells != geom.cell_count())
        throw std::invalid_argument("load_design: cell count does not match the surface");
    if (cell != geom.cell_count())
        throw std::invalid_argument("load_design: truncated design file");
    return PhaseShiftVector::from_phases(phases);
}

} // namespace irsdet
