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

#ifndef IRSDET_DESIGNS_HPP
#define IRSDET_DESIGNS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "irsdet/channel.hpp"
#include "irsdet/geometry.hpp"
#include "irsdet/irs_model.hpp"
#include "irsdet/rng.hpp"

namespace irsdet {

/// Per-location effective steering vectors a_bar_q (columns). The channel
/// gain of a phase-shift vector w at location q is |a_bar_q^H w|^2, the
/// rank-one quadratic form w^H A_bar_q w.
struct GainMatrixSet {
    Eigen::MatrixXcd effective_steering; // U x Q
    std::vector<CartesianPoint> locations;

    int cell_count() const { return static_cast<int>(effective_steering.rows()); }
    int location_count() const { return static_cast<int>(effective_steering.cols()); }

    /// w^H A_bar_q w for one location.
    double quadratic_gain(const Eigen::Ref<const Eigen::VectorXcd>& w, int q) const;
};

struct SdrDiagnostics {
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double relative_gap = 0.0;
    double dual_bound = 0.0; // certified upper bound on the max-min optimum
};

/// Solution of the semidefinite relaxation: Hermitian W with unit diagonal,
/// the achieved max-min value tau, and solver diagnostics.
struct SdrSolution {
    Eigen::MatrixXcd w_matrix;
    double tau = 0.0;
    SdrDiagnostics diagnostics;
};

/// Requested phase-shift design.
struct DesignSpec {
    enum class Variant { Optimized, Linear, Quadratic };

    Variant variant = Variant::Linear;
    int tiles = 1;                    // linear only; must divide u_count_y
    int randomization_count = 3000;   // optimized only
    std::uint64_t seed = 1;           // optimized only

    void validate(const IrsGeometry& geom) const;
    std::string name() const; // "linear4", "quadratic", "optimized"
};

/// Builds the per-location effective steering vectors
/// a_bar_q = (lambda/(4 pi d_r)) (lambda/(4 pi d_q)) v(t_q, r) a(t_q, r).
GainMatrixSet build_gain_matrices(const std::vector<CartesianPoint>& grid,
                                  const RadioConfig& radio, const IrsGeometry& geom,
                                  const UnitCellFactorModel& ucf_model);

/// Solves  max tau  s.t.  tau <= w^H A_bar_q w for all q, diag(W) = 1,
/// W PSD  by a primal-dual interior-point method. The relative duality gap
/// certifies tau as an upper bound on the unit-modulus max-min optimum.
/// Throws SolverError on non-convergence.
SdrSolution solve_sdr(const GainMatrixSet& gains, double tolerance = 1e-6);

struct SolverError : std::runtime_error {
    SdrDiagnostics diagnostics;
    SolverError(const std::string& what, SdrDiagnostics diag)
        : std::runtime_error(what), diagnostics(diag) {}
};

/// Draws `count` vectors from CN(0, W), projects each entry to unit modulus
/// (zero entries map to 1) and returns the candidate with the best worst-case
/// gain. Draws use per-draw substreams of `seed`, so the result does not
/// depend on evaluation order.
PhaseShiftVector gaussian_randomization(const SdrSolution& solution, const GainMatrixSet& gains,
                                        int count, std::uint64_t seed);

/// Closed-form design: the surface rows are split into `tiles` bands along y,
/// the coverage area into as many y-slabs, and each band applies the constant
/// phase gradient that steers its slab center towards the BS.
PhaseShiftVector linear_tiled_design(int tiles, const CoverageArea& area,
                                     const RadioConfig& radio, const IrsGeometry& geom);

/// Closed-form design with a linearly varying phase gradient: per-location
/// target gradients are reduced to elementwise min/max over the grid and
/// interpolated affinely between the extreme cell indices.
PhaseShiftVector quadratic_design(const std::vector<CartesianPoint>& grid,
                                  const RadioConfig& radio, const IrsGeometry& geom);

/// Smallest gain over all locations and its argmin index.
std::pair<double, int> worst_case_gain(const PhaseShiftVector& w, const GainMatrixSet& gains);

/// Design file serialization: header lines (variant, parameters, scenario
/// hash, cell count) then one "u_x u_y phase" line per cell in flat order.
void save_design(std::ostream& out, const PhaseShiftVector& w, const IrsGeometry& geom,
                 const DesignSpec& spec, const std::string& scenario_hash);
PhaseShiftVector load_design(std::istream& in, const IrsGeometry& geom);

} // namespace irsdet

#endif
