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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "irsdet/designs.hpp"
#include "irsdet/rng.hpp"
#include "oracles.hpp"

using namespace irsdet;

namespace {

GainMatrixSet random_gains(int cells, int locations, RandomStream& stream,
                           double magnitude = 1.0) {
    GainMatrixSet gains;
    gains.effective_steering.resize(cells, locations);
    for (int q = 0; q < locations; ++q) {
        for (int u = 0; u < cells; ++u)
            gains.effective_steering(u, q) = stream.complex_normal(1.0) * magnitude;
        gains.locations.push_back(CartesianPoint{0.0, 0.0, 1.0});
    }
    return gains;
}

GainMatrixSet uniform_modulus_gains(int cells, double magnitude, RandomStream& stream) {
    GainMatrixSet gains;
    gains.effective_steering.resize(cells, 1);
    for (int u = 0; u < cells; ++u)
        gains.effective_steering(u, 0) =
            std::polar(magnitude, (stream.uniform() - 0.5) * 6.28);
    gains.locations.push_back(CartesianPoint{0.0, 0.0, 1.0});
    return gains;
}

void check_solution_invariants(const SdrSolution& sol, const GainMatrixSet& gains,
                               double tol) {
    const int cells = gains.cell_count();
    REQUIRE(sol.w_matrix.rows() == cells);
    // unit diagonal
    for (int i = 0; i < cells; ++i)
        CHECK(std::abs(sol.w_matrix(i, i) - std::complex<double>(1.0, 0.0)) <= 1e-8);
    // positive semidefinite within tolerance
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sol.w_matrix);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8 * es.eigenvalues().cwiseAbs().maxCoeff());
    // tau does not exceed any constraint value
    for (int q = 0; q < gains.location_count(); ++q) {
        const Eigen::VectorXcd a = gains.effective_steering.col(q);
        const double value = (a.adjoint() * sol.w_matrix * a)(0, 0).real();
        CHECK(sol.tau <= value + 1e-8 * std::abs(sol.tau) + 1e-300);
    }
    CHECK(sol.diagnostics.relative_gap <= tol * 10.0);
}

} // namespace

TEST_CASE("single constraint: matched filter optimum c^2 U^2") {
    RandomStream stream(31);
    for (int cells : {1, 4, 16}) {
        const double magnitude = 0.3;
        const GainMatrixSet gains = uniform_modulus_gains(cells, magnitude, stream);
        const SdrSolution sol = solve_sdr(gains, 1e-9);
        const double expected = magnitude * magnitude * cells * cells;
        CHECK(sol.tau == doctest::Approx(expected).epsilon(1e-6));
        check_solution_invariants(sol, gains, 1e-9);

        // the relaxed optimum is attained by a rank-one matched beam: the
        // projected principal eigenvector achieves the same value
        const PhaseShiftVector w = gaussian_randomization(sol, gains, 1, 5);
        CHECK(worst_case_gain(w, gains).first == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("single cell: optimum is the weakest location") {
    RandomStream stream(32);
    const GainMatrixSet gains = random_gains(1, 6, stream, 0.7);
    const SdrSolution sol = solve_sdr(gains, 1e-9);
    double weakest = 1e300;
    for (int q = 0; q < 6; ++q)
        weakest = std::min(weakest, std::norm(gains.effective_steering(0, q)));
    CHECK(sol.tau == doctest::Approx(weakest).epsilon(1e-7));
    check_solution_invariants(sol, gains, 1e-9);
}

TEST_CASE("small instances against the exhaustive phase grid") {
    RandomStream stream(33);
    for (int instance = 0; instance < 5; ++instance) {
        const GainMatrixSet gains = random_gains(4, 2, stream);
        const SdrSolution sol = solve_sdr(gains, 1e-9);
        check_solution_invariants(sol, gains, 1e-9);

        const double brute = oracles::brute_force_max_min_gain(gains.effective_steering, 64);
        // relaxation upper-bounds the discrete optimum and stays within 2%
        // of it on these instances
        CHECK(sol.tau >= brute * (1.0 - 1e-7));
        CHECK(sol.tau <= brute * 1.02);
    }
}

TEST_CASE("solver output is independent of the data scale") {
    RandomStream stream(34);
    GainMatrixSet gains = random_gains(6, 8, stream);
    const SdrSolution base = solve_sdr(gains, 1e-8);
    GainMatrixSet scaled = gains;
    scaled.effective_steering *= 1e-7;
    const SdrSolution small = solve_sdr(scaled, 1e-8);
    CHECK(small.tau == doctest::Approx(base.tau * 1e-14).epsilon(1e-5));
    CHECK((small.w_matrix - base.w_matrix).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("duplicate locations do not break the Schur system") {
    RandomStream stream(35);
    GainMatrixSet gains = random_gains(4, 3, stream);
    gains.effective_steering.col(2) = gains.effective_steering.col(1);
    const SdrSolution sol = solve_sdr(gains, 1e-8);
    check_solution_invariants(sol, gains, 1e-8);
}

TEST_CASE("larger random instances satisfy the contract") {
    RandomStream stream(36);
    for (const auto& [cells, locations] :
         {std::pair{8, 20}, {2, 2}, {6, 1}, {16, 40}}) {
        const GainMatrixSet gains = random_gains(cells, locations, stream, 0.5);
        const SdrSolution sol = solve_sdr(gains, 1e-7);
        check_solution_invariants(sol, gains, 1e-7);
        // dual bound certifies tau from above
        CHECK(sol.diagnostics.dual_bound >=
              sol.tau * (1.0 - 10.0 * sol.diagnostics.relative_gap) - 1e-12);
    }
}

TEST_CASE("degenerate inputs are rejected") {
    GainMatrixSet empty;
    empty.effective_steering.resize(4, 0);
    CHECK_THROWS_AS(solve_sdr(empty), std::invalid_argument);

    GainMatrixSet zeros;
    zeros.effective_steering = Eigen::MatrixXcd::Zero(4, 2);
    zeros.locations = {CartesianPoint{0, 0, 1}, CartesianPoint{0, 0, 2}};
    CHECK_THROWS_AS(solve_sdr(zeros), std::invalid_argument);

    RandomStream stream(37);
    const GainMatrixSet gains = random_gains(4, 2, stream);
    CHECK_THROWS_AS(solve_sdr(gains, 0.0), std::invalid_argument);
}
