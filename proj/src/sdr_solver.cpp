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
//
// Interior-point solver for the max-min relaxation
//
//   max tau  s.t.  tau <= a_q^H W a_q  (q in [0,Q)),  diag(W) = 1,  W PSD.
//
// The free variable tau is eliminated by introducing slacks s_q >= 0 with
// a_q^H W a_q - s_q equal for all q, which yields a conic program in
// standard primal form over H+^U x R+^Q:
//
//   min <C, X>,  X = (W, s),  C = (-A_0, e_0)
//   s.t.  <E_u, W> = 1                          (u in [0,U))
//         <A_q - A_0, W> - s_q + s_0 = 0        (q in [1,Q))
//
// with tau = -<C, X> at the optimum. All constraint matrices are built from
// rank-one terms a a^H, so the Schur complement is assembled from squared
// moduli of Gram-type products, at O((U+Q)^2 U) per iteration.
//
// Search directions use Nesterov-Todd scaling with a Mehrotra-style
// predictor step that only sets the centering weight (no second-order
// corrector term); both directions reuse one Cholesky factor of the Schur
// complement.

#include "irsdet/designs.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace irsdet {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Hermitian inner product Re tr(A^H B); real for Hermitian pairs.
double hdot(const MatrixXcd& a, const MatrixXcd& b) {
    return a.conjugate().cwiseProduct(b).sum().real();
}

MatrixXcd hermitianize(const MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

struct Problem {
    MatrixXcd a; // U x Q scaled steering columns
    int u = 0;
    int q = 0;
    int m = 0; // U + Q - 1 linear constraints

    // A(X): constraint values for X = (W, s)
    VectorXd apply(const MatrixXcd& w, const VectorXd& s) const {
        VectorXd out(m);
        for (int i = 0; i < u; ++i)
            out(i) = w(i, i).real();
        if (q > 1) {
            const MatrixXcd wa = w * a;
            VectorXd tr(q);
            for (int j = 0; j < q; ++j)
                tr(j) = a.col(j).dot(wa.col(j)).real();
            for (int j = 1; j < q; ++j)
                out(u + j - 1) = tr(j) - tr(0) - s(j) + s(0);
        }
        return out;
    }

    // A^*(y): (Hermitian U x U, R^Q)
    void apply_adjoint(const VectorXd& y, MatrixXcd& psd, VectorXd& lp) const {
        psd = MatrixXcd::Zero(u, u);
        for (int i = 0; i < u; ++i)
            psd(i, i) = y(i);
        lp = VectorXd::Zero(q);
        if (q > 1) {
            VectorXd eta_full(q);
            eta_full(0) = 0.0;
            double eta_sum = 0.0;
            for (int j = 1; j < q; ++j) {
                eta_full(j) = y(u + j - 1);
                eta_sum += eta_full(j);
            }
            eta_full(0) = -eta_sum;
            psd += a * eta_full.asDiagonal() * a.adjoint();
            lp(0) = eta_sum;
            for (int j = 1; j < q; ++j)
                lp(j) = -eta_full(j);
        }
        psd = hermitianize(psd);
    }
};

struct ScalingNT {
    MatrixXcd g;       // NT scaling matrix for the PSD block, G Z G = W
    VectorXd g2_lp;    // x_i / z_i for the orthant block
    MatrixXcd z_inv;   // Z^{-1}, reused by the centering residual
};

ScalingNT compute_scaling(const MatrixXcd& w, const VectorXd& s, const MatrixXcd& z,
                          const VectorXd& zl) {
    ScalingNT sc;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es_x(hermitianize(w));
    if (es_x.info() != Eigen::Success)
        throw SolverError("sdr: eigendecomposition of the primal block failed", {});
    const VectorXd dx = es_x.eigenvalues();
    if (dx.minCoeff() <= 0.0)
        throw SolverError("sdr: primal iterate left the cone", {});
    const MatrixXcd x_half =
        es_x.eigenvectors() * dx.cwiseSqrt().asDiagonal() * es_x.eigenvectors().adjoint();

    Eigen::SelfAdjointEigenSolver<MatrixXcd> es_b(hermitianize(x_half * z * x_half));
    if (es_b.info() != Eigen::Success)
        throw SolverError("sdr: eigendecomposition of the scaled block failed", {});
    const VectorXd db = es_b.eigenvalues();
    if (db.minCoeff() <= 0.0)
        throw SolverError("sdr: dual iterate left the cone", {});
    const MatrixXcd b_quarter = es_b.eigenvectors() *
                                db.cwiseSqrt().cwiseInverse().asDiagonal() *
                                es_b.eigenvectors().adjoint();
    sc.g = hermitianize(x_half * b_quarter * x_half);

    // Z = X^{-1/2} B X^{-1/2}, so Z^{-1} = X^{1/2} B^{-1} X^{1/2}
    sc.z_inv = hermitianize(x_half * es_b.eigenvectors() * db.cwiseInverse().asDiagonal() *
                            es_b.eigenvectors().adjoint() * x_half);

    sc.g2_lp = s.cwiseQuotient(zl);
    return sc;
}

// Largest step alpha with X + alpha dX staying in the cone, capped at 1.
double max_step_psd(const MatrixXcd& x, const MatrixXcd& dx) {
    Eigen::LLT<MatrixXcd> llt(hermitianize(x));
    if (llt.info() != Eigen::Success)
        return 0.0;
    const MatrixXcd l = llt.matrixL();
    MatrixXcd y1 = l.triangularView<Eigen::Lower>().solve(dx);
    MatrixXcd y = l.triangularView<Eigen::Lower>().solve(y1.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitianize(y),
                                                Eigen::EigenvaluesOnly);
    const double lam = es.eigenvalues().minCoeff();
    return lam >= 0.0 ? 1.0 : std::min(1.0, -1.0 / lam);
}

double max_step_lp(const VectorXd& x, const VectorXd& dx) {
    double alpha = 1.0;
    for (int i = 0; i < x.size(); ++i)
        if (dx(i) < 0.0)
            alpha = std::min(alpha, -x(i) / dx(i));
    return alpha;
}

} // namespace

SdrSolution solve_sdr(const GainMatrixSet& gains, double tolerance) {
    const int u = gains.cell_count();
    const int q = gains.location_count();
    if (u < 1 || q < 1)
        throw std::invalid_argument("solve_sdr: empty gain set");
    if (!(tolerance > 0.0))
        throw std::invalid_argument("solve_sdr: tolerance must be positive");

    // Normalize so the largest constraint trace is one; tau scales back at
    // the end.
    double scale = 0.0;
    for (int j = 0; j < q; ++j)
        scale = std::max(scale, gains.effective_steering.col(j).squaredNorm());
    if (!(scale > 0.0))
        throw std::invalid_argument("solve_sdr: all steering vectors are zero");

    Problem prob;
    prob.a = gains.effective_steering / std::sqrt(scale);
    prob.u = u;
    prob.q = q;
    prob.m = u + q - 1;

    VectorXd b = VectorXd::Zero(prob.m);
    b.head(u).setOnes();
    const MatrixXcd c_psd = -prob.a.col(0) * prob.a.col(0).adjoint();
    VectorXd c_lp = VectorXd::Zero(q);
    c_lp(0) = 1.0;
    const double c_norm = std::sqrt(c_psd.squaredNorm() + c_lp.squaredNorm());
    const double b_norm = b.norm();
    const double nu = u + q; // barrier degree

    // Infeasible start at the cone identity.
    MatrixXcd w = MatrixXcd::Identity(u, u);
    VectorXd s = VectorXd::Ones(q);
    MatrixXcd z = MatrixXcd::Identity(u, u);
    VectorXd zl = VectorXd::Ones(q);
    VectorXd y = VectorXd::Zero(prob.m);

    const int max_iterations = 200;
    const double step_fraction = 0.99;
    const double tol_feas = std::max(1e-11, std::min(1e-8, tolerance));

    SdrDiagnostics diag;
    int stalled = 0;

    for (int iter = 0; iter < max_iterations; ++iter) {
        const VectorXd r_p = b - prob.apply(w, s);
        MatrixXcd at_psd;
        VectorXd at_lp;
        prob.apply_adjoint(y, at_psd, at_lp);
        const MatrixXcd r_d_psd = c_psd - at_psd - z;
        const VectorXd r_d_lp = c_lp - at_lp - zl;

        const double gap = hdot(w, z) + s.dot(zl);
        const double mu = gap / nu;
        const double pobj = hdot(c_psd, w) + c_lp.dot(s);
        const double dobj = b.dot(y);

        diag.iterations = iter;
        diag.primal_residual = r_p.norm() / (1.0 + b_norm);
        diag.dual_residual =
            std::sqrt(r_d_psd.squaredNorm() + r_d_lp.squaredNorm()) / (1.0 + c_norm);
        diag.relative_gap = gap / (1.0 + std::abs(pobj) + std::abs(dobj));
        diag.dual_bound = -dobj * scale;

        if (diag.relative_gap <= tolerance && diag.primal_residual <= tol_feas &&
            diag.dual_residual <= tol_feas)
            break;
        if (iter == max_iterations - 1)
            throw SolverError("sdr: iteration limit reached without convergence", diag);

        const ScalingNT sc = compute_scaling(w, s, z, zl);

        // Schur complement M_ij = <A_i, G A_j G> + lp scaling terms, built
        // from squared moduli of V^H G V over the generating vectors.
        const MatrixXcd ga = sc.g * prob.a;
        const MatrixXd s_ee = sc.g.cwiseAbs2();
        const MatrixXd s_ea = ga.cwiseAbs2();
        const MatrixXd s_aa = (prob.a.adjoint() * ga).cwiseAbs2();

        MatrixXd schur(prob.m, prob.m);
        schur.topLeftCorner(u, u) = s_ee;
        if (q > 1) {
            for (int j = 1; j < q; ++j) {
                schur.block(0, u + j - 1, u, 1) = s_ea.col(j) - s_ea.col(0);
                schur.block(u + j - 1, 0, 1, u) =
                    (s_ea.col(j) - s_ea.col(0)).transpose();
            }
            for (int j = 1; j < q; ++j)
                for (int k = 1; k < q; ++k)
                    schur(u + j - 1, u + k - 1) = s_aa(j, k) - s_aa(j, 0) - s_aa(0, k) +
                                                  s_aa(0, 0) + sc.g2_lp(0) +
                                                  (j == k ? sc.g2_lp(j) : 0.0);
        }

        Eigen::LDLT<MatrixXd> schur_fact(schur);
        if (schur_fact.info() != Eigen::Success)
            throw SolverError("sdr: Schur complement factorization failed", diag);

        // Shared direction computation for a given centering residual.
        auto solve_direction = [&](const MatrixXcd& r_c_psd, const VectorXd& r_c_lp,
                                   MatrixXcd& dw, VectorXd& ds, VectorXd& dy, MatrixXcd& dz,
                                   VectorXd& dzl) {
            const MatrixXcd xi_psd = r_c_psd - sc.g * r_d_psd * sc.g;
            const VectorXd xi_lp = r_c_lp - sc.g2_lp.cwiseProduct(r_d_lp);
            const VectorXd rhs = r_p - prob.apply(xi_psd, xi_lp);
            dy = schur_fact.solve(rhs);
            MatrixXcd ady_psd;
            VectorXd ady_lp;
            prob.apply_adjoint(dy, ady_psd, ady_lp);
            dz = r_d_psd - ady_psd;
            dzl = r_d_lp - ady_lp;
            dw = hermitianize(xi_psd + sc.g * ady_psd * sc.g);
            ds = xi_lp + sc.g2_lp.cwiseProduct(ady_lp);
        };

        // Predictor: pure affine direction fixes the centering weight.
        MatrixXcd dw_a, dz_a;
        VectorXd ds_a, dy_a, dzl_a;
        solve_direction(-w, -s, dw_a, ds_a, dy_a, dz_a, dzl_a);
        const double ap_aff =
            std::min(max_step_psd(w, dw_a), max_step_lp(s, ds_a));
        const double ad_aff =
            std::min(max_step_psd(z, dz_a), max_step_lp(zl, dzl_a));
        const double gap_aff = hdot(w + ap_aff * dw_a, z + ad_aff * dz_a) +
                               (s + ap_aff * ds_a).dot(zl + ad_aff * dzl_a);
        double sigma = std::pow(std::max(0.0, gap_aff / gap), 3.0);
        sigma = std::min(1.0, std::max(1e-10, sigma));

        // Combined centering + affine direction.
        const MatrixXcd r_c_psd = sigma * mu * sc.z_inv - w;
        const VectorXd r_c_lp = (sigma * mu) * zl.cwiseInverse() - s;
        MatrixXcd dw, dz;
        VectorXd ds, dy, dzl;
        solve_direction(r_c_psd, r_c_lp, dw, ds, dy, dz, dzl);

        const double alpha_p =
            step_fraction * std::min(max_step_psd(w, dw), max_step_lp(s, ds));
        const double alpha_d =
            step_fraction * std::min(max_step_psd(z, dz), max_step_lp(zl, dzl));

        w = hermitianize(w + alpha_p * dw);
        s += alpha_p * ds;
        y += alpha_d * dy;
        z = hermitianize(z + alpha_d * dz);
        zl += alpha_d * dzl;

        stalled = (alpha_p < 1e-7 && alpha_d < 1e-7) ? stalled + 1 : 0;
        if (stalled >= 3)
            throw SolverError("sdr: step lengths collapsed, no progress", diag);
    }

    // Polish: exact Hermitian symmetry and exact unit diagonal via the
    // congruence W <- D^{-1/2} W D^{-1/2}, which preserves semidefiniteness.
    MatrixXcd w_out = hermitianize(w);
    VectorXd d = w_out.diagonal().real();
    if (d.minCoeff() <= 0.0)
        throw SolverError("sdr: polished diagonal not positive", diag);
    const VectorXd d_isqrt = d.cwiseSqrt().cwiseInverse();
    w_out = d_isqrt.asDiagonal() * w_out * d_isqrt.asDiagonal();
    for (int i = 0; i < u; ++i)
        w_out(i, i) = 1.0;

    SdrSolution sol;
    sol.w_matrix = w_out;
    sol.diagnostics = diag;
    double tau = std::numeric_limits<double>::infinity();
    for (int j = 0; j < q; ++j) {
        const VectorXcd aj = gains.effective_steering.col(j);
        tau = std::min(tau, (aj.adjoint() * w_out * aj)(0, 0).real());
    }
    sol.tau = tau;
    return sol;
}

} // namespace irsdet
