/// @file regularity.hpp
/// @brief Gauge transformation of connections, the divergence-free companion
///        1-form, curvature, and refinement-based smoothness metrics.
///
/// "Smoothness" of a sampled field is measured, not proven: the growth
/// exponent of the difference-quotient L^p norm across refinement levels is
/// the computable shadow of W^{1,p} membership (exponent ~ 0 for fields with
/// p-integrable gradient, (p-1)/p for a gradient jump across a hyperplane).
/// All regularity metrics evaluate on a fixed interior subdomain (two cell
/// layers of the base grid, scaled with refinement so the physical region
/// never changes) to stay clear of the boundary layer induced by the
/// solver's Dirichlet data.

#pragma once

#include <vector>

#include "gaugelift/forms.hpp"
#include "gaugelift/gauge.hpp"
#include "gaugelift/solver.hpp"
#include "gaugelift/synth.hpp"

namespace gaugelift {

/// U^{-1} dU colocated at edges: corner-averaged inverse times ext_d(U).
MatrixForm u_inv_du(const MatrixForm& U, const MatrixForm& Uinv);

/// A_t = A - U^{-1} dU, the 1-form that is divergence-free at a solution.
MatrixForm a_tilde_prime(const MatrixForm& A, const MatrixForm& U, const MatrixForm& Uinv);
MatrixForm a_tilde_prime(const MatrixForm& A, const MatrixForm& U);

/// Interior L^p norm of codiff(A_t), margin 1.
double coulomb_residual(const MatrixForm& A_t, double p);

/// The transformation law A |-> U A U^{-1} - dU U^{-1}, assembled per edge
/// with corner-averaged gauge factors. Throws if U fails the group
/// membership test at tol.
MatrixForm gauge_transform(const MatrixForm& A, const MatrixForm& U, const Signature& sig,
                           double tol = 1e-6);

/// U A_t U^{-1} per edge: the optimal-gauge connection. Agrees with
/// gauge_transform(A, U) to O(h) when A_t = A - U^{-1}dU. Throws on a group
/// membership defect above tol.
MatrixForm optimal_connection(const MatrixForm& U, const MatrixForm& A_t, const Signature& sig,
                              double tol = 1e-6);

/// F = ext_d(A) + A ^ A.
MatrixForm curvature(const MatrixForm& A);

struct SmoothnessLevel {
    int shape = 0;
    double h = 0.0;
    double value_norm = 0.0;   // |A|_{L^{2p}} on the fixed interior region
    double grad_norm = 0.0;    // |grad_h A|_{L^p} on the fixed interior region
    double curl_norm = 0.0;    // |ext_d A|_{L^p} on the fixed interior region
    double local_slope = 0.0;  // log(grad ratio) / log(h ratio) vs previous level
    double coulomb = 0.0;      // solver coulomb residual (full pipeline only)
};

struct SmoothnessReport {
    std::vector<SmoothnessLevel> levels;  // coarse to fine (decreasing h)
    double growth_exponent = 0.0;         // LSQ slope of log(grad_norm) vs log(1/h)
    bool full_pipeline = false;
    double epsilon = 0.0;  // shared solver epsilon (full pipeline only)
};

/// Measures the field's refinement behavior over `levels` grids obtained by
/// repeatedly refining `base`. In full-pipeline mode each level runs the
/// gauge solve and measures the transformed connection; the solver epsilon
/// is resolved once on the coarsest level and reused on the finer ones so
/// the per-level norms are comparable. Throws on solver divergence.
SmoothnessReport smoothness_metric(const FieldSpec& field, const Grid& base, int levels,
                                   double p, bool full_pipeline,
                                   const SolverConfig* solver_cfg = nullptr);

}  // namespace gaugelift
