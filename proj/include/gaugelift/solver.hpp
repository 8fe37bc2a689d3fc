/// @file solver.hpp
/// @brief The gauge-equation fixed-point solver and its diagnostics.
///
/// The solver looks for a gauge field U = 1 + eps*v, with v = 0 on the
/// boundary, satisfying the Poisson-type gauge equation
///
///     laplacian(U) = U codiff(A_eff) - (U^T eta)^{-1} <dU^T; eta dU>
///
/// for the scaled connection A_eff = eps * lambda * A. The nonlinearity is
/// quadratically small in eps, so for eps below a measurable bound the
/// iteration  laplacian(v_{k+1}) = source(v_k)  contracts geometrically.
/// Group membership of the limit (w = U^T eta U - eta = 0) is *verified*,
/// never imposed: no projection onto the group happens anywhere.
///
/// The first term of the source is assembled in divergence form,
/// codiff(U A) - <dU; A>, which agrees with U codiff(A) exactly at interior
/// vertices and keeps all residual evaluators consistent to round-off.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaugelift/forms.hpp"
#include "gaugelift/gauge.hpp"
#include "gaugelift/poisson.hpp"

namespace gaugelift {

struct SolverConfig {
    Signature sig{2, 0};
    double p = 4.0;            // Lebesgue exponent, must exceed n/2
    double epsilon = 0.5;      // perturbation scale in (0,1)
    bool auto_epsilon = true;  // replace epsilon by 0.9x the measured bound
    double tol_fix = 1e-11;    // stop when |v_k - v_{k-1}|_{W^{1,2p}} <= tol_fix
    double tol_res = 1e-8;     // acceptable final gauge-equation residual
    int max_iter = 60;
    double cg_tol = 1e-12;     // Poisson solve relative tolerance
    std::vector<double> lambda_schedule{0.25, 0.5, 0.75, 1.0};
    std::vector<double> X;     // constant algebra offset of the defect field; empty = 0
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on any violated invariant.
    void validate(int n) const;
};

/// One row of the iteration trace (norms are W^{1,2p} proxies, w_norm and
/// det_defect are pointwise maxima).
struct TraceRow {
    int k = 0;
    double v_norm = 0.0;
    double diff_norm = 0.0;     // |v_k - v_{k-1}|
    double contraction = 0.0;   // diff_k / diff_{k-1}, 0 while undefined
    double gauge_residual = 0.0;
    double w_norm = 0.0;
    double det_defect = 0.0;
};

/// Measured proxies for the constants controlling the contraction regime,
/// and the admissible-epsilon bound they induce.
struct MeasuredConstants {
    double c0 = 0.0;        // sup control: max |v|_inf / |v|_{W^{1,2p}}
    double c1 = 0.0;        // elliptic response: |v_2|_{W^{1,2p}} / |(A,dA)|
    double c2 = 0.0;        // contraction-model factor fitted from the trace
    double eps_bound = 0.0; // min(1/(4 M c1 c0), 1/(4 c1^2 M), 1/(4 c1 M (1+c1)))
};

struct SolveResult {
    bool converged = false;
    bool diverged = false;
    std::string message;  // failure guidance; empty on success
    int iterations = 0;
    double epsilon = 0.0;  // the value actually used
    double lambda = 1.0;

    MatrixForm U;          // 1 + eps v
    MatrixForm Uinv;       // pointwise inverse
    MatrixForm v;
    MatrixForm A_eff;      // eps * lambda * A: the connection U solves for
    MatrixForm A_coulomb;  // A_eff - Uinv dU (divergence-free at a solution)

    std::vector<TraceRow> trace;
    MeasuredConstants constants;

    // final diagnostics (interior L^p unless stated otherwise)
    double gauge_residual = 0.0;       // gauge equation at (U, A_eff)
    double connection_residual = 0.0;  // 1-form equation at A_coulomb
    double w_residual = 0.0;           // w-equation at w(U)
    double coulomb_residual = 0.0;     // |codiff(A_coulomb)|
    double alpha_norm = 0.0;           // consistency-defect field
    double w_norm = 0.0;               // |w(U)|_inf
    double det_defect = 0.0;           // max |det U - 1|
    double group_defect = 0.0;         // max |U^T eta U - eta|_F
    double max_late_contraction = 0.0; // max contraction ratio over k >= 3
    double u_norm = 0.0;               // |U|_{W^{1,2p}}
    double input_norm = 0.0;           // |A_lam|_{L^{2p}} + |d A_lam|_{L^p}
    double bound_ratio = 0.0;          // u_norm / input_norm
};

/// State threaded through iterate_step. v is the current iterate (zero on
/// the boundary at every k, bit-exact); u is the inverse part defined by
/// (1 + eps v)(1 - eps u) = 1.
struct IterateState {
    int k = 1;
    MatrixForm v;
    MatrixForm u;
    double diff_norm = 0.0;
    PoissonStats stats;
};

IterateState make_initial_state(const Grid& g, int fiber);

/// One fixed-point step: solves  laplacian(v') = source(state.v)  with zero
/// Dirichlet data. Throws on Poisson non-convergence or inversion failure.
IterateState iterate_step(const IterateState& state, const MatrixForm& A_lam,
                          const SolverConfig& cfg, double epsilon);

/// Full solve for the connection lambda * A. Runs the iteration to the
/// fixed-point tolerance, then evaluates every diagnostic of SolveResult.
SolveResult run_iteration(const MatrixForm& A, const SolverConfig& cfg, double lambda = 1.0);

// ---- residual evaluators (interior L^p norms, margin 1) --------------------
/// |laplacian(U) - [codiff(U A) - <dU;A>] + (U^T eta)^{-1}<dU^T; eta dU>|.
double gauge_equation_residual(const MatrixForm& U, const MatrixForm& A_eff,
                               const Signature& sig, double p);
/// |laplacian(A_t) - codiff(ext_d(A_eff)) + codiff(ext_d(Uinv) ^ ext_d(U))|.
double connection_equation_residual(const MatrixForm& A_t, const MatrixForm& U,
                                    const MatrixForm& Uinv, const MatrixForm& A_eff, double p);
/// |laplacian(w) - codiff(A)^T w - w codiff(A)| for w = U^T eta U - eta.
double w_equation_residual(const MatrixForm& U, const MatrixForm& A_eff,
                           const Signature& sig, double p);

/// The consistency-defect 0-form
///   alpha = (U^T eta)^{-1} <dU^T; eta dU> + <dU; A_eff - A_t> + U X,
/// which cancels to O(h) for group-valued U with A_t = A_eff - Uinv dU.
MatrixForm alpha_field(const MatrixForm& U, const MatrixForm& A_eff, const MatrixForm& A_t,
                       const Signature& sig, const std::vector<double>& X = {});

/// The quadratic form whose coercivity controls uniqueness of the w-equation:
///   B(w,v) = sum tr<dw^T; dv> + sum tr(w^T codiff(A) v + (w codiff(A))^T v).
/// Throws if w or v is nonzero on the boundary.
double bilinear_B(const MatrixForm& w, const MatrixForm& v, const MatrixForm& A);

// ---- lambda sweep ----------------------------------------------------------
struct LambdaRow {
    double lambda = 0.0;
    bool converged = false;
    int iterations = 0;
    double epsilon = 0.0;
    double w_norm = 0.0;           // |w(U_lambda)|_inf
    double gauge_residual = 0.0;
    double u_norm = 0.0;           // |U_lambda|_{W^{1,2p}}
};

struct LambdaSweepResult {
    std::vector<LambdaRow> rows;
    bool all_converged = false;
    /// max over adjacent schedule pairs of |U_i - U_j|_{W^{1,2p}} / |l_i - l_j|.
    double c3 = 0.0;
};

/// Runs run_iteration for every lambda in cfg.lambda_schedule with one shared
/// epsilon (resolved at the largest lambda), so the per-lambda gauge fields
/// are comparable.
LambdaSweepResult lambda_sweep(const MatrixForm& A, const SolverConfig& cfg);

// ---- spectrum probe --------------------------------------------------------
struct SpectrumResult {
    /// Ritz values of the probed operator, |.| descending (length = count,
    /// zero-padded if the Krylov basis collapses).
    std::vector<double> re, im;
    double spectral_radius = 0.0;
    bool zero_operator = false;
    /// For each lambda of the schedule, min_i |1/lambda - ritz_i|.
    std::vector<double> schedule_distance;
};

/// Subspace iteration on  w -> laplacian^{-1}(codiff(A)^T w + w codiff(A)),
/// restricted to zero-boundary symmetric matrix 0-forms (one Poisson solve
/// per application). Deterministic: seeded starts, fixed iteration count.
SpectrumResult spectrum_probe(const MatrixForm& A, const Signature& sig, int count,
                              const std::vector<double>& lambda_schedule, std::uint64_t seed,
                              double cg_tol = 1e-12, int iterations = 40);

}  // namespace gaugelift
