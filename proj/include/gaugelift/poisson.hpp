/// @file poisson.hpp
/// @brief Dirichlet Poisson solver for matrix-valued vertex 0-forms.
///
/// Solves  laplacian(u) = f  in the interior with u = bc on the boundary
/// vertices, by conjugate gradients on the (SPD) negated vertex Laplacian.
/// The matvec reproduces codiff(ext_d(.)) exactly, so residuals measured with
/// the cochain operators agree with the solver's own to round-off.

#pragma once

#include <cstdint>

#include "gaugelift/forms.hpp"

namespace gaugelift {

struct PoissonStats {
    bool converged = false;
    int iterations = 0;
    double rel_residual = 0.0;  // achieved |r| / |b|
};

/// f and bc are vertex 0-forms with the same fiber. Returns u (same layout):
/// u = bc on boundary vertices, interior solves the Poisson equation to a
/// relative CG residual of tol. max_iter < 0 picks a grid-based default.
PoissonStats solve_dirichlet(const MatrixForm& f, const MatrixForm& bc, MatrixForm& u,
                             double tol = 1e-12, int max_iter = -1);

/// Sampled proxy for the elliptic estimate constant: max over `samples`
/// random smooth problems of |u|_W1p / (|f|_Lp + |u0|_W1p).
double estimate_elliptic_constant(const Grid& g, double p, int samples, std::uint64_t seed);

}  // namespace gaugelift
