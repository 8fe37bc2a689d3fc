/// @file forms.hpp
/// @brief Matrix-valued differential forms as staggered cochains, with the
///        exterior derivative, codifferential, Laplacian, products and norms.
///
/// Storage convention: a k-form has one component per strictly increasing
/// k-subset of axes (identified by bitmask, listed in increasing mask order).
/// The component for mask m lives on the cells extending along the axes in m;
/// values are point samples of the form's coefficient (0-forms at vertices,
/// dx^a coefficients on a-edges, dx^a^dx^b coefficients on ab-faces).
///
/// The exterior derivative is the forward difference quotient, so d(d(.)) = 0
/// holds structurally. The codifferential is minus the transpose of the
/// coboundary matrix (grid mass factors are uniform and cancel), which makes
/// the integration-by-parts identity  l2_pair(d u, w) + l2_pair(u, codiff w)
/// = 0  exact for all arguments, not just compactly supported ones.
///
/// Products of staggered fields are colocated by per-cell multiplication
/// first, then averaging onto the target cell ("average of products"). With
/// that rule two Leibniz identities hold exactly at interior vertices:
///   codiff(U*A) - inner(d U, A) = U * codiff(A)
///   laplacian(F*G) = laplacian(F)*G + F*laplacian(G) + 2 inner(dF, dG)
/// which is what keeps the solver's conservation checks at round-off level.

#pragma once

#include <vector>

#include "gaugelift/grid.hpp"

namespace gaugelift {

struct MatrixForm {
    Grid grid;
    int degree = 0;  // 0 .. grid.n
    int fiber = 1;   // N

    /// One flat array per component; component c covers
    /// grid.cell_count(mask(c)) cells of fiber*fiber doubles, row-major.
    std::vector<std::vector<double>> comp;

    MatrixForm() = default;
    static MatrixForm zeros(const Grid& g, int degree, int fiber);

    /// Axis bitmasks of the components of a degree-k form in dimension n,
    /// in increasing mask order (== lexicographic multi-index order).
    static std::vector<int> component_masks(int n, int degree);

    int ncomp() const { return static_cast<int>(comp.size()); }
    int mask_of(int c) const;
    /// Component index for an axis bitmask (-1 if absent).
    int comp_of_mask(int m) const;

    double* at(int c, std::size_t cell);
    const double* at(int c, std::size_t cell) const;
    double* at(int c, const Coord& coord);
    const double* at(int c, const Coord& coord) const;

    bool same_layout(const MatrixForm& o) const;
};

// ---- linear structure ----------------------------------------------------
MatrixForm add(const MatrixForm& a, const MatrixForm& b);
MatrixForm sub(const MatrixForm& a, const MatrixForm& b);
MatrixForm scale(const MatrixForm& a, double s);
/// y += s * x
void axpy(MatrixForm& y, double s, const MatrixForm& x);
/// Per-cell matrix transpose.
MatrixForm transpose_form(const MatrixForm& a);
/// Per-cell left multiplication by a constant N x N matrix (row-major).
MatrixForm lmul_const(const std::vector<double>& m, const MatrixForm& a);
/// Per-cell right multiplication by a constant N x N matrix (row-major).
MatrixForm rmul_const(const MatrixForm& a, const std::vector<double>& m);

// ---- calculus ------------------------------------------------------------
/// Exterior derivative (forward difference quotient). Requires degree < n.
MatrixForm ext_d(const MatrixForm& w);
/// Codifferential: minus the transpose coboundary. Requires degree >= 1.
MatrixForm codiff(const MatrixForm& w);
/// Hodge Laplacian d codiff + codiff d (the codiff d part alone for 0-forms).
/// Equals the (2n+1)-point second-difference stencil on 0-forms.
MatrixForm laplacian(const MatrixForm& w);

// ---- products ------------------------------------------------------------
/// Pointwise product of a vertex 0-form with a k-form: the 0-form is averaged
/// over the cell's corners, multiplied from the left (u * w) per cell.
MatrixForm lmul_vertex(const MatrixForm& u, const MatrixForm& w);
/// Same with the 0-form on the right (w * u).
MatrixForm rmul_vertex(const MatrixForm& w, const MatrixForm& u);

/// Wedge product with matrix multiplication on the fibers. Supported degree
/// pairs: (0,k), (k,0) for k <= 2 and (1,1).
MatrixForm wedge(const MatrixForm& a, const MatrixForm& b);

/// Pointwise inner product of two equal-degree forms, colocated at vertices:
/// sum over components of (per-cell matrix product a_c * b_c) averaged over
/// the cells incident to the vertex. Returns a 0-form.
MatrixForm inner(const MatrixForm& a, const MatrixForm& b);

// ---- pairings and norms --------------------------------------------------
/// L^2 pairing h^n * sum over cells of tr(a_c^T b_c).
double l2_pair(const MatrixForm& a, const MatrixForm& b);

/// L^p norm over cells at least `margin` layers inside the boundary:
/// ( h^n * sum |value|_F^p )^(1/p).
double lp_norm(const MatrixForm& w, double p, int margin = 0);
/// L^p norm of the componentwise forward difference quotients (both cells of
/// each difference restricted to the margin).
double grad_lp_norm(const MatrixForm& w, double p, int margin = 0);
/// Max Frobenius norm over cells within the margin.
double linf_norm(const MatrixForm& w, int margin = 0);

struct NormReport {
    double lp = 0.0;     // L^p of values
    double w1p = 0.0;    // lp + grad_lp
    double combo = 0.0;  // L^{2p} of values + L^p of ext_d (degree < n)
};
NormReport norms(const MatrixForm& w, double p, int margin = 0);

// ---- boundary helpers ------------------------------------------------------
/// Zero every cell whose closure touches the box boundary (vertices on the
/// boundary for 0-forms).
void zero_boundary(MatrixForm& w);
double boundary_linf(const MatrixForm& w);

}  // namespace gaugelift
