/// @file gauge.hpp
/// @brief The structure group SO(r,s), its Lie algebra, and pointwise group
///        operations on vertex 0-forms.

#pragma once

#include <vector>

#include "gaugelift/forms.hpp"

namespace gaugelift {

/// Indefinite orthogonal signature (r pluses, s minuses), N = r + s.
struct Signature {
    int r = 0;
    int s = 0;

    Signature() = default;
    Signature(int r_, int s_);
    int N() const { return r + s; }
    double eta(int i) const { return i < r ? 1.0 : -1.0; }
    /// eta as a row-major N x N matrix.
    std::vector<double> eta_matrix() const;
    bool operator==(const Signature&) const = default;
};

/// max over vertices of |U^T eta U - eta|_F  (group membership defect).
double group_defect(const MatrixForm& U, const Signature& sig);
/// max over cells of |X^T eta + eta X|_F  (algebra membership defect).
double algebra_defect(const MatrixForm& w, const Signature& sig);
bool is_in_group(const MatrixForm& U, const Signature& sig, double tol = 1e-10);
bool is_in_algebra(const MatrixForm& w, const Signature& sig, double tol = 1e-10);

/// max over vertices of |det U - 1|.
double det_defect(const MatrixForm& U);

/// w = U^T eta U - eta, the group-membership residual field (vertex 0-form).
MatrixForm w_of(const MatrixForm& U, const Signature& sig);

/// Pointwise inverse eta U^T eta, valid for group elements. Throws if the
/// membership defect exceeds tol.
MatrixForm group_inverse(const MatrixForm& U, const Signature& sig, double tol = 1e-8);

/// Given v with eps*|v| < 1 pointwise, returns u with
/// (1 + eps v)(1 - eps u) = identity at every vertex.
MatrixForm invert_near_identity(const MatrixForm& v, double eps);

/// Pointwise general inverse of a vertex 0-form.
MatrixForm pointwise_inverse(const MatrixForm& U);

/// Pointwise matrix exponential exp(phi(x) * G) of a scalar vertex field
/// (fiber 1) against a constant generator G (row-major N x N).
MatrixForm exp_generator(const MatrixForm& phi, const std::vector<double>& G, const Signature& sig);

/// Basis of the Lie algebra so(r,s): rotations E_ij - E_ji within equal-sign
/// blocks, boosts E_ij + E_ji across blocks. Dimension N(N-1)/2.
std::vector<std::vector<double>> algebra_basis(const Signature& sig);

/// Identity vertex 0-form.
MatrixForm identity_form(const Grid& g, int N);

}  // namespace gaugelift
