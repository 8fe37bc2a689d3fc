/// @file reference.hpp
/// @brief Plain serial reference implementations of the core cochain kernels.
///
/// These duplicate the operators in forms.hpp with straightforward nested
/// loops and no OpenMP. They exist so the parallel kernels can be checked
/// against an independently written path (tests require bit-identical
/// results) and as the baseline side of the kernel benchmark.

#pragma once

#include "gaugelift/forms.hpp"

namespace gaugelift::ref {

MatrixForm ext_d(const MatrixForm& w);
MatrixForm codiff(const MatrixForm& w);
MatrixForm laplacian(const MatrixForm& w);
MatrixForm lmul_vertex(const MatrixForm& u, const MatrixForm& w);
MatrixForm inner(const MatrixForm& a, const MatrixForm& b);
double l2_pair(const MatrixForm& a, const MatrixForm& b);
double lp_norm(const MatrixForm& w, double p, int margin = 0);

}  // namespace gaugelift::ref
