#include "gaugelift/gauge.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "gaugelift/fiber.hpp"

namespace gaugelift {

Signature::Signature(int r_, int s_) : r(r_), s(s_) {
    if (r < 0 || s < 0 || r + s < 1) throw std::invalid_argument("signature: need r,s >= 0 and r+s >= 1");
}

std::vector<double> Signature::eta_matrix() const {
    const int n = N();
    std::vector<double> m(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + i)] = eta(i);
    return m;
}

static void check_fiber(const MatrixForm& U, const Signature& sig, const char* op) {
    if (U.fiber != sig.N()) throw std::invalid_argument(std::string(op) + ": fiber size does not match signature");
}

double group_defect(const MatrixForm& U, const Signature& sig) {
    check_fiber(U, sig, "group_defect");
    if (U.degree != 0) throw std::invalid_argument("group_defect: expected a 0-form");
    const int N = sig.N();
    const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(U.grid.vertex_count());
    std::vector<double> defect(static_cast<std::size_t>(nv), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nv; ++i) {
        ConstMatMap u(U.at(0, static_cast<std::size_t>(i)), N, N);
        MatX m(N, N);
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < N; ++q) {
                double v = 0.0;
                for (int k = 0; k < N; ++k) v += u(k, p) * sig.eta(k) * u(k, q);
                m(p, q) = v - (p == q ? sig.eta(p) : 0.0);
            }
        defect[static_cast<std::size_t>(i)] = m.norm();
    }
    double best = 0.0;
    for (double d : defect) best = std::max(best, d);
    return best;
}

double algebra_defect(const MatrixForm& w, const Signature& sig) {
    check_fiber(w, sig, "algebra_defect");
    const int N = sig.N();
    double best = 0.0;
    for (int c = 0; c < w.ncomp(); ++c) {
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(w.grid.cell_count(w.mask_of(c)));
        std::vector<double> defect(static_cast<std::size_t>(cells), 0.0);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i) {
            ConstMatMap x(w.at(c, static_cast<std::size_t>(i)), N, N);
            double f2 = 0.0;
            for (int p = 0; p < N; ++p)
                for (int q = 0; q < N; ++q) {
                    // (X^T eta + eta X)_pq = X_qp eta_q + eta_p X_pq
                    const double v = x(q, p) * sig.eta(q) + sig.eta(p) * x(p, q);
                    f2 += v * v;
                }
            defect[static_cast<std::size_t>(i)] = std::sqrt(f2);
        }
        for (double d : defect) best = std::max(best, d);
    }
    return best;
}

bool is_in_group(const MatrixForm& U, const Signature& sig, double tol) {
    return group_defect(U, sig) <= tol && det_defect(U) <= tol;
}

bool is_in_algebra(const MatrixForm& w, const Signature& sig, double tol) {
    return algebra_defect(w, sig) <= tol;
}

double det_defect(const MatrixForm& U) {
    if (U.degree != 0) throw std::invalid_argument("det_defect: expected a 0-form");
    const int N = U.fiber;
    const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(U.grid.vertex_count());
    std::vector<double> defect(static_cast<std::size_t>(nv), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nv; ++i) {
        ConstMatMap u(U.at(0, static_cast<std::size_t>(i)), N, N);
        defect[static_cast<std::size_t>(i)] = std::abs(u.determinant() - 1.0);
    }
    double best = 0.0;
    for (double d : defect) best = std::max(best, d);
    return best;
}

MatrixForm w_of(const MatrixForm& U, const Signature& sig) {
    check_fiber(U, sig, "w_of");
    if (U.degree != 0) throw std::invalid_argument("w_of: expected a 0-form");
    const int N = sig.N();
    MatrixForm r = MatrixForm::zeros(U.grid, 0, N);
    const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(U.grid.vertex_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nv; ++i) {
        ConstMatMap u(U.at(0, static_cast<std::size_t>(i)), N, N);
        MatMap out(r.at(0, static_cast<std::size_t>(i)), N, N);
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < N; ++q) {
                double v = 0.0;
                for (int k = 0; k < N; ++k) v += u(k, p) * sig.eta(k) * u(k, q);
                out(p, q) = v - (p == q ? sig.eta(p) : 0.0);
            }
    }
    return r;
}

MatrixForm group_inverse(const MatrixForm& U, const Signature& sig, double tol) {
    const double defect = group_defect(U, sig);
    if (defect > tol)
        throw std::invalid_argument("group_inverse: membership defect " + std::to_string(defect) + " exceeds tolerance");
    const int N = sig.N();
    MatrixForm r = MatrixForm::zeros(U.grid, 0, N);
    const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(U.grid.vertex_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nv; ++i) {
        ConstMatMap u(U.at(0, static_cast<std::size_t>(i)), N, N);
        MatMap out(r.at(0, static_cast<std::size_t>(i)), N, N);
        // eta U^T eta
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < N; ++q) out(p, q) = sig.eta(p) * u(q, p) * sig.eta(q);
    }
    return r;
}

MatrixForm pointwise_inverse(const MatrixForm& U) {
    if (U.degree != 0) throw std::invalid_argument("pointwise_inverse: expected a 0-form");
    const int N = U.fiber;
    MatrixForm r = MatrixForm::zeros(U.grid, 0, N);
    const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(U.grid.vertex_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nv; ++i) {
        ConstMatMap u(U.at(0, static_cast<std::size_t>(i)), N, N);
        fib(r.at(0, static_cast<std::size_t>(i)), N) = u.inverse();
    }
    return r;
}

MatrixForm invert_near_identity(const MatrixForm& v, double eps) {
    if (v.degree != 0) throw std::invalid_argument("invert_near_identity: expected a 0-form");
    const int N = v.fiber;
    const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(v.grid.vertex_count());
    // precondition: eps * max |v| < 1 so the Neumann inverse exists
    double vmax = linf_norm(v);
    if (!(eps * vmax < 1.0))
        throw std::invalid_argument("invert_near_identity: eps*|v| = " + std::to_string(eps * vmax) + " >= 1");
    MatrixForm r = MatrixForm::zeros(v.grid, 0, N);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nv; ++i) {
        ConstMatMap vm(v.at(0, static_cast<std::size_t>(i)), N, N);
        MatX W = MatX::Identity(N, N) + eps * vm;
        // (1 + eps v)^{-1} = 1 - eps u  =>  u = (1 - W^{-1}) / eps
        fib(r.at(0, static_cast<std::size_t>(i)), N) = (MatX::Identity(N, N) - W.inverse()) / eps;
    }
    return r;
}

MatrixForm exp_generator(const MatrixForm& phi, const std::vector<double>& G, const Signature& sig) {
    if (phi.degree != 0 || phi.fiber != 1) throw std::invalid_argument("exp_generator: phi must be a scalar 0-form");
    const int N = sig.N();
    if (static_cast<int>(G.size()) != N * N) throw std::invalid_argument("exp_generator: generator size mismatch");
    MatrixForm r = MatrixForm::zeros(phi.grid, 0, N);
    ConstMatMap g(G.data(), N, N);
    const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(phi.grid.vertex_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nv; ++i) {
        const double t = *phi.at(0, static_cast<std::size_t>(i));
        Eigen::MatrixXd m = t * Eigen::MatrixXd(g);
        Eigen::MatrixXd e = m.exp();
        fib(r.at(0, static_cast<std::size_t>(i)), N) = e;
    }
    return r;
}

std::vector<std::vector<double>> algebra_basis(const Signature& sig) {
    const int N = sig.N();
    std::vector<std::vector<double>> basis;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            std::vector<double> G(static_cast<std::size_t>(N * N), 0.0);
            G[static_cast<std::size_t>(i * N + j)] = 1.0;
            // same-sign pair: rotation generator; mixed pair: boost generator
            G[static_cast<std::size_t>(j * N + i)] = (sig.eta(i) == sig.eta(j)) ? -1.0 : 1.0;
            basis.push_back(std::move(G));
        }
    return basis;
}

MatrixForm identity_form(const Grid& g, int N) {
    MatrixForm r = MatrixForm::zeros(g, 0, N);
    const std::size_t nv = g.vertex_count();
    for (std::size_t i = 0; i < nv; ++i) {
        double* p = r.at(0, i);
        for (int d = 0; d < N; ++d) p[d * N + d] = 1.0;
    }
    return r;
}

}  // namespace gaugelift
