#include "gaugelift/poisson.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaugelift/rng.hpp"

namespace gaugelift {

namespace {

/// y = -laplacian(x) on interior vertices with x read as 0 on the boundary;
/// y = 0 on boundary vertices. Arithmetic mirrors codiff(ext_d(.)) so the two
/// agree bit-for-bit on zero-boundary fields.
void neg_laplacian_masked(const Grid& g, const std::vector<std::uint8_t>& bdry, int nn,
                          const std::vector<double>& x, std::vector<double>& y) {
    const double inv_h = 1.0 / g.h;
    const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(g.vertex_count());
    std::size_t stride[kMaxDim] = {1, 1, 1};
    for (int a = 1; a < g.n; ++a) stride[a] = stride[a - 1] * static_cast<std::size_t>(g.shape);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nv; ++i) {
        double* yp = y.data() + static_cast<std::size_t>(i) * nn;
        if (bdry[static_cast<std::size_t>(i)]) {
            for (int e = 0; e < nn; ++e) yp[e] = 0.0;
            continue;
        }
        const double* xv = x.data() + static_cast<std::size_t>(i) * nn;
        for (int e = 0; e < nn; ++e) yp[e] = 0.0;
        for (int a = 0; a < g.n; ++a) {
            const std::size_t up = static_cast<std::size_t>(i) + stride[a];
            const std::size_t dn = static_cast<std::size_t>(i) - stride[a];
            const double* xu = bdry[up] ? nullptr : x.data() + up * nn;
            const double* xd = bdry[dn] ? nullptr : x.data() + dn * nn;
            for (int e = 0; e < nn; ++e) {
                const double hi = ((xu ? xu[e] : 0.0) - xv[e]) * inv_h;
                const double lo = (xv[e] - (xd ? xd[e] : 0.0)) * inv_h;
                // minus (d/dx_a second difference), accumulated like codiff(ext_d)
                yp[e] -= inv_h * hi;
                yp[e] += inv_h * lo;
            }
        }
    }
}

/// Serial fixed-order dot product over interior vertices.
double dot_interior(const std::vector<std::uint8_t>& bdry, int nn, const std::vector<double>& a,
                    const std::vector<double>& b) {
    double s = 0.0;
    const std::size_t nv = bdry.size();
    for (std::size_t i = 0; i < nv; ++i) {
        if (bdry[i]) continue;
        const double* ap = a.data() + i * nn;
        const double* bp = b.data() + i * nn;
        for (int e = 0; e < nn; ++e) s += ap[e] * bp[e];
    }
    return s;
}

}  // namespace

PoissonStats solve_dirichlet(const MatrixForm& f, const MatrixForm& bc, MatrixForm& u, double tol, int max_iter) {
    if (f.degree != 0 || bc.degree != 0) throw std::invalid_argument("solve_dirichlet: expected 0-forms");
    if (!f.same_layout(bc)) throw std::invalid_argument("solve_dirichlet: f/bc layout mismatch");
    const Grid& g = f.grid;
    const int nn = f.fiber * f.fiber;
    const std::size_t nv = g.vertex_count();
    const std::vector<std::uint8_t> bdry = g.boundary_mask();
    const double inv_h2 = 1.0 / (g.h * g.h);
    if (max_iter < 0) max_iter = 20 * g.shape * g.shape + 200;

    // right-hand side of the SPD system: b = -f + (boundary data folded in)
    std::vector<double> b(nv * static_cast<std::size_t>(nn), 0.0);
    std::size_t stride[kMaxDim] = {1, 1, 1};
    for (int a = 1; a < g.n; ++a) stride[a] = stride[a - 1] * static_cast<std::size_t>(g.shape);
    for (std::size_t i = 0; i < nv; ++i) {
        if (bdry[i]) continue;
        double* bp = b.data() + i * nn;
        const double* fp = f.at(0, i);
        for (int e = 0; e < nn; ++e) bp[e] = -fp[e];
        for (int a = 0; a < g.n; ++a) {
            for (int dir = -1; dir <= 1; dir += 2) {
                const std::size_t nb = dir > 0 ? i + stride[a] : i - stride[a];
                if (!bdry[nb]) continue;
                const double* bcv = bc.at(0, nb);
                for (int e = 0; e < nn; ++e) bp[e] += bcv[e] * inv_h2;
            }
        }
    }

    std::vector<double> x(nv * static_cast<std::size_t>(nn), 0.0);
    std::vector<double> r = b;
    std::vector<double> p = r;
    std::vector<double> ap(nv * static_cast<std::size_t>(nn), 0.0);

    PoissonStats stats;
    const double b2 = dot_interior(bdry, nn, b, b);
    double r2 = b2;
    if (b2 == 0.0) {
        stats.converged = true;
    } else {
        const double stop2 = tol * tol * b2;
        for (int it = 0; it < max_iter; ++it) {
            neg_laplacian_masked(g, bdry, nn, p, ap);
            const double pap = dot_interior(bdry, nn, p, ap);
            if (pap <= 0.0) break;  // should not happen for SPD
            const double alpha = r2 / pap;
            const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t k = 0; k < len; ++k) {
                x[static_cast<std::size_t>(k)] += alpha * p[static_cast<std::size_t>(k)];
                r[static_cast<std::size_t>(k)] -= alpha * ap[static_cast<std::size_t>(k)];
            }
            const double r2_new = dot_interior(bdry, nn, r, r);
            stats.iterations = it + 1;
            if (r2_new <= stop2) {
                stats.converged = true;
                r2 = r2_new;
                break;
            }
            const double beta = r2_new / r2;
            r2 = r2_new;
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t k = 0; k < len; ++k)
                p[static_cast<std::size_t>(k)] = r[static_cast<std::size_t>(k)] + beta * p[static_cast<std::size_t>(k)];
        }
    }
    stats.rel_residual = b2 > 0.0 ? std::sqrt(r2 / b2) : 0.0;

    // assemble u = boundary data + interior solution
    u = MatrixForm::zeros(g, 0, f.fiber);
    for (std::size_t i = 0; i < nv; ++i) {
        double* up = u.at(0, i);
        const double* src = bdry[i] ? bc.at(0, i) : x.data() + i * nn;
        for (int e = 0; e < nn; ++e) up[e] = src[e];
    }
    return stats;
}

double estimate_elliptic_constant(const Grid& g, double p, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("estimate_elliptic_constant: need at least one sample");
    SplitMix64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        // random smooth trigonometric fields for the source and boundary data
        double cf[3], cg[3];
        int kf[3][kMaxDim], kg[3][kMaxDim];
        for (int m = 0; m < 3; ++m) {
            cf[m] = rng.uniform(-1.0, 1.0);
            cg[m] = rng.uniform(-1.0, 1.0);
            for (int a = 0; a < g.n; ++a) {
                kf[m][a] = 1 + static_cast<int>(rng.below(3));
                kg[m][a] = 1 + static_cast<int>(rng.below(2));
            }
        }
        auto eval = [&](const double* c, const int k[3][kMaxDim], const std::array<double, kMaxDim>& x) {
            double v = 0.0;
            for (int m = 0; m < 3; ++m) {
                double t = c[m];
                for (int a = 0; a < g.n; ++a) t *= std::sin(M_PI * k[m][a] * x[a] + 0.3 * (m + 1));
                v += t;
            }
            return v;
        };
        MatrixForm f = MatrixForm::zeros(g, 0, 1);
        MatrixForm g0 = MatrixForm::zeros(g, 0, 1);
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            const auto x = g.position(g.vcoord(i));
            *f.at(0, i) = eval(cf, kf, x);
            *g0.at(0, i) = eval(cg, kg, x);
        }
        MatrixForm u;
        PoissonStats st = solve_dirichlet(f, g0, u, 1e-12);
        if (!st.converged) throw std::runtime_error("estimate_elliptic_constant: CG failed to converge");
        NormReport nu = norms(u, p);
        const double denom = lp_norm(f, p) + norms(g0, p).w1p;
        if (denom > 0.0) worst = std::max(worst, nu.w1p / denom);
    }
    return worst;
}

}  // namespace gaugelift
