#include "gaugelift/reference.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "gaugelift/fiber.hpp"

namespace gaugelift::ref {

namespace {

/// Visit every cell of a component serially, in flat index order.
template <typename F>
void for_each_cell(const Grid& g, int mask, F&& fn) {
    const Coord cs = g.cell_shape(mask);
    Coord c{0, 0, 0};
    std::size_t idx = 0;
    for (c[2] = 0; c[2] < cs[2]; ++c[2])
        for (c[1] = 0; c[1] < cs[1]; ++c[1])
            for (c[0] = 0; c[0] < cs[0]; ++c[0]) fn(c, idx++);
}

double axis_sign(int axis, int mask) {
    int below = std::popcount(static_cast<unsigned>(mask & ((1 << axis) - 1)));
    return (below & 1) ? -1.0 : 1.0;
}

double pow_p(double frob2_val, double p) {
    if (p == 2.0) return frob2_val;
    return std::pow(frob2_val, 0.5 * p);
}

}  // namespace

MatrixForm ext_d(const MatrixForm& w) {
    const Grid& g = w.grid;
    if (w.degree >= g.n) throw std::invalid_argument("ref::ext_d: top-degree form");
    const int nn = w.fiber * w.fiber;
    MatrixForm r = MatrixForm::zeros(g, w.degree + 1, w.fiber);
    const double inv_h = 1.0 / g.h;
    for (int c = 0; c < r.ncomp(); ++c) {
        const int M = r.mask_of(c);
        for_each_cell(g, M, [&](const Coord& cc, std::size_t i) {
            double* out = r.at(c, i);
            for (int a = 0; a < g.n; ++a) {
                if (!((M >> a) & 1)) continue;
                const int sc = w.comp_of_mask(M & ~(1 << a));
                const double s = axis_sign(a, M & ~(1 << a)) * inv_h;
                Coord up = cc;
                up[a] += 1;
                const double* whi = w.at(sc, up);
                const double* wlo = w.at(sc, cc);
                for (int e = 0; e < nn; ++e) out[e] += s * (whi[e] - wlo[e]);
            }
        });
    }
    return r;
}

MatrixForm codiff(const MatrixForm& w) {
    const Grid& g = w.grid;
    if (w.degree < 1) throw std::invalid_argument("ref::codiff: degree must be >= 1");
    const int nn = w.fiber * w.fiber;
    MatrixForm r = MatrixForm::zeros(g, w.degree - 1, w.fiber);
    const double inv_h = 1.0 / g.h;
    for (int c = 0; c < r.ncomp(); ++c) {
        const int m = r.mask_of(c);
        for_each_cell(g, m, [&](const Coord& cc, std::size_t i) {
            double* out = r.at(c, i);
            for (int a = 0; a < g.n; ++a) {
                if ((m >> a) & 1) continue;
                const int sc = w.comp_of_mask(m | (1 << a));
                const double s = axis_sign(a, m) * inv_h;
                if (cc[a] <= g.shape - 2) {
                    const double* wp = w.at(sc, cc);
                    for (int e = 0; e < nn; ++e) out[e] += s * wp[e];
                }
                if (cc[a] >= 1) {
                    Coord dn = cc;
                    dn[a] -= 1;
                    const double* wp = w.at(sc, dn);
                    for (int e = 0; e < nn; ++e) out[e] -= s * wp[e];
                }
            }
        });
    }
    return r;
}

MatrixForm laplacian(const MatrixForm& w) {
    const int n = w.grid.n;
    if (w.degree == 0) return ref::codiff(ref::ext_d(w));
    if (w.degree == n) return ref::ext_d(ref::codiff(w));
    MatrixForm r = ref::codiff(ref::ext_d(w));
    MatrixForm dd = ref::ext_d(ref::codiff(w));
    for (int c = 0; c < r.ncomp(); ++c)
        for (std::size_t i = 0; i < r.comp[c].size(); ++i) r.comp[c][i] += dd.comp[c][i];
    return r;
}

MatrixForm lmul_vertex(const MatrixForm& u, const MatrixForm& w) {
    if (u.degree != 0) throw std::invalid_argument("ref::lmul_vertex: first argument must be a 0-form");
    const Grid& g = w.grid;
    const int N = w.fiber;
    const int nn = N * N;
    MatrixForm r = MatrixForm::zeros(g, w.degree, N);
    std::vector<double> avg(static_cast<std::size_t>(nn));
    for (int c = 0; c < r.ncomp(); ++c) {
        const int M = r.mask_of(c);
        for_each_cell(g, M, [&](const Coord& cc, std::size_t i) {
            for (int e = 0; e < nn; ++e) avg[e] = 0.0;
            int count = 0;
            for (int sub = M;; sub = (sub - 1) & M) {
                Coord vc = cc;
                for (int a = 0; a < g.n; ++a)
                    if ((sub >> a) & 1) vc[a] += 1;
                const double* up = u.at(0, g.vindex(vc));
                for (int e = 0; e < nn; ++e) avg[e] += up[e];
                ++count;
                if (sub == 0) break;
            }
            const double inv = 1.0 / static_cast<double>(count);
            for (int e = 0; e < nn; ++e) avg[e] *= inv;
            fib(r.at(c, i), N) = fib(avg.data(), N) * fib(w.at(c, i), N);
        });
    }
    return r;
}

MatrixForm inner(const MatrixForm& a, const MatrixForm& b) {
    if (a.grid != b.grid || a.fiber != b.fiber || a.degree != b.degree)
        throw std::invalid_argument("ref::inner: layout mismatch");
    const Grid& g = a.grid;
    const int N = a.fiber;
    const int nn = N * N;
    MatrixForm r = MatrixForm::zeros(g, 0, N);

    if (a.degree == 0) {
        for_each_cell(g, 0, [&](const Coord&, std::size_t i) {
            fib(r.at(0, i), N) = fib(a.at(0, i), N) * fib(b.at(0, i), N);
        });
        return r;
    }

    for (int c = 0; c < a.ncomp(); ++c) {
        const int M = a.mask_of(c);
        for_each_cell(g, 0, [&](const Coord& vc, std::size_t vi) {
            MatX acc = MatX::Zero(N, N);
            int count = 0;
            for (int sub = M;; sub = (sub - 1) & M) {
                Coord cc = vc;
                bool ok = true;
                for (int t = 0; t < g.n && ok; ++t) {
                    if ((sub >> t) & 1) {
                        cc[t] -= 1;
                        if (cc[t] < 0) ok = false;
                    } else if ((M >> t) & 1) {
                        if (cc[t] > g.shape - 2) ok = false;
                    }
                }
                if (ok) {
                    const std::size_t ci = g.cindex(M, cc);
                    acc += fib(a.at(c, ci), N) * fib(b.at(c, ci), N);
                    ++count;
                }
                if (sub == 0) break;
            }
            if (count > 0) {
                double* dst = r.at(0, vi);
                const double inv = 1.0 / static_cast<double>(count);
                for (int p = 0; p < nn; ++p) dst[p] += inv * acc.data()[p];
            }
        });
    }
    return r;
}

double l2_pair(const MatrixForm& a, const MatrixForm& b) {
    if (!a.same_layout(b)) throw std::invalid_argument("ref::l2_pair: layout mismatch");
    const Grid& g = a.grid;
    double total = 0.0;
    for (int c = 0; c < a.ncomp(); ++c) {
        double comp_total = 0.0;
        for_each_cell(g, a.mask_of(c), [&](const Coord&, std::size_t i) {
            comp_total += frob_dot(a.at(c, i), b.at(c, i), a.fiber);
        });
        total += comp_total;
    }
    return std::pow(g.h, g.n) * total;
}

double lp_norm(const MatrixForm& w, double p, int margin) {
    const Grid& g = w.grid;
    double total = 0.0;
    for (int c = 0; c < w.ncomp(); ++c) {
        const int M = w.mask_of(c);
        double comp_total = 0.0;
        for_each_cell(g, M, [&](const Coord& cc, std::size_t i) {
            if (g.cell_interior(M, cc, margin)) comp_total += pow_p(frob2(w.at(c, i), w.fiber), p);
        });
        total += comp_total;
    }
    return std::pow(std::pow(g.h, g.n) * total, 1.0 / p);
}

}  // namespace gaugelift::ref
