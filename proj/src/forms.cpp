#include "gaugelift/forms.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "gaugelift/fiber.hpp"

namespace gaugelift {

// ============================================================================
// layout
// ============================================================================

std::vector<int> MatrixForm::component_masks(int n, int degree) {
    std::vector<int> masks;
    for (int m = 0; m < (1 << n); ++m)
        if (std::popcount(static_cast<unsigned>(m)) == degree) masks.push_back(m);
    return masks;  // increasing mask order == lexicographic index order
}

MatrixForm MatrixForm::zeros(const Grid& g, int degree, int fiber) {
    if (degree < 0 || degree > g.n) throw std::invalid_argument("form: degree out of range");
    if (fiber < 1) throw std::invalid_argument("form: fiber size must be positive");
    MatrixForm w;
    w.grid = g;
    w.degree = degree;
    w.fiber = fiber;
    for (int m : component_masks(g.n, degree))
        w.comp.emplace_back(g.cell_count(m) * static_cast<std::size_t>(fiber * fiber), 0.0);
    return w;
}

int MatrixForm::mask_of(int c) const {
    return component_masks(grid.n, degree)[static_cast<std::size_t>(c)];
}

int MatrixForm::comp_of_mask(int m) const {
    auto masks = component_masks(grid.n, degree);
    for (std::size_t i = 0; i < masks.size(); ++i)
        if (masks[i] == m) return static_cast<int>(i);
    return -1;
}

double* MatrixForm::at(int c, std::size_t cell) {
    return comp[static_cast<std::size_t>(c)].data() + cell * static_cast<std::size_t>(fiber * fiber);
}
const double* MatrixForm::at(int c, std::size_t cell) const {
    return comp[static_cast<std::size_t>(c)].data() + cell * static_cast<std::size_t>(fiber * fiber);
}
double* MatrixForm::at(int c, const Coord& coord) { return at(c, grid.cindex(mask_of(c), coord)); }
const double* MatrixForm::at(int c, const Coord& coord) const { return at(c, grid.cindex(mask_of(c), coord)); }

bool MatrixForm::same_layout(const MatrixForm& o) const {
    return grid == o.grid && degree == o.degree && fiber == o.fiber;
}

// ============================================================================
// linear structure
// ============================================================================

static void check_same(const MatrixForm& a, const MatrixForm& b, const char* op) {
    if (!a.same_layout(b)) throw std::invalid_argument(std::string(op) + ": mismatched grid/degree/fiber");
}

MatrixForm add(const MatrixForm& a, const MatrixForm& b) {
    check_same(a, b, "add");
    MatrixForm r = a;
    for (int c = 0; c < r.ncomp(); ++c) {
        double* rp = r.comp[c].data();
        const double* bp = b.comp[c].data();
        const std::ptrdiff_t sz = static_cast<std::ptrdiff_t>(r.comp[c].size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < sz; ++i) rp[i] += bp[i];
    }
    return r;
}

MatrixForm sub(const MatrixForm& a, const MatrixForm& b) {
    check_same(a, b, "sub");
    MatrixForm r = a;
    for (int c = 0; c < r.ncomp(); ++c) {
        double* rp = r.comp[c].data();
        const double* bp = b.comp[c].data();
        const std::ptrdiff_t sz = static_cast<std::ptrdiff_t>(r.comp[c].size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < sz; ++i) rp[i] -= bp[i];
    }
    return r;
}

MatrixForm scale(const MatrixForm& a, double s) {
    MatrixForm r = a;
    for (auto& v : r.comp) {
        double* rp = v.data();
        const std::ptrdiff_t sz = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < sz; ++i) rp[i] *= s;
    }
    return r;
}

void axpy(MatrixForm& y, double s, const MatrixForm& x) {
    check_same(y, x, "axpy");
    for (int c = 0; c < y.ncomp(); ++c) {
        double* yp = y.comp[c].data();
        const double* xp = x.comp[c].data();
        const std::ptrdiff_t sz = static_cast<std::ptrdiff_t>(y.comp[c].size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < sz; ++i) yp[i] += s * xp[i];
    }
}

MatrixForm transpose_form(const MatrixForm& a) {
    MatrixForm r = a;
    const int N = a.fiber;
    for (int c = 0; c < r.ncomp(); ++c) {
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(a.grid.cell_count(a.mask_of(c)));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i) {
            const double* src = a.at(c, static_cast<std::size_t>(i));
            double* dst = r.at(c, static_cast<std::size_t>(i));
            for (int p = 0; p < N; ++p)
                for (int q = 0; q < N; ++q) dst[p * N + q] = src[q * N + p];
        }
    }
    return r;
}

MatrixForm lmul_const(const std::vector<double>& m, const MatrixForm& a) {
    const int N = a.fiber;
    if (static_cast<int>(m.size()) != N * N) throw std::invalid_argument("lmul_const: size mismatch");
    MatrixForm r = MatrixForm::zeros(a.grid, a.degree, N);
    ConstMatMap M(m.data(), N, N);
    for (int c = 0; c < r.ncomp(); ++c) {
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(a.grid.cell_count(a.mask_of(c)));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i)
            fib(r.at(c, static_cast<std::size_t>(i)), N) = M * fib(a.at(c, static_cast<std::size_t>(i)), N);
    }
    return r;
}

MatrixForm rmul_const(const MatrixForm& a, const std::vector<double>& m) {
    const int N = a.fiber;
    if (static_cast<int>(m.size()) != N * N) throw std::invalid_argument("rmul_const: size mismatch");
    MatrixForm r = MatrixForm::zeros(a.grid, a.degree, N);
    ConstMatMap M(m.data(), N, N);
    for (int c = 0; c < r.ncomp(); ++c) {
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(a.grid.cell_count(a.mask_of(c)));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i)
            fib(r.at(c, static_cast<std::size_t>(i)), N) = fib(a.at(c, static_cast<std::size_t>(i)), N) * M;
    }
    return r;
}

// ============================================================================
// calculus
// ============================================================================

/// (-1)^(number of axes of `mask` strictly below `axis`)
static double axis_sign(int axis, int mask) {
    int below = std::popcount(static_cast<unsigned>(mask & ((1 << axis) - 1)));
    return (below & 1) ? -1.0 : 1.0;
}

MatrixForm ext_d(const MatrixForm& w) {
    const Grid& g = w.grid;
    if (w.degree >= g.n) throw std::invalid_argument("ext_d: top-degree form");
    const int N = w.fiber;
    const int nn = N * N;
    MatrixForm r = MatrixForm::zeros(g, w.degree + 1, N);
    const double inv_h = 1.0 / g.h;

    for (int c = 0; c < r.ncomp(); ++c) {
        const int M = r.mask_of(c);
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(g.cell_count(M));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i) {
            Coord cc = g.ccoord(M, static_cast<std::size_t>(i));
            double* out = r.at(c, static_cast<std::size_t>(i));
            for (int a = 0; a < g.n; ++a) {
                if (!((M >> a) & 1)) continue;
                const int src_mask = M & ~(1 << a);
                const int sc = w.comp_of_mask(src_mask);
                const double s = axis_sign(a, src_mask) * inv_h;
                Coord up = cc;
                up[a] += 1;
                const double* whi = w.at(sc, up);
                const double* wlo = w.at(sc, cc);
                for (int e = 0; e < nn; ++e) out[e] += s * (whi[e] - wlo[e]);
            }
        }
    }
    return r;
}

MatrixForm codiff(const MatrixForm& w) {
    const Grid& g = w.grid;
    if (w.degree < 1) throw std::invalid_argument("codiff: degree must be >= 1");
    const int N = w.fiber;
    const int nn = N * N;
    MatrixForm r = MatrixForm::zeros(g, w.degree - 1, N);
    const double inv_h = 1.0 / g.h;

    for (int c = 0; c < r.ncomp(); ++c) {
        const int m = r.mask_of(c);
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(g.cell_count(m));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i) {
            Coord cc = g.ccoord(m, static_cast<std::size_t>(i));
            double* out = r.at(c, static_cast<std::size_t>(i));
            for (int a = 0; a < g.n; ++a) {
                if ((m >> a) & 1) continue;
                const int src_mask = m | (1 << a);
                const int sc = w.comp_of_mask(src_mask);
                const double s = axis_sign(a, m) * inv_h;
                // + w(cc) when cc is a valid src cell, - w(cc - e_a) when that is
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
        }
    }
    return r;
}

MatrixForm laplacian(const MatrixForm& w) {
    const int n = w.grid.n;
    if (w.degree == 0) return codiff(ext_d(w));
    if (w.degree == n) return ext_d(codiff(w));
    MatrixForm r = codiff(ext_d(w));
    MatrixForm dd = ext_d(codiff(w));
    axpy(r, 1.0, dd);
    return r;
}

// ============================================================================
// colocation and products
// ============================================================================

/// Average a 0-form over the corner vertices of a cell (2^k corners).
static void corner_average(const MatrixForm& u, int mask, const Coord& cc, double* out) {
    const Grid& g = u.grid;
    const int nn = u.fiber * u.fiber;
    for (int e = 0; e < nn; ++e) out[e] = 0.0;
    int count = 0;
    // iterate corners via sub-mask of `mask`
    for (int sub = mask;; sub = (sub - 1) & mask) {
        Coord vc = cc;
        for (int a = 0; a < g.n; ++a)
            if ((sub >> a) & 1) vc[a] += 1;
        const double* up = u.at(0, g.vindex(vc));
        for (int e = 0; e < nn; ++e) out[e] += up[e];
        ++count;
        if (sub == 0) break;
    }
    const double inv = 1.0 / static_cast<double>(count);
    for (int e = 0; e < nn; ++e) out[e] *= inv;
}

MatrixForm lmul_vertex(const MatrixForm& u, const MatrixForm& w) {
    if (u.degree != 0) throw std::invalid_argument("lmul_vertex: first argument must be a 0-form");
    if (u.grid != w.grid || u.fiber != w.fiber) throw std::invalid_argument("lmul_vertex: layout mismatch");
    const Grid& g = w.grid;
    const int N = w.fiber;
    MatrixForm r = MatrixForm::zeros(g, w.degree, N);
    for (int c = 0; c < r.ncomp(); ++c) {
        const int M = r.mask_of(c);
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(g.cell_count(M));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i) {
            Coord cc = g.ccoord(M, static_cast<std::size_t>(i));
            std::vector<double> avg(static_cast<std::size_t>(N * N));
            corner_average(u, M, cc, avg.data());
            fib(r.at(c, static_cast<std::size_t>(i)), N) =
                fib(avg.data(), N) * fib(w.at(c, static_cast<std::size_t>(i)), N);
        }
    }
    return r;
}

MatrixForm rmul_vertex(const MatrixForm& w, const MatrixForm& u) {
    if (u.degree != 0) throw std::invalid_argument("rmul_vertex: second argument must be a 0-form");
    if (u.grid != w.grid || u.fiber != w.fiber) throw std::invalid_argument("rmul_vertex: layout mismatch");
    const Grid& g = w.grid;
    const int N = w.fiber;
    MatrixForm r = MatrixForm::zeros(g, w.degree, N);
    for (int c = 0; c < r.ncomp(); ++c) {
        const int M = r.mask_of(c);
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(g.cell_count(M));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i) {
            Coord cc = g.ccoord(M, static_cast<std::size_t>(i));
            std::vector<double> avg(static_cast<std::size_t>(N * N));
            corner_average(u, M, cc, avg.data());
            fib(r.at(c, static_cast<std::size_t>(i)), N) =
                fib(w.at(c, static_cast<std::size_t>(i)), N) * fib(avg.data(), N);
        }
    }
    return r;
}

/// Edge components of a 1-form averaged onto vertices (one-sided at the
/// boundary). Returns one vertex array of N*N blocks per axis.
static std::vector<std::vector<double>> colocate_edges(const MatrixForm& w) {
    const Grid& g = w.grid;
    const int N = w.fiber;
    const int nn = N * N;
    std::vector<std::vector<double>> out(static_cast<std::size_t>(g.n));
    const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(g.vertex_count());
    for (int a = 0; a < g.n; ++a) {
        out[a].assign(static_cast<std::size_t>(nv) * nn, 0.0);
        const int c = w.comp_of_mask(1 << a);
        double* op = out[a].data();
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < nv; ++i) {
            Coord vc = g.vcoord(static_cast<std::size_t>(i));
            double* dst = op + static_cast<std::size_t>(i) * nn;
            int count = 0;
            if (vc[a] <= g.shape - 2) {
                const double* wp = w.at(c, vc);
                for (int e = 0; e < nn; ++e) dst[e] += wp[e];
                ++count;
            }
            if (vc[a] >= 1) {
                Coord dn = vc;
                dn[a] -= 1;
                const double* wp = w.at(c, dn);
                for (int e = 0; e < nn; ++e) dst[e] += wp[e];
                ++count;
            }
            const double inv = 1.0 / static_cast<double>(count);
            for (int e = 0; e < nn; ++e) dst[e] *= inv;
        }
    }
    return out;
}

MatrixForm wedge(const MatrixForm& a, const MatrixForm& b) {
    if (a.grid != b.grid || a.fiber != b.fiber) throw std::invalid_argument("wedge: layout mismatch");
    const Grid& g = a.grid;
    const int N = a.fiber;
    const int k = a.degree, l = b.degree;
    if (k + l > g.n) throw std::invalid_argument("wedge: degree overflow");

    if (k == 0 && l == 0) {
        MatrixForm r = MatrixForm::zeros(g, 0, N);
        const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(g.vertex_count());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < nv; ++i)
            fib(r.at(0, static_cast<std::size_t>(i)), N) =
                fib(a.at(0, static_cast<std::size_t>(i)), N) * fib(b.at(0, static_cast<std::size_t>(i)), N);
        return r;
    }
    if (k == 0) return lmul_vertex(a, b);
    if (l == 0) return rmul_vertex(a, b);
    if (k == 1 && l == 1) {
        // colocate both 1-forms at vertices, multiply, average onto faces
        auto av = colocate_edges(a);
        auto bv = colocate_edges(b);
        MatrixForm r = MatrixForm::zeros(g, 2, N);
        const int nn = N * N;
        for (int c = 0; c < r.ncomp(); ++c) {
            const int M = r.mask_of(c);
            int ax = -1, bx = -1;  // the two axes of the face, ax < bx
            for (int t = 0; t < g.n; ++t) {
                if (!((M >> t) & 1)) continue;
                if (ax < 0)
                    ax = t;
                else
                    bx = t;
            }
            const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(g.cell_count(M));
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < cells; ++i) {
                Coord cc = g.ccoord(M, static_cast<std::size_t>(i));
                MatX acc = MatX::Zero(N, N);
                for (int da = 0; da <= 1; ++da)
                    for (int db = 0; db <= 1; ++db) {
                        Coord vc = cc;
                        vc[ax] += da;
                        vc[bx] += db;
                        const std::size_t vi = g.vindex(vc);
                        ConstMatMap Aa(av[ax].data() + vi * nn, N, N);
                        ConstMatMap Ab(av[bx].data() + vi * nn, N, N);
                        ConstMatMap Ba(bv[ax].data() + vi * nn, N, N);
                        ConstMatMap Bb(bv[bx].data() + vi * nn, N, N);
                        acc += Aa * Bb - Ab * Ba;
                    }
                fib(r.at(c, static_cast<std::size_t>(i)), N) = 0.25 * acc;
            }
        }
        return r;
    }
    throw std::invalid_argument("wedge: unsupported degree pair");
}

MatrixForm inner(const MatrixForm& a, const MatrixForm& b) {
    if (a.grid != b.grid || a.fiber != b.fiber || a.degree != b.degree)
        throw std::invalid_argument("inner: layout mismatch");
    const Grid& g = a.grid;
    const int N = a.fiber;
    const int nn = N * N;
    MatrixForm r = MatrixForm::zeros(g, 0, N);
    const std::ptrdiff_t nv = static_cast<std::ptrdiff_t>(g.vertex_count());

    if (a.degree == 0) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < nv; ++i)
            fib(r.at(0, static_cast<std::size_t>(i)), N) =
                fib(a.at(0, static_cast<std::size_t>(i)), N) * fib(b.at(0, static_cast<std::size_t>(i)), N);
        return r;
    }

    // degree 1 or 2: per incident cell products, averaged per component
    for (int c = 0; c < a.ncomp(); ++c) {
        const int M = a.mask_of(c);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < nv; ++i) {
            Coord vc = g.vcoord(static_cast<std::size_t>(i));
            MatX acc = MatX::Zero(N, N);
            int count = 0;
            // incident cells: lower corner vc - offsets over sub-masks of M
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
                double* dst = r.at(0, static_cast<std::size_t>(i));
                const double inv = 1.0 / static_cast<double>(count);
                for (int p = 0; p < nn; ++p) dst[p] += inv * acc.data()[p];
            }
        }
    }
    return r;
}

// ============================================================================
// pairings and norms
// ============================================================================

/// Deterministic reduction: per-cell terms computed in parallel into a
/// scratch buffer, then summed serially in index order so results do not
/// depend on the parallel schedule.
static double ordered_sum(const std::vector<double>& terms) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

double l2_pair(const MatrixForm& a, const MatrixForm& b) {
    check_same(a, b, "l2_pair");
    const Grid& g = a.grid;
    double total = 0.0;
    for (int c = 0; c < a.ncomp(); ++c) {
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(g.cell_count(a.mask_of(c)));
        std::vector<double> terms(static_cast<std::size_t>(cells));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i)
            terms[static_cast<std::size_t>(i)] =
                frob_dot(a.at(c, static_cast<std::size_t>(i)), b.at(c, static_cast<std::size_t>(i)), a.fiber);
        total += ordered_sum(terms);
    }
    return std::pow(g.h, g.n) * total;
}

static double pow_p(double frob2_val, double p) {
    if (p == 2.0) return frob2_val;
    return std::pow(frob2_val, 0.5 * p);
}

double lp_norm(const MatrixForm& w, double p, int margin) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const Grid& g = w.grid;
    if (margin > 0 && 2 * margin >= g.shape) throw std::invalid_argument("lp_norm: margin too large");
    double total = 0.0;
    for (int c = 0; c < w.ncomp(); ++c) {
        const int M = w.mask_of(c);
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(g.cell_count(M));
        std::vector<double> terms(static_cast<std::size_t>(cells), 0.0);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i) {
            Coord cc = g.ccoord(M, static_cast<std::size_t>(i));
            if (!g.cell_interior(M, cc, margin)) continue;
            terms[static_cast<std::size_t>(i)] = pow_p(frob2(w.at(c, static_cast<std::size_t>(i)), w.fiber), p);
        }
        total += ordered_sum(terms);
    }
    return std::pow(std::pow(g.h, g.n) * total, 1.0 / p);
}

double grad_lp_norm(const MatrixForm& w, double p, int margin) {
    if (p < 1.0) throw std::invalid_argument("grad_lp_norm: p must be >= 1");
    const Grid& g = w.grid;
    const int nn = w.fiber * w.fiber;
    const double inv_h = 1.0 / g.h;
    double total = 0.0;
    for (int c = 0; c < w.ncomp(); ++c) {
        const int M = w.mask_of(c);
        const Coord cs = g.cell_shape(M);
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(g.cell_count(M));
        std::vector<double> terms(static_cast<std::size_t>(cells), 0.0);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i) {
            Coord cc = g.ccoord(M, static_cast<std::size_t>(i));
            if (!g.cell_interior(M, cc, margin)) continue;
            double cell_term = 0.0;
            for (int a = 0; a < g.n; ++a) {
                Coord up = cc;
                up[a] += 1;
                if (up[a] > cs[a] - 1) continue;
                if (!g.cell_interior(M, up, margin)) continue;
                const double* lo = w.at(c, cc);
                const double* hi = w.at(c, up);
                double f2 = 0.0;
                for (int e = 0; e < nn; ++e) {
                    const double d = (hi[e] - lo[e]) * inv_h;
                    f2 += d * d;
                }
                cell_term += pow_p(f2, p);
            }
            terms[static_cast<std::size_t>(i)] = cell_term;
        }
        total += ordered_sum(terms);
    }
    return std::pow(std::pow(g.h, g.n) * total, 1.0 / p);
}

double linf_norm(const MatrixForm& w, int margin) {
    const Grid& g = w.grid;
    double best = 0.0;
    for (int c = 0; c < w.ncomp(); ++c) {
        const int M = w.mask_of(c);
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(g.cell_count(M));
        std::vector<double> terms(static_cast<std::size_t>(cells), 0.0);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i) {
            Coord cc = g.ccoord(M, static_cast<std::size_t>(i));
            if (!g.cell_interior(M, cc, margin)) continue;
            terms[static_cast<std::size_t>(i)] = frob2(w.at(c, static_cast<std::size_t>(i)), w.fiber);
        }
        for (double t : terms) best = std::max(best, t);
    }
    return std::sqrt(best);
}

NormReport norms(const MatrixForm& w, double p, int margin) {
    NormReport r;
    r.lp = lp_norm(w, p, margin);
    r.w1p = r.lp + grad_lp_norm(w, p, margin);
    r.combo = lp_norm(w, 2.0 * p, margin);
    if (w.degree < w.grid.n) r.combo += lp_norm(ext_d(w), p, margin);
    return r;
}

// ============================================================================
// boundary helpers
// ============================================================================

void zero_boundary(MatrixForm& w) {
    const Grid& g = w.grid;
    const int nn = w.fiber * w.fiber;
    for (int c = 0; c < w.ncomp(); ++c) {
        const int M = w.mask_of(c);
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(g.cell_count(M));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < cells; ++i) {
            Coord cc = g.ccoord(M, static_cast<std::size_t>(i));
            if (!g.cell_interior(M, cc, 1)) {
                double* p = w.at(c, static_cast<std::size_t>(i));
                for (int e = 0; e < nn; ++e) p[e] = 0.0;
            }
        }
    }
}

double boundary_linf(const MatrixForm& w) {
    const Grid& g = w.grid;
    double best = 0.0;
    for (int c = 0; c < w.ncomp(); ++c) {
        const int M = w.mask_of(c);
        const std::size_t cells = g.cell_count(M);
        for (std::size_t i = 0; i < cells; ++i) {
            Coord cc = g.ccoord(M, i);
            if (!g.cell_interior(M, cc, 1)) best = std::max(best, frob2(w.at(c, i), w.fiber));
        }
    }
    return std::sqrt(best);
}

}  // namespace gaugelift
