#include "gaugelift/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gaugelift/regularity.hpp"
#include "gaugelift/rng.hpp"

namespace gaugelift {

namespace {

double w12p_norm(const MatrixForm& x, double p) { return norms(x, 2.0 * p).w1p; }

/// U codiff(A) assembled in divergence form, codiff(U A) - <dU; A>, which
/// agrees with the plain product exactly at interior vertices.
MatrixForm source_div_form(const MatrixForm& U, const MatrixForm& A) {
    return sub(codiff(lmul_vertex(U, A)), inner(ext_d(U), A));
}

/// (U^T eta)^{-1} <a^T; eta b> as a vertex 0-form.
MatrixForm twisted_inner(const MatrixForm& U, const MatrixForm& a, const MatrixForm& b,
                         const Signature& sig) {
    const std::vector<double> eta = sig.eta_matrix();
    MatrixForm q = inner(transpose_form(a), lmul_const(eta, b));
    MatrixForm pinv = pointwise_inverse(transpose_form(lmul_const(eta, U)));
    return lmul_vertex(pinv, q);
}

}  // namespace

void SolverConfig::validate(int n) const {
    if (!(p > n / 2.0)) throw std::invalid_argument("config: p must exceed n/2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("config: epsilon must lie in (0,1)");
    if (!(tol_fix > 0.0) || !(tol_res > 0.0) || !(cg_tol > 0.0))
        throw std::invalid_argument("config: tolerances must be positive");
    if (max_iter < 2) throw std::invalid_argument("config: max_iter must be at least 2");
    if (lambda_schedule.empty()) throw std::invalid_argument("config: lambda schedule is empty");
    for (double l : lambda_schedule)
        if (!(l > 0.0 && l <= 1.0))
            throw std::invalid_argument("config: lambda values must lie in (0,1]");
    if (!std::is_sorted(lambda_schedule.begin(), lambda_schedule.end()))
        throw std::invalid_argument("config: lambda schedule must be sorted ascending");
    const int N = sig.N();
    if (!X.empty()) {
        if (static_cast<int>(X.size()) != N * N)
            throw std::invalid_argument("config: X must be an N x N matrix");
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (std::abs(X[static_cast<std::size_t>(j * N + i)] * sig.eta(j) +
                             sig.eta(i) * X[static_cast<std::size_t>(i * N + j)]) > 1e-10)
                    throw std::invalid_argument("config: X is not an algebra element");
    }
}

IterateState make_initial_state(const Grid& g, int fiber) {
    IterateState s;
    s.k = 1;
    s.v = MatrixForm::zeros(g, 0, fiber);
    s.u = MatrixForm::zeros(g, 0, fiber);
    return s;
}

IterateState iterate_step(const IterateState& state, const MatrixForm& A_lam,
                          const SolverConfig& cfg, double epsilon) {
    const Grid& g = A_lam.grid;
    const int N = A_lam.fiber;
    MatrixForm Uk = identity_form(g, N);
    axpy(Uk, epsilon, state.v);

    MatrixForm src = source_div_form(Uk, A_lam);
    if (linf_norm(state.v) > 0.0) {
        MatrixForm dv = ext_d(state.v);
        axpy(src, -epsilon, twisted_inner(Uk, dv, dv, cfg.sig));
    }

    MatrixForm bc = MatrixForm::zeros(g, 0, N);
    IterateState next;
    next.k = state.k + 1;
    next.stats = solve_dirichlet(src, bc, next.v, cfg.cg_tol);
    if (!next.stats.converged)
        throw std::runtime_error("iterate_step: Poisson solve did not reach tolerance");
    next.diff_norm = w12p_norm(sub(next.v, state.v), cfg.p);
    if (epsilon * linf_norm(next.v) >= 1.0)
        throw std::runtime_error("iterate_step: iterate escaped the invertible neighborhood");
    next.u = invert_near_identity(next.v, epsilon);
    return next;
}

SolveResult run_iteration(const MatrixForm& A, const SolverConfig& cfg, double lambda) {
    const Grid& g = A.grid;
    cfg.validate(g.n);
    const int N = cfg.sig.N();
    if (A.degree != 1 || A.fiber != N)
        throw std::invalid_argument("run_iteration: connection must be a degree-1 form with fiber N");
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("run_iteration: lambda must lie in (0,1]");

    SolveResult res;
    res.lambda = lambda;
    MatrixForm A_lam = scale(A, lambda);
    const double M = norms(A_lam, cfg.p).combo;
    res.input_norm = M;

    // Probe iterate: laplacian(v2) = codiff(A_lam) with zero data (the first
    // step is independent of epsilon since U_1 = 1, v_1 = 0). Its norms give
    // the measured elliptic and sup-control constants that pick epsilon.
    MatrixForm bc = MatrixForm::zeros(g, 0, N);
    MatrixForm v2;
    PoissonStats probe_stats = solve_dirichlet(codiff(A_lam), bc, v2, cfg.cg_tol);
    if (!probe_stats.converged) {
        res.diverged = true;
        res.message = "initial Poisson solve did not reach tolerance";
        return res;
    }
    const double v2n = w12p_norm(v2, cfg.p);
    double c0 = v2n > 0.0 ? linf_norm(v2) / v2n : 0.0;
    const double c1 = M > 0.0 ? v2n / M : 0.0;
    double c2 = 0.0;

    const double inf = std::numeric_limits<double>::infinity();
    const double b1 = (M > 0.0 && c1 > 0.0 && c0 > 0.0) ? 1.0 / (4.0 * M * c1 * c0) : inf;
    const double b2 = (M > 0.0 && c1 > 0.0) ? 1.0 / (4.0 * c1 * c1 * M) : inf;
    const double b3 = (M > 0.0 && c1 > 0.0) ? 1.0 / (4.0 * c1 * M * (1.0 + c1)) : inf;
    const double eps_bound = std::min({b1, b2, b3});
    const double eps = cfg.auto_epsilon ? std::clamp(0.9 * eps_bound, 0.05, 0.9) : cfg.epsilon;
    res.epsilon = eps;
    res.A_eff = scale(A_lam, eps);

    const MatrixForm ident = identity_form(g, N);
    {
        TraceRow r0;
        r0.k = 1;
        r0.gauge_residual = gauge_equation_residual(ident, res.A_eff, cfg.sig, cfg.p);
        res.trace.push_back(r0);
    }

    MatrixForm v_prev = MatrixForm::zeros(g, 0, N);
    MatrixForm v_cur = v2;
    double vnorm_prev = 0.0;
    double diff_prev = 0.0;
    double diff_cur = v2n;  // |v_2 - v_1| = |v_2|
    int increases = 0;
    int k = 2;
    bool converged = false;
    bool diverged = false;
    std::string message;

    while (true) {
        MatrixForm Uk = ident;
        axpy(Uk, eps, v_cur);

        TraceRow row;
        row.k = k;
        row.v_norm = w12p_norm(v_cur, cfg.p);
        row.diff_norm = diff_cur;
        row.contraction = (k >= 3 && diff_prev > 0.0) ? diff_cur / diff_prev : 0.0;
        row.gauge_residual = gauge_equation_residual(Uk, res.A_eff, cfg.sig, cfg.p);
        row.w_norm = linf_norm(w_of(Uk, cfg.sig));
        row.det_defect = det_defect(Uk);
        res.trace.push_back(row);

        if (row.v_norm > 0.0) c0 = std::max(c0, linf_norm(v_cur) / row.v_norm);

        if (!std::isfinite(diff_cur)) {
            diverged = true;
            message = "iteration produced non-finite values; lower epsilon or the amplitude";
            break;
        }
        if (diff_cur <= cfg.tol_fix) {
            converged = true;
            break;
        }
        if (k >= 3 && diff_cur > diff_prev) {
            if (++increases >= 3) {
                diverged = true;
                message = "difference norms grew for 3 consecutive steps; lower epsilon or the amplitude";
                break;
            }
        } else {
            increases = 0;
        }
        if (k >= cfg.max_iter) {
            message = "iteration cap reached before the fixed-point tolerance";
            break;
        }

        MatrixForm src = source_div_form(Uk, A_lam);
        if (row.v_norm > 0.0) {
            MatrixForm dv = ext_d(v_cur);
            axpy(src, -eps, twisted_inner(Uk, dv, dv, cfg.sig));
        }
        MatrixForm v_next;
        PoissonStats st = solve_dirichlet(src, bc, v_next, cfg.cg_tol);
        if (!st.converged) {
            diverged = true;
            message = "Poisson solve did not reach tolerance mid-iteration";
            break;
        }
        const double diff_next = w12p_norm(sub(v_next, v_cur), cfg.p);

        // contraction-model factor: diff_{k+1} <= eps c2 (M + C(k)) diff_k
        if (diff_cur > 0.0 && eps > 0.0) {
            const double Ck = (1.0 + eps * vnorm_prev) * (row.v_norm + vnorm_prev) + eps * row.v_norm;
            const double denom = eps * (M + Ck) * diff_cur;
            if (denom > 0.0 && std::isfinite(diff_next)) c2 = std::max(c2, diff_next / denom);
        }

        v_prev = std::move(v_cur);
        v_cur = std::move(v_next);
        vnorm_prev = row.v_norm;
        diff_prev = diff_cur;
        diff_cur = diff_next;
        ++k;
    }

    res.converged = converged;
    res.diverged = diverged;
    res.message = message;
    res.iterations = k;
    res.constants.c0 = c0;
    res.constants.c1 = c1;
    res.constants.c2 = c2;
    res.constants.eps_bound = eps_bound;
    for (const TraceRow& r : res.trace)
        if (r.k >= 3) res.max_late_contraction = std::max(res.max_late_contraction, r.contraction);

    res.v = std::move(v_cur);
    res.U = ident;
    axpy(res.U, eps, res.v);
    if (diverged || !std::isfinite(linf_norm(res.v))) return res;

    res.Uinv = pointwise_inverse(res.U);
    res.A_coulomb = a_tilde_prime(res.A_eff, res.U, res.Uinv);
    res.gauge_residual = gauge_equation_residual(res.U, res.A_eff, cfg.sig, cfg.p);
    res.connection_residual =
        connection_equation_residual(res.A_coulomb, res.U, res.Uinv, res.A_eff, cfg.p);
    res.w_residual = w_equation_residual(res.U, res.A_eff, cfg.sig, cfg.p);
    res.coulomb_residual = coulomb_residual(res.A_coulomb, cfg.p);
    res.alpha_norm = lp_norm(alpha_field(res.U, res.A_eff, res.A_coulomb, cfg.sig, cfg.X), cfg.p, 1);
    res.w_norm = linf_norm(w_of(res.U, cfg.sig));
    res.det_defect = det_defect(res.U);
    res.group_defect = group_defect(res.U, cfg.sig);
    res.u_norm = w12p_norm(res.U, cfg.p);
    res.bound_ratio = res.input_norm > 0.0 ? res.u_norm / res.input_norm : 0.0;
    return res;
}

// ============================================================================
// residual evaluators
// ============================================================================

double gauge_equation_residual(const MatrixForm& U, const MatrixForm& A_eff,
                               const Signature& sig, double p) {
    MatrixForm R = sub(laplacian(U), source_div_form(U, A_eff));
    MatrixForm dU = ext_d(U);
    R = add(R, twisted_inner(U, dU, dU, sig));
    return lp_norm(R, p, 1);
}

double connection_equation_residual(const MatrixForm& A_t, const MatrixForm& U,
                                    const MatrixForm& Uinv, const MatrixForm& A_eff, double p) {
    MatrixForm R = sub(laplacian(A_t), codiff(ext_d(A_eff)));
    R = add(R, codiff(wedge(ext_d(Uinv), ext_d(U))));
    return lp_norm(R, p, 1);
}

double w_equation_residual(const MatrixForm& U, const MatrixForm& A_eff,
                           const Signature& sig, double p) {
    MatrixForm w = w_of(U, sig);
    MatrixForm dA0 = codiff(A_eff);
    MatrixForm R = sub(laplacian(w),
                       add(lmul_vertex(transpose_form(dA0), w), rmul_vertex(w, dA0)));
    return lp_norm(R, p, 1);
}

MatrixForm alpha_field(const MatrixForm& U, const MatrixForm& A_eff, const MatrixForm& A_t,
                       const Signature& sig, const std::vector<double>& X) {
    MatrixForm dU = ext_d(U);
    MatrixForm a = twisted_inner(U, dU, dU, sig);
    a = add(a, inner(dU, sub(A_eff, A_t)));
    if (!X.empty()) a = add(a, rmul_const(U, X));
    return a;
}

double bilinear_B(const MatrixForm& w, const MatrixForm& v, const MatrixForm& A) {
    if (w.degree != 0 || v.degree != 0)
        throw std::invalid_argument("bilinear_B: arguments must be 0-forms");
    if (boundary_linf(w) != 0.0 || boundary_linf(v) != 0.0)
        throw std::invalid_argument("bilinear_B: arguments must vanish on the boundary");
    MatrixForm dA0 = codiff(A);
    double t = l2_pair(ext_d(w), ext_d(v));
    t += l2_pair(w, lmul_vertex(dA0, v));
    t += l2_pair(rmul_vertex(w, dA0), v);
    return t;
}

// ============================================================================
// lambda sweep
// ============================================================================

LambdaSweepResult lambda_sweep(const MatrixForm& A, const SolverConfig& cfg) {
    cfg.validate(A.grid.n);
    LambdaSweepResult out;

    // Resolve one epsilon at the largest lambda (the tightest bound) and use
    // it for the entire schedule so the per-lambda gauge fields and their
    // differences are comparable.
    SolverConfig fixed = cfg;
    if (cfg.auto_epsilon) {
        SolveResult lead = run_iteration(A, cfg, cfg.lambda_schedule.back());
        fixed.auto_epsilon = false;
        fixed.epsilon = lead.epsilon;
    }

    std::vector<SolveResult> runs;
    runs.reserve(cfg.lambda_schedule.size());
    for (double l : cfg.lambda_schedule) runs.push_back(run_iteration(A, fixed, l));

    out.all_converged = true;
    for (const SolveResult& r : runs) {
        LambdaRow row;
        row.lambda = r.lambda;
        row.converged = r.converged;
        row.iterations = r.iterations;
        row.epsilon = r.epsilon;
        row.w_norm = r.w_norm;
        row.gauge_residual = r.gauge_residual;
        row.u_norm = r.u_norm;
        out.rows.push_back(row);
        out.all_converged = out.all_converged && r.converged;
    }
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
        const double dl = cfg.lambda_schedule[i + 1] - cfg.lambda_schedule[i];
        if (dl <= 0.0 || !runs[i].converged || !runs[i + 1].converged) continue;
        out.c3 = std::max(out.c3, w12p_norm(sub(runs[i + 1].U, runs[i].U), cfg.p) / dl);
    }
    return out;
}

// ============================================================================
// spectrum probe
// ============================================================================

namespace {

/// Modified Gram-Schmidt under the l2 pairing; drops numerically null
/// vectors, so the basis may shrink.
void orthonormalize(std::vector<MatrixForm>& vs) {
    std::vector<MatrixForm> q;
    for (MatrixForm& x : vs) {
        for (const MatrixForm& u : q) axpy(x, -l2_pair(u, x), u);
        const double nrm = std::sqrt(l2_pair(x, x));
        if (nrm > 1e-300 && std::isfinite(nrm)) q.push_back(scale(x, 1.0 / nrm));
    }
    vs = std::move(q);
}

}  // namespace

SpectrumResult spectrum_probe(const MatrixForm& A, const Signature& sig, int count,
                              const std::vector<double>& lambda_schedule, std::uint64_t seed,
                              double cg_tol, int iterations) {
    if (count < 1) throw std::invalid_argument("spectrum_probe: count must be at least 1");
    if (A.degree != 1 || A.fiber != sig.N())
        throw std::invalid_argument("spectrum_probe: connection must be a degree-1 form with fiber N");
    const Grid& g = A.grid;
    const int N = A.fiber;
    const MatrixForm dA0 = codiff(A);
    const MatrixForm dA0T = transpose_form(dA0);
    const MatrixForm bc = MatrixForm::zeros(g, 0, N);

    auto apply_K = [&](const MatrixForm& w) {
        MatrixForm m = add(lmul_vertex(dA0T, w), rmul_vertex(w, dA0));
        MatrixForm z;
        solve_dirichlet(m, bc, z, cg_tol);
        return z;
    };

    // seeded zero-boundary symmetric starts (identical for A and any scalar
    // multiple of A, which is what makes the scaling diagnostic exact)
    const int m = count + 2;
    std::vector<MatrixForm> basis;
    SplitMix64 rng(seed ^ 0x5bd1e995ULL);
    const auto bmask = g.boundary_mask();
    for (int j = 0; j < m; ++j) {
        MatrixForm w = MatrixForm::zeros(g, 0, N);
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            if (bmask[i]) continue;
            double* blk = w.at(0, i);
            for (int p = 0; p < N; ++p)
                for (int q = p; q < N; ++q) {
                    const double x = rng.uniform(-1.0, 1.0);
                    blk[p * N + q] = x;
                    blk[q * N + p] = x;
                }
        }
        basis.push_back(std::move(w));
    }
    orthonormalize(basis);

    SpectrumResult out;
    for (int it = 0; it < iterations && !basis.empty(); ++it) {
        std::vector<MatrixForm> next;
        double maxn = 0.0;
        for (const MatrixForm& b : basis) {
            MatrixForm z = apply_K(b);
            maxn = std::max(maxn, linf_norm(z));
            next.push_back(std::move(z));
        }
        if (maxn == 0.0) {
            out.zero_operator = true;
            break;
        }
        orthonormalize(next);
        if (next.empty()) {
            out.zero_operator = true;
            break;
        }
        basis = std::move(next);
    }

    if (!out.zero_operator && !basis.empty()) {
        const int mm = static_cast<int>(basis.size());
        std::vector<MatrixForm> kq;
        kq.reserve(static_cast<std::size_t>(mm));
        for (const MatrixForm& b : basis) kq.push_back(apply_K(b));
        Eigen::MatrixXd H(mm, mm);
        for (int i = 0; i < mm; ++i)
            for (int j = 0; j < mm; ++j)
                H(i, j) = l2_pair(basis[static_cast<std::size_t>(i)], kq[static_cast<std::size_t>(j)]);
        Eigen::EigenSolver<Eigen::MatrixXd> es(H);
        std::vector<int> order(static_cast<std::size_t>(mm));
        std::iota(order.begin(), order.end(), 0);
        const auto& ev = es.eigenvalues();
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double ma = std::abs(ev[a]), mb = std::abs(ev[b]);
            if (ma != mb) return ma > mb;
            if (ev[a].real() != ev[b].real()) return ev[a].real() > ev[b].real();
            return ev[a].imag() > ev[b].imag();
        });
        for (int i = 0; i < mm && static_cast<int>(out.re.size()) < count; ++i) {
            out.re.push_back(ev[order[static_cast<std::size_t>(i)]].real());
            out.im.push_back(ev[order[static_cast<std::size_t>(i)]].imag());
        }
    }
    while (static_cast<int>(out.re.size()) < count) {
        out.re.push_back(0.0);
        out.im.push_back(0.0);
    }
    out.spectral_radius = std::hypot(out.re[0], out.im[0]);

    for (double l : lambda_schedule) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < out.re.size(); ++i)
            best = std::min(best, std::hypot(1.0 / l - out.re[i], out.im[i]));
        out.schedule_distance.push_back(best);
    }
    return out;
}

}  // namespace gaugelift
