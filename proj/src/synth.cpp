#include "gaugelift/synth.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "gaugelift/fiber.hpp"
#include "gaugelift/rng.hpp"

namespace gaugelift {

namespace {

/// Derived deterministic parameters for the seeded generators.
struct SeedDerived {
    int gen_index[kMaxDim];    // algebra generator per axis (smooth part)
    double sign[kMaxDim];      // +-1 per axis
    int freq[kMaxDim][kMaxDim];  // sine frequencies per (component, axis)
    int kink_gen;              // algebra generator of the kink exponent
};

SeedDerived derive(const FieldSpec& spec) {
    SplitMix64 rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x1234abcdULL);
    const int dim = spec.sig.N() * (spec.sig.N() - 1) / 2;
    SeedDerived d{};
    for (int a = 0; a < kMaxDim; ++a) {
        d.gen_index[a] = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
        d.sign[a] = rng.below(2) ? -1.0 : 1.0;
        for (int b = 0; b < kMaxDim; ++b) d.freq[a][b] = 1 + static_cast<int>(rng.below(2));
    }
    d.kink_gen = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
    return d;
}

std::array<double, kMaxDim> zoomed(const FieldSpec& spec, const std::array<double, kMaxDim>& x) {
    std::array<double, kMaxDim> y = x;
    if (spec.zoom != 1.0)
        for (int a = 0; a < kMaxDim; ++a) y[a] = spec.zoom_center[a] + spec.zoom * (x[a] - spec.zoom_center[a]);
    return y;
}

/// Scalar profile of the smooth connection component a at point y.
double smooth_profile(const FieldSpec& spec, const SeedDerived& d, int a, int n,
                      const std::array<double, kMaxDim>& y) {
    if (spec.smooth.profile == "gauss") {
        double r2 = 0.0;
        for (int b = 0; b < n; ++b) {
            const double t = y[b] - spec.smooth.center[b];
            r2 += t * t;
        }
        return std::exp(-r2 / (2.0 * spec.smooth.width * spec.smooth.width));
    }
    double v = 1.0;
    for (int b = 0; b < n; ++b) v *= std::sin(M_PI * d.freq[a][b] * y[b]);
    return v;
}

// ---- kink profile ----------------------------------------------------------
// phi = gauge_amplitude * hat((t - pos)/width) * prod_a ramp(y_a), with
// hat(u) = max(0, 1-|u|) and ramp a piecewise-linear 0->1->0 window that is
// exactly zero within `collar` of the boundary. phi is Lipschitz with
// gradient jumps across the kink hyperplane and the collar planes.

double hat(double u) { return std::max(0.0, 1.0 - std::abs(u)); }
double hat_deriv(double u) {
    if (u > 0.0 && u < 1.0) return -1.0;
    if (u < 0.0 && u > -1.0) return 1.0;
    return 0.0;  // outside support, and the symmetric choice at the kink
}
double ramp(double t, double c) {
    const double up = std::clamp(t / c, 0.0, 1.0);
    const double dn = std::clamp((1.0 - t) / c, 0.0, 1.0);
    return up * dn;
}
double ramp_deriv(double t, double c) {
    const double up = std::clamp(t / c, 0.0, 1.0);
    const double dn = std::clamp((1.0 - t) / c, 0.0, 1.0);
    double dup = (t > 0.0 && t < c) ? 1.0 / c : 0.0;
    double ddn = (t > 1.0 - c && t < 1.0) ? -1.0 / c : 0.0;
    return dup * dn + up * ddn;
}

double kink_phi(const FieldSpec& spec, const std::array<double, kMaxDim>& y, int n) {
    const KinkParams& k = spec.kink;
    double v = spec.gauge_amplitude * hat((y[k.axis] - k.pos) / k.width);
    for (int a = 0; a < n; ++a) v *= ramp(y[a], k.collar);
    return v;
}

void kink_phi_grad(const FieldSpec& spec, const std::array<double, kMaxDim>& y, int n, double* grad) {
    const KinkParams& k = spec.kink;
    const double h = hat((y[k.axis] - k.pos) / k.width);
    const double dh = hat_deriv((y[k.axis] - k.pos) / k.width) / k.width;
    double r[kMaxDim] = {1.0, 1.0, 1.0};
    double dr[kMaxDim] = {0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) {
        r[a] = ramp(y[a], k.collar);
        dr[a] = ramp_deriv(y[a], k.collar);
    }
    for (int a = 0; a < n; ++a) {
        // term where the derivative hits the hat factor (a == axis) or the
        // a-th ramp factor (a != axis)
        double v = spec.gauge_amplitude * (a == k.axis ? dh : h);
        for (int b = 0; b < n; ++b) v *= (b == a && a != k.axis) ? dr[b] : r[b];
        grad[a] = v;
    }
    // on the hat axis the product rule adds the hat * ramp'(y_axis) term
    {
        const int a = k.axis;
        double v = spec.gauge_amplitude * h * dr[a];
        for (int b = 0; b < n; ++b)
            if (b != a) v *= r[b];
        grad[a] += v;
    }
}

}  // namespace

FieldSpec make_smooth_connection(const Signature& sig, double amplitude, std::uint64_t seed) {
    FieldSpec s;
    s.kind = FieldKind::smooth;
    s.sig = sig;
    s.amplitude = amplitude;
    s.seed = seed;
    return s;
}

FieldSpec make_constant_connection(const Signature& sig, double amplitude, std::uint64_t seed) {
    FieldSpec s;
    s.kind = FieldKind::constant;
    s.sig = sig;
    s.amplitude = amplitude;
    s.seed = seed;
    return s;
}

FieldSpec make_rough_gauge(const Signature& sig, double gauge_amplitude, std::uint64_t seed) {
    FieldSpec s;
    s.kind = FieldKind::pure_gauge;
    s.sig = sig;
    s.amplitude = 0.0;
    s.gauge_amplitude = gauge_amplitude;
    s.seed = seed;
    SplitMix64 rng(seed + 17);
    s.kink.pos = rng.uniform(0.45, 0.55);
    return s;
}

FieldSpec make_nonoptimal_pair(const Signature& sig, double amplitude, double gauge_amplitude,
                               std::uint64_t seed) {
    FieldSpec s = make_rough_gauge(sig, gauge_amplitude, seed);
    s.kind = FieldKind::paired;
    s.amplitude = amplitude;
    return s;
}

FieldSpec background_of(const FieldSpec& spec) {
    FieldSpec s = spec;
    s.kind = FieldKind::smooth;
    s.gauge_amplitude = 0.0;
    return s;
}

double eval_kink_phi(const FieldSpec& spec, const std::array<double, kMaxDim>& x, int n) {
    return kink_phi(spec, zoomed(spec, x), n);
}

void eval_gauge(const FieldSpec& spec, const std::array<double, kMaxDim>& x, int n, double* out) {
    const int N = spec.sig.N();
    if (spec.kind == FieldKind::smooth || spec.kind == FieldKind::constant) {
        for (int i = 0; i < N * N; ++i) out[i] = 0.0;
        for (int i = 0; i < N; ++i) out[i * N + i] = 1.0;
        return;
    }
    const SeedDerived d = derive(spec);
    const auto G = algebra_basis(spec.sig)[static_cast<std::size_t>(d.kink_gen)];
    const double phi = kink_phi(spec, zoomed(spec, x), n);
    Eigen::MatrixXd m(N, N);
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) m(p, q) = phi * G[static_cast<std::size_t>(p * N + q)];
    Eigen::MatrixXd e = m.exp();
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) out[p * N + q] = e(p, q);
}

/// Shared core of eval_connection and sample_connection. With
/// `with_kink_grad` false the analytic dphi * G term of the rough kinds is
/// left out (sample_connection replaces it by a difference quotient).
static void eval_connection_parts(const FieldSpec& spec, const std::array<double, kMaxDim>& x,
                                  int n, double* out, bool with_kink_grad) {
    const int N = spec.sig.N();
    const int nn = N * N;
    const SeedDerived d = derive(spec);
    const auto basis = algebra_basis(spec.sig);
    const auto y = zoomed(spec, x);
    for (int i = 0; i < n * nn; ++i) out[i] = 0.0;

    if (spec.kind == FieldKind::smooth || spec.kind == FieldKind::constant) {
        for (int a = 0; a < n; ++a) {
            const double f = spec.kind == FieldKind::constant
                                 ? 1.0
                                 : smooth_profile(spec, d, a, n, y);
            const double c = spec.amplitude * d.sign[a] * f;
            const auto& G = basis[static_cast<std::size_t>(d.gen_index[a])];
            for (int e = 0; e < nn; ++e) out[a * nn + e] = c * G[static_cast<std::size_t>(e)];
        }
        return;
    }

    // pure gauge part: U^{-1} dU = dphi * G (G commutes with exp(phi G))
    const auto& Gk = basis[static_cast<std::size_t>(d.kink_gen)];
    if (with_kink_grad) {
        double grad[kMaxDim] = {0.0, 0.0, 0.0};
        kink_phi_grad(spec, y, n, grad);
        for (int a = 0; a < n; ++a)
            for (int e = 0; e < nn; ++e) out[a * nn + e] += grad[a] * Gk[static_cast<std::size_t>(e)];
    }

    if (spec.kind == FieldKind::paired) {
        // + U^{-1} A_b U with smooth background A_b
        const double phi = kink_phi(spec, y, n);
        Eigen::MatrixXd m(N, N);
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < N; ++q) m(p, q) = phi * Gk[static_cast<std::size_t>(p * N + q)];
        Eigen::MatrixXd U = m.exp();
        Eigen::MatrixXd Uinv = (-m).exp();
        for (int a = 0; a < n; ++a) {
            const double c = spec.amplitude * d.sign[a] * smooth_profile(spec, d, a, n, y);
            Eigen::MatrixXd Ab(N, N);
            const auto& G = basis[static_cast<std::size_t>(d.gen_index[a])];
            for (int p = 0; p < N; ++p)
                for (int q = 0; q < N; ++q) Ab(p, q) = c * G[static_cast<std::size_t>(p * N + q)];
            Eigen::MatrixXd conj = Uinv * Ab * U;
            for (int p = 0; p < N; ++p)
                for (int q = 0; q < N; ++q) out[a * nn + p * N + q] += conj(p, q);
        }
    }
}

void eval_connection(const FieldSpec& spec, const std::array<double, kMaxDim>& x, int n, double* out) {
    eval_connection_parts(spec, x, n, out, true);
}

MatrixForm sample_connection(const FieldSpec& spec, const Grid& g) {
    const int N = spec.sig.N();
    const int nn = N * N;
    const bool rough = spec.kind == FieldKind::pure_gauge || spec.kind == FieldKind::paired;
    const SeedDerived d = derive(spec);
    const auto basis = algebra_basis(spec.sig);
    const auto& Gk = basis[static_cast<std::size_t>(d.kink_gen)];
    MatrixForm A = MatrixForm::zeros(g, 1, N);
    std::vector<double> buf(static_cast<std::size_t>(g.n * nn));
    for (int c = 0; c < A.ncomp(); ++c) {
        const int M = A.mask_of(c);
        int axis = 0;
        while (!((M >> axis) & 1)) ++axis;
        const std::size_t cells = g.cell_count(M);
        for (std::size_t i = 0; i < cells; ++i) {
            const Coord cc = g.ccoord(M, i);
            const auto x = g.cell_center(M, cc);
            eval_connection_parts(spec, x, g.n, buf.data(), false);
            double* dst = A.at(c, i);
            for (int e = 0; e < nn; ++e) dst[e] = buf[static_cast<std::size_t>(axis * nn + e)];
            if (rough) {
                // The rough pure-gauge term is sampled as the difference
                // quotient of the vertex-sampled profile, so it is an exact
                // discrete gradient. Midpoint-sampling the analytic
                // derivative instead would scatter O(1/h) spurious curl
                // spikes along the kink lines (the distributional
                // cancellation of the mixed second derivatives does not
                // survive pointwise sampling).
                Coord up = cc;
                up[axis] += 1;
                const double plo = eval_kink_phi(spec, g.position(cc), g.n);
                const double phi = eval_kink_phi(spec, g.position(up), g.n);
                const double dq = (phi - plo) / g.h;
                for (int e = 0; e < nn; ++e) dst[e] += dq * Gk[static_cast<std::size_t>(e)];
            }
        }
    }
    return A;
}

MatrixForm sample_gauge(const FieldSpec& spec, const Grid& g) {
    const int N = spec.sig.N();
    MatrixForm U = MatrixForm::zeros(g, 0, N);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const auto x = g.position(g.vcoord(i));
        eval_gauge(spec, x, g.n, U.at(0, i));
    }
    return U;
}

FieldSpec rescale_spec(const FieldSpec& spec, double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("rescale_spec: eps must be in (0,1]");
    FieldSpec s = spec;
    s.zoom = spec.zoom * eps;
    return s;
}

std::vector<FieldSpec> make_sequence(const Signature& sig, double M_bound, int count, double p,
                                     std::uint64_t seed, const Grid& check_grid) {
    if (count < 2) throw std::invalid_argument("make_sequence: need at least two members");
    SplitMix64 rng(seed);
    std::vector<FieldSpec> members;
    for (int i = 0; i < count; ++i) {
        // the collar ramp derivative is 1/collar = 8, so keep the gauge
        // amplitude small enough that |A|_Linf stays well under M_bound
        FieldSpec s = make_nonoptimal_pair(sig, 0.03 * M_bound * rng.uniform(0.6, 1.0),
                                           0.05 * M_bound * rng.uniform(0.6, 1.0), seed + 1000 + i);
        s.kink.pos = rng.uniform(0.4, 0.6);
        s.kink.width = rng.uniform(0.12, 0.18);
        members.push_back(s);
    }
    for (const auto& s : members) {
        MatrixForm A = sample_connection(s, check_grid);
        const double bound = linf_norm(A) + lp_norm(ext_d(A), p);
        if (bound > M_bound)
            throw std::invalid_argument("make_sequence: member violates the uniform bound (" +
                                        std::to_string(bound) + " > " + std::to_string(M_bound) + ")");
    }
    return members;
}

}  // namespace gaugelift
