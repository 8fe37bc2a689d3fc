/// @file test_regularity.cpp
/// @brief Gauge transformation, Coulomb companion, curvature, and the
///        refinement-based smoothness metric.

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gaugelift/forms.hpp"
#include "gaugelift/gauge.hpp"
#include "gaugelift/regularity.hpp"
#include "gaugelift/rng.hpp"
#include "gaugelift/solver.hpp"
#include "gaugelift/synth.hpp"

using namespace gaugelift;

namespace {

constexpr double kPi = 3.14159265358979323846;

MatrixForm sine_scalar(const Grid& g, double c) {
    MatrixForm phi = MatrixForm::zeros(g, 0, 1);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const auto pos = g.position(g.vcoord(i));
        *phi.at(0, i) = c * std::sin(kPi * pos[0]) * std::sin(kPi * pos[1]);
    }
    return phi;
}

/// Analytic -d(phi) * G at edge midpoints for phi = c sin(pi x) sin(pi y).
MatrixForm minus_dphi_G(const Grid& g, double c, const std::vector<double>& G) {
    MatrixForm A = MatrixForm::zeros(g, 1, 2);
    for (int a = 0; a < 2; ++a) {
        const int mask = 1 << a;
        const int comp = A.comp_of_mask(mask);
        for (std::size_t i = 0; i < g.cell_count(mask); ++i) {
            const auto m = g.cell_center(mask, g.ccoord(mask, i));
            const double d = (a == 0)
                ? c * kPi * std::cos(kPi * m[0]) * std::sin(kPi * m[1])
                : c * kPi * std::sin(kPi * m[0]) * std::cos(kPi * m[1]);
            double* blk = A.at(comp, i);
            for (int e = 0; e < 4; ++e) blk[e] = -d * G[static_cast<std::size_t>(e)];
        }
    }
    return A;
}

FieldSpec pinned_kink(const Signature& sig, double ga) {
    FieldSpec spec;
    spec.kind = FieldKind::pure_gauge;
    spec.sig = sig;
    spec.amplitude = 0.0;
    spec.gauge_amplitude = ga;
    spec.seed = 5;
    spec.kink.axis = 0;
    spec.kink.pos = 0.5;
    return spec;
}

}  // namespace

TEST_SUITE("regularity") {

// ============================================================================
// Coulomb companion 1-form
// ============================================================================

TEST_CASE("u_inv_du and a_tilde_prime at the identity gauge") {
    Grid g(2, 9);
    MatrixForm I = identity_form(g, 2);
    CHECK(linf_norm(u_inv_du(I, I)) == 0.0);
    SplitMix64 rng(3);
    MatrixForm A = MatrixForm::zeros(g, 1, 2);
    for (auto& comp : A.comp)
        for (double& x : comp) x = rng.uniform(-1.0, 1.0);
    MatrixForm At = a_tilde_prime(A, I);
    CHECK(linf_norm(sub(At, A)) == 0.0);
}

TEST_CASE("a pure-gauge connection has a vanishing companion under refinement") {
    // A is sampled as the exact difference quotient of the kink, so
    // A - U^{-1}dU is pure colocation error and must shrink like h.
    const Signature sig(2, 0);
    FieldSpec spec = pinned_kink(sig, 0.5);
    double prev = 0.0;
    double ratio = 0.0;
    for (int step = 0; step < 2; ++step) {
        Grid g(2, step == 0 ? 17 : 33);
        MatrixForm A = sample_connection(spec, g);
        MatrixForm U = sample_gauge(spec, g);
        MatrixForm At = a_tilde_prime(A, U);
        const double n = lp_norm(At, 4.0, 1);
        if (step == 1) ratio = prev / n;
        prev = n;
    }
    CHECK(ratio >= 1.4);
}

TEST_CASE("coulomb_residual") {
    Grid g(2, 17);
    SUBCASE("zero 1-form has zero divergence") {
        CHECK(coulomb_residual(MatrixForm::zeros(g, 1, 2), 4.0) == 0.0);
    }
    SUBCASE("a generic smooth connection is far from Coulomb gauge") {
        MatrixForm A = sample_connection(make_smooth_connection(Signature(2, 0), 0.5, 7), g);
        CHECK(coulomb_residual(A, 4.0) >= 0.01);
    }
    SUBCASE("the converged solver output is in discrete Coulomb gauge") {
        SolverConfig cfg;
        MatrixForm A = sample_connection(make_smooth_connection(cfg.sig, 0.1, 11), g);
        SolveResult r = run_iteration(A, cfg);
        REQUIRE(r.converged);
        CHECK(r.coulomb_residual <= 1e-10);
        CHECK(coulomb_residual(r.A_coulomb, cfg.p) == doctest::Approx(r.coulomb_residual));
    }
}

// ============================================================================
// gauge transformation and the optimal connection
// ============================================================================

TEST_CASE("gauge_transform") {
    const Signature sig(2, 0);
    const auto G = algebra_basis(sig)[0];

    SUBCASE("the identity gauge changes nothing") {
        Grid g(2, 17);
        MatrixForm A = sample_connection(make_smooth_connection(sig, 0.4, 13), g);
        CHECK(linf_norm(sub(gauge_transform(A, identity_form(g, 2), sig), A)) <= 1e-15);
    }
    SUBCASE("transforming zero gives -dU U^{-1}, second-order accurate") {
        double err[2];
        int k = 0;
        for (int shape : {17, 33}) {
            Grid g(2, shape);
            MatrixForm U = exp_generator(sine_scalar(g, 0.4), G, sig);
            MatrixForm T = gauge_transform(MatrixForm::zeros(g, 1, 2), U, sig);
            err[k++] = linf_norm(sub(T, minus_dphi_G(g, 0.4, G)));
        }
        CHECK(err[1] < err[0]);
        const double order = std::log2(err[0] / err[1]);
        CHECK(order >= 1.5);
        CHECK(order <= 2.6);
    }
    SUBCASE("round trip through U and U^{-1} converges to the identity map") {
        double err[2];
        int k = 0;
        for (int shape : {17, 33}) {
            Grid g(2, shape);
            MatrixForm A = sample_connection(make_smooth_connection(sig, 0.4, 13), g);
            MatrixForm U = exp_generator(sine_scalar(g, 0.4), G, sig);
            MatrixForm V = group_inverse(U, sig);
            MatrixForm back = gauge_transform(gauge_transform(A, U, sig), V, sig);
            err[k++] = linf_norm(sub(back, A));
        }
        CHECK(err[1] < err[0]);
    }
    SUBCASE("non-group gauges are rejected") {
        Grid g(2, 9);
        MatrixForm bad = identity_form(g, 2);
        for (auto& comp : bad.comp)
            for (double& x : comp) x *= 2.0;
        MatrixForm A = MatrixForm::zeros(g, 1, 2);
        CHECK_THROWS_AS((void)gauge_transform(A, bad, sig), std::invalid_argument);
        CHECK_THROWS_AS((void)optimal_connection(bad, A, sig), std::invalid_argument);
    }
}

TEST_CASE("optimal_connection agrees with gauge_transform to discretization order") {
    const Signature sig(2, 0);
    const auto G = algebra_basis(sig)[0];

    SUBCASE("identity gauge is a no-op") {
        Grid g(2, 17);
        MatrixForm At = sample_connection(make_smooth_connection(sig, 0.4, 17), g);
        CHECK(linf_norm(sub(optimal_connection(identity_form(g, 2), At, sig), At)) <= 1e-15);
    }
    SUBCASE("U (A - U^{-1}dU) U^{-1} approaches U A U^{-1} - dU U^{-1}") {
        double err[2];
        int k = 0;
        for (int shape : {17, 33}) {
            Grid g(2, shape);
            MatrixForm A = sample_connection(make_smooth_connection(sig, 0.4, 17), g);
            MatrixForm U = exp_generator(sine_scalar(g, 0.4), G, sig);
            MatrixForm opt = optimal_connection(U, a_tilde_prime(A, U), sig);
            MatrixForm gt = gauge_transform(A, U, sig);
            err[k++] = linf_norm(sub(opt, gt), 1);
        }
        CHECK(err[1] < err[0]);
        CHECK(err[0] / err[1] >= 1.4);
    }
}

// ============================================================================
// curvature
// ============================================================================

TEST_CASE("curvature oracles") {
    Grid g(2, 9);
    SUBCASE("zero connection is flat") {
        CHECK(linf_norm(curvature(MatrixForm::zeros(g, 1, 2))) == 0.0);
    }
    SUBCASE("constant single-generator connections are flat: dA = 0, [A,A] = 0") {
        const Signature sig(2, 0);
        const auto G = algebra_basis(sig)[0];
        MatrixForm A = MatrixForm::zeros(g, 1, 2);
        for (int c = 0; c < 2; ++c)
            for (std::size_t i = 0; i < g.cell_count(A.mask_of(c)); ++i)
                for (int e = 0; e < 4; ++e) A.at(c, i)[e] = G[static_cast<std::size_t>(e)];
        CHECK(linf_norm(curvature(A)) == 0.0);
    }
}

TEST_CASE("curvature transforms covariantly under smooth gauges") {
    const Signature sig(2, 0);
    const auto G = algebra_basis(sig)[0];
    double rel[2];
    int k = 0;
    for (int shape : {17, 33}) {
        Grid g(2, shape);
        MatrixForm A = sample_connection(make_smooth_connection(sig, 0.4, 19), g);
        MatrixForm U = exp_generator(sine_scalar(g, 0.4), G, sig);
        MatrixForm Uinv = group_inverse(U, sig);
        MatrixForm Fa = curvature(A);
        MatrixForm Fb = curvature(gauge_transform(A, U, sig));
        MatrixForm conj = lmul_vertex(U, rmul_vertex(Fa, Uinv));
        rel[k++] = lp_norm(sub(Fb, conj), 4.0, 1) / lp_norm(Fa, 4.0, 1);
    }
    CHECK(rel[0] <= 0.2);
    CHECK(rel[1] < rel[0]);
}

// ============================================================================
// smoothness metric
// ============================================================================

TEST_CASE("smoothness_metric input-only mode classifies smooth vs kink") {
    Grid base(2, 17);

    SUBCASE("a smooth bump has growth exponent ~ 0") {
        FieldSpec spec = make_smooth_connection(Signature(2, 0), 0.3, 23);
        spec.smooth.profile = "gauss";
        SmoothnessReport rep = smoothness_metric(spec, base, 3, 4.0, false);
        REQUIRE(rep.levels.size() == 3);
        CHECK(!rep.full_pipeline);
        CHECK(std::abs(rep.growth_exponent) <= 0.1);
        for (const auto& lvl : rep.levels) {
            CHECK(lvl.value_norm > 0.0);
            CHECK(lvl.grad_norm > 0.0);
        }
        CHECK(rep.levels[0].shape == 17);
        CHECK(rep.levels[1].shape == 33);
        CHECK(rep.levels[2].shape == 65);
    }
    SUBCASE("a kink gauge derivative has the Lipschitz exponent (p-1)/p") {
        FieldSpec spec = make_rough_gauge(Signature(1, 1), 0.5, 23);
        SmoothnessReport rep = smoothness_metric(spec, base, 3, 4.0, false);
        CHECK(rep.growth_exponent >= 0.55);
        CHECK(rep.growth_exponent <= 0.95);
    }
}

TEST_CASE("smoothness_metric full pipeline flattens a pure-gauge kink") {
    Grid base(2, 17);
    FieldSpec spec = make_rough_gauge(Signature(2, 0), 0.5, 29);
    SolverConfig cfg;
    SmoothnessReport rep = smoothness_metric(spec, base, 3, 4.0, true, &cfg);
    CHECK(rep.full_pipeline);
    CHECK(rep.epsilon > 0.0);
    REQUIRE(rep.levels.size() == 3);
    CHECK(rep.growth_exponent <= 0.2);
    for (const auto& lvl : rep.levels) CHECK(lvl.coulomb >= 0.0);
}

TEST_CASE("smoothness_metric needs at least three levels") {
    Grid base(2, 17);
    FieldSpec spec = make_smooth_connection(Signature(2, 0), 0.3, 31);
    CHECK_THROWS_AS((void)smoothness_metric(spec, base, 2, 4.0, false), std::invalid_argument);
}

}  // TEST_SUITE("regularity")
