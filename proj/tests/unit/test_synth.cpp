/// @file test_synth.cpp
/// @brief Seeded analytic field constructions and their sampling contracts.

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gaugelift/forms.hpp"
#include "gaugelift/gauge.hpp"
#include "gaugelift/synth.hpp"

using namespace gaugelift;

namespace {

/// Pure-gauge kink spec with a pinned kink position (so refinement studies
/// see the same geometry at every resolution).
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

TEST_SUITE("synth") {

TEST_CASE("amplitude zero samples to the zero connection") {
    Grid g(2, 9);
    FieldSpec spec = make_smooth_connection(Signature(2, 0), 0.0, 3);
    CHECK(linf_norm(sample_connection(spec, g)) == 0.0);
}

TEST_CASE("constant fields are algebra valued and cell independent") {
    Grid g(2, 9);
    const Signature sig(1, 1);
    FieldSpec spec = make_constant_connection(sig, 0.5, 7);
    MatrixForm A = sample_connection(spec, g);
    CHECK(algebra_defect(A, sig) <= 1e-14);
    CHECK(linf_norm(A) > 0.0);
    for (std::size_t c = 0; c < A.comp.size(); ++c) {
        const double* first = A.at(static_cast<int>(c), std::size_t{0});
        const std::size_t ncells = A.comp[c].size() / 4;
        for (std::size_t i = 1; i < ncells; ++i)
            for (int e = 0; e < 4; ++e)
                CHECK(A.at(static_cast<int>(c), i)[e] == first[e]);
    }
}

TEST_CASE("smooth gaussian connections have resolution-stable sup gradients") {
    FieldSpec spec = make_smooth_connection(Signature(2, 0), 0.3, 11);
    spec.smooth.profile = "gauss";
    double lo = 1e300, hi = 0.0;
    for (int shape : {17, 33, 65}) {
        Grid g(2, shape);
        const double v = linf_norm(ext_d(sample_connection(spec, g)));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi / lo <= 1.1);
}

TEST_CASE("gauge amplitude zero gives the identity gauge field") {
    Grid g(2, 9);
    FieldSpec spec = make_rough_gauge(Signature(2, 0), 0.0, 13);
    MatrixForm U = sample_gauge(spec, g);
    CHECK(linf_norm(sub(U, identity_form(g, 2))) <= 1e-14);
}

TEST_CASE("kink gauge fields are group valued with Lipschitz profile") {
    const Signature sig(1, 1);
    FieldSpec spec = pinned_kink(sig, 0.4);

    SUBCASE("group membership and exact boundary identity") {
        Grid g(2, 17);
        MatrixForm U = sample_gauge(spec, g);
        CHECK(group_defect(U, sig) <= 1e-12);
        CHECK(det_defect(U) <= 1e-12);
        CHECK(boundary_linf(sub(U, identity_form(g, 2))) <= 1e-14);
    }
    SUBCASE("first differences converge, second differences blow up like 1/h") {
        Grid g17(2, 17);
        Grid g33(2, 33);
        MatrixForm U17 = sample_gauge(spec, g17);
        MatrixForm U33 = sample_gauge(spec, g33);
        const double d17 = linf_norm(ext_d(U17));
        const double d33 = linf_norm(ext_d(U33));
        CHECK(d33 / d17 <= 1.3);
        CHECK(d17 / d33 <= 1.3);
        const double l17 = linf_norm(laplacian(U17), 1);
        const double l33 = linf_norm(laplacian(U33), 1);
        const double ratio = l33 / l17;
        CHECK(ratio >= 1.4);
        CHECK(ratio <= 2.8);
    }
}

TEST_CASE("sampled pure-gauge connections are discrete gradients (no curl)") {
    for (const Signature sig : {Signature(2, 0), Signature(1, 1)}) {
        Grid g(2, 33);
        FieldSpec spec = make_rough_gauge(sig, 0.5, 19);
        MatrixForm A = sample_connection(spec, g);
        CHECK(linf_norm(A) > 0.0);
        CHECK(lp_norm(ext_d(A), 4.0) <= 1e-12);
    }
}

TEST_CASE("pure-gauge sampling is the difference quotient of the kink profile") {
    // independent re-evaluation: component a on the a-edge with lower vertex v
    // must equal (phi(v + h e_a) - phi(v)) / h times the (single) generator
    const Signature sig(2, 0);
    Grid g(2, 17);
    FieldSpec spec = pinned_kink(sig, 0.7);
    MatrixForm A = sample_connection(spec, g);
    const auto G = algebra_basis(sig)[0];

    for (int a = 0; a < 2; ++a) {
        const int mask = 1 << a;
        const int comp = A.comp_of_mask(mask);
        for (std::size_t i = 0; i < g.cell_count(mask); ++i) {
            Coord c = g.ccoord(mask, i);
            Coord up = c;
            up[a] += 1;
            const double phi0 = eval_kink_phi(spec, g.position(c), 2);
            const double phi1 = eval_kink_phi(spec, g.position(up), 2);
            const double dq = (phi1 - phi0) / g.h;
            const double* blk = A.at(comp, i);
            for (int e = 0; e < 4; ++e) CHECK(blk[e] == dq * G[static_cast<std::size_t>(e)]);
        }
    }
}

TEST_CASE("paired fields with zero gauge amplitude reduce to their background") {
    Grid g(2, 17);
    FieldSpec spec = make_nonoptimal_pair(Signature(1, 1), 0.4, 0.0, 23);
    FieldSpec bg = background_of(spec);
    CHECK(bg.kind == FieldKind::smooth);
    CHECK(bg.gauge_amplitude == 0.0);
    CHECK(bg.amplitude == spec.amplitude);
    CHECK(bg.seed == spec.seed);
    MatrixForm A = sample_connection(spec, g);
    MatrixForm Ab = sample_connection(bg, g);
    CHECK(linf_norm(sub(A, Ab)) <= 1e-14);
}

TEST_CASE("make_sequence produces verified, deterministic members") {
    const Signature sig(1, 1);
    Grid check(2, 17);
    const double M = 1.0;
    const double p = 4.0;

    SUBCASE("every member respects the stated uniform bound") {
        auto seq = make_sequence(sig, M, 8, p, 31, check);
        REQUIRE(seq.size() == 8);
        for (const auto& spec : seq) {
            MatrixForm A = sample_connection(spec, check);
            const double bound = linf_norm(A) + lp_norm(ext_d(A), p);
            CHECK(bound <= M);
            CHECK(bound > 0.0);
        }
    }
    SUBCASE("repeat calls are bit-identical") {
        auto a = make_sequence(sig, M, 3, p, 31, check);
        auto b = make_sequence(sig, M, 3, p, 31, check);
        for (std::size_t i = 0; i < a.size(); ++i) {
            MatrixForm Aa = sample_connection(a[i], check);
            MatrixForm Ab = sample_connection(b[i], check);
            CHECK(linf_norm(sub(Aa, Ab)) == 0.0);
        }
    }
    SUBCASE("a sequence needs at least two members") {
        CHECK_THROWS_AS((void)make_sequence(sig, M, 1, p, 31, check), std::invalid_argument);
    }
}

TEST_CASE("rescale_spec validation and trivial cases") {
    FieldSpec spec = make_smooth_connection(Signature(2, 0), 0.3, 37);
    CHECK_THROWS_AS((void)rescale_spec(spec, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)rescale_spec(spec, 1.5), std::invalid_argument);
    CHECK_THROWS_AS((void)rescale_spec(spec, -0.2), std::invalid_argument);

    Grid g(2, 17);
    // eps = 1 is the identity
    MatrixForm A = sample_connection(spec, g);
    MatrixForm A1 = sample_connection(rescale_spec(spec, 1.0), g);
    CHECK(linf_norm(sub(A, A1)) == 0.0);

    // constants are zoom invariant
    FieldSpec cns = make_constant_connection(Signature(2, 0), 0.6, 41);
    MatrixForm C = sample_connection(cns, g);
    MatrixForm Ch = sample_connection(rescale_spec(cns, 0.5), g);
    CHECK(linf_norm(sub(C, Ch)) <= 1e-15);
}

TEST_CASE("zooming realizes the L^p rescaling laws of a localized bump") {
    // For A_eps(x) = A(c + eps (x - c)) on the unit box (values unchanged):
    //   |A_eps|_{Lp(box)}    = eps^(-n/p)   |A|_{Lp(B_eps)}
    //   |grad A_eps|_{Lp}    = eps^(1-n/p)  |grad A|_{Lp(B_eps)}
    // With n = 2, p = 4, eps = 1/2 the predicted ratios are sqrt(2) and
    // 1/sqrt(2); the gaussian tails outside the half-box are ~1e-15.
    const double p = 4.0;
    Grid g(2, 65);
    FieldSpec spec = make_smooth_connection(Signature(2, 0), 0.8, 43);
    spec.smooth.profile = "gauss";
    spec.smooth.width = 0.06;
    spec.smooth.center = {0.5, 0.5, 0.5};

    MatrixForm A = sample_connection(spec, g);
    MatrixForm Az = sample_connection(rescale_spec(spec, 0.5), g);

    // margin 16 on the 64-cell box restricts to the centered half box
    const double value_ratio = lp_norm(Az, p, 0) / lp_norm(A, p, 16);
    const double grad_ratio = grad_lp_norm(Az, p, 0) / grad_lp_norm(A, p, 16);
    CHECK(std::abs(value_ratio / std::sqrt(2.0) - 1.0) <= 0.02);
    CHECK(std::abs(grad_ratio * std::sqrt(2.0) - 1.0) <= 0.03);
}

}  // TEST_SUITE("synth")
