/// @file test_forms.cpp
/// @brief Cochain calculus: d, delta, Laplacian, products, pairings, norms.
///
/// Hand-derived oracles come first; the expected values are frozen from a
/// by-hand evaluation of the forward-difference / backward-divergence
/// stencils, independent of the library code.

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaugelift/forms.hpp"
#include "gaugelift/rng.hpp"

using namespace gaugelift;

namespace {

MatrixForm random_form(const Grid& g, int degree, int N, std::uint64_t seed) {
    SplitMix64 rng(seed);
    MatrixForm w = MatrixForm::zeros(g, degree, N);
    for (auto& comp : w.comp)
        for (double& v : comp) v = rng.uniform(-1.0, 1.0);
    return w;
}

std::vector<double> unit_matrix(int N, int i, int j) {
    std::vector<double> m(static_cast<std::size_t>(N * N), 0.0);
    m[static_cast<std::size_t>(i * N + j)] = 1.0;
    return m;
}

/// Fill one component (by axis mask) of a form with a constant block.
void fill_component(MatrixForm& w, int mask, const std::vector<double>& block) {
    const int c = w.comp_of_mask(mask);
    REQUIRE(c >= 0);
    const std::size_t nn = static_cast<std::size_t>(w.fiber * w.fiber);
    auto& data = w.comp[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = block[i % nn];
}

double max_abs_diff(const MatrixForm& a, const MatrixForm& b) {
    return linf_norm(sub(a, b));
}

/// Max Frobenius norm over vertices at least one layer inside the boundary.
double interior_linf(const MatrixForm& w) { return linf_norm(w, 1); }

}  // namespace

TEST_SUITE("forms") {

// ============================================================================
// exterior derivative: hand oracles
// ============================================================================

TEST_CASE("d of u(x) = x^1 E11 has dx^1-edge values exactly E11") {
    // hand evaluation on the 3x3 grid (h = 1/2): the forward quotient of x^1
    // along x^1 is (x+h - x)/h = 1 on every x-edge, and 0 along x^2
    Grid g(2, 3);
    MatrixForm u = MatrixForm::zeros(g, 0, 2);
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        u.at(0, i)[0] = g.position(g.vcoord(i))[0];  // E11 entry = x^1

    MatrixForm du = ext_d(u);
    const int cx = du.comp_of_mask(1);
    const int cy = du.comp_of_mask(2);
    for (std::size_t i = 0; i < g.cell_count(1); ++i) {
        const double* b = du.at(cx, i);
        CHECK(b[0] == 1.0);  // exact: (x+h-x)/h with h = 2^-1
        CHECK(b[1] == 0.0);
        CHECK(b[2] == 0.0);
        CHECK(b[3] == 0.0);
    }
    for (std::size_t i = 0; i < g.cell_count(2); ++i) {
        const double* b = du.at(cy, i);
        CHECK(b[0] == 0.0);
        CHECK(b[1] == 0.0);
    }
}

TEST_CASE("d of a constant 0-form is the zero 1-form") {
    Grid g(2, 9);
    MatrixForm u = MatrixForm::zeros(g, 0, 2);
    fill_component(u, 0, unit_matrix(2, 0, 1));
    CHECK(linf_norm(ext_d(u)) == 0.0);
}

TEST_CASE("d(d(.)) vanishes to machine precision") {
    SUBCASE("0-form in 2D") {
        Grid g(2, 17);
        MatrixForm u = random_form(g, 0, 2, 11);
        CHECK(linf_norm(ext_d(ext_d(u))) <= 1e-12);
    }
    SUBCASE("0-form and 1-form in 3D") {
        Grid g(3, 9);
        CHECK(linf_norm(ext_d(ext_d(random_form(g, 0, 2, 12)))) <= 1e-12);
        CHECK(linf_norm(ext_d(ext_d(random_form(g, 1, 2, 13)))) <= 1e-12);
    }
}

// ============================================================================
// codifferential: hand oracles and adjointness
// ============================================================================

TEST_CASE("delta of A = x^1 dx^1 E11 is +E11 at interior vertices") {
    // independent oracle: with the adjoint convention
    //   l2_pair(d u, w) + l2_pair(u, codiff w) = 0
    // codiff is the backward-difference divergence, so at an interior vertex
    //   (codiff A)(i) = (A_1(i) - A_1(i - e_1)) / h = ((x+h/2) - (x-h/2))/h = +1
    Grid g(2, 5);
    MatrixForm A = MatrixForm::zeros(g, 1, 2);
    const int cx = A.comp_of_mask(1);
    for (std::size_t i = 0; i < g.cell_count(1); ++i)
        A.at(cx, i)[0] = g.cell_center(1, g.ccoord(1, i))[0];

    MatrixForm dA = codiff(A);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const Coord c = g.vcoord(i);
        if (g.is_boundary_vertex(c)) continue;
        const double* b = dA.at(0, i);
        CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(b[1]) <= 1e-15);
        CHECK(std::abs(b[2]) <= 1e-15);
        CHECK(std::abs(b[3]) <= 1e-15);
    }
}

TEST_CASE("delta of a constant 1-form vanishes at interior vertices") {
    Grid g(2, 9);
    MatrixForm A = MatrixForm::zeros(g, 1, 2);
    fill_component(A, 1, unit_matrix(2, 0, 1));
    fill_component(A, 2, unit_matrix(2, 1, 0));
    CHECK(interior_linf(codiff(A)) == 0.0);
}

TEST_CASE("adjointness of d and delta is exact") {
    Grid g(2, 17);
    const double tol = 1e-12;

    SUBCASE("0/1 pairing, compactly supported u") {
        MatrixForm u = random_form(g, 0, 2, 21);
        zero_boundary(u);
        MatrixForm w = random_form(g, 1, 2, 22);
        const double lhs = l2_pair(ext_d(u), w) + l2_pair(u, codiff(w));
        const double scale = std::sqrt(l2_pair(ext_d(u), ext_d(u))) * std::sqrt(l2_pair(w, w));
        CHECK(std::abs(lhs) <= tol * scale);
    }
    SUBCASE("0/1 pairing, arbitrary u (transpose convention handles the boundary)") {
        MatrixForm u = random_form(g, 0, 2, 23);
        MatrixForm w = random_form(g, 1, 2, 24);
        const double lhs = l2_pair(ext_d(u), w) + l2_pair(u, codiff(w));
        const double scale = std::sqrt(l2_pair(ext_d(u), ext_d(u))) * std::sqrt(l2_pair(w, w));
        CHECK(std::abs(lhs) <= tol * scale);
    }
    SUBCASE("1/2 pairing") {
        MatrixForm u = random_form(g, 1, 2, 25);
        MatrixForm w = random_form(g, 2, 2, 26);
        const double lhs = l2_pair(ext_d(u), w) + l2_pair(u, codiff(w));
        const double scale = std::sqrt(l2_pair(ext_d(u), ext_d(u))) * std::sqrt(l2_pair(w, w));
        CHECK(std::abs(lhs) <= tol * scale);
    }
}

// ============================================================================
// Laplacian: hand oracles and the exact product identities
// ============================================================================

TEST_CASE("Laplacian of a constant vanishes at interior vertices") {
    Grid g(2, 9);
    MatrixForm u = MatrixForm::zeros(g, 0, 2);
    fill_component(u, 0, unit_matrix(2, 0, 0));
    CHECK(interior_linf(laplacian(u)) == 0.0);
}

TEST_CASE("Laplacian of x^1 squared is 2 at interior vertices") {
    // exact second difference of a quadratic: ((x+h)^2 - 2x^2 + (x-h)^2)/h^2 = 2
    Grid g(2, 5);
    MatrixForm u = MatrixForm::zeros(g, 0, 1);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const double x = g.position(g.vcoord(i))[0];
        *u.at(0, i) = x * x;
    }
    MatrixForm lap = laplacian(u);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        if (g.is_boundary_vertex(g.vcoord(i))) continue;
        CHECK(*lap.at(0, i) == doctest::Approx(2.0).epsilon(1e-13));
    }
}

TEST_CASE("delta product rule is exact at interior vertices") {
    // codiff(U A) - <dU; A> = U codiff(A), the average-of-products identity
    Grid g(2, 17);
    MatrixForm U = random_form(g, 0, 2, 31);
    MatrixForm A = random_form(g, 1, 2, 32);
    MatrixForm lhs = sub(codiff(lmul_vertex(U, A)), inner(ext_d(U), A));
    MatrixForm rhs = lmul_vertex(U, codiff(A));
    CHECK(interior_linf(sub(lhs, rhs)) <= 1e-11);
}

TEST_CASE("Laplacian product identity is exact at interior vertices") {
    // laplacian(F G) = laplacian(F) G + F laplacian(G) + 2 <dF; dG>
    Grid g(2, 17);
    MatrixForm F = random_form(g, 0, 2, 33);
    MatrixForm G = random_form(g, 0, 2, 34);
    MatrixForm lhs = laplacian(wedge(F, G));
    MatrixForm rhs = wedge(laplacian(F), G);
    rhs = add(rhs, wedge(F, laplacian(G)));
    rhs = add(rhs, scale(inner(ext_d(F), ext_d(G)), 2.0));
    CHECK(interior_linf(sub(lhs, rhs)) <= 1e-9);
}

// ============================================================================
// wedge products: hand oracles
// ============================================================================

TEST_CASE("scalar wedge: (f dx^1) ^ (g dx^2) = f g dx^1^dx^2 for constants") {
    Grid g(2, 9);
    MatrixForm a = MatrixForm::zeros(g, 1, 1);
    MatrixForm b = MatrixForm::zeros(g, 1, 1);
    fill_component(a, 1, {2.0});
    fill_component(b, 2, {3.0});
    MatrixForm w = wedge(a, b);
    REQUIRE(w.degree == 2);
    for (std::size_t i = 0; i < g.cell_count(3); ++i)
        CHECK(*w.at(0, i) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("N=2 wedge oracle: E12 dx^1 ^ E21 dx^2 = E11 dx^1^dx^2") {
    // by-hand expansion of the degree (1,1) definition:
    // (a^b)_{12} = a_1 b_2 - a_2 b_1 = E12 E21 - 0 = E11
    Grid g(2, 9);
    MatrixForm a = MatrixForm::zeros(g, 1, 2);
    MatrixForm b = MatrixForm::zeros(g, 1, 2);
    fill_component(a, 1, unit_matrix(2, 0, 1));
    fill_component(b, 2, unit_matrix(2, 1, 0));
    MatrixForm w = wedge(a, b);
    for (std::size_t i = 0; i < g.cell_count(3); ++i) {
        const double* blk = w.at(0, i);
        CHECK(blk[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(blk[1]) <= 1e-15);
        CHECK(std::abs(blk[2]) <= 1e-15);
        CHECK(std::abs(blk[3]) <= 1e-15);
    }
}

TEST_CASE("A ^ A oracle: A = E12 dx^1 + E21 dx^2 gives (E11 - E22) dx^1^dx^2") {
    // brute-force expansion: A_1 A_2 - A_2 A_1 = E12 E21 - E21 E12 = E11 - E22
    Grid g(2, 9);
    MatrixForm A = MatrixForm::zeros(g, 1, 2);
    fill_component(A, 1, unit_matrix(2, 0, 1));
    fill_component(A, 2, unit_matrix(2, 1, 0));
    MatrixForm w = wedge(A, A);
    for (std::size_t i = 0; i < g.cell_count(3); ++i) {
        const double* blk = w.at(0, i);
        CHECK(blk[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(blk[1]) <= 1e-15);
        CHECK(std::abs(blk[2]) <= 1e-15);
        CHECK(blk[3] == doctest::Approx(-1.0).epsilon(1e-15));
    }
}

// ============================================================================
// inner product
// ============================================================================

TEST_CASE("inner oracle: <E12 dx^1; E21 dx^1> = E11 for constant fields") {
    Grid g(2, 9);
    MatrixForm a = MatrixForm::zeros(g, 1, 2);
    MatrixForm b = MatrixForm::zeros(g, 1, 2);
    fill_component(a, 1, unit_matrix(2, 0, 1));
    fill_component(b, 1, unit_matrix(2, 1, 0));
    MatrixForm q = inner(a, b);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const double* blk = q.at(0, i);
        CHECK(blk[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(blk[1]) <= 1e-15);
        CHECK(std::abs(blk[2]) <= 1e-15);
        CHECK(std::abs(blk[3]) <= 1e-15);
    }
}

TEST_CASE("inner multiplication rules for constant matrices") {
    Grid g(2, 9);
    MatrixForm w = random_form(g, 1, 2, 41);
    MatrixForm u = random_form(g, 1, 2, 42);
    const std::vector<double> U{1.0, 2.0, -0.5, 3.0};

    // U <w;u> = <U w; u>
    CHECK(max_abs_diff(lmul_const(U, inner(w, u)), inner(lmul_const(U, w), u)) <= 1e-12);
    // <w U; u> = <w; U u>
    CHECK(max_abs_diff(inner(rmul_const(w, U), u), inner(w, lmul_const(U, u))) <= 1e-12);
    // <w; u U> = <w; u> U
    CHECK(max_abs_diff(inner(w, rmul_const(u, U)), rmul_const(inner(w, u), U)) <= 1e-12);
}

TEST_CASE("<w;w> is nonnegative for scalar fibers") {
    Grid g(2, 9);
    MatrixForm w = random_form(g, 1, 1, 43);
    MatrixForm q = inner(w, w);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) CHECK(*q.at(0, i) >= 0.0);
}

// ============================================================================
// pairings and norms
// ============================================================================

TEST_CASE("l2_pair is a positive symmetric pairing") {
    Grid g(2, 9);
    MatrixForm a = random_form(g, 1, 2, 51);
    MatrixForm b = random_form(g, 1, 2, 52);
    CHECK(l2_pair(a, b) == l2_pair(b, a));
    CHECK(l2_pair(a, a) > 0.0);
    CHECK(l2_pair(MatrixForm::zeros(g, 1, 2), MatrixForm::zeros(g, 1, 2)) == 0.0);
}

TEST_CASE("l2_pair of constant E11 fields equals the vertex mass total") {
    // Riemann sum oracle: h^2 * (#vertices) * tr(E11^T E11) = (17/16)^2
    Grid g(2, 17);
    MatrixForm u = MatrixForm::zeros(g, 0, 2);
    fill_component(u, 0, unit_matrix(2, 0, 0));
    const double mass = std::pow(g.h, 2) * static_cast<double>(g.vertex_count());
    CHECK(l2_pair(u, u) == doctest::Approx(mass).epsilon(1e-14));
    CHECK(l2_pair(u, u) == doctest::Approx(1.0).epsilon(0.15));  // ~1 up to O(h)
}

TEST_CASE("lp_norm oracles") {
    Grid g(2, 5);
    CHECK(lp_norm(MatrixForm::zeros(g, 1, 2), 4.0) == 0.0);
    MatrixForm u = MatrixForm::zeros(g, 0, 2);
    fill_component(u, 0, unit_matrix(2, 0, 0));
    // (h^2 * 25)^(1/2) = 5/4 exactly on the 5x5 unit box
    CHECK(lp_norm(u, 2.0) == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(grad_lp_norm(u, 2.0) == 0.0);
}

TEST_CASE("linf_norm takes the max Frobenius block norm, margin-aware") {
    Grid g(2, 5);
    MatrixForm u = MatrixForm::zeros(g, 0, 2);
    double* corner = u.at(0, g.vindex({0, 0, 0}));
    corner[0] = 3.0;
    corner[1] = 4.0;
    double* center = u.at(0, g.vindex({2, 2, 0}));
    center[0] = 1.0;
    CHECK(linf_norm(u) == 5.0);
    CHECK(linf_norm(u, 1) == 1.0);  // the corner is excluded by the margin
}

TEST_CASE("norms() combines the value and derivative norms consistently") {
    Grid g(2, 9);
    MatrixForm w = random_form(g, 1, 2, 53);
    NormReport r = norms(w, 4.0, 1);
    CHECK(r.lp == lp_norm(w, 4.0, 1));
    CHECK(r.w1p == r.lp + grad_lp_norm(w, 4.0, 1));
    CHECK(r.combo == lp_norm(w, 8.0, 1) + lp_norm(ext_d(w), 4.0, 1));
}

TEST_CASE("zero_boundary removes exactly the boundary layer") {
    Grid g(2, 9);
    MatrixForm w = random_form(g, 1, 2, 54);
    CHECK(boundary_linf(w) > 0.0);
    MatrixForm interior = w;
    zero_boundary(interior);
    CHECK(boundary_linf(interior) == 0.0);
    // interior cells are untouched
    CHECK(linf_norm(sub(w, interior), 1) == 0.0);
}

TEST_CASE("transpose and constant multiplication") {
    Grid g(2, 9);
    MatrixForm w = random_form(g, 1, 2, 55);
    CHECK(max_abs_diff(transpose_form(transpose_form(w)), w) == 0.0);

    MatrixForm e21 = MatrixForm::zeros(g, 0, 2);
    fill_component(e21, 0, unit_matrix(2, 1, 0));
    MatrixForm out = lmul_const(unit_matrix(2, 0, 1), e21);  // E12 * E21 = E11
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const double* blk = out.at(0, i);
        CHECK(blk[0] == 1.0);
        CHECK(blk[1] == 0.0);
        CHECK(blk[2] == 0.0);
        CHECK(blk[3] == 0.0);
    }
}

}  // TEST_SUITE("forms")
