/// @file test_parallel_agreement.cpp
/// @brief The OpenMP kernels must agree bit-for-bit with the serial
///        reference implementations, independent of the thread count.

#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gaugelift/forms.hpp"
#include "gaugelift/reference.hpp"
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

bool bit_equal(const MatrixForm& a, const MatrixForm& b) {
    if (!a.same_layout(b) || a.degree != b.degree) return false;
    for (std::size_t c = 0; c < a.comp.size(); ++c)
        if (a.comp[c] != b.comp[c]) return false;
    return true;
}

}  // namespace

TEST_SUITE("parallel") {

TEST_CASE("OpenMP kernels reproduce the serial reference bit for bit") {
#ifdef _OPENMP
    omp_set_num_threads(4);  // oversubscribe deliberately
#endif

    Grid g2(2, 33);
    Grid g3(3, 9);

    SUBCASE("ext_d") {
        MatrixForm u2 = random_form(g2, 0, 2, 1);
        CHECK(bit_equal(ext_d(u2), ref::ext_d(u2)));
        MatrixForm u3 = random_form(g3, 1, 2, 2);
        CHECK(bit_equal(ext_d(u3), ref::ext_d(u3)));
    }
    SUBCASE("codiff") {
        MatrixForm a1 = random_form(g2, 1, 2, 3);
        CHECK(bit_equal(codiff(a1), ref::codiff(a1)));
        MatrixForm a2 = random_form(g3, 2, 2, 4);
        CHECK(bit_equal(codiff(a2), ref::codiff(a2)));
    }
    SUBCASE("laplacian") {
        MatrixForm u0 = random_form(g2, 0, 2, 5);
        CHECK(bit_equal(laplacian(u0), ref::laplacian(u0)));
        MatrixForm u1 = random_form(g2, 1, 2, 6);
        CHECK(bit_equal(laplacian(u1), ref::laplacian(u1)));
    }
    SUBCASE("lmul_vertex") {
        MatrixForm u = random_form(g2, 0, 2, 7);
        MatrixForm a = random_form(g2, 1, 2, 8);
        CHECK(bit_equal(lmul_vertex(u, a), ref::lmul_vertex(u, a)));
    }
    SUBCASE("inner") {
        MatrixForm a = random_form(g2, 1, 2, 9);
        MatrixForm b = random_form(g2, 1, 2, 10);
        CHECK(bit_equal(inner(a, b), ref::inner(a, b)));
    }
    SUBCASE("l2_pair and lp_norm reductions") {
        MatrixForm a = random_form(g2, 1, 2, 11);
        MatrixForm b = random_form(g2, 1, 2, 12);
        CHECK(l2_pair(a, b) == ref::l2_pair(a, b));
        CHECK(lp_norm(a, 4.0) == ref::lp_norm(a, 4.0));
        CHECK(lp_norm(a, 4.0, 2) == ref::lp_norm(a, 4.0, 2));
        MatrixForm c = random_form(g3, 1, 2, 13);
        CHECK(lp_norm(c, 4.0, 1) == ref::lp_norm(c, 4.0, 1));
    }
}

TEST_CASE("reductions are independent of the thread count") {
#ifdef _OPENMP
    Grid g(2, 33);
    MatrixForm a = random_form(g, 1, 2, 21);
    MatrixForm b = random_form(g, 1, 2, 22);
    omp_set_num_threads(1);
    const double pair1 = l2_pair(a, b);
    const double norm1 = lp_norm(a, 4.0, 1);
    MatrixForm lap1 = laplacian(a);
    omp_set_num_threads(4);
    CHECK(l2_pair(a, b) == pair1);
    CHECK(lp_norm(a, 4.0, 1) == norm1);
    CHECK(bit_equal(laplacian(a), lap1));
#endif
}

}  // TEST_SUITE("parallel")
