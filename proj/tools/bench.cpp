/// @file bench.cpp
/// @brief Kernel benchmark: OpenMP cochain kernels against the serial
///        reference implementation, plus one Poisson solve. Every timed pair
///        is also checked for agreement (the kernels use deterministic
///        reductions, so results must match bit for bit).

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "gaugelift/forms.hpp"
#include "gaugelift/poisson.hpp"
#include "gaugelift/reference.hpp"
#include "gaugelift/rng.hpp"

using namespace gaugelift;

namespace {

using Clock = std::chrono::steady_clock;

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

MatrixForm random_form(const Grid& g, int degree, int fiber, SplitMix64& rng) {
    MatrixForm w = MatrixForm::zeros(g, degree, fiber);
    for (auto& comp : w.comp)
        for (double& x : comp) x = rng.uniform(-1.0, 1.0);
    return w;
}

bool identical(const MatrixForm& a, const MatrixForm& b) {
    if (!a.same_layout(b)) return false;
    for (std::size_t c = 0; c < a.comp.size(); ++c)
        if (a.comp[c] != b.comp[c]) return false;
    return true;
}

struct Row {
    std::string name;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    bool agree = false;
};

void print_rows(const std::vector<Row>& rows) {
    std::printf("%-28s %12s %12s %9s  %s\n", "kernel", "serial ms", "parallel ms", "speedup",
                "agreement");
    for (const Row& r : rows)
        std::printf("%-28s %12.3f %12.3f %9.2f  %s\n", r.name.c_str(), r.serial_ms, r.parallel_ms,
                    r.serial_ms / r.parallel_ms, r.agree ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int shape = 257;
    int reps = 5;
    if (argc > 1) shape = std::atoi(argv[1]);
    if (argc > 2) reps = std::atoi(argv[2]);
    if (shape < 3 || reps < 1) {
        std::fprintf(stderr, "usage: bench_kernels [shape>=3] [reps>=1]\n");
        return 2;
    }

    const Grid g(2, shape);
    const int N = 2;
    SplitMix64 rng(42);
    const MatrixForm u0 = random_form(g, 0, N, rng);
    const MatrixForm a1 = random_form(g, 1, N, rng);
    const MatrixForm b1 = random_form(g, 1, N, rng);

    std::printf("grid %dx%d, fiber %dx%d, %d reps, omp_get_max_threads() = %d\n\n", shape, shape,
                N, N, reps, omp_get_max_threads());

    std::vector<Row> rows;
    bool all_agree = true;

    {
        Row r{"ext_d (0-form)"};
        MatrixForm out_p, out_s;
        r.parallel_ms = time_best_of(reps, [&] { out_p = ext_d(u0); });
        r.serial_ms = time_best_of(reps, [&] { out_s = ref::ext_d(u0); });
        r.agree = identical(out_p, out_s);
        rows.push_back(r);
    }
    {
        Row r{"ext_d (1-form)"};
        MatrixForm out_p, out_s;
        r.parallel_ms = time_best_of(reps, [&] { out_p = ext_d(a1); });
        r.serial_ms = time_best_of(reps, [&] { out_s = ref::ext_d(a1); });
        r.agree = identical(out_p, out_s);
        rows.push_back(r);
    }
    {
        Row r{"codiff (1-form)"};
        MatrixForm out_p, out_s;
        r.parallel_ms = time_best_of(reps, [&] { out_p = codiff(a1); });
        r.serial_ms = time_best_of(reps, [&] { out_s = ref::codiff(a1); });
        r.agree = identical(out_p, out_s);
        rows.push_back(r);
    }
    {
        Row r{"laplacian (0-form)"};
        MatrixForm out_p, out_s;
        r.parallel_ms = time_best_of(reps, [&] { out_p = laplacian(u0); });
        r.serial_ms = time_best_of(reps, [&] { out_s = ref::laplacian(u0); });
        r.agree = identical(out_p, out_s);
        rows.push_back(r);
    }
    {
        Row r{"lmul_vertex (0 x 1)"};
        MatrixForm out_p, out_s;
        r.parallel_ms = time_best_of(reps, [&] { out_p = lmul_vertex(u0, a1); });
        r.serial_ms = time_best_of(reps, [&] { out_s = ref::lmul_vertex(u0, a1); });
        r.agree = identical(out_p, out_s);
        rows.push_back(r);
    }
    {
        Row r{"inner (1,1)"};
        MatrixForm out_p, out_s;
        r.parallel_ms = time_best_of(reps, [&] { out_p = inner(a1, b1); });
        r.serial_ms = time_best_of(reps, [&] { out_s = ref::inner(a1, b1); });
        r.agree = identical(out_p, out_s);
        rows.push_back(r);
    }
    {
        Row r{"l2_pair (1,1)"};
        double out_p = 0.0, out_s = 0.0;
        r.parallel_ms = time_best_of(reps, [&] { out_p = l2_pair(a1, b1); });
        r.serial_ms = time_best_of(reps, [&] { out_s = ref::l2_pair(a1, b1); });
        r.agree = out_p == out_s;
        rows.push_back(r);
    }
    {
        Row r{"lp_norm (p=4, margin 1)"};
        double out_p = 0.0, out_s = 0.0;
        r.parallel_ms = time_best_of(reps, [&] { out_p = lp_norm(a1, 4.0, 1); });
        r.serial_ms = time_best_of(reps, [&] { out_s = ref::lp_norm(a1, 4.0, 1); });
        r.agree = out_p == out_s;
        rows.push_back(r);
    }

    for (const Row& r : rows) all_agree = all_agree && r.agree;
    print_rows(rows);

    {
        // one representative Poisson solve (not paired: the CG loop reuses the
        // same kernels on both sides)
        MatrixForm f = random_form(g, 0, N, rng);
        zero_boundary(f);
        const MatrixForm bc = MatrixForm::zeros(g, 0, N);
        MatrixForm sol;
        PoissonStats st;
        const double ms = time_best_of(1, [&] { st = solve_dirichlet(f, bc, sol, 1e-10); });
        std::printf("\npoisson solve_dirichlet: %.1f ms, %d iterations, rel residual %.2e\n", ms,
                    st.iterations, st.rel_residual);
    }

    if (!all_agree) {
        std::fprintf(stderr, "\nkernel disagreement detected\n");
        return 1;
    }
    return 0;
}
