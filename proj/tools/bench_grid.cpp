// Timing comparison for the grid kernels: serial reference vs OpenMP build,
// apply and convolve paths.  Run with OMP_NUM_THREADS set to taste.

#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
static double omp_get_wtime() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}
static int omp_get_max_threads() { return 1; }
#endif

#include "rlop/gridfn.hpp"
#include "rlop/powerfn.hpp"

using namespace rlop;

int main() {
    const double alpha = 0.5;
    std::printf("grid kernel benchmark, alpha = %.2f, threads = %d\n", alpha,
                omp_get_max_threads());
    std::printf("%8s %14s %14s %10s %14s %14s %10s\n", "n", "build_ser", "build_omp",
                "speedup", "conv_ser", "conv_omp", "speedup");

    for (int n : {512, 1024, 2048, 4096}) {
        double t0 = omp_get_wtime();
        grid::GridOperator Gs = grid::frac_integral_operator_serial(alpha, n);
        double t1 = omp_get_wtime();
        grid::GridOperator Gp = grid::frac_integral_operator(alpha, n);
        double t2 = omp_get_wtime();

        double dmax = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double d = std::abs(Gs.at(i, j) - Gp.at(i, j));
                if (d > dmax) dmax = d;
            }
        if (dmax != 0.0) {
            std::printf("serial/omp operator mismatch at n=%d: %g\n", n, dmax);
            return 1;
        }

        PowerFn f = PowerFn::monomial(1.0, Rational(1, 2));
        PowerFn g = PowerFn::shifted(1.0, Rational(1, 4), Rational(1));
        grid::GridFn fa = grid::sample(f, n);
        grid::GridFn ga = grid::sample(g, n);

        double t3 = omp_get_wtime();
        grid::GridFn cs = grid::convolve_serial(fa, ga);
        double t4 = omp_get_wtime();
        grid::GridFn cp = grid::convolve(fa, ga);
        double t5 = omp_get_wtime();
        if (grid::max_abs_diff(cs, cp) != 0.0) {
            std::printf("serial/omp convolve mismatch at n=%d\n", n);
            return 1;
        }

        std::printf("%8d %12.4f s %12.4f s %9.2fx %12.4f s %12.4f s %9.2fx\n", n,
                    t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1), t4 - t3, t5 - t4,
                    (t4 - t3) / (t5 - t4));
    }

    // apply path at the largest size
    const int n = 4096;
    grid::GridOperator G = grid::frac_integral_operator(alpha, n);
    grid::GridFn fa = grid::sample(PowerFn::monomial(1.0, Rational(2)), n);
    double t0 = omp_get_wtime();
    grid::GridFn as = grid::apply_serial(G, fa);
    double t1 = omp_get_wtime();
    grid::GridFn ap = grid::apply(G, fa);
    double t2 = omp_get_wtime();
    if (grid::max_abs_diff(as, ap) != 0.0) {
        std::printf("serial/omp apply mismatch\n");
        return 1;
    }
    std::printf("apply  n=%d: serial %.4f s, omp %.4f s, %.2fx\n", n, t1 - t0, t2 - t1,
                (t1 - t0) / (t2 - t1));
    return 0;
}
