#pragma once
// Uniform-grid numerical engine: product-integration discretization of J^alpha
// and discrete convolution.  These are the O(n^2) kernels; each has an OpenMP
// build/apply path and a serial reference implementation kept for testing
// (tools/bench_grid compares them).  Grid: x_i = i/(n-1), i = 0..n-1.

#include <complex>
#include <string>
#include <vector>

#include "rlop/powerfn.hpp"

namespace rlop::grid {

using Complex = std::complex<double>;

struct GridFn {
    int n = 0;
    std::vector<Complex> v;  // samples at x_i

    GridFn() = default;
    explicit GridFn(int n_) : n(n_), v((std::size_t)n_) {}
};

double node(int i, int n);

GridFn sample(const PowerFn& f, int n);

// Lower-triangular matrix G with (G f)_i ~ (J^alpha f)(x_i): the kernel
// (x_i - t)^{alpha-1}/Gamma(alpha) is integrated exactly against a piecewise-
// constant f (left value per cell).  Row 0 is zero.
struct GridOperator {
    int n = 0;
    std::vector<double> w;  // row-major n x n, real weights

    double at(int i, int j) const { return w[(std::size_t)i * n + j]; }
};

GridOperator frac_integral_operator(double alpha, int n);
GridOperator frac_integral_operator_serial(double alpha, int n);

GridFn apply(const GridOperator& G, const GridFn& f);
GridFn apply_serial(const GridOperator& G, const GridFn& f);

// product-trapezoid discrete convolution; sample 0 is 0, symmetric in (f, g)
GridFn convolve(const GridFn& f, const GridFn& g);
GridFn convolve_serial(const GridFn& f, const GridFn& g);

// trapezoid L_p norm of |f| on [0,1]
double lp_norm(const GridFn& f, double p);

double max_abs_diff(const GridFn& a, const GridFn& b);

// CSV with header "x,re,im"
std::string to_csv(const GridFn& f);

} // namespace rlop::grid
