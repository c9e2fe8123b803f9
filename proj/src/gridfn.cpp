#include "rlop/gridfn.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rlop::grid {

double node(int i, int n) { return (double)i / (double)(n - 1); }

GridFn sample(const PowerFn& f, int n) {
    if (n < 2) throw std::invalid_argument("sample: need n >= 2");
    GridFn g(n);
    for (int i = 0; i < n; ++i) g.v[i] = evaluate(f, node(i, n));
    return g;
}

namespace {

// weight of cell [x_j, x_{j+1}] clipped to [0, x_i] against the RL kernel:
//   int (x_i - t)^{alpha-1}/Gamma(alpha) dt = [(x_i-x_j)^a - (x_i-x_{j+1})^a]/Gamma(a+1)
inline double cell_weight(double alpha, double xi, double xj, double xj1) {
    double hi = xi - xj;
    double lo = xi - xj1;
    if (hi <= 0.0) return 0.0;
    if (lo < 0.0) lo = 0.0;
    double ga = std::tgamma(alpha + 1.0);
    return (std::pow(hi, alpha) - std::pow(lo, alpha)) / ga;
}

GridOperator build(double alpha, int n, bool parallel) {
    if (!(alpha > 0.0)) throw std::invalid_argument("frac_integral_operator: alpha > 0 required");
    if (n < 2) throw std::invalid_argument("frac_integral_operator: need n >= 2");
    GridOperator G;
    G.n = n;
    G.w.assign((std::size_t)n * n, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int i = 1; i < n; ++i) {
        double xi = node(i, n);
        for (int j = 0; j < i; ++j)
            G.w[(std::size_t)i * n + j] =
                cell_weight(alpha, xi, node(j, n), node(j + 1, n));
    }
    (void)parallel;
    return G;
}

GridFn apply_impl(const GridOperator& G, const GridFn& f, bool parallel) {
    if (G.n != f.n) throw std::invalid_argument("apply: size mismatch");
    GridFn r(G.n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int i = 0; i < G.n; ++i) {
        Complex acc(0.0);
        for (int j = 0; j < i; ++j) acc += G.at(i, j) * f.v[j];
        r.v[i] = acc;
    }
    (void)parallel;
    return r;
}

GridFn convolve_impl(const GridFn& f, const GridFn& g, bool parallel) {
    if (f.n != g.n) throw std::invalid_argument("convolve: size mismatch");
    int n = f.n;
    double h = 1.0 / (double)(n - 1);
    GridFn r(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int i = 1; i < n; ++i) {
        // trapezoid over [0, x_i] of f(x_i - t) g(t)
        Complex acc = 0.5 * (f.v[i] * g.v[0] + f.v[0] * g.v[i]);
        for (int j = 1; j < i; ++j) acc += f.v[i - j] * g.v[j];
        r.v[i] = h * acc;
    }
    (void)parallel;
    return r;
}

} // namespace

GridOperator frac_integral_operator(double alpha, int n) { return build(alpha, n, true); }
GridOperator frac_integral_operator_serial(double alpha, int n) { return build(alpha, n, false); }

GridFn apply(const GridOperator& G, const GridFn& f) { return apply_impl(G, f, true); }
GridFn apply_serial(const GridOperator& G, const GridFn& f) { return apply_impl(G, f, false); }

GridFn convolve(const GridFn& f, const GridFn& g) { return convolve_impl(f, g, true); }
GridFn convolve_serial(const GridFn& f, const GridFn& g) { return convolve_impl(f, g, false); }

double lp_norm(const GridFn& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p >= 1 required");
    int n = f.n;
    double h = 1.0 / (double)(n - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * std::pow(std::abs(f.v[i]), p);
    }
    return std::pow(h * acc, 1.0 / p);
}

double max_abs_diff(const GridFn& a, const GridFn& b) {
    if (a.n != b.n) throw std::invalid_argument("max_abs_diff: size mismatch");
    double m = 0.0;
    for (int i = 0; i < a.n; ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

std::string to_csv(const GridFn& f) {
    std::ostringstream os;
    os.precision(17);
    os << "x,re,im\n";
    for (int i = 0; i < f.n; ++i)
        os << node(i, f.n) << "," << f.v[i].real() << "," << f.v[i].imag() << "\n";
    return os.str();
}

} // namespace rlop::grid
