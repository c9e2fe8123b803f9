#pragma once
// Finite sums of shifted power terms  c * (x - a)_+^beta  on [0,1], with complex
// coefficients and exact rational shifts/exponents.  The class is closed under
// linear combination, convolution, fractional integration, differentiation and
// argument scaling, which is what makes exact operator computations possible.
//
// Conventions:
//   (x - a)_+^0    = 1 for x > a, 0 for x <= a   (right-continuous step)
//   zero function  = empty term list, support_start() == 1

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "rlop/rational.hpp"

namespace rlop {

using Complex = std::complex<double>;

struct PowerTerm {
    Complex coeff;
    Rational shift;     // in [0,1); terms with shift >= 1 vanish a.e. and are dropped
    Rational exponent;  // > -1; public construction requires >= 0
};

class PowerFn {
public:
    PowerFn() = default;  // zero function

    // Public constructor path: validates shift in [0,1], exponent >= 0,
    // merges like terms, drops negligible coefficients (relative 1e-12).
    static PowerFn from_terms(std::vector<PowerTerm> terms);

    // Internal constructor: permits exponents in (-1, 0), which arise from
    // differentiating Sobolev members during the W0 -> Lp reduction.
    static PowerFn from_terms_internal(std::vector<PowerTerm> terms);

    const std::vector<PowerTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Sum of coefficient magnitudes; the residual norm used throughout.
    double coeff_l1() const;

    std::string str() const;  // debug formatting, e.g. "1.5*(x-1/2)^2"

    // convenience builders
    static PowerFn monomial(Complex c, const Rational& exponent);          // c*x^beta
    static PowerFn shifted(Complex c, const Rational& a, const Rational& b); // c*(x-a)_+^b

private:
    std::vector<PowerTerm> terms_;
};

// --- operations ------------------------------------------------------------

// Merge/validate a raw term list into canonical form.
PowerFn normalize(std::vector<PowerTerm> terms);

PowerFn linear_combine(const std::vector<Complex>& coeffs,
                       const std::vector<PowerFn>& fns);

PowerFn add(const PowerFn& f, const PowerFn& g);
PowerFn scale(Complex c, const PowerFn& f);

// Convolution on [0,1]: (f*g)(x) = int_0^x f(x-t) g(t) dt.  Exact term rule via
// the Beta function; terms whose combined shift reaches 1 vanish on [0,1].
PowerFn convolve(const PowerFn& f, const PowerFn& g);

// Riemann-Liouville fractional integration J^alpha, alpha > 0.
PowerFn fractional_integrate(const Rational& alpha, const PowerFn& f);

// Pointwise derivative.  Requires every term to have exponent > 0, or exponent 0
// with shift 0 (constants vanish); a step at an interior shift has no derivative
// in this class and raises std::domain_error.
PowerFn differentiate(const PowerFn& f);

// First k derivative values at 0: (f(0), f'(0), ..., f^(k-1)(0)).
// Shifted terms contribute zero; shift-0 terms need integer exponent or
// exponent > k-1, otherwise the jet does not exist (std::domain_error).
std::vector<Complex> jet(const PowerFn& f, int k);

// Infimum of the support; 1 for the zero function (whole-interval sentinel).
Rational support_start(const PowerFn& f);

// Composition operator L_a:
//   0 < a <= 1:  (L_a f)(x) = f(a x)
//   a > 1:       (L_a f)(x) = 0 on [0, 1-1/a],  f(a x - a + 1) on [1-1/a, 1]
PowerFn compose_La(const Rational& a, const PowerFn& f);

// Argument compression f(s x) for s >= 1, reading f's formula beyond [0,1].
// This is what turns f_{li} into the f_{li}(s_i x) entries of the scaled system
// matrix; it is NOT compose_La(1/s, .), which dilates instead.
PowerFn compress(const PowerFn& f, const Rational& s);

Complex evaluate(const PowerFn& f, const Rational& x);
Complex evaluate(const PowerFn& f, double x);

// m-th derivative value at an interior point x in (0,1]; always defined there
// since every term is smooth away from its shift (and at x == shift for beta
// large enough; otherwise throws).
Complex evaluate_derivative(const PowerFn& f, int m, const Rational& x);

struct MembershipResult {
    bool ok = false;
    std::string reason;
};

// Sobolev membership f in W_p^k[0,1], k >= 0, 1 < p < inf.  k = 0 means L_p.
// Term rules: shift-0 terms need integer exponent >= 0 or exponent > k - 1/p;
// shifted terms need integer exponent >= k or exponent > k - 1/p.
MembershipResult sobolev_membership(const PowerFn& f, int k, double p);

// Term-set comparison: |f - g| coefficients negligible relative to the scale of
// f and g (tol is relative, default matches the frozen test tolerance).
bool approx_equal(const PowerFn& f, const PowerFn& g, double tol = 1e-10);

} // namespace rlop
