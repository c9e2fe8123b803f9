#include "rlop/powerfn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace rlop {

namespace {

// Gamma(x) for x > 0 with the usual large-argument fallback.
double gamma_pos(double x) {
    if (x < 170.0) return std::tgamma(x);
    return std::exp(std::lgamma(x));
}

// B(u, v) = Gamma(u)Gamma(v)/Gamma(u+v), u, v > 0.
double beta_fn(double u, double v) {
    return std::exp(std::lgamma(u) + std::lgamma(v) - std::lgamma(u + v));
}

constexpr double kDropRel = 1e-12;  // relative coefficient cutoff in normalize

struct TermKey {
    Rational shift, exponent;
    bool operator<(const TermKey& o) const {
        if (shift != o.shift) return shift < o.shift;
        return exponent < o.exponent;
    }
};

std::vector<PowerTerm> merge_terms(std::vector<PowerTerm> in) {
    // scale for the drop threshold comes from the raw input list, so that
    // near-cancelling differences of O(1) terms collapse to the zero function
    double scale = 0.0;
    for (const auto& t : in) scale = std::max(scale, std::abs(t.coeff));
    std::map<TermKey, Complex> acc;
    for (auto& t : in) {
        if (t.shift >= Rational(1)) continue;  // vanishes a.e. on [0,1]
        acc[{t.shift, t.exponent}] += t.coeff;
    }
    std::vector<PowerTerm> out;
    for (auto& [key, c] : acc) {
        if (std::abs(c) < kDropRel * scale) continue;
        if (c == Complex(0.0, 0.0)) continue;
        out.push_back({c, key.shift, key.exponent});
    }
    return out;
}

} // namespace

PowerFn PowerFn::from_terms(std::vector<PowerTerm> terms) {
    for (const auto& t : terms) {
        if (t.shift < Rational(0) || t.shift > Rational(1))
            throw std::domain_error("term shift outside [0,1]: " + t.shift.str());
        if (t.exponent < Rational(0))
            throw std::domain_error("term exponent below 0: " + t.exponent.str());
    }
    return from_terms_internal(std::move(terms));
}

PowerFn PowerFn::from_terms_internal(std::vector<PowerTerm> terms) {
    for (const auto& t : terms) {
        if (t.shift < Rational(0) || t.shift > Rational(1))
            throw std::domain_error("term shift outside [0,1]: " + t.shift.str());
        if (t.exponent <= Rational(-1))
            throw std::domain_error("term exponent <= -1 not representable: " +
                                    t.exponent.str());
    }
    PowerFn f;
    f.terms_ = merge_terms(std::move(terms));
    return f;
}

double PowerFn::coeff_l1() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coeff);
    return s;
}

std::string PowerFn::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.coeff.real();
        if (t.coeff.imag() != 0.0) os << (t.coeff.imag() < 0 ? "" : "+") << t.coeff.imag() << "i";
        os << ")";
        if (t.shift.is_zero()) os << "*x^" << t.exponent.str();
        else os << "*(x-" << t.shift.str() << ")^" << t.exponent.str();
    }
    return os.str();
}

PowerFn PowerFn::monomial(Complex c, const Rational& exponent) {
    return from_terms({{c, Rational(0), exponent}});
}

PowerFn PowerFn::shifted(Complex c, const Rational& a, const Rational& b) {
    return from_terms({{c, a, b}});
}

PowerFn normalize(std::vector<PowerTerm> terms) {
    return PowerFn::from_terms(std::move(terms));
}

PowerFn linear_combine(const std::vector<Complex>& coeffs,
                       const std::vector<PowerFn>& fns) {
    if (coeffs.size() != fns.size())
        throw std::invalid_argument("linear_combine: length mismatch");
    std::vector<PowerTerm> all;
    for (std::size_t i = 0; i < fns.size(); ++i)
        for (const auto& t : fns[i].terms())
            all.push_back({coeffs[i] * t.coeff, t.shift, t.exponent});
    return PowerFn::from_terms_internal(std::move(all));
}

PowerFn add(const PowerFn& f, const PowerFn& g) {
    return linear_combine({Complex(1.0), Complex(1.0)}, {f, g});
}

PowerFn scale(Complex c, const PowerFn& f) {
    return linear_combine({c}, {f});
}

PowerFn convolve(const PowerFn& f, const PowerFn& g) {
    std::vector<PowerTerm> out;
    for (const auto& a : f.terms()) {
        for (const auto& b : g.terms()) {
            Rational shift = a.shift + b.shift;
            if (shift >= Rational(1)) continue;  // Titchmarsh: supports add
            double B = beta_fn(a.exponent.to_double() + 1.0,
                               b.exponent.to_double() + 1.0);
            out.push_back({a.coeff * b.coeff * B, shift,
                           a.exponent + b.exponent + Rational(1)});
        }
    }
    return PowerFn::from_terms_internal(std::move(out));
}

PowerFn fractional_integrate(const Rational& alpha, const PowerFn& f) {
    if (alpha <= Rational(0))
        throw std::domain_error("fractional_integrate: alpha must be positive");
    double ad = alpha.to_double();
    std::vector<PowerTerm> out;
    for (const auto& t : f.terms()) {
        double b = t.exponent.to_double();
        // Gamma(beta+1)/Gamma(beta+alpha+1)
        double factor = std::exp(std::lgamma(b + 1.0) - std::lgamma(b + ad + 1.0));
        out.push_back({t.coeff * factor, t.shift, t.exponent + alpha});
    }
    return PowerFn::from_terms_internal(std::move(out));
}

PowerFn differentiate(const PowerFn& f) {
    std::vector<PowerTerm> out;
    for (const auto& t : f.terms()) {
        if (t.exponent.is_zero()) {
            if (t.shift.is_zero()) continue;  // constant
            throw std::domain_error(
                "differentiate: step at interior shift " + t.shift.str() +
                " has no derivative in this class");
        }
        if (t.exponent < Rational(0))
            throw std::domain_error("differentiate: exponent " + t.exponent.str() +
                                    " already below 0");
        out.push_back({t.coeff * t.exponent.to_double(), t.shift,
                       t.exponent - Rational(1)});
    }
    return PowerFn::from_terms_internal(std::move(out));
}

std::vector<Complex> jet(const PowerFn& f, int k) {
    if (k <= 0) throw std::invalid_argument("jet: k must be >= 1");
    std::vector<Complex> j(k, Complex(0.0));
    for (const auto& t : f.terms()) {
        if (!t.shift.is_zero()) continue;  // flat at 0
        if (t.exponent.is_integer()) {
            long long e = t.exponent.num();
            if (e < k) {
                double fact = 1.0;
                for (long long i = 2; i <= e; ++i) fact *= (double)i;
                j[(std::size_t)e] += t.coeff * fact;
            }
        } else {
            if (t.exponent <= Rational(k - 1))
                throw std::domain_error(
                    "jet: term x^" + t.exponent.str() +
                    " has no derivative of order " + std::to_string(k - 1) + " at 0");
            // non-integer exponent > k-1 contributes zero to every entry
        }
    }
    return j;
}

Rational support_start(const PowerFn& f) {
    if (f.is_zero()) return Rational(1);
    Rational m(1);
    for (const auto& t : f.terms()) m = std::min(m, t.shift);
    return m;
}

namespace {
// shared term rule for argument scaling x -> factor*x plus a shift remap
PowerFn scale_argument(const PowerFn& f, const Rational& factor,
                       const Rational& shift_offset) {
    // term c*(x-s)_+^b  ->  c*factor^b * (x - (s+offset)/factor)_+^b
    std::vector<PowerTerm> out;
    for (const auto& t : f.terms()) {
        Rational new_shift = (t.shift + shift_offset) / factor;
        if (new_shift >= Rational(1)) continue;
        double fb = std::pow(factor.to_double(), t.exponent.to_double());
        out.push_back({t.coeff * fb, new_shift, t.exponent});
    }
    return PowerFn::from_terms_internal(std::move(out));
}
} // namespace

PowerFn compose_La(const Rational& a, const PowerFn& f) {
    if (a <= Rational(0)) throw std::domain_error("compose_La: a must be positive");
    if (a <= Rational(1)) {
        // f(a x): (x-s)^b -> a^b (x - s/a)^b, gone once s/a >= 1
        return scale_argument(f, a, Rational(0));
    }
    // a > 1: f(a x - a + 1) supported in [1-1/a, 1]
    return scale_argument(f, a, a - Rational(1));
}

PowerFn compress(const PowerFn& f, const Rational& s) {
    if (s < Rational(1)) throw std::domain_error("compress: s must be >= 1");
    return scale_argument(f, s, Rational(0));
}

Complex evaluate(const PowerFn& f, const Rational& x) {
    return evaluate(f, x.to_double());
}

Complex evaluate(const PowerFn& f, double x) {
    Complex v(0.0);
    for (const auto& t : f.terms()) {
        double d = x - t.shift.to_double();
        if (d <= 0.0) continue;  // right-continuous step convention
        v += t.coeff * std::pow(d, t.exponent.to_double());
    }
    return v;
}

Complex evaluate_derivative(const PowerFn& f, int m, const Rational& x) {
    if (m < 0) throw std::invalid_argument("evaluate_derivative: negative order");
    Complex v(0.0);
    for (const auto& t : f.terms()) {
        if (x < t.shift) continue;
        if (x == t.shift) {
            // only smooth enough terms contribute a finite value at the knot
            if (t.exponent.is_integer()) {
                long long e = t.exponent.num();
                if (e == m) {
                    double fact = 1.0;
                    for (long long i = 2; i <= e; ++i) fact *= (double)i;
                    v += t.coeff * fact;
                } else if (e < m) {
                    throw std::domain_error("evaluate_derivative: undefined at knot");
                }
                continue;
            }
            if (t.exponent > Rational(m)) continue;  // vanishes at the knot
            throw std::domain_error("evaluate_derivative: undefined at knot");
        }
        double b = t.exponent.to_double();
        double falling = 1.0;
        for (int i = 0; i < m; ++i) falling *= (b - i);
        if (falling == 0.0) continue;
        double d = (x - t.shift).to_double();
        v += t.coeff * falling * std::pow(d, b - m);
    }
    return v;
}

MembershipResult sobolev_membership(const PowerFn& f, int k, double p) {
    if (k < 0) return {false, "negative smoothness order"};
    if (!(p > 1.0) || !std::isfinite(p)) return {false, "p must be in (1,inf)"};
    double threshold = k - 1.0 / p;
    for (const auto& t : f.terms()) {
        double b = t.exponent.to_double();
        if (t.shift.is_zero()) {
            if (t.exponent.is_integer() && t.exponent >= Rational(0)) continue;
            if (b > threshold + 1e-15) continue;
            return {false, "shift-0 term x^" + t.exponent.str() +
                               " fails exponent > k - 1/p = " + std::to_string(threshold)};
        }
        if (t.exponent.is_integer() && t.exponent >= Rational(k)) continue;
        if (b > threshold + 1e-15) continue;
        return {false, "term (x-" + t.shift.str() + ")^" + t.exponent.str() +
                           " is not W^" + std::to_string(k) + " smooth (needs integer >= " +
                           std::to_string(k) + " or exponent > " + std::to_string(threshold) + ")"};
    }
    return {true, ""};
}

bool approx_equal(const PowerFn& f, const PowerFn& g, double tol) {
    PowerFn d = linear_combine({Complex(1.0), Complex(-1.0)}, {f, g});
    double scale = std::max(1.0, std::max(f.coeff_l1(), g.coeff_l1()));
    return d.coeff_l1() <= tol * scale;
}

} // namespace rlop
