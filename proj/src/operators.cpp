#include "rlop/operators.hpp"

#include "rlop/gridfn.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace rlop::ops {

std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Lp: return "Lp";
        case Flavor::W0: return "W0";
        case Flavor::W: return "W";
    }
    return "?";
}

namespace {
bool ratio_real_positive(Complex num, Complex den) {
    Complex r = num / den;
    double mag = std::abs(r);
    return mag > 0.0 && std::abs(r.imag()) <= 1e-12 * mag && r.real() > 0.0;
}
} // namespace

BlockSpec::BlockSpec(Rational alpha, double p, std::vector<Block> blocks)
    : alpha_(std::move(alpha)), p_(p), blocks_(std::move(blocks)) {
    if (alpha_ <= Rational(0)) throw std::domain_error("spec: alpha must be positive");
    if (!(p_ > 1.0) || !std::isfinite(p_)) throw std::domain_error("spec: p must be in (1,inf)");
    if (blocks_.empty()) throw std::domain_error("spec: at least one block required");

    int max_sobolev_k = 0;
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        const Block& b = blocks_[j];
        if (b.lambda == Complex(0.0))
            throw std::domain_error("spec: lambda must be nonzero (block " + std::to_string(j) + ")");
        if (b.flavor == Flavor::Lp && b.k != 0)
            throw std::domain_error("spec: Lp blocks must have k = 0");
        if (b.flavor == Flavor::W && b.k < 1)
            throw std::domain_error("spec: W blocks must have k >= 1");
        if (b.k < 0) throw std::domain_error("spec: negative k");
        if (b.flavor != Flavor::Lp) max_sobolev_k = std::max(max_sobolev_k, b.k);
    }
    // admissibility of J^alpha on the Sobolev components
    if (max_sobolev_k > 0 && !alpha_.is_integer() &&
        !(alpha_.to_double() > max_sobolev_k - 1.0 / p_))
        throw std::domain_error(
            "spec: non-integer alpha " + alpha_.str() + " is not admissible for k=" +
            std::to_string(max_sobolev_k) + " (needs alpha > k - 1/p)");

    // argument classes in order of first appearance
    class_of_.assign(blocks_.size(), -1);
    s_of_.assign(blocks_.size(), Rational(1));
    for (int j = 0; j < (int)blocks_.size(); ++j) {
        int found = -1;
        for (int c = 0; c < (int)classes_.size(); ++c) {
            int rep = classes_[c].members.front();
            if (ratio_real_positive(blocks_[j].lambda, blocks_[rep].lambda)) { found = c; break; }
        }
        if (found < 0) {
            classes_.push_back({{j}, {Rational(1)}});
            class_of_[j] = (int)classes_.size() - 1;
            continue;
        }
        ArgClass& cls = classes_[found];
        int rep = cls.members.front();
        // lambda_j = lambda_rep / s^alpha  =>  s = (|lambda_rep| / |lambda_j|)^{1/alpha}
        double sv = std::pow(std::abs(blocks_[rep].lambda) / std::abs(blocks_[j].lambda),
                             1.0 / alpha_.to_double());
        Rational s;
        if (!Rational::from_double(sv, s, 1000000, 1e-9))
            throw std::domain_error("spec: scale factor s_j for block " + std::to_string(j) +
                                    " is not a small rational (" + std::to_string(sv) + ")");
        if (s < cls.s.back())
            throw std::domain_error("spec: within an argument class the scale factors must be "
                                    "non-decreasing (block " + std::to_string(j) + ")");
        cls.members.push_back(j);
        cls.s.push_back(s);
        class_of_[j] = found;
        s_of_[j] = s;
    }
}

Rational BlockSpec::a_ratio(int i, int j) const {
    if (class_of_[i] != class_of_[j])
        throw std::domain_error("a_ratio: blocks in different argument classes");
    return s_of_[j] / s_of_[i];
}

bool BlockSpec::all_flavor(Flavor f) const {
    for (const auto& b : blocks_)
        if (b.flavor != f) return false;
    return true;
}

bool BlockSpec::has_flavor(Flavor f) const {
    for (const auto& b : blocks_)
        if (b.flavor == f) return true;
    return false;
}

int BlockSpec::common_k() const {
    int k = blocks_.front().k;
    for (const auto& b : blocks_)
        if (b.k != k) throw std::domain_error("operation requires a common block size k");
    return k;
}

void validate_vector(const BlockSpec& spec, const VectorFn& v) {
    if ((int)v.size() != spec.n())
        throw std::invalid_argument("vector has " + std::to_string(v.size()) +
                                    " components, spec has " + std::to_string(spec.n()));
    for (int j = 0; j < spec.n(); ++j) {
        const Block& b = spec.blocks()[j];
        if (b.k == 0) continue;  // L_p: any representable function
        MembershipResult m = sobolev_membership(v[j], b.k, spec.p());
        if (!m.ok)
            throw std::domain_error("component " + std::to_string(j) + ": " + m.reason);
        if (b.flavor == Flavor::W0) {
            auto J = jet(v[j], b.k);
            double scale = 1.0 + v[j].coeff_l1();
            for (int i = 0; i < b.k; ++i)
                if (std::abs(J[i]) > 1e-10 * scale)
                    throw std::domain_error("component " + std::to_string(j) +
                                            ": nonzero jet entry " + std::to_string(i) +
                                            " in a zero-jet block");
        }
    }
}

VectorFn apply_block_operator(const BlockSpec& spec, const VectorFn& v) {
    if ((int)v.size() != spec.n()) throw std::invalid_argument("apply: size mismatch");
    VectorFn out(v.size());
    for (int j = 0; j < spec.n(); ++j)
        out[j] = scale(spec.blocks()[j].lambda, fractional_integrate(spec.alpha(), v[j]));
    return out;
}

// --- ConvOperator -----------------------------------------------------------

ConvOperator ConvOperator::multiplier_plus_conv(Complex c, PowerFn r) {
    ConvOperator op;
    op.form = Form::MultiplierPlusConv;
    op.c = c;
    op.r = std::move(r);
    return op;
}

ConvOperator ConvOperator::volterra(PowerFn k) {
    ConvOperator op;
    op.form = Form::VolterraDerivative;
    op.k = std::move(k);
    return op;
}

PowerFn ConvOperator::apply(const PowerFn& f) const {
    if (form == Form::MultiplierPlusConv)
        return add(scale(c, f), convolve(r, f));
    return differentiate(convolve(k, f));
}

VectorFn BlockOperatorMatrix::apply(const VectorFn& v) const {
    if ((int)v.size() != n) throw std::invalid_argument("block apply: size mismatch");
    VectorFn out((std::size_t)n);
    for (int i = 0; i < n; ++i) {
        std::vector<Complex> coeffs;
        std::vector<PowerFn> parts;
        for (int j = 0; j < n; ++j) {
            if (!entries[i][j]) continue;
            const BlockEntry& e = *entries[i][j];
            PowerFn g = e.op.apply(v[j]);
            if (e.a != Rational(1)) g = compose_La(e.a, g);
            coeffs.push_back(Complex(1.0));
            parts.push_back(std::move(g));
        }
        out[i] = parts.empty() ? PowerFn() : linear_combine(coeffs, parts);
    }
    return out;
}

BlockOperatorMatrix commutant_candidate(const BlockSpec& spec,
                                        const std::vector<std::vector<PowerFn>>& kernels) {
    int k = spec.common_k();
    int n = spec.n();
    if ((int)kernels.size() != n)
        throw std::invalid_argument("commutant_candidate: kernel matrix must be n x n");
    BlockOperatorMatrix R(n);
    for (int i = 0; i < n; ++i) {
        if ((int)kernels[i].size() != n)
            throw std::invalid_argument("commutant_candidate: kernel matrix must be n x n");
        for (int j = 0; j < n; ++j) {
            const PowerFn& ker = kernels[i][j];
            if (ker.is_zero()) continue;
            if (spec.class_of(i) != spec.class_of(j))
                throw std::domain_error(
                    "commutant_candidate: entry (" + std::to_string(i) + "," +
                    std::to_string(j) + ") couples distinct argument classes; the commutant "
                    "is block diagonal across classes, so this kernel must vanish");
            Rational a = spec.a_ratio(i, j);
            if (k >= 1) {
                MembershipResult m = sobolev_membership(ker, k, spec.p());
                if (!m.ok)
                    throw std::domain_error("commutant_candidate: kernel (" + std::to_string(i) +
                                            "," + std::to_string(j) + ") not in W_p^k: " + m.reason);
                if (a > Rational(1)) {
                    auto J = jet(ker, k);
                    double scl = 1.0 + ker.coeff_l1();
                    for (int t = 0; t < k; ++t)
                        if (std::abs(J[t]) > 1e-10 * scl)
                            throw std::domain_error(
                                "commutant_candidate: kernel (" + std::to_string(i) + "," +
                                std::to_string(j) + ") needs a zero k-jet when a_ij > 1 "
                                "(entry crosses to a faster block)");
                }
            }
            R.set(i, j, BlockEntry{a, ConvOperator::volterra(ker)});
        }
    }
    return R;
}

ResidualReport verify_commutation(const BlockOperatorMatrix& R, const BlockSpec& spec,
                                  const std::vector<VectorFn>& testset) {
    ResidualReport rep;
    for (const auto& f : testset) {
        VectorFn lhs = R.apply(apply_block_operator(spec, f));
        VectorFn rhs = apply_block_operator(spec, R.apply(f));
        double res = 0.0;
        for (int j = 0; j < spec.n(); ++j) {
            PowerFn d = linear_combine({Complex(1.0), Complex(-1.0)}, {lhs[j], rhs[j]});
            res = std::max(res, d.coeff_l1());
        }
        rep.per_vector.push_back(res);
        rep.max_residual = std::max(rep.max_residual, res);
    }
    return rep;
}

std::vector<VectorFn> monomial_testset(const BlockSpec& spec, int maxdeg) {
    std::vector<VectorFn> out;
    for (int j = 0; j < spec.n(); ++j)
        for (int d = 0; d <= maxdeg; ++d) {
            VectorFn v((std::size_t)spec.n());
            v[j] = PowerFn::monomial(Complex(1.0), Rational(d));
            out.push_back(std::move(v));
        }
    return out;
}

// --- algebra / bicommutant membership ---------------------------------------

namespace {

constexpr double kTol = 1e-10;

bool jet_is_zero(const std::vector<Complex>& J, double scale) {
    for (const auto& v : J)
        if (std::abs(v) > kTol * scale) return false;
    return true;
}

// regime of the Alg description; throws outside both
enum class AlgRegime { JetCoupled, ZeroJetKernels };

AlgRegime alg_regime(const BlockSpec& spec, int k) {
    const Rational& al = spec.alpha();
    if (al.is_integer()) {
        long long a = al.num();
        if (a >= 1 && a <= k - 1) return AlgRegime::JetCoupled;
        if (k >= 2 && k <= a) return AlgRegime::ZeroJetKernels;  // k <= alpha + 1/p, 1/p < 1
        throw std::domain_error("alg_membership: (alpha=" + al.str() + ", k=" +
                                std::to_string(k) + ") outside the supported regimes");
    }
    // non-integer admissible alpha satisfies alpha > k - 1/p, so k <= alpha + 1/p
    if (k >= 2) return AlgRegime::ZeroJetKernels;
    throw std::domain_error("alg_membership: k=1 with non-integer alpha is outside the "
                            "supported regimes");
}

// shared checks: kernels in W_p^{k-1} plus the in-class scaling relation
void check_kernels_and_scaling(Certificate& cert, const std::vector<DiagConv>& ops,
                               const BlockSpec& spec, int k) {
    for (int i = 0; i < spec.n(); ++i) {
        MembershipResult m = sobolev_membership(ops[i].r, k - 1, spec.p());
        cert.add("kernel_smoothness_block_" + std::to_string(i), m.ok, m.reason);
    }
    for (const auto& cls : spec.classes()) {
        int first = cls.members.front();
        for (std::size_t t = 1; t < cls.members.size(); ++t) {
            int i = cls.members[t];
            const Rational& s = cls.s[t];
            // r_i(x) = s^{-1} r_first(s^{-1} x)
            PowerFn expect = scale(Complex(1.0 / s.to_double()),
                                   compose_La(Rational(1) / s, ops[first].r));
            bool ok = approx_equal(ops[i].r, expect, kTol);
            cert.add("scaling_block_" + std::to_string(i), ok,
                     "r_i must be s^{-1} r_first(s^{-1} x), s=" + s.str());
        }
    }
}

void check_common_c(Certificate& cert, const std::vector<DiagConv>& ops,
                    const std::vector<int>& indices, const std::string& label) {
    double scale = 1.0;
    for (int i : indices) scale = std::max(scale, std::abs(ops[i].c));
    bool ok = true;
    for (int i : indices)
        if (std::abs(ops[i].c - ops[indices.front()].c) > kTol * scale) ok = false;
    cert.add(label, ok, "");
}

} // namespace

Certificate alg_membership(const std::vector<DiagConv>& ops, const BlockSpec& spec) {
    if (!spec.all_flavor(Flavor::W))
        throw std::domain_error("alg_membership: all blocks must be Sobolev (W) blocks");
    int k = spec.common_k();
    if ((int)ops.size() != spec.n())
        throw std::invalid_argument("alg_membership: need one operator per block");
    AlgRegime regime = alg_regime(spec, k);

    Certificate cert;
    std::vector<int> all;
    for (int i = 0; i < spec.n(); ++i) all.push_back(i);
    check_common_c(cert, ops, all, "common_multiplier");
    check_kernels_and_scaling(cert, ops, spec, k);

    if (regime == AlgRegime::ZeroJetKernels) {
        // 2 <= k <= alpha + 1/p: class-leading kernels lie in W_{p,0}^{k-1}
        for (const auto& cls : spec.classes()) {
            int first = cls.members.front();
            if (k - 1 < 1) continue;
            auto J = jet(ops[first].r, k - 1);
            cert.add("zero_jet_class_" + std::to_string(spec.class_of(first)),
                     jet_is_zero(J, 1.0 + ops[first].r.coeff_l1()),
                     "kernel jets through order k-2 must vanish");
        }
        return cert;
    }

    // JetCoupled: integer alpha, 1 <= alpha <= k-1
    long long a = spec.alpha().num();
    long long mmax = (k - 1) / a;  // [(k-1)/alpha]
    int first_class_rep = spec.classes().front().members.front();
    std::vector<Complex> lead_jet =
        jet(ops[first_class_rep].r, k - 1);
    for (std::size_t c = 0; c < spec.classes().size(); ++c) {
        int rep = spec.classes()[c].members.front();
        auto J = jet(ops[rep].r, k - 1);
        double scl = 1.0 + ops[rep].r.coeff_l1();
        // jets vanish except at orders m*alpha - 1
        bool jets_ok = true;
        for (int l = 0; l <= k - 2; ++l) {
            bool exempt = (l + 1) % a == 0 && (l + 1) / a >= 1 && (l + 1) / a <= mmax;
            if (!exempt && std::abs(J[l]) > kTol * scl) jets_ok = false;
        }
        cert.add("jet_conditions_class_" + std::to_string(c), jets_ok,
                 "r^(l)(0) = 0 for l != m*alpha - 1");
        if (c == 0) continue;
        // coupling to the first class: r_rep^(m a - 1)(0) = (lambda_rep/lambda_1)^m * ...
        Complex ratio = spec.blocks()[rep].lambda / spec.blocks()[first_class_rep].lambda;
        bool coupled = true;
        Complex pw(1.0);
        for (long long m = 1; m <= mmax; ++m) {
            pw *= ratio;
            Complex lhs = J[(std::size_t)(m * a - 1)];
            Complex rhs = pw * lead_jet[(std::size_t)(m * a - 1)];
            if (std::abs(lhs - rhs) > kTol * (1.0 + std::abs(rhs))) coupled = false;
        }
        cert.add("cross_class_coupling_class_" + std::to_string(c), coupled,
                 "r_j^(m*alpha-1)(0) = (lambda_j/lambda_1)^m r_1^(m*alpha-1)(0)");
    }
    return cert;
}

Certificate bicommutant_membership(const std::vector<DiagConv>& ops, const BlockSpec& spec) {
    if (!spec.all_flavor(Flavor::W))
        throw std::domain_error("bicommutant_membership: all blocks must be Sobolev (W) blocks");
    int k = spec.common_k();
    if ((int)ops.size() != spec.n())
        throw std::invalid_argument("bicommutant_membership: need one operator per block");
    Certificate cert;
    // multipliers couple within a class but are free across classes
    for (std::size_t c = 0; c < spec.classes().size(); ++c)
        check_common_c(cert, ops, spec.classes()[c].members,
                       "common_multiplier_class_" + std::to_string(c));
    check_kernels_and_scaling(cert, ops, spec, k);
    return cert;
}

long long quotient_dimension(const BlockSpec& spec) {
    if (!spec.all_flavor(Flavor::W))
        throw std::domain_error("quotient_dimension: all blocks must be Sobolev (W) blocks");
    int k = spec.common_k();
    long long r = (long long)spec.classes().size();
    // [(k-1)/alpha]
    long long br = (Rational(k - 1) / spec.alpha()).floor();
    return r * k - 1 - br;
}

// --- M/N factorization -------------------------------------------------------

namespace {

// Taylor continuation past 1/s for the Sobolev right factor; exact on
// polynomial inputs (shift-0 integer exponents), which is all the identity
// needs.  Continuation: sum_{m<k} f^{(m)}(1) (s x - 1)^m / m!.
PowerFn sobolev_N(const PowerFn& f, const Rational& s, int k) {
    if (s == Rational(1)) return f;
    long long maxdeg = 0;
    for (const auto& t : f.terms()) {
        if (!t.shift.is_zero() || !t.exponent.is_integer())
            throw std::domain_error("Sobolev N_i: Taylor continuation implemented for "
                                    "polynomial inputs only");
        maxdeg = std::max(maxdeg, t.exponent.num());
    }
    PowerFn g1 = compress(f, s);  // f(s x), again a polynomial
    // coefficients of g1 in the basis (x - 1/s)^t
    Rational inv_s = Rational(1) / s;
    std::vector<Complex> re((std::size_t)maxdeg + 1, Complex(0.0));
    for (const auto& t : g1.terms()) {
        long long j = t.exponent.num();
        // x^j = sum_t C(j,t) (1/s)^{j-t} (x - 1/s)^t
        double binom = 1.0;
        for (long long tt = 0; tt <= j; ++tt) {
            if (tt > 0) binom = binom * (double)(j - tt + 1) / (double)tt;
            re[(std::size_t)tt] += t.coeff * binom *
                                   std::pow(inv_s.to_double(), (double)(j - tt));
        }
    }
    // On (1/s, 1] the result is the (k-1)-th Taylor polynomial of f at 1,
    // i.e.  sum_{m<k} f^(m)(1) (s x - 1)^m / m!.  Orders below k of that
    // polynomial agree identically with the expansion of g1 about 1/s
    // (g1^(m)(1/s) = s^m f^(m)(1)), so the correction only cancels the
    // orders >= k of g1 -- subtracting them term by term avoids the
    // catastrophic near-cancellation a direct difference would produce.
    std::vector<PowerTerm> corr;
    for (std::size_t t = (std::size_t)k; t < re.size(); ++t)
        if (re[t] != Complex(0.0))
            corr.push_back({-re[t], inv_s, Rational((long long)t)});
    return add(g1, PowerFn::from_terms_internal(std::move(corr)));
}

} // namespace

FactorizationPair build_M_N(const BlockSpec& spec, int block_index) {
    if (block_index < 0 || block_index >= spec.n())
        throw std::invalid_argument("build_M_N: bad block index");
    const Block& b = spec.blocks()[block_index];
    Rational s = spec.s_of(block_index);
    FactorizationPair pair;
    pair.M = [s](const PowerFn& f) { return compose_La(Rational(1) / s, f); };
    if (b.flavor == Flavor::W) {
        int k = b.k;
        pair.N = [s, k](const PowerFn& f) { return sobolev_N(f, s, k); };
    } else {
        pair.N = [s](const PowerFn& f) { return compress(f, s); };
    }
    return pair;
}

// --- extended eigenvector probe ----------------------------------------------

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// grid composition matrix for L_a (linear interpolation between nodes)
MatrixXd composition_matrix(double a, int n) {
    MatrixXd D = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double x = (double)i / (double)(n - 1);
        double y;  // evaluation point of f
        if (a <= 1.0) {
            y = a * x;
        } else {
            if (x < 1.0 - 1.0 / a) continue;  // row stays zero
            y = a * x - a + 1.0;
        }
        double pos = y * (n - 1);
        int j0 = (int)std::floor(pos);
        if (j0 >= n - 1) { D(i, n - 1) = 1.0; continue; }
        double frac = pos - j0;
        D(i, j0) = 1.0 - frac;
        D(i, j0 + 1) = frac;
    }
    return D;
}

// product-trapezoid convolution matrix for a fixed kernel sample vector
MatrixXd convolution_matrix(const std::vector<double>& kernel, int n) {
    double h = 1.0 / (double)(n - 1);
    MatrixXd C = MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double w = (j == 0 || j == i) ? 0.5 : 1.0;
            C(i, j) += h * w * kernel[(std::size_t)(i - j)];
        }
    return C;
}

double min_generalized_residual(const MatrixXcd& A, const MatrixXcd& B) {
    // min ||A t|| / ||B t|| over t with B t != 0
    MatrixXcd AhA = A.adjoint() * A;
    MatrixXcd BhB = B.adjoint() * B;
    // restrict to directions that actually move X (drop the near-null space of B)
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(BhB);
    VectorXd ev = es.eigenvalues();
    double cutoff = 1e-20 * ev.maxCoeff();
    std::vector<int> keep;
    for (int i = 0; i < ev.size(); ++i)
        if (ev(i) > cutoff) keep.push_back(i);
    MatrixXcd V(BhB.rows(), (int)keep.size());
    for (int t = 0; t < (int)keep.size(); ++t) V.col(t) = es.eigenvectors().col(keep[t]);
    MatrixXcd Ar = V.adjoint() * AhA * V;
    MatrixXcd Br = V.adjoint() * BhB * V;
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXcd> ges(Ar, Br);
    double mu = ges.eigenvalues().minCoeff();
    return std::sqrt(std::max(mu, 0.0));
}

double class_residual(double alpha, Complex c, double a, int n, int degree) {
    using rlop::grid::frac_integral_operator;
    rlop::grid::GridOperator G = frac_integral_operator(alpha, n);
    MatrixXd J(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) J(i, j) = G.at(i, j);
    MatrixXd D = composition_matrix(a, n);

    int m = degree + 1;  // identity coefficient + conv kernels x^0..x^{degree-1}
    std::vector<MatrixXd> basis;
    basis.push_back(D);  // theta_0 * L_a
    for (int d = 0; d < degree; ++d) {
        std::vector<double> ker(n);
        for (int i = 0; i < n; ++i)
            ker[i] = std::pow((double)i / (double)(n - 1), (double)d);
        basis.push_back(D * convolution_matrix(ker, n));
    }
    MatrixXcd A(n * n, m), B(n * n, m);
    for (int t = 0; t < m; ++t) {
        const MatrixXd& X = basis[(std::size_t)t];
        MatrixXd XJ = X * J, JX = J * X;
        MatrixXcd R = XJ.cast<Complex>() - c * JX.cast<Complex>();
        MatrixXcd Xc = X.cast<Complex>();
        A.col(t) = Eigen::Map<MatrixXcd>(R.data(), n * n, 1);
        B.col(t) = Eigen::Map<MatrixXcd>(Xc.data(), n * n, 1);
    }
    return min_generalized_residual(A, B);
}

} // namespace

namespace {
// the search class is {L_a . VOLTERRA(poly)} union {VOLTERRA(poly)}
double union_residual(double alpha, Complex c, double a, int n, int degree) {
    double r = class_residual(alpha, c, a, n, degree);
    if (a != 1.0) r = std::min(r, class_residual(alpha, c, 1.0, n, degree));
    return r;
}
} // namespace

ProbeReport extended_eigen_probe(double alpha, Complex c, int n, int degree) {
    if (!(alpha > 0.0)) throw std::invalid_argument("probe: alpha > 0 required");
    if (c == Complex(0.0)) throw std::invalid_argument("probe: c must be nonzero");
    if (n < 32) throw std::invalid_argument("probe: grid size must be at least 32");
    ProbeReport rep;
    rep.n = n;
    rep.degree = degree;
    rep.a = std::pow(std::abs(c), 1.0 / alpha);
    rep.residual = union_residual(alpha, c, rep.a, n, degree);
    double c_pos = std::pow(rep.a, alpha);
    rep.control_residual = union_residual(alpha, Complex(c_pos, 0.0), rep.a, n, degree);
    rep.ratio = rep.residual / std::max(rep.control_residual, 1e-300);
    if (rep.ratio > 1e300) rep.ratio = 1e300;
    return rep;
}

} // namespace rlop::ops
