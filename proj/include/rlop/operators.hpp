#pragma once
// Block operators lambda_j J^alpha on direct sums of L_p / Sobolev components:
// the validated description of a direct sum, symbolic application, commutant
// candidates built from convolution kernels, membership certificates for the
// weakly closed algebra and the bicommutant, the M/N factorization through
// the first block, and the grid-based extended-eigenvector probe.

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "rlop/powerfn.hpp"
#include "rlop/report.hpp"

namespace rlop::ops {

enum class Flavor { Lp, W0, W };

std::string flavor_name(Flavor f);

struct Block {
    Complex lambda;
    int k = 0;
    Flavor flavor = Flavor::Lp;
};

// An argument class groups blocks whose lambda ratios are real and positive.
// Within a class, lambda_i = lambda_first / s_i^alpha with 1 = s_1 <= s_2 <= ...
struct ArgClass {
    std::vector<int> members;   // block indices, in spec order
    std::vector<Rational> s;    // scale factors, parallel to members
};

class BlockSpec {
public:
    BlockSpec(Rational alpha, double p, std::vector<Block> blocks);

    const Rational& alpha() const { return alpha_; }
    double p() const { return p_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    int n() const { return (int)blocks_.size(); }
    const std::vector<ArgClass>& classes() const { return classes_; }

    int class_of(int block) const { return class_of_[block]; }
    const Rational& s_of(int block) const { return s_of_[block]; }
    // a_{ij} = s_i^{-1} s_j; only defined within one argument class
    Rational a_ratio(int i, int j) const;

    bool all_flavor(Flavor f) const;
    bool has_flavor(Flavor f) const;
    // common block size; throws if blocks disagree
    int common_k() const;

private:
    Rational alpha_;
    double p_;
    std::vector<Block> blocks_;
    std::vector<ArgClass> classes_;
    std::vector<int> class_of_;
    std::vector<Rational> s_of_;
};

using VectorFn = std::vector<PowerFn>;  // one component per block

// validates component membership in each block's space (W: Sobolev; W0:
// Sobolev with zero jet; Lp: any representable function)
void validate_vector(const BlockSpec& spec, const VectorFn& v);

// A f = (lambda_j J^alpha f_j)_j
VectorFn apply_block_operator(const BlockSpec& spec, const VectorFn& v);

// --- convolution-type operators --------------------------------------------

struct ConvOperator {
    enum class Form { MultiplierPlusConv, VolterraDerivative };
    Form form = Form::VolterraDerivative;
    Complex c{0.0};  // MultiplierPlusConv: c f + r * f
    PowerFn r;
    PowerFn k;       // VolterraDerivative: d/dx (k * f)

    static ConvOperator multiplier_plus_conv(Complex c, PowerFn r);
    static ConvOperator volterra(PowerFn k);

    PowerFn apply(const PowerFn& f) const;
};

// one entry of a block operator matrix: L_a composed after a convolution op
struct BlockEntry {
    Rational a{1};
    ConvOperator op;
};

struct BlockOperatorMatrix {
    int n = 0;
    std::vector<std::vector<std::optional<BlockEntry>>> entries;  // [i][j]

    explicit BlockOperatorMatrix(int n_)
        : n(n_), entries((std::size_t)n_, std::vector<std::optional<BlockEntry>>((std::size_t)n_)) {}

    void set(int i, int j, BlockEntry e) { entries[i][j] = std::move(e); }
    VectorFn apply(const VectorFn& v) const;
};

// Commutant element of a single-argument-class spec from an n x n kernel
// matrix: entry (i,j) = L_{a_ij} . d/dx(k_ij * .), where a_ij = s_i^{-1} s_j.
// Kernel classes: k_ij in W_p^k when a_ij <= 1, and additionally zero k-jet
// (W_{p,0}^k) when a_ij > 1.  Violations are reported with the offending (i,j).
BlockOperatorMatrix commutant_candidate(const BlockSpec& spec,
                                        const std::vector<std::vector<PowerFn>>& kernels);

struct ResidualReport {
    double max_residual = 0.0;
    std::vector<double> per_vector;
};

// max over test vectors and components of the term-l1 norm of (R A - A R) f
ResidualReport verify_commutation(const BlockOperatorMatrix& R, const BlockSpec& spec,
                                  const std::vector<VectorFn>& testset);

// monomial test vectors: x^d in a single component, all blocks, d <= maxdeg
std::vector<VectorFn> monomial_testset(const BlockSpec& spec, int maxdeg = 6);

// --- algebra / bicommutant membership --------------------------------------

// diagonal candidate: R_i f = c_i f + r_i * f on block i
struct DiagConv {
    Complex c{0.0};
    PowerFn r;
};

// Membership of diag(c_i + r_i*.) in the weakly closed algebra generated by
// the block operator.  Supported regimes: integer alpha with 1 <= alpha <= k-1
// (jet conditions plus cross-class coupling), and 2 <= k <= alpha + 1/p
// (kernels in W_{p,0}^{k-1}).  Anything else throws an unsupported-regime error.
Certificate alg_membership(const std::vector<DiagConv>& ops, const BlockSpec& spec);

// Membership in the bicommutant: per argument class a common multiplier and
// the scaling relation r_i(x) = s_i^{-1} r_1(s_i^{-1} x); kernels in W_p^{k-1}.
Certificate bicommutant_membership(const std::vector<DiagConv>& ops, const BlockSpec& spec);

// dim({A}'' / Alg A) = r k - 1 - [(k-1)/alpha] for r argument classes
long long quotient_dimension(const BlockSpec& spec);

// --- factorization through the first block ----------------------------------

struct FactorizationPair {
    std::function<PowerFn(const PowerFn&)> M;  // M_i f = f(s_i^{-1} x)
    std::function<PowerFn(const PowerFn&)> N;  // N_i, flavor-dependent
};

// (lambda_i J^alpha)^m = M_i (lambda_1 J^alpha)^m N_i within an argument class.
// Lp flavor: N_i f = f(s_i x) cut at 1/s_i (invisible to the composition).
// W flavor: N_i continues past 1/s_i by the (k-1)-th Taylor polynomial at 1;
// exact for polynomial inputs, which is what the identity is exercised on.
FactorizationPair build_M_N(const BlockSpec& spec, int block_index);

// --- extended eigenvector probe ---------------------------------------------

struct ProbeReport {
    double residual = 0.0;           // min ||X J^a - c J^a X||_F / ||X||_F over the class
    double control_residual = 0.0;   // same for c_pos = a^alpha (a = |c|^{1/alpha})
    double ratio = 0.0;
    double a = 1.0;
    int n = 0;
    int degree = 0;
};

// Grid search for X = L_a . (c0 I + conv(r)) with a polynomial kernel r of
// degree < degree; the positive control uses c_pos = a^alpha with the same a.
// Nonreal or negative c admit no intertwiner, so the residual stays O(1),
// while c_pos always has one (exactly, when a = 1).
ProbeReport extended_eigen_probe(double alpha, Complex c, int n = 64, int degree = 8);

} // namespace rlop::ops
