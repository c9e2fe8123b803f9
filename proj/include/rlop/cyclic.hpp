#pragma once

// Cyclicity tests and spectral multiplicity for direct sums of fractional
// integration blocks: convolution-determinant machinery for L_p / zero-jet
// Sobolev components, the jet-rank criterion for full Sobolev components,
// the mixed-space combination, and a grid-based Krylov oracle that gives
// independent numerical evidence.

#include <string>
#include <utility>
#include <vector>

#include "rlop/operators.hpp"
#include "rlop/powerfn.hpp"
#include "rlop/report.hpp"

namespace rlop::cyc {

// A candidate system of vectors for the block operator described by `spec`.
// Row l is one candidate vector, column j its component in block j.  Every
// entry must satisfy the membership requirements of its block's flavor
// (checked at construction).
struct FunctionSystem {
    ops::BlockSpec spec;
    std::vector<ops::VectorFn> vectors;

    FunctionSystem(ops::BlockSpec s, std::vector<ops::VectorFn> v);

    int N() const { return static_cast<int>(vectors.size()); }
};

// Spectral multiplicity of the block operator: the Sobolev blocks contribute
// the sum of min(ceil(alpha), k_j); the argument classes (over all blocks)
// contribute their maximal size; the result is the larger of the two.
long long multiplicity(const ops::BlockSpec& spec);

// Determinant of a square matrix of functions computed with convolution as
// the product (permutation expansion).  Capped at 4x4.
PowerFn star_det(const std::vector<std::vector<PowerFn>>& F);

// Largest r such that some r x r convolution-minor of F has support starting
// at 0; 0 if none.  Requires min(rows, cols) <= 4.
int srank(const std::vector<std::vector<PowerFn>>& F);

struct CyclicityReport {
    bool verdict = false;
    long long mu = 0;
    Certificate cert;
};

// Cyclicity for systems whose blocks are all L_p or zero-jet Sobolev.
// Zero-jet components are first reduced to L_p by k_j-fold differentiation;
// then, per argument class, the verdict requires N >= class size and the
// compressed matrix [f_{li}(s_i x)] to have srank equal to the class size.
CyclicityReport srank_test(const FunctionSystem& sys);

// Cyclicity for all-Sobolev systems via the jet matrix at 0: rows indexed by
// (block j, derivative order i < m_j) with m_j = min(ceil(alpha), k_j),
// columns by vector index; verdict requires N >= sum m_j and full row rank.
// The verdict does not depend on the block scalars.
CyclicityReport w0_rank_test(const FunctionSystem& sys);

// Cyclicity for systems mixing full-Sobolev blocks with L_p / zero-jet
// blocks: (a) w0_rank_test on the projected Sobolev part, and (b) the system
// is pushed forward M times (M = largest Sobolev order present), every
// Sobolev component reduced to L_p by differentiation, and srank_test run on
// the result.  Verdict is the conjunction.
CyclicityReport mixed_test(const FunctionSystem& sys);

struct OracleReport {
    double max_residual = 1.0;
    int basis_rank = 0;
    std::vector<std::pair<std::string, double>> per_probe;
};

// Numerical evidence for cyclicity, independent of the symbolic tests:
// sample the system on a uniform grid, iterate the discretized block
// operator `depth` times, orthonormalize the collected embeddings (jet
// slots for full-Sobolev components, then sqrt-trapezoid-weighted samples),
// and report the worst projection residual over a fixed probe basis
// (monomials of degree <= 6 per component plus jet indicator directions).
// Residual < 0.1 is evidence "cyclic"; residual near 1 evidence "not
// cyclic"; an empty system reports 1.
OracleReport krylov_numeric_oracle(const FunctionSystem& sys, int grid_n = 257,
                                   int depth = 40);

}  // namespace rlop::cyc
