#pragma once
// Invariant and hyperinvariant subspace machinery for the block operators:
// the polytope of continuous cut-offs, exact membership predicates for the
// chain subspaces, a grid scan checking invariance against the polytope,
// descriptor verifiers for the invariant / hyperinvariant lattices, and the
// worked two-block example reproduced over F2 and over Gaussian rationals.

#include <optional>
#include <string>
#include <vector>

#include "rlop/exact.hpp"
#include "rlop/jordan.hpp"
#include "rlop/operators.hpp"
#include "rlop/powerfn.hpp"
#include "rlop/report.hpp"

namespace rlop::lat {

using ops::BlockSpec;

// One node of the per-block subspace chain: either "vanish on [0,a]"
// (continuous; a = 0 denotes the zero-jet subspace, a = 1 the zero space) or
// "first k-l jet entries vanish" (discrete level; l = k is the full space).
struct ChainNode {
    enum class Kind { Continuous, Level };
    Kind kind = Kind::Continuous;
    Rational a{0};
    int l = 0;

    static ChainNode continuous(Rational a_) {
        ChainNode n;
        n.kind = Kind::Continuous;
        n.a = std::move(a_);
        return n;
    }
    static ChainNode level(int l_) {
        ChainNode n;
        n.kind = Kind::Level;
        n.l = l_;
        return n;
    }
};

// The polytope of admissible cut-off tuples for one argument class with
// scales 1 = s_1 <= ... <= s_n:
//   s_i a_{i+1} <= s_{i+1} a_i <= s_{i+1} - s_i + s_i a_{i+1},  1 <= i < n,
// all a_i in [0,1].  Exact rational arithmetic; boundary counts as inside.
bool polytope_membership(const std::vector<Rational>& s, const std::vector<Rational>& a);

// Membership of f in the chain subspace of W_p^k described by the node.
// Continuous a: support_start(f) >= a (for a = 0 the zero-jet condition).
// Level l: jet entries 0 .. k-l-1 vanish.  Throws if f is not in W_p^k.
bool membership_E(const PowerFn& f, const ChainNode& node, int k, double p);

struct ScanRow {
    std::vector<Rational> a;
    bool invariant = false;
    bool polytope = false;
    bool agree = false;
};

struct ScanReport {
    std::vector<ScanRow> rows;
    long long tuples = 0;
    long long agreements = 0;
    bool all_agree = true;
};

// For every cut-off tuple on the m^n grid {0, 1/(m-1), ..., 1}^n: apply the
// commutant generator family (diagonal multiplier+convolution, every
// off-diagonal composition block) to shifted-power probes spanning the
// candidate subspace, test the images for support membership, and compare the
// verdict with polytope_membership.  Single argument class, all blocks L_p,
// n <= 3.  Grid tuples are processed in parallel.
ScanReport invariance_scan(const BlockSpec& spec, int m, bool parallel = true);

// Descriptor for an invariant subspace of a direct sum with pairwise distinct
// argument classes: blocks in S carry a joint discrete part (a subspace of the
// jet quotient, invariant under the quotient operator), blocks outside S carry
// independent continuous cut-offs.  When interval_lower is present the
// discrete part is presented as the lattice interval [M, Q^{-1}M] and the
// dimension identity dim Q^{-1}M - dim M = dim ker Q is verified.
struct LatDescriptor {
    std::vector<int> S;  // strictly increasing block indices
    exact::Subspace<exact::GaussianRational> discrete;
    std::vector<Rational> continuous;  // a_j for j outside S, increasing j
    std::optional<exact::Subspace<exact::GaussianRational>> interval_lower;
};

Certificate lat_descriptor_verify(const BlockSpec& spec, const LatDescriptor& d);

// Descriptor for a hyperinvariant subspace: one chain node per block.  Within
// an argument class (common block size k): discrete levels are monotone
// non-decreasing in the scale order and sit strictly above every continuous
// block of the class in that order; continuous cut-offs obey the polytope and
// the boundary bound a_i <= 1 - s_i/s_j against every discrete s_j.  Across
// classes the nodes are free (the lattice splits).
struct HyplatDescriptor {
    std::vector<ChainNode> nodes;  // one per block
};

Certificate hyplat_descriptor_verify(const BlockSpec& spec, const HyplatDescriptor& d);

struct Ex44Report {
    long long f2_count = 0;              // |Lat(0 + J(0;2))| over F2
    std::vector<long long> f2_census;    // counts per dimension 0..3
    Certificate cert;
    bool ok = false;
};

// Reproduces the two-block worked example (k = (1,2), lambda = (i,1),
// alpha = 1): the F2 model of the jet quotient has exactly 8 invariant
// subspaces with dimension census 1/3/3/1, and over Gaussian rationals the
// four families (zero; lines inside ker; planes containing the distinguished
// kernel vector; everything) are verified by membership and invariance tests.
Ex44Report ex44_reproduce();

} // namespace rlop::lat
