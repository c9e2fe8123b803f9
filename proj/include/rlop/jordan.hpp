#pragma once
// Finite-dimensional quotient machinery: nilpotent Jordan-cell models of the
// fractional integration operators on jet space, invariant-subspace lattice
// enumeration over small prime fields, and exact cyclicity tests.
//
// Coordinate convention for jet space: within a block of size k, coordinate c
// (1-based) carries the jet value of derivative order k - c, i.e. highest
// order first.  With that ordering the quotient of integration acts as the
// standard lower cell J(0;k): e_1 -> 0, e_j -> e_{j-1}, and the kernel of the
// adjoint sits exactly on the low-order jet slots used by the rank test.

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "rlop/exact.hpp"
#include "rlop/report.hpp"

namespace rlop::jordan {

using exact::GaussianRational;
using exact::Matrix;
using exact::Subspace;

// J(0;k): e_1 -> 0, e_j -> e_{j-1}
template <class K>
Matrix<K> jordan_cell(int k) {
    Matrix<K> m(k, k);
    for (int j = 1; j < k; ++j) m.at(j - 1, j) = K(1);
    return m;
}

// Quotient of J^alpha on the k-jet space: the alpha-th cell power for integer
// alpha; the zero matrix for non-integer alpha with alpha > k - 1/p (all jets
// of J^alpha f vanish then); inadmissible otherwise.
template <class K>
Matrix<K> quotient_cell(int k, const Rational& alpha, double p) {
    if (k < 1) throw std::domain_error("quotient_cell: k must be >= 1");
    if (alpha <= Rational(0)) throw std::domain_error("quotient_cell: alpha must be positive");
    if (alpha.is_integer()) {
        long long a = alpha.num();
        return jordan_cell<K>(k).power((int)std::min<long long>(a, k));
    }
    if (!(p > 1.0)) throw std::domain_error("quotient_cell: p must be in (1,inf)");
    if (alpha.to_double() > k - 1.0 / p)
        return Matrix<K>(k, k);  // zero matrix
    throw std::domain_error("quotient_cell: non-integer alpha " + alpha.str() +
                            " not admissible for k=" + std::to_string(k) +
                            " (needs alpha > k - 1/p)");
}

struct FiniteBlock {
    GaussianRational lambda;
    int k = 1;
};

// A = direct sum of lambda_j * J(0;k_j)^alpha on the jet coordinates.
Matrix<GaussianRational> build_quotient_operator(const std::vector<FiniteBlock>& blocks,
                                                 const Rational& alpha, double p);

// m_j := min(ceil(alpha), k_j); mu = sum over blocks.  Pure formula.
long long mu_finite(const std::vector<int>& ks, const Rational& alpha);

// --- invariant subspace lattices over prime fields -------------------------

template <class K>
struct LatInterval {
    Subspace<K> lower;      // M, invariant for the restriction to ran Q
    Subspace<K> upper;      // Q^{-1} M
    int gap = 0;            // dim upper - dim lower
    int dim_ker = 0;        // dim ker of the operator at this recursion level
};

namespace detail {

template <class K>
Matrix<K> basis_as_columns(const Subspace<K>& s) {
    Matrix<K> B(s.ambient(), s.dim());
    for (int c = 0; c < s.dim(); ++c)
        for (int i = 0; i < s.ambient(); ++i) B.at(i, c) = s.basis()[c][i];
    return B;
}

// solve B x = rhs (consistent by construction); B has independent columns
template <class K>
std::vector<K> solve_in_basis(const Matrix<K>& B, const std::vector<K>& rhs) {
    Matrix<K> aug(B.rows, B.cols + 1);
    for (int i = 0; i < B.rows; ++i) {
        for (int j = 0; j < B.cols; ++j) aug.at(i, j) = B.at(i, j);
        aug.at(i, B.cols) = rhs[i];
    }
    std::vector<int> piv = exact::rref(aug);
    std::vector<K> x(B.cols, K(0));
    for (int r = 0; r < (int)piv.size(); ++r) {
        if (piv[r] == B.cols)
            throw std::logic_error("solve_in_basis: inconsistent system");
        x[piv[r]] = aug.at(r, B.cols);
    }
    return x;
}

template <class K>
std::vector<Subspace<K>>& all_subspaces_cached(int d) {
    static std::map<int, std::vector<Subspace<K>>> cache;
    auto it = cache.find(d);
    if (it == cache.end())
        it = cache.emplace(d, exact::all_subspaces<K>(d)).first;
    return it->second;
}

template <class K>
void lat_rec(const Matrix<K>& Q, std::vector<Subspace<K>>& out,
             std::vector<LatInterval<K>>* intervals) {
    int d = Q.rows;
    if (Q.is_zero()) {
        out = all_subspaces_cached<K>(d);
        return;
    }
    int dim_ker = d - exact::rank(Q);
    Subspace<K> W = exact::column_space(Q);
    Matrix<K> B = basis_as_columns(W);
    int w = W.dim();
    // restriction of Q to its range, in the basis B:  Q B = B C
    Matrix<K> C(w, w);
    for (int c = 0; c < w; ++c) {
        std::vector<K> col(d);
        for (int i = 0; i < d; ++i) col[i] = B.at(i, c);
        std::vector<K> x = solve_in_basis(B, Q.apply(col));
        for (int i = 0; i < w; ++i) C.at(i, c) = x[i];
    }
    std::vector<Subspace<K>> inner;
    lat_rec(C, inner, intervals);

    std::set<Subspace<K>> seen;
    for (const auto& Mw : inner) {
        // lift to the ambient space
        std::vector<std::vector<K>> gens;
        for (const auto& v : Mw.basis()) gens.push_back(B.apply(v));
        Subspace<K> M = Subspace<K>::span(d, gens);
        Subspace<K> P = exact::preimage(Q, M);
        int gap = P.dim() - M.dim();
        if (intervals) intervals->push_back({M, P, gap, dim_ker});
        // complement of M inside P
        std::vector<std::vector<K>> compl_vecs;
        {
            Subspace<K> cur = M;
            for (const auto& v : P.basis()) {
                if (cur.contains(v)) continue;
                compl_vecs.push_back(v);
                cur = cur.sum(Subspace<K>::span(d, {v}));
            }
        }
        int g = (int)compl_vecs.size();
        for (const auto& S : all_subspaces_cached<K>(g)) {
            std::vector<std::vector<K>> g2 = M.basis();
            for (const auto& sv : S.basis()) {
                std::vector<K> u(d, K(0));
                for (int t = 0; t < g; ++t)
                    for (int i = 0; i < d; ++i)
                        u[i] = u[i] + sv[t] * compl_vecs[t][i];
                g2.push_back(std::move(u));
            }
            seen.insert(Subspace<K>::span(d, g2));
        }
    }
    out.assign(seen.begin(), seen.end());
}

} // namespace detail

// Lat(Q) for nilpotent Q via the range-restriction recursion
//   Lat(Q) = union over M in Lat(Q|_{QV}) of [M, Q^{-1}M].
// Throws if Q is not nilpotent.  Optionally records every interval together
// with the kernel dimension at its recursion level (they must match).
template <class K>
std::vector<Subspace<K>> lat_enumerate(const Matrix<K>& Q,
                                       std::vector<LatInterval<K>>* intervals = nullptr) {
    if (Q.rows != Q.cols) throw std::domain_error("lat_enumerate: square matrix required");
    if (Q.rows > 8) throw std::domain_error("lat_enumerate: dimension cap is 8");
    if (!Q.power(Q.rows).is_zero())
        throw std::domain_error("lat_enumerate: operator is not nilpotent");
    std::vector<Subspace<K>> out;
    detail::lat_rec(Q, out, intervals);
    return out;
}

// independent oracle: filter the full subspace census by invariance
template <class K>
std::vector<Subspace<K>> lat_bruteforce(const Matrix<K>& Q) {
    if (Q.rows != Q.cols) throw std::domain_error("lat_bruteforce: square matrix required");
    if (Q.rows > 6) throw std::domain_error("lat_bruteforce: dimension cap is 6");
    std::vector<Subspace<K>> out;
    for (const auto& s : detail::all_subspaces_cached<K>(Q.rows)) {
        bool inv = true;
        for (const auto& b : s.basis())
            if (!s.contains(Q.apply(b))) { inv = false; break; }
        if (inv) out.push_back(s);
    }
    return out;
}

// --- cyclicity on the quotient ---------------------------------------------

struct FiniteCyclicity {
    bool cyclic = false;
    int dim_ker_adjoint = 0;
    int rank_projection = 0;  // rank of P_{ker A*} E
};

// E cyclic for nilpotent A iff its projection onto ker A* is all of ker A*;
// equivalently rank(K^H E) = dim ker A* for K a basis of ker A*.
template <class K>
FiniteCyclicity cyclicity_finite(const Matrix<K>& A,
                                 const std::vector<std::vector<K>>& vectors) {
    Matrix<K> Kb = exact::kernel_basis(A.conj_transpose());
    Matrix<K> E(A.cols, (int)vectors.size());
    for (int c = 0; c < E.cols; ++c)
        for (int i = 0; i < E.rows; ++i) E.at(i, c) = vectors[c][i];
    Matrix<K> G = Kb.conj_transpose() * E;
    FiniteCyclicity r;
    r.dim_ker_adjoint = Kb.cols;
    r.rank_projection = exact::rank(G);
    r.cyclic = (r.rank_projection == r.dim_ker_adjoint);
    return r;
}

// smallest A-invariant subspace containing E
template <class K>
Subspace<K> krylov_span(const Matrix<K>& A, const Subspace<K>& E) {
    Subspace<K> S = E;
    for (;;) {
        Subspace<K> T = S.sum(apply(A, S));
        if (T.dim() == S.dim()) return S;
        S = T;
    }
}

struct Cor56Result {
    bool cyclic = false;
    int N = 0;
    long long sum_m = 0;
    int dim_ker_adjoint = 0;
    int rank_projection = 0;
    Certificate cert;
};

// Jet-space cyclicity criterion: N >= sum m_j and the projection of the vector
// family onto ker A* has full rank sum m_j.
Cor56Result cor56_check(const std::vector<FiniteBlock>& blocks, const Rational& alpha,
                        double p, const std::vector<std::vector<GaussianRational>>& vectors);

} // namespace rlop::jordan
