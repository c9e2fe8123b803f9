#include "rlop/jordan.hpp"

namespace rlop::jordan {

Matrix<GaussianRational> build_quotient_operator(const std::vector<FiniteBlock>& blocks,
                                                 const Rational& alpha, double p) {
    std::vector<Matrix<GaussianRational>> parts;
    for (const auto& b : blocks)
        parts.push_back(quotient_cell<GaussianRational>(b.k, alpha, p).scaled(b.lambda));
    return Matrix<GaussianRational>::block_diag(parts);
}

long long mu_finite(const std::vector<int>& ks, const Rational& alpha) {
    if (alpha <= Rational(0)) throw std::domain_error("mu_finite: alpha must be positive");
    long long ca = alpha.ceil();  // -[-alpha]
    long long mu = 0;
    for (int k : ks) {
        if (k < 1) throw std::domain_error("mu_finite: block sizes must be >= 1");
        mu += std::min<long long>(ca, k);
    }
    return mu;
}

Cor56Result cor56_check(const std::vector<FiniteBlock>& blocks, const Rational& alpha,
                        double p, const std::vector<std::vector<GaussianRational>>& vectors) {
    Cor56Result r;
    std::vector<int> ks;
    int dim = 0;
    for (const auto& b : blocks) { ks.push_back(b.k); dim += b.k; }
    for (const auto& v : vectors)
        if ((int)v.size() != dim)
            throw std::invalid_argument("cor56_check: vector length mismatch");
    Matrix<GaussianRational> A = build_quotient_operator(blocks, alpha, p);
    r.N = (int)vectors.size();
    r.sum_m = mu_finite(ks, alpha);
    FiniteCyclicity fc = cyclicity_finite(A, vectors);
    r.dim_ker_adjoint = fc.dim_ker_adjoint;
    r.rank_projection = fc.rank_projection;
    bool count_ok = r.N >= r.sum_m;
    bool rank_ok = fc.cyclic;
    r.cyclic = count_ok && rank_ok;
    r.cert.add("count", count_ok,
               "N=" + std::to_string(r.N) + " vs sum m_j=" + std::to_string(r.sum_m));
    r.cert.add("kernel_dimension", r.dim_ker_adjoint == (int)r.sum_m,
               "dim ker A*=" + std::to_string(r.dim_ker_adjoint));
    r.cert.add("projection_rank", rank_ok,
               "rank P_{ker A*}E=" + std::to_string(r.rank_projection));
    return r;
}

} // namespace rlop::jordan
