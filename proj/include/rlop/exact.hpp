#pragma once
// Exact linear algebra over Q(i) and small prime fields.  Everything the
// finite-dimensional quotient work needs: matrices, reduced echelon forms,
// kernels, canonical subspaces, preimages, and (for prime fields) exhaustive
// subspace enumeration.  Templated on the scalar; kept header-only.

#include <cassert>
#include <set>
#include <string>
#include <vector>

#include "rlop/rational.hpp"

#include <complex>

namespace rlop::exact {

// --- scalars ---------------------------------------------------------------

struct GaussianRational {
    Rational re, im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(r) {}
    GaussianRational(Rational r, Rational i) : re(r), im(i) {}
    GaussianRational(long long n) : re(Rational(n)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational conj() const { return {re, -im}; }
    GaussianRational inverse() const {
        Rational n = re * re + im * im;
        if (n.is_zero()) throw std::domain_error("inverse of zero");
        return {re / n, -im / n};
    }
    GaussianRational operator/(const GaussianRational& o) const { return *this * o.inverse(); }

    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }
    bool operator<(const GaussianRational& o) const {  // ordering for canonical sets only
        if (re != o.re) return re < o.re;
        return im < o.im;
    }

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    // Scalar string form: "3/4+1/2i", "-i", "2".  Throws std::invalid_argument.
    static GaussianRational parse(const std::string& s);
    std::string str() const;

    // Rationalize a complex double (continued fractions per part); false if no
    // small rational round-trips within tol.
    static bool from_complex(std::complex<double> z, GaussianRational& out,
                             long long max_den = 1000000, double tol = 1e-9);
};

// prime field, modulus fixed at compile time (F2 and F3 are what the lattice
// enumeration device uses)
template <int Q>
struct Fp {
    int v = 0;

    Fp() = default;
    Fp(long long x) {
        long long m = x % Q;
        if (m < 0) m += Q;
        v = (int)m;
    }

    bool is_zero() const { return v == 0; }

    Fp operator+(Fp o) const { return Fp(v + o.v); }
    Fp operator-(Fp o) const { return Fp(v - o.v); }
    Fp operator-() const { return Fp(-v); }
    Fp operator*(Fp o) const { return Fp((long long)v * o.v); }
    Fp conj() const { return *this; }  // plain transpose for finite fields
    Fp inverse() const {
        if (v == 0) throw std::domain_error("inverse of zero");
        // Q is prime and tiny; brute force is clearest
        for (int x = 1; x < Q; ++x)
            if ((x * v) % Q == 1) return Fp(x);
        throw std::logic_error("no inverse found (modulus not prime?)");
    }
    Fp operator/(Fp o) const { return *this * o.inverse(); }

    bool operator==(Fp o) const { return v == o.v; }
    bool operator!=(Fp o) const { return v != o.v; }
    bool operator<(Fp o) const { return v < o.v; }

    static constexpr int modulus = Q;
    std::string str() const { return std::to_string(v) + " mod " + std::to_string(Q); }
};

// --- matrices --------------------------------------------------------------

template <class K>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<K> a;  // row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a((std::size_t)r * c) {}

    K& at(int i, int j) { return a[(std::size_t)i * cols + j]; }
    const K& at(int i, int j) const { return a[(std::size_t)i * cols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        assert(cols == o.rows);
        Matrix r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                if (at(i, k).is_zero()) continue;
                for (int j = 0; j < o.cols; ++j)
                    r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        assert(rows == o.rows && cols == o.cols);
        Matrix r(rows, cols);
        for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }

    Matrix scaled(const K& c) const {
        Matrix r = *this;
        for (auto& x : r.a) x = x * c;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Matrix conj_transpose() const {
        Matrix r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j).conj();
        return r;
    }

    Matrix power(int m) const {
        assert(rows == cols && m >= 0);
        Matrix r = identity(rows);
        for (int i = 0; i < m; ++i) r = r * (*this);
        return r;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        assert((int)v.size() == cols);
        std::vector<K> r(rows, K(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero())
                    r[i] = r[i] + at(i, j) * v[j];
        return r;
    }

    static Matrix block_diag(const std::vector<Matrix>& blocks) {
        int r = 0, c = 0;
        for (const auto& b : blocks) { r += b.rows; c += b.cols; }
        Matrix m(r, c);
        int ro = 0, co = 0;
        for (const auto& b : blocks) {
            for (int i = 0; i < b.rows; ++i)
                for (int j = 0; j < b.cols; ++j) m.at(ro + i, co + j) = b.at(i, j);
            ro += b.rows;
            co += b.cols;
        }
        return m;
    }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

// in-place row reduction to reduced row echelon form; returns pivot columns
template <class K>
std::vector<int> rref(Matrix<K>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m.at(i, c).is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        K inv = m.at(r, c).inverse();
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            K f = m.at(i, c);
            for (int j = 0; j < m.cols; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
int rank(Matrix<K> m) {
    return (int)rref(m).size();
}

// columns spanning ker(A)
template <class K>
Matrix<K> kernel_basis(Matrix<K> A) {
    int n = A.cols;
    std::vector<int> pivots = rref(A);
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix<K> ker(n, (int)free_cols.size());
    for (int f = 0; f < (int)free_cols.size(); ++f) {
        int fc = free_cols[f];
        ker.at(fc, f) = K(1);
        for (int r = 0; r < (int)pivots.size(); ++r)
            ker.at(pivots[r], f) = -A.at(r, fc);
    }
    return ker;
}

// --- subspaces -------------------------------------------------------------

// canonical form: basis vectors are the nonzero rows of the RREF of the
// generator list, i.e. pivot-normalized with increasing pivot positions;
// equality of subspaces is sequence equality of these bases
template <class K>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(int ambient) : ambient_(ambient) {}

    static Subspace span(int ambient, const std::vector<std::vector<K>>& generators) {
        Subspace s(ambient);
        if (generators.empty()) return s;
        Matrix<K> m((int)generators.size(), ambient);
        for (int i = 0; i < m.rows; ++i) {
            assert((int)generators[i].size() == ambient);
            for (int j = 0; j < ambient; ++j) m.at(i, j) = generators[i][j];
        }
        std::vector<int> piv = rref(m);
        for (int i = 0; i < (int)piv.size(); ++i) {
            std::vector<K> v(ambient);
            for (int j = 0; j < ambient; ++j) v[j] = m.at(i, j);
            s.basis_.push_back(std::move(v));
        }
        return s;
    }

    int ambient() const { return ambient_; }
    int dim() const { return (int)basis_.size(); }
    const std::vector<std::vector<K>>& basis() const { return basis_; }

    bool contains(std::vector<K> v) const {
        assert((int)v.size() == ambient_);
        for (const auto& b : basis_) {
            int p = pivot_of(b);
            if (p < 0 || v[p].is_zero()) continue;
            K f = v[p];
            for (int j = 0; j < ambient_; ++j) v[j] = v[j] - f * b[j];
        }
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

    bool contains(const Subspace& o) const {
        for (const auto& b : o.basis_)
            if (!contains(b)) return false;
        return true;
    }

    Subspace sum(const Subspace& o) const {
        assert(ambient_ == o.ambient_);
        std::vector<std::vector<K>> gens = basis_;
        gens.insert(gens.end(), o.basis_.begin(), o.basis_.end());
        return span(ambient_, gens);
    }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const {  // for std::set bookkeeping
        if (dim() != o.dim()) return dim() < o.dim();
        return basis_ < o.basis_;
    }

private:
    int ambient_ = 0;
    std::vector<std::vector<K>> basis_;

    static int pivot_of(const std::vector<K>& v) {
        for (int j = 0; j < (int)v.size(); ++j)
            if (!v[j].is_zero()) return j;
        return -1;
    }
};

// image of a subspace under A
template <class K>
Subspace<K> apply(const Matrix<K>& A, const Subspace<K>& s) {
    std::vector<std::vector<K>> gens;
    for (const auto& b : s.basis()) gens.push_back(A.apply(b));
    return Subspace<K>::span(A.rows, gens);
}

// column space of A as a subspace
template <class K>
Subspace<K> column_space(const Matrix<K>& A) {
    std::vector<std::vector<K>> gens;
    for (int j = 0; j < A.cols; ++j) {
        std::vector<K> v(A.rows);
        for (int i = 0; i < A.rows; ++i) v[i] = A.at(i, j);
        gens.push_back(std::move(v));
    }
    return Subspace<K>::span(A.rows, gens);
}

template <class K>
Subspace<K> kernel_space(const Matrix<K>& A) {
    return column_space(kernel_basis(A));
}

// preimage A^{-1}(M) = { v : A v in M }, via the kernel of [A | -B] projected
// onto the v block (B = basis of M as columns)
template <class K>
Subspace<K> preimage(const Matrix<K>& A, const Subspace<K>& M) {
    assert(A.rows == M.ambient());
    int n = A.cols, m = M.dim();
    Matrix<K> aug(A.rows, n + m);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < A.rows; ++i) aug.at(i, n + k) = -M.basis()[k][i];
    Matrix<K> ker = kernel_basis(aug);
    std::vector<std::vector<K>> gens;
    for (int c = 0; c < ker.cols; ++c) {
        std::vector<K> v(n);
        for (int i = 0; i < n; ++i) v[i] = ker.at(i, c);
        gens.push_back(std::move(v));
    }
    return Subspace<K>::span(n, gens);
}

// All subspaces of K^d for an enumerable field, generated directly in reduced
// echelon form (choose pivot columns, then free entries), so no dedup needed.
// Sizes: Galois numbers, e.g. 16 for F_2^3, 2825 for F_2^6, 56632 for F_3^6.
template <class K>
std::vector<Subspace<K>> all_subspaces(int d) {
    constexpr int q = K::modulus;
    std::vector<Subspace<K>> out;
    out.push_back(Subspace<K>(d));  // r = 0
    for (int r = 1; r <= d; ++r) {
        // iterate pivot column combinations p_0 < ... < p_{r-1}
        std::vector<int> piv(r);
        for (int i = 0; i < r; ++i) piv[i] = i;
        while (true) {
            // free positions: (row i, col j) with j > piv[i], j not a pivot
            std::vector<std::pair<int, int>> free_pos;
            {
                std::vector<bool> is_piv(d, false);
                for (int p : piv) is_piv[p] = true;
                for (int i = 0; i < r; ++i)
                    for (int j = piv[i] + 1; j < d; ++j)
                        if (!is_piv[j]) free_pos.push_back({i, j});
            }
            std::size_t total = 1;
            for (std::size_t i = 0; i < free_pos.size(); ++i) total *= (std::size_t)q;
            for (std::size_t code = 0; code < total; ++code) {
                std::vector<std::vector<K>> rows(r, std::vector<K>(d, K(0)));
                for (int i = 0; i < r; ++i) rows[i][piv[i]] = K(1);
                std::size_t c = code;
                for (const auto& [i, j] : free_pos) {
                    rows[i][j] = K((long long)(c % q));
                    c /= q;
                }
                Subspace<K> s(d);
                s = Subspace<K>::span(d, rows);  // already canonical, cheap
                out.push_back(std::move(s));
            }
            // next combination
            int i = r - 1;
            while (i >= 0 && piv[i] == d - r + i) --i;
            if (i < 0) break;
            ++piv[i];
            for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
        }
    }
    return out;
}

} // namespace rlop::exact
