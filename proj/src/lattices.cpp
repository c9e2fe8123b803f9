#include "rlop/lattices.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rlop::lat {

using exact::GaussianRational;
using exact::Matrix;
using exact::Subspace;
using ops::Block;
using ops::Flavor;

bool polytope_membership(const std::vector<Rational>& s, const std::vector<Rational>& a) {
    if (s.size() != a.size() || s.empty())
        throw std::invalid_argument("polytope_membership: s and a must have equal nonzero length");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] <= Rational(0))
            throw std::invalid_argument("polytope_membership: scales must be positive");
        if (i + 1 < s.size() && s[i + 1] < s[i])
            throw std::invalid_argument("polytope_membership: scales must be sorted non-decreasing");
        if (a[i] < Rational(0) || a[i] > Rational(1))
            throw std::invalid_argument("polytope_membership: cut-offs must lie in [0,1]");
    }
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        Rational lhs = s[i] * a[i + 1];
        Rational mid = s[i + 1] * a[i];
        Rational rhs = s[i + 1] - s[i] + s[i] * a[i + 1];
        if (lhs > mid || mid > rhs) return false;
    }
    return true;
}

namespace {

constexpr double kJetTol = 1e-10;

bool jet_vanishes_through(const PowerFn& f, int count) {
    if (count <= 0) return true;
    auto J = jet(f, count);
    double scale = 1.0 + f.coeff_l1();
    for (const auto& v : J)
        if (std::abs(v) > kJetTol * scale) return false;
    return true;
}

} // namespace

bool membership_E(const PowerFn& f, const ChainNode& node, int k, double p) {
    MembershipResult m = sobolev_membership(f, k, p);
    if (!m.ok) throw std::domain_error("membership_E: " + m.reason);
    if (node.kind == ChainNode::Kind::Continuous) {
        if (node.a < Rational(0) || node.a > Rational(1))
            throw std::invalid_argument("membership_E: cut-off outside [0,1]");
        // the continuous chain sits inside the zero-jet subspace
        return jet_vanishes_through(f, k) && support_start(f) >= node.a;
    }
    if (node.l < 0 || node.l > k)
        throw std::invalid_argument("membership_E: level outside [0,k]");
    return jet_vanishes_through(f, k - node.l);
}

// --- invariance scan --------------------------------------------------------

namespace {

// worst-case images of the probe through one commutant generator entry
bool tuple_invariant(const BlockSpec& spec, const std::vector<Rational>& a) {
    const int n = spec.n();
    PowerFn one = PowerFn::monomial(Complex(1.0), Rational(0));
    for (int j = 0; j < n; ++j) {
        if (a[j] >= Rational(1)) continue;  // component is the zero space
        for (long long beta = 0; beta <= 2; ++beta) {
            PowerFn probe = PowerFn::shifted(Complex(1.0), a[j], Rational(beta));
            PowerFn conv_probe = convolve(one, probe);
            for (int i = 0; i < n; ++i) {
                Rational aij = spec.a_ratio(i, j);
                for (const PowerFn* g : {&probe, &conv_probe}) {
                    PowerFn img = (aij == Rational(1)) ? *g : compose_La(aij, *g);
                    if (support_start(img) < a[i]) return false;
                }
            }
        }
    }
    return true;
}

} // namespace

ScanReport invariance_scan(const BlockSpec& spec, int m, bool parallel) {
    if (spec.classes().size() != 1)
        throw std::domain_error("invariance_scan: single argument class required");
    if (!spec.all_flavor(Flavor::Lp))
        throw std::domain_error("invariance_scan: all blocks must be L_p blocks");
    const int n = spec.n();
    if (n > 3) throw std::domain_error("invariance_scan: at most 3 blocks");
    if (m < 2) throw std::invalid_argument("invariance_scan: grid resolution must be >= 2");

    std::vector<Rational> svec(n);
    for (int j = 0; j < n; ++j) svec[j] = spec.s_of(j);

    long long total = 1;
    for (int j = 0; j < n; ++j) total *= m;

    ScanReport rep;
    rep.tuples = total;
    rep.rows.resize((std::size_t)total);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long long idx = 0; idx < total; ++idx) {
        std::vector<Rational> a(n);
        long long rem = idx;
        for (int j = 0; j < n; ++j) {
            a[j] = Rational(rem % m) / Rational(m - 1);
            rem /= m;
        }
        ScanRow row;
        row.a = a;
        row.invariant = tuple_invariant(spec, a);
        row.polytope = polytope_membership(svec, a);
        row.agree = (row.invariant == row.polytope);
        rep.rows[(std::size_t)idx] = std::move(row);
    }
    (void)parallel;

    for (const auto& r : rep.rows) {
        if (r.agree) ++rep.agreements;
        else rep.all_agree = false;
    }
    return rep;
}

// --- Lat descriptor ----------------------------------------------------------

namespace {

GaussianRational lambda_exact(Complex z) {
    GaussianRational g;
    if (!GaussianRational::from_complex(z, g))
        throw std::domain_error("descriptor verification needs Gaussian-rational lambdas");
    return g;
}

bool subspace_invariant(const Matrix<GaussianRational>& Q,
                        const Subspace<GaussianRational>& S) {
    for (const auto& b : S.basis())
        if (!S.contains(Q.apply(b))) return false;
    return true;
}

} // namespace

Certificate lat_descriptor_verify(const BlockSpec& spec, const LatDescriptor& d) {
    const int n = spec.n();
    if (!spec.all_flavor(Flavor::W))
        throw std::domain_error("lat_descriptor_verify: all blocks must be Sobolev (W) blocks");
    if ((int)spec.classes().size() != n)
        throw std::domain_error("lat_descriptor_verify: argument classes must be pairwise "
                                "distinct (shared classes are outside the verified description)");

    Certificate cert;

    bool s_ok = true;
    for (std::size_t t = 0; t < d.S.size(); ++t) {
        if (d.S[t] < 0 || d.S[t] >= n) s_ok = false;
        if (t > 0 && d.S[t] <= d.S[t - 1]) s_ok = false;
    }
    cert.add("subset_wellformed", s_ok, "S must be a strictly increasing list of block indices");
    if (!s_ok) return cert;

    bool cont_ok = (int)d.continuous.size() == n - (int)d.S.size();
    for (const auto& a : d.continuous)
        if (a < Rational(0) || a > Rational(1)) cont_ok = false;
    cert.add("continuous_range", cont_ok,
             "one cut-off in [0,1] per block outside S (any tuple is admissible)");

    std::vector<jordan::FiniteBlock> fblocks;
    long long ambient = 0;
    for (int j : d.S) {
        fblocks.push_back({lambda_exact(spec.blocks()[j].lambda), spec.blocks()[j].k});
        ambient += spec.blocks()[j].k;
    }
    bool amb_ok = d.discrete.ambient() == (int)ambient;
    cert.add("discrete_ambient", amb_ok,
             "discrete part lives on the " + std::to_string(ambient) + "-dimensional jet quotient");
    if (!amb_ok) return cert;

    Matrix<GaussianRational> Q = jordan::build_quotient_operator(fblocks, spec.alpha(), spec.p());
    cert.add("discrete_invariant", subspace_invariant(Q, d.discrete),
             "discrete part must be invariant under the quotient operator");

    if (d.interval_lower) {
        const Subspace<GaussianRational>& M = *d.interval_lower;
        bool lower_ok = M.ambient() == (int)ambient;
        cert.add("interval_lower_ambient", lower_ok, "");
        if (lower_ok) {
            Subspace<GaussianRational> ran = exact::column_space(Q);
            cert.add("interval_lower_in_range", ran.contains(M),
                     "M must lie in the range of the quotient operator");
            cert.add("interval_lower_invariant", subspace_invariant(Q, M), "");
            Subspace<GaussianRational> upper = exact::preimage(Q, M);
            std::vector<int> ks;
            for (int j : d.S) ks.push_back(spec.blocks()[j].k);
            long long expected = jordan::mu_finite(ks, spec.alpha());
            cert.add("interval_gap_identity", upper.dim() - M.dim() == (int)expected,
                     "dim Q^{-1}M - dim M = " + std::to_string(expected));
            cert.add("discrete_in_interval",
                     d.discrete.contains(M) && upper.contains(d.discrete),
                     "discrete part must lie in [M, Q^{-1}M]");
        }
    }
    return cert;
}

// --- Hyplat descriptor -------------------------------------------------------

Certificate hyplat_descriptor_verify(const BlockSpec& spec, const HyplatDescriptor& d) {
    const int n = spec.n();
    if ((int)d.nodes.size() != n)
        throw std::invalid_argument("hyplat_descriptor_verify: one node per block required");

    Certificate cert;
    for (std::size_t c = 0; c < spec.classes().size(); ++c) {
        const auto& cls = spec.classes()[c];
        std::string tag = "class_" + std::to_string(c) + "_";

        std::vector<int> cont, disc;  // positions within the class member list
        for (std::size_t t = 0; t < cls.members.size(); ++t) {
            if (d.nodes[(std::size_t)cls.members[t]].kind == ChainNode::Kind::Continuous)
                cont.push_back((int)t);
            else
                disc.push_back((int)t);
        }

        // flavor and range checks per node
        bool flavors_ok = true, range_ok = true;
        for (int t : disc) {
            const Block& b = spec.blocks()[cls.members[(std::size_t)t]];
            const ChainNode& node = d.nodes[(std::size_t)cls.members[(std::size_t)t]];
            if (b.flavor != Flavor::W) flavors_ok = false;
            // levels 1..k-1 per the chain description; level k is the full
            // component, which the trivial lattice elements need
            else if (node.l < 1 || node.l > b.k) range_ok = false;
        }
        for (int t : cont) {
            const ChainNode& node = d.nodes[(std::size_t)cls.members[(std::size_t)t]];
            if (node.a < Rational(0) || node.a > Rational(1)) range_ok = false;
        }
        cert.add(tag + "node_flavors", flavors_ok,
                 "discrete levels require Sobolev (W) blocks");
        cert.add(tag + "node_ranges", range_ok, "levels in [1,k], cut-offs in [0,1]");
        if (!flavors_ok || !range_ok) continue;

        if (!disc.empty() && cls.members.size() > 1) {
            int k0 = spec.blocks()[cls.members.front()].k;
            bool common = true;
            for (int j : cls.members)
                if (spec.blocks()[j].k != k0) common = false;
            if (!common)
                throw std::domain_error("hyplat_descriptor_verify: discrete levels in a "
                                        "multi-block class need a common block size k");
        }

        // discrete levels are monotone non-decreasing in the scale order
        bool monotone = true;
        for (std::size_t u = 0; u + 1 < disc.size(); ++u) {
            const ChainNode& lo = d.nodes[(std::size_t)cls.members[(std::size_t)disc[u]]];
            const ChainNode& hi = d.nodes[(std::size_t)cls.members[(std::size_t)disc[u + 1]]];
            if (lo.l > hi.l) monotone = false;
        }
        // equal scales force equal levels
        for (std::size_t u = 0; u + 1 < disc.size(); ++u)
            for (std::size_t v = u + 1; v < disc.size(); ++v)
                if (cls.s[(std::size_t)disc[u]] == cls.s[(std::size_t)disc[v]] &&
                    d.nodes[(std::size_t)cls.members[(std::size_t)disc[u]]].l !=
                        d.nodes[(std::size_t)cls.members[(std::size_t)disc[v]]].l)
                    monotone = false;
        cert.add(tag + "levels_monotone", monotone,
                 "l_j <= l_i whenever s_j <= s_i within the class");

        // every discrete block sits strictly above every continuous block in s
        bool above = true;
        Rational s_disc_min;
        bool have_disc = !disc.empty();
        if (have_disc) s_disc_min = cls.s[(std::size_t)disc.front()];
        for (int t : disc) s_disc_min = std::min(s_disc_min, cls.s[(std::size_t)t]);
        if (have_disc)
            for (int t : cont)
                if (!(cls.s[(std::size_t)t] < s_disc_min)) above = false;
        cert.add(tag + "discrete_above_continuous", above,
                 "a discrete level cannot feed a continuous block with smaller or equal scale");

        // polytope on the continuous sub-family
        bool poly = true;
        if (!cont.empty()) {
            std::vector<Rational> s_sub, a_sub;
            for (int t : cont) {
                s_sub.push_back(cls.s[(std::size_t)t]);
                a_sub.push_back(d.nodes[(std::size_t)cls.members[(std::size_t)t]].a);
            }
            poly = polytope_membership(s_sub, a_sub);
        }
        cert.add(tag + "continuous_polytope", poly, "");

        // boundary bound between the two parts: a_i <= 1 - s_i/s_j for every
        // continuous i and discrete j (binding at the smallest discrete scale)
        bool gap = true;
        if (have_disc && above)
            for (int t : cont) {
                const Rational& si = cls.s[(std::size_t)t];
                const Rational& ai = d.nodes[(std::size_t)cls.members[(std::size_t)t]].a;
                if (ai > Rational(1) - si / s_disc_min) gap = false;
            }
        cert.add(tag + "continuous_discrete_gap", gap,
                 "a_i <= 1 - s_i/s_j against every discrete block j of the class");
    }
    return cert;
}

// --- worked example ----------------------------------------------------------

namespace {

using F2 = exact::Fp<2>;
using GR = GaussianRational;

std::vector<GR> gvec(std::initializer_list<int> re, std::initializer_list<int> im) {
    std::vector<GR> v;
    auto r = re.begin();
    auto i = im.begin();
    for (; r != re.end(); ++r, ++i) v.push_back(GR(Rational(*r), Rational(*i)));
    return v;
}

} // namespace

Ex44Report ex44_reproduce() {
    Ex44Report rep;
    Certificate& cert = rep.cert;

    // finite model of the jet quotient: 0 on C^1, down-shift on C^2
    Matrix<F2> q2 = exact::Matrix<F2>::block_diag(
        {Matrix<F2>(1, 1), jordan::jordan_cell<F2>(2)});
    auto lattice = jordan::lat_enumerate(q2);
    rep.f2_count = (long long)lattice.size();
    rep.f2_census.assign(4, 0);
    for (const auto& s : lattice) ++rep.f2_census[(std::size_t)s.dim()];
    cert.add("f2_count", rep.f2_count == 8, "expected 8 invariant subspaces over F2");
    cert.add("f2_census",
             rep.f2_census == std::vector<long long>{1, 3, 3, 1},
             "dimension census 1/3/3/1");

    // family structure in the F2 model: lines lie inside ker, planes contain
    // the distinguished kernel vector of the 2-cell
    {
        Subspace<F2> ker = exact::kernel_space(q2);
        std::vector<F2> dist{F2(0), F2(1), F2(0)};  // image of the 2-cell
        bool lines_ok = true, planes_ok = true;
        for (const auto& s : lattice) {
            if (s.dim() == 1 && !ker.contains(s)) lines_ok = false;
            if (s.dim() == 2 && !s.contains(dist)) planes_ok = false;
        }
        cert.add("f2_lines_inside_kernel", lines_ok, "");
        cert.add("f2_planes_contain_distinguished", planes_ok, "");
    }

    // the same structure over Gaussian rationals, on the exact quotient of
    // lambda = (i, 1), k = (1, 2), alpha = 1
    std::vector<jordan::FiniteBlock> blocks{
        {GR(Rational(0), Rational(1)), 1}, {GR(Rational(1)), 2}};
    Matrix<GR> Q = jordan::build_quotient_operator(blocks, Rational(1), 2.0);
    Subspace<GR> ker = exact::kernel_space(Q);
    std::vector<GR> dist = gvec({0, 1, 0}, {0, 0, 0});

    auto invariant = [&](const Subspace<GR>& s) {
        for (const auto& b : s.basis())
            if (!s.contains(Q.apply(b))) return false;
        return true;
    };

    // sample coefficients: a small Gaussian-rational alphabet
    std::vector<GR> alphabet{GR(Rational(0)), GR(Rational(1)), GR(Rational(-1)),
                             GR(Rational(0), Rational(1)), GR(Rational(1), Rational(1)),
                             GR(Rational(2)), GR(Rational(1), Rational(-2))};

    bool family_lines = true;   // span{alpha e1 + beta e3'} invariant (e3' = top jet of block 2)
    bool family_planes = true;  // span{alpha e1 + beta e2', dist} invariant
    for (const auto& al : alphabet)
        for (const auto& be : alphabet) {
            if (al.is_zero() && be.is_zero()) continue;
            std::vector<GR> line{al, be, GR(Rational(0))};
            if (!invariant(Subspace<GR>::span(3, {line}))) family_lines = false;
            std::vector<GR> pl{al, GR(Rational(0)), be};
            if (!invariant(Subspace<GR>::span(3, {pl, dist}))) family_planes = false;
        }
    cert.add("lines_in_kernel_invariant", family_lines,
             "every line inside ker is invariant");
    cert.add("planes_with_distinguished_invariant", family_planes,
             "every plane containing the distinguished vector is invariant");

    // exhaustive over the alphabet: a line is invariant iff it lies in ker,
    // and a plane is invariant iff it contains the distinguished vector
    bool line_iff = true, plane_iff = true;
    std::vector<std::vector<GR>> sample_vectors;
    for (const auto& x : alphabet)
        for (const auto& y : alphabet)
            for (const auto& z : alphabet) {
                if (x.is_zero() && y.is_zero() && z.is_zero()) continue;
                sample_vectors.push_back({x, y, z});
            }
    for (const auto& v : sample_vectors) {
        Subspace<GR> line = Subspace<GR>::span(3, {v});
        if (invariant(line) != ker.contains(line)) line_iff = false;
    }
    for (std::size_t u = 0; u < sample_vectors.size(); u += 7)
        for (std::size_t w = u + 1; w < sample_vectors.size(); w += 11) {
            Subspace<GR> plane = Subspace<GR>::span(3, {sample_vectors[u], sample_vectors[w]});
            if (plane.dim() != 2) continue;
            if (invariant(plane) != plane.contains(dist)) plane_iff = false;
        }
    cert.add("line_invariant_iff_in_kernel", line_iff, "");
    cert.add("plane_invariant_iff_contains_distinguished", plane_iff, "");

    rep.ok = cert.ok;
    return rep;
}

} // namespace rlop::lat
