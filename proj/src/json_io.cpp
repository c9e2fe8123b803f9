#include "rlop/json_io.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

namespace rlop::io {

namespace {

std::string join_lines(const std::vector<std::string>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << '\n';
        os << v[i];
    }
    return os.str();
}

}  // namespace

InputError::InputError(std::vector<std::string> msgs)
    : std::runtime_error(msgs.empty() ? std::string("input error") : join_lines(msgs)),
      messages(std::move(msgs)) {}

// --- emitters ---------------------------------------------------------------

ojson to_json(const Rational& r) { return r.str(); }

ojson to_json(Complex z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }

ojson to_json(const PowerFn& f) {
    ojson terms = ojson::array();
    for (const PowerTerm& t : f.terms())
        terms.push_back(ojson{{"re", t.coeff.real()},
                              {"im", t.coeff.imag()},
                              {"shift", t.shift.str()},
                              {"power", t.exponent.str()}});
    return ojson{{"terms", std::move(terms)}};
}

ojson to_json(const ops::BlockSpec& spec) {
    ojson blocks = ojson::array();
    for (const ops::Block& b : spec.blocks())
        blocks.push_back(ojson{{"lambda", to_json(b.lambda)},
                               {"k", b.k},
                               {"flavor", ops::flavor_name(b.flavor)}});
    return ojson{{"alpha", spec.alpha().str()}, {"p", spec.p()}, {"blocks", std::move(blocks)}};
}

ojson to_json(const cyc::FunctionSystem& sys) {
    ojson vecs = ojson::array();
    for (const ops::VectorFn& v : sys.vectors) {
        ojson row = ojson::array();
        for (const PowerFn& f : v) row.push_back(to_json(f));
        vecs.push_back(std::move(row));
    }
    return ojson{{"spec", to_json(sys.spec)}, {"vectors", std::move(vecs)}};
}

ojson to_json(const ops::ConvOperator& op) {
    return ojson{{"form", op.form == ops::ConvOperator::Form::MultiplierPlusConv
                              ? "multiplier_plus_conv"
                              : "volterra_derivative"},
                 {"c", to_json(op.c)},
                 {"r", to_json(op.r)},
                 {"k", to_json(op.k)}};
}

ojson to_json(const ops::BlockOperatorMatrix& m) {
    ojson entries = ojson::array();
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (m.entries[i][j])
                entries.push_back(ojson{{"i", i},
                                        {"j", j},
                                        {"a", m.entries[i][j]->a.str()},
                                        {"op", to_json(m.entries[i][j]->op)}});
    return ojson{{"n", m.n}, {"entries", std::move(entries)}};
}

ojson to_json(const exact::GaussianRational& g) { return g.str(); }

ojson to_json(const exact::Matrix<exact::GaussianRational>& m) {
    ojson data = ojson::array();
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) data.push_back(m.at(i, j).str());
    return ojson{{"rows", m.rows}, {"cols", m.cols}, {"data", std::move(data)}};
}

template <int Q>
ojson to_json(const exact::Matrix<exact::Fp<Q>>& m) {
    ojson data = ojson::array();
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) data.push_back(m.at(i, j).str());
    return ojson{{"rows", m.rows}, {"cols", m.cols}, {"modulus", Q}, {"data", std::move(data)}};
}
template ojson to_json<2>(const exact::Matrix<exact::Fp<2>>&);
template ojson to_json<3>(const exact::Matrix<exact::Fp<3>>&);

ojson to_json(const exact::Subspace<exact::GaussianRational>& s) {
    ojson basis = ojson::array();
    for (const auto& v : s.basis()) {
        ojson row = ojson::array();
        for (const auto& e : v) row.push_back(e.str());
        basis.push_back(std::move(row));
    }
    return ojson{{"ambient", s.ambient()}, {"dim", s.dim()}, {"basis", std::move(basis)}};
}

template <int Q>
ojson to_json(const exact::Subspace<exact::Fp<Q>>& s) {
    ojson basis = ojson::array();
    for (const auto& v : s.basis()) {
        ojson row = ojson::array();
        for (const auto& e : v) row.push_back(e.str());
        basis.push_back(std::move(row));
    }
    return ojson{{"ambient", s.ambient()}, {"dim", s.dim()}, {"modulus", Q},
                 {"basis", std::move(basis)}};
}
template ojson to_json<2>(const exact::Subspace<exact::Fp<2>>&);
template ojson to_json<3>(const exact::Subspace<exact::Fp<3>>&);

ojson to_json(const lat::ChainNode& n) {
    if (n.kind == lat::ChainNode::Kind::Continuous)
        return ojson{{"kind", "continuous"}, {"a", n.a.str()}};
    return ojson{{"kind", "level"}, {"l", n.l}};
}

ojson to_json(const lat::LatDescriptor& d) {
    ojson out{{"S", d.S}, {"discrete", to_json(d.discrete)}};
    ojson cont = ojson::array();
    for (const Rational& a : d.continuous) cont.push_back(a.str());
    out["continuous"] = std::move(cont);
    if (d.interval_lower) out["interval_lower"] = to_json(*d.interval_lower);
    return out;
}

ojson to_json(const lat::HyplatDescriptor& d) {
    ojson nodes = ojson::array();
    for (const lat::ChainNode& n : d.nodes) nodes.push_back(to_json(n));
    return ojson{{"nodes", std::move(nodes)}};
}

ojson to_json(const Certificate& cert) {
    ojson checks = ojson::array();
    for (const Check& c : cert.checks)
        checks.push_back(ojson{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return checks;
}

std::string scan_csv(const lat::ScanReport& rep) {
    std::ostringstream os;
    const std::size_t na = rep.rows.empty() ? 0 : rep.rows.front().a.size();
    for (std::size_t i = 0; i < na; ++i) os << "a_" << i << ",";
    os << "invariant,polytope,agree\n";
    for (const lat::ScanRow& r : rep.rows) {
        for (const Rational& a : r.a) os << a.str() << ",";
        os << (r.invariant ? 1 : 0) << "," << (r.polytope ? 1 : 0) << ","
           << (r.agree ? 1 : 0) << "\n";
    }
    return os.str();
}

ojson scan_json(const lat::ScanReport& rep) {
    ojson rows = ojson::array();
    for (const lat::ScanRow& r : rep.rows) {
        ojson a = ojson::array();
        for (const Rational& v : r.a) a.push_back(v.str());
        rows.push_back(ojson{{"a", std::move(a)},
                             {"invariant", r.invariant},
                             {"polytope", r.polytope},
                             {"agree", r.agree}});
    }
    return ojson{{"tuples", rep.tuples},
                 {"agreements", rep.agreements},
                 {"all_agree", rep.all_agree},
                 {"rows", std::move(rows)}};
}

ojson make_report(const std::string& command, ojson config, ojson results,
                  const Certificate& cert) {
    return ojson{{"command", command},
                 {"config", std::move(config)},
                 {"results", std::move(results)},
                 {"checks", to_json(cert)}};
}

// --- line-anchored parsing ---------------------------------------------------

namespace {

// One pass over the raw text recording, for every JSON-pointer location, the
// line its value starts on.  Runs only on documents nlohmann already accepted,
// so it can assume well-formed input.
struct LineIndex {
    std::map<std::string, int> lines;
    int line_of(const std::string& ptr) const {
        auto it = lines.find(ptr);
        return it == lines.end() ? 0 : it->second;
    }
};

class Scanner {
public:
    explicit Scanner(const std::string& t) : s(t) {}

    LineIndex run() {
        skip_ws();
        if (pos < s.size()) value("");
        return std::move(idx);
    }

private:
    const std::string& s;
    std::size_t pos = 0;
    int line = 1;
    LineIndex idx;

    void adv() {
        if (s[pos] == '\n') ++line;
        ++pos;
    }
    void skip_ws() {
        while (pos < s.size() &&
               (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r'))
            adv();
    }
    static std::string esc(const std::string& k) {
        std::string o;
        for (char c : k) {
            if (c == '~')
                o += "~0";
            else if (c == '/')
                o += "~1";
            else
                o += c;
        }
        return o;
    }
    std::string read_string() {
        adv();  // opening quote
        std::string out;
        while (pos < s.size() && s[pos] != '"') {
            if (s[pos] == '\\') {
                adv();
                if (pos < s.size()) {
                    out += s[pos];
                    adv();
                }
            } else {
                out += s[pos];
                adv();
            }
        }
        if (pos < s.size()) adv();  // closing quote
        return out;
    }
    void value(const std::string& ptr) {
        skip_ws();
        if (pos >= s.size()) return;
        idx.lines.emplace(ptr, line);
        const char c = s[pos];
        if (c == '{') {
            adv();
            object(ptr);
        } else if (c == '[') {
            adv();
            array(ptr);
        } else if (c == '"') {
            read_string();
        } else {
            while (pos < s.size() && !std::strchr(",]} \t\n\r", s[pos])) adv();
        }
    }
    void object(const std::string& ptr) {
        skip_ws();
        if (pos < s.size() && s[pos] == '}') {
            adv();
            return;
        }
        while (pos < s.size()) {
            skip_ws();
            if (pos >= s.size() || s[pos] != '"') return;
            std::string k = read_string();
            skip_ws();
            if (pos < s.size() && s[pos] == ':') adv();
            value(ptr + "/" + esc(k));
            skip_ws();
            if (pos < s.size() && s[pos] == ',') {
                adv();
                continue;
            }
            if (pos < s.size() && s[pos] == '}') adv();
            return;
        }
    }
    void array(const std::string& ptr) {
        skip_ws();
        if (pos < s.size() && s[pos] == ']') {
            adv();
            return;
        }
        int i = 0;
        while (pos < s.size()) {
            value(ptr + "/" + std::to_string(i++));
            skip_ws();
            if (pos < s.size() && s[pos] == ',') {
                adv();
                continue;
            }
            if (pos < s.size() && s[pos] == ']') adv();
            return;
        }
    }
};

class Reader {
public:
    Reader(const std::string& text, const std::string& filename) : file(filename) {
        try {
            root_ = json::parse(text);
        } catch (const json::parse_error& e) {
            std::size_t byte = std::min<std::size_t>(e.byte, text.size());
            int ln = 1 + (int)std::count(text.begin(), text.begin() + (std::ptrdiff_t)byte, '\n');
            throw InputError({file + ":" + std::to_string(ln) + ": syntax error: " + e.what()});
        }
        idx = Scanner(text).run();
    }

    const json& root() const { return root_; }

    void fail(const std::string& ptr, const std::string& msg) {
        const int ln = idx.line_of(ptr);
        std::string loc = file;
        if (ln > 0) loc += ":" + std::to_string(ln);
        errs.push_back(loc + ": " + (ptr.empty() ? std::string("/") : ptr) + ": " + msg);
    }
    bool clean() const { return errs.empty(); }
    void done() {
        if (!errs.empty()) throw InputError(std::move(errs));
    }

    const json* field(const json& j, const std::string& ptr, const char* name,
                      bool required = true) {
        if (!j.is_object()) {
            fail(ptr, "expected an object");
            return nullptr;
        }
        auto it = j.find(name);
        if (it == j.end()) {
            if (required) fail(ptr, std::string("missing field \"") + name + "\"");
            return nullptr;
        }
        return &*it;
    }
    void only_fields(const json& j, const std::string& ptr,
                     std::initializer_list<const char*> names) {
        if (!j.is_object()) return;
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool known = false;
            for (const char* n : names)
                if (it.key() == n) known = true;
            if (!known) fail(ptr, "unknown field \"" + it.key() + "\"");
        }
    }
    bool number(const json& j, const std::string& ptr, double& out) {
        if (!j.is_number()) {
            fail(ptr, "expected a number");
            return false;
        }
        out = j.get<double>();
        return true;
    }
    bool integer(const json& j, const std::string& ptr, long long& out) {
        if (!j.is_number_integer()) {
            fail(ptr, "expected an integer");
            return false;
        }
        out = j.get<long long>();
        return true;
    }
    bool rational(const json& j, const std::string& ptr, Rational& out) {
        if (j.is_number_integer()) {
            out = Rational(j.get<long long>());
            return true;
        }
        if (!j.is_string()) {
            fail(ptr, "expected a rational string \"p/q\"");
            return false;
        }
        try {
            out = Rational::parse(j.get<std::string>());
            return true;
        } catch (const std::exception& e) {
            fail(ptr, e.what());
            return false;
        }
    }
    bool gaussian(const json& j, const std::string& ptr, exact::GaussianRational& out) {
        if (j.is_number_integer()) {
            out = exact::GaussianRational(j.get<long long>());
            return true;
        }
        if (!j.is_string()) {
            fail(ptr, "expected a scalar string like \"3/4+1/2i\"");
            return false;
        }
        try {
            out = exact::GaussianRational::parse(j.get<std::string>());
            return true;
        } catch (const std::exception& e) {
            fail(ptr, e.what());
            return false;
        }
    }
    bool complex_val(const json& j, const std::string& ptr, Complex& out) {
        if (!j.is_object()) {
            fail(ptr, "expected an object {\"re\", \"im\"}");
            return false;
        }
        only_fields(j, ptr, {"re", "im"});
        double re = 0.0, im = 0.0;
        bool ok = true;
        if (const json* f = field(j, ptr, "re"))
            ok = number(*f, ptr + "/re", re) && ok;
        else
            ok = false;
        if (const json* f = field(j, ptr, "im"))
            ok = number(*f, ptr + "/im", im) && ok;
        else
            ok = false;
        out = Complex(re, im);
        return ok;
    }
    bool powerfn(const json& j, const std::string& ptr, PowerFn& out) {
        if (!j.is_object()) {
            fail(ptr, "expected an object {\"terms\": [...]}");
            return false;
        }
        only_fields(j, ptr, {"terms"});
        const json* terms = field(j, ptr, "terms");
        if (!terms) return false;
        if (!terms->is_array()) {
            fail(ptr + "/terms", "expected an array of terms");
            return false;
        }
        std::vector<PowerTerm> parsed;
        bool ok = true;
        for (std::size_t i = 0; i < terms->size(); ++i) {
            const json& t = (*terms)[i];
            const std::string tptr = ptr + "/terms/" + std::to_string(i);
            if (!t.is_object()) {
                fail(tptr, "expected an object {\"re\",\"im\",\"shift\",\"power\"}");
                ok = false;
                continue;
            }
            only_fields(t, tptr, {"re", "im", "shift", "power"});
            double re = 0.0, im = 0.0;
            Rational shift, power;
            bool tok = true;
            if (const json* f = field(t, tptr, "re"))
                tok = number(*f, tptr + "/re", re) && tok;
            else
                tok = false;
            if (const json* f = field(t, tptr, "im"))
                tok = number(*f, tptr + "/im", im) && tok;
            else
                tok = false;
            if (const json* f = field(t, tptr, "shift"))
                tok = rational(*f, tptr + "/shift", shift) && tok;
            else
                tok = false;
            if (const json* f = field(t, tptr, "power"))
                tok = rational(*f, tptr + "/power", power) && tok;
            else
                tok = false;
            if (tok) {
                if (shift < Rational(0)) {
                    fail(tptr + "/shift", "shift must be >= 0");
                    tok = false;
                }
                if (power < Rational(0)) {
                    fail(tptr + "/power", "power must be >= 0");
                    tok = false;
                }
            }
            if (tok) parsed.push_back(PowerTerm{Complex(re, im), shift, power});
            ok = ok && tok;
        }
        if (!ok) return false;
        try {
            out = PowerFn::from_terms(parsed);
            return true;
        } catch (const std::exception& e) {
            fail(ptr, e.what());
            return false;
        }
    }

    std::string file;
    LineIndex idx;
    json root_;
    std::vector<std::string> errs;
};

// shared piece: {"alpha", "p"?, "blocks":[{"lambda","k"?,"flavor"}]}
bool read_spec_fields(Reader& R, const json& j, const std::string& ptr, Rational& alpha,
                      double& p, std::vector<ops::Block>& blocks) {
    if (!j.is_object()) {
        R.fail(ptr, "expected a block spec object");
        return false;
    }
    R.only_fields(j, ptr, {"alpha", "p", "blocks"});
    bool ok = true;
    if (const json* f = R.field(j, ptr, "alpha"))
        ok = R.rational(*f, ptr + "/alpha", alpha) && ok;
    else
        ok = false;
    p = 2.0;
    if (const json* f = R.field(j, ptr, "p", false)) ok = R.number(*f, ptr + "/p", p) && ok;
    const json* barr = R.field(j, ptr, "blocks");
    if (!barr) return false;
    if (!barr->is_array() || barr->empty()) {
        R.fail(ptr + "/blocks", "expected a non-empty array of blocks");
        return false;
    }
    for (std::size_t i = 0; i < barr->size(); ++i) {
        const json& b = (*barr)[i];
        const std::string bptr = ptr + "/blocks/" + std::to_string(i);
        if (!b.is_object()) {
            R.fail(bptr, "expected a block object");
            ok = false;
            continue;
        }
        R.only_fields(b, bptr, {"lambda", "k", "flavor"});
        ops::Block blk;
        bool bok = true;
        if (const json* f = R.field(b, bptr, "lambda"))
            bok = R.complex_val(*f, bptr + "/lambda", blk.lambda) && bok;
        else
            bok = false;
        if (const json* f = R.field(b, bptr, "k", false)) {
            long long k = 0;
            if (R.integer(*f, bptr + "/k", k) && k >= 0 && k <= 64)
                blk.k = (int)k;
            else {
                R.fail(bptr + "/k", "k must be an integer in [0, 64]");
                bok = false;
            }
        }
        if (const json* f = R.field(b, bptr, "flavor")) {
            if (!f->is_string()) {
                R.fail(bptr + "/flavor", "expected \"Lp\", \"W0\" or \"W\"");
                bok = false;
            } else {
                const std::string fl = f->get<std::string>();
                if (fl == "Lp")
                    blk.flavor = ops::Flavor::Lp;
                else if (fl == "W0")
                    blk.flavor = ops::Flavor::W0;
                else if (fl == "W")
                    blk.flavor = ops::Flavor::W;
                else {
                    R.fail(bptr + "/flavor", "unknown flavor \"" + fl + "\"");
                    bok = false;
                }
            }
        } else
            bok = false;
        if (bok) blocks.push_back(blk);
        ok = ok && bok;
    }
    return ok;
}

ops::BlockSpec build_spec(Reader& R, const json& j, const std::string& ptr) {
    Rational alpha;
    double p = 2.0;
    std::vector<ops::Block> blocks;
    if (!read_spec_fields(R, j, ptr, alpha, p, blocks)) R.done();
    try {
        ops::BlockSpec spec(alpha, p, blocks);
        return spec;
    } catch (const std::exception& e) {
        R.fail(ptr, std::string("admissibility: ") + e.what());
        R.done();
        throw;  // unreachable; done() threw
    }
}

}  // namespace

ops::BlockSpec parse_block_spec(const std::string& text, const std::string& filename) {
    Reader R(text, filename);
    ops::BlockSpec spec = build_spec(R, R.root(), "");
    R.done();
    return spec;
}

cyc::FunctionSystem parse_function_system(const std::string& text,
                                          const std::string& filename) {
    Reader R(text, filename);
    const json& j = R.root();
    if (!j.is_object()) {
        R.fail("", "expected an object {\"spec\", \"vectors\"}");
        R.done();
    }
    R.only_fields(j, "", {"spec", "vectors"});
    const json* jspec = R.field(j, "", "spec");
    if (!jspec) R.done();
    ops::BlockSpec spec = build_spec(R, *jspec, "/spec");
    std::vector<ops::VectorFn> vectors;
    const json* jv = R.field(j, "", "vectors");
    if (!jv) R.done();
    if (!jv->is_array()) {
        R.fail("/vectors", "expected an array of vectors");
        R.done();
    }
    for (std::size_t l = 0; l < jv->size(); ++l) {
        const json& row = (*jv)[l];
        const std::string rptr = "/vectors/" + std::to_string(l);
        if (!row.is_array() || (int)row.size() != spec.n()) {
            R.fail(rptr, "expected an array of " + std::to_string(spec.n()) +
                             " component functions");
            continue;
        }
        ops::VectorFn v((std::size_t)spec.n());
        bool ok = true;
        for (std::size_t c = 0; c < row.size(); ++c)
            ok = R.powerfn(row[c], rptr + "/" + std::to_string(c), v[c]) && ok;
        if (ok) vectors.push_back(std::move(v));
    }
    R.done();
    try {
        return cyc::FunctionSystem(spec, std::move(vectors));
    } catch (const std::exception& e) {
        R.fail("/vectors", std::string("membership: ") + e.what());
        R.done();
        throw;
    }
}

FiniteModelInput parse_finite_model(const std::string& text, const std::string& filename) {
    Reader R(text, filename);
    const json& j = R.root();
    FiniteModelInput out;
    if (!j.is_object()) {
        R.fail("", "expected an object {\"alpha\", \"blocks\"}");
        R.done();
    }
    R.only_fields(j, "", {"alpha", "p", "blocks"});
    if (const json* f = R.field(j, "", "alpha")) R.rational(*f, "/alpha", out.alpha);
    if (const json* f = R.field(j, "", "p", false)) R.number(*f, "/p", out.p);
    const json* barr = R.field(j, "", "blocks");
    if (!barr) R.done();
    if (!barr->is_array() || barr->empty()) {
        R.fail("/blocks", "expected a non-empty array of blocks");
        R.done();
    }
    for (std::size_t i = 0; i < barr->size(); ++i) {
        const json& b = (*barr)[i];
        const std::string bptr = "/blocks/" + std::to_string(i);
        if (!b.is_object()) {
            R.fail(bptr, "expected a block object");
            continue;
        }
        R.only_fields(b, bptr, {"lambda", "k"});
        jordan::FiniteBlock blk;
        blk.lambda = exact::GaussianRational(1);
        if (const json* f = R.field(b, bptr, "lambda", false))
            R.gaussian(*f, bptr + "/lambda", blk.lambda);
        long long k = 0;
        if (const json* f = R.field(b, bptr, "k")) {
            if (R.integer(*f, bptr + "/k", k) && k >= 1 && k <= 8)
                blk.k = (int)k;
            else
                R.fail(bptr + "/k", "k must be an integer in [1, 8]");
        }
        if (blk.lambda.is_zero()) R.fail(bptr + "/lambda", "lambda must be nonzero");
        out.blocks.push_back(blk);
    }
    if (out.alpha <= Rational(0)) R.fail("/alpha", "alpha must be positive");
    if (out.p <= 1.0) R.fail("/p", "p must be > 1");
    R.done();
    return out;
}

SpecAndOps parse_spec_and_ops(const std::string& text, const std::string& filename) {
    Reader R(text, filename);
    const json& j = R.root();
    if (!j.is_object()) {
        R.fail("", "expected an object {\"spec\", \"ops\"}");
        R.done();
    }
    R.only_fields(j, "", {"spec", "ops"});
    const json* jspec = R.field(j, "", "spec");
    if (!jspec) R.done();
    ops::BlockSpec spec = build_spec(R, *jspec, "/spec");
    std::vector<ops::DiagConv> dc;
    const json* jops = R.field(j, "", "ops");
    if (!jops) R.done();
    if (!jops->is_array() || (int)jops->size() != spec.n()) {
        R.fail("/ops", "expected one diagonal entry per block (" +
                           std::to_string(spec.n()) + ")");
        R.done();
    }
    for (std::size_t i = 0; i < jops->size(); ++i) {
        const json& o = (*jops)[i];
        const std::string optr = "/ops/" + std::to_string(i);
        if (!o.is_object()) {
            R.fail(optr, "expected an object {\"c\", \"r\"}");
            continue;
        }
        R.only_fields(o, optr, {"c", "r"});
        ops::DiagConv d;
        if (const json* f = R.field(o, optr, "c")) R.complex_val(*f, optr + "/c", d.c);
        if (const json* f = R.field(o, optr, "r")) R.powerfn(*f, optr + "/r", d.r);
        dc.push_back(std::move(d));
    }
    R.done();
    return SpecAndOps{std::move(spec), std::move(dc)};
}

SpecAndKernels parse_spec_and_kernels(const std::string& text, const std::string& filename) {
    Reader R(text, filename);
    const json& j = R.root();
    if (!j.is_object()) {
        R.fail("", "expected an object {\"spec\", \"kernels\"}");
        R.done();
    }
    R.only_fields(j, "", {"spec", "kernels"});
    const json* jspec = R.field(j, "", "spec");
    if (!jspec) R.done();
    ops::BlockSpec spec = build_spec(R, *jspec, "/spec");
    const json* jk = R.field(j, "", "kernels");
    if (!jk) R.done();
    const int n = spec.n();
    if (!jk->is_array() || (int)jk->size() != n) {
        R.fail("/kernels", "expected an " + std::to_string(n) + "x" + std::to_string(n) +
                               " array of kernel functions");
        R.done();
    }
    std::vector<std::vector<PowerFn>> kernels((std::size_t)n,
                                              std::vector<PowerFn>((std::size_t)n));
    for (int i = 0; i < n; ++i) {
        const json& row = (*jk)[(std::size_t)i];
        const std::string rptr = "/kernels/" + std::to_string(i);
        if (!row.is_array() || (int)row.size() != n) {
            R.fail(rptr, "expected a row of " + std::to_string(n) + " kernel functions");
            continue;
        }
        for (int c = 0; c < n; ++c)
            R.powerfn(row[(std::size_t)c], rptr + "/" + std::to_string(c),
                      kernels[(std::size_t)i][(std::size_t)c]);
    }
    R.done();
    return SpecAndKernels{std::move(spec), std::move(kernels)};
}

std::vector<std::vector<PowerFn>> parse_powerfn_matrix(const std::string& text,
                                                       const std::string& filename) {
    Reader R(text, filename);
    const json& j = R.root();
    if (!j.is_object()) {
        R.fail("", "expected an object {\"matrix\": [[...]]}");
        R.done();
    }
    R.only_fields(j, "", {"matrix"});
    const json* jm = R.field(j, "", "matrix");
    if (!jm) R.done();
    if (!jm->is_array() || jm->empty()) {
        R.fail("/matrix", "expected a non-empty array of rows");
        R.done();
    }
    std::vector<std::vector<PowerFn>> M;
    std::size_t width = 0;
    for (std::size_t i = 0; i < jm->size(); ++i) {
        const json& row = (*jm)[i];
        const std::string rptr = "/matrix/" + std::to_string(i);
        if (!row.is_array() || row.empty()) {
            R.fail(rptr, "expected a non-empty row");
            continue;
        }
        if (i == 0)
            width = row.size();
        else if (row.size() != width) {
            R.fail(rptr, "ragged matrix: expected " + std::to_string(width) + " entries");
            continue;
        }
        std::vector<PowerFn> out(row.size());
        for (std::size_t c = 0; c < row.size(); ++c)
            R.powerfn(row[c], rptr + "/" + std::to_string(c), out[c]);
        M.push_back(std::move(out));
    }
    R.done();
    return M;
}

namespace {

bool read_subspace(Reader& R, const json& j, const std::string& ptr,
                   exact::Subspace<exact::GaussianRational>& out) {
    if (!j.is_object()) {
        R.fail(ptr, "expected a subspace object {\"ambient\", \"basis\"}");
        return false;
    }
    R.only_fields(j, ptr, {"ambient", "dim", "basis"});
    long long ambient = 0;
    bool ok = true;
    if (const json* f = R.field(j, ptr, "ambient"))
        ok = R.integer(*f, ptr + "/ambient", ambient) && ok;
    else
        ok = false;
    if (ok && (ambient < 1 || ambient > 64)) {
        R.fail(ptr + "/ambient", "ambient dimension must be in [1, 64]");
        ok = false;
    }
    const json* jb = R.field(j, ptr, "basis");
    if (!jb) return false;
    if (!jb->is_array()) {
        R.fail(ptr + "/basis", "expected an array of basis vectors");
        return false;
    }
    std::vector<std::vector<exact::GaussianRational>> gens;
    for (std::size_t i = 0; i < jb->size(); ++i) {
        const json& row = (*jb)[i];
        const std::string rptr = ptr + "/basis/" + std::to_string(i);
        if (!row.is_array() || (long long)row.size() != ambient) {
            R.fail(rptr, "expected a vector of length " + std::to_string(ambient));
            ok = false;
            continue;
        }
        std::vector<exact::GaussianRational> v((std::size_t)ambient);
        for (std::size_t c = 0; c < row.size(); ++c)
            ok = R.gaussian(row[c], rptr + "/" + std::to_string(c), v[c]) && ok;
        gens.push_back(std::move(v));
    }
    if (!ok) return false;
    out = exact::Subspace<exact::GaussianRational>::span((int)ambient, gens);
    return true;
}

}  // namespace

SpecAndLatDescriptor parse_lat_descriptor(const std::string& text,
                                          const std::string& filename) {
    Reader R(text, filename);
    const json& j = R.root();
    if (!j.is_object()) {
        R.fail("", "expected an object {\"spec\", \"descriptor\"}");
        R.done();
    }
    R.only_fields(j, "", {"spec", "descriptor"});
    const json* jspec = R.field(j, "", "spec");
    if (!jspec) R.done();
    ops::BlockSpec spec = build_spec(R, *jspec, "/spec");
    const json* jd = R.field(j, "", "descriptor");
    if (!jd) R.done();
    if (!jd->is_object()) {
        R.fail("/descriptor", "expected a descriptor object");
        R.done();
    }
    R.only_fields(*jd, "/descriptor", {"S", "discrete", "continuous", "interval_lower"});
    lat::LatDescriptor d;
    if (const json* f = R.field(*jd, "/descriptor", "S")) {
        if (!f->is_array())
            R.fail("/descriptor/S", "expected an array of block indices");
        else
            for (std::size_t i = 0; i < f->size(); ++i) {
                long long v = 0;
                if (R.integer((*f)[i], "/descriptor/S/" + std::to_string(i), v))
                    d.S.push_back((int)v);
            }
    }
    if (const json* f = R.field(*jd, "/descriptor", "discrete"))
        read_subspace(R, *f, "/descriptor/discrete", d.discrete);
    if (const json* f = R.field(*jd, "/descriptor", "continuous")) {
        if (!f->is_array())
            R.fail("/descriptor/continuous", "expected an array of cut-offs");
        else
            for (std::size_t i = 0; i < f->size(); ++i) {
                Rational a;
                if (R.rational((*f)[i], "/descriptor/continuous/" + std::to_string(i), a))
                    d.continuous.push_back(a);
            }
    }
    if (const json* f = R.field(*jd, "/descriptor", "interval_lower", false)) {
        exact::Subspace<exact::GaussianRational> lower;
        if (read_subspace(R, *f, "/descriptor/interval_lower", lower))
            d.interval_lower = std::move(lower);
    }
    R.done();
    return SpecAndLatDescriptor{std::move(spec), std::move(d)};
}

SpecAndHyplatDescriptor parse_hyplat_descriptor(const std::string& text,
                                                const std::string& filename) {
    Reader R(text, filename);
    const json& j = R.root();
    if (!j.is_object()) {
        R.fail("", "expected an object {\"spec\", \"descriptor\"}");
        R.done();
    }
    R.only_fields(j, "", {"spec", "descriptor"});
    const json* jspec = R.field(j, "", "spec");
    if (!jspec) R.done();
    ops::BlockSpec spec = build_spec(R, *jspec, "/spec");
    const json* jd = R.field(j, "", "descriptor");
    if (!jd) R.done();
    if (!jd->is_object()) {
        R.fail("/descriptor", "expected a descriptor object");
        R.done();
    }
    R.only_fields(*jd, "/descriptor", {"nodes"});
    lat::HyplatDescriptor d;
    const json* jn = R.field(*jd, "/descriptor", "nodes");
    if (!jn) R.done();
    if (!jn->is_array() || (int)jn->size() != spec.n()) {
        R.fail("/descriptor/nodes", "expected one node per block (" +
                                        std::to_string(spec.n()) + ")");
        R.done();
    }
    for (std::size_t i = 0; i < jn->size(); ++i) {
        const json& nd = (*jn)[i];
        const std::string nptr = "/descriptor/nodes/" + std::to_string(i);
        if (!nd.is_object()) {
            R.fail(nptr, "expected a node object");
            continue;
        }
        const json* jk = R.field(nd, nptr, "kind");
        if (!jk || !jk->is_string()) {
            R.fail(nptr + "/kind", "expected \"continuous\" or \"level\"");
            continue;
        }
        const std::string kind = jk->get<std::string>();
        if (kind == "continuous") {
            R.only_fields(nd, nptr, {"kind", "a"});
            Rational a;
            if (const json* f = R.field(nd, nptr, "a"))
                if (R.rational(*f, nptr + "/a", a)) d.nodes.push_back(lat::ChainNode::continuous(a));
        } else if (kind == "level") {
            R.only_fields(nd, nptr, {"kind", "l"});
            long long l = 0;
            if (const json* f = R.field(nd, nptr, "l"))
                if (R.integer(*f, nptr + "/l", l)) d.nodes.push_back(lat::ChainNode::level((int)l));
        } else {
            R.fail(nptr + "/kind", "unknown kind \"" + kind + "\"");
        }
    }
    R.done();
    return SpecAndHyplatDescriptor{std::move(spec), std::move(d)};
}

}  // namespace rlop::io
