#pragma once

// JSON serialization for the domain types, schema-validated parsing with
// line-anchored error messages, and the deterministic report layout used by
// the CLI.  Parsing never returns a partially constructed model: every
// schema violation in the document is collected first, and the full list is
// thrown as one InputError.

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "rlop/cyclic.hpp"
#include "rlop/exact.hpp"
#include "rlop/jordan.hpp"
#include "rlop/lattices.hpp"
#include "rlop/operators.hpp"
#include "rlop/powerfn.hpp"
#include "rlop/report.hpp"

namespace rlop::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// All schema violations found in one document, each anchored as
// "file:line: /json/pointer: message".
struct InputError : std::runtime_error {
    std::vector<std::string> messages;
    explicit InputError(std::vector<std::string> msgs);
};

// --- emitters ---------------------------------------------------------------

ojson to_json(const Rational& r);  // "p/q" string
ojson to_json(Complex z);          // {"re", "im"}
ojson to_json(const PowerFn& f);   // {"terms":[{"re","im","shift","power"}]}
ojson to_json(const ops::BlockSpec& spec);
ojson to_json(const cyc::FunctionSystem& sys);
ojson to_json(const ops::ConvOperator& op);
ojson to_json(const ops::BlockOperatorMatrix& m);
ojson to_json(const exact::GaussianRational& g);  // scalar string
ojson to_json(const exact::Matrix<exact::GaussianRational>& m);
template <int Q>
ojson to_json(const exact::Matrix<exact::Fp<Q>>& m);
ojson to_json(const exact::Subspace<exact::GaussianRational>& s);
template <int Q>
ojson to_json(const exact::Subspace<exact::Fp<Q>>& s);
ojson to_json(const lat::ChainNode& n);
ojson to_json(const lat::LatDescriptor& d);
ojson to_json(const lat::HyplatDescriptor& d);
ojson to_json(const Certificate& cert);  // array of {"name","pass","detail"}

// CSV for invariance scans: header a_0..a_{n-1},invariant,polytope,agree,
// booleans as 0/1, rationals as "p/q".
std::string scan_csv(const lat::ScanReport& rep);
ojson scan_json(const lat::ScanReport& rep);

// Deterministic report body: {"command","config","results","checks"}.
ojson make_report(const std::string& command, ojson config, ojson results,
                  const Certificate& cert);

// --- parsers ----------------------------------------------------------------

ops::BlockSpec parse_block_spec(const std::string& text, const std::string& filename);
cyc::FunctionSystem parse_function_system(const std::string& text,
                                          const std::string& filename);

// finite jet-quotient model for the lattice subcommand
struct FiniteModelInput {
    Rational alpha{1};
    double p = 2.0;
    std::vector<jordan::FiniteBlock> blocks;
};
FiniteModelInput parse_finite_model(const std::string& text, const std::string& filename);

struct SpecAndOps {
    ops::BlockSpec spec;
    std::vector<ops::DiagConv> ops;
};
SpecAndOps parse_spec_and_ops(const std::string& text, const std::string& filename);

struct SpecAndKernels {
    ops::BlockSpec spec;
    std::vector<std::vector<PowerFn>> kernels;
};
SpecAndKernels parse_spec_and_kernels(const std::string& text, const std::string& filename);

// {"matrix":[[PowerFn,...],...]} for the star-rank subcommand
std::vector<std::vector<PowerFn>> parse_powerfn_matrix(const std::string& text,
                                                       const std::string& filename);

struct SpecAndLatDescriptor {
    ops::BlockSpec spec;
    lat::LatDescriptor descriptor;
};
SpecAndLatDescriptor parse_lat_descriptor(const std::string& text,
                                          const std::string& filename);

struct SpecAndHyplatDescriptor {
    ops::BlockSpec spec;
    lat::HyplatDescriptor descriptor;
};
SpecAndHyplatDescriptor parse_hyplat_descriptor(const std::string& text,
                                                const std::string& filename);

}  // namespace rlop::io
