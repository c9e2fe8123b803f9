#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rlop/json_io.hpp"

using namespace rlop;
using io::InputError;
using ops::Block;
using ops::BlockSpec;
using ops::Flavor;

namespace {

const Complex I(0.0, 1.0);

bool any_contains(const std::vector<std::string>& msgs, const std::string& needle) {
    for (const auto& m : msgs)
        if (m.find(needle) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("scalar emitters") {
    CHECK(io::to_json(Rational(3, 4)).get<std::string>() == "3/4");
    CHECK(io::to_json(Rational(-2)).get<std::string>() == "-2");
    auto z = io::to_json(Complex(1.5, -2.0));
    CHECK(z["re"].get<double>() == 1.5);
    CHECK(z["im"].get<double>() == -2.0);
    CHECK(io::to_json(exact::GaussianRational(Rational(1, 2), Rational(-1))).get<std::string>() ==
          exact::GaussianRational(Rational(1, 2), Rational(-1)).str());
}

TEST_CASE("block spec roundtrip") {
    BlockSpec spec(Rational(1, 2), 2.0,
                   {Block{1.0, 0, Flavor::Lp}, Block{1.0 / std::sqrt(2.0), 0, Flavor::Lp}});
    std::string text = io::to_json(spec).dump(2);
    BlockSpec back = io::parse_block_spec(text, "spec.json");
    CHECK(back.alpha() == spec.alpha());
    CHECK(back.p() == spec.p());
    REQUIRE(back.n() == spec.n());
    for (int j = 0; j < spec.n(); ++j) {
        CHECK(back.blocks()[j].lambda == spec.blocks()[j].lambda);
        CHECK(back.blocks()[j].k == spec.blocks()[j].k);
        CHECK(back.blocks()[j].flavor == spec.blocks()[j].flavor);
    }
    CHECK(back.s_of(1) == spec.s_of(1));
}

TEST_CASE("function system roundtrip") {
    BlockSpec spec(Rational(1), 2.0, {Block{1.0, 1, Flavor::W}, Block{I, 0, Flavor::Lp}});
    PowerFn f = add(PowerFn::monomial(Complex(1.0, 0.5), Rational(1)),
                    PowerFn::shifted(2.0, Rational(1, 4), Rational(2)));
    cyc::FunctionSystem sys(spec, {{f, PowerFn::monomial(1.0, Rational(0))}});
    std::string text = io::to_json(sys).dump();
    cyc::FunctionSystem back = io::parse_function_system(text, "sys.json");
    REQUIRE(back.N() == 1);
    CHECK(approx_equal(back.vectors[0][0], f));
    CHECK(approx_equal(back.vectors[0][1], PowerFn::monomial(1.0, Rational(0))));
    CHECK(back.spec.alpha() == spec.alpha());
}

TEST_CASE("scan csv layout") {
    BlockSpec spec(Rational(1), 2.0,
                   {Block{1.0, 0, Flavor::Lp}, Block{0.5, 0, Flavor::Lp}});
    auto rep = lat::invariance_scan(spec, 3);
    std::string csv = io::scan_csv(rep);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "a_0,a_1,invariant,polytope,agree");
    int rows = 0;
    bool saw_rational = false;
    while (std::getline(in, line)) {
        ++rows;
        if (line.find("1/2") != std::string::npos) saw_rational = true;
    }
    CHECK(rows == 9);
    CHECK(saw_rational);

    auto j = io::scan_json(rep);
    CHECK(j["tuples"].get<long long>() == 9);
    CHECK(j["all_agree"].get<bool>());
    CHECK(j["rows"].size() == 9);
}

TEST_CASE("report layout") {
    Certificate cert;
    cert.add("alpha_positive", true, "");
    cert.add("bound", false, "needs 2, got 1");
    auto rep = io::make_report("demo", io::ojson{{"n", 2}}, io::ojson{{"count", 5}}, cert);
    auto keys = rep.items();
    std::vector<std::string> names;
    for (const auto& kv : keys) names.push_back(kv.key());
    REQUIRE(names.size() == 4);
    CHECK(names[0] == "command");
    CHECK(names[1] == "config");
    CHECK(names[2] == "results");
    CHECK(names[3] == "checks");
    CHECK(rep["command"].get<std::string>() == "demo");
    CHECK(rep["checks"].size() == 2);
    CHECK(rep["checks"][1]["pass"].get<bool>() == false);
    CHECK(rep["checks"][1]["detail"].get<std::string>() == "needs 2, got 1");
    // byte-identical across repeated serialization
    auto rep2 = io::make_report("demo", io::ojson{{"n", 2}}, io::ojson{{"count", 5}}, cert);
    CHECK(rep.dump(2) == rep2.dump(2));
}

TEST_CASE("syntax errors carry line numbers") {
    std::string text = "{\n  \"alpha\": 1,\n  ]\n}";
    try {
        io::parse_block_spec(text, "bad.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        REQUIRE(e.messages.size() == 1);
        CHECK(e.messages[0].find("bad.json:3") != std::string::npos);
        CHECK(e.messages[0].find("syntax error") != std::string::npos);
    }
}

TEST_CASE("schema errors carry pointer and line") {
    std::string text =
        "{\n"
        "  \"alpha\": \"1/0\",\n"
        "  \"blocks\": [\n"
        "    {\"lambda\": {\"re\": 1, \"im\": 0}, \"flavor\": \"Lq\"}\n"
        "  ]\n"
        "}";
    try {
        io::parse_block_spec(text, "spec.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        // both violations reported at once
        CHECK(e.messages.size() == 2);
        CHECK(any_contains(e.messages, "spec.json:2: /alpha:"));
        CHECK(any_contains(e.messages, "spec.json:4: /blocks/0/flavor:"));
        CHECK(any_contains(e.messages, "unknown flavor"));
    }
}

TEST_CASE("unknown fields are rejected") {
    std::string text =
        "{\"alpha\": 1, \"blocks\": [{\"lambda\": {\"re\": 1, \"im\": 0}, \"flavor\": \"Lp\"}],"
        " \"extra\": true}";
    try {
        io::parse_block_spec(text, "x.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(any_contains(e.messages, "unknown field \"extra\""));
    }
}

TEST_CASE("admissibility failures point into the spec object") {
    std::string text =
        "{\"alpha\": \"3/2\", \"p\": 2,"
        " \"blocks\": [{\"lambda\": {\"re\": 1, \"im\": 0}, \"k\": 2, \"flavor\": \"W\"}]}";
    try {
        io::parse_block_spec(text, "spec.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(any_contains(e.messages, "admissibility:"));
        CHECK(any_contains(e.messages, "not admissible"));
    }
}

TEST_CASE("membership failures are anchored on the vectors") {
    std::string text =
        "{\"spec\": {\"alpha\": 1, \"blocks\":"
        " [{\"lambda\": {\"re\": 1, \"im\": 0}, \"k\": 1, \"flavor\": \"W\"}]},"
        " \"vectors\": [[{\"terms\": [{\"re\": 1, \"im\": 0, \"shift\": \"1/2\","
        " \"power\": \"1/2\"}]}]]}";
    try {
        io::parse_function_system(text, "sys.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(any_contains(e.messages, "/vectors: membership:"));
    }
}

TEST_CASE("negative shift and power are rejected") {
    std::string text =
        "{\"spec\": {\"alpha\": 1, \"blocks\":"
        " [{\"lambda\": {\"re\": 1, \"im\": 0}, \"flavor\": \"Lp\"}]},"
        " \"vectors\": [[{\"terms\": [{\"re\": 1, \"im\": 0, \"shift\": \"-1/2\","
        " \"power\": 1}]}]]}";
    try {
        io::parse_function_system(text, "sys.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(any_contains(e.messages, "shift must be >= 0"));
    }
}

TEST_CASE("finite model parsing") {
    std::string text =
        "{\"alpha\": 2, \"blocks\": [{\"lambda\": \"i\", \"k\": 1}, {\"lambda\": 1, \"k\": 2}]}";
    auto model = io::parse_finite_model(text, "m.json");
    CHECK(model.alpha == Rational(2));
    REQUIRE(model.blocks.size() == 2);
    CHECK(model.blocks[0].lambda == exact::GaussianRational(Rational(0), Rational(1)));
    CHECK(model.blocks[1].k == 2);
}

TEST_CASE("powerfn matrix parsing") {
    std::string text =
        "{\"matrix\": [[{\"terms\": [{\"re\": 1, \"im\": 0, \"shift\": 0, \"power\": 0}]},"
        " {\"terms\": []}]]}";
    auto m = io::parse_powerfn_matrix(text, "f.json");
    REQUIRE(m.size() == 1);
    REQUIRE(m[0].size() == 2);
    CHECK_FALSE(m[0][0].is_zero());
    CHECK(m[0][1].is_zero());
}
