// End-to-end tests for the rlop command line tool.  The test binary takes the
// path to the CLI executable as its first argument (wired up by CMake) and
// drives it as a subprocess, checking exit codes, report contents and the
// error diagnostics.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifdef _WIN32
#error "these tests drive the CLI through POSIX shell redirection"
#endif
#include <sys/wait.h>
#include <unistd.h>

namespace {

std::string g_cli;  // path to the rlop binary, from argv[1]

const std::filesystem::path& work_dir() {
    static std::filesystem::path dir = [] {
        std::filesystem::path d =
            std::filesystem::temp_directory_path() /
            ("rlop_cli_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_input(const std::string& name, const std::string& content) {
    std::filesystem::path p = work_dir() / name;
    std::ofstream out(p);
    out << content;
    return p.string();
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    const std::filesystem::path of = work_dir() / "stdout.txt";
    const std::filesystem::path ef = work_dir() / "stderr.txt";
    std::string cmd = "'" + g_cli + "'";
    for (const std::string& a : args) cmd += " '" + a + "'";
    cmd += " > '" + of.string() + "' 2> '" + ef.string() + "'";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = read_file(of);
    r.err = read_file(ef);
    return r;
}

nlohmann::json report_of(const RunResult& r) {
    REQUIRE_FALSE(r.out.empty());
    return nlohmann::json::parse(r.out);
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// check entry lookup by name
nlohmann::json find_check(const nlohmann::json& rep, const std::string& name) {
    for (const auto& c : rep.at("checks"))
        if (c.at("name").get<std::string>() == name) return c;
    FAIL("no check named \"", name, "\"");
    return {};
}

const char* kOne = R"({"terms":[{"re":1,"im":0,"shift":0,"power":0}]})";
const char* kX = R"({"terms":[{"re":1,"im":0,"shift":0,"power":1}]})";
const char* kZero = R"({"terms":[]})";

std::string two_w_system() {
    std::ostringstream os;
    os << R"({"spec":{"alpha":1,"p":2,"blocks":[)"
       << R"({"lambda":{"re":0,"im":1},"k":1,"flavor":"W"},)"
       << R"({"lambda":{"re":1,"im":0},"k":2,"flavor":"W"}]},)"
       << R"("vectors":[[)" << kOne << "," << kX << "],[" << kX << "," << kOne
       << "]]}";
    return os.str();
}

std::string diag_w_system() {
    std::ostringstream os;
    os << R"({"spec":{"alpha":1,"p":2,"blocks":[)"
       << R"({"lambda":{"re":1,"im":0},"k":1,"flavor":"W"},)"
       << R"({"lambda":{"re":1,"im":0},"k":1,"flavor":"W"}]},)"
       << R"("vectors":[[)" << kOne << "," << kZero << "],[" << kZero << ","
       << kOne << "]]}";
    return os.str();
}

std::string two_scale_spec() {
    return R"({"alpha":1,"p":2,"blocks":[
        {"lambda":{"re":1,"im":0},"k":0,"flavor":"Lp"},
        {"lambda":{"re":0.5,"im":0},"k":0,"flavor":"Lp"}]})";
}

}  // namespace

TEST_CASE("help text lists the subcommands and bad invocations exit 1") {
    RunResult h = run_cli({"--help"});
    CHECK(h.exit_code == 0);
    CHECK(contains(h.out, "cyclic"));
    CHECK(contains(h.out, "probe"));
    CHECK(contains(h.out, "hyplat-scan"));

    RunResult none = run_cli({});
    CHECK(none.exit_code == 1);
    CHECK(contains(none.err, "subcommand"));

    RunResult noc = run_cli({"probe", "--alpha", "1"});
    CHECK(noc.exit_code == 1);  // --c is required
}

TEST_CASE("probe separates a negative parameter from the positive control") {
    RunResult r = run_cli({"probe", "--alpha", "1", "--c", "-1"});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.err, "probe: ok"));
    nlohmann::json rep = report_of(r);

    // report layout: the four top-level keys appear in a fixed order
    const std::string& t = r.out;
    const auto pc = t.find("\"command\"");
    const auto pf = t.find("\"config\"");
    const auto pr = t.find("\"results\"");
    const auto pk = t.find("\"checks\"");
    REQUIRE(pc != std::string::npos);
    CHECK(pc < pf);
    CHECK(pf < pr);
    CHECK(pr < pk);

    CHECK(rep.at("command") == "probe");
    CHECK(rep.at("config").at("alpha") == 1.0);
    CHECK(rep.at("config").at("c") == "-1");
    CHECK(rep.at("config").at("grid") == 64);
    const double res = rep.at("results").at("residual").get<double>();
    CHECK(res >= 1e-2);
    CHECK(res <= 1e-1);
    CHECK(rep.at("results").at("control_residual").get<double>() <= 1e-8);
    CHECK(rep.at("results").at("ratio").get<double>() >= 1e3);
    nlohmann::json sep = find_check(rep, "separation");
    CHECK(sep.at("pass") == true);

    RunResult pos = run_cli({"probe", "--alpha", "1", "--c", "1"});
    REQUIRE(pos.exit_code == 0);
    nlohmann::json prep = report_of(pos);
    CHECK(find_check(prep, "control").at("pass") == true);
    CHECK(prep.at("results").at("ratio").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("probe exits 2 when the separation genuinely fails") {
    // a parameter that misses the positive-real tolerance by a hair behaves
    // numerically like a positive one, so the ratio check must fail honestly
    RunResult r = run_cli({"probe", "--alpha", "1", "--c", "1+1/100000000000i"});
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "MISMATCH"));
    CHECK(contains(r.err, "separation"));
    nlohmann::json rep = report_of(r);
    CHECK(find_check(rep, "separation").at("pass") == false);
    CHECK(rep.at("results").at("ratio").get<double>() < 1e3);
}

TEST_CASE("probe rejects an unparsable scalar") {
    RunResult r = run_cli({"probe", "--alpha", "1", "--c", "xyz"});
    CHECK(r.exit_code == 1);
    CHECK(contains(r.err, "--c"));
    CHECK(r.out.empty());
}

TEST_CASE("cyclic runs the rank test on a two-block system") {
    std::string in = write_input("sys_two_w.json", two_w_system());
    RunResult r = run_cli({"cyclic", "--input", in});
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.err, "cyclic: ok"));
    nlohmann::json rep = report_of(r);
    CHECK(rep.at("results").at("test") == "w0_rank");
    CHECK(rep.at("results").at("verdict") == true);
    CHECK(rep.at("results").at("mu") == 2);
    CHECK(find_check(rep, "count").at("pass") == true);
    CHECK(find_check(rep, "rank").at("pass") == true);
}

TEST_CASE("cyclic cross-checks its verdict against the numeric oracle") {
    std::string in = write_input("sys_diag_w.json", diag_w_system());
    RunResult r = run_cli({"cyclic", "--input", in, "--oracle", "--grid", "129"});
    REQUIRE(r.exit_code == 0);
    nlohmann::json rep = report_of(r);
    CHECK(rep.at("config").at("oracle") == true);
    CHECK(rep.at("config").at("grid") == 129);
    CHECK(rep.at("results").at("verdict") == true);
    const auto& orc = rep.at("results").at("oracle");
    CHECK(orc.at("max_residual").get<double>() < 0.5);
    CHECK(orc.at("basis_rank").get<int>() >= 4);
    CHECK(find_check(rep, "oracle consistency").at("pass") == true);
}

TEST_CASE("multiplicity reports the direct-sum invariant") {
    std::string in = write_input("spec_mult.json", R"({"alpha":2,"p":2,"blocks":[
        {"lambda":{"re":1,"im":0},"k":3,"flavor":"W"},
        {"lambda":{"re":1,"im":0},"k":2,"flavor":"W"}]})");
    RunResult r = run_cli({"multiplicity", "--input", in});
    REQUIRE(r.exit_code == 0);
    nlohmann::json rep = report_of(r);
    CHECK(rep.at("results").at("mu") == 4);
    CHECK(find_check(rep, "computed").at("pass") == true);
}

TEST_CASE("lat-enum over finite fields matches the brute-force oracle") {
    std::string j3 = write_input("model_j3.json",
                                 R"({"alpha":1,"blocks":[{"lambda":"1","k":3}]})");
    RunResult r = run_cli({"lat-enum", "--input", j3, "--field", "f2", "--oracle"});
    REQUIRE(r.exit_code == 0);
    nlohmann::json rep = report_of(r);
    CHECK(rep.at("results").at("dimension") == 3);
    CHECK(rep.at("results").at("count") == 4);
    CHECK(rep.at("results").at("census") == nlohmann::json({1, 1, 1, 1}));
    CHECK(find_check(rep, "interval identity").at("pass") == true);
    CHECK(find_check(rep, "oracle match").at("pass") == true);

    std::string j22 = write_input(
        "model_j22.json",
        R"({"alpha":1,"blocks":[{"lambda":"1","k":2},{"lambda":"1","k":2}]})");
    RunResult r3 = run_cli({"lat-enum", "--input", j22, "--field", "f3", "--oracle"});
    REQUIRE(r3.exit_code == 0);
    nlohmann::json rep3 = report_of(r3);
    CHECK(rep3.at("results").at("count") == 23);
    CHECK(find_check(rep3, "oracle match").at("pass") == true);
}

TEST_CASE("lat-enum over exact scalars handles the single-chain case only") {
    std::string j3 = write_input("model_j3.json",
                                 R"({"alpha":1,"blocks":[{"lambda":"1","k":3}]})");
    RunResult r = run_cli({"lat-enum", "--input", j3, "--field", "gaussian-rational"});
    REQUIRE(r.exit_code == 0);
    nlohmann::json rep = report_of(r);
    CHECK(rep.at("results").at("count") == 4);
    CHECK(rep.at("results").at("census") == nlohmann::json({1, 1, 1, 1}));

    std::string j22 = write_input(
        "model_j22.json",
        R"({"alpha":1,"blocks":[{"lambda":"1","k":2},{"lambda":"1","k":2}]})");
    RunResult bad = run_cli({"lat-enum", "--input", j22, "--field", "gaussian-rational"});
    CHECK(bad.exit_code == 1);
    CHECK(contains(bad.err, "unicellular"));

    RunResult noorc =
        run_cli({"lat-enum", "--input", j3, "--field", "gaussian-rational", "--oracle"});
    CHECK(noorc.exit_code == 1);
    CHECK(contains(noorc.err, "finite field"));

    RunResult uf = run_cli({"lat-enum", "--input", j3, "--field", "f5"});
    CHECK(uf.exit_code == 1);
    CHECK(contains(uf.err, "unknown --field"));
}

TEST_CASE("hyplat-scan emits json and csv reports of the same scan") {
    std::string in = write_input("spec_scales.json", two_scale_spec());
    RunResult r = run_cli({"hyplat-scan", "--input", in, "--grid", "5"});
    REQUIRE(r.exit_code == 0);
    nlohmann::json rep = report_of(r);
    CHECK(rep.at("results").at("tuples") == 25);
    CHECK(rep.at("results").at("agreements") == 25);
    CHECK(rep.at("results").at("all_agree") == true);
    REQUIRE(rep.at("results").at("rows").size() == 25);
    const auto& row = rep.at("results").at("rows").at(0);
    CHECK(row.contains("a"));
    CHECK(row.contains("invariant"));
    CHECK(row.contains("polytope"));
    CHECK(row.contains("agree"));
    CHECK(find_check(rep, "scan agreement").at("pass") == true);
    CHECK(contains(find_check(rep, "scan agreement").at("detail").get<std::string>(),
                   "25/25"));

    RunResult csv = run_cli({"hyplat-scan", "--input", in, "--grid", "3", "--format",
                             "csv"});
    REQUIRE(csv.exit_code == 0);
    std::istringstream lines(csv.out);
    std::string first;
    std::getline(lines, first);
    CHECK(first == "a_0,a_1,invariant,polytope,agree");
    int rows = 0;
    for (std::string l; std::getline(lines, l);)
        if (!l.empty()) ++rows;
    CHECK(rows == 9);
}

TEST_CASE("csv output is refused outside hyplat-scan") {
    std::string in = write_input("sys_two_w.json", two_w_system());
    RunResult r = run_cli({"cyclic", "--input", in, "--format", "csv"});
    CHECK(r.exit_code == 1);
    CHECK(contains(r.err, "hyplat-scan"));
}

TEST_CASE("membership checks exit 0 and put the verdict in the report") {
    std::ostringstream ok;
    ok << R"({"spec":{"alpha":2,"p":2,"blocks":[{"lambda":{"re":1,"im":0},"k":3,"flavor":"W"}]},)"
       << R"("ops":[{"c":{"re":0,"im":0},"r":)" << kX << "}]}";
    std::string in_ok = write_input("ops_member.json", ok.str());
    RunResult r = run_cli({"alg-check", "--input", in_ok});
    REQUIRE(r.exit_code == 0);
    CHECK(report_of(r).at("results").at("member") == true);

    // convolution by 1 is half an integration step short of the algebra,
    // but still lies in the bicommutant
    std::ostringstream no;
    no << R"({"spec":{"alpha":2,"p":2,"blocks":[{"lambda":{"re":1,"im":0},"k":3,"flavor":"W"}]},)"
       << R"("ops":[{"c":{"re":0,"im":0},"r":)" << kOne << "}]}";
    std::string in_no = write_input("ops_nonmember.json", no.str());
    RunResult miss = run_cli({"alg-check", "--input", in_no});
    REQUIRE(miss.exit_code == 0);
    nlohmann::json mrep = report_of(miss);
    CHECK(mrep.at("results").at("member") == false);
    CHECK(find_check(mrep, "jet_conditions_class_0").at("pass") == false);
    CHECK(contains(miss.err, "[fail: jet_conditions_class_0]"));

    RunResult bic = run_cli({"bicommutant-check", "--input", in_no});
    REQUIRE(bic.exit_code == 0);
    CHECK(report_of(bic).at("results").at("member") == true);
}

TEST_CASE("commutant-verify accepts a valid candidate and rejects a bad one") {
    std::ostringstream ok;
    ok << R"({"spec":)" << two_scale_spec() << R"(,"kernels":[[)" << kOne << ","
       << kZero << "],[" << kOne << "," << kOne << "]]}";
    std::string in_ok = write_input("kernels_lower.json", ok.str());
    RunResult r = run_cli({"commutant-verify", "--input", in_ok});
    REQUIRE(r.exit_code == 0);
    nlohmann::json rep = report_of(r);
    CHECK(rep.at("results").at("max_residual").get<double>() <= 1e-10);
    CHECK(rep.at("results").at("test_vectors").get<int>() > 0);
    CHECK(rep.at("config").contains("tol"));
    CHECK(find_check(rep, "commutation").at("pass") == true);

    // an entry into a faster W0 block needs a vanishing boundary jet
    std::ostringstream bad;
    bad << R"({"spec":{"alpha":1,"p":2,"blocks":[)"
        << R"({"lambda":{"re":1,"im":0},"k":1,"flavor":"W0"},)"
        << R"({"lambda":{"re":0.5,"im":0},"k":1,"flavor":"W0"}]},)"
        << R"("kernels":[[)" << kOne << "," << kOne << "],[" << kZero << ","
        << kOne << "]]}";
    std::string in_bad = write_input("kernels_upper.json", bad.str());
    RunResult rb = run_cli({"commutant-verify", "--input", in_bad});
    CHECK(rb.exit_code == 1);
    CHECK(contains(rb.err, "zero k-jet"));
}

TEST_CASE("star-rank reports the rank and small determinants") {
    std::ostringstream m;
    m << R"({"matrix":[[)" << kOne << "," << kX << "],[" << kX << "," << kOne
      << "]]}";
    std::string in = write_input("matrix.json", m.str());
    RunResult r = run_cli({"star-rank", "--input", in});
    REQUIRE(r.exit_code == 0);
    nlohmann::json rep = report_of(r);
    CHECK(rep.at("results").at("rows") == 2);
    CHECK(rep.at("results").at("cols") == 2);
    CHECK(rep.at("results").at("srank") == 2);
    // det = 1*1 - x*x = x - x^3/6: two power terms, support from the origin
    CHECK(rep.at("results").at("star_det").at("terms").size() == 2);
    CHECK(rep.at("results").at("star_det_support_start") == "0");
}

TEST_CASE("ex44 reproduces the two-block worked example") {
    RunResult r = run_cli({"ex44"});
    REQUIRE(r.exit_code == 0);
    nlohmann::json rep = report_of(r);
    CHECK(rep.at("results").at("f2_count") == 8);
    CHECK(rep.at("results").at("f2_census") == nlohmann::json({1, 3, 3, 1}));
    for (const auto& c : rep.at("checks")) CHECK(c.at("pass") == true);
}

TEST_CASE("input diagnostics carry file, line and pointer") {
    RunResult miss = run_cli({"cyclic", "--input", "/nonexistent/nope.json"});
    CHECK(miss.exit_code == 1);
    CHECK(contains(miss.err, "cannot open input file"));

    std::string broken = write_input("broken.json", "{ \"alpha\": 1,\n  \"blocks\": [\n");
    RunResult syn = run_cli({"multiplicity", "--input", broken});
    CHECK(syn.exit_code == 1);
    CHECK(contains(syn.err, "broken.json:3"));
    CHECK(contains(syn.err, "syntax error"));

    std::string badalpha = write_input(
        "badalpha.json",
        R"({"alpha":"1/0","p":2,"blocks":[{"lambda":{"re":1,"im":0},"k":0,"flavor":"Lp"}]})");
    RunResult ba = run_cli({"multiplicity", "--input", badalpha});
    CHECK(ba.exit_code == 1);
    CHECK(contains(ba.err, "/alpha"));
    CHECK(contains(ba.err, "zero denominator"));

    std::string badadm = write_input(
        "badadm.json",
        R"({"alpha":1,"p":2,"blocks":[{"lambda":{"re":1,"im":0},"k":1,"flavor":"Lp"}]})");
    RunResult ad = run_cli({"multiplicity", "--input", badadm});
    CHECK(ad.exit_code == 1);
    CHECK(contains(ad.err, "admissibility"));
}

TEST_CASE("reports are byte-stable and --out mirrors stdout") {
    RunResult direct = run_cli({"probe", "--alpha", "2", "--c", "-1"});
    REQUIRE(direct.exit_code == 0);

    std::filesystem::path o1 = work_dir() / "rep1.json";
    std::filesystem::path o2 = work_dir() / "rep2.json";
    RunResult f1 = run_cli({"probe", "--alpha", "2", "--c", "-1", "--out", o1.string()});
    RunResult f2 = run_cli({"probe", "--alpha", "2", "--c", "-1", "--out", o2.string()});
    REQUIRE(f1.exit_code == 0);
    REQUIRE(f2.exit_code == 0);
    CHECK(f1.out.empty());  // the report went to the file instead
    const std::string a = read_file(o1);
    const std::string b = read_file(o2);
    CHECK(a == b);
    CHECK(a == direct.out);
    CHECK(!a.empty());
    CHECK(a.back() == '\n');
}

TEST_CASE("worker thread option is accepted") {
    std::string in = write_input("spec_scales.json", two_scale_spec());
    RunResult r = run_cli({"hyplat-scan", "--input", in, "--grid", "4", "--jobs", "2"});
    CHECK(r.exit_code == 0);
    nlohmann::json rep = report_of(r);
    CHECK(rep.at("results").at("tuples") == 16);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-rlop-binary> [doctest args]\n",
                     argv[0]);
        return 1;
    }
    g_cli = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    const int rc = ctx.run();
    std::error_code ec;
    std::filesystem::remove_all(work_dir(), ec);
    return rc;
}
