#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "qbell_cli/classify.hpp"
#include "qbell_cli/document.hpp"
#include "qbell_cli/exit_code.hpp"
#include "qbell_cli/sweep.hpp"
#include "support.hpp"

using namespace qbell;
using namespace qbell::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "qbell_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_tool(const std::string& args, const fs::path& stdout_path = {}) {
    std::string cmd = std::string("\"") + QBELL_TOOL_PATH + "\" " + args;
    cmd += stdout_path.empty() ? " >/dev/null" : " >\"" + stdout_path.string() + "\"";
    cmd += " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

StateDocument round_trip(const StateDocument& doc) { return document_from_json(Json::parse(dump(to_json(doc)))); }

ClassificationReport classify_doc(const StateDocument& doc, const std::string& id) {
    const ResolvedState s = resolve(doc);
    return classify(s, doc.kind, id, default_witness_battery(s.d), 1e-10);
}

bool has_note(const ClassificationReport& r, const std::string& needle) {
    return std::any_of(r.notes.begin(), r.notes.end(),
                       [&](const std::string& n) { return n.find(needle) != std::string::npos; });
}

struct EnvGuard {
    explicit EnvGuard(const char* value) {
        if (value == nullptr) {
            ::unsetenv("QBELL_MAX_DIM");
        } else {
            ::setenv("QBELL_MAX_DIM", value, 1);
        }
    }
    ~EnvGuard() { ::unsetenv("QBELL_MAX_DIM"); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("document round trips are exact") {
    const auto bp = bell::BellProbabilities(3, {0.25, 0.125, 0.125, 0.0625, 0.0625, 0.125, 0.125, 0.0625, 0.0625});
    const auto back = bell_from_document(round_trip(bell_document(bp)));
    CHECK(back.values() == bp.values());

    const auto eps = families::rho_epsilon(2.0);
    CHECK(bell_from_document(round_trip(bell_document(eps))).values() == eps.values());

    Rng rng(71);
    const auto cs = circulant::random_state(3, rng);
    const auto doc = round_trip(circulant_document(cs, Json{{"seed", 71}}));
    CHECK(doc.kind == "circulant");
    CHECK(doc.metadata["seed"] == 71);
    const auto rs = resolve(doc);
    REQUIRE(rs.circulant.has_value());
    for (std::size_t n = 0; n < 3; ++n) CHECK(rs.circulant->blocks().blocks[n] == cs.blocks().blocks[n]);

    const ComplexMatrix m = testing::maximally_entangled_dense(2);
    const auto dd = resolve(round_trip(dense_document(2, m)));
    CHECK(dd.dense == m);
    CHECK(dd.circulant.has_value());
    CHECK(dd.bell.has_value());
    CHECK(complex_from_json(complex_to_json(Complex(0.1, -0.3))) == Complex(0.1, -0.3));
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"d": 3, "payload": {}})")), DocumentError);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"kind": "tensor", "d": 3, "payload": {}})")), DocumentError);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"kind": "bell", "d": 1, "payload": {"p": [1]}})")),
                    DocumentError);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"kind": "bell", "d": "3", "payload": {}})")), DocumentError);
    const auto short_p = document_from_json(Json::parse(R"({"kind": "bell", "d": 2, "payload": {"p": [0.5, 0.5]}})"));
    CHECK_THROWS_AS(resolve(short_p), DocumentError);
    const auto neg_p =
        document_from_json(Json::parse(R"({"kind": "bell", "d": 2, "payload": {"p": [1.5, -0.5, 0, 0]}})"));
    CHECK_THROWS_AS(resolve(neg_p), DocumentError);
    const auto bad_matrix =
        document_from_json(Json::parse(R"({"kind": "dense", "d": 2, "payload": {"matrix": [[[1, 0]]]}})"));
    CHECK_THROWS_AS(resolve(bad_matrix), DocumentError);
    const auto bad_family =
        document_from_json(Json::parse(R"({"kind": "family", "d": 3, "payload": {"name": "omega"}})"));
    CHECK_THROWS_AS(resolve(bad_family), DocumentError);

    const fs::path junk = scratch_dir() / "junk.json";
    std::ofstream(junk) << "{not json";
    CHECK_THROWS_AS(read_document(junk.string()), DocumentError);
    CHECK_THROWS_AS(read_document((scratch_dir() / "missing.json").string()), DocumentError);
}

TEST_CASE("dense dimension cap") {
    EnvGuard unset(nullptr);
    CHECK(max_dense_dim() == kDefaultMaxDim);
    std::vector<double> p(81, 1.0 / 81.0);
    const auto big = bell_document(bell::BellProbabilities(9, p));
    CHECK_THROWS_AS(resolve(big), DocumentError);
    CHECK_NOTHROW(resolve(big, 81));
    {
        EnvGuard small("4");
        CHECK(max_dense_dim() == 4);
        CHECK_THROWS_AS(resolve(bell_document(families::rho_epsilon(1.0))), DocumentError);
    }
    {
        EnvGuard bad("lots");
        CHECK_THROWS_AS(max_dense_dim(), DocumentError);
    }
}

TEST_CASE("classification of reference states") {
    const auto eps = classify_doc(bell_document(families::rho_epsilon(2.0)), "eps2");
    CHECK(eps.hermitian);
    CHECK(eps.psd);
    CHECK(eps.bell_diagonal);
    REQUIRE(eps.ppt_closed_form.has_value());
    CHECK(*eps.ppt_closed_form);
    CHECK(eps.ppt_oracle);
    CHECK(eps.ccnr_value == doctest::Approx(1.15674).epsilon(1e-5));
    CHECK(has_note(eps, "bound entangled"));
    CHECK(eps.witness_results.size() == 4);
    const auto w101 = std::find_if(eps.witness_results.begin(), eps.witness_results.end(),
                                   [](const auto& w) { return w.witness_id == "choi:1,0,1"; });
    REQUIRE(w101 != eps.witness_results.end());
    CHECK(w101->detected);
    CHECK(w101->value == doctest::Approx(-1.0 / 7.0).epsilon(1e-12));

    std::vector<double> p(9, 0.0);
    p[0] = 1.0;
    const auto pure = classify_doc(bell_document(bell::BellProbabilities(3, p)), "p00");
    CHECK_FALSE(pure.ppt_oracle);
    CHECK_FALSE(*pure.ppt_closed_form);
    CHECK(pure.min_pt_eigenvalue == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(has_note(pure, "NPT"));

    const auto mixed = classify_doc(bell_document(bell::BellProbabilities(3, std::vector<double>(9, 1.0 / 9.0))), "mix");
    CHECK(mixed.ppt_oracle);
    CHECK(mixed.ccnr_value <= 1.0 + 1e-10);
    CHECK(std::none_of(mixed.witness_results.begin(), mixed.witness_results.end(),
                       [](const auto& w) { return w.detected; }));
    CHECK(has_note(mixed, "consistent with separability"));

    ComplexMatrix skew = ComplexMatrix::identity(4) * Complex(0.25);
    skew(0, 1) = Complex(0.1, 0.0);
    const auto ns = classify_doc(dense_document(2, skew), "skew");
    CHECK_FALSE(ns.hermitian);
    CHECK(has_note(ns, "not Hermitian"));

    Rng rng(72);
    const auto rc = classify_doc(circulant_document(circulant::random_state(4, rng)), "rc");
    REQUIRE(rc.ppt_closed_form.has_value());
    CHECK(*rc.ppt_closed_form == rc.ppt_oracle);
    CHECK(rc.circulant);
}

TEST_CASE("witness specs") {
    CHECK(default_witness_battery(2) == std::vector<std::string>{"reduction", "flip"});
    CHECK(default_witness_battery(4).back() == "wdk:1");
    CHECK(witness_from_spec("choi:1,1,0", 3) == witness::choi_grid(1, 1, 0));
    CHECK(witness_from_spec("wlm:0.1,0.05", 3) == witness::w_lambda_mu(0.1, 0.05));
    CHECK(witness_from_spec("wdk:2", 4) == witness::w_dk(4, 2));
    CHECK_THROWS_AS(witness_from_spec("choi:2,1,1", 3), InvalidArgument);
    CHECK_THROWS_AS(witness_from_spec("choi:1,1,0", 4), InvalidArgument);
    CHECK_THROWS_AS(witness_from_spec("mystery", 3), InvalidArgument);
}

TEST_CASE("report serialization") {
    const auto r = classify_doc(bell_document(families::rho_epsilon(0.5)), "eps");
    const Json j = report_to_json(r);
    CHECK(j["version"] == kFormatVersion);
    CHECK(j["state_id"] == "eps");
    CHECK(j["witness_results"].size() == r.witness_results.size());
    const std::string csv = report_to_csv(r);
    CHECK(csv.find("\"w[choi:1,1,0]\"") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("ranges") {
    const auto lin = Range::parse("0:1:5").points();
    REQUIRE(lin.size() == 5);
    CHECK(lin[2] == doctest::Approx(0.5));
    CHECK(lin.back() == 1.0);
    const auto lg = Range::parse("0.1:10:3", true).points();
    REQUIRE(lg.size() == 3);
    CHECK(lg[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lg.back() == 10.0);
    CHECK(Range::parse("2:2:1").points() == std::vector<double>{2.0});
    CHECK_THROWS_AS(Range::parse("0:1"), InvalidArgument);
    CHECK_THROWS_AS(Range::parse("a:1:3"), InvalidArgument);
    CHECK_THROWS_AS(Range::parse("0:1:0"), InvalidArgument);
    CHECK_THROWS_AS(Range::parse("0:1:3", true), InvalidArgument);
}

TEST_CASE("sweeps") {
    const auto e = sweep_epsilon(Range::parse("0.1:10:21", true), 1e-10);
    REQUIRE(e.header.size() == 7);
    CHECK(e.header[0] == "eps");
    for (const auto& row : e.rows) {
        CHECK(row[1] == 1.0);
        if (std::abs(row[0] - 1.0) > 1e-9) {
            CHECK(row[3] > 1.0);
        } else {
            CHECK(row[3] <= 1.0 + 1e-10);
        }
    }

    const auto g = sweep_gamma(Range::parse("0.3:1.5:13"), 0.1, 0.05, 1e-10);
    for (const auto& row : g.rows) {
        if (row[5] == 1.0) CHECK(row[4] < 0.0);
        CHECK(row[1] == 1.0);
    }

    const auto c1 = sweep_choi(Range::parse("0:1.5:4"), Range::parse("0:2:3"), Range::parse("0:2:3"), 300, 5);
    const auto c2 = sweep_choi(Range::parse("0:1.5:4"), Range::parse("0:2:3"), Range::parse("0:2:3"), 300, 5);
    CHECK(c1.rows == c2.rows);
    CHECK(c1.rows.size() == 36);
    for (const auto& row : c1.rows) {
        if (row[6] == 1.0) CHECK(row[8] >= -1e-10);
        CHECK(row[7] == doctest::Approx(row[0] - 2.0).epsilon(1e-12));
    }
    const std::string csv = table_to_csv(c1);
    CHECK(csv.rfind("a,b,c,", 0) == 0);
    CHECK(table_to_json(c1)["rows"].size() == 36);
}

TEST_CASE("exit code mapping") {
    CHECK(exit_code_for(NumericalAssertionError("x")) == kExitNumerical);
    CHECK(exit_code_for(ConvergenceError("x")) == kExitNumerical);
    CHECK(exit_code_for(DocumentError("x")) == kExitUsage);
    CHECK(exit_code_for(InvalidArgument("x")) == kExitUsage);
    CHECK(exit_code_for(std::runtime_error("x")) == kExitUsage);
}

TEST_CASE("command-line tool") {
    const fs::path dir = scratch_dir();
    const fs::path state = dir / "eps.json";
    const fs::path report = dir / "report.json";
    CHECK(run_tool("--help") == 0);
    REQUIRE(run_tool("gen family epsilon --eps 2 --out \"" + state.string() + "\"") == 0);
    CHECK(run_tool("classify \"" + state.string() + "\" --out \"" + report.string() + "\"") == 0);
    const Json j = Json::parse(slurp(report));
    CHECK(j["ppt_oracle"] == true);
    CHECK(j["ccnr_value"].get<double>() > 1.0);

    CHECK(run_tool("classify \"" + (dir / "missing.json").string() + "\"") == 1);
    CHECK(run_tool("frobnicate") == 1);
    CHECK(run_tool("gen bell --d 2 --p 0.5,0.5") == 1);
    CHECK(run_tool("--tol -1 sweep epsilon --range 0.5:2:3") == 1);

    const fs::path a = dir / "a.json", b = dir / "b.json";
    REQUIRE(run_tool("--seed 17 gen random-bell --d 3", a) == 0);
    REQUIRE(run_tool("--seed 17 gen random-bell --d 3", b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());

    const fs::path sw = dir / "sweep.csv";
    REQUIRE(run_tool("sweep epsilon --range 0.5:2:4", sw) == 0);
    const std::string csv = slurp(sw);
    CHECK(csv.rfind("eps,ppt,min_pt_eigenvalue,ccnr_value", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

}
