#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "commbound/cli.hpp"
#include "commbound/error.hpp"

using namespace commbound;
using nlohmann::json;

namespace {

std::string temp_file(const std::string& name, const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() / ("commbound_cli_" + name);
    std::ofstream(path) << contents;
    return path.string();
}

struct Ran {
    int code;
    json report;
    std::string text;
};

Ran run(std::vector<std::string> args) {
    args.insert(args.begin(), "commbound");
    std::ostringstream out, err;
    const int code = cli::main(args, out, err);
    json j = out.str().empty() ? json() : json::parse(out.str());
    return {code, j, out.str()};
}

// S4 with its columns reversed.
const char* kS4 = "4 4\n-1 1 -1 1\n1 -1 -1 1\n-1 1 1 -1\n1 -1 1 -1\n";

}  // namespace

TEST_CASE("parse_args resolves commands and options") {
    const auto s4 = temp_file("s4.txt", "4 4\n+ + + -\n+ + - +\n+ - + +\n- + + +\n");
    auto c = cli::parse_args({"commbound", "analyze-matrix", "--input", s4});
    CHECK(c.command == cli::Command::analyze_matrix);
    CHECK(c.input == s4);

    c = cli::parse_args({"commbound", "lower-bound", "--theorem", "sherstov", "--function", "PARITY:2", "--inner", s4});
    CHECK(c.command == cli::Command::lower_bound);
    CHECK(c.theorem == "sherstov");
    CHECK(c.function == "PARITY:2");
    CHECK(c.epsilon0 == doctest::Approx(1.0 / 3));
    CHECK(c.seed == 0);
}

TEST_CASE("usage errors name the offending flag") {
    auto message = [](std::vector<std::string> args) {
        try {
            cli::parse_args(args);
        } catch (const ArgumentError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message({"x", "approx-degree", "-f", "PARITY:2", "--epsilon", "1.5"}).find("--epsilon") != std::string::npos);
    CHECK(message({"x", "analyze-matrix", "--input", "/nonexistent/m.txt"}).find("--input") != std::string::npos);
    CHECK(message({"x", "analyze-matrix", "--input", "S4", "--frobnicate"}).find("frobnicate") != std::string::npos);
    CHECK(message({"x", "lower-bound", "-t", "nope", "-f", "AND:2", "-g", "S4"}).find("theorem") != std::string::npos);
    CHECK(message({"x", "approx-degree", "-f", "PARITY"}).find("--function") != std::string::npos);
    CHECK(run({"approx-degree", "-f", "PARITY:2", "--epsilon", "1.5"}).code == cli::kUsage);
}

TEST_CASE("analyze-matrix on S6") {
    const auto r = run({"analyze-matrix", "--input", "S6"});
    REQUIRE(r.code == 0);
    CHECK(r.report["schema"] == 1);
    CHECK(r.report["version"] == cli::kVersion);
    CHECK(r.report["config"]["input"] == "S6");
    const auto& res = r.report["result"];
    CHECK(res["strongly_balanced"] == true);
    CHECK(res["rank"] == 5);
    CHECK(res["pattern_free"] == true);
    CHECK(res["spectral_norm"].get<double>() == doctest::Approx(std::sqrt(12.0)));
}

TEST_CASE("analyze-matrix reads files and finds S4 in itself") {
    const auto path = temp_file("s4b.txt", kS4);
    const auto r = run({"analyze-matrix", "-i", path});
    REQUIRE(r.code == 0);
    CHECK(r.report["result"]["pattern_free"] == false);
    CHECK(r.report["result"]["rank"] == 2);
    CHECK(r.report["result"]["strongly_balanced"] == true);
}

TEST_CASE("lower-bound exit codes") {
    auto r = run({"lower-bound", "--theorem", "sherstov", "--function", "PARITY:2", "--inner", "S4"});
    CHECK(r.code == 0);
    CHECK(r.report["result"]["main_term"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    r = run({"lower-bound", "--theorem", "sherstov", "--function", "PARITY:2", "--inner", "XOR2"});
    CHECK(r.code == cli::kInapplicable);
    CHECK(r.report["result"]["warnings"][0].get<std::string>().find("rank 1") != std::string::npos);

    r = run({"lower-bound", "-t", "shizhu", "-f", "PARITY:2", "-g", "S4"});
    CHECK(r.code == cli::kInapplicable);
    CHECK(r.report["result"]["applicable"] == false);

    r = run({"lower-bound", "-t", "sherstov", "-f", "PARITY:2", "-g", "H2"});
    CHECK(r.code == cli::kInapplicable);
    CHECK(r.report.contains("error") != r.report["result"].contains("applicable"));
}

TEST_CASE("compose reports rank, witness and resource errors") {
    auto r = run({"compose", "-f", "AND:2", "-g", "S4", "--verify-rank", "--witness"});
    REQUIRE(r.code == 0);
    CHECK(r.report["result"]["rank_theorem"]["formula"] == 9);
    CHECK(r.report["result"]["rank_theorem"]["exact"] == 9);
    CHECK(r.report["result"]["witness"]["l1_ok"] == true);

    r = run({"compose", "-f", "PARITY:3", "-g", "S4", "--entry-cap", "100"});
    CHECK(r.code == cli::kResource);
    CHECK(r.report["error"]["kind"] == "resource");

    r = run({"compose", "-f", "PARITY:2", "-g", "H2", "--verify-rank"});
    CHECK(r.code == cli::kInapplicable);
    CHECK(r.report["error"]["kind"] == "precondition");

    CHECK(run({"compose", "-f", "PARITY:2", "-g", "S4", "--blocks", "3"}).code == cli::kUsage);
}

TEST_CASE("approx-degree with dual") {
    const auto r = run({"approx-degree", "-f", "PARITY:3", "--dual"});
    REQUIRE(r.code == 0);
    CHECK(r.report["result"]["d"] == 3);
    CHECK(r.report["result"]["dual"]["passed"] == true);
    CHECK(r.report["result"]["dual"]["witness"].size() == 8);
}

TEST_CASE("group-check on a Latin square over Z_3") {
    const auto gmap = temp_file("latin.txt", "group 3\n0,1,2\n1,2,0\n2,0,1\n");
    const auto values = temp_file("values.txt", "1 -1 -1\n");
    auto r = run({"group-check", "--gmap", gmap});
    REQUIRE(r.code == 0);
    const auto& m = r.report["result"]["maps"][0];
    CHECK(m["regularity"]["regular"] == true);
    CHECK(m["orthogonality"]["passed"] == true);
    CHECK(m["invariance"]["all_invariant"] == true);
    CHECK(m["tprime"]["disagreements"] == 0);

    r = run({"group-check", "--gmap", gmap, "--values", values, "--epsilon", "0"});
    CHECK(r.report["result"]["bound"]["theorem"] == "general");
    CHECK(r.report["result"]["dual_h"]["passed"] == true);
}

TEST_CASE("search-balanced and verify-suite") {
    auto r = run({"search-balanced", "--rows", "6", "--cols", "6", "--min-rank", "2", "--forbidden", "S4"});
    REQUIRE(r.code == 0);
    CHECK(r.report["result"]["count"].get<int>() >= 1);

    r = run({"verify-suite", "--suite", "sherstov-value", "--suite", "s6"});
    CHECK(r.code == 0);
    CHECK(r.report["result"]["all_passed"] == true);
    CHECK(r.report["result"]["suites"].size() == 2);
}

TEST_CASE("reports are byte-for-byte deterministic") {
    const auto a = run({"verify-suite", "--suite", "measure-inequalities", "--seed", "5"});
    const auto b = run({"verify-suite", "--suite", "measure-inequalities", "--seed", "5"});
    CHECK(a.text == b.text);
    CHECK(a.report["config"]["seed"] == 5);
}

TEST_CASE("--output writes the report to a file") {
    const auto path = (std::filesystem::temp_directory_path() / "commbound_cli_out.json").string();
    std::filesystem::remove(path);
    const auto r = run({"analyze-matrix", "-i", "S4", "--output", path});
    CHECK(r.code == 0);
    CHECK(r.text.empty());
    std::ifstream in(path);
    CHECK(json::parse(in)["result"]["strongly_balanced"] == true);
}
