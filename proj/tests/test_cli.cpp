#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "listrec/cli.hpp"
#include "listrec/io.hpp"

using namespace listrec;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() / ("listrec_test_" + name);
    std::ofstream(path) << contents;
    return path.string();
}

const std::string kFrs72 = R"({"family":"frs","p":7,"s":2,"n":3,"k":2,"gamma":3})";

}  // namespace

TEST_CASE("bounds singleton") {
    const auto r = run({"bounds", "singleton", "--k", "2", "--n", "3", "--s", "2", "--L", "1", "--no-meta"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["value"] == json::parse(R"({"num":5,"den":12})"));
    CHECK_FALSE(j.contains("meta"));
    const auto with_meta = json::parse(run({"bounds", "singleton", "--k", "2", "--n", "3", "--s", "2", "--L", "1"}).out);
    CHECK(with_meta.contains("meta"));
}

TEST_CASE("bounds modes and failures") {
    CHECK(run({"bounds", "zero-error", "--k", "2", "--n", "3", "--s", "2", "--ell", "2", "--L", "2"}).code == 0);
    CHECK(run({"bounds", "threshold", "--R", "0.4", "--mu", "0.1", "--ell", "2", "--L", "15"}).code == 0);
    CHECK(run({"bounds", "asymptotic", "--R", "1/2", "--eps", "1/2", "--ell", "2", "--variant", "rlc"}).code == 0);
    CHECK(run({"bounds", "conjecture", "--ell", "2", "--a", "2", "--R", "1/4"}).code == 0);
    CHECK(run({"bounds", "johnson", "--ell", "2", "--R", "1/8"}).code == 0);
    const auto req = run({"bounds", "requirements", "--ell", "2", "--eps", "0.5", "--L", "10", "--variant", "rlc", "--no-meta"});
    CHECK(req.code == 0);
    CHECK(json::parse(req.out)["details"]["q_exponent"] == json::parse(R"({"num":132,"den":1})"));
    CHECK(run({"bounds", "singleton", "--k", "2", "--n", "3", "--s", "2", "--L", "3"}).code == 2);
    CHECK(run({"bounds", "singleton", "--k", "2"}).code == 2);
    CHECK(run({"bounds", "nonsense"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"bounds", "singleton", "--k", "x"}).code == 2);
    const auto csv = run({"bounds", "singleton", "--k", "2", "--n", "3", "--s", "2", "--L", "1", "--format", "csv"});
    CHECK(csv.out.find("singleton,value,5/12") != std::string::npos);
}

TEST_CASE("table1 csv") {
    const auto r = run({"table1", "--ell", "2", "--R", "1/2", "--eps", "0.1", "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "family,ell,R,eps,alphabet_requirement,list_size,list_size_log10,explicitness");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 4);
    CHECK(r.out.find("folded-rs,2,1/2,1/10,\"q > s*n, s >= 3200\"") != std::string::npos);
    // default grid skips R + eps >= 1
    const auto all = run({"table1", "--format", "csv"});
    CHECK(all.code == 0);
    CHECK(all.out.find(",8,4/5,1/5,") == std::string::npos);
    CHECK(all.out.find(",8,4/5,1/10,") != std::string::npos);
}

TEST_CASE("confirm on FRS(7)") {
    const auto path = temp_file("frs.json", kFrs72);
    const auto r = run({"confirm", "--code", path, "--ell", "2", "--no-meta"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["L_max"] == 2);
    CHECK(j["confirmed"] == true);
    CHECK(run({"confirm", "--code", "/nonexistent/file.json", "--ell", "2"}).code == 2);
    CHECK(run({"confirm", "--code", kFrs72, "--ell", "60"}).code == 2);
}

TEST_CASE("bl check") {
    const auto bad = temp_file("bad.json", R"({"p":2,"v_dim":2,"maps":[[[1,0]]],"scalars":[{"num":1,"den":1}]})");
    const auto r = run({"bl", "check", "--instance", bad, "--samples", "1", "--no-meta"});
    CHECK(r.code == 1);
    const auto j = json::parse(r.out);
    CHECK(j["results"][0]["dim_condition"] == "fails");
    CHECK(j["results"][0]["witness"]["dim"] == 1);

    const auto good = temp_file("good.json", R"({"p":3,"v_dim":2,"maps":[[[1,0],[0,1]]],"scalars":[1]})");
    const auto g = run({"bl", "check", "--instance", good, "--samples", "20", "--no-meta"});
    CHECK(g.code == 0);
    CHECK(json::parse(g.out)["results"][0]["entropy"]["violations"] == 0);

    const auto a = run({"bl", "check", "--count", "5", "--p", "3", "--samples", "5", "--seed", "9", "--no-meta"});
    const auto b = run({"bl", "check", "--count", "5", "--p", "3", "--samples", "5", "--seed", "9", "--no-meta"});
    CHECK(a.out == b.out);
    CHECK((a.code == 0 || a.code == 1));
}

TEST_CASE("design verify") {
    const auto r = run({"design", "verify", "--code", R"({"family":"frs","p":13,"s":3,"n":4,"k":4,"gamma":2})", "--d", "2",
                        "--mu", "1/4", "--no-meta"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["reports"][0]["holds_gk"] == true);
    CHECK(j["slacked"].size() == 2);
    CHECK(run({"design", "verify", "--code", R"({"family":"frs","p":13,"s":3,"n":4,"k":4,"gamma":2})", "--d", "2",
               "--budget", "100"}).code == 3);
}

TEST_CASE("recover, search and budgets") {
    const auto table = temp_file("table.json", R"({"sets":[[[0,0]],[[0,0]],[[0,0]]]})");
    const auto r = run({"recover", "--code", kFrs72, "--table", table, "--rho", "0", "--no-meta"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["count"] == 1);

    const auto z = run({"search", "zero-error", "--code", kFrs72, "--ell", "2", "--no-meta"});
    CHECK(z.code == 0);
    CHECK(json::parse(z.out)["L_max"] == 2);
    CHECK(run({"search", "zero-error", "--code", kFrs72, "--ell", "2", "--L", "1"}).code == 1);

    const auto hit = run({"search", "avg-radius", "--code", kFrs72, "--L", "1", "--rho", "1", "--mode", "list-decoding", "--no-meta"});
    CHECK(hit.code == 1);
    const auto miss = run({"search", "avg-radius", "--code", kFrs72, "--L", "1", "--rho", "1/6", "--mode", "list-decoding"});
    CHECK(miss.code == 0);
    CHECK(run({"search", "avg-radius", "--code", kFrs72, "--L", "2", "--rho", "1/6", "--budget", "10"}).code == 3);
    CHECK(run({"search", "avg-radius", "--code", kFrs72, "--L", "2", "--rho", "1/6", "--budget", "100", "--randomized",
               "--trials", "50"}).code == 0);  // 49 codewords fit, C(49, 3) does not

    ::setenv("LISTREC_BUDGET", "10", 1);
    const int env_code = run({"search", "avg-radius", "--code", kFrs72, "--L", "2", "--rho", "1/6"}).code;
    ::unsetenv("LISTREC_BUDGET");
    CHECK(env_code == 3);
}

TEST_CASE("code command and output file") {
    const auto path = (std::filesystem::temp_directory_path() / "listrec_test_rlc.json").string();
    const auto r = run({"code", "--family", "rlc", "--p", "5", "--s", "2", "--n", "3", "--k", "2", "--seed", "42",
                        "--no-meta", "--output", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const auto spec = code_spec_from_json(read_json_file(path));
    CHECK(spec == sample_code(Family::kRlc, 5, 2, 3, 2, 42));
}

TEST_CASE("determinism with --no-meta") {
    const std::vector<std::string> args{"search", "avg-radius", "--code", kFrs72, "--L", "1", "--rho", "1/2", "--no-meta"};
    CHECK(run(args).out == run(args).out);
    CHECK(run({"--version"}).code == 0);
    CHECK(run({"--help"}).code == 0);
}
