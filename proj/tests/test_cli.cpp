#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

using nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(HNSTRAT_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("grassmann subcommand") {
    const auto r = run_cli("grassmann --matrix '[[\"1\",\"2\"],[\"0\",\"0\"]]'");
    CHECK(r.code == 0);
    const json out = json::parse(r.out);
    CHECK(out.at("rank") == 1);
    CHECK(out.at("lambda") == json::array({0, -1}));

    const auto ss = run_cli("grassmann --matrix '[[\"1\",\"0\"],[\"0\",\"1\"]]'");
    CHECK(ss.code == 0);
    CHECK(json::parse(ss.out).at("status") == "semistable");
}

TEST_CASE("quiver-hn subcommand") {
    const std::string rep = R"({"vertices":["1","2"],"arrows":[[0,1]],"field":"Q",)"
                            R"("dims":[1,1],"maps":[[["0"]]],"theta":[-1,1],"alpha":[1,1]})";
    const auto r = run_cli("quiver-hn --inline '" + rep + "'");
    CHECK(r.code == 0);
    const json out = json::parse(r.out);
    CHECK(out.at("gamma") == json::array({{1, 0}, {0, 1}}));
}

TEST_CASE("hilbert-order subcommand") {
    const auto r = run_cli("hilbert-order --p '[\"2\",\"1\"]' --q '[\"0\",\"1\"]'");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).at("order") == "succeeds");
    const auto t = run_cli("hilbert-order --p '[\"2\",\"1\"]' --q '[\"0\",\"1\"]' --format text");
    CHECK(t.out == "succeeds\n");
}

TEST_CASE("torus-strata renders per-point labels") {
    const std::string in = R"({"dim":2,"metric":[1,1],"rho":[1,1],)"
                           R"("weight_sets":[[],[[1,0],[-1,0],[0,1],[0,-1]]]})";
    const auto r = run_cli("torus-strata --inline '" + in + "'");
    CHECK(r.code == 0);
    const json out = json::parse(r.out);
    REQUIRE(out.size() == 2);
    CHECK(out.at(0).at("lambda") == json::array({-1, -1}));
    CHECK(out.at(0).at("pairing") == "-2");
    CHECK(out.at(1).at("status") == "semistable");

    const auto txt = run_cli("torus-strata --inline '" + in + "' --format text");
    CHECK(txt.out.find("semistable") != std::string::npos);
    CHECK(txt.out.find("lambda=(-1,-1)") != std::string::npos);
}

TEST_CASE("ack-verify reports MATCH in text form") {
    const std::string sheaf = R"({"line_degrees":[1,-1],"torsion":[]})";
    const auto r = run_cli("ack-verify --n 1 --m 2 --inline '" + sheaf + "' --format text");
    CHECK(r.code == 0);
    CHECK(r.out.find("MATCH") != std::string::npos);
    const auto j = run_cli("ack-verify --n 1 --m 2 --inline '" + sheaf + "'");
    const json out = json::parse(j.out);
    CHECK(out.at("match") == true);
    CHECK(out.at("expected_gamma") == json::array({{3, 4}, {1, 2}}));
}

TEST_CASE("collisions text rendering") {
    const auto r = run_cli("collisions --n 1 --m 2 --deg 1 --coeff 3 --parts 2 --format text");
    CHECK(r.code == 0);
    CHECK(r.out == "no collisions within bounds\n");
}

TEST_CASE("exit codes follow the contract") {
    // malformed JSON never reaches the modules
    CHECK(run_cli("torus-strata --inline 'not json'").code == 2);
    // unknown subcommand is rejected up front
    CHECK(run_cli("frobnicate").code == 2);
    // missing file is an I/O failure
    CHECK(run_cli("torus-strata --input /nonexistent/path.json").code == 1);
    // domain errors exit 2 and identify the operation label
    const std::string sheaf = R"({"line_degrees":[-2],"torsion":[]})";
    CHECK(run_cli("ack-verify --n 0 --m 1 --inline '" + sheaf + "'").code == 2);
}

TEST_CASE("json output round-trips and is canonical") {
    const std::string in = R"({"dim":2,"rho":[1,1],"weight_sets":[[]]})";
    const auto a = run_cli("torus-strata --inline '" + in + "'");
    const auto b = run_cli("torus-strata --inline '" + in + "'");
    CHECK(a.out == b.out);
    CHECK(json::parse(a.out).dump() + "\n" == a.out);
}
