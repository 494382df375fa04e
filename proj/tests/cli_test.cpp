#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifndef FLATBAND_CLI_PATH
#define FLATBAND_CLI_PATH "flatband"
#endif
#ifndef FLATBAND_GRAPHS_DIR
#define FLATBAND_GRAPHS_DIR "graphs"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(FLATBAND_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string graph(const std::string& name) {
    return std::string(FLATBAND_GRAPHS_DIR) + "/" + name + ".json";
}

}  // namespace

TEST_CASE("detect prints the exact report") {
    auto r = run_cli("detect " + graph("fig1-left"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"minpoly\"") != std::string::npos);
    CHECK(r.out.find("\"-1\"") != std::string::npos);
    CHECK(r.out.find("\"multiplicity\": 1") != std::string::npos);
}

TEST_CASE("detect output is deterministic") {
    auto a = run_cli("detect " + graph("pyrochlore-1d"));
    auto b = run_cli("detect " + graph("pyrochlore-1d"));
    CHECK(a.out == b.out);
    CHECK(a.exit_code == 0);
}

TEST_CASE("screen2 names the violated condition") {
    auto r = run_cli("screen2 " + graph("honeycomb"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("condition (iii)") != std::string::npos);
    r = run_cli("screen2 " + graph("ladder"));
    CHECK(r.out.find("condition (ii)") != std::string::npos);
    r = run_cli("screen2 " + graph("fivecell-fig8"));
    CHECK(r.out.find("candidates: -2") != std::string::npos);
}

TEST_CASE("enumerate emits the nu=4 value set") {
    auto r = run_cli("enumerate --nu 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"-2\"") != std::string::npos);
    CHECK(r.out.find("\"minpoly\"") != std::string::npos);
}

TEST_CASE("bands csv has the documented header") {
    auto r = run_cli("bands " + graph("honeycomb") + " --grid 4 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("theta_1,theta_2,E_1,E_2", 0) == 0);
}

TEST_CASE("validate failure and domain errors exit 1, usage errors exit 2") {
    auto r = run_cli("detect /nonexistent/file.json");
    CHECK(r.exit_code == 1);
    r = run_cli("unknown-subcommand");
    CHECK(r.exit_code == 2);
    r = run_cli("detect");
    CHECK(r.exit_code == 2);
}

TEST_CASE("generate cone round-trips through a file") {
    std::string tmp = "/tmp/flatband_cli_test_cone.json";
    auto r = run_cli("generate cone --gf path:2 --out " + tmp);
    CHECK(r.exit_code == 0);
    auto d = run_cli("detect " + tmp);
    CHECK(d.out.find("\"-1\"") != std::string::npos);
    std::remove(tmp.c_str());
}

#include "flatband/graph.hpp"
#include <fstream>
#include <sstream>

TEST_CASE("bundled graph files are canonical byte-for-byte") {
    for (const char* name : {"fig1-left", "fig1-right", "creutz", "pyrochlore-1d", "ladder", "honeycomb",
                             "sawtooth-fig10", "sheared-fig7", "fivecell-fig8", "lieb-like-fig9-right",
                             "korsa-counterexample"}) {
        std::string path = graph(name);
        std::ifstream in(path);
        REQUIRE(in.good());
        std::stringstream ss;
        ss << in.rdbuf();
        flatband::PeriodicGraph g = flatband::load_graph(path);
        CHECK(flatband::to_json(g) == ss.str());
        CHECK(flatband::validate(g).ok());
    }
}

TEST_CASE("bands json summary") {
    auto r = run_cli("bands " + graph("creutz") + " --grid 8 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"flat_values\"") != std::string::npos);
}
