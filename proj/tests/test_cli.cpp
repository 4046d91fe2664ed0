#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "support.hpp"

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

// Runs the CLI through the shell with `args` appended verbatim.
Run cli(const std::string& args, const std::string& env = "") {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string out = (dir / "causalq_cli_out.txt").string();
    const std::string err = (dir / "causalq_cli_err.txt").string();
    const std::string command = env + " '" + CAUSALQ_CLI + "' " + args + " >" + out + " 2>" + err;
    const int raw = std::system(command.c_str());
    return Run{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, support::read_file(out), support::read_file(err)};
}

std::string fixture(const std::string& stem) { return "'" + support::fixture_path(stem + ".scm.txt") + "'"; }

}  // namespace

TEST_CASE("validate", "[cli]") {
    auto r = cli("validate " + fixture("example4"));
    CHECK(r.status == 0);
    CHECK(r.out == "M: valid; order: (C, A, B, D, E)\nMprime: valid; order: (C, A, B, D, E)\n");

    const auto bad = std::filesystem::temp_directory_path() / "causalq_bad.scm.txt";
    {
        std::ofstream f(bad);
        f << "model M {\n  var X : {0, 1} = Y\n}\n";
    }
    r = cli("validate '" + bad.string() + "'");
    CHECK(r.status == 2);
    CHECK(r.err.find("2:") != std::string::npos);
    CHECK(cli("validate /nonexistent/file").status == 2);
}

TEST_CASE("solve and query", "[cli]") {
    auto r = cli("solve " + fixture("example1") + " M --context U_C=1");
    CHECK(r.status == 0);
    CHECK(r.out == "C=1 E=2\n");
    CHECK(cli("solve " + fixture("example1") + " M").status == 2);
    CHECK(cli("solve " + fixture("example1") + " Nope --context U_C=1").status == 2);

    r = cli("query " + fixture("example1") + " M '[C<-0] E=0' --context U_C=1");
    CHECK(r.status == 0);
    r = cli("query " + fixture("example1") + " M 'E=0' --context U_C=1");
    CHECK(r.status == 1);
    CHECK(cli("query " + fixture("example1") + " M 'E=' --context U_C=1").status == 2);
}

TEST_CASE("relations", "[cli]") {
    auto r = cli("relation potential-joint-ancestors " + fixture("example1") +
                 " Mprime 'C=1 vs C=0' 'E=1 vs E=0' --witness");
    CHECK(r.status == 0);
    CHECK(r.out.find("A=1 vs A=0 -> E=1 vs E=0 [witness B=0]") != std::string::npos);

    r = cli("relation parent " + fixture("example4") + " M A E");
    CHECK(r.status == 1);
    r = cli("relation sufficient " + fixture("example_cons") + " Mprime A=1 E=1");
    CHECK(r.status == 1);
    r = cli("relation sufficient " + fixture("example_cons") + " M A=1 E=1 --json");
    CHECK(r.status == 0);
    const auto j = causalq::Json::parse(r.out);
    CHECK(j["holds"] == true);

    r = cli("relation actual-joint-ancestors " + fixture("actual_or_and") +
            " M 'A=1,C=1 vs A=0,C=0' 'E=1 vs E=0' --context U_A=1,U_C=1");
    CHECK(r.status == 0);
    CHECK(cli("relation actual-joint-ancestors " + fixture("actual_or_and") + " M 'C=1 vs C=0' 'E=1 vs E=0'")
              .status == 2);
    CHECK(cli("relation bogus " + fixture("example1") + " M A E").status == 2);
}

TEST_CASE("equivalence", "[cli]") {
    auto r = cli("equiv functional " + fixture("example_struc") + " M Mprime --json");
    CHECK(r.status == 1);
    const auto j = causalq::Json::parse(r.out);
    CHECK(j["kind"] == "functional");
    CHECK(j["verdict"] == false);
    CHECK(j["counterexample"]["relation"] == "sufficiency");
    CHECK(j["counterexample"]["holds_in"] == "M");

    r = cli("equiv conservative " + fixture("example_cons") + " M Mprime");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("conservative equivalence of M and Mprime: true\n", 0) == 0);

    r = cli("equiv causal " + fixture("sanity") + " M Mprime");
    CHECK(r.status == 0);
    CHECK(r.err.find("note:") != std::string::npos);

    r = cli("equiv structural " + fixture("example1") + " M Mprime --endogenous-sources");
    CHECK(r.status == 1);
    CHECK(r.out.find("C=1 vs C=0 ~> E=1 vs E=0") != std::string::npos);

    r = cli("equiv structural " + fixture("example_struc") + " M Mprime", "CAUSALQ_MAX_EVALS=5");
    CHECK(r.status == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(cli("equiv causal " + fixture("example1") + " M Nope").status == 2);
}

TEST_CASE("output is byte-identical across runs", "[cli]") {
    for (const std::string& args :
         {"equiv causal " + fixture("example_struc") + " M Mprime --json",
          "equiv structural " + fixture("example_cons") + " M Mprime",
          "relation potential-joint-ancestors " + fixture("example4") + " Mprime 'A=1 vs A=0' 'E=1 vs E=0' --json"}) {
        const Run a = cli(args), b = cli(args);
        CHECK(a.status == b.status);
        CHECK(a.out == b.out);
    }
}
