#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "srlab/cli.hpp"

using namespace srlab;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(SRLAB_SOURCE_DIR) + "/fixtures/" + name; }

std::string temp_file(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / ("srlab_cli_" + name);
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
}

// Every output line parses as JSON and re-serializes to itself.
void check_json_lines(const std::string& out)
{
    std::istringstream in(out);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.dump() == line);
        CHECK(nlohmann::json::parse(j.dump()) == j);
        CHECK(j["schema"] == "sr-lab/1");
        ++lines;
    }
    CHECK(lines >= 1);
}

} // namespace

TEST_CASE("cli examples")
{
    const Run serre = run({"check", fixture("MT6"), "--serre", "3"});
    CHECK(serre.code == 0);
    CHECK(serre.out == "S_3: true\n");

    const Run cm = run({"check", fixture("MT6"), "--cm"});
    CHECK(cm.code == 1);
    CHECK(cm.out.rfind("CM: false\nreason: ", 0) == 0);

    const Run betti = run({"betti", fixture("C4"), "--ideal"});
    CHECK(betti.code == 0);
    CHECK(betti.out == "       0 1\ntotal: 2 1\n    2: 2 .\n    3: . 1\n");

    CHECK(run({"graph", "is-cycle", fixture("C5.graph")}).code == 0);
}

TEST_CASE("cli exit codes per subcommand")
{
    const std::string bad = temp_file("bad", "1 2\n1 x\n");
    const std::string bad_graph = temp_file("bad.graph", "1 1\n");
    const std::string missing = fixture("NO_SUCH_FILE");
    const std::string path4 = temp_file("p4.graph", "1 2\n2 3\n3 4\n");

    CHECK(run({"info", fixture("C4")}).code == 0);
    CHECK(run({"info", bad}).code == 2);
    CHECK(run({"info", missing}).code == 2);
    CHECK(run({"dual", fixture("C4")}).code == 0);
    CHECK(run({"dual", bad}).code == 2);
    CHECK(run({"link", fixture("C4"), "--face", "1"}).code == 0);
    CHECK(run({"link", fixture("C4"), "--face", "1 3"}).code == 2);
    CHECK(run({"link", fixture("C4"), "--face", "9"}).code == 2);
    CHECK(run({"link", fixture("C4")}).code == 2);
    CHECK(run({"homology", fixture("C4"), "--field", "q"}).code == 0);
    CHECK(run({"homology", fixture("C4"), "--field", "4"}).code == 2);
    CHECK(run({"betti", fixture("C4"), "--ring"}).code == 0);
    CHECK(run({"betti", fixture("C4"), "--ring", "--ideal"}).code == 2);
    CHECK(run({"betti", bad}).code == 2);

    CHECK(run({"check", fixture("MT6"), "--buchsbaum"}).code == 0);
    CHECK(run({"check", fixture("MT6"), "--cmt", "1"}).code == 0);
    CHECK(run({"check", fixture("MT6"), "--cmt", "0"}).code == 1);
    CHECK(run({"check", fixture("MT6"), "--serre", "4"}).code == 1);
    CHECK(run({"check", fixture("2E"), "--sing-dim", "0"}).code == 0);
    CHECK(run({"check", fixture("2E"), "--sing-dim", "-1"}).code == 1);
    CHECK(run({"check", fixture("C4"), "--ndp", "2", "1"}).code == 0);
    CHECK(run({"check", fixture("C4"), "--ndp", "2", "2"}).code == 1);
    CHECK(run({"check", fixture("C4"), "--report"}).code == 0);
    CHECK(run({"check", fixture("C4")}).code == 2);
    CHECK(run({"check", fixture("C4"), "--cm", "--buchsbaum"}).code == 2);
    CHECK(run({"check", bad, "--cm"}).code == 2);

    CHECK(run({"graph", "cycles", fixture("C5.graph")}).code == 0);
    CHECK(run({"graph", "cycles", fixture("C5.graph"), "--max-len", "3"}).code == 2);
    CHECK(run({"graph", "chordal", fixture("C5.graph")}).code == 1);
    CHECK(run({"graph", "chordal", path4}).code == 0);
    CHECK(run({"graph", "chordal", fixture("C5.graph"), "-r", "4"}).code == 0);
    CHECK(run({"graph", "chordal", fixture("C5.graph"), "-r", "2"}).code == 2);
    CHECK(run({"graph", "is-cycle", path4}).code == 1);
    CHECK(run({"graph", "is-cycle", bad_graph}).code == 2);
    CHECK(run({"graph"}).code == 2);

    CHECK(run({"verify", "thm-er", "--n", "3"}).code == 0);
    CHECK(run({"verify", "no-such-theorem"}).code == 2);
    CHECK(run({"verify", "thm-er", "--sample", "5"}).code == 2);
    CHECK(run({"verify", "thm-er", "--n", "9"}).code == 2);

    CHECK(run({"fixtures"}).code == 0);
    CHECK(run({"fixtures", "MT6"}).code == 0);
    CHECK(run({"fixtures", "NOPE"}).code == 2);

    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"info", fixture("C4"), "--bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli human output")
{
    CHECK(run({"info", fixture("C4")}).out
          == "n: 4\ndim: 1\nfacets: 4\npure: true\nf-vector: 1 4 4\nh-vector: 1 2 1\nevery vertex is a face: true\n");
    CHECK(run({"dual", fixture("C4")}).out == "V: 4\n1 3\n2 4\n");
    CHECK(run({"homology", fixture("C4")}).out == "field: GF(2)\nH~_-1: 0\nH~_0: 0\nH~_1: 1\n");
    CHECK(run({"graph", "cycles", fixture("C5.graph")}).out == "chordless cycles of length 4..5: 1\n1 2 3 4 5\n");
    const Run report = run({"check", fixture("MT6"), "--report"});
    CHECK(report.out.find("min CM_t: 1\n") != std::string::npos);
    CHECK(report.out.find("max S_r: 3\n") != std::string::npos);
    CHECK(report.out.find("depth: 3\n") != std::string::npos);
    const Run verify = run({"verify", "thm-er", "--n", "2"});
    CHECK(verify.out.find("thm-er [pure n=2 d=1 exhaustive, GF(2)]: 1 instances, 0 not applicable, 0 counterexamples")
          != std::string::npos);
    const Run names = run({"fixtures"});
    CHECK(names.out.find("MT6\n") != std::string::npos);
    CHECK(run({"fixtures", "MT6"}).out.find("1 2 3 5\n") != std::string::npos);
}

TEST_CASE("cli JSON payloads round-trip")
{
    const std::vector<std::vector<std::string>> cases{
        {"--json", "info", fixture("MT6")},
        {"--json", "dual", fixture("MT6")},
        {"--json", "link", fixture("MT6"), "--face", "1"},
        {"--json", "homology", fixture("MT6"), "--field", "q"},
        {"--json", "betti", fixture("MT6"), "--ring"},
        {"--json", "check", fixture("MT6"), "--report"},
        {"--json", "check", fixture("MT6"), "--cm"},
        {"--json", "check", fixture("C4"), "--ndp", "2", "2"},
        {"--json", "graph", "cycles", fixture("C5.graph")},
        {"--json", "graph", "chordal", fixture("C5.graph")},
        {"--json", "verify", "thm-main", "--n", "3"},
        {"--json", "verify", "thm-main2", "--n", "6", "--sample", "20", "--seed", "4"},
    };
    for (const auto& args : cases) {
        CAPTURE(args[1]);
        const Run r = run(args);
        CHECK(r.code <= 1);
        check_json_lines(r.out);
    }
    const auto cm = nlohmann::json::parse(run({"--json", "check", fixture("MT6"), "--cm"}).out);
    CHECK(cm["value"] == false);
    CHECK(cm["predicate"] == "cm");
    CHECK(cm.contains("reason"));
    const auto betti = nlohmann::json::parse(run({"betti", fixture("C4"), "--json"}).out);
    CHECK(betti["entries"] == nlohmann::json::parse("[[0,2,2],[1,4,1]]"));
}

TEST_CASE("cli verify output is reproducible")
{
    const std::vector<std::string> args{"--json", "verify", "cor-yan", "--n", "6", "--sample", "30", "--seed", "7"};
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    CHECK(run(threaded).out == a.out);
    CHECK(nlohmann::json::parse(a.out.substr(0, a.out.find('\n'))).contains("elapsed_seconds") == false);
}
