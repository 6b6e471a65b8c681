#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mbasynth/cli.hpp"

using namespace mbasynth;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "mbasynth");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("cli: count table") {
    const Result r = run({"count", "--k", "2", "--max-size", "3", "--cumulative"});
    CHECK(r.code == 0);
    CHECK(r.out.find("size\tNOT\tAND\tOR\tXOR\tNEG\tADD\tSUB\tMUL\tTOTAL\tCUMULATIVE\n") == 0);
    CHECK(r.out.find("3\t4\t4\t4\t4\t4\t4\t4\t4\t32\t38\n") != std::string::npos);

    const Result k5 = run({"count", "--k", "5", "--max-size", "10", "--cumulative"});
    const std::string last = k5.out.substr(k5.out.rfind('\n', k5.out.size() - 2) + 1);
    CHECK(last.rfind("10\t", 0) == 0);
    CHECK(last.find("\t438,822,815\n") != std::string::npos);

    const Result js = run({"count", "--k", "5", "--max-size", "10", "--cumulative", "--json"});
    CHECK(js.out.find("\"CUMULATIVE\":\"438822815\"") != std::string::npos);
}

TEST_CASE("cli: identity specification") {
    const auto spec = temp_file("mbasynth_cli_id.json");
    REQUIRE(run({"make-spec", "--k", "1", "--target", "x0", "--n", "16", "--out", spec.string()}).code == 0);
    const Result r = run({"synth", "--spec", spec.string()});
    CHECK(r.code == 0);
    CHECK(r.out == "x0\n");
    std::filesystem::remove(spec);
    CHECK(run({"decode", "--k", "2", "--size", "1", "--rank", "0"}).out == "x0\n");
}

TEST_CASE("cli: decode and encode") {
    CHECK(run({"decode", "--k", "2", "--size", "3", "--rank", "5"}).out == "(x0 & x1)\n");
    CHECK(run({"decode", "--k", "2", "--size", "3", "--rank", "5", "--rpn"}).out == "x0 x1 &\n");
    CHECK(run({"decode", "--k", "2", "--size", "3", "--rank", "32"}).code == kExitData);
    CHECK(run({"encode", "--k", "2", "--expr", "x1 & x0"}).out == "size=3\trank=6\n");
    CHECK(run({"encode", "--k", "2", "--expr", "(x0 + x1) & x0"}).code == kExitData);
}

TEST_CASE("cli: make-spec, synth and baseline exit codes") {
    const auto spec = temp_file("mbasynth_cli_spec.json");
    REQUIRE(run({"make-spec", "--k", "2", "--target", "x0 * x1 + x0", "--seed", "3", "--out", spec.string()}).code ==
            0);
    Result r = run({"synth", "--spec", spec.string(), "--max-size", "6", "--workers", "1"});
    CHECK(r.code == kExitFound);
    CHECK(r.out.find("x0") != std::string::npos);

    r = run({"synth", "--spec", spec.string(), "--max-size", "3", "--json"});
    CHECK(r.code == kExitNotFound);
    CHECK(r.out.find("\"status\":\"not_found\"") != std::string::npos);

    r = run({"synth", "--spec", spec.string(), "--max-size", "5", "--mode", "shuffled", "--stats"});
    CHECK(r.code == kExitFound);
    CHECK(r.out.find("candidates_per_second") != std::string::npos);

    r = run({"baseline", "--spec", spec.string(), "--max-size", "6", "--report", "table"});
    CHECK(r.code == kExitFound);
    CHECK(r.out.find("Size & #MBA") != std::string::npos);

    r = run({"baseline", "--spec", spec.string(), "--max-size", "3", "--mem-budget", "64"});
    CHECK(r.code == kExitOutOfMemory);
    std::filesystem::remove(spec);
}

TEST_CASE("cli: timeout exit code") {
    const auto spec = temp_file("mbasynth_cli_hard.json");
    REQUIRE(run({"make-spec", "--k", "4", "--target", "x0*x1*x2*x3*x0*x1*x2 + (x3 ^ x1 * x2)", "--out", spec.string()})
                .code == 0);
    const Result r = run({"synth", "--spec", spec.string(), "--max-size", "14", "--timeout", "0.05", "--chunk", "4096"});
    CHECK(r.code == kExitTimedOut);
    std::filesystem::remove(spec);
}

TEST_CASE("cli: usage, data and io errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"count", "--k", "2"}).code == kExitUsage);
    CHECK(run({"synth", "--spec", "/nonexistent/x.json"}).code == kExitIo);
    CHECK(run({"encode", "--k", "2", "--expr", "x0 +"}).code == kExitData);
    const Result v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find("0.1.0") != std::string::npos);

    const auto bad = temp_file("mbasynth_cli_bad.json");
    std::ofstream(bad) << "{\"w\": 32}";
    CHECK(run({"synth", "--spec", bad.string()}).code == kExitData);
    std::filesystem::remove(bad);
}

TEST_CASE("cli: bench gen and run") {
    const auto suite = temp_file("mbasynth_cli_suite.jsonl");
    const auto dir = temp_file("mbasynth_cli_summary");
    std::filesystem::remove_all(dir);
    Result r = run({"bench", "gen", "--min-size", "3", "--max-size", "4", "--min-vars", "1", "--max-vars", "2",
                    "--per-cell", "2", "--out", suite.string()});
    REQUIRE(r.code == 0);
    std::ifstream in(suite);
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 8);

    r = run({"bench", "run", "--suite", suite.string(), "--solvers", "simba,baseline", "--workers", "1",
             "--summary-dir", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("instance,solver,status,size,millis,repeat\n") == 0);
    CHECK(std::filesystem::exists(dir / "thresholds.csv"));
    CHECK(std::filesystem::exists(dir / "per_size.csv"));
    CHECK(std::filesystem::exists(dir / "per_vars.csv"));
    CHECK(std::filesystem::exists(dir / "head_to_head.csv"));
    std::filesystem::remove(suite);
    std::filesystem::remove_all(dir);
}
