#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "circsep/io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(CIRCSEP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& name) { return "/tmp/circsep_test_" + name; }

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("gen then find on the canonical max-gap fixture") {
    const std::string inst = tmp("maxgap.json");
    const std::string outp = tmp("maxgap_out.json");
    CHECK(run("gen --kind maxgap --n 4 --output " + inst).exit_code == 0);
    const auto r = run("find --input " + inst + " --output " + outp + " --oracle-check");
    CHECK(r.exit_code == 0);

    const auto parsed = circsep::parse_result_text(slurp(outp));
    bool found = false;
    for (const auto& rec : parsed.records) {
        if (std::abs(rec.center.x - 2.5) < 1e-6 && std::abs(rec.center.y - 2.275) < 1e-6 &&
            std::abs(rec.radius - 2.725) < 1e-6 && rec.condition == "C1") {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("exit 3 for crossing interiors, with the pair cited") {
    const std::string inst = tmp("crossing.json");
    std::ofstream(inst) << R"({"P": [[[9,9],[9,9]]], "Q": [[[0,0],[2,0]],[[1,-1],[1,1]]]})";
    CHECK(run("find --input " + inst).exit_code == 3);
}

TEST_CASE("exit 2 for unparsable or empty input") {
    const std::string inst = tmp("empty_p.json");
    std::ofstream(inst) << R"({"P": [], "Q": [[[0,0],[1,0]]]})";
    CHECK(run("find --input " + inst).exit_code == 2);

    const std::string garbage = tmp("garbage.json");
    std::ofstream(garbage) << "][";
    CHECK(run("find --input " + garbage).exit_code == 2);

    CHECK(run("gen --kind random --n 1").exit_code == 2);
    CHECK(run("gen --kind nope --n 8").exit_code == 2);
}

TEST_CASE("gen is byte-deterministic") {
    const std::string a = tmp("gen_a.json"), b = tmp("gen_b.json");
    CHECK(run("gen --kind random --n 10 --seed 7 --output " + a).exit_code == 0);
    CHECK(run("gen --kind random --n 10 --seed 7 --output " + b).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("gen equispaced and round trip through find") {
    const std::string inst = tmp("equi.json");
    const std::string outp = tmp("equi_out.json");
    CHECK(run("gen --kind equispaced --n 20 --output " + inst).exit_code == 0);
    CHECK(run("find --input " + inst + " --output " + outp).exit_code == 0);
    const auto parsed = circsep::parse_result_text(slurp(outp));
    CHECK(parsed.count >= 18);  // the equally spaced family carries ~n circles
}

TEST_CASE("svg emission") {
    const std::string inst = tmp("svg_in.json");
    const std::string svg = tmp("fig.svg");
    CHECK(run("gen --kind maxgap --n 4 --output " + inst).exit_code == 0);
    CHECK(run("find --input " + inst + " --svg " + svg).exit_code == 0);
    CHECK(slurp(svg).find("<svg") != std::string::npos);
}

TEST_CASE("records are byte-stable across thread counts") {
    const std::string inst = tmp("threads_in.json");
    const std::string o1 = tmp("threads_1.json"), o3 = tmp("threads_3.json");
    CHECK(run("gen --kind random --n 60 --seed 5 --output " + inst).exit_code == 0);
    CHECK(run("find --input " + inst + " --threads 1 --output " + o1).exit_code == 0);
    CHECK(run("find --input " + inst + " --threads 3 --output " + o3).exit_code == 0);
    const auto records_of = [](const std::string& s) {
        return s.substr(0, s.find("\"summary\""));
    };
    CHECK(records_of(slurp(o1)) == records_of(slurp(o3)));
}

TEST_CASE("generated instances round trip through find for every kind") {
    for (const std::string spec : {"--kind random --n 400 --seed 9", "--kind maxgap --n 64 --seed 2",
                                   "--kind equispaced --n 50"}) {
        const std::string inst = tmp("round_in.json");
        const std::string outp = tmp("round_out.json");
        CHECK(run("gen " + spec + " --output " + inst).exit_code == 0);
        CHECK(run("find --input " + inst + " --output " + outp).exit_code == 0);
        const auto parsed = circsep::parse_result_text(slurp(outp));
        CHECK(parsed.count == parsed.records.size());
    }
}

TEST_CASE("bench prints rows and ratios") {
    const auto r = run("bench --n-list 64,128 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("build_ms") != std::string::npos);
    CHECK(r.out.find("ratio 64 -> 128:") != std::string::npos);
}

TEST_SUITE_END();
