#include <sys/resource.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circsep/io.hpp"
#include "circsep/oracle.hpp"
#include "circsep/separator.hpp"

namespace {

using namespace circsep;

constexpr int kExitParse = 2;
constexpr int kExitIntersect = 3;
constexpr int kExitOracleMismatch = 4;

int run_find(const std::string& input, double eps, const std::string& output,
             const std::string& svg, bool oracle_check, int threads) {
    Instance inst;
    try {
        inst = load_instance_file(input);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }

    Tolerance tol;
    tol.eps_predicate = eps;
    tol.eps_merge = std::max(tol.eps_merge, eps);

    SeparatorOptions opts;
    opts.threads = threads;

    std::vector<SeparatingCircle> circles;
    PhaseTimings timings;
    std::vector<std::string> warnings;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        circles = find_all_largest(inst.P, inst.Q, tol, opts, &timings, &warnings);
    } catch (const InvalidInputError& e) {
        const std::size_t np = inst.P.size();
        auto label = [&](std::size_t k) {
            return k < np ? "P[" + std::to_string(k) + "]" : "Q[" + std::to_string(k - np) + "]";
        };
        std::cerr << "input rejected: " << e.what() << " (" << label(e.first()) << " and "
                  << label(e.second()) << ")\n";
        return kExitIntersect;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    for (const std::string& w : warnings) std::cerr << "note: " << w << "\n";

    const std::string text = write_result_text(circles, wall_ms);
    if (output.empty()) {
        std::cout << text;
    } else {
        save_text_file(output, text);
    }
    if (!svg.empty()) save_text_file(svg, render_svg(inst, circles));

    if (oracle_check) {
        if (inst.P.size() + inst.Q.size() > 40) {
            std::cerr << "note: instance too large for --oracle-check, skipped\n";
            return 0;
        }
        const auto expected = oracle_enumerate(inst.P, inst.Q, tol);
        auto match = [&](const OracleCircle& oc) {
            for (const SeparatingCircle& sc : circles) {
                if (sc.inside == oc.inside && dist(sc.circle.center, oc.circle.center) <= 1e-6 &&
                    std::abs(sc.circle.radius - oc.circle.radius) <= 1e-6 &&
                    sc.condition == oc.condition) {
                    return true;
                }
            }
            return false;
        };
        auto match_back = [&](const SeparatingCircle& sc) {
            for (const OracleCircle& oc : expected) {
                if (sc.inside == oc.inside && dist(sc.circle.center, oc.circle.center) <= 1e-6 &&
                    std::abs(sc.circle.radius - oc.circle.radius) <= 1e-6 &&
                    sc.condition == oc.condition) {
                    return true;
                }
            }
            return false;
        };
        bool ok = true;
        for (const auto& oc : expected) {
            if (!match(oc)) {
                std::cerr << "oracle mismatch: missing circle at (" << oc.circle.center.x << ", "
                          << oc.circle.center.y << ") r=" << oc.circle.radius << " "
                          << to_string(oc.condition) << "\n";
                ok = false;
            }
        }
        for (const auto& sc : circles) {
            if (!match_back(sc)) {
                std::cerr << "oracle mismatch: extra circle at (" << sc.circle.center.x << ", "
                          << sc.circle.center.y << ") r=" << sc.circle.radius << " "
                          << to_string(sc.condition) << "\n";
                ok = false;
            }
        }
        if (!ok) return kExitOracleMismatch;
        std::cerr << "oracle check passed: " << expected.size() << " circles\n";
    }
    return 0;
}

int run_gen(const std::string& kind, int n, std::uint64_t seed, const std::string& output) {
    if (n < 2) {
        std::cerr << "gen requires --n >= 2\n";
        return kExitParse;
    }
    Instance inst;
    inst.seed = seed;
    if (kind == "random") {
        auto [p, q] = gen_random(n, seed);
        inst.P = std::move(p);
        inst.Q = std::move(q);
        inst.name = "random-" + std::to_string(n);
    } else if (kind == "maxgap") {
        std::vector<double> xs;
        if (n == 4 && seed == 0) {
            xs = {0.0, 1.0, 4.0, 5.0};  // canonical fixture
        } else {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> uni(0.0, static_cast<double>(n));
            for (int i = 0; i < n; ++i) xs.push_back(uni(rng));
            std::sort(xs.begin(), xs.end());
        }
        auto [p, q] = gen_maxgap(xs);
        inst.P = std::move(p);
        inst.Q = std::move(q);
        inst.name = "maxgap-" + std::to_string(n);
    } else if (kind == "equispaced") {
        std::vector<double> xs;
        for (int i = 0; i < n; ++i) xs.push_back(static_cast<double>(i));
        auto [p, q] = gen_maxgap(xs);
        inst.P = std::move(p);
        inst.Q = std::move(q);
        inst.name = "equispaced-" + std::to_string(n);
    } else {
        std::cerr << "unknown --kind " << kind << "\n";
        return kExitParse;
    }
    const std::string text = write_instance_text(inst);
    if (output.empty()) {
        std::cout << text;
    } else {
        save_text_file(output, text);
    }
    return 0;
}

long peak_rss_kb() {
    struct rusage ru {};
    getrusage(RUSAGE_SELF, &ru);
    return ru.ru_maxrss;  // kilobytes on Linux
}

int run_bench(const std::string& n_list, std::uint64_t seed, int threads) {
    std::vector<int> sizes;
    std::string tok;
    for (char c : n_list + ",") {
        if (c == ',') {
            if (!tok.empty()) sizes.push_back(std::stoi(tok));
            tok.clear();
        } else {
            tok += c;
        }
    }
    std::printf("%10s %12s %12s %12s %8s %12s\n", "n", "build_ms", "query_ms", "total_ms", "out",
                "peak_rss_kb");
    std::vector<double> totals;
    for (int n : sizes) {
        auto [p, q] = gen_random(n, seed);
        SeparatorOptions opts;
        opts.threads = threads;
        opts.validate = false;  // generator output is disjoint by construction
        PhaseTimings t;
        const auto circles = find_all_largest(p, q, Tolerance{}, opts, &t, nullptr);
        const double total = t.build_ms + t.query_ms;
        totals.push_back(total);
        std::printf("%10d %12.2f %12.2f %12.2f %8zu %12ld\n", n, t.build_ms, t.query_ms, total,
                    circles.size(), peak_rss_kb());
    }
    for (std::size_t i = 1; i < totals.size(); ++i) {
        std::printf("ratio %d -> %d: %.2f\n", sizes[i - 1], sizes[i],
                    totals[i] / std::max(totals[i - 1], 1e-9));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"all locally largest circles separating two sets of segments"};
    app.require_subcommand(1);

    auto* find = app.add_subcommand("find", "compute all largest separating circles");
    std::string input, output, svg;
    double eps = 1e-9;
    bool oracle_check = false;
    int threads = 1;
    find->add_option("--input", input, "instance file")->required();
    find->add_option("--eps", eps, "predicate tolerance");
    find->add_option("--output", output, "result file (stdout when omitted)");
    find->add_option("--svg", svg, "render the instance and circles to SVG");
    find->add_flag("--oracle-check", oracle_check, "cross-check against the brute-force oracle");
    find->add_option("--threads", threads, "parallelize the candidate loops");

    auto* gen = app.add_subcommand("gen", "generate an instance file");
    std::string kind = "random", gen_output;
    int n = 10;
    std::uint64_t seed = 0;
    gen->add_option("--kind", kind, "random | maxgap | equispaced");
    gen->add_option("--n", n, "instance size")->required();
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--output", gen_output, "output file (stdout when omitted)");

    auto* bench = app.add_subcommand("bench", "wall-time table over generated instances");
    std::string n_list = "4096,8192,16384,32768";
    std::uint64_t bench_seed = 1;
    int bench_threads = 1;
    bench->add_option("--n-list", n_list, "comma-separated sizes");
    bench->add_option("--seed", bench_seed, "random seed");
    bench->add_option("--threads", bench_threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    if (find->parsed()) return run_find(input, eps, output, svg, oracle_check, threads);
    if (gen->parsed()) return run_gen(kind, n, seed, gen_output);
    if (bench->parsed()) return run_bench(n_list, bench_seed, bench_threads);
    return kExitParse;
}
