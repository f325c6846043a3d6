// Command line front end: color, check, gen, bench.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vizing/baseline.hpp"
#include "vizing/bench.hpp"
#include "vizing/driver.hpp"
#include "vizing/graph.hpp"

namespace {

using namespace vizing;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kInternal = 3 };

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

/// Writes to path, or to stdout when path is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn)
{
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    fn(out);
    if (!out) throw InputError("write failed for " + path);
}

std::size_t parse_size(const std::string& text)
{
    std::size_t pos = 0;
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        unsigned long long v = std::stoull(s, &used);
        if (used != s.size()) throw InputError("bad size '" + text + "'");
        return v;
    };
    try {
        if ((pos = text.find('^')) != std::string::npos) {
            unsigned long long base = number(text.substr(0, pos));
            unsigned long long exp = number(text.substr(pos + 1));
            unsigned long long v = 1;
            for (unsigned long long i = 0; i < exp; ++i) {
                if (v > (1ULL << 40) / std::max<unsigned long long>(base, 1)) throw InputError("size too large");
                v *= base;
            }
            return v;
        }
        return number(text);
    } catch (const std::logic_error&) {
        throw InputError("bad size '" + text + "'");
    }
}

struct ColorArgs {
    std::string input;
    std::string algo = "fast";
    std::string out;
    bool trace = false;
};

int run_color(const ColorArgs& a)
{
    auto in = open_input(a.input);
    Graph g = load_edge_list(in);
    const char* env = std::getenv("COLOR_TRACE");
    bool trace = a.trace || (env && std::string(env) == "1");

    auto start = std::chrono::steady_clock::now();
    std::vector<Color> colors;
    if (a.algo == "fast") {
        DriverOptions opts;
        if (trace) opts.trace = &std::cerr;
        colors = vizing_color_edges(g, opts);
    } else {
        colors = classical_color_edges(g);
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    CheckReport check = check_coloring(g, colors, static_cast<Color>(g.max_degree() + 1));
    if (!check.ok()) throw InvariantError(a.algo + " produced an invalid coloring");
    with_output(a.out, [&](std::ostream& out) { write_coloring(out, colors); });
    std::ostream& info = a.out.empty() || a.out == "-" ? std::cerr : std::cout;
    info << "n=" << g.n() << " m=" << g.m() << " delta=" << g.max_degree() << " colors=" << check.colors_used
         << " wall_ms=" << ms << '\n';
    return kOk;
}

struct CheckArgs {
    std::string graph;
    std::string coloring;
    long long max_colors = -1;
};

int run_check(const CheckArgs& a)
{
    auto gin = open_input(a.graph);
    Graph g = load_edge_list(gin);
    auto cin = open_input(a.coloring);
    std::vector<Color> colors = read_coloring(cin, g.m());
    Color limit = a.max_colors < 0 ? static_cast<Color>(g.max_degree() + 1) : static_cast<Color>(a.max_colors);
    CheckReport report = check_coloring(g, colors, limit);
    if (report.ok()) {
        std::cout << "ok colors=" << report.colors_used << " max_color=" << report.max_color << '\n';
        return kOk;
    }
    for (const std::string& v : report.violations) std::cout << v << '\n';
    return kCheckFailed;
}

struct GenArgs {
    std::string kind;
    std::size_t n = 0;
    std::size_t param = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenArgs& a)
{
    Graph g;
    if (a.kind == "random") g = gen_random_graph(a.n, a.param, a.seed);
    else if (a.kind == "regular") g = gen_random_regular(a.n, a.param, a.seed);
    else if (a.kind == "path") g = gen_path(a.n);
    else if (a.kind == "cycle") g = gen_cycle(a.n);
    else if (a.kind == "clique") g = gen_clique(a.n);
    else if (a.kind == "star") g = gen_star(a.n == 0 ? 0 : a.n - 1);
    else throw InputError("unknown graph kind '" + a.kind + "'");
    with_output(a.out, [&](std::ostream& out) { write_edge_list(out, g); });
    return kOk;
}

struct BenchArgs {
    std::vector<std::string> sizes;
    std::size_t degree = 8;
    std::size_t reps = 1;
    std::vector<std::string> algos{"fast", "classical"};
    std::uint64_t seed = 1;
    std::string csv;
};

int run_bench_cmd(const BenchArgs& a)
{
    BenchConfig config;
    for (const std::string& s : a.sizes) config.sizes.push_back(parse_size(s));
    config.degree = a.degree;
    config.reps = a.reps;
    config.algos = a.algos;
    config.seed = a.seed;
    std::vector<BenchRow> rows = run_bench(config, [](const BenchRow& r) {
        std::cerr << r.algo << " n=" << r.n << " rep=" << r.rep << " wall_ms=" << r.wall_ms << '\n';
    });
    with_output(a.csv, [&](std::ostream& out) { write_bench_csv(out, rows); });
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Deterministic (max degree + 1) edge coloring"};
    app.require_subcommand(1);

    ColorArgs color;
    auto* c = app.add_subcommand("color", "Color an edge-list graph");
    c->add_option("input", color.input, "Edge-list file")->required();
    c->add_option("--algo", color.algo, "fast or classical")->check(CLI::IsMember({"fast", "classical"}));
    c->add_option("--out", color.out, "Coloring dump (stdout when omitted)");
    c->add_flag("--trace", color.trace, "Trace repair and sparsify rounds to stderr");

    CheckArgs check;
    auto* k = app.add_subcommand("check", "Validate a coloring dump");
    k->add_option("graph", check.graph, "Edge-list file")->required();
    k->add_option("coloring", check.coloring, "Coloring dump")->required();
    k->add_option("--max-colors", check.max_colors, "Largest allowed color (default max degree + 1)");

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a graph");
    g->add_option("kind", gen.kind, "random, regular, path, cycle, clique or star")->required();
    g->add_option("n", gen.n, "Vertex count")->required();
    g->add_option("param", gen.param, "Edge count (random) or degree (regular)");
    g->add_option("seed,--seed", gen.seed, "Seed");
    g->add_option("--out", gen.out, "Output file (stdout when omitted)");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Time the colorers on random regular graphs");
    b->add_option("--sizes", bench.sizes, "Vertex counts; 2^k accepted")->required()->delimiter(',');
    b->add_option("--degree", bench.degree, "Degree");
    b->add_option("--reps", bench.reps, "Repetitions per size");
    b->add_option("--algos", bench.algos, "fast,classical")->delimiter(',');
    b->add_option("--seed", bench.seed, "Base seed");
    b->add_option("--csv", bench.csv, "CSV output (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*c) return run_color(color);
        if (*k) return run_check(check);
        if (*g) return run_gen(gen);
        if (*b) return run_bench_cmd(bench);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
