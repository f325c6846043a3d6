#include "vizing/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include "vizing/baseline.hpp"
#include "vizing/driver.hpp"

namespace vizing {

std::vector<Color> run_algorithm(const std::string& algo, const Graph& g)
{
    if (algo == "fast") return vizing_color_edges(g);
    if (algo == "classical") return classical_color_edges(g);
    throw InputError("unknown algorithm '" + algo + "'");
}

std::uint64_t bench_seed(const BenchConfig& config, std::size_t size_index, std::size_t rep)
{
    return config.seed + 1000 * size_index + rep;
}

std::vector<BenchRow> run_bench(const BenchConfig& config, const std::function<void(const BenchRow&)>& on_row)
{
    for (const std::string& a : config.algos)
        if (a != "fast" && a != "classical") throw InputError("unknown algorithm '" + a + "'");
    std::vector<BenchRow> rows;
    for (std::size_t s = 0; s < config.sizes.size(); ++s) {
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
            std::uint64_t seed = bench_seed(config, s, rep);
            Graph g = gen_random_regular(config.sizes[s], config.degree, seed);
            for (const std::string& algo : config.algos) {
                auto start = std::chrono::steady_clock::now();
                std::vector<Color> colors = run_algorithm(algo, g);
                auto stop = std::chrono::steady_clock::now();
                CheckReport check = check_coloring(g, colors, static_cast<Color>(g.max_degree() + 1));
                if (!check.ok())
                    throw InvariantError(algo + " produced an invalid coloring at n=" + std::to_string(g.n()) +
                                         ": " + (check.violations.empty() ? "" : check.violations.front()));
                BenchRow row{algo, g.n(), g.m(), g.max_degree(), rep, seed,
                             std::chrono::duration<double, std::milli>(stop - start).count(),
                             check.colors_used, true};
                if (on_row) on_row(row);
                rows.push_back(std::move(row));
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        if (a.algo != b.algo) return a.algo < b.algo;
        if (a.m != b.m) return a.m < b.m;
        return a.rep < b.rep;
    });
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows)
{
    out << kBenchHeader << '\n';
    for (const BenchRow& r : rows)
        out << r.algo << ',' << r.n << ',' << r.m << ',' << r.delta << ',' << r.rep << ',' << r.seed << ','
            << r.wall_ms << ',' << r.colors_used << ',' << (r.validated ? "true" : "false") << '\n';
}

} // namespace vizing
