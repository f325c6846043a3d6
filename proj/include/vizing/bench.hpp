#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "vizing/graph.hpp"

namespace vizing {

struct BenchConfig {
    std::vector<std::size_t> sizes;
    std::size_t degree = 8;
    std::size_t reps = 1;
    /// "fast" and/or "classical".
    std::vector<std::string> algos{"fast", "classical"};
    std::uint64_t seed = 1;
};

struct BenchRow {
    std::string algo;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t delta = 0;
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    double wall_ms = 0;
    std::size_t colors_used = 0;
    bool validated = false;
};

/// Colors g with the named algorithm ("fast" or "classical").
std::vector<Color> run_algorithm(const std::string& algo, const Graph& g);

/// Seed of the instance for (size index, rep).
std::uint64_t bench_seed(const BenchConfig& config, std::size_t size_index, std::size_t rep);

/**
 * Times every algorithm on random regular graphs of each size. Every row is
 * checked before it is kept; a failed check throws InvariantError. Rows come
 * back ordered by (algo, m, rep). on_row, if set, sees each row as produced.
 */
std::vector<BenchRow> run_bench(const BenchConfig& config,
                                const std::function<void(const BenchRow&)>& on_row = {});

inline constexpr const char* kBenchHeader = "algo,n,m,delta,rep,seed,wall_ms,colors_used,validated";

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

} // namespace vizing
