#pragma once

// Shared fixtures: random partial colorings carrying separable collections,
// and deep copies of such states for simulate-and-compare oracles.

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "vizing/coloring.hpp"
#include "vizing/graph.hpp"
#include "vizing/separable.hpp"
#include "vizing/sparsify.hpp"

namespace vizing::fuzz {

using Rng = std::mt19937_64;

enum class FanColors {
    /// Fan colors drawn uniformly from the allowed ones.
    Random,
    /// Least used colors first, so every color sits in about as many types.
    Spread,
    /// Every color in at most one type, each fan pairing blocks i and i+2 of
    /// a 20-block split (never social); `social` of them pair i and i+1.
    Disjoint,
};

struct FanStateSpec {
    std::size_t n = 200;
    /// Target average degree of the colored noise edges.
    std::size_t noise_degree = 8;
    std::size_t lambda = 20;
    Color mu = 100;
    FanColors mode = FanColors::Random;
    std::size_t social = 0;
};

struct FanState {
    std::unique_ptr<Graph> graph;
    std::unique_ptr<PartialColoring> chi;
    std::unique_ptr<SeparableCollection> fans;
};

/// Builds uncolored cherries for the fans, then greedily colors random noise
/// edges with colors the fans do not claim. May place fewer fans than asked.
FanState make_fan_state(const FanStateSpec& spec, std::uint64_t seed);

/// mu rounded up so Disjoint mode fits lambda fans with 20 equal blocks.
Color disjoint_mu(std::size_t lambda);

/// Fans found by build_ufans after uncoloring a random share of a classical
/// coloring on a random graph.
FanState make_built_state(std::size_t n, std::size_t degree, double uncolor_share, Color extra_colors,
                          std::uint64_t seed);

struct Clone {
    explicit Clone(const FanState& s) : chi(*s.chi), fans(*s.fans, chi) {}
    PartialColoring chi;
    SeparableCollection fans;
};

/// k-bad fans by definition: social fans, plus each non-social fan whose
/// single-fan modification, run on a copy, changes some social fan's colors.
std::vector<FanId> brute_k_bad(const SeparableCollection& fans, unsigned k, const ColorPartition& part);

/// True when every two paths are edge-disjoint or have the same edge set.
bool disjoint_or_equal(const std::vector<AlternatingPath>& paths);

/// Flips the batch's relevant paths forward and backward on two copies and
/// compares the results.
bool flip_order_independent(const SeparableCollection& fans, std::span<const FanId> batch, unsigned k,
                            const ColorPartition& part);

/// Proper partial coloring of g with colors 1..mu, each edge colored with
/// probability `share` when a free color exists.
std::vector<Color> random_partial_coloring(const Graph& g, Color mu, double share, Rng& rng);

/// Mixed fuzz family used by sweeps: random, regular, path, cycle, clique, star.
Graph fuzz_graph(Rng& rng, std::size_t max_n, std::size_t max_delta, std::size_t max_m);

/// Every color class with both its endpoints, for comparing colorings.
bool same_colors(const PartialColoring& a, const PartialColoring& b);

} // namespace vizing::fuzz
