#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vizing/coloring.hpp"

namespace vizing {

/// Graphs with max degree at most this are colored by classical_color.
inline constexpr std::size_t kBaseDegree = 16;
/// Safety factor on the repair loop's iteration cap.
inline constexpr std::uint64_t kRepairSafetyFactor = 64;

struct DriverOptions {
    std::size_t base_degree = kBaseDegree;
    /// One line per repair round when set.
    std::ostream* trace = nullptr;
};

struct RepairRecord {
    std::size_t m = 0;
    std::size_t delta = 0;
    /// Edges uncolored by dropping the two smallest classes.
    std::size_t uncolored = 0;
    std::size_t rounds = 0;
    std::size_t eta = 0;
};

struct DriverStats {
    std::size_t max_depth = 0;
    std::size_t base_calls = 0;
    std::size_t build_calls = 0;
    std::size_t built_fans = 0;
    std::size_t extended_edges = 0;
    std::size_t small_colored = 0;
    std::vector<RepairRecord> repairs;
};

/// 10 * ceil(2^sqrt(log2 delta)).
std::size_t repair_eta(std::size_t delta);
/// c1 * 100^sqrt(log2 delta) * ceil(log2(lambda0 + 2)) * K, saturating.
std::uint64_t repair_round_cap(std::size_t delta, std::size_t lambda0);

/**
 * Turns a proper total coloring with at most delta+3 colors into one with at
 * most delta+1: drops the two smallest color classes, packs the rest into
 * 1..delta+1 and colors the dropped edges again through fan building and
 * extend_coloring.
 */
std::vector<Color> repair_to_delta_plus_one(const Graph& g, std::span<const Color> colors,
                                            const DriverOptions& options = {}, DriverStats* stats = nullptr);
PartialColoring repair_to_delta_plus_one(const Graph& g, const PartialColoring& chi);

/// Proper total coloring of g with at most max_degree + 1 colors.
PartialColoring vizing_color(const Graph& g, const DriverOptions& options = {}, DriverStats* stats = nullptr);
std::vector<Color> vizing_color_edges(const Graph& g, const DriverOptions& options = {},
                                      DriverStats* stats = nullptr);

} // namespace vizing
