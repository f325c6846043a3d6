#pragma once

// Reference colorers and checkers. Nothing here uses PartialColoring or the
// fan machinery, so they can vouch for the main pipeline.

#include <span>
#include <string>
#include <vector>

#include "vizing/graph.hpp"

namespace vizing {

class PartialColoring;

/// Misra-Gries edge coloring with colors 1..max_degree+1.
std::vector<Color> classical_color_edges(const Graph& g);
PartialColoring classical_color(const Graph& g);

/// Exact chromatic index by exhaustive search; m <= 16.
unsigned brute_min_edge_colors(const Graph& g);
inline constexpr std::size_t kBruteForceEdgeLimit = 16;

struct CheckReport {
    bool proper = true;
    bool total = true;
    bool within_limit = true;
    Color max_color = kNoColor;
    std::size_t colors_used = 0;
    std::vector<std::string> violations;
    bool ok() const { return proper && total && within_limit; }
};

/// Independent validator: properness, totality and max color <= max_colors
/// (0 means no limit). Violations name vertices by label.
CheckReport check_coloring(const Graph& g, std::span<const Color> colors, Color max_colors = 0);

} // namespace vizing
