#pragma once

#include <cstddef>
#include <vector>

#include "vizing/separable.hpp"
#include "vizing/sparsify.hpp"

namespace vizing {

struct ExtendStats {
    std::size_t lambda = 0;
    std::size_t colored = 0;
    /// Deepest recursion level reached; the top call is level 0.
    std::size_t max_depth = 0;
    std::size_t base_cases = 0;
    std::size_t subproblems = 0;
    std::vector<SparsifyResult> sparsify_runs;
};

/// max(ceil(log_eta(mu / (10 eta))), 0).
std::size_t recursion_depth_bound(Color mu, std::size_t eta);

/**
 * Colors uncolored fan edges. With mu <= 10 eta it runs color_small;
 * otherwise it sparsifies the types, splits the graph into one subproblem per
 * color pair, recurses, and writes the results back. The collection is empty
 * afterwards. Returns the number of newly colored edges.
 */
std::size_t extend_coloring(SeparableCollection& fans, std::size_t eta, ExtendStats* stats = nullptr,
                            const SparsifyOptions& options = {});

} // namespace vizing
