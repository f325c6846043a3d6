#pragma once

#include <cstdint>
#include <span>

#include "vizing/separable.hpp"

namespace vizing {

/// Either edge count colored or fans built reaches ceil(lambda / kBuildRatio).
inline constexpr std::size_t kBuildRatio = 16;
/// Operation budget per call is kBuildBudgetFactor * (m + max_degree * lambda).
inline constexpr std::uint64_t kBuildBudgetFactor = 64;

struct BuildOutcome {
    enum class Tag { Extended, Built };
    Tag tag = Tag::Extended;
    std::size_t lambda = 0;
    std::size_t extended_count = 0;
    std::size_t fan_count = 0;
    /// Edges left uncolored and outside any fan.
    std::size_t skipped = 0;
    std::uint64_t operations = 0;
    std::uint64_t budget = 0;
};

/**
 * Works through the given uncolored edges: colors an edge directly when its
 * endpoints share a free color, pairs edges at a common center into u-fans
 * (rotating Vizing fans to line up a shared leaf color), and colors the rest
 * by a fan rotation plus one alternating-path flip. New fans go into `fans`.
 */
BuildOutcome build_ufans(SeparableCollection& fans, std::span<const EdgeId> uncolored);

} // namespace vizing
