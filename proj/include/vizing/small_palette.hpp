#pragma once

#include <cstddef>

#include "vizing/separable.hpp"

namespace vizing {

struct SmallStats {
    std::size_t lambda = 0;
    std::size_t colored = 0;
    std::size_t iterations = 0;
    /// Most fans outside the active one whose colors changed in one activation.
    std::size_t max_other_changes = 0;
    /// Fans still in the collection when the loop stopped.
    std::size_t residual_after_loop = 0;
};

/// Repeatedly activates every fan of the most common type, dropping fans whose
/// colors changed along the way. Runs at most mu^2 rounds; the collection is
/// empty afterwards.
SmallStats color_small(SeparableCollection& fans);

} // namespace vizing
