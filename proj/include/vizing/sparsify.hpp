#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vizing/separable.hpp"

namespace vizing {

/**
 * Splits the palette prefix [q] into 2*eta blocks of r = floor(mu / 2 eta)
 * colors; block i holds (i-1)r+1 .. ir and blocks 2k-1, 2k form pair k.
 */
class ColorPartition {
public:
    /// Requires 10 <= eta <= mu / 10.
    ColorPartition(Color mu, std::size_t eta);

    Color mu() const { return mu_; }
    unsigned eta() const { return eta_; }
    Color r() const { return r_; }
    Color q() const { return q_; }
    unsigned blocks() const { return 2 * eta_; }

    /// Block of c in 1..2eta, or 0 when c > q.
    unsigned block_of(Color c) const { return c >= 1 && c <= q_ ? (c - 1) / r_ + 1 : 0; }
    Color index_in_block(Color c) const { return (c - 1) % r_ + 1; }
    Color color_at(unsigned block, Color j) const { return (block - 1) * r_ + j; }
    static unsigned pair_of_block(unsigned block) { return (block + 1) / 2; }
    /// First and last color of pair k.
    std::pair<Color, Color> pair_range(unsigned k) const { return {(2 * k - 2) * r_ + 1, 2 * k * r_}; }

private:
    Color mu_;
    unsigned eta_;
    Color r_;
    Color q_;
};

ColorPartition build_partition(Color mu, std::size_t eta);

enum class FanKind { Uniform, Aligned, NonSocial, OutOfRange };

struct FanClass {
    FanKind kind = FanKind::OutOfRange;
    /// Blocks of the two type colors, lo <= hi.
    unsigned lo = 0;
    unsigned hi = 0;
    /// Pair holding a social fan's type.
    unsigned pair = 0;
    bool social() const { return kind == FanKind::Uniform || kind == FanKind::Aligned; }
};

/// Classifies by the center color and the v-leaf color.
FanClass classify_fan(const UFan& f, const ColorPartition& part);

struct RelabelPlan {
    /// permutation[c] is the new label of old color c (index 0 unused).
    std::vector<Color> permutation;
    /// frequency[c]: fans whose type contains old color c.
    std::vector<std::size_t> frequency;
};

/// Relabels colors by decreasing type frequency (ties by color) in the
/// coloring and in every fan.
RelabelPlan relabel_colors(SeparableCollection& fans);

/**
 * For a non-social fan with type blocks lo < hi and pair k, block lo moves to
 * 2k-1 and block hi to 2k, swapped when lo == 2k or hi == 2k-1. Returns the
 * (own, target) colors of the path that starts at x, or nullopt when the
 * color at x already sits in its target block.
 */
std::optional<std::pair<Color, Color>> relevant_type(const UFan& f, Vertex x, unsigned k,
                                                     const ColorPartition& part);

/// The distinct k-relevant paths of one non-social fan.
std::vector<AlternatingPath> compute_paths(const SeparableCollection& fans, FanId id, unsigned k,
                                           const ColorPartition& part);

/// Union of compute_paths over a batch, one copy per distinct path.
std::vector<AlternatingPath> relevant_paths(const SeparableCollection& fans, std::span<const FanId> batch,
                                            unsigned k, const ColorPartition& part);

/// Social fans plus non-social fans whose single-fan modification would
/// change the colors of some social fan. Sorted ascending.
std::vector<FanId> find_k_bad(const SeparableCollection& fans, unsigned k, const ColorPartition& part);

struct ModifyResult {
    std::vector<AlternatingPath> paths;
    /// Fans outside the batch whose colors changed.
    std::vector<FanTouch> touched;
};

/// Flips every k-relevant path of the batch. The batch must be one
/// non-social block class and is expected to avoid find_k_bad(k).
ModifyResult modify_types(SeparableCollection& fans, std::span<const FanId> batch, unsigned k,
                          const ColorPartition& part);

struct SparsifyIteration {
    unsigned k = 0;
    unsigned i = 0;
    unsigned i2 = 0;
    std::size_t batch = 0;
    std::size_t fans_before = 0;
    std::size_t social_before = 0;
    std::size_t social_in_k = 0;
    std::size_t bad = 0;
    std::size_t fans_after = 0;
    std::size_t social_after = 0;
};

struct SparsifyResult {
    ColorPartition partition;
    RelabelPlan plan;
    std::size_t lambda = 0;
    std::size_t after_filter = 0;
    std::vector<SparsifyIteration> iterations;
};

struct SparsifyOptions {
    /// One line per iteration when set.
    std::ostream* trace = nullptr;
    /// Called with each batch right before it is modified.
    std::function<void(const SeparableCollection&, std::span<const FanId>, unsigned, const ColorPartition&)>
        before_modify;
};

/// Leaves only social fans, at least ceil(lambda / 100) of them, without
/// changing which edges are colored.
SparsifyResult sparsify_types(SeparableCollection& fans, std::size_t eta, const SparsifyOptions& options = {});

void write_iteration(std::ostream& out, const SparsifyIteration& it);

} // namespace vizing
