#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vizing/coloring.hpp"

namespace vizing {

struct UFan {
    Vertex center = 0;
    Vertex leaf_v = 0;
    Vertex leaf_w = 0;
    Color c_center = kNoColor;
    Color c_v = kNoColor;
    Color c_w = kNoColor;

    bool damaged() const { return c_center == c_v || c_v != c_w; }
    /// Normalized (min, max) color pair; meaningful for undamaged fans.
    std::pair<Color, Color> type() const { return std::minmax(c_center, c_v); }
    /// Color assigned at x, or kNoColor when x is not in the fan.
    Color color_at(Vertex x) const
    {
        if (x == center) return c_center;
        if (x == leaf_v) return c_v;
        if (x == leaf_w) return c_w;
        return kNoColor;
    }
    friend bool operator==(const UFan&, const UFan&) = default;
};

/// A fan whose assigned colors changed during a flip.
struct FanTouch {
    FanId id;
    bool damaged;
};

struct Activation {
    EdgeId colored;
    std::vector<FanTouch> touched;
};

struct SeparableReport {
    std::vector<std::string> violations;
    std::size_t damaged = 0;
    bool ok() const { return violations.empty(); }
};

/**
 * Separable collection of u-fans over a PartialColoring. Per vertex it keeps
 * the assigned colors (color -> fan) and the free set: missing colors in the
 * truncated range that no fan claims. It observes the coloring so the free
 * sets track every palette change, and it records fans whose assigned color
 * became present at its vertex.
 */
class SeparableCollection final : public PaletteObserver {
public:
    explicit SeparableCollection(PartialColoring& coloring);
    /// Copies `other` onto `coloring`, which must be a copy of other's coloring.
    SeparableCollection(const SeparableCollection& other, PartialColoring& coloring);
    SeparableCollection(const SeparableCollection&) = delete;
    SeparableCollection& operator=(const SeparableCollection&) = delete;
    ~SeparableCollection() override;

    PartialColoring& coloring() { return *coloring_; }
    const PartialColoring& coloring() const { return *coloring_; }
    const Graph& graph() const { return coloring_->graph(); }

    /// nullopt when separability would break. Throws InvariantError when the
    /// fan itself is malformed against the current coloring.
    std::optional<FanId> insert(const UFan& f);
    bool erase(const UFan& f);
    bool erase(FanId id);
    void clear();

    std::optional<FanId> find(Vertex x, Color c) const;
    /// Identity lookup by center and unordered leaves.
    std::optional<FanId> locate(const UFan& f) const;
    /// Smallest missing color at x that no fan claims.
    Color missing_color(Vertex x) const;
    bool is_free(Vertex x, Color c) const;
    const detail::BitRows& free_colors() const { return free_; }

    bool contains(FanId id) const { return id < fans_.size() && alive_[id]; }
    const UFan& fan(FanId id) const { return fans_[id]; }
    std::pair<EdgeId, EdgeId> fan_edges(FanId id) const { return edges_[id]; }
    FanId fan_of_edge(EdgeId e) const { return edge_fan_[e]; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::size_t capacity() const { return fans_.size(); }
    std::vector<FanId> ids() const;

    /// Flips a maximal path and swaps the assigned colors of fans sitting at
    /// its endpoints, so every fan stays valid.
    std::vector<FanTouch> flip_path(const AlternatingPath& path);

    /// Colors one of the fan's edges; requires an undamaged fan.
    Activation activate(FanId id);

    /// Fans whose assigned color became present since the last call.
    std::vector<FanId> take_invalidated();

    /// Relabels colors in the coloring and in every fan.
    void permute_colors(std::span<const Color> perm);

    SeparableReport validate() const;
    std::size_t stored_entries() const { return assigned_.total() + free_.words() + size_; }
    std::uint64_t op_count() const { return ops_; }

    void on_palette_change(Vertex x, Color c, bool now_missing) override;

private:
    void assign(FanId id, Vertex x, Color c);
    void unassign(Vertex x, Color c);
    void recolor_at(FanId id, Vertex x, Color c);
    void rebuild_free();
    FanId allocate(const UFan& f, EdgeId a, EdgeId b);

    PartialColoring* coloring_;
    std::vector<UFan> fans_;
    std::vector<std::pair<EdgeId, EdgeId>> edges_;
    std::vector<char> alive_;
    std::vector<FanId> free_ids_;
    std::vector<FanId> edge_fan_;
    detail::SortedRows<Color, FanId> assigned_;
    detail::BitRows free_;
    std::vector<FanId> invalidated_;
    std::size_t size_ = 0;
    mutable std::uint64_t ops_ = 0;
};

/// Collection-free flip; identical to PartialColoring::flip.
std::vector<FanTouch> flip_path(PartialColoring& chi, const AlternatingPath& path);
std::vector<FanTouch> flip_path(SeparableCollection& fans, const AlternatingPath& path);

/// Debug dump, one "u v w c_u c_v c_w" line per fan (vertex labels).
void write_fans(std::ostream& out, const SeparableCollection& fans);

} // namespace vizing
