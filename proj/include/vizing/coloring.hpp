#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vizing/detail/flat_rows.hpp"
#include "vizing/graph.hpp"

namespace vizing {

/// Maximal alternating path: edges[i] has color alpha for even i along the walk
/// from start when first_color == alpha. An empty path has start == end.
struct AlternatingPath {
    Color alpha = kNoColor;
    Color beta = kNoColor;
    Vertex start = 0;
    Vertex end = 0;
    std::vector<EdgeId> edges;

    std::size_t length() const { return edges.size(); }
    bool empty() const { return edges.empty(); }
    std::span<const EdgeId> prefix(std::size_t i) const { return std::span(edges).first(i); }
    bool has_color(Color c) const { return c == alpha || c == beta; }
    Color other(Color c) const { return c == alpha ? beta : alpha; }
};

/// Receives net changes of a vertex palette: now_missing is true when c just
/// left the set of colors present at x.
class PaletteObserver {
public:
    virtual ~PaletteObserver() = default;
    virtual void on_palette_change(Vertex x, Color c, bool now_missing) = 0;
};

struct ColoringReport {
    std::vector<std::string> violations;
    std::size_t uncolored = 0;
    bool ok() const { return violations.empty(); }
};

/**
 * Partial edge coloring with colors 1..mu. Keeps, per vertex, a sorted
 * color -> edge table and a bitset of the missing colors among 1..deg+1
 * (capped at mu). Missing colors above that range are answered by lookup.
 */
class PartialColoring {
public:
    PartialColoring(const Graph& g, Color mu, std::span<const Color> initial = {});
    PartialColoring(const PartialColoring& other);
    PartialColoring& operator=(const PartialColoring&) = delete;
    ~PartialColoring() = default;

    const Graph& graph() const { return *graph_; }
    Color mu() const { return mu_; }

    Color color(EdgeId e) const { return color_of_[e]; }
    const std::vector<Color>& colors() const { return color_of_; }
    bool is_colored(EdgeId e) const { return color_of_[e] != kNoColor; }
    std::size_t uncolored_count() const { return uncolored_; }
    std::vector<EdgeId> uncolored_edges() const;
    std::size_t colors_used() const;

    bool is_missing(Vertex x, Color c) const;
    EdgeId edge_with(Vertex x, Color c) const;

    /// Colors 1..truncation(x) are tracked in the missing-color bitset.
    Color truncation(Vertex x) const { return missing_.width(x); }
    const detail::BitRows& truncated_missing() const { return missing_; }

    void set_color(EdgeId e, Color c);
    void uncolor(EdgeId e) { set_color(e, kNoColor); }

    /// Requires a or b to be missing at x.
    AlternatingPath walk(Vertex x, Color a, Color b) const;

    /// Swaps the two colors along a maximal path. Throws on a stale or
    /// non-maximal path.
    void flip(const AlternatingPath& path);
    /// Throws PreconditionError unless `path` is a maximal path of the live coloring.
    void verify_path(const AlternatingPath& path) const;

    /// Relabels every color c as perm[c]; perm is a permutation of 1..mu
    /// (perm[0] ignored). The observer is not notified.
    void permute_colors(std::span<const Color> perm);

    void attach(PaletteObserver* observer);
    void detach(PaletteObserver* observer);

    std::uint64_t op_count() const { return ops_; }
    void reset_op_count() { ops_ = 0; }

    ColoringReport validate() const;

    /// Fault injection for tests: overwrite the table entry for (x, c).
    void corrupt_lookup_for_testing(Vertex x, Color c, EdgeId e);

private:
    void rebuild(std::span<const Color> initial);
    void lose(Vertex x, Color c, EdgeId e);
    void gain(Vertex x, Color c);
    void notify(Vertex x, Color c, bool now_missing);

    const Graph* graph_;
    Color mu_;
    std::vector<Color> color_of_;
    detail::SortedRows<Color, EdgeId> by_color_;
    detail::BitRows missing_;
    std::size_t uncolored_ = 0;
    PaletteObserver* observer_ = nullptr;
    mutable std::uint64_t ops_ = 0;
};

/// Full consistency and properness check of the maintained structures.
ColoringReport validate_coloring(const Graph& g, const PartialColoring& chi);

/// Dump format: "edge_id color" per line, "-" for uncolored.
void write_coloring(std::ostream& out, std::span<const Color> colors);
std::vector<Color> read_coloring(std::istream& in, std::size_t m);

} // namespace vizing
