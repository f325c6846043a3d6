#include "vizing/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "vizing/baseline.hpp"
#include "vizing/extend.hpp"
#include "vizing/ufan_build.hpp"

namespace vizing {

std::size_t repair_eta(std::size_t delta)
{
    double s = delta <= 1 ? 0.0 : std::sqrt(std::log2(static_cast<double>(delta)));
    return 10 * static_cast<std::size_t>(std::ceil(std::exp2(s)));
}

std::uint64_t repair_round_cap(std::size_t delta, std::size_t lambda0)
{
    double s = delta <= 1 ? 0.0 : std::sqrt(std::log2(static_cast<double>(delta)));
    double lg = std::ceil(std::log2(static_cast<double>(lambda0) + 2.0));
    double cap = static_cast<double>(kBuildRatio) * std::pow(100.0, s) * lg * kRepairSafetyFactor;
    if (cap >= 1e18) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::ceil(cap));
}

std::vector<Color> repair_to_delta_plus_one(const Graph& g, std::span<const Color> colors,
                                            const DriverOptions& options, DriverStats* stats)
{
    if (colors.size() != g.m()) throw PreconditionError("coloring size does not match the graph");
    const std::size_t delta = g.max_degree();
    const Color target = static_cast<Color>(delta + 1);
    const Color slots = static_cast<Color>(delta + 3);
    std::vector<std::size_t> count(slots + 1, 0);
    for (Color c : colors) {
        if (c == kNoColor) throw PreconditionError("repair needs a total coloring");
        if (c > slots) throw PreconditionError("repair needs at most delta+3 colors");
        ++count[c];
    }

    // Two smallest classes; on ties drop the higher color so a coloring that
    // already fits in delta+1 colors is left alone.
    std::vector<Color> order(slots);
    std::iota(order.begin(), order.end(), Color{1});
    std::stable_sort(order.begin(), order.end(), [&](Color a, Color b) {
        return count[a] != count[b] ? count[a] < count[b] : a > b;
    });
    std::vector<Color> remap(slots + 1, kNoColor);
    Color next = 1;
    for (Color c = 1; c <= slots; ++c)
        if (c != order[0] && c != order[1]) remap[c] = next++;

    std::vector<Color> packed(g.m());
    for (EdgeId e = 0; e < g.m(); ++e) packed[e] = remap[colors[e]];

    PartialColoring chi(g, target, packed);
    RepairRecord rec{g.m(), delta, chi.uncolored_count(), 0, repair_eta(delta)};
    const std::uint64_t cap = repair_round_cap(delta, rec.uncolored);
    while (chi.uncolored_count() > 0) {
        if (++rec.rounds > cap) throw InvariantError("repair loop exceeded its round cap");
        std::size_t before = chi.uncolored_count();
        SeparableCollection fans(chi);
        std::vector<EdgeId> open = chi.uncolored_edges();
        BuildOutcome built = build_ufans(fans, open);
        std::size_t small = 0;
        if (!fans.empty()) {
            SparsifyOptions sparse_options;
            sparse_options.trace = options.trace;
            small = extend_coloring(fans, rec.eta, nullptr, sparse_options);
        }
        if (stats) {
            ++stats->build_calls;
            stats->built_fans += built.fan_count;
            stats->extended_edges += built.extended_count;
            stats->small_colored += small;
        }
        if (options.trace)
            *options.trace << "repair m=" << g.m() << " delta=" << delta << " round=" << rec.rounds
                           << " uncolored=" << before << " extended=" << built.extended_count
                           << " fans=" << built.fan_count << " colored_by_fans=" << small << '\n';
        if (chi.uncolored_count() >= before) throw InvariantError("repair round made no progress");
    }
    if (stats) stats->repairs.push_back(rec);
    return chi.colors();
}

PartialColoring repair_to_delta_plus_one(const Graph& g, const PartialColoring& chi)
{
    return PartialColoring(g, static_cast<Color>(g.max_degree() + 1), repair_to_delta_plus_one(g, chi.colors()));
}

namespace {

/// Relabels the used colors to 1..k keeping their order; returns k.
Color compact_colors(std::vector<Color>& colors)
{
    Color top = 0;
    for (Color c : colors) top = std::max(top, c);
    std::vector<Color> remap(top + 1, kNoColor);
    for (Color c : colors) remap[c] = 1;
    Color next = 0;
    for (Color c = 1; c <= top; ++c)
        if (remap[c]) remap[c] = ++next;
    for (Color& c : colors) c = remap[c];
    return next;
}

std::vector<Color> color_recursive(const Graph& g, std::size_t level, const DriverOptions& options,
                                   DriverStats* stats)
{
    if (stats) stats->max_depth = std::max(stats->max_depth, level);
    if (g.max_degree() <= options.base_degree) {
        if (stats) ++stats->base_calls;
        return classical_color_edges(g);
    }
    std::vector<Color> merged(g.m(), kNoColor);
    {
        auto [g1, g2] = euler_partition(g);
        std::vector<Color> first = color_recursive(g1, level + 1, options, stats);
        std::vector<Color> second = color_recursive(g2, level + 1, options, stats);
        Color used = compact_colors(first);
        compact_colors(second);
        for (EdgeId e = 0; e < g1.m(); ++e) merged[g1.edge_origin(e)] = first[e];
        for (EdgeId e = 0; e < g2.m(); ++e) merged[g2.edge_origin(e)] = second[e] + used;
    }
    return repair_to_delta_plus_one(g, merged, options, stats);
}

} // namespace

std::vector<Color> vizing_color_edges(const Graph& g, const DriverOptions& options, DriverStats* stats)
{
    return color_recursive(g, 0, options, stats);
}

PartialColoring vizing_color(const Graph& g, const DriverOptions& options, DriverStats* stats)
{
    return PartialColoring(g, static_cast<Color>(g.max_degree() + 1), vizing_color_edges(g, options, stats));
}

} // namespace vizing
