#include "vizing/extend.hpp"

#include <algorithm>

#include "vizing/small_palette.hpp"

namespace vizing {

std::size_t recursion_depth_bound(Color mu, std::size_t eta)
{
    if (eta < 2) throw PreconditionError("eta must be at least 2");
    // Smallest d with 10 eta^(d+1) >= mu, computed without floating point.
    std::size_t depth = 0;
    unsigned long long reach = 10ULL * eta;
    while (reach < mu) {
        reach *= eta;
        ++depth;
    }
    return depth;
}

namespace {

std::size_t extend_at(SeparableCollection& fans, std::size_t eta, std::size_t level, ExtendStats* stats,
                      const SparsifyOptions& options)
{
    if (stats) stats->max_depth = std::max(stats->max_depth, level);
    if (fans.empty()) return 0;
    PartialColoring& chi = fans.coloring();
    const Graph& g = chi.graph();
    if (chi.mu() <= 10 * eta) {
        if (stats) ++stats->base_cases;
        return color_small(fans).colored;
    }

    SparsifyResult sparse = sparsify_types(fans, eta, options);
    const ColorPartition& part = sparse.partition;

    // Group edges by the pair owning their color or their fan's type.
    std::vector<std::vector<EdgeId>> edges(part.eta() + 1);
    for (EdgeId e = 0; e < g.m(); ++e) {
        unsigned b = part.block_of(chi.color(e));
        if (b != 0) edges[ColorPartition::pair_of_block(b)].push_back(e);
    }
    std::vector<std::vector<UFan>> groups(part.eta() + 1);
    for (FanId id : fans.ids()) {
        const UFan& f = fans.fan(id);
        FanClass cls = classify_fan(f, part);
        if (!cls.social()) throw InvariantError("non-social fan left after sparsify");
        groups[cls.pair].push_back(f);
        auto [a, b] = fans.fan_edges(id);
        edges[cls.pair].push_back(a);
        edges[cls.pair].push_back(b);
    }
    if (stats) stats->sparsify_runs.push_back(sparse);
    fans.clear();

    std::size_t colored = 0;
    std::vector<Vertex> local(g.n(), 0);
    for (unsigned k = 1; k <= part.eta(); ++k) {
        if (groups[k].empty()) continue;
        if (stats) ++stats->subproblems;
        std::sort(edges[k].begin(), edges[k].end());
        Graph sub = Graph::from_edges(g, edges[k], true);
        for (Vertex x = 0; x < sub.n(); ++x) local[sub.vertex_origin(x)] = x;

        const Color offset = part.pair_range(k).first - 1;
        std::vector<Color> initial(sub.m(), kNoColor);
        for (EdgeId e = 0; e < sub.m(); ++e) {
            Color c = chi.color(sub.edge_origin(e));
            if (c != kNoColor) initial[e] = c - offset;
        }
        PartialColoring sub_chi(sub, 2 * part.r(), initial);
        std::size_t sub_colored = 0;
        {
            SeparableCollection sub_fans(sub_chi);
            for (const UFan& f : groups[k]) {
                UFan mapped{local[f.center], local[f.leaf_v], local[f.leaf_w],
                            f.c_center - offset, f.c_v - offset, f.c_w - offset};
                if (!sub_fans.insert(mapped)) throw InvariantError("subproblem fan is not separable");
            }
            sub_colored = extend_at(sub_fans, eta, level + 1, stats, options);
        }

        std::vector<std::pair<EdgeId, Color>> changed;
        for (EdgeId e = 0; e < sub.m(); ++e) {
            Color now = sub_chi.color(e) == kNoColor ? kNoColor : sub_chi.color(e) + offset;
            if (now != chi.color(sub.edge_origin(e))) changed.push_back({sub.edge_origin(e), now});
        }
        for (const auto& [e, c] : changed)
            if (chi.is_colored(e)) chi.uncolor(e);
        for (const auto& [e, c] : changed)
            if (c != kNoColor) chi.set_color(e, c);
        colored += sub_colored;
    }
    return colored;
}

} // namespace

std::size_t extend_coloring(SeparableCollection& fans, std::size_t eta, ExtendStats* stats,
                            const SparsifyOptions& options)
{
    if (eta < 10) throw PreconditionError("eta must be at least 10");
    const std::size_t before = fans.coloring().uncolored_count();
    if (stats) stats->lambda = fans.size();
    std::size_t colored = extend_at(fans, eta, 0, stats, options);
    if (before - fans.coloring().uncolored_count() != colored)
        throw InvariantError("extend_coloring count disagrees with the coloring");
    if (stats) stats->colored = colored;
    return colored;
}

} // namespace vizing
