#include "vizing/ufan_build.hpp"

#include <algorithm>
#include <unordered_map>

namespace vizing {

namespace {

struct FanWalk {
    std::vector<Vertex> leaves;
    std::vector<EdgeId> spokes;
    std::vector<Color> free;
    /// Index whose free color is also free at the center, if any.
    std::size_t closes = SIZE_MAX;
};

class Builder {
public:
    Builder(SeparableCollection& fans)
        : U_(fans), chi_(fans.coloring()), g_(chi_.graph()), pending_(g_.m(), 0), mark_(g_.n(), 0)
    {
    }

    BuildOutcome run(std::span<const EdgeId> edges);

private:
    enum class PairResult { Fan, ColoredFirst, ColoredSecond, Failed };

    std::uint64_t spent() const { return chi_.op_count() + U_.op_count() - ops_start_; }

    void requeue(EdgeId e)
    {
        if (chi_.is_colored(e) || U_.fan_of_edge(e) != kNoFan) return;
        pending_[e] = 1;
        queue_.push_back(e);
    }

    void commit(EdgeId e, Color c)
    {
        chi_.set_color(e, c);
        for (FanId id : U_.take_invalidated()) {
            if (!U_.contains(id)) continue;
            auto [a, b] = U_.fan_edges(id);
            U_.erase(id);
            requeue(a);
            requeue(b);
        }
    }

    // Flips and drops any fan whose leaf colors no longer agree.
    void flip(const AlternatingPath& p)
    {
        for (const FanTouch& t : U_.flip_path(p)) {
            if (!t.damaged || !U_.contains(t.id)) continue;
            auto [a, b] = U_.fan_edges(t.id);
            U_.erase(t.id);
            requeue(a);
            requeue(b);
        }
    }

    void paint(EdgeId e, Color c)
    {
        commit(e, c);
        pending_[e] = 0;
        ++extended_;
    }

    Color common_free(Vertex a, Vertex b) const
    {
        const auto& free = U_.free_colors();
        for (Color c = free.first(a); c != kNoColor; c = free.next(a, c + 1))
            if (U_.is_free(b, c)) return c;
        for (Color c = free.first(b); c != kNoColor; c = free.next(b, c + 1))
            if (U_.is_free(a, c)) return c;
        return kNoColor;
    }

    /// Free color at u other than `avoid`.
    Color center_color(Vertex u, Color avoid) const
    {
        const auto& free = U_.free_colors();
        Color c = free.first(u);
        if (c == avoid) c = free.next(u, c + 1);
        return c;
    }

    // Recolors spoke t with free[t] for t < a and leaves spoke a uncolored.
    void rotate(const FanWalk& fw, std::size_t a)
    {
        if (a == 0) return;
        commit(fw.spokes[a], kNoColor);
        for (std::size_t t = a; t-- > 0;) commit(fw.spokes[t], fw.free[t]);
    }

    FanWalk grow(Vertex u, Vertex leaf, EdgeId spoke, std::uint32_t own, std::size_t limit);
    PairResult try_pair(Vertex u, EdgeId e1, EdgeId e2);
    void extend(EdgeId e);

    SeparableCollection& U_;
    PartialColoring& chi_;
    const Graph& g_;
    std::vector<char> pending_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
    std::vector<EdgeId> queue_;
    std::size_t extended_ = 0;
    std::uint64_t ops_start_ = 0;
};

// Vizing fan around u from `leaf`, each leaf contributing its smallest free
// color. Vertices stamped at or above `own` are off limits.
FanWalk Builder::grow(Vertex u, Vertex leaf, EdgeId spoke, std::uint32_t own, std::size_t limit)
{
    FanWalk fw;
    fw.leaves.push_back(leaf);
    fw.spokes.push_back(spoke);
    mark_[leaf] = own;
    while (fw.leaves.size() <= limit) {
        Color b = U_.missing_color(fw.leaves.back());
        fw.free.push_back(b);
        if (U_.is_free(u, b)) {
            fw.closes = fw.free.size() - 1;
            break;
        }
        EdgeId via = chi_.edge_with(u, b);
        if (via == kNoEdge) break;
        Vertex next = g_.other(via, u);
        if (mark_[next] >= stamp_) break;
        mark_[next] = own;
        fw.leaves.push_back(next);
        fw.spokes.push_back(via);
    }
    fw.leaves.resize(fw.free.size());
    fw.spokes.resize(fw.free.size());
    return fw;
}

Builder::PairResult Builder::try_pair(Vertex u, EdgeId e1, EdgeId e2)
{
    const Vertex v = g_.other(e1, u);
    const Vertex w = g_.other(e2, u);
    if (Color c = common_free(u, v)) {
        paint(e1, c);
        return PairResult::ColoredFirst;
    }
    if (Color c = common_free(u, w)) {
        paint(e2, c);
        return PairResult::ColoredSecond;
    }

    // Leaves already share a free color.
    const auto& free = U_.free_colors();
    std::size_t scanned = 0;
    for (Color b = free.first(v); b != kNoColor && scanned < 64; b = free.next(v, b + 1), ++scanned) {
        if (!U_.is_free(w, b)) continue;
        Color a = center_color(u, b);
        if (a == kNoColor) break;
        if (U_.insert({u, v, w, a, b, b})) {
            pending_[e1] = pending_[e2] = 0;
            return PairResult::Fan;
        }
    }

    // Rotate one or both Vizing fans so two leaves line up on a shared color.
    stamp_ += 3;
    mark_[u] = stamp_ + 2;
    mark_[w] = stamp_ + 1;
    const std::size_t limit = g_.degree(u);
    FanWalk fv = grow(u, v, e1, stamp_, limit);
    mark_[w] = 0;
    FanWalk fw = grow(u, w, e2, stamp_ + 1, limit);

    constexpr std::size_t kPerLeaf = 4;
    std::unordered_map<Color, std::size_t> from_w;
    for (std::size_t b = 0; b < fw.leaves.size(); ++b) {
        std::size_t taken = 0;
        for (Color c = free.first(fw.leaves[b]); c != kNoColor && taken < kPerLeaf;
             c = free.next(fw.leaves[b], c + 1), ++taken)
            from_w.emplace(c, b);
    }
    for (std::size_t a = 0; a < fv.leaves.size(); ++a) {
        std::size_t taken = 0;
        for (Color c = free.first(fv.leaves[a]); c != kNoColor && taken < kPerLeaf;
             c = free.next(fv.leaves[a], c + 1), ++taken) {
            auto hit = from_w.find(c);
            if (hit == from_w.end()) continue;
            Color center = center_color(u, c);
            if (center == kNoColor) continue;
            std::size_t b = hit->second;
            rotate(fv, a);
            rotate(fw, b);
            pending_[e1] = pending_[e2] = 0;
            UFan fan{u, fv.leaves[a], fw.leaves[b], center, c, c};
            if (!U_.insert(fan)) throw InvariantError("rotated u-fan rejected by the collection");
            return PairResult::Fan;
        }
    }
    if (fv.closes != SIZE_MAX) {
        rotate(fv, fv.closes);
        pending_[e1] = 0;
        paint(fv.spokes[fv.closes], fv.free[fv.closes]);
        return PairResult::ColoredFirst;
    }
    if (fw.closes != SIZE_MAX) {
        rotate(fw, fw.closes);
        pending_[e2] = 0;
        paint(fw.spokes[fw.closes], fw.free[fw.closes]);
        return PairResult::ColoredSecond;
    }
    return PairResult::Failed;
}

// Vizing's argument: rotate a fan, flipping at most one alternating path.
void Builder::extend(EdgeId e)
{
    const Vertex x = g_.endpoints(e).u;
    const Vertex f = g_.endpoints(e).v;
    if (Color c = common_free(x, f)) {
        paint(e, c);
        return;
    }
    const Color alpha = U_.missing_color(x);
    stamp_ += 3;
    FanWalk fw;
    fw.leaves.push_back(f);
    fw.spokes.push_back(e);
    auto& mark = mark_;
    mark[f] = stamp_;
    std::unordered_map<Vertex, std::size_t> index{{f, 0}};
    while (true) {
        Vertex last = fw.leaves.back();
        Color b = U_.missing_color(last);
        fw.free.push_back(b);
        std::size_t t = fw.free.size() - 1;
        EdgeId via = chi_.edge_with(x, b);
        if (via == kNoEdge) {
            rotate(fw, t);
            pending_[e] = 0;
            paint(fw.spokes[t], b);
            return;
        }
        Vertex next = g_.other(via, x);
        if (mark[next] == stamp_) {
            std::size_t j = index.at(next) - 1;
            AlternatingPath p = chi_.walk(fw.leaves[t], alpha, b);
            std::size_t target;
            if (!p.empty() && p.end == x) {
                flip(chi_.walk(fw.leaves[j], alpha, b));
                target = j;
            } else {
                flip(p);
                target = (!p.empty() && p.end == fw.leaves[j]) ? j : t;
            }
            rotate(fw, target);
            pending_[e] = 0;
            paint(fw.spokes[target], alpha);
            return;
        }
        mark[next] = stamp_;
        index.emplace(next, fw.leaves.size());
        fw.leaves.push_back(next);
        fw.spokes.push_back(via);
    }
}

BuildOutcome Builder::run(std::span<const EdgeId> edges)
{
    ops_start_ = chi_.op_count() + U_.op_count();
    BuildOutcome out;
    out.lambda = edges.size();
    out.budget = kBuildBudgetFactor * (g_.m() + g_.max_degree() * edges.size());
    for (EdgeId e : edges) {
        if (chi_.is_colored(e)) throw PreconditionError("edge handed to build_ufans is colored");
        if (U_.fan_of_edge(e) != kNoFan) throw PreconditionError("edge already belongs to a u-fan");
        pending_[e] = 1;
    }

    for (EdgeId e : edges) {
        if (!pending_[e]) continue;
        const Edge& ed = g_.endpoints(e);
        if (Color c = common_free(ed.u, ed.v)) paint(e, c);
    }

    std::vector<std::pair<Vertex, EdgeId>> by_center;
    for (EdgeId e : edges) {
        if (!pending_[e]) continue;
        by_center.push_back({g_.endpoints(e).u, e});
        by_center.push_back({g_.endpoints(e).v, e});
    }
    std::sort(by_center.begin(), by_center.end());
    for (std::size_t i = 0; i < by_center.size();) {
        Vertex u = by_center[i].first;
        EdgeId open = kNoEdge;
        for (; i < by_center.size() && by_center[i].first == u; ++i) {
            EdgeId e = by_center[i].second;
            if (!pending_[e]) continue;
            if (spent() > out.budget / 2) break;
            if (open == kNoEdge || !pending_[open]) {
                open = e;
                continue;
            }
            switch (try_pair(u, open, e)) {
            case PairResult::Fan: open = kNoEdge; break;
            case PairResult::ColoredFirst: open = e; break;
            case PairResult::ColoredSecond: break;
            case PairResult::Failed: open = e; break;
            }
        }
        while (i < by_center.size() && by_center[i].first == u) ++i;
    }

    for (EdgeId e : edges)
        if (pending_[e]) queue_.push_back(e);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
        EdgeId e = queue_[qi];
        if (!pending_[e] || chi_.is_colored(e) || U_.fan_of_edge(e) != kNoFan) continue;
        if (spent() >= out.budget) break;
        extend(e);
    }

    out.extended_count = extended_;
    out.fan_count = U_.size();
    for (EdgeId e = 0; e < pending_.size(); ++e)
        if (pending_[e] && !chi_.is_colored(e) && U_.fan_of_edge(e) == kNoFan) ++out.skipped;
    out.operations = spent();
    const std::size_t need = (out.lambda + kBuildRatio - 1) / kBuildRatio;
    if (out.fan_count >= need && out.fan_count > 0) out.tag = BuildOutcome::Tag::Built;
    else if (out.extended_count >= need) out.tag = BuildOutcome::Tag::Extended;
    else throw InvariantError("build_ufans fell short of its guarantee");
    return out;
}

} // namespace

BuildOutcome build_ufans(SeparableCollection& fans, std::span<const EdgeId> uncolored)
{
    Builder builder(fans);
    return builder.run(uncolored);
}

} // namespace vizing
