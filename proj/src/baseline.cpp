#include "vizing/baseline.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <memory>
#include <new>

#include "vizing/coloring.hpp"

namespace vizing {

namespace {

// Dense per-vertex rows, each starting on a cache line: the used-color
// bitset as 32-bit halves, then slot[c], the edge colored c at v.
class DenseState {
public:
    DenseState(const Graph& g, Color palette)
        : g_(g), palette_(palette), words_((palette + 64) / 64),
          stride_((2 * words_ + palette + 1 + 15) / 16 * 16),
          table_(static_cast<std::uint32_t*>(std::aligned_alloc(64, std::max<std::size_t>(g.n(), 1) * stride_ * 4)),
                 &std::free),
          color_(g.m(), kNoColor)
    {
        if (!table_) throw std::bad_alloc();
        for (std::size_t v = 0; v < g.n(); ++v) {
            std::uint32_t* row = table_.get() + v * stride_;
            std::fill(row, row + 2 * words_, 0U);
            std::fill(row + 2 * words_, row + stride_, kNoEdge);
        }
    }

    bool free_at(Vertex v, Color c) const { return slot(v)[c] == kNoEdge; }
    EdgeId at(Vertex v, Color c) const { return slot(v)[c]; }
    Color color(EdgeId e) const { return color_[e]; }
    std::vector<Color> take() { return std::move(color_); }

    Color first_free(Vertex v) const
    {
        Color out = kNoColor;
        for_each_free(v, [&](Color c) {
            out = c;
            return false;
        });
        return out;
    }

    Color common_free(Vertex a, Vertex b) const
    {
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t avail = ~(used(a, w) | used(b, w));
            if (w == 0) avail &= ~std::uint64_t{1};
            if (avail) {
                Color c = static_cast<Color>(w * 64 + std::countr_zero(avail));
                return c <= palette_ ? c : kNoColor;
            }
        }
        return kNoColor;
    }

    void paint(EdgeId e, Color c)
    {
        const Edge& ed = g_.endpoints(e);
        Color old = color_[e];
        if (old != kNoColor) {
            put(ed.u, old, kNoEdge);
            put(ed.v, old, kNoEdge);
        }
        color_[e] = c;
        if (c != kNoColor) {
            put(ed.u, c, e);
            put(ed.v, c, e);
        }
    }

    template <class F>
    void for_each_free(Vertex v, F&& f) const
    {
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t avail = ~used(v, w);
            while (avail) {
                Color c = static_cast<Color>(w * 64 + std::countr_zero(avail));
                avail &= avail - 1;
                if (c == 0) continue;
                if (c > palette_) return;
                if (!f(c)) return;
            }
        }
    }

private:
    const std::uint32_t* row(Vertex v) const { return table_.get() + v * stride_; }
    std::uint32_t* row(Vertex v) { return table_.get() + v * stride_; }
    const std::uint32_t* slot(Vertex v) const { return row(v) + 2 * words_; }
    std::uint64_t used(Vertex v, std::size_t w) const
    {
        const std::uint32_t* r = row(v);
        return std::uint64_t{r[2 * w]} | std::uint64_t{r[2 * w + 1]} << 32;
    }

    void put(Vertex v, Color c, EdgeId e)
    {
        std::uint32_t* r = row(v);
        r[2 * words_ + c] = e;
        std::uint32_t bit = std::uint32_t{1} << (c % 32);
        std::uint32_t& half = r[c / 32];
        if (e == kNoEdge) half &= ~bit;
        else half |= bit;
    }

    const Graph& g_;
    Color palette_;
    std::size_t words_;
    std::size_t stride_;
    std::unique_ptr<std::uint32_t, decltype(&std::free)> table_;
    std::vector<Color> color_;
};

void misra_gries_edge(DenseState& s, const Graph& g, EdgeId e, std::vector<std::uint32_t>& mark,
                      std::uint32_t stamp)
{
    const Vertex x = g.endpoints(e).u;
    const Vertex f = g.endpoints(e).v;
    if (Color c = s.common_free(x, f)) {
        s.paint(e, c);
        return;
    }

    // Maximal fan around x starting at f.
    std::vector<Vertex> fan{f};
    std::vector<EdgeId> fan_edge{e};
    mark[f] = stamp;
    while (true) {
        Vertex last = fan.back();
        Vertex next = 0;
        EdgeId via = kNoEdge;
        s.for_each_free(last, [&](Color c) {
            EdgeId cand = s.at(x, c);
            if (cand == kNoEdge) return true;
            Vertex z = g.other(cand, x);
            if (mark[z] == stamp) return true;
            next = z;
            via = cand;
            return false;
        });
        if (via == kNoEdge) break;
        mark[next] = stamp;
        fan.push_back(next);
        fan_edge.push_back(via);
    }

    const Color c = s.first_free(x);
    const Color d = s.first_free(fan.back());

    // Invert the cd-path that starts at x (x misses c).
    if (!s.free_at(x, d)) {
        std::vector<EdgeId> chain;
        Vertex cur = x;
        Color want = d;
        while (true) {
            EdgeId step = s.at(cur, want);
            if (step == kNoEdge) break;
            chain.push_back(step);
            cur = g.other(step, cur);
            want = want == d ? c : d;
        }
        std::vector<Color> swapped(chain.size());
        for (std::size_t i = 0; i < chain.size(); ++i) swapped[i] = s.color(chain[i]) == c ? d : c;
        for (EdgeId step : chain) s.paint(step, kNoColor);
        for (std::size_t i = 0; i < chain.size(); ++i) s.paint(chain[i], swapped[i]);
    }

    // First fan vertex with d free whose prefix is still a fan.
    std::size_t w = fan.size();
    for (std::size_t i = 0; i < fan.size(); ++i) {
        if (i > 0 && !s.free_at(fan[i - 1], s.color(fan_edge[i]))) break;
        if (s.free_at(fan[i], d)) {
            w = i;
            break;
        }
    }
    if (w == fan.size()) throw InvariantError("classical colorer found no rotation target");

    std::vector<Color> shifted(w + 1);
    for (std::size_t j = 0; j < w; ++j) shifted[j] = s.color(fan_edge[j + 1]);
    shifted[w] = d;
    for (std::size_t j = 1; j <= w; ++j) s.paint(fan_edge[j], kNoColor);
    for (std::size_t j = 0; j <= w; ++j) s.paint(fan_edge[j], shifted[j]);
}

} // namespace

std::vector<Color> classical_color_edges(const Graph& g)
{
    if (g.m() == 0) return {};
    const Color palette = static_cast<Color>(g.max_degree() + 1);
    DenseState state(g, palette);
    std::vector<std::uint32_t> mark(g.n(), 0);
    std::uint32_t stamp = 0;
    for (EdgeId e = 0; e < g.m(); ++e) misra_gries_edge(state, g, e, mark, ++stamp);
    return state.take();
}

PartialColoring classical_color(const Graph& g)
{
    auto colors = classical_color_edges(g);
    return PartialColoring(g, static_cast<Color>(g.max_degree() + 1), colors);
}

unsigned brute_min_edge_colors(const Graph& g)
{
    if (g.m() > kBruteForceEdgeLimit)
        throw PreconditionError("exhaustive search limited to " + std::to_string(kBruteForceEdgeLimit) + " edges");
    if (g.m() == 0) return 0;
    const std::size_t m = g.m();
    std::vector<std::uint32_t> used(g.n(), 0);
    std::vector<unsigned> color(m, 0);

    std::function<bool(std::size_t, unsigned, unsigned)> place = [&](std::size_t i, unsigned k,
                                                                     unsigned highest) -> bool {
        if (i == m) return true;
        const Edge& e = g.endpoints(static_cast<EdgeId>(i));
        std::uint32_t blocked = used[e.u] | used[e.v];
        // New colors are introduced in order, which removes palette symmetry.
        unsigned limit = std::min(k, highest + 1);
        for (unsigned c = 1; c <= limit; ++c) {
            std::uint32_t bit = 1U << c;
            if (blocked & bit) continue;
            used[e.u] |= bit;
            used[e.v] |= bit;
            if (place(i + 1, k, std::max(highest, c))) return true;
            used[e.u] &= ~bit;
            used[e.v] &= ~bit;
        }
        return false;
    };
    for (unsigned k = static_cast<unsigned>(std::max<std::size_t>(g.max_degree(), 1));; ++k) {
        std::fill(used.begin(), used.end(), 0);
        if (place(0, k, 0)) return k;
        if (k > m) throw InvariantError("exhaustive search failed");
    }
}

CheckReport check_coloring(const Graph& g, std::span<const Color> colors, Color max_colors)
{
    CheckReport report;
    auto add = [&](std::string s) {
        if (report.violations.size() < 100) report.violations.push_back(std::move(s));
    };
    if (colors.size() != g.m()) {
        report.total = false;
        report.proper = false;
        add("coloring has " + std::to_string(colors.size()) + " entries for " + std::to_string(g.m()) + " edges");
        return report;
    }
    std::vector<Color> distinct;
    for (EdgeId e = 0; e < g.m(); ++e) {
        if (colors[e] == kNoColor) {
            report.total = false;
            add("edge " + std::to_string(e) + " is uncolored");
            continue;
        }
        report.max_color = std::max(report.max_color, colors[e]);
        distinct.push_back(colors[e]);
        if (max_colors != 0 && colors[e] > max_colors) {
            report.within_limit = false;
            add("edge " + std::to_string(e) + " uses color " + std::to_string(colors[e]) + " above the limit " +
                std::to_string(max_colors));
        }
    }
    std::sort(distinct.begin(), distinct.end());
    report.colors_used = static_cast<std::size_t>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
    std::vector<std::pair<Color, EdgeId>> around;
    for (Vertex v = 0; v < g.n(); ++v) {
        around.clear();
        for (const Incidence& inc : g.incident(v))
            if (colors[inc.edge] != kNoColor) around.push_back({colors[inc.edge], inc.edge});
        std::sort(around.begin(), around.end());
        for (std::size_t i = 1; i < around.size(); ++i) {
            if (around[i].first == around[i - 1].first) {
                report.proper = false;
                add("vertex " + std::to_string(g.label(v)) + ": edges " + std::to_string(around[i - 1].second) +
                    " and " + std::to_string(around[i].second) + " share color " + std::to_string(around[i].first));
            }
        }
    }
    return report;
}

} // namespace vizing
