#include "support.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <unordered_set>

#include "vizing/baseline.hpp"
#include "vizing/ufan_build.hpp"

namespace vizing::fuzz {

namespace {

std::uint64_t pair_key(Vertex a, Vertex b)
{
    if (a > b) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct Plan {
    Vertex u, v, w;
    Color cu, cv;
};

/// Types for Disjoint mode, in the order they are handed out.
std::vector<std::pair<Color, Color>> disjoint_types(Color mu, std::size_t social)
{
    const Color r = mu / 20;
    auto at = [&](unsigned block, Color j) { return static_cast<Color>((block - 1) * r + j); };
    std::vector<std::pair<Color, Color>> out;
    std::size_t made_social = 0;
    for (unsigned t = 0; t < 5; ++t) {
        for (Color j = 1; j <= r; ++j) {
            unsigned b = 4 * t;
            if (made_social < social) {
                out.push_back({at(b + 1, j), at(b + 2, j)});
                out.push_back({at(b + 3, j), at(b + 4, j)});
                made_social += 2;
            } else {
                out.push_back({at(b + 1, j), at(b + 3, j)});
                out.push_back({at(b + 2, j), at(b + 4, j)});
            }
        }
    }
    return out;
}

} // namespace

Color disjoint_mu(std::size_t lambda)
{
    std::size_t need = (2 * lambda + 19) / 20 * 20;
    return static_cast<Color>(std::max<std::size_t>(100, need));
}

FanState make_fan_state(const FanStateSpec& spec, std::uint64_t seed)
{
    Rng rng(seed);
    const std::size_t n = spec.n;
    const Color mu = spec.mu;
    if (n < 3) throw std::invalid_argument("fan states need three vertices");
    std::vector<std::vector<char>> claimed(n, std::vector<char>(mu + 1, 0));
    std::vector<std::vector<char>> used(n, std::vector<char>(mu + 1, 0));
    std::vector<std::size_t> freq(mu + 1, 0);
    std::unordered_set<std::uint64_t> present;
    std::vector<Edge> edges;
    std::vector<Color> colors;
    std::vector<Plan> plans;

    auto pick = [&](auto&& allowed) -> Color {
        if (spec.mode == FanColors::Spread) {
            std::vector<Color> best;
            std::size_t low = SIZE_MAX;
            for (Color c = 1; c <= mu; ++c) {
                if (!allowed(c)) continue;
                if (freq[c] < low) {
                    low = freq[c];
                    best.clear();
                }
                if (freq[c] == low) best.push_back(c);
            }
            return best.empty() ? kNoColor : best[uniform(rng, 0, best.size() - 1)];
        }
        for (int t = 0; t < 64; ++t) {
            Color c = static_cast<Color>(uniform(rng, 1, mu));
            if (allowed(c)) return c;
        }
        return kNoColor;
    };

    std::vector<std::pair<Color, Color>> recipe;
    if (spec.mode == FanColors::Disjoint) recipe = disjoint_types(mu, spec.social);
    for (std::size_t i = 0; i < spec.lambda; ++i) {
        if (spec.mode == FanColors::Disjoint && i >= recipe.size()) break;
        for (int attempt = 0; attempt < 100; ++attempt) {
            Vertex u = static_cast<Vertex>(uniform(rng, 0, n - 1));
            Vertex v = static_cast<Vertex>(uniform(rng, 0, n - 1));
            Vertex w = static_cast<Vertex>(uniform(rng, 0, n - 1));
            if (u == v || u == w || v == w) continue;
            if (present.count(pair_key(u, v)) || present.count(pair_key(u, w))) continue;
            Color cu, cv;
            if (spec.mode == FanColors::Disjoint) {
                auto [a, b] = recipe[i];
                if (rng() & 1) std::swap(a, b);
                cu = a;
                cv = b;
                if (claimed[u][cu] || claimed[v][cv] || claimed[w][cv]) continue;
            } else {
                cu = pick([&](Color c) { return !claimed[u][c]; });
                if (cu == kNoColor) continue;
                cv = pick([&](Color c) { return c != cu && !claimed[v][c] && !claimed[w][c]; });
                if (cv == kNoColor) continue;
            }
            claimed[u][cu] = claimed[v][cv] = claimed[w][cv] = 1;
            ++freq[cu];
            ++freq[cv];
            present.insert(pair_key(u, v));
            present.insert(pair_key(u, w));
            edges.push_back({u, v});
            edges.push_back({u, w});
            colors.push_back(kNoColor);
            colors.push_back(kNoColor);
            plans.push_back({u, v, w, cu, cv});
            break;
        }
    }

    const std::size_t target = n * spec.noise_degree / 2;
    std::size_t added = 0;
    for (std::size_t attempt = 0; attempt < 4 * target && added < target; ++attempt) {
        Vertex a = static_cast<Vertex>(uniform(rng, 0, n - 1));
        Vertex b = static_cast<Vertex>(uniform(rng, 0, n - 1));
        if (a == b || present.count(pair_key(a, b))) continue;
        Color chosen = kNoColor;
        for (int t = 0; t < 32 && chosen == kNoColor; ++t) {
            Color c = static_cast<Color>(uniform(rng, 1, mu));
            if (!used[a][c] && !used[b][c] && !claimed[a][c] && !claimed[b][c]) chosen = c;
        }
        if (chosen == kNoColor) continue;
        used[a][chosen] = used[b][chosen] = 1;
        present.insert(pair_key(a, b));
        edges.push_back({a, b});
        colors.push_back(chosen);
        ++added;
    }

    FanState s;
    s.graph = std::make_unique<Graph>(n, std::move(edges));
    s.chi = std::make_unique<PartialColoring>(*s.graph, mu, colors);
    s.fans = std::make_unique<SeparableCollection>(*s.chi);
    for (const Plan& p : plans)
        if (!s.fans->insert({p.u, p.v, p.w, p.cu, p.cv, p.cv}))
            throw std::logic_error("generated fan was rejected");
    return s;
}

FanState make_built_state(std::size_t n, std::size_t degree, double uncolor_share, Color extra_colors,
                          std::uint64_t seed)
{
    Rng rng(seed);
    FanState s;
    if ((n * degree) % 2) ++n;
    s.graph = std::make_unique<Graph>(gen_random_regular(n, degree, seed));
    std::vector<Color> colors = classical_color_edges(*s.graph);
    std::bernoulli_distribution drop(uncolor_share);
    for (Color& c : colors)
        if (drop(rng)) c = kNoColor;
    Color mu = static_cast<Color>(s.graph->max_degree() + 1 + extra_colors);
    s.chi = std::make_unique<PartialColoring>(*s.graph, mu, colors);
    s.fans = std::make_unique<SeparableCollection>(*s.chi);
    std::vector<EdgeId> open = s.chi->uncolored_edges();
    std::shuffle(open.begin(), open.end(), rng);
    build_ufans(*s.fans, open);
    return s;
}

std::vector<Color> random_partial_coloring(const Graph& g, Color mu, double share, Rng& rng)
{
    std::vector<std::vector<char>> used(g.n(), std::vector<char>(mu + 1, 0));
    std::vector<Color> colors(g.m(), kNoColor);
    std::vector<EdgeId> order(g.m());
    for (EdgeId e = 0; e < g.m(); ++e) order[e] = e;
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution take(share);
    for (EdgeId e : order) {
        if (!take(rng)) continue;
        auto [a, b] = g.endpoints(e);
        Color start = static_cast<Color>(uniform(rng, 0, mu - 1));
        for (Color i = 0; i < mu; ++i) {
            Color c = (start + i) % mu + 1;
            if (!used[a][c] && !used[b][c]) {
                used[a][c] = used[b][c] = 1;
                colors[e] = c;
                break;
            }
        }
    }
    return colors;
}

Graph fuzz_graph(Rng& rng, std::size_t max_n, std::size_t max_delta, std::size_t max_m)
{
    std::uint64_t seed = rng();
    switch (rng() % 6) {
    case 0: {
        std::size_t n = uniform(rng, 4, max_n);
        std::size_t d = uniform(rng, 2, std::min(max_delta, n - 1));
        std::size_t m = std::min({n * (n - 1) / 2, n * d / 2, max_m});
        return gen_random_graph(n, std::max<std::size_t>(m, 1), seed);
    }
    case 1: {
        std::size_t n = uniform(rng, 4, max_n);
        std::size_t d = uniform(rng, 2, std::min(max_delta, n - 1));
        n = std::max(std::min(n, 2 * max_m / d), d + 1);
        if ((n * d) % 2) ++n;
        return gen_random_regular(n, d, seed);
    }
    case 2: return gen_path(uniform(rng, 4, std::min(max_n, max_m + 1)));
    case 3: return gen_cycle(uniform(rng, 4, std::min(max_n, max_m)));
    case 4: {
        std::size_t top = std::min(max_delta + 1, max_n);
        while (top > 4 && top * (top - 1) / 2 > max_m) --top;
        return gen_clique(uniform(rng, 4, top));
    }
    default: return gen_star(uniform(rng, 3, std::min(max_delta, max_n - 1)));
    }
}

std::vector<FanId> brute_k_bad(const SeparableCollection& fans, unsigned k, const ColorPartition& part)
{
    std::vector<FanId> social;
    std::vector<FanId> out;
    for (FanId id : fans.ids()) {
        FanClass cls = classify_fan(fans.fan(id), part);
        if (cls.social()) social.push_back(id);
    }
    for (FanId id : fans.ids()) {
        const UFan& f = fans.fan(id);
        FanClass cls = classify_fan(f, part);
        if (cls.social()) {
            out.push_back(id);
            continue;
        }
        if (cls.kind != FanKind::NonSocial || f.damaged()) continue;
        PartialColoring chi(fans.coloring());
        SeparableCollection copy(fans, chi);
        FanId one[] = {id};
        modify_types(copy, one, k, part);
        bool changed = std::any_of(social.begin(), social.end(),
                                   [&](FanId s) { return !(copy.fan(s) == fans.fan(s)); });
        if (changed) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool disjoint_or_equal(const std::vector<AlternatingPath>& paths)
{
    std::vector<std::vector<EdgeId>> sets;
    for (const AlternatingPath& p : paths) {
        sets.push_back(p.edges);
        std::sort(sets.back().begin(), sets.back().end());
    }
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            if (sets[i] == sets[j]) continue;
            std::vector<EdgeId> both;
            std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                                  std::back_inserter(both));
            if (!both.empty()) return false;
        }
    return true;
}

bool flip_order_independent(const SeparableCollection& fans, std::span<const FanId> batch, unsigned k,
                            const ColorPartition& part)
{
    std::vector<AlternatingPath> paths = relevant_paths(fans, batch, k, part);
    PartialColoring chi_a(fans.coloring());
    SeparableCollection a(fans, chi_a);
    PartialColoring chi_b(fans.coloring());
    SeparableCollection b(fans, chi_b);
    try {
        for (const AlternatingPath& p : paths) a.flip_path(p);
        for (auto it = paths.rbegin(); it != paths.rend(); ++it) b.flip_path(*it);
    } catch (const PreconditionError&) {
        return false;
    }
    if (chi_a.colors() != chi_b.colors()) return false;
    for (FanId id : a.ids())
        if (!(a.fan(id) == b.fan(id))) return false;
    return true;
}

bool same_colors(const PartialColoring& a, const PartialColoring& b) { return a.colors() == b.colors(); }

} // namespace vizing::fuzz
