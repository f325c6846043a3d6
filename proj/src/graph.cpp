#include "vizing/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace vizing {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : edges_(std::move(edges))
{
    if (n >= std::numeric_limits<Vertex>::max() || edges_.size() >= kNoEdge)
        throw InputError("graph too large");
    offsets_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
        if (e.u >= n || e.v >= n) throw InputError("edge endpoint out of range");
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    }
    build_adjacency();
}

void Graph::build_adjacency()
{
    std::size_t n = offsets_.size() - 1;
    std::vector<std::uint32_t> deg(n, 0);
    for (const Edge& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    offsets_[0] = 0;
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
    adjacency_.assign(offsets_[n], Incidence{});
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        const Edge& e = edges_[id];
        adjacency_[fill[e.u]++] = {e.v, id};
        adjacency_[fill[e.v]++] = {e.u, id};
    }
    max_degree_ = 0;
    for (std::size_t v = 0; v < n; ++v) {
        auto first = adjacency_.begin() + offsets_[v];
        auto last = adjacency_.begin() + offsets_[v + 1];
        std::sort(first, last, [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
        for (auto it = first; it != last && it + 1 != last; ++it) {
            if (it->neighbor == (it + 1)->neighbor)
                throw InputError("duplicate edge between vertices " + std::to_string(v) + " and " +
                                 std::to_string(it->neighbor));
        }
        max_degree_ = std::max<std::size_t>(max_degree_, deg[v]);
    }
}

Graph Graph::from_edges(const Graph& parent, std::span<const EdgeId> subset, bool compact_vertices)
{
    Graph g;
    g.edge_origin_.assign(subset.begin(), subset.end());
    g.edges_.reserve(subset.size());
    std::size_t n = parent.n();
    if (compact_vertices) {
        std::vector<Vertex> used;
        used.reserve(subset.size() * 2);
        for (EdgeId e : subset) {
            used.push_back(parent.edges_[e].u);
            used.push_back(parent.edges_[e].v);
        }
        std::sort(used.begin(), used.end());
        used.erase(std::unique(used.begin(), used.end()), used.end());
        auto local = [&](Vertex v) {
            return static_cast<Vertex>(std::lower_bound(used.begin(), used.end(), v) - used.begin());
        };
        for (EdgeId e : subset) g.edges_.push_back({local(parent.edges_[e].u), local(parent.edges_[e].v)});
        n = used.size();
        if (!parent.labels_.empty()) {
            g.labels_.reserve(n);
            for (Vertex v : used) g.labels_.push_back(parent.labels_[v]);
        }
        g.vertex_origin_ = std::move(used);
    } else {
        for (EdgeId e : subset) g.edges_.push_back(parent.edges_[e]);
        g.labels_ = parent.labels_;
    }
    g.offsets_.assign(n + 1, 0);
    g.build_adjacency();
    return g;
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const
{
    auto inc = incident(a);
    auto it = std::lower_bound(inc.begin(), inc.end(), b,
                               [](const Incidence& x, Vertex key) { return x.neighbor < key; });
    if (it == inc.end() || it->neighbor != b) return std::nullopt;
    return it->edge;
}

void Graph::set_labels(std::vector<std::uint64_t> labels)
{
    if (labels.size() != n()) throw PreconditionError("label count does not match vertex count");
    labels_ = std::move(labels);
}

std::string Graph::validate() const
{
    std::ostringstream err;
    std::size_t best = 0;
    for (Vertex v = 0; v < n(); ++v) {
        best = std::max(best, degree(v));
        auto inc = incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i) {
            const Edge& e = edges_[inc[i].edge];
            if (!((e.u == v && e.v == inc[i].neighbor) || (e.v == v && e.u == inc[i].neighbor)))
                err << "incidence of vertex " << v << " disagrees with edge " << inc[i].edge << "\n";
            if (i > 0 && inc[i - 1].neighbor >= inc[i].neighbor)
                err << "adjacency of vertex " << v << " not strictly sorted\n";
        }
    }
    if (best != max_degree_) err << "max degree mismatch\n";
    if (adjacency_.size() != 2 * edges_.size()) err << "adjacency size mismatch\n";
    for (const Edge& e : edges_)
        if (e.u == e.v) err << "self-loop\n";
    return err.str();
}

namespace {

std::string_view trim(std::string_view s)
{
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_label(std::string_view token, std::uint64_t& out)
{
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size() && out > 0;
}

} // namespace

Graph load_edge_list(std::istream& in)
{
    struct Raw {
        std::uint64_t a, b;
        std::size_t line;
    };
    std::vector<Raw> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        std::vector<std::string_view> tokens;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t next = s.find_first_of(" \t", pos);
            if (next == std::string_view::npos) next = s.size();
            if (next > pos) tokens.push_back(s.substr(pos, next - pos));
            pos = next + 1;
        }
        if (tokens.size() != 2) throw ParseError(lineno, "expected two vertex labels");
        Raw r{0, 0, lineno};
        if (!parse_label(tokens[0], r.a) || !parse_label(tokens[1], r.b))
            throw ParseError(lineno, "vertex labels must be positive integers");
        if (r.a == r.b) throw ParseError(lineno, "self-loop at vertex " + std::to_string(r.a));
        raw.push_back(r);
    }

    std::vector<std::uint64_t> labels;
    labels.reserve(raw.size() * 2);
    for (const Raw& r : raw) {
        labels.push_back(r.a);
        labels.push_back(r.b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    auto local = [&](std::uint64_t label) {
        return static_cast<Vertex>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
    };

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const Raw& r : raw) edges.push_back({local(r.a), local(r.b)});

    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](std::size_t i) {
        auto [a, b] = std::minmax(edges[i].u, edges[i].v);
        return std::uint64_t{a} << 32 | b;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return key(x) != key(y) ? key(x) < key(y) : x < y;
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (key(order[i]) == key(order[i - 1])) {
            const Raw& r = raw[order[i]];
            throw ParseError(r.line, "duplicate edge " + std::to_string(r.a) + " " + std::to_string(r.b) +
                                         " (first seen on line " + std::to_string(raw[order[i - 1]].line) +
                                         ")");
        }
    }

    Graph g(labels.size(), std::move(edges));
    g.set_labels(std::move(labels));
    return g;
}

Graph load_edge_list_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g)
{
    for (const Edge& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

Graph gen_random_graph(std::size_t n, std::size_t m, std::uint64_t seed)
{
    std::uint64_t total = n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
    if (m > total)
        throw PreconditionError("cannot place " + std::to_string(m) + " edges on " + std::to_string(n) +
                                " vertices");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    edges.reserve(m);
    if (m * 2 > total) {
        // Dense: enumerate all pairs and keep a random m-subset.
        std::vector<Edge> all;
        all.reserve(total);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(m);
        std::sort(all.begin(), all.end(), [](const Edge& a, const Edge& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
        return Graph(n, std::move(all));
    }
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m * 2);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    while (edges.size() < m) {
        auto a = static_cast<Vertex>(pick(rng));
        auto b = static_cast<Vertex>(pick(rng));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (seen.insert(std::uint64_t{a} * n + b).second) edges.push_back({a, b});
    }
    return Graph(n, std::move(edges));
}

namespace {

std::uint64_t pair_key(Vertex a, Vertex b)
{
    if (a > b) std::swap(a, b);
    return std::uint64_t{a} << 32 | b;
}

// Configuration model followed by double-edge switches that remove loops and
// repeated pairs. Returns nullopt when the switches stall.
std::optional<std::vector<Edge>> try_regular(std::size_t n, std::size_t d, std::mt19937_64& rng)
{
    std::vector<Vertex> stubs;
    stubs.reserve(n * d);
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t i = 0; i < d; ++i) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);

    std::size_t pairs = stubs.size() / 2;
    std::vector<Edge> edges(pairs);
    std::unordered_map<std::uint64_t, std::uint32_t> count;
    count.reserve(pairs * 2);
    for (std::size_t i = 0; i < pairs; ++i) {
        edges[i] = {stubs[2 * i], stubs[2 * i + 1]};
        ++count[pair_key(edges[i].u, edges[i].v)];
    }
    stubs.clear();
    stubs.shrink_to_fit();

    auto bad = [&](const Edge& e) { return e.u == e.v || count[pair_key(e.u, e.v)] > 1; };
    auto good_new = [&](Vertex a, Vertex b) {
        if (a == b) return false;
        auto it = count.find(pair_key(a, b));
        return it == count.end() || it->second == 0;
    };
    std::uniform_int_distribution<std::size_t> pick(0, pairs - 1);
    for (std::size_t i = 0; i < pairs; ++i) {
        std::size_t attempts = 0;
        while (bad(edges[i])) {
            if (++attempts > 100000) return std::nullopt;
            std::size_t j = pick(rng);
            if (j == i || bad(edges[j])) continue;
            Edge a = edges[i];
            Edge b = edges[j];
            Edge x{a.u, b.u};
            Edge y{a.v, b.v};
            if (rng() & 1U) {
                x = {a.u, b.v};
                y = {a.v, b.u};
            }
            if (!good_new(x.u, x.v) || !good_new(y.u, y.v) || pair_key(x.u, x.v) == pair_key(y.u, y.v))
                continue;
            --count[pair_key(a.u, a.v)];
            --count[pair_key(b.u, b.v)];
            ++count[pair_key(x.u, x.v)];
            ++count[pair_key(y.u, y.v)];
            edges[i] = x;
            edges[j] = y;
        }
    }
    return edges;
}

} // namespace

Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed)
{
    if ((n * d) % 2 != 0) throw PreconditionError("n*d must be even");
    if (d >= n && !(n == 0 && d == 0)) throw PreconditionError("degree must be below n");
    if (d == 0) return Graph(n, {});
    for (std::uint64_t attempt = 0;; ++attempt) {
        std::mt19937_64 rng(seed + attempt);
        if (auto edges = try_regular(n, d, rng)) return Graph(n, std::move(*edges));
        if (attempt > 64) throw InvariantError("random regular generation did not converge");
    }
}

Graph gen_path(std::size_t n)
{
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return Graph(n, std::move(edges));
}

Graph gen_cycle(std::size_t n)
{
    if (n < 3) throw PreconditionError("a cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.push_back({v, static_cast<Vertex>((v + 1) % n)});
    return Graph(n, std::move(edges));
}

Graph gen_clique(std::size_t n)
{
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

Graph gen_star(std::size_t leaves)
{
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v});
    return Graph(leaves + 1, std::move(edges));
}

std::pair<Graph, Graph> euler_partition(const Graph& g)
{
    const std::size_t n = g.n();
    const std::size_t m = g.m();
    const Vertex hub = static_cast<Vertex>(n);

    // Augmented multigraph: real edges 0..m-1, then one hub edge per odd vertex.
    std::vector<Edge> aug(g.edges());
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) % 2 == 1) aug.push_back({v, hub});
    std::vector<std::uint32_t> offsets(n + 2, 0);
    for (const Edge& e : aug) {
        ++offsets[e.u + 1];
        ++offsets[e.v + 1];
    }
    for (std::size_t v = 0; v <= n; ++v) offsets[v + 1] += offsets[v];
    std::vector<EdgeId> adj(offsets.back());
    {
        std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
        for (EdgeId id = 0; id < aug.size(); ++id) {
            adj[fill[aug[id].u]++] = id;
            adj[fill[aug[id].v]++] = id;
        }
    }
    auto deg = [&](Vertex v) { return offsets[v + 1] - offsets[v]; };

    // Circuit start per component: the hub if present, else a minimum-degree vertex,
    // so the one possible imbalance lands where it hurts least.
    std::vector<Vertex> comp(n + 1, hub + 1);
    std::vector<Vertex> starts;
    std::vector<Vertex> queue;
    auto visit = [&](Vertex root) {
        Vertex best = root;
        queue.assign(1, root);
        comp[root] = root;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex x = queue[head];
            if (x == hub || (best != hub && (deg(x) < deg(best) || (deg(x) == deg(best) && x < best))))
                best = x;
            for (std::uint32_t i = offsets[x]; i < offsets[x + 1]; ++i) {
                const Edge& e = aug[adj[i]];
                Vertex y = e.u == x ? e.v : e.u;
                if (comp[y] == hub + 1) {
                    comp[y] = root;
                    queue.push_back(y);
                }
            }
        }
        starts.push_back(best);
    };
    if (deg(hub) > 0) visit(hub);
    for (Vertex v = 0; v < n; ++v)
        if (comp[v] == hub + 1 && deg(v) > 0) visit(v);

    std::vector<char> used(aug.size(), 0);
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    std::vector<EdgeId> first_half;
    std::vector<EdgeId> second_half;
    first_half.reserve(m / 2 + n);
    second_half.reserve(m / 2 + n);
    std::vector<std::pair<Vertex, EdgeId>> stack;
    std::vector<EdgeId> circuit;
    for (Vertex s : starts) {
        circuit.clear();
        stack.assign(1, {s, kNoEdge});
        while (!stack.empty()) {
            Vertex x = stack.back().first;
            std::uint32_t& c = cursor[x];
            while (c < offsets[x + 1] && used[adj[c]]) ++c;
            if (c < offsets[x + 1]) {
                EdgeId e = adj[c];
                used[e] = 1;
                const Edge& ed = aug[e];
                stack.push_back({ed.u == x ? ed.v : ed.u, e});
            } else {
                if (stack.back().second != kNoEdge) circuit.push_back(stack.back().second);
                stack.pop_back();
            }
        }
        for (std::size_t i = 0; i < circuit.size(); ++i) {
            if (circuit[i] >= m) continue;
            (i % 2 == 0 ? first_half : second_half).push_back(circuit[i]);
        }
    }
    std::sort(first_half.begin(), first_half.end());
    std::sort(second_half.begin(), second_half.end());
    return {Graph::from_edges(g, first_half, false), Graph::from_edges(g, second_half, false)};
}

} // namespace vizing
