#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vizing/types.hpp"

namespace vizing {

struct Edge {
    Vertex u;
    Vertex v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
    Vertex neighbor;
    EdgeId edge;
};

/**
 * Static simple undirected graph. Vertices are 0..n-1 and edges 0..m-1; each
 * vertex keeps its incidences sorted by neighbor.
 *
 * A graph built from a subset of another graph's edges records, for every
 * local edge and vertex, the id it had in the parent.
 */
class Graph {
public:
    Graph() = default;

    /// Throws InputError on self-loops, repeated pairs or out-of-range endpoints.
    Graph(std::size_t n, std::vector<Edge> edges);

    /// Subgraph on the given parent edges. Local edge i is parent edge subset[i].
    /// With compact_vertices, only endpoints of the subset are kept.
    static Graph from_edges(const Graph& parent, std::span<const EdgeId> subset, bool compact_vertices);

    std::size_t n() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t m() const { return edges_.size(); }
    std::size_t max_degree() const { return max_degree_; }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    const Edge& endpoints(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    Vertex other(EdgeId e, Vertex x) const { return edges_[e].u == x ? edges_[e].v : edges_[e].u; }

    std::span<const Incidence> incident(Vertex v) const
    {
        return {adjacency_.data() + offsets_[v], degree(v)};
    }
    /// Start of v's incidence block; used to lay out per-vertex rows.
    const std::vector<std::uint32_t>& offsets() const { return offsets_; }

    std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;

    /// Parent-level ids (identity for root graphs).
    EdgeId edge_origin(EdgeId e) const { return edge_origin_.empty() ? e : edge_origin_[e]; }
    Vertex vertex_origin(Vertex v) const { return vertex_origin_.empty() ? v : vertex_origin_[v]; }

    /// External label of a vertex (1-based unless loaded from a file).
    std::uint64_t label(Vertex v) const { return labels_.empty() ? std::uint64_t{v} + 1 : labels_[v]; }
    void set_labels(std::vector<std::uint64_t> labels);

    /// Structural self-check; returns an empty string when consistent.
    std::string validate() const;

private:
    void build_adjacency();

    std::vector<Edge> edges_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Incidence> adjacency_;
    std::size_t max_degree_ = 0;
    std::vector<EdgeId> edge_origin_;
    std::vector<Vertex> vertex_origin_;
    std::vector<std::uint64_t> labels_;
};

/// Parses "u v" lines; '#' starts a comment line. Labels are compacted to
/// consecutive vertices in increasing label order.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// Writes one "u v" line per edge using vertex labels, in edge-id order.
void write_edge_list(std::ostream& out, const Graph& g);

Graph gen_random_graph(std::size_t n, std::size_t m, std::uint64_t seed);
Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed);
Graph gen_path(std::size_t n);
Graph gen_cycle(std::size_t n);
Graph gen_clique(std::size_t n);
Graph gen_star(std::size_t leaves);

/// Splits E into two halves on the same vertex set via Euler circuits.
std::pair<Graph, Graph> euler_partition(const Graph& g);

} // namespace vizing
