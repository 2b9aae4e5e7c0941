#ifndef GM_GRAPH_HPP
#define GM_GRAPH_HPP

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gm/linalg.hpp"

namespace gm {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/**
 * Undirected simple graph. Edges are stored normalized (u < v) and sorted
 * lexicographically, so two graphs with the same edge set compare equal.
 */
class Graph {
public:
    Graph() = default;

    /// Throws InputError on a self-loop or an out-of-range endpoint. Duplicates collapse.
    Graph(std::size_t vertex_count, std::span<const Edge> edges);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    bool has_edge(Vertex u, Vertex v) const;
    std::vector<std::size_t> degrees() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
};

Graph build_graph(std::size_t vertex_count, std::span<const Edge> edges);

/**
 * Vertex classes of a 1-regular semi-bipartite graph. Clique vertices come
 * first (attachments v_1..v_j, then extras), pendant groups W_1..W_j follow.
 */
struct SemiBipartitePartition {
    std::vector<Vertex> clique_vertices;
    std::vector<Vertex> attachment_vertices;
    std::vector<Vertex> extra_vertices;
    std::vector<std::vector<Vertex>> pendant_groups;
};

struct SemiBipartiteGraph {
    Graph graph;
    SemiBipartitePartition partition;
};

/**
 * Clique K_n plus, for each l, k_l pendant vertices hung off clique vertex l.
 * `ks` must be weakly decreasing with every entry >= 1 and at most n entries.
 */
SemiBipartiteGraph build_semibipartite(std::size_t n, std::span<const std::size_t> ks);

/// Checks every SemiBipartitePartition invariant against the graph.
bool is_valid_partition(const Graph& g, const SemiBipartitePartition& part);

enum class CreationStep { isolated, dominating };

/// Threshold graph: each dominating vertex joins every vertex added before it.
Graph build_threshold(std::span<const CreationStep> creation_sequence);

SymmetricMatrix laplacian(const Graph& g);

struct DegreeData {
    std::vector<std::size_t> degrees;
    /// conjugate[m-1] = #{v : degree(v) >= m} for m = 1..vertex_count.
    std::vector<std::size_t> conjugate;
};

DegreeData degree_data(const Graph& g);

/// Conjugate of an arbitrary degree list, zero-padded to `length`.
std::vector<std::size_t> conjugate_sequence(std::span<const std::size_t> degrees, std::size_t length);

/// Sum over edges of (x_v - x_w)^2.
double quadratic_form(const Graph& g, std::span<const double> x);

/**
 * Edge-list reader. '#' lines are comments; the first data line is "p N",
 * every later one "u v" (0-based). Errors raise ParseError with the line.
 */
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

}  // namespace gm

#endif
