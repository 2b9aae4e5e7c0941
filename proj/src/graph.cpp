#include "gm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "gm/errors.hpp"

namespace gm {

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) : vertex_count_(vertex_count) {
    edges_.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u >= vertex_count || v >= vertex_count) {
            std::ostringstream msg;
            msg << "edge " << i << " (" << u << "," << v << ") has an endpoint outside 0.." << vertex_count;
            throw InputError(msg.str());
        }
        if (u == v) {
            std::ostringstream msg;
            msg << "edge " << i << " is a self-loop at vertex " << u;
            throw InputError(msg.str());
        }
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    const Edge e{std::min(u, v), std::max(u, v)};
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> d(vertex_count_, 0);
    for (auto [u, v] : edges_) {
        ++d[u];
        ++d[v];
    }
    return d;
}

Graph build_graph(std::size_t vertex_count, std::span<const Edge> edges) { return Graph(vertex_count, edges); }

SemiBipartiteGraph build_semibipartite(std::size_t n, std::span<const std::size_t> ks) {
    const std::size_t j = ks.size();
    if (j > n) throw InputError("semi-bipartite: more pendant groups than clique vertices");
    for (std::size_t l = 0; l < j; ++l) {
        if (ks[l] < 1) throw InputError("semi-bipartite: k_" + std::to_string(l + 1) + " must be >= 1");
        if (l > 0 && ks[l] > ks[l - 1]) throw InputError("semi-bipartite: k must be weakly decreasing");
    }

    SemiBipartitePartition part;
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        part.clique_vertices.push_back(u);
        (u < j ? part.attachment_vertices : part.extra_vertices).push_back(u);
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    Vertex next = n;
    for (std::size_t l = 0; l < j; ++l) {
        std::vector<Vertex> group;
        for (std::size_t i = 0; i < ks[l]; ++i, ++next) {
            edges.emplace_back(l, next);
            group.push_back(next);
        }
        part.pendant_groups.push_back(std::move(group));
    }
    return {Graph(next, edges), std::move(part)};
}

bool is_valid_partition(const Graph& g, const SemiBipartitePartition& part) {
    const auto& clique = part.clique_vertices;
    for (std::size_t a = 0; a < clique.size(); ++a)
        for (std::size_t b = a + 1; b < clique.size(); ++b)
            if (!g.has_edge(clique[a], clique[b])) return false;

    std::vector<Vertex> merged = part.attachment_vertices;
    merged.insert(merged.end(), part.extra_vertices.begin(), part.extra_vertices.end());
    std::vector<Vertex> sorted_clique = clique;
    std::sort(merged.begin(), merged.end());
    std::sort(sorted_clique.begin(), sorted_clique.end());
    if (std::adjacent_find(merged.begin(), merged.end()) != merged.end()) return false;
    if (merged != sorted_clique) return false;
    if (part.pendant_groups.size() != part.attachment_vertices.size()) return false;

    const auto deg = g.degrees();
    const auto in_clique = [&](Vertex v) { return std::binary_search(sorted_clique.begin(), sorted_clique.end(), v); };
    for (std::size_t l = 0; l < part.pendant_groups.size(); ++l) {
        const Vertex anchor = part.attachment_vertices[l];
        std::vector<Vertex> outside;
        for (auto [u, v] : g.edges()) {
            if (u == anchor && !in_clique(v)) outside.push_back(v);
            if (v == anchor && !in_clique(u)) outside.push_back(u);
        }
        std::vector<Vertex> group = part.pendant_groups[l];
        std::sort(group.begin(), group.end());
        std::sort(outside.begin(), outside.end());
        if (group != outside || group.empty()) return false;
        for (Vertex w : group)
            if (deg[w] != 1) return false;
    }
    return true;
}

Graph build_threshold(std::span<const CreationStep> creation_sequence) {
    if (creation_sequence.empty()) throw InputError("threshold graph needs a nonempty creation sequence");
    std::vector<Edge> edges;
    for (Vertex v = 0; v < creation_sequence.size(); ++v)
        if (creation_sequence[v] == CreationStep::dominating)
            for (Vertex u = 0; u < v; ++u) edges.emplace_back(u, v);
    return Graph(creation_sequence.size(), edges);
}

SymmetricMatrix laplacian(const Graph& g) {
    SymmetricMatrix lap(g.vertex_count());
    for (auto [u, v] : g.edges()) {
        lap.add(u, u, 1.0);
        lap.add(v, v, 1.0);
        lap.set(u, v, -1.0);
    }
    return lap;
}

std::vector<std::size_t> conjugate_sequence(std::span<const std::size_t> degrees, std::size_t length) {
    std::vector<std::size_t> conj(length, 0);
    for (std::size_t d : degrees)
        for (std::size_t m = 1; m <= std::min(d, length); ++m) ++conj[m - 1];
    return conj;
}

DegreeData degree_data(const Graph& g) {
    DegreeData out;
    out.degrees = g.degrees();
    out.conjugate = conjugate_sequence(out.degrees, g.vertex_count());
    return out;
}

double quadratic_form(const Graph& g, std::span<const double> x) {
    if (x.size() != g.vertex_count()) throw InputError("quadratic_form: vector length does not match vertex count");
    double q = 0.0;
    for (auto [u, v] : g.edges()) {
        const double d = x[u] - x[v];
        q += d * d;
    }
    return q;
}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::size_t parse_index(std::string_view tok, std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line_no, "expected a nonnegative integer, got '" + std::string(tok) + "'");
    return value;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> vertex_count;
    std::vector<Edge> edges;

    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens(line);
        if (toks.empty() || toks.front().front() == '#') continue;
        if (!vertex_count) {
            if (toks.size() != 2 || toks[0] != "p") throw ParseError(line_no, "expected header 'p N'");
            vertex_count = parse_index(toks[1], line_no);
            continue;
        }
        if (toks.size() != 2) throw ParseError(line_no, "expected an edge 'u v'");
        const Vertex u = parse_index(toks[0], line_no);
        const Vertex v = parse_index(toks[1], line_no);
        if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
        if (u >= *vertex_count || v >= *vertex_count)
            throw ParseError(line_no, "endpoint out of range for " + std::to_string(*vertex_count) + " vertices");
        edges.emplace_back(u, v);
    }
    if (!vertex_count) throw ParseError(line_no, "missing header 'p N'");
    return Graph(*vertex_count, edges);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_edge_list(in);
}

}  // namespace gm
