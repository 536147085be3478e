#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srlab/complex.hpp"

namespace srlab {

/// Simple undirected graph on {1..n}; adjacency stored as one bitmask per vertex.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int order() const { return n_; }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const { return (adj_[static_cast<std::size_t>(u - 1)] >> (v - 1)) & 1U; }
    /// Neighbourhood of v as a vertex set.
    Face neighbours(int v) const { return Face(adj_[static_cast<std::size_t>(v - 1)]); }
    int degree(int v) const { return neighbours(v).size(); }
    std::size_t edge_count() const;
    /// Edges (u, v) with u < v, lexicographic.
    std::vector<std::pair<int, int>> edges() const;
    bool has_isolated_vertex() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    int n_ = 0;
    std::vector<Mask> adj_;
};

/// Chordless cycles of length 4..searched_max_length, each in canonical rotation:
/// smallest vertex first, then its smaller cycle neighbour.
struct CycleReport {
    std::vector<std::vector<int>> cycles;
    int searched_max_length = 0;
};

/// Edge-list format: optional "V: n" header, one "u v" edge per line, "#" comments.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

Graph complement(const Graph& g);
/// Cycle graph 1-2-...-n-1.
Graph cycle_graph(int n);
Graph complete_graph(int n);

/// Faces are the cliques of g.
Complex clique_complex(const Graph& g);
/// Faces are the independent sets of g.
Complex independence_complex(const Graph& g);
/// Vertices {1..n}, edges the 1-faces of c.
Graph skeleton_graph(const Complex& c);

CycleReport induced_cycles(const Graph& g, int max_length);
/// Every cycle of length <= r has a chord, i.e. no chordless cycle of length 4..r.
bool chord_condition(const Graph& g, int r);
bool is_chordal(const Graph& g);
/// No chordless cycle longer than r.
bool r_chordal(const Graph& g, int r);
/// Connected and 2-regular.
bool is_cycle_graph(const Graph& g);

} // namespace srlab
