#pragma once

#include "plumbcalc/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plumbcalc {

enum class GraphKind { divisor, plumbing };

std::string to_string(GraphKind kind);

struct Vertex {
    std::string id;
    long long weight = 0;
    int genus = 0;
    int boundary = 0;
    std::string label;

    bool rational() const { return genus == 0 && boundary == 0; }
    bool operator==(const Vertex&) const = default;
};

struct Edge {
    std::string u;
    std::string v;
    int sign = 1;

    bool is_loop() const { return u == v; }
    bool touches(const std::string& id) const { return u == id || v == id; }
    const std::string& other(const std::string& id) const { return u == id ? v : u; }
    bool operator==(const Edge&) const = default;
};

// Weighted multigraph shared by divisor dual graphs and plumbing graphs.
// Vertices are kept sorted by id; matrices and listings follow that order.
class WeightedGraph {
public:
    explicit WeightedGraph(GraphKind kind = GraphKind::divisor) : kind_(kind) {}

    GraphKind kind() const { return kind_; }
    void set_kind(GraphKind kind) { kind_ = kind; }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }

    bool has_vertex(const std::string& id) const;
    const Vertex& vertex(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;
    std::vector<std::string> ids() const;

    void add_vertex(Vertex v);
    void remove_vertex(const std::string& id);  // also drops incident edges
    void set_weight(const std::string& id, long long weight);
    void add_weight(const std::string& id, long long delta) { set_weight(id, vertex(id).weight + delta); }
    void set_boundary(const std::string& id, int boundary);
    void set_label(const std::string& id, std::string label);

    void add_edge(const std::string& u, const std::string& v, int sign = 1);
    // Removes one edge joining u and v (the first in edge order); throws if none.
    Edge remove_edge(const std::string& u, const std::string& v);
    void remove_edge_at(std::size_t index);
    void set_edge_sign(std::size_t index, int sign);

    std::size_t edge_count_between(const std::string& u, const std::string& v) const;
    std::vector<std::size_t> incident_edges(const std::string& id) const;
    // Distinct neighbours other than id itself, sorted.
    std::vector<std::string> neighbors(const std::string& id) const;
    std::size_t loop_count(const std::string& id) const;

    // Smallest unused id of the form prefix + n with n >= 1.
    std::string fresh_id(const std::string& prefix) const;

    // Throws DomainError describing the first violated structural invariant.
    void validate() const;

    bool operator==(const WeightedGraph&) const = default;

private:
    GraphKind kind_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
};

// Branching number: edge endpoints at v, a loop counting twice.
int branching_number(const WeightedGraph& g, const std::string& id);

// Intersection matrix on the subset (default all), rows in sorted id order.
IntMatrix intersection_matrix(const WeightedGraph& g, const std::optional<std::vector<std::string>>& subset = {});
// Same, but rows follow the given order exactly.
IntMatrix intersection_matrix_ordered(const WeightedGraph& g, const std::vector<std::string>& order);

WeightedGraph induced_subgraph(const WeightedGraph& g, const std::vector<std::string>& ids);
std::vector<std::vector<std::string>> connected_components(const WeightedGraph& g);
bool is_connected(const WeightedGraph& g);
std::size_t first_betti(const WeightedGraph& g);

bool is_negative_definite(const WeightedGraph& g, const std::optional<std::vector<std::string>>& subset = {});

// Integer sequence describing a chain or a circular subgraph.
struct ChainType {
    std::vector<long long> entries;
    bool circular = false;

    // Run-length rendering: [0,0,(2)_3] or ((0,0,1,1)) for circular types.
    std::string to_string() const;
    bool operator==(const ChainType&) const = default;
};

// Parses "[0,0,(2)_3]" / "((0,1,1))" notation.
ChainType parse_chain_type(const std::string& text);

// A linear chain of rational vertices with the given types (type = -weight),
// ids "c1", "c2", ... ; circular types close the cycle.
WeightedGraph chain_graph(const ChainType& type, GraphKind kind = GraphKind::divisor);

struct Segment {
    std::vector<std::string> vertices;  // in chain order
    ChainType type;                     // entries are -weight
    bool twig = false;
    std::vector<std::string> attach_first;  // branching neighbours of vertices.front()
    std::vector<std::string> attach_last;   // branching neighbours of vertices.back()
};

struct SegmentDecomposition {
    std::vector<std::string> branching;
    std::vector<Segment> segments;
};

// Splits g into branching vertices and the chain / circular components of the rest.
// Twigs are oriented tip first; other chains take the orientation whose type
// sequence is lexicographically smaller.
SegmentDecomposition classify_segments(const WeightedGraph& g);

enum class SignMode {
    exact,              // edge signs must match exactly
    up_to_vertex_flips  // signs compared modulo flipping all edges at a vertex
};

using VertexMap = std::map<std::string, std::string>;

std::optional<VertexMap> find_isomorphism(const WeightedGraph& g1, const WeightedGraph& g2,
                                          SignMode mode = SignMode::exact);
bool graphs_isomorphic(const WeightedGraph& g1, const WeightedGraph& g2, SignMode mode = SignMode::exact);

// Vertex order minimising a fixed encoding of the graph; isomorphic graphs
// give identical encodings under their canonical orders.
std::vector<std::string> canonical_order(const WeightedGraph& g, SignMode mode = SignMode::exact);
// Encoding of g under its canonical order, usable as a hash key.
std::string canonical_key(const WeightedGraph& g, SignMode mode = SignMode::exact);
// Copy of g with ids replaced by n0, n1, ... in canonical order (labels kept).
// In flip mode vertices are also flipped into a canonical sign pattern.
WeightedGraph canonical_relabel(const WeightedGraph& g, SignMode mode = SignMode::exact);

// Flip vertices so that the edges of a BFS spanning forest are all positive.
WeightedGraph reduce_signs(const WeightedGraph& g);
WeightedGraph flip_vertex(const WeightedGraph& g, const std::string& id);

} // namespace plumbcalc
