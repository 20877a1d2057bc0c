#pragma once

#include "plumbcalc/graph.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plumbcalc {

// Same graph with kind = plumbing and every edge positive.
WeightedGraph from_divisor_graph(const WeightedGraph& g);

// Reason the move cannot be applied at v, or nullopt.
std::optional<std::string> r1_obstruction(const WeightedGraph& g, const std::string& v);
std::optional<std::string> r3_obstruction(const WeightedGraph& g, const std::string& v);

// Blow down the rational +-1 vertex v (beta <= 2, no loop). Each neighbour loses
// eps = weight(v) per edge; two remaining ends are joined with sign -eps*s1*s2
// (a loop when both edges go to the same vertex).
WeightedGraph move_R1(const WeightedGraph& g, const std::string& v);

// Absorb the rational 0-vertex v with beta = 2 joining u != w: v disappears,
// u and w merge (weights, genus and boundary add). The edges of the larger id
// are multiplied by -s1*s2 first. The merged vertex keeps the smaller id.
WeightedGraph move_R3(const WeightedGraph& g, const std::string& v);

// Inverse of R1: a new vertex of weight eps (+1 or -1) at a vertex, or on the edge
// with the given index (edge order of g).
struct PerturbCenter {
    enum class Kind { vertex, edge };
    Kind kind = Kind::vertex;
    std::string vertex;
    std::size_t edge = 0;

    static PerturbCenter on_vertex(std::string id) { return {Kind::vertex, std::move(id), 0}; }
    static PerturbCenter on_edge(std::size_t index) { return {Kind::edge, {}, index}; }
};
WeightedGraph perturb(const WeightedGraph& g, const PerturbCenter& c, int eps, const std::string& new_id = "");

struct NormalityReport {
    bool normal = true;
    std::vector<std::string> violations;
};
NormalityReport is_normal(const WeightedGraph& g);

struct SeifertData {
    int base_genus = 0;
    int boundary_count = 0;
    // Unnormalized invariants (alpha - beta)/alpha, descending, one per twig.
    std::vector<Rational> exceptional;
    // alpha/beta of the same twigs, read from the centre outwards.
    std::vector<Rational> twig_fractions;
    long long central_weight = 0;

    std::string to_string() const;  // "M(0,0; 1/2, 1/3, 1/6), e = -2"
    bool operator==(const SeifertData&) const = default;
};

enum class NormalTag { generic, seifert_special };
std::string to_string(NormalTag t);

struct NormalForm {
    WeightedGraph graph;              // ids n0, n1, ... in canonical order
    std::vector<std::string> order;
    NormalTag tag = NormalTag::generic;
    std::optional<SeifertData> seifert;
};

// Applies R1 and R3 until neither applies, backtracking over the order of moves
// until a normal graph is reached. A cycle of (-2)-vertices is relabelled within
// its flip class before the check. A single vertex with one loop that is not
// normal is replaced by the equivalent Seifert star when one is tabulated.
NormalForm normalize(const WeightedGraph& g);

// Normal form of the same plumbing with the opposite orientation.
NormalForm reverse_orientation(const NormalForm& nf);

bool is_prime(const WeightedGraph& g);
// (p, q) of the lens space when g is a chain (the empty chain gives (1, 0)).
std::optional<std::pair<Integer, Integer>> is_lens_space(const WeightedGraph& g);

// p/q = a1 - 1/(a2 - 1/(...)) with every a_i >= 2; needs p > q >= 1 coprime, or (1, 0).
ChainType continued_fraction_expand(const Integer& p, const Integer& q);
std::pair<Integer, Integer> continued_fraction_eval(const ChainType& t);

// g must be a star: a centre (the only branching or non-rational vertex) with chains hanging off it.
SeifertData seifert_from_star(const WeightedGraph& g);

// Cuts the loops and multiple edges of a family normal form and reads off each piece.
std::vector<SeifertData> jsj_cut(const WeightedGraph& g);

// Z^{first Betti number} + coker(intersection matrix).
AbelianGroup h1_from_graph(const WeightedGraph& g);

inline constexpr std::size_t kNormalizeStateBudget = 200000;

} // namespace plumbcalc
