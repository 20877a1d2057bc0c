#pragma once

#include "plumbcalc/graph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plumbcalc {

// Point blown up: a smooth point of one component (outer) or the
// intersection point of two components (inner).
struct BlowupCenter {
    enum class Kind { vertex, edge };
    Kind kind = Kind::vertex;
    std::string a;
    std::string b;  // only for edges

    static BlowupCenter on_vertex(std::string id) { return {Kind::vertex, std::move(id), {}}; }
    static BlowupCenter on_edge(std::string u, std::string v) { return {Kind::edge, std::move(u), std::move(v)}; }
    bool operator==(const BlowupCenter&) const = default;
};

struct Move {
    enum class Type { blowup, blowdown, flow };
    Type type = Type::blowup;
    BlowupCenter center;   // blowup
    std::string new_id;    // blowup: id of the exceptional vertex
    std::string vertex;    // blowdown: contracted vertex; flow: the 0-vertex
    std::string toward;    // flow: neighbour whose type drops by one

    static Move blowup(BlowupCenter c, std::string id) { return {Type::blowup, std::move(c), std::move(id), {}, {}}; }
    static Move blowdown(std::string id) { return {Type::blowdown, {}, {}, std::move(id), {}}; }
    static Move flow(std::string z, std::string toward) { return {Type::flow, {}, {}, std::move(z), std::move(toward)}; }
    bool operator==(const Move&) const = default;
};

using RewriteLog = std::vector<Move>;

struct Rewrite {
    WeightedGraph graph;
    RewriteLog log;
};

// Exceptional vertex gets id new_id, or a fresh "E<n>" when empty.
WeightedGraph blow_up(const WeightedGraph& g, const BlowupCenter& c, const std::string& new_id = "");

// Reason why v cannot be contracted, or nullopt when it can.
std::optional<std::string> blow_down_obstruction(const WeightedGraph& g, const std::string& v);
WeightedGraph blow_down(const WeightedGraph& g, const std::string& v);

// weight -1, genus 0, 1 <= beta <= 2 and contraction keeps the divisor snc.
bool is_superfluous(const WeightedGraph& g, const std::string& v);
bool is_snc_minimal(const WeightedGraph& g);

Rewrite snc_minimalize(const WeightedGraph& g);

// Blow up on the 0-vertex z and contract its transform. The neighbour named by
// `toward` has its type (minus its weight) lowered by one; the other neighbour,
// if any, has its type raised by one: [a,0,b] -> [a+1,0,b-1] with b = toward.
// For a tip z the blowup is at a free point of z. Passing toward == z at a tip
// blows up at the point where z meets its neighbour instead, raising the
// neighbour's type by one. The new 0-vertex keeps z's id.
WeightedGraph elementary_flow(const WeightedGraph& g, const std::string& z, const std::string& toward);

WeightedGraph apply_move(const WeightedGraph& g, const Move& m);
WeightedGraph replay(const WeightedGraph& g, const RewriteLog& log);

bool chain_type_is_standard(const ChainType& t);

struct StandardVerdict {
    bool standard = true;
    std::vector<std::pair<Segment, bool>> segments;
};

StandardVerdict is_standard(const WeightedGraph& g);

// Reaches a graph passing is_standard by blowups, blowdowns and flows.
Rewrite standardize(const WeightedGraph& g);

using BarkVector = std::map<std::string, Rational>;

// twig lists vertex ids starting at the tip.
BarkVector bark(const WeightedGraph& g, const std::vector<std::string>& twig);

// Maximal twigs whose components all have weight <= -2, listed tip first.
std::vector<std::vector<std::string>> admissible_twigs(const WeightedGraph& g);

std::map<std::string, Rational> d_sharp_coefficients(const WeightedGraph& g);

// Contracts the (-1)-vertex a meeting the rest of g once, then the
// (-1)-vertices this creates in succession.
Rewrite half_point_attach(const WeightedGraph& g, const std::string& a);

inline constexpr std::size_t kMoveBudget = 100000;

} // namespace plumbcalc
