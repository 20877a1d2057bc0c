#pragma once

#include "plumbcalc/graph.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using plumbcalc::ChainType;
using plumbcalc::GraphKind;
using plumbcalc::WeightedGraph;

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20241017);
    return gen;
}

inline long long uniform(long long lo, long long hi)
{
    return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline ChainType random_chain_type(std::size_t max_len, long long lo, long long hi)
{
    ChainType t;
    const auto n = static_cast<std::size_t>(uniform(1, static_cast<long long>(max_len)));
    for (std::size_t i = 0; i < n; ++i) t.entries.push_back(uniform(lo, hi));
    return t;
}

// Random tree: each new vertex hangs off a uniformly chosen earlier one.
inline WeightedGraph random_tree(std::size_t n, long long lo, long long hi, GraphKind kind = GraphKind::divisor)
{
    WeightedGraph g(kind);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string id = "v" + std::to_string(i);
        g.add_vertex({id, uniform(lo, hi), 0, 0, ""});
        if (i > 0) g.add_edge("v" + std::to_string(uniform(0, static_cast<long long>(i) - 1)), id);
    }
    return g;
}

// Same graph with ids renamed through a random permutation and edges listed in random order.
inline WeightedGraph shuffled(const WeightedGraph& g, const std::string& prefix = "x")
{
    std::vector<std::string> ids = g.ids();
    std::vector<std::size_t> perm(ids.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng());
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < ids.size(); ++i) rename[ids[i]] = prefix + std::to_string(perm[i]);
    WeightedGraph out(g.kind());
    for (const auto& v : g.vertices()) {
        auto w = v;
        w.id = rename[v.id];
        out.add_vertex(w);
    }
    std::vector<plumbcalc::Edge> edges = g.edges();
    std::shuffle(edges.begin(), edges.end(), rng());
    for (const auto& e : edges) {
        const bool swap = uniform(0, 1) == 1;
        out.add_edge(rename[swap ? e.v : e.u], rename[swap ? e.u : e.v], e.sign);
    }
    return out;
}

inline long long weight_sum(const WeightedGraph& g)
{
    long long s = 0;
    for (const auto& v : g.vertices()) s += v.weight;
    return s;
}

} // namespace testing_support
