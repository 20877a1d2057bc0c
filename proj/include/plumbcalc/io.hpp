#pragma once

#include "plumbcalc/divisor.hpp"
#include "plumbcalc/graph.hpp"

#include <json.hpp>

#include <string>

namespace plumbcalc {

// Graph interchange document:
// {"kind": "divisor"|"plumbing",
//  "vertices": [{"id", "weight", "genus"?, "boundary"?, "label"?}],
//  "edges": [{"u", "v", "sign"?}]}
// Unknown fields are rejected with DomainError.
WeightedGraph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const WeightedGraph& g);

WeightedGraph parse_graph(const std::string& text);
WeightedGraph read_graph_file(const std::string& path);
std::string read_text_file(const std::string& path);

// Rewrite logs: [{"move": "blowup", "center": {"vertex": id} | {"edge": [u, v]}, "new_id": id},
//                {"move": "blowdown", "vertex": id},
//                {"move": "flow", "vertex": z, "toward": id}]
nlohmann::json log_to_json(const RewriteLog& log);
RewriteLog log_from_json(const nlohmann::json& doc);

// Graphviz rendering; vertices show weight (and genus/boundary when nonzero),
// negative edges are dashed and labelled "-".
std::string graph_to_dot(const WeightedGraph& g, const std::string& name = "G");

} // namespace plumbcalc
