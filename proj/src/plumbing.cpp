#include "plumbcalc/plumbing.hpp"

#include "plumbcalc/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

namespace plumbcalc {

namespace {

void require_plumbing(const WeightedGraph& g, const char* op)
{
    if (g.kind() != GraphKind::plumbing) throw DomainError(std::string(op) + " needs a plumbing graph");
}

std::string display(const Vertex& v) { return v.label.empty() ? v.id : v.label; }

// Star with the given centre weight and twig types listed from the centre outwards.
WeightedGraph make_star(long long centre, const std::vector<std::vector<long long>>& twigs)
{
    WeightedGraph g(GraphKind::plumbing);
    g.add_vertex(Vertex{"c", centre, 0, 0, ""});
    for (std::size_t i = 0; i < twigs.size(); ++i) {
        std::string prev = "c";
        for (std::size_t k = 0; k < twigs[i].size(); ++k) {
            const std::string id = "t" + std::to_string(i + 1) + "_" + std::to_string(k + 1);
            g.add_vertex(Vertex{id, -twigs[i][k], 0, 0, ""});
            g.add_edge(prev, id);
            prev = id;
        }
    }
    return g;
}

bool is_tree(const WeightedGraph& g)
{
    return is_connected(g) && g.edges().size() + 1 == g.size();
}

} // namespace

WeightedGraph from_divisor_graph(const WeightedGraph& g)
{
    if (g.kind() != GraphKind::divisor) throw DomainError("from_divisor_graph needs a divisor graph");
    WeightedGraph out(GraphKind::plumbing);
    for (const auto& v : g.vertices()) out.add_vertex(v);
    for (const auto& e : g.edges()) out.add_edge(e.u, e.v, 1);
    return out;
}

// ---------------------------------------------------------------- moves

std::optional<std::string> r1_obstruction(const WeightedGraph& g, const std::string& v)
{
    if (!g.has_vertex(v)) return "unknown vertex '" + v + "'";
    const Vertex& x = g.vertex(v);
    if (!x.rational()) return "'" + v + "' is not rational";
    if (x.weight != 1 && x.weight != -1) return "weight of '" + v + "' is not +-1";
    if (g.loop_count(v) > 0) return "'" + v + "' carries a loop";
    if (branching_number(g, v) > 2) return "branching number of '" + v + "' exceeds 2";
    return std::nullopt;
}

std::optional<std::string> r3_obstruction(const WeightedGraph& g, const std::string& v)
{
    if (!g.has_vertex(v)) return "unknown vertex '" + v + "'";
    const Vertex& x = g.vertex(v);
    if (!x.rational()) return "'" + v + "' is not rational";
    if (x.weight != 0) return "weight of '" + v + "' is not 0";
    if (g.loop_count(v) > 0) return "'" + v + "' carries a loop";
    if (branching_number(g, v) != 2) return "branching number of '" + v + "' is not 2";
    if (g.neighbors(v).size() != 2)
        return "both edges of '" + v + "' lead to the same vertex; self-absorption is not supported";
    return std::nullopt;
}

WeightedGraph move_R1(const WeightedGraph& g, const std::string& v)
{
    require_plumbing(g, "move_R1");
    if (auto why = r1_obstruction(g, v)) throw DomainError("move_R1: " + *why);
    const long long eps = g.vertex(v).weight;
    std::vector<Edge> ends;
    for (std::size_t i : g.incident_edges(v)) ends.push_back(g.edges()[i]);
    WeightedGraph out = g;
    out.remove_vertex(v);
    for (const auto& e : ends) out.add_weight(e.other(v), -eps);
    if (ends.size() == 2)
        out.add_edge(ends[0].other(v), ends[1].other(v), static_cast<int>(-eps * ends[0].sign * ends[1].sign));
    return out;
}

WeightedGraph move_R3(const WeightedGraph& g, const std::string& v)
{
    require_plumbing(g, "move_R3");
    if (auto why = r3_obstruction(g, v)) throw DomainError("move_R3: " + *why);
    const auto inc = g.incident_edges(v);
    const Edge e1 = g.edges()[inc[0]], e2 = g.edges()[inc[1]];
    const std::string a = e1.other(v), b = e2.other(v);
    const std::string keep = std::min(a, b), gone = std::max(a, b);
    const int c = -e1.sign * e2.sign;

    const Vertex& vk = g.vertex(keep);
    const Vertex& vg = g.vertex(gone);
    WeightedGraph out(GraphKind::plumbing);
    for (const auto& x : g.vertices()) {
        if (x.id == v || x.id == gone) continue;
        if (x.id == keep)
            out.add_vertex(Vertex{keep, vk.weight + vg.weight, vk.genus + vg.genus, vk.boundary + vg.boundary,
                                  display(vk) + "+" + display(vg)});
        else
            out.add_vertex(x);
    }
    for (const auto& e : g.edges()) {
        if (e.touches(v)) continue;
        int sign = e.sign;
        // one end at the absorbed side: that end is flipped
        if ((e.u == gone) != (e.v == gone)) sign *= c;
        auto fix = [&](const std::string& x) { return x == gone ? keep : x; };
        out.add_edge(fix(e.u), fix(e.v), sign);
    }
    return out;
}

WeightedGraph perturb(const WeightedGraph& g, const PerturbCenter& c, int eps, const std::string& new_id)
{
    require_plumbing(g, "perturb");
    if (eps != 1 && eps != -1) throw DomainError("perturb: eps must be +1 or -1");
    const std::string id = new_id.empty() ? g.fresh_id("P") : new_id;
    if (g.has_vertex(id)) throw DomainError("perturb: id '" + id + "' is already a vertex");
    WeightedGraph out = g;
    if (c.kind == PerturbCenter::Kind::vertex) {
        if (!g.has_vertex(c.vertex)) throw DomainError("perturb: unknown vertex '" + c.vertex + "'");
        out.add_vertex(Vertex{id, eps, 0, 0, ""});
        out.add_edge(c.vertex, id, 1);
        out.add_weight(c.vertex, eps);
        return out;
    }
    if (c.edge >= g.edges().size()) throw DomainError("perturb: edge index out of range");
    const Edge e = g.edges()[c.edge];
    out.remove_edge_at(c.edge);
    out.add_vertex(Vertex{id, eps, 0, 0, ""});
    out.add_edge(e.u, id, 1);
    out.add_edge(id, e.v, -eps * e.sign);
    out.add_weight(e.u, eps);
    out.add_weight(e.v, eps);
    return out;
}

// ---------------------------------------------------------------- normal forms

NormalityReport is_normal(const WeightedGraph& g)
{
    NormalityReport r;
    auto fail = [&](std::string why) {
        r.normal = false;
        r.violations.push_back(std::move(why));
    };
    for (const auto& v : g.vertices())
        if (!v.rational()) throw OutOfScopeError("is_normal: vertex '" + v.id + "' is not rational");

    for (const auto& v : g.vertices())
        if (branching_number(g, v.id) <= 2 && v.weight > -2)
            fail("non-branching vertex '" + v.id + "' has weight " + std::to_string(v.weight) + " > -2");

    for (const auto& comp : connected_components(g)) {
        const WeightedGraph h = induced_subgraph(g, comp);
        std::vector<std::string> branching;
        for (const auto& id : comp)
            if (branching_number(h, id) >= 3) branching.push_back(id);
        for (const auto& id : branching) {
            if (branching_number(h, id) != 3) continue;
            int short_twigs = 0;
            for (const auto& n : h.neighbors(id))
                if (branching_number(h, n) == 1 && h.vertex(n).weight == -2) ++short_twigs;
            const bool fork = is_tree(h) && branching.size() == 1;
            if (short_twigs >= 2 && !fork)
                fail("vertex '" + id + "' with branching number 3 meets two [2]-twigs but the graph is not a fork");
        }
        const bool cycle = std::all_of(comp.begin(), comp.end(), [&](const std::string& id) {
            return branching_number(h, id) == 2 && h.vertex(id).weight == -2;
        }) && first_betti(h) == 1;
        if (cycle) {
            const auto negative = std::count_if(h.edges().begin(), h.edges().end(), [](const Edge& e) { return e.sign < 0; });
            if (negative < 2) fail("cycle of (-2)-vertices has fewer than two negative edges");
        }
    }
    return r;
}

std::string to_string(NormalTag t) { return t == NormalTag::generic ? "generic" : "seifert_special"; }

namespace {

// Seifert star replacing a single rational vertex with one loop, or nullopt.
std::optional<WeightedGraph> special_star(const WeightedGraph& g)
{
    if (g.size() != 1 || g.edges().size() != 1) return std::nullopt;
    const Vertex& v = g.vertices().front();
    const Edge& e = g.edges().front();
    if (!v.rational() || !e.is_loop()) return std::nullopt;
    // monodromy s * [[-e, 1], [-1, 0]]
    const long long s = e.sign;
    const long long trace = -s * v.weight;
    const long long lower = -s;
    if (trace == 1 && lower > 0) return make_star(-2, {{2}, {2, 2}, {2, 2, 2, 2, 2}});
    if (trace == 1 && lower < 0) return make_star(-1, {{2}, {3}, {6}});
    return std::nullopt;
}

// A cycle of k >= 2 rational (-2)-vertices relabelled within its flip class so
// that two edges carry "-" (product +) or one or three do (product -).
WeightedGraph with_labeled_cycle(const WeightedGraph& g)
{
    if (g.size() < 2 || first_betti(g) != 1 || !is_connected(g)) return g;
    for (const auto& v : g.vertices())
        if (!v.rational() || v.weight != -2 || branching_number(g, v.id) != 2) return g;
    int product = 1;
    for (const auto& e : g.edges()) product *= e.sign;
    const std::size_t negative = product > 0 ? 2 : (g.size() >= 3 ? 3 : 1);
    WeightedGraph out = g;
    for (std::size_t i = 0; i < out.edges().size(); ++i) out.set_edge_sign(i, i < negative ? -1 : 1);
    return out;
}

NormalForm finish(const WeightedGraph& g, NormalTag tag)
{
    NormalForm nf;
    nf.graph = with_labeled_cycle(canonical_relabel(g, SignMode::up_to_vertex_flips));
    nf.order = nf.graph.ids();
    nf.tag = tag;
    if (tag == NormalTag::seifert_special) nf.seifert = seifert_from_star(nf.graph);
    return nf;
}

} // namespace

NormalForm normalize(const WeightedGraph& input)
{
    WeightedGraph g = input.kind() == GraphKind::divisor ? from_divisor_graph(input) : input;
    g.validate();
    for (const auto& v : g.vertices())
        if (!v.rational()) throw OutOfScopeError("normalize: vertex '" + v.id + "' is not rational");
    if (!g.empty() && !is_connected(g)) throw DomainError("normalize needs a connected graph");

    std::unordered_set<std::string> visited;
    std::function<std::optional<NormalForm>(const WeightedGraph&)> search =
        [&](const WeightedGraph& cur) -> std::optional<NormalForm> {
        if (!visited.insert(canonical_key(cur, SignMode::up_to_vertex_flips)).second) return std::nullopt;
        if (visited.size() > kNormalizeStateBudget) throw InternalError("normalize exceeded its state budget");
        std::vector<std::function<WeightedGraph()>> moves;
        for (const auto& v : cur.vertices())
            if (!r1_obstruction(cur, v.id)) moves.push_back([&cur, id = v.id] { return move_R1(cur, id); });
        for (const auto& v : cur.vertices())
            if (!r3_obstruction(cur, v.id)) moves.push_back([&cur, id = v.id] { return move_R3(cur, id); });
        if (moves.empty()) {
            if (is_normal(with_labeled_cycle(cur)).normal) return finish(cur, NormalTag::generic);
            if (auto star = special_star(cur)) return finish(*star, NormalTag::seifert_special);
            return std::nullopt;
        }
        for (const auto& m : moves)
            if (auto r = search(m())) return r;
        return std::nullopt;
    };
    if (auto r = search(g)) return *r;
    throw OutOfScopeError("normalize: no normal form is reachable with R1 and R3 alone; the graph needs moves "
                          "this library does not implement");
}

NormalForm reverse_orientation(const NormalForm& nf)
{
    const WeightedGraph& g = nf.graph;
    require_plumbing(g, "reverse_orientation");
    if (g.empty()) return nf;
    for (const auto& v : g.vertices())
        if (!v.rational()) throw OutOfScopeError("reverse_orientation: vertex '" + v.id + "' is not rational");

    auto dual = [](const std::vector<long long>& types) {
        for (long long a : types)
            if (a < 2) throw OutOfScopeError("reverse_orientation expects chains of weight <= -2");
        const auto [p, q] = continued_fraction_eval(ChainType{types, false});
        return continued_fraction_expand(p, p - q).entries;
    };

    std::set<std::string> nodes;
    for (const auto& v : g.vertices())
        if (branching_number(g, v.id) >= 3 || g.loop_count(v.id) > 0) nodes.insert(v.id);

    WeightedGraph h(GraphKind::plumbing);
    if (nodes.empty()) {
        if (!is_tree(g)) throw OutOfScopeError("reverse_orientation: cycle without nodes");
        const auto lens = is_lens_space(g);
        if (!lens) throw OutOfScopeError("reverse_orientation: unsupported shape");
        std::vector<long long> types;
        // walk the chain from a tip
        std::string start = g.vertices().front().id;
        for (const auto& v : g.vertices())
            if (branching_number(g, v.id) <= 1) {
                start = v.id;
                break;
            }
        std::string prev, cur = start;
        for (;;) {
            types.push_back(-g.vertex(cur).weight);
            std::string next;
            for (const auto& n : g.neighbors(cur))
                if (n != prev) next = n;
            if (next.empty()) break;
            prev = cur;
            cur = next;
        }
        h = chain_graph(ChainType{dual(types), false}, GraphKind::plumbing);
    } else {
        for (const auto& id : nodes) {
            Vertex v = g.vertex(id);
            v.weight = -v.weight;
            v.label.clear();
            h.add_vertex(std::move(v));
        }
        std::set<std::string> walked;
        int fresh = 0;
        for (const auto& e : g.edges()) {
            const bool un = nodes.count(e.u) > 0, vn = nodes.count(e.v) > 0;
            if (un && vn) {
                h.add_edge(e.u, e.v, -e.sign);
                continue;
            }
            if (!un && !vn) continue;
            const std::string x = un ? e.u : e.v;
            const std::string first = e.other(x);
            if (walked.count(first)) continue;
            // walk the chain x - first - ... until a node or a tip
            std::vector<std::string> chain{first};
            std::vector<long long> types;
            long long product = e.sign;
            std::optional<std::string> z;
            std::size_t via = static_cast<std::size_t>(&e - g.edges().data());
            std::string cur = first;
            for (;;) {
                walked.insert(cur);
                types.push_back(-g.vertex(cur).weight);
                std::optional<std::size_t> next_edge;
                for (std::size_t i : g.incident_edges(cur))
                    if (i != via) next_edge = i;
                if (!next_edge) break;
                const Edge& ne = g.edges()[*next_edge];
                product *= ne.sign;
                const std::string nxt = ne.other(cur);
                if (nodes.count(nxt)) {
                    z = nxt;
                    break;
                }
                via = *next_edge;
                cur = nxt;
                chain.push_back(cur);
            }
            const auto d = dual(types);
            h.add_weight(x, -1);
            if (z) h.add_weight(*z, -1);
            std::string prev = x;
            for (std::size_t k = 0; k < d.size(); ++k) {
                const std::string id = "r" + std::to_string(++fresh);
                h.add_vertex(Vertex{id, -d[k], 0, 0, ""});
                h.add_edge(prev, id, k == 0 && z ? static_cast<int>(-product) : 1);
                prev = id;
            }
            if (z) h.add_edge(prev, *z, 1);
        }
    }
    h = with_labeled_cycle(h);
    if (!is_normal(h).normal) throw OutOfScopeError("reverse_orientation: the reversed graph is not normal");
    return finish(h, nf.tag);
}

bool is_prime(const WeightedGraph& g) { return !g.empty() && is_connected(g); }

std::optional<std::pair<Integer, Integer>> is_lens_space(const WeightedGraph& g)
{
    if (g.empty()) return std::pair<Integer, Integer>{1, 0};
    if (!is_tree(g)) return std::nullopt;
    for (const auto& v : g.vertices())
        if (!v.rational() || branching_number(g, v.id) > 2) return std::nullopt;
    std::string start;
    for (const auto& v : g.vertices())
        if (branching_number(g, v.id) <= 1) {
            start = v.id;
            break;
        }
    std::vector<long long> types;
    std::string prev, cur = start;
    for (;;) {
        types.push_back(-g.vertex(cur).weight);
        std::string next;
        for (const auto& n : g.neighbors(cur))
            if (n != prev) next = n;
        if (next.empty()) break;
        prev = cur;
        cur = next;
    }
    return continued_fraction_eval(ChainType{types, false});
}

// ---------------------------------------------------------------- continued fractions and Seifert data

ChainType continued_fraction_expand(const Integer& p0, const Integer& q0)
{
    if (q0 == 0) {
        if (p0 != 1) throw DomainError("continued_fraction_expand: q = 0 needs p = 1");
        return ChainType{};
    }
    if (q0 < 1 || p0 <= q0) throw DomainError("continued_fraction_expand needs p > q >= 1");
    if (boost::multiprecision::gcd(p0, q0) != 1) throw DomainError("continued_fraction_expand needs coprime p, q");
    ChainType out;
    Integer p = p0, q = q0;
    while (q != 0) {
        const Integer a = (p + q - 1) / q;
        out.entries.push_back(static_cast<long long>(a));
        const Integer r = a * q - p;
        p = q;
        q = r;
    }
    return out;
}

std::pair<Integer, Integer> continued_fraction_eval(const ChainType& t)
{
    Integer p = 1, q = 0;
    for (auto it = t.entries.rbegin(); it != t.entries.rend(); ++it) {
        const Integer np = Integer(*it) * p - q;
        q = p;
        p = np;
    }
    return {p, q};
}

std::string SeifertData::to_string() const
{
    std::string out = "M(" + std::to_string(base_genus) + "," + std::to_string(boundary_count) + ";";
    for (std::size_t i = 0; i < exceptional.size(); ++i) out += (i ? ", " : " ") + plumbcalc::to_string(exceptional[i]);
    return out + "), e = " + std::to_string(central_weight);
}

SeifertData seifert_from_star(const WeightedGraph& g)
{
    if (g.empty()) throw DomainError("seifert_from_star: empty graph");
    if (!is_tree(g)) throw DomainError("seifert_from_star: graph is not a tree");
    std::vector<std::string> centres;
    for (const auto& v : g.vertices())
        if (branching_number(g, v.id) >= 3 || !v.rational()) centres.push_back(v.id);
    if (centres.size() > 1) throw DomainError("seifert_from_star: more than one central vertex");
    if (centres.empty()) {
        if (g.size() != 1) throw DomainError("seifert_from_star: a chain has no distinguished centre");
        centres.push_back(g.vertices().front().id);
    }
    const Vertex& c = g.vertex(centres.front());
    SeifertData out;
    out.base_genus = c.genus;
    out.boundary_count = c.boundary;
    out.central_weight = c.weight;
    std::vector<std::pair<Rational, Rational>> fibres;
    for (const auto& first : g.neighbors(c.id)) {
        std::vector<long long> types;
        std::string prev = c.id, cur = first;
        for (;;) {
            types.push_back(-g.vertex(cur).weight);
            std::string next;
            for (const auto& n : g.neighbors(cur))
                if (n != prev) next = n;
            if (next.empty()) break;
            prev = cur;
            cur = next;
        }
        const auto [alpha, beta] = continued_fraction_eval(ChainType{types, false});
        if (alpha <= 0) throw DomainError("seifert_from_star: twig at '" + first + "' has nonpositive fraction");
        fibres.emplace_back(Rational(alpha - beta, alpha), Rational(alpha, beta == 0 ? Integer(1) : beta));
    }
    std::sort(fibres.begin(), fibres.end(), std::greater<>());
    for (const auto& [inv, frac] : fibres) {
        out.exceptional.push_back(inv);
        out.twig_fractions.push_back(frac);
    }
    return out;
}

std::vector<SeifertData> jsj_cut(const WeightedGraph& input)
{
    WeightedGraph g = input.kind() == GraphKind::divisor ? from_divisor_graph(input) : input;
    WeightedGraph h = g;
    std::vector<Edge> cut;
    for (const auto& e : g.edges())
        if (e.is_loop() || g.edge_count_between(e.u, e.v) >= 2) cut.push_back(e);
    for (const auto& e : cut) {
        h.remove_edge(e.u, e.v);
        h.set_boundary(e.u, h.vertex(e.u).boundary + 1);
        h.set_boundary(e.v, h.vertex(e.v).boundary + 1);
    }
    std::vector<SeifertData> out;
    for (const auto& comp : connected_components(h)) {
        try {
            out.push_back(seifert_from_star(induced_subgraph(h, comp)));
        } catch (const DomainError& e) {
            throw DomainError(std::string("jsj_cut: unrecognized shape (") + e.what() + ")");
        }
    }
    return out;
}

AbelianGroup h1_from_graph(const WeightedGraph& g)
{
    for (const auto& v : g.vertices())
        if (!v.rational()) throw DomainError("h1_from_graph: vertex '" + v.id + "' has genus or boundary");
    AbelianGroup out = cokernel(intersection_matrix(g));
    out.free_rank += first_betti(g);
    return out;
}

} // namespace plumbcalc
