#include "plumbcalc/graph.hpp"

#include "plumbcalc/errors.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace plumbcalc {

std::string to_string(GraphKind kind) { return kind == GraphKind::divisor ? "divisor" : "plumbing"; }

// ---------------------------------------------------------------- WeightedGraph

bool WeightedGraph::has_vertex(const std::string& id) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](const Vertex& v, const std::string& key) { return v.id < key; });
    return it != vertices_.end() && it->id == id;
}

std::size_t WeightedGraph::index_of(const std::string& id) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](const Vertex& v, const std::string& key) { return v.id < key; });
    if (it == vertices_.end() || it->id != id) throw DomainError("unknown vertex id '" + id + "'");
    return static_cast<std::size_t>(it - vertices_.begin());
}

const Vertex& WeightedGraph::vertex(const std::string& id) const { return vertices_[index_of(id)]; }

std::vector<std::string> WeightedGraph::ids() const
{
    std::vector<std::string> out;
    out.reserve(vertices_.size());
    for (const auto& v : vertices_) out.push_back(v.id);
    return out;
}

void WeightedGraph::add_vertex(Vertex v)
{
    if (v.id.empty()) throw DomainError("vertex id must be non-empty");
    if (v.boundary < 0) throw DomainError("vertex '" + v.id + "' has negative boundary count");
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v.id,
                               [](const Vertex& a, const std::string& key) { return a.id < key; });
    if (it != vertices_.end() && it->id == v.id) throw DomainError("duplicate vertex id '" + v.id + "'");
    vertices_.insert(it, std::move(v));
}

void WeightedGraph::remove_vertex(const std::string& id)
{
    const std::size_t i = index_of(id);
    vertices_.erase(vertices_.begin() + static_cast<std::ptrdiff_t>(i));
    std::erase_if(edges_, [&](const Edge& e) { return e.touches(id); });
}

void WeightedGraph::set_weight(const std::string& id, long long weight) { vertices_[index_of(id)].weight = weight; }

void WeightedGraph::set_boundary(const std::string& id, int boundary)
{
    if (boundary < 0) throw DomainError("negative boundary count");
    vertices_[index_of(id)].boundary = boundary;
}

void WeightedGraph::set_label(const std::string& id, std::string label) { vertices_[index_of(id)].label = std::move(label); }

void WeightedGraph::add_edge(const std::string& u, const std::string& v, int sign)
{
    if (!has_vertex(u)) throw DomainError("edge endpoint '" + u + "' is not a vertex");
    if (!has_vertex(v)) throw DomainError("edge endpoint '" + v + "' is not a vertex");
    if (sign != 1 && sign != -1) throw DomainError("edge sign must be +1 or -1");
    if (kind_ == GraphKind::divisor) {
        if (u == v) throw DomainError("divisor graphs have no loops (vertex '" + u + "')");
        if (sign != 1) throw DomainError("divisor graph edges carry sign +1");
        if (edge_count_between(u, v) > 0)
            throw DomainError("divisor graphs have no multiple edges ('" + u + "', '" + v + "')");
    }
    // store with u <= v so that listings are stable
    if (v < u)
        edges_.push_back(Edge{v, u, sign});
    else
        edges_.push_back(Edge{u, v, sign});
}

Edge WeightedGraph::remove_edge(const std::string& u, const std::string& v)
{
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
            Edge out = e;
            edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(i));
            return out;
        }
    }
    throw DomainError("no edge between '" + u + "' and '" + v + "'");
}

void WeightedGraph::remove_edge_at(std::size_t index)
{
    if (index >= edges_.size()) throw DomainError("edge index out of range");
    edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(index));
}

void WeightedGraph::set_edge_sign(std::size_t index, int sign)
{
    if (index >= edges_.size()) throw DomainError("edge index out of range");
    if (sign != 1 && sign != -1) throw DomainError("edge sign must be +1 or -1");
    if (kind_ == GraphKind::divisor && sign != 1) throw DomainError("divisor graph edges carry sign +1");
    edges_[index].sign = sign;
}

std::size_t WeightedGraph::edge_count_between(const std::string& u, const std::string& v) const
{
    std::size_t n = 0;
    for (const auto& e : edges_)
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) ++n;
    return n;
}

std::vector<std::size_t> WeightedGraph::incident_edges(const std::string& id) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].touches(id)) out.push_back(i);
    return out;
}

std::vector<std::string> WeightedGraph::neighbors(const std::string& id) const
{
    std::set<std::string> out;
    for (const auto& e : edges_)
        if (e.touches(id) && !e.is_loop()) out.insert(e.other(id));
    return {out.begin(), out.end()};
}

std::size_t WeightedGraph::loop_count(const std::string& id) const
{
    std::size_t n = 0;
    for (const auto& e : edges_)
        if (e.is_loop() && e.u == id) ++n;
    return n;
}

std::string WeightedGraph::fresh_id(const std::string& prefix) const
{
    for (std::size_t n = 1;; ++n) {
        std::string candidate = prefix + std::to_string(n);
        if (!has_vertex(candidate)) return candidate;
    }
}

void WeightedGraph::validate() const
{
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        if (!(vertices_[i - 1].id < vertices_[i].id)) throw DomainError("vertex ids are not unique");
    for (const auto& v : vertices_)
        if (v.boundary < 0) throw DomainError("vertex '" + v.id + "' has negative boundary count");
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : edges_) {
        if (!has_vertex(e.u) || !has_vertex(e.v)) throw DomainError("edge references a missing vertex");
        if (e.sign != 1 && e.sign != -1) throw DomainError("edge sign must be +1 or -1");
        if (kind_ == GraphKind::divisor) {
            if (e.is_loop()) throw DomainError("divisor graphs have no loops");
            if (e.sign != 1) throw DomainError("divisor graph edges carry sign +1");
            if (!seen.insert({e.u, e.v}).second) throw DomainError("divisor graphs have no multiple edges");
        }
    }
}

// ---------------------------------------------------------------- basic invariants

int branching_number(const WeightedGraph& g, const std::string& id)
{
    (void)g.index_of(id);
    int beta = 0;
    for (const auto& e : g.edges()) {
        if (e.is_loop() && e.u == id)
            beta += 2;
        else if (e.touches(id))
            beta += 1;
    }
    return beta;
}

IntMatrix intersection_matrix_ordered(const WeightedGraph& g, const std::vector<std::string>& order)
{
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) {
        (void)g.index_of(order[i]);
        if (!pos.emplace(order[i], i).second) throw DomainError("repeated vertex id '" + order[i] + "'");
    }
    IntMatrix m(order.size(), order.size());
    for (std::size_t i = 0; i < order.size(); ++i) m(i, i) = g.vertex(order[i]).weight;
    for (const auto& e : g.edges()) {
        auto a = pos.find(e.u);
        auto b = pos.find(e.v);
        if (a == pos.end() || b == pos.end()) continue;
        if (e.is_loop())
            m(a->second, a->second) += 2 * e.sign;
        else {
            m(a->second, b->second) += e.sign;
            m(b->second, a->second) += e.sign;
        }
    }
    return m;
}

IntMatrix intersection_matrix(const WeightedGraph& g, const std::optional<std::vector<std::string>>& subset)
{
    if (!subset) return intersection_matrix_ordered(g, g.ids());
    std::vector<std::string> order = *subset;
    std::sort(order.begin(), order.end());
    return intersection_matrix_ordered(g, order);
}

WeightedGraph induced_subgraph(const WeightedGraph& g, const std::vector<std::string>& ids)
{
    WeightedGraph out(g.kind());
    std::set<std::string> keep(ids.begin(), ids.end());
    for (const auto& id : keep) out.add_vertex(g.vertex(id));
    for (const auto& e : g.edges())
        if (keep.count(e.u) && keep.count(e.v)) out.add_edge(e.u, e.v, e.sign);
    return out;
}

std::vector<std::vector<std::string>> connected_components(const WeightedGraph& g)
{
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& v : g.vertices()) adj[v.id];
    for (const auto& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::set<std::string> seen;
    std::vector<std::vector<std::string>> out;
    for (const auto& v : g.vertices()) {
        if (seen.count(v.id)) continue;
        std::vector<std::string> comp;
        std::deque<std::string> queue{v.id};
        seen.insert(v.id);
        while (!queue.empty()) {
            std::string x = queue.front();
            queue.pop_front();
            comp.push_back(x);
            for (const auto& y : adj[x])
                if (seen.insert(y).second) queue.push_back(y);
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const WeightedGraph& g) { return connected_components(g).size() == 1; }

std::size_t first_betti(const WeightedGraph& g)
{
    const std::size_t comps = connected_components(g).size();
    return g.edges().size() + comps - g.size();
}

bool is_negative_definite(const WeightedGraph& g, const std::optional<std::vector<std::string>>& subset)
{
    const IntMatrix m = intersection_matrix(g, subset);
    const std::size_t n = m.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(i, j);
        Integer d = determinant(minor);
        if (k % 2 == 1) d = -d;
        if (d <= 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------- chain types

std::string ChainType::to_string() const
{
    std::string body;
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i;
        while (j < entries.size() && entries[j] == entries[i]) ++j;
        const std::size_t run = j - i;
        if (!body.empty()) body += ',';
        if (run >= 3) {
            body += "(" + std::to_string(entries[i]) + ")_" + std::to_string(run);
        } else {
            for (std::size_t k = i; k < j; ++k) {
                if (k > i) body += ',';
                body += std::to_string(entries[k]);
            }
        }
        i = j;
    }
    return circular ? "((" + body + "))" : "[" + body + "]";
}

ChainType parse_chain_type(const std::string& raw)
{
    std::string text;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
    ChainType out;
    std::string body;
    if (text.size() >= 4 && text.rfind("((", 0) == 0 && text.substr(text.size() - 2) == "))") {
        out.circular = true;
        body = text.substr(2, text.size() - 4);
    } else if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
        body = text.substr(1, text.size() - 2);
    } else {
        throw DomainError("chain type must look like [..] or ((..)): '" + raw + "'");
    }
    std::size_t i = 0;
    auto read_int = [&](std::size_t& k) -> long long {
        std::size_t start = k;
        if (k < body.size() && (body[k] == '-' || body[k] == '+')) ++k;
        while (k < body.size() && std::isdigit(static_cast<unsigned char>(body[k]))) ++k;
        if (start == k || (k == start + 1 && !std::isdigit(static_cast<unsigned char>(body[start]))))
            throw DomainError("bad chain type '" + raw + "'");
        return std::stoll(body.substr(start, k - start));
    };
    while (i < body.size()) {
        if (body[i] == '(') {
            ++i;
            const long long a = read_int(i);
            if (body.compare(i, 2, ")_") != 0) throw DomainError("bad run in chain type '" + raw + "'");
            i += 2;
            const long long k = read_int(i);
            if (k < 0) throw DomainError("negative run length in '" + raw + "'");
            for (long long r = 0; r < k; ++r) out.entries.push_back(a);
        } else {
            out.entries.push_back(read_int(i));
        }
        if (i < body.size()) {
            if (body[i] != ',') throw DomainError("bad chain type '" + raw + "'");
            ++i;
        }
    }
    return out;
}

WeightedGraph chain_graph(const ChainType& type, GraphKind kind)
{
    WeightedGraph g(kind);
    const std::size_t n = type.entries.size();
    const std::size_t width = std::to_string(n).size();
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) {
        std::string num = std::to_string(i + 1);
        ids.push_back("c" + std::string(width - num.size(), '0') + num);
        g.add_vertex(Vertex{ids.back(), -type.entries[i], 0, 0, ""});
    }
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(ids[i], ids[i + 1]);
    if (type.circular && n >= 2) g.add_edge(ids[n - 1], ids[0]);
    if (type.circular && n == 1) g.add_edge(ids[0], ids[0]);
    return g;
}

// ---------------------------------------------------------------- segments

namespace {

std::vector<long long> types_of(const WeightedGraph& g, const std::vector<std::string>& ids)
{
    std::vector<long long> t;
    for (const auto& id : ids) t.push_back(-g.vertex(id).weight);
    return t;
}

// Walks a path (or cycle) component starting at `start`, never reusing an edge.
std::vector<std::string> walk_component(const WeightedGraph& g, const std::set<std::string>& comp,
                                        const std::string& start)
{
    std::vector<std::string> order{start};
    std::set<std::size_t> used;
    std::string cur = start;
    for (;;) {
        std::optional<std::size_t> next;
        for (std::size_t i : g.incident_edges(cur)) {
            const Edge& e = g.edges()[i];
            if (used.count(i)) continue;
            if (!comp.count(e.u) || !comp.count(e.v)) continue;
            next = i;
            break;
        }
        if (!next) break;
        used.insert(*next);
        const Edge& e = g.edges()[*next];
        std::string nxt = e.other(cur);
        if (nxt == start) break;  // closed a cycle
        order.push_back(nxt);
        cur = nxt;
    }
    return order;
}

} // namespace

SegmentDecomposition classify_segments(const WeightedGraph& g)
{
    SegmentDecomposition out;
    std::set<std::string> branching;
    for (const auto& v : g.vertices())
        if (branching_number(g, v.id) >= 3 || !v.rational()) branching.insert(v.id);
    out.branching.assign(branching.begin(), branching.end());

    std::set<std::string> seen;
    for (const auto& v : g.vertices()) {
        if (branching.count(v.id) || seen.count(v.id)) continue;
        // component of g - B containing v
        std::set<std::string> comp;
        std::deque<std::string> queue{v.id};
        comp.insert(v.id);
        while (!queue.empty()) {
            std::string x = queue.front();
            queue.pop_front();
            for (const auto& e : g.edges()) {
                if (!e.touches(x)) continue;
                const std::string& y = e.other(x);
                if (branching.count(y) || comp.count(y)) continue;
                comp.insert(y);
                queue.push_back(y);
            }
        }
        seen.insert(comp.begin(), comp.end());

        std::map<std::string, int> inner_degree;
        std::map<std::string, std::vector<std::string>> outer;
        for (const auto& id : comp) inner_degree[id] = 0;
        for (const auto& e : g.edges()) {
            const bool a = comp.count(e.u) > 0, b = comp.count(e.v) > 0;
            if (a && b) {
                inner_degree[e.u] += 1;
                inner_degree[e.v] += 1;
            } else if (a) {
                outer[e.u].push_back(e.v);
            } else if (b) {
                outer[e.v].push_back(e.u);
            }
        }
        const bool circular = std::all_of(inner_degree.begin(), inner_degree.end(),
                                          [](const auto& kv) { return kv.second == 2; });
        Segment seg;
        if (circular) {
            std::vector<std::string> ring = walk_component(g, comp, *comp.begin());
            const std::size_t n = ring.size();
            std::vector<std::string> best;
            std::vector<long long> best_t;
            for (int dir = 0; dir < 2; ++dir)
                for (std::size_t s = 0; s < n; ++s) {
                    std::vector<std::string> cand;
                    for (std::size_t k = 0; k < n; ++k)
                        cand.push_back(dir == 0 ? ring[(s + k) % n] : ring[(s + n - k) % n]);
                    auto t = types_of(g, cand);
                    if (best.empty() || t < best_t || (t == best_t && cand < best)) {
                        best = cand;
                        best_t = t;
                    }
                }
            seg.vertices = best;
            seg.type = ChainType{best_t, true};
        } else {
            std::vector<std::string> ends;
            for (const auto& [id, d] : inner_degree)
                if (d <= 1) ends.push_back(id);
            std::vector<std::string> path = walk_component(g, comp, ends.front());
            auto is_free = [&](const std::string& id) { return outer[id].empty(); };
            const std::string& a = path.front();
            const std::string& b = path.back();
            bool twig = false;
            if (path.size() == 1) {
                twig = outer[a].size() == 1;
            } else {
                twig = is_free(a) != is_free(b);
            }
            if (twig && path.size() > 1) {
                if (!is_free(path.front())) std::reverse(path.begin(), path.end());
            } else if (path.size() > 1) {
                std::vector<std::string> rev(path.rbegin(), path.rend());
                auto t1 = types_of(g, path), t2 = types_of(g, rev);
                if (t2 < t1 || (t2 == t1 && rev < path)) path = rev;
            }
            seg.vertices = path;
            seg.type = ChainType{types_of(g, path), false};
            seg.twig = twig;
            seg.attach_first = outer[path.front()];
            seg.attach_last = outer[path.back()];
        }
        out.segments.push_back(std::move(seg));
    }
    std::sort(out.segments.begin(), out.segments.end(), [](const Segment& x, const Segment& y) {
        return *std::min_element(x.vertices.begin(), x.vertices.end()) <
               *std::min_element(y.vertices.begin(), y.vertices.end());
    });
    return out;
}

// ---------------------------------------------------------------- isomorphism

namespace {

// Dense view of a graph for the search routines.
struct Dense {
    std::vector<std::string> ids;
    std::vector<std::array<long long, 5>> vkey;      // weight, genus, boundary, loops+, loops-
    std::vector<std::vector<std::pair<int, int>>> pair;  // (#positive, #negative) edges i-j, i != j
};

Dense make_dense(const WeightedGraph& g)
{
    Dense d;
    d.ids = g.ids();
    const std::size_t n = d.ids.size();
    d.vkey.resize(n);
    d.pair.assign(n, std::vector<std::pair<int, int>>(n, {0, 0}));
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex& v = g.vertices()[i];
        d.vkey[i] = {v.weight, v.genus, v.boundary, 0, 0};
    }
    for (const auto& e : g.edges()) {
        const std::size_t a = g.index_of(e.u), b = g.index_of(e.v);
        if (a == b) {
            d.vkey[a][e.sign > 0 ? 3 : 4] += 1;
        } else {
            auto& p1 = d.pair[a][b];
            auto& p2 = d.pair[b][a];
            (e.sign > 0 ? p1.first : p1.second) += 1;
            (e.sign > 0 ? p2.first : p2.second) += 1;
        }
    }
    return d;
}

std::pair<int, int> edge_key(std::pair<int, int> p, SignMode mode)
{
    if (mode == SignMode::up_to_vertex_flips && p.first > p.second) std::swap(p.first, p.second);
    return p;
}

// Colour refinement over a list of dense graphs sharing one colour space.
std::vector<std::vector<int>> refine(const std::vector<const Dense*>& graphs,
                                     std::vector<std::vector<int>> colors, SignMode mode)
{
    using Sig = std::pair<int, std::vector<std::tuple<int, int, int>>>;
    std::size_t classes = 0;
    for (;;) {
        std::map<Sig, int> palette;
        std::vector<std::vector<Sig>> sigs(graphs.size());
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const Dense& d = *graphs[gi];
            const std::size_t n = d.ids.size();
            sigs[gi].resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                Sig s;
                s.first = colors[gi][i];
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i) continue;
                    auto k = edge_key(d.pair[i][j], mode);
                    if (k.first == 0 && k.second == 0) continue;
                    s.second.emplace_back(colors[gi][j], k.first, k.second);
                }
                std::sort(s.second.begin(), s.second.end());
                sigs[gi][i] = s;
                palette.emplace(s, 0);
            }
        }
        int next = 0;
        for (auto& kv : palette) kv.second = next++;
        for (std::size_t gi = 0; gi < graphs.size(); ++gi)
            for (std::size_t i = 0; i < sigs[gi].size(); ++i) colors[gi][i] = palette[sigs[gi][i]];
        if (palette.size() == classes) break;
        classes = palette.size();
    }
    return colors;
}

std::vector<std::vector<int>> initial_colors(const std::vector<const Dense*>& graphs)
{
    std::map<std::array<long long, 5>, int> palette;
    for (const Dense* d : graphs)
        for (const auto& k : d->vkey) palette.emplace(k, 0);
    int next = 0;
    for (auto& kv : palette) kv.second = next++;
    std::vector<std::vector<int>> colors;
    for (const Dense* d : graphs) {
        std::vector<int> c;
        for (const auto& k : d->vkey) c.push_back(palette[k]);
        colors.push_back(std::move(c));
    }
    return colors;
}

// For a complete vertex bijection, decide whether signs agree after flipping
// some vertices of the first graph.
bool signs_compatible(const Dense& a, const Dense& b, const std::vector<int>& phi)
{
    const std::size_t n = a.ids.size();
    // parity[i][j]: -1 free, 0 same flip state, 1 opposite
    std::vector<std::vector<std::pair<std::size_t, int>>> constraints(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto p = a.pair[i][j];
            if (p.first == 0 && p.second == 0) continue;
            auto q = b.pair[static_cast<std::size_t>(phi[i])][static_cast<std::size_t>(phi[j])];
            const bool same = p == q;
            const bool swapped = p.first == q.second && p.second == q.first;
            if (same && swapped) continue;
            if (!same && !swapped) return false;
            const int parity = same ? 0 : 1;
            constraints[i].emplace_back(j, parity);
            constraints[j].emplace_back(i, parity);
        }
    std::vector<int> state(n, -1);
    for (std::size_t s = 0; s < n; ++s) {
        if (state[s] != -1) continue;
        state[s] = 0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            std::size_t x = queue.front();
            queue.pop_front();
            for (auto [y, par] : constraints[x]) {
                const int want = state[x] ^ par;
                if (state[y] == -1) {
                    state[y] = want;
                    queue.push_back(y);
                } else if (state[y] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace

std::optional<VertexMap> find_isomorphism(const WeightedGraph& g1, const WeightedGraph& g2, SignMode mode)
{
    if (g1.size() != g2.size() || g1.edges().size() != g2.edges().size()) return std::nullopt;
    const Dense a = make_dense(g1), b = make_dense(g2);
    const std::size_t n = a.ids.size();
    auto colors = refine({&a, &b}, initial_colors({&a, &b}), mode);
    {
        auto h1 = colors[0], h2 = colors[1];
        std::sort(h1.begin(), h1.end());
        std::sort(h2.begin(), h2.end());
        if (h1 != h2) return std::nullopt;
    }
    std::map<int, std::size_t> class_size;
    for (int c : colors[0]) class_size[c] += 1;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return class_size[colors[0][x]] < class_size[colors[0][y]];
    });

    std::vector<int> phi(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
        if (depth == n) return mode == SignMode::exact || signs_compatible(a, b, phi);
        const std::size_t v = order[depth];
        for (std::size_t u = 0; u < n; ++u) {
            if (used[u] || colors[1][u] != colors[0][v]) continue;
            if (a.vkey[v] != b.vkey[u]) continue;
            bool ok = true;
            for (std::size_t k = 0; k < depth && ok; ++k) {
                const std::size_t w = order[k];
                const auto pu = static_cast<std::size_t>(phi[w]);
                if (edge_key(a.pair[v][w], mode) != edge_key(b.pair[u][pu], mode)) ok = false;
            }
            if (!ok) continue;
            phi[v] = static_cast<int>(u);
            used[u] = true;
            if (extend(depth + 1)) return true;
            used[u] = false;
            phi[v] = -1;
        }
        return false;
    };
    if (!extend(0)) return std::nullopt;
    VertexMap out;
    for (std::size_t i = 0; i < n; ++i) out[a.ids[i]] = b.ids[static_cast<std::size_t>(phi[i])];
    return out;
}

bool graphs_isomorphic(const WeightedGraph& g1, const WeightedGraph& g2, SignMode mode)
{
    return find_isomorphism(g1, g2, mode).has_value();
}

namespace {

// Vertex flips (0/1 per dense index) that make every pair with unequal
// positive and negative counts lean positive, found by BFS in perm order.
// Pairs with equal counts are unchanged by flips and impose nothing.
std::vector<int> flip_states(const Dense& d, const std::vector<std::size_t>& perm)
{
    const std::size_t n = perm.size();
    std::vector<int> flip(n, -1);
    for (std::size_t s : perm) {
        if (flip[s] != -1) continue;
        flip[s] = 0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            const std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t y : perm) {
                const auto p = d.pair[x][y];
                if (y == x || flip[y] != -1 || p.first == p.second) continue;
                flip[y] = flip[x] ^ (p.first > p.second ? 0 : 1);
                queue.push_back(y);
            }
        }
    }
    return flip;
}

std::vector<long long> encode(const Dense& d, const std::vector<std::size_t>& perm, SignMode mode)
{
    std::vector<int> flip(perm.size(), 0);
    if (mode == SignMode::up_to_vertex_flips) flip = flip_states(d, perm);
    std::vector<long long> code;
    code.push_back(static_cast<long long>(perm.size()));
    for (std::size_t i : perm) code.insert(code.end(), d.vkey[i].begin(), d.vkey[i].end());
    for (std::size_t x = 0; x < perm.size(); ++x)
        for (std::size_t y = x + 1; y < perm.size(); ++y) {
            auto k = d.pair[perm[x]][perm[y]];
            if (flip[perm[x]] != flip[perm[y]]) std::swap(k.first, k.second);
            code.push_back(k.first);
            code.push_back(k.second);
        }
    return code;
}

struct CanonSearch {
    const Dense& d;
    SignMode mode;
    std::vector<long long> best;
    std::vector<std::size_t> best_perm;

    void run(std::vector<int> colors)
    {
        colors = refine({&d}, {colors}, mode)[0];
        const std::size_t n = colors.size();
        std::map<int, std::vector<std::size_t>> cells;
        for (std::size_t i = 0; i < n; ++i) cells[colors[i]].push_back(i);
        const std::vector<std::size_t>* target = nullptr;
        for (const auto& [c, members] : cells)
            if (members.size() > 1) {
                target = &members;
                break;
            }
        if (!target) {
            std::vector<std::size_t> perm(n);
            for (std::size_t i = 0; i < n; ++i) perm[static_cast<std::size_t>(colors[i])] = i;
            auto code = encode(d, perm, mode);
            if (best.empty() || code < best) {
                best = std::move(code);
                best_perm = std::move(perm);
            }
            return;
        }
        const std::vector<std::size_t> members = *target;
        for (std::size_t v : members) {
            // individualise v: it gets a colour just below its cell
            std::vector<int> next(n);
            for (std::size_t i = 0; i < n; ++i) next[i] = 2 * colors[i] + 1;
            next[v] -= 1;
            run(next);
        }
    }
};

} // namespace

std::vector<std::string> canonical_order(const WeightedGraph& g, SignMode mode)
{
    const Dense d = make_dense(g);
    if (d.ids.empty()) return {};
    CanonSearch search{d, mode, {}, {}};
    search.run(initial_colors({&d})[0]);
    std::vector<std::string> out;
    for (std::size_t i : search.best_perm) out.push_back(d.ids[i]);
    return out;
}

std::string canonical_key(const WeightedGraph& g, SignMode mode)
{
    const Dense d = make_dense(g);
    if (d.ids.empty()) return "0";
    CanonSearch search{d, mode, {}, {}};
    search.run(initial_colors({&d})[0]);
    std::string key;
    for (long long x : search.best) key += std::to_string(x) + ",";
    return key;
}

WeightedGraph flip_vertex(const WeightedGraph& g, const std::string& id)
{
    WeightedGraph out = g;
    for (std::size_t i : g.incident_edges(id)) {
        const Edge& e = g.edges()[i];
        if (!e.is_loop()) out.set_edge_sign(i, -e.sign);
    }
    return out;
}

WeightedGraph reduce_signs(const WeightedGraph& g)
{
    WeightedGraph out = g;
    std::set<std::string> seen;
    for (const auto& root : g.ids()) {
        if (seen.count(root)) continue;
        seen.insert(root);
        std::deque<std::string> queue{root};
        while (!queue.empty()) {
            std::string x = queue.front();
            queue.pop_front();
            for (std::size_t i : out.incident_edges(x)) {
                const Edge e = out.edges()[i];
                if (e.is_loop()) continue;
                const std::string y = e.other(x);
                if (seen.count(y)) continue;
                seen.insert(y);
                if (e.sign < 0) out = flip_vertex(out, y);
                queue.push_back(y);
            }
        }
    }
    return out;
}

WeightedGraph canonical_relabel(const WeightedGraph& g, SignMode mode)
{
    const Dense d = make_dense(g);
    std::vector<std::size_t> perm;
    if (!d.ids.empty()) {
        CanonSearch search{d, mode, {}, {}};
        search.run(initial_colors({&d})[0]);
        perm = search.best_perm;
    }
    WeightedGraph src = g;
    if (mode == SignMode::up_to_vertex_flips) {
        const auto flip = flip_states(d, perm);
        for (std::size_t i = 0; i < flip.size(); ++i)
            if (flip[i]) src = flip_vertex(src, d.ids[i]);
    }
    const std::size_t width = std::to_string(perm.empty() ? 0 : perm.size() - 1).size();
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        std::string num = std::to_string(i);
        rename[d.ids[perm[i]]] = "n" + std::string(width - num.size(), '0') + num;
    }
    WeightedGraph out(g.kind());
    for (const auto& v : src.vertices()) {
        Vertex w = v;
        w.id = rename[v.id];
        out.add_vertex(std::move(w));
    }
    // edges listed in canonical order for stable output
    std::vector<Edge> edges;
    for (const auto& e : src.edges()) {
        Edge f{rename[e.u], rename[e.v], e.sign};
        if (f.v < f.u) std::swap(f.u, f.v);
        edges.push_back(f);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.u, x.v, x.sign) < std::tie(y.u, y.v, y.sign);
    });
    for (const auto& e : edges) out.add_edge(e.u, e.v, e.sign);
    return out;
}

} // namespace plumbcalc
