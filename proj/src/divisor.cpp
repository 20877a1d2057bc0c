#include "plumbcalc/divisor.hpp"

#include "plumbcalc/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

namespace plumbcalc {

namespace {

void require_divisor(const WeightedGraph& g, const char* op)
{
    if (g.kind() != GraphKind::divisor) throw DomainError(std::string(op) + " needs a divisor graph");
}

bool is_branch(const WeightedGraph& g, const std::string& id)
{
    return branching_number(g, id) >= 3 || !g.vertex(id).rational();
}

WeightedGraph rename_vertex(const WeightedGraph& g, const std::string& from, const std::string& to)
{
    if (from == to) return g;
    WeightedGraph out(g.kind());
    for (const auto& v : g.vertices()) {
        Vertex w = v;
        if (w.id == from) w.id = to;
        out.add_vertex(std::move(w));
    }
    for (const auto& e : g.edges()) {
        auto fix = [&](const std::string& x) { return x == from ? to : x; };
        out.add_edge(fix(e.u), fix(e.v), e.sign);
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------- blowups and blowdowns

WeightedGraph blow_up(const WeightedGraph& g, const BlowupCenter& c, const std::string& new_id)
{
    require_divisor(g, "blow_up");
    WeightedGraph out = g;
    const std::string e = new_id.empty() ? g.fresh_id("E") : new_id;
    if (g.has_vertex(e)) throw DomainError("blowup id '" + e + "' is already a vertex");
    if (c.kind == BlowupCenter::Kind::vertex) {
        if (!g.has_vertex(c.a)) throw DomainError("blowup center '" + c.a + "' not found");
        out.add_vertex(Vertex{e, -1, 0, 0, ""});
        out.add_edge(c.a, e);
        out.add_weight(c.a, -1);
    } else {
        if (!g.has_vertex(c.a) || !g.has_vertex(c.b) || g.edge_count_between(c.a, c.b) == 0)
            throw DomainError("blowup center edge '" + c.a + "'-'" + c.b + "' not found");
        out.remove_edge(c.a, c.b);
        out.add_vertex(Vertex{e, -1, 0, 0, ""});
        out.add_edge(c.a, e);
        out.add_edge(e, c.b);
        out.add_weight(c.a, -1);
        out.add_weight(c.b, -1);
    }
    return out;
}

std::optional<std::string> blow_down_obstruction(const WeightedGraph& g, const std::string& v)
{
    if (g.kind() != GraphKind::divisor) return "not a divisor graph";
    if (!g.has_vertex(v)) return "unknown vertex '" + v + "'";
    const Vertex& x = g.vertex(v);
    if (x.weight != -1) return "weight of '" + v + "' is " + std::to_string(x.weight) + ", not -1";
    if (x.genus != 0) return "'" + v + "' has nonzero genus";
    if (x.boundary != 0) return "'" + v + "' has boundary circles";
    if (g.loop_count(v) > 0) return "'" + v + "' is a loop endpoint";
    const auto nbrs = g.neighbors(v);
    for (const auto& n : nbrs)
        if (g.edge_count_between(v, n) != 1) return "'" + v + "' meets '" + n + "' more than once";
    if (branching_number(g, v) > 2) return "branching number of '" + v + "' exceeds 2";
    if (nbrs.size() == 2 && g.edge_count_between(nbrs[0], nbrs[1]) > 0)
        return "neighbours '" + nbrs[0] + "' and '" + nbrs[1] + "' of '" + v +
               "' already meet; the image would not be snc";
    return std::nullopt;
}

WeightedGraph blow_down(const WeightedGraph& g, const std::string& v)
{
    if (auto why = blow_down_obstruction(g, v)) throw DomainError("blow_down: " + *why);
    const auto nbrs = g.neighbors(v);
    WeightedGraph out = g;
    out.remove_vertex(v);
    for (const auto& n : nbrs) out.add_weight(n, 1);
    if (nbrs.size() == 2) out.add_edge(nbrs[0], nbrs[1]);
    return out;
}

bool is_superfluous(const WeightedGraph& g, const std::string& v)
{
    return branching_number(g, v) >= 1 && !blow_down_obstruction(g, v);
}

bool is_snc_minimal(const WeightedGraph& g)
{
    return std::none_of(g.vertices().begin(), g.vertices().end(),
                        [&](const Vertex& x) { return is_superfluous(g, x.id); });
}

Rewrite snc_minimalize(const WeightedGraph& g)
{
    require_divisor(g, "snc_minimalize");
    Rewrite r{g, {}};
    for (;;) {
        auto it = std::find_if(r.graph.vertices().begin(), r.graph.vertices().end(),
                               [&](const Vertex& x) { return is_superfluous(r.graph, x.id); });
        if (it == r.graph.vertices().end()) break;
        const std::string id = it->id;
        r.graph = blow_down(r.graph, id);
        r.log.push_back(Move::blowdown(id));
        if (r.log.size() > kMoveBudget) throw InternalError("snc_minimalize exceeded the move budget");
    }
    return r;
}

// ---------------------------------------------------------------- flows

WeightedGraph elementary_flow(const WeightedGraph& g, const std::string& z, const std::string& toward)
{
    require_divisor(g, "elementary_flow");
    const Vertex& c = g.vertex(z);
    if (c.weight != 0) throw DomainError("elementary_flow: weight of '" + z + "' is not 0");
    if (!c.rational()) throw DomainError("elementary_flow: '" + z + "' is not rational");
    const int beta = branching_number(g, z);
    if (beta == 0 || beta > 2) throw DomainError("elementary_flow: branching number of '" + z + "' must be 1 or 2");
    const auto nbrs = g.neighbors(z);
    const std::string e = g.fresh_id("E");
    WeightedGraph out;
    if (beta == 2) {
        if (std::find(nbrs.begin(), nbrs.end(), toward) == nbrs.end())
            throw DomainError("elementary_flow: '" + toward + "' is not a neighbour of '" + z + "'");
        const std::string other = nbrs[0] == toward ? nbrs[1] : nbrs[0];
        out = blow_up(g, BlowupCenter::on_edge(z, other), e);
    } else if (toward == z) {
        out = blow_up(g, BlowupCenter::on_edge(z, nbrs[0]), e);
    } else {
        if (toward != nbrs[0])
            throw DomainError("elementary_flow: '" + toward + "' is not a neighbour of '" + z + "'");
        out = blow_up(g, BlowupCenter::on_vertex(z), e);
    }
    out = blow_down(out, z);
    out = rename_vertex(out, e, z);
    out.set_label(z, c.label);
    return out;
}

WeightedGraph apply_move(const WeightedGraph& g, const Move& m)
{
    switch (m.type) {
    case Move::Type::blowup:
        if (m.new_id.empty()) throw DomainError("logged blowup lacks the exceptional vertex id");
        return blow_up(g, m.center, m.new_id);
    case Move::Type::blowdown:
        return blow_down(g, m.vertex);
    case Move::Type::flow:
        return elementary_flow(g, m.vertex, m.toward);
    }
    throw InternalError("unknown move type");
}

WeightedGraph replay(const WeightedGraph& g, const RewriteLog& log)
{
    WeightedGraph cur = g;
    for (const auto& m : log) cur = apply_move(cur, m);
    return cur;
}

// ---------------------------------------------------------------- standard forms

namespace {

bool linear_standard(const std::vector<long long>& t)
{
    std::size_t m = 0;
    while (m < t.size() && t[m] == 0) ++m;
    if (m == t.size()) return true;  // [(0)_n]: odd n is the first form, even n the second with no a_i
    if (m % 2 == 1) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(m), t.end(), [](long long a) { return a >= 2; });
}

bool circular_standard_at(const std::vector<long long>& t)
{
    const std::size_t n = t.size();
    std::size_t m = 0;
    while (m < n && t[m] == 0) ++m;
    if (m == n) return true;
    // ((0)_k, a) with a >= 0
    if (m == n - 1 && t[n - 1] >= 0) return true;
    // ((0)_{2k}, 1, 1)
    if (m % 2 == 0 && m == n - 2 && t[n - 2] == 1 && t[n - 1] == 1) return true;
    if (m % 2 == 1) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(m), t.end(), [](long long a) { return a >= 2; });
}

} // namespace

bool chain_type_is_standard(const ChainType& type)
{
    const auto& t = type.entries;
    if (!type.circular) {
        std::vector<long long> r(t.rbegin(), t.rend());
        return linear_standard(t) || linear_standard(r);
    }
    const std::size_t n = t.size();
    if (n == 0) return true;
    for (int dir = 0; dir < 2; ++dir)
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<long long> c(n);
            for (std::size_t k = 0; k < n; ++k) c[k] = dir == 0 ? t[(s + k) % n] : t[(s + n - k) % n];
            if (circular_standard_at(c)) return true;
        }
    return false;
}

StandardVerdict is_standard(const WeightedGraph& g)
{
    StandardVerdict v;
    for (auto& seg : classify_segments(g).segments) {
        const bool ok = chain_type_is_standard(seg.type);
        v.standard = v.standard && ok;
        v.segments.emplace_back(std::move(seg), ok);
    }
    return v;
}

namespace {

// Applies moves to a working graph and records them.
struct Engine {
    WeightedGraph g;
    RewriteLog log;

    void apply(const Move& m)
    {
        g = apply_move(g, m);
        log.push_back(m);
        if (log.size() > kMoveBudget) throw InternalError("standardize exceeded the move budget");
    }
    std::string blowup(const BlowupCenter& c)
    {
        const std::string id = g.fresh_id("E");
        apply(Move::blowup(c, id));
        return id;
    }
    void blowdown(const std::string& v) { apply(Move::blowdown(v)); }
    void flow(const std::string& z, const std::string& toward, long long times)
    {
        for (long long i = 0; i < times; ++i) apply(Move::flow(z, toward));
    }
};

long long type_of(const WeightedGraph& g, const std::string& id) { return -g.vertex(id).weight; }

struct ChainView {
    std::optional<std::string> left_out;
    std::vector<std::string> s;
    std::optional<std::string> right_out;
};

ChainView walk_chain(const WeightedGraph& g, const std::optional<std::string>& left_out, const std::string& left_end)
{
    ChainView view{left_out, {left_end}, std::nullopt};
    std::optional<std::string> prev = left_out;
    std::string cur = left_end;
    for (;;) {
        std::vector<std::string> next;
        for (const auto& n : g.neighbors(cur))
            if (!prev || n != *prev) next.push_back(n);
        if (next.empty()) break;
        // the left end may see two branching vertices when the chain has one vertex
        std::string n = next.front();
        if (is_branch(g, n)) {
            view.right_out = n;
            break;
        }
        view.s.push_back(n);
        prev = cur;
        cur = n;
    }
    return view;
}

// Moves the type of the neighbour `from` of the 0-vertex z onto z's other side,
// one unit flow at a time, until `from` has type 0.
void drain_into_other_side(Engine& e, const std::string& z, const std::string& from,
                           const std::optional<std::string>& other_side)
{
    const long long y = type_of(e.g, from);
    if (y > 0)
        e.flow(z, from, y);
    else if (y < 0)
        e.flow(z, other_side ? *other_side : z, -y);
}

// Standardizes one chain segment, keeping zeros packed at its left end.
void standardize_chain(Engine& e, const std::optional<std::string>& left_out, std::string left_end)
{
    for (std::size_t guard = 0;; ++guard) {
        if (guard > kMoveBudget) throw InternalError("standardize: chain loop did not terminate");
        const ChainView view = walk_chain(e.g, left_out, left_end);
        const auto& s = view.s;
        const std::size_t n = s.size();
        std::vector<long long> t;
        for (const auto& id : s) t.push_back(type_of(e.g, id));
        if (chain_type_is_standard(ChainType{t, false})) return;

        auto left_of = [&](std::size_t i) -> std::optional<std::string> {
            return i == 0 ? view.left_out : std::optional<std::string>(s[i - 1]);
        };
        auto right_of = [&](std::size_t i) -> std::optional<std::string> {
            return i + 1 == n ? view.right_out : std::optional<std::string>(s[i + 1]);
        };
        auto contract = [&](std::size_t i) {
            if (i == 0) {
                if (n == 1) {
                    e.blowdown(s[0]);
                    return false;  // segment vanished
                }
                left_end = s[1];
            }
            e.blowdown(s[i]);
            return true;
        };

        // (-1)-vertices away from zeros are simply contracted
        bool done_something = false;
        for (std::size_t i = 0; i < n && !done_something; ++i) {
            if (t[i] != 1 || blow_down_obstruction(e.g, s[i])) continue;
            if ((i > 0 && t[i - 1] == 0) || (i + 1 < n && t[i + 1] == 0)) continue;
            if (!contract(i)) return;
            done_something = true;
        }
        if (done_something) continue;

        std::size_t m = 0;
        while (m < n && t[m] == 0) ++m;
        if (m == n) return;

        if (m % 2 == 1) {
            if (m >= 3) {
                // push the last pair of the zero block past its right neighbour
                drain_into_other_side(e, s[m - 1], s[m], s[m - 2]);
            } else {
                drain_into_other_side(e, s[0], s[1], view.left_out);
            }
            continue;
        }

        std::size_t j = m;
        while (j < n && t[j] >= 2) ++j;
        if (j == n) return;  // cannot happen: the chain would be standard

        if (t[j] == 0) {
            if (j + 1 < n && t[j + 1] == 0) {
                // pair at j, j+1 travels left past s[j-1]
                drain_into_other_side(e, s[j], s[j - 1], s[j + 1]);
            } else if (j + 1 < n) {
                drain_into_other_side(e, s[j], s[j + 1], left_of(j));
            } else {
                drain_into_other_side(e, s[j], s[j - 1], view.right_out);
            }
            continue;
        }
        if (t[j] == 1) {
            if (auto why = blow_down_obstruction(e.g, s[j]))
                throw OutOfScopeError("standardize: cannot contract (-1)-vertex '" + s[j] + "': " + *why);
            if (!contract(j)) return;
            continue;
        }
        // weight w = -t[j] >= 1: blow up w times on s[j] to bring it to 0, then
        // turn the adjacent exceptional vertex into a 0 as well
        const long long w = -t[j];
        const auto target = right_of(j);
        std::string last = target ? e.blowup(BlowupCenter::on_edge(s[j], *target)) : e.blowup(BlowupCenter::on_vertex(s[j]));
        for (long long k = 1; k < w; ++k) last = e.blowup(BlowupCenter::on_edge(s[j], last));
        e.flow(s[j], last, 1);
    }
}

// Breadth-first search for a short move sequence that standardizes a cycle.
void standardize_cycle(Engine& e, std::vector<std::string> ring)
{
    struct Step {
        int kind;  // 0 flow, 1 blowdown, 2 blowup
        std::size_t pos;
        int dir;   // flow: +1 toward pos+1, -1 toward pos-1
    };
    struct Node {
        std::vector<long long> t;
        std::size_t parent;
        Step step;
    };
    auto key_of = [](const std::vector<long long>& t) {
        const std::size_t n = t.size();
        std::vector<long long> best;
        for (int dir = 0; dir < 2; ++dir)
            for (std::size_t s = 0; s < n; ++s) {
                std::vector<long long> c(n);
                for (std::size_t k = 0; k < n; ++k) c[k] = dir == 0 ? t[(s + k) % n] : t[(s + n - k) % n];
                if (best.empty() || c < best) best = c;
            }
        std::string key;
        for (long long x : best) key += std::to_string(x) + ",";
        return key;
    };

    std::vector<long long> t0;
    for (const auto& id : ring) t0.push_back(type_of(e.g, id));
    long long bound = 3;
    for (long long x : t0) bound = std::max(bound, std::abs(x) + 3);
    const std::size_t max_len = t0.size() + 3;
    const std::size_t max_states = 200000;

    std::vector<Node> nodes{{t0, 0, {0, 0, 0}}};
    std::unordered_map<std::string, std::size_t> seen{{key_of(t0), 0}};
    std::optional<std::size_t> goal;
    if (chain_type_is_standard(ChainType{t0, true})) goal = 0;
    for (std::size_t head = 0; head < nodes.size() && !goal; ++head) {
        if (nodes.size() > max_states) break;
        const std::vector<long long> t = nodes[head].t;
        const std::size_t n = t.size();
        std::vector<std::pair<std::vector<long long>, Step>> succ;
        for (std::size_t i = 0; i < n; ++i) {
            if (t[i] != 0) continue;
            for (int dir : {1, -1}) {
                auto u = t;
                const std::size_t to = (i + n + static_cast<std::size_t>(dir == 1 ? 1 : n - 1)) % n;
                const std::size_t from = (i + n + static_cast<std::size_t>(dir == 1 ? n - 1 : 1)) % n;
                u[to] -= 1;
                u[from] += 1;
                succ.push_back({u, {0, i, dir}});
            }
        }
        if (n >= 4)
            for (std::size_t i = 0; i < n; ++i) {
                if (t[i] != 1) continue;
                auto u = t;
                u[(i + 1) % n] -= 1;
                u[(i + n - 1) % n] -= 1;
                u.erase(u.begin() + static_cast<std::ptrdiff_t>(i));
                succ.push_back({u, {1, i, 0}});
            }
        if (n < max_len)
            for (std::size_t i = 0; i < n; ++i) {
                auto u = t;
                u[i] += 1;
                u[(i + 1) % n] += 1;
                u.insert(u.begin() + static_cast<std::ptrdiff_t>(i + 1), 1);
                succ.push_back({u, {2, i, 0}});
            }
        for (auto& [u, step] : succ) {
            if (std::any_of(u.begin(), u.end(), [&](long long x) { return std::abs(x) > bound; })) continue;
            auto key = key_of(u);
            if (seen.count(key)) continue;
            seen.emplace(key, nodes.size());
            const bool hit = chain_type_is_standard(ChainType{u, true});
            nodes.push_back({std::move(u), head, step});
            if (hit) {
                goal = nodes.size() - 1;
                break;
            }
        }
    }
    if (!goal) throw OutOfScopeError("standardize: no standard form found for circular segment " +
                                     ChainType{t0, true}.to_string() + " within the search bound");

    std::vector<Step> path;
    for (std::size_t k = *goal; k != 0; k = nodes[k].parent) path.push_back(nodes[k].step);
    std::reverse(path.begin(), path.end());
    for (const Step& st : path) {
        const std::size_t n = ring.size();
        if (st.kind == 0) {
            const std::size_t to = st.dir == 1 ? (st.pos + 1) % n : (st.pos + n - 1) % n;
            e.flow(ring[st.pos], ring[to], 1);
        } else if (st.kind == 1) {
            e.blowdown(ring[st.pos]);
            ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(st.pos));
        } else {
            const std::string id = e.blowup(BlowupCenter::on_edge(ring[st.pos], ring[(st.pos + 1) % n]));
            ring.insert(ring.begin() + static_cast<std::ptrdiff_t>(st.pos + 1), id);
        }
    }
}

} // namespace

Rewrite standardize(const WeightedGraph& g)
{
    require_divisor(g, "standardize");
    g.validate();
    if (is_standard(g).standard) return {g, {}};

    Engine e;
    {
        Rewrite r = snc_minimalize(g);
        e.g = std::move(r.graph);
        e.log = std::move(r.log);
    }
    for (std::size_t guard = 0;; ++guard) {
        if (guard > kMoveBudget) throw InternalError("standardize: segment loop did not terminate");
        const StandardVerdict verdict = is_standard(e.g);
        if (verdict.standard) break;
        const auto it = std::find_if(verdict.segments.begin(), verdict.segments.end(),
                                     [](const auto& p) { return !p.second; });
        const Segment& seg = it->first;
        if (seg.type.circular) {
            standardize_cycle(e, seg.vertices);
            continue;
        }
        const bool first_free = seg.attach_first.empty();
        const bool last_free = seg.attach_last.empty();
        if (seg.twig || (first_free && last_free)) {
            standardize_chain(e, std::nullopt, seg.vertices.front());
        } else if (seg.vertices.size() == 1) {
            const auto& att = seg.attach_first;
            standardize_chain(e, *std::min_element(att.begin(), att.end()), seg.vertices.front());
        } else {
            // anchor at the end attached to the smaller branching vertex
            const std::string& bf = seg.attach_first.front();
            const std::string& bl = seg.attach_last.front();
            if (bl < bf)
                standardize_chain(e, bl, seg.vertices.back());
            else
                standardize_chain(e, bf, seg.vertices.front());
        }
    }
    return {e.g, e.log};
}

// ---------------------------------------------------------------- barks

BarkVector bark(const WeightedGraph& g, const std::vector<std::string>& twig)
{
    if (twig.empty()) throw DomainError("bark: empty twig");
    std::set<std::string> distinct(twig.begin(), twig.end());
    if (distinct.size() != twig.size()) throw DomainError("bark: twig repeats a vertex");
    for (std::size_t i = 0; i < twig.size(); ++i) {
        const Vertex& v = g.vertex(twig[i]);
        if (!v.rational()) throw DomainError("bark: twig vertex '" + v.id + "' is not rational");
        if (v.weight > -2) throw DomainError("bark: twig vertex '" + v.id + "' has weight above -2");
        if (branching_number(g, v.id) > 2) throw DomainError("bark: twig vertex '" + v.id + "' is branching");
        if (g.loop_count(v.id) > 0) throw DomainError("bark: twig vertex '" + v.id + "' carries a loop");
        if (i + 1 < twig.size() && g.edge_count_between(twig[i], twig[i + 1]) != 1)
            throw DomainError("bark: '" + twig[i] + "' and '" + twig[i + 1] + "' are not consecutive in a chain");
    }
    if (branching_number(g, twig.front()) > 1) throw DomainError("bark: first twig vertex '" + twig.front() + "' is not a tip");
    for (std::size_t i = 0; i < twig.size(); ++i)
        for (std::size_t k = i + 2; k < twig.size(); ++k)
            if (g.edge_count_between(twig[i], twig[k]) > 0) throw DomainError("bark: twig is not a chain");

    const IntMatrix m = intersection_matrix_ordered(g, twig);
    std::vector<Rational> rhs(twig.size(), Rational(0));
    rhs[0] = -1;
    auto sol = solve_rational(m, rhs);
    if (!sol) throw InternalError("bark: singular intersection matrix on an admissible twig");
    BarkVector out;
    for (std::size_t i = 0; i < twig.size(); ++i) {
        if ((*sol)[i] <= 0 || (*sol)[i] >= 1) throw InternalError("bark: coefficient outside (0,1)");
        out[twig[i]] = (*sol)[i];
    }
    return out;
}

std::vector<std::vector<std::string>> admissible_twigs(const WeightedGraph& g)
{
    auto admissible = [&](const std::string& id) {
        const Vertex& v = g.vertex(id);
        return v.rational() && v.weight <= -2 && g.loop_count(id) == 0 && branching_number(g, id) <= 2;
    };
    std::vector<std::vector<std::string>> out;
    for (const auto& v : g.vertices()) {
        if (branching_number(g, v.id) != 1 || !admissible(v.id)) continue;
        std::vector<std::string> twig{v.id};
        std::string prev = v.id;
        std::string cur = g.neighbors(v.id).front();
        bool reached_other_tip = false;
        while (admissible(cur)) {
            twig.push_back(cur);
            const auto nbrs = g.neighbors(cur);
            auto next = std::find_if(nbrs.begin(), nbrs.end(), [&](const std::string& n) { return n != prev; });
            if (next == nbrs.end()) {
                reached_other_tip = true;
                break;
            }
            prev = cur;
            cur = *next;
        }
        // a chain made entirely of admissible vertices is not a twig of anything larger
        if (reached_other_tip) continue;
        out.push_back(std::move(twig));
    }
    return out;
}

std::map<std::string, Rational> d_sharp_coefficients(const WeightedGraph& g)
{
    require_divisor(g, "d_sharp_coefficients");
    if (g.empty() || !is_connected(g)) throw DomainError("d_sharp_coefficients: graph must be connected and non-empty");
    if (!is_snc_minimal(g)) throw DomainError("d_sharp_coefficients: graph is not snc-minimal");
    if (is_negative_definite(g)) throw DomainError("d_sharp_coefficients: graph is negative definite");
    std::map<std::string, Rational> out;
    for (const auto& v : g.vertices()) out[v.id] = 1;
    for (const auto& twig : admissible_twigs(g))
        for (const auto& [id, c] : bark(g, twig)) out[id] = 1 - c;
    return out;
}

// ---------------------------------------------------------------- half-point attachment

Rewrite half_point_attach(const WeightedGraph& g, const std::string& a)
{
    require_divisor(g, "half_point_attach");
    const Vertex& av = g.vertex(a);
    if (av.weight != -1) throw DomainError("half_point_attach: weight of '" + a + "' is not -1");
    if (!av.rational()) throw DomainError("half_point_attach: '" + a + "' is not rational");
    if (branching_number(g, a) != 1)
        throw DomainError("half_point_attach: '" + a + "' must meet the rest of the graph exactly once");

    Rewrite r{g, {}};
    std::vector<std::string> raised = g.neighbors(a);
    r.graph = blow_down(r.graph, a);
    r.log.push_back(Move::blowdown(a));
    for (;;) {
        std::vector<std::string> candidates;
        for (const auto& id : raised)
            if (r.graph.has_vertex(id) && is_superfluous(r.graph, id)) candidates.push_back(id);
        if (candidates.empty()) break;
        // prefer the twig side: tips first, then the lowest id
        std::sort(candidates.begin(), candidates.end(), [&](const std::string& x, const std::string& y) {
            const int bx = branching_number(r.graph, x), by = branching_number(r.graph, y);
            return bx != by ? bx < by : x < y;
        });
        const std::string pick = candidates.front();
        raised = r.graph.neighbors(pick);
        r.graph = blow_down(r.graph, pick);
        r.log.push_back(Move::blowdown(pick));
        if (r.log.size() > kMoveBudget) throw InternalError("half_point_attach exceeded the move budget");
    }
    return r;
}

} // namespace plumbcalc
