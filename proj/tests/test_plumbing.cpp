#include "support.hpp"

#include "plumbcalc/errors.hpp"
#include "plumbcalc/family.hpp"
#include "plumbcalc/io.hpp"
#include "plumbcalc/plumbing.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace plumbcalc;
using namespace testing_support;

namespace {

WeightedGraph plumbing_chain(const std::vector<long long>& weights, const std::vector<int>& signs = {})
{
    WeightedGraph g(GraphKind::plumbing);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        g.add_vertex({"c" + std::to_string(i), weights[i], 0, 0, ""});
        if (i > 0) g.add_edge("c" + std::to_string(i - 1), "c" + std::to_string(i), signs.empty() ? 1 : signs[i - 1]);
    }
    return g;
}

// Centre "z" with twigs t<k>_<i>, listed from the centre outwards as positive types.
WeightedGraph star(long long centre, const std::vector<std::vector<long long>>& twigs)
{
    WeightedGraph g(GraphKind::plumbing);
    g.add_vertex({"z", centre, 0, 0, ""});
    for (std::size_t k = 0; k < twigs.size(); ++k) {
        std::string prev = "z";
        for (std::size_t i = 0; i < twigs[k].size(); ++i) {
            const std::string id = "t" + std::to_string(k) + "_" + std::to_string(i);
            g.add_vertex({id, -twigs[k][i], 0, 0, ""});
            g.add_edge(prev, id);
            prev = id;
        }
    }
    return g;
}

WeightedGraph negated(const WeightedGraph& g)
{
    WeightedGraph out(g.kind());
    for (auto v : g.vertices()) {
        v.weight = -v.weight;
        out.add_vertex(v);
    }
    for (const auto& e : g.edges()) out.add_edge(e.u, e.v, -e.sign);
    return out;
}

std::size_t edge_index(const WeightedGraph& g, const std::string& u, const std::string& v)
{
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const Edge& e = g.edges()[i];
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return i;
    }
    FAIL("no edge " << u << " - " << v);
    return 0;
}

// a1 - 1/(a2 - 1/(...)) evaluated directly.
Rational cf_value(const std::vector<long long>& a)
{
    Rational x = a.back();
    for (auto it = a.rbegin() + 1; it != a.rend(); ++it) x = Rational(*it) - 1 / x;
    return x;
}

// Rational Euler number: centre weight plus beta/alpha over the twigs.
Rational euler_number(const SeifertData& s)
{
    Rational e = s.central_weight;
    for (const auto& f : s.twig_fractions) e += 1 / f;
    return e;
}

std::vector<Integer> alphas(const SeifertData& s)
{
    std::vector<Integer> out;
    for (const auto& f : s.twig_fractions) out.push_back(numerator(f));
    std::sort(out.begin(), out.end());
    return out;
}

Integer mod(const Integer& a, const Integer& p) { return ((a % p) + p) % p; }

Integer inverse_mod(const Integer& a, const Integer& p)
{
    for (Integer x = 1; x < p; ++x)
        if (mod(a * x, p) == 1) return x;
    return 0;
}

WeightedGraph unlabeled(WeightedGraph g)
{
    for (const auto& id : g.ids()) g.set_label(id, "");
    return g;
}

WeightedGraph family_plumbing(int d1, int d2) { return from_divisor_graph(build_boundary_graph(d1, d2).boundary()); }

} // namespace

TEST_CASE("R1 examples")
{
    // [+1] between two -3s
    const WeightedGraph g = plumbing_chain({-3, 1, -3});
    const WeightedGraph h = move_R1(g, "c1");
    CHECK(h.size() == 2);
    CHECK(h.vertex("c0").weight == -4);
    CHECK(h.vertex("c2").weight == -4);
    REQUIRE(h.edges().size() == 1);
    CHECK(h.edges()[0].sign == -1);

    // pendant -1 on a -5
    const WeightedGraph p = move_R1(plumbing_chain({-5, -1}), "c1");
    CHECK(p.size() == 1);
    CHECK(p.vertex("c0").weight == -4);

    // isolated +1
    CHECK(move_R1(plumbing_chain({1}), "c0").empty());

    // [-1] between two -2s, with a negative edge
    const WeightedGraph q = move_R1(plumbing_chain({-2, -1, -2}, {1, -1}), "c1");
    CHECK(q.vertex("c0").weight == -1);
    CHECK(q.edges()[0].sign == -1);

    CHECK(r1_obstruction(plumbing_chain({-2}), "c0").has_value());
    CHECK(r1_obstruction(star(-1, {{2}, {3}, {6}}), "z").has_value());
    CHECK_THROWS_AS(move_R1(plumbing_chain({-3, -3}), "c0"), DomainError);
    CHECK_THROWS_AS(move_R1(chain_graph(parse_chain_type("[1]")), "v0"), DomainError);
}

TEST_CASE("R1 closing a cycle gives a loop")
{
    WeightedGraph g(GraphKind::plumbing);
    g.add_vertex({"a", -3, 0, 0, ""});
    g.add_vertex({"b", 1, 0, 0, ""});
    g.add_edge("a", "b", 1);
    g.add_edge("b", "a", -1);
    const WeightedGraph h = move_R1(g, "b");
    CHECK(h.vertex("a").weight == -5);
    REQUIRE(h.edges().size() == 1);
    CHECK(h.edges()[0].is_loop());
    CHECK(h.edges()[0].sign == 1);
}

TEST_CASE("R3 examples")
{
    const WeightedGraph g = plumbing_chain({-2, 0, -3});
    const WeightedGraph h = move_R3(g, "c1");
    CHECK(h.size() == 1);
    CHECK(h.vertex("c0").weight == -5);

    // a - 0 - b inside a longer chain, with the far edge of b flipped
    const WeightedGraph k = move_R3(plumbing_chain({-2, 0, -3, -4}, {1, 1, 1}), "c1");
    CHECK(k.size() == 2);
    CHECK(k.vertex("c0").weight == -5);
    REQUIRE(k.edges().size() == 1);
    CHECK(k.edges()[0].sign == -1);
    CHECK(k.edge_count_between("c0", "c3") == 1);

    // both sides have neighbours: the merged vertex is branching
    const WeightedGraph m = move_R3(plumbing_chain({-7, -2, 0, -3, -4}), "c2");
    CHECK(branching_number(m, "c1") == 2);
    CHECK(m.vertex("c1").weight == -5);

    CHECK(r3_obstruction(plumbing_chain({0, -2}), "c0").has_value());
    WeightedGraph twice(GraphKind::plumbing);
    twice.add_vertex({"a", -2, 0, 0, ""});
    twice.add_vertex({"z", 0, 0, 0, ""});
    twice.add_edge("a", "z");
    twice.add_edge("a", "z");
    CHECK(r3_obstruction(twice, "z").has_value());
}

TEST_CASE("perturbing then R1 restores the graph")
{
    for (int trial = 0; trial < 100; ++trial) {
        WeightedGraph g = from_divisor_graph(random_tree(static_cast<std::size_t>(uniform(1, 7)), -5, 2));
        for (std::size_t i = 0; i < g.edges().size(); ++i)
            if (uniform(0, 1)) g.set_edge_sign(i, -1);
        const int eps = uniform(0, 1) ? 1 : -1;
        const bool on_edge = !g.edges().empty() && uniform(0, 1);
        const PerturbCenter c = on_edge ? PerturbCenter::on_edge(static_cast<std::size_t>(uniform(0, static_cast<long long>(g.edges().size()) - 1)))
                                        : PerturbCenter::on_vertex(g.ids()[static_cast<std::size_t>(uniform(0, static_cast<long long>(g.size()) - 1))]);
        const WeightedGraph p = perturb(g, c, eps, "P");
        CHECK(p.vertex("P").weight == eps);
        CHECK(p.size() == g.size() + 1);
        CHECK(canonical_key(move_R1(p, "P")) == canonical_key(g));
    }
    CHECK_THROWS_AS(perturb(plumbing_chain({-2}), PerturbCenter::on_vertex("c0"), 2), DomainError);
    CHECK_THROWS_AS(perturb(plumbing_chain({-2}), PerturbCenter::on_edge(0), 1), DomainError);
}

TEST_CASE("normality")
{
    CHECK(is_normal(plumbing_chain({-2, -3, -2})).normal);
    CHECK_FALSE(is_normal(plumbing_chain({-2, -1, -2})).normal);
    CHECK(is_normal(star(-1, {{2}, {3}, {6}})).normal);
    CHECK(is_normal(star(-2, {{2}, {2, 2}, {2, 2, 2, 2, 2}})).normal);

    // two [2]-twigs on a node of a graph with two nodes
    WeightedGraph g = star(-2, {{2}, {2}, {3}});
    g.add_vertex({"y", -2, 0, 0, ""});
    g.add_vertex({"y1", -3, 0, 0, ""});
    g.add_vertex({"y2", -3, 0, 0, ""});
    g.add_edge("t2_0", "y");
    g.add_edge("y", "y1");
    g.add_edge("y", "y2");
    const NormalityReport r = is_normal(g);
    CHECK_FALSE(r.normal);
    CHECK(r.violations.size() == 1);

    // cycles of (-2)-vertices
    WeightedGraph cyc(GraphKind::plumbing);
    for (int i = 0; i < 4; ++i) cyc.add_vertex({"q" + std::to_string(i), -2, 0, 0, ""});
    for (int i = 0; i < 4; ++i) cyc.add_edge("q" + std::to_string(i), "q" + std::to_string((i + 1) % 4), i < 1 ? -1 : 1);
    CHECK_FALSE(is_normal(cyc).normal);
    cyc.set_edge_sign(1, -1);
    CHECK(is_normal(cyc).normal);

    WeightedGraph boundary(GraphKind::plumbing);
    boundary.add_vertex({"b", -2, 0, 1, ""});
    CHECK_THROWS_AS(is_normal(boundary), OutOfScopeError);
}

TEST_CASE("normal trees are fixed points")
{
    for (int trial = 0; trial < 60; ++trial) {
        const WeightedGraph g = from_divisor_graph(random_tree(static_cast<std::size_t>(uniform(1, 9)), -5, -2));
        if (!is_normal(g).normal) continue;
        const NormalForm nf = normalize(g);
        CHECK(nf.tag == NormalTag::generic);
        CHECK(graphs_isomorphic(nf.graph, g, SignMode::up_to_vertex_flips));
        CHECK(nf.order == nf.graph.ids());
    }
}

TEST_CASE("normal form is invariant under random perturbations")
{
    for (const auto& [d1, d2] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {1, 4}}) {
        const NormalForm base = normalize(family_plumbing(d1, d2));
        for (int trial = 0; trial < 20; ++trial) {
            WeightedGraph g = family_plumbing(d1, d2);
            const int rounds = static_cast<int>(uniform(1, 2));
            for (int k = 0; k < rounds; ++k) {
                const int eps = uniform(0, 1) ? 1 : -1;
                const PerturbCenter c = uniform(0, 1)
                    ? PerturbCenter::on_edge(static_cast<std::size_t>(uniform(0, static_cast<long long>(g.edges().size()) - 1)))
                    : PerturbCenter::on_vertex(g.ids()[static_cast<std::size_t>(uniform(0, static_cast<long long>(g.size()) - 1))]);
                g = perturb(g, c, eps);
            }
            const NormalForm nf = normalize(shuffled(g));
            CHECK(nf.tag == base.tag);
            CHECK(graphs_isomorphic(nf.graph, base.graph, SignMode::up_to_vertex_flips));
            CHECK(unlabeled(nf.graph) == unlabeled(base.graph));
        }
    }
}

TEST_CASE("normal forms of the family")
{
    for (int d = 2; d <= 5; ++d)
        for (int e = 2; e <= 5; ++e) {
            const NormalForm nf = normalize(family_plumbing(d, e));
            CHECK(nf.tag == NormalTag::generic);
            CHECK(is_normal(nf.graph).normal);
            CHECK(nf.graph.size() == static_cast<std::size_t>(d + e));
            long long minus_one = 0, double_edges = 0;
            for (const auto& v : nf.graph.vertices())
                if (v.weight == -1 && branching_number(nf.graph, v.id) == 3) ++minus_one;
            for (const auto& x : nf.graph.ids())
                for (const auto& y : nf.graph.ids())
                    if (x < y && nf.graph.edge_count_between(x, y) == 2) ++double_edges;
            CHECK(minus_one == 2);
            CHECK(double_edges == 1);
        }
    for (int e = 2; e <= 5; ++e) {
        const NormalForm nf = normalize(family_plumbing(1, e));
        CHECK(nf.graph.size() == static_cast<std::size_t>(e));
        std::size_t loops = 0;
        for (const auto& v : nf.graph.vertices()) loops += nf.graph.loop_count(v.id);
        CHECK(loops == 1);
    }
    const NormalForm special = normalize(family_plumbing(1, 1));
    CHECK(special.tag == NormalTag::seifert_special);
    REQUIRE(special.seifert.has_value());
    CHECK(special.seifert->to_string() == "M(0,0; 1/2, 1/3, 1/6), e = -2");
}

TEST_CASE("the two special stars")
{
    WeightedGraph minus(GraphKind::plumbing), plus(GraphKind::plumbing);
    minus.add_vertex({"a", 1, 0, 0, ""});
    minus.add_edge("a", "a", -1);
    plus.add_vertex({"a", -1, 0, 0, ""});
    plus.add_edge("a", "a", 1);
    const NormalForm m = normalize(minus);
    const NormalForm p = normalize(plus);
    CHECK(m.tag == NormalTag::seifert_special);
    CHECK(p.tag == NormalTag::seifert_special);
    CHECK(graphs_isomorphic(m.graph, star(-2, {{2}, {2, 2}, {2, 2, 2, 2, 2}})));
    CHECK(graphs_isomorphic(p.graph, star(-1, {{2}, {3}, {6}})));
    CHECK(h1_from_graph(m.graph) == AbelianGroup::free(1));
    CHECK(h1_from_graph(minus) == AbelianGroup::free(1));
}

TEST_CASE("cycles of (-2)-vertices normalize to a labelled representative")
{
    for (std::size_t k = 2; k <= 6; ++k)
        for (int product : {1, -1}) {
            WeightedGraph g(GraphKind::plumbing);
            for (std::size_t i = 0; i < k; ++i) g.add_vertex({"q" + std::to_string(i), -2, 0, 0, ""});
            for (std::size_t i = 0; i < k; ++i)
                g.add_edge("q" + std::to_string(i), "q" + std::to_string((i + 1) % k), i == 0 ? product : 1);
            CHECK(is_normal(g).normal == false);
            if (k == 2 && product < 0) {
                // a double edge with one "-" cannot be relabelled to carry two
                CHECK_THROWS_AS(normalize(g), OutOfScopeError);
                continue;
            }
            const NormalForm nf = normalize(g);
            int p = 1;
            std::size_t negative = 0;
            for (const auto& e : nf.graph.edges()) {
                p *= e.sign;
                negative += e.sign < 0;
            }
            CHECK(p == product);
            CHECK(graphs_isomorphic(nf.graph, g, SignMode::up_to_vertex_flips));
            CHECK(is_normal(nf.graph).normal);
            CHECK(negative == (product > 0 ? 2u : 3u));
        }
}

TEST_CASE("normalize rejects what it cannot reach")
{
    CHECK_THROWS_AS(normalize(chain_graph(parse_chain_type("[0,0,0]"))), OutOfScopeError);
    WeightedGraph g(GraphKind::plumbing);
    g.add_vertex({"a", -2, 1, 0, ""});
    CHECK_THROWS_AS(normalize(g), OutOfScopeError);
    WeightedGraph two(GraphKind::plumbing);
    two.add_vertex({"a", -2, 0, 0, ""});
    two.add_vertex({"b", -2, 0, 0, ""});
    CHECK_THROWS_AS(normalize(two), DomainError);
}

TEST_CASE("continued fractions")
{
    for (int trial = 0; trial < 50; ++trial) {
        const Integer p = uniform(2, 400);
        Integer q;
        do q = uniform(1, static_cast<long long>(p) - 1);
        while (boost::multiprecision::gcd(p, q) != 1);
        const ChainType t = continued_fraction_expand(p, q);
        for (long long a : t.entries) CHECK(a >= 2);
        CHECK(continued_fraction_eval(t) == std::pair<Integer, Integer>{p, q});
        CHECK(cf_value(t.entries) == Rational(p, q));
    }
    CHECK(continued_fraction_expand(7, 3).entries == std::vector<long long>{3, 2, 2});
    CHECK(continued_fraction_expand(1, 0).entries.empty());
    CHECK_THROWS_AS(continued_fraction_expand(6, 4), DomainError);
    CHECK_THROWS_AS(continued_fraction_expand(3, 3), DomainError);
}

TEST_CASE("Seifert data of stars")
{
    const SeifertData a = seifert_from_star(star(-1, {{2}, {3}, {6}}));
    CHECK(a.exceptional == std::vector<Rational>{Rational(5, 6), Rational(2, 3), Rational(1, 2)});
    CHECK(a.central_weight == -1);
    CHECK(euler_number(a) == 0);
    const SeifertData b = seifert_from_star(star(-2, {{2}, {2, 2}, {2, 2, 2, 2, 2}}));
    CHECK(b.to_string() == "M(0,0; 1/2, 1/3, 1/6), e = -2");
    const SeifertData c = seifert_from_star(star(-3, {{3, 2}, {2}, {5}}));
    // [3,2] is 5/2, [5] is 5/1, [2] is 2/1
    CHECK(c.exceptional == std::vector<Rational>{Rational(4, 5), Rational(3, 5), Rational(1, 2)});
    CHECK(c.twig_fractions == std::vector<Rational>{Rational(5), Rational(5, 2), Rational(2)});
    CHECK(euler_number(c) == Rational(-3) + Rational(1, 5) + Rational(2, 5) + Rational(1, 2));
    CHECK_THROWS_AS(seifert_from_star(plumbing_chain({-2, -2})), DomainError);
}

TEST_CASE("reversal of (2)-twigs matches explicit moves")
{
    // negate, then for each twig put a (-1) on the edge at the centre and blow down along the twig
    const std::vector<std::vector<long long>> shapes[] = {
        {{2}, {2, 2}, {2, 2, 2, 2, 2}},
        {{2, 2}, {2, 2, 2}, {2, 2, 2}},
        {{2}, {2, 2, 2}, {2, 2, 2}, {2}},
    };
    for (const auto& twigs : shapes)
        for (long long centre : {-2, -3, -5}) {
            const WeightedGraph g = star(centre, twigs);
            REQUIRE(is_normal(g).normal);
            WeightedGraph h = negated(g);
            for (std::size_t k = 0; k < twigs.size(); ++k) {
                const std::string first = "t" + std::to_string(k) + "_0";
                h = perturb(h, PerturbCenter::on_edge(edge_index(h, "z", first)), -1, "p" + std::to_string(k));
                for (std::size_t i = 0; i < twigs[k].size(); ++i) h = move_R1(h, "t" + std::to_string(k) + "_" + std::to_string(i));
            }
            CHECK(is_normal(h).normal);
            const NormalForm r = reverse_orientation(normalize(g));
            CHECK(graphs_isomorphic(r.graph, h, SignMode::up_to_vertex_flips));
            for (std::size_t k = 0; k < twigs.size(); ++k)
                CHECK(h.vertex("p" + std::to_string(k)).weight == -static_cast<long long>(twigs[k].size()) - 1);
        }
}

TEST_CASE("reversal of stars negates the Euler number")
{
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<std::vector<long long>> twigs(static_cast<std::size_t>(uniform(3, 4)));
        for (auto& t : twigs) t = random_chain_type(3, 2, 5).entries;
        const WeightedGraph g = star(uniform(-4, -1), twigs);
        if (!is_normal(g).normal) continue;
        NormalForm r;
        try {
            r = reverse_orientation(normalize(g));
        } catch (const OutOfScopeError&) {
            continue;
        }
        const SeifertData before = seifert_from_star(g);
        const SeifertData after = seifert_from_star(r.graph);
        CHECK(alphas(before) == alphas(after));
        CHECK(euler_number(after) == -euler_number(before));
        CHECK(h1_from_graph(r.graph) == h1_from_graph(g));
        ++checked;
    }
    CHECK(checked >= 40);
}

TEST_CASE("reversal of lens spaces")
{
    for (int trial = 0; trial < 60; ++trial) {
        const ChainType t = random_chain_type(5, 2, 6);
        const WeightedGraph g = from_divisor_graph(chain_graph(t));
        const auto [p, q] = *is_lens_space(g);
        CHECK(p == continued_fraction_eval(t).first);
        const NormalForm r = reverse_orientation(normalize(g));
        const auto lens = is_lens_space(r.graph);
        REQUIRE(lens.has_value());
        CHECK(lens->first == p);
        const Integer q2 = lens->second;
        const Integer expected = p - q;
        CHECK((q2 == expected || q2 == mod(inverse_mod(expected, p), p)));
    }
    // S^3 reverses to itself
    CHECK(reverse_orientation(normalize(WeightedGraph(GraphKind::plumbing))).graph.empty());
}

TEST_CASE("reversal is an involution")
{
    std::vector<WeightedGraph> graphs;
    for (int d1 = 1; d1 <= 4; ++d1)
        for (int d2 = 1; d2 <= 4; ++d2) graphs.push_back(family_plumbing(d1, d2));
    graphs.push_back(star(-1, {{2}, {3}, {7}}));
    graphs.push_back(star(-3, {{3, 2}, {2}, {5}}));
    graphs.push_back(plumbing_chain({-3, -2, -4}));
    for (const auto& g : graphs) {
        const NormalForm nf = normalize(g);
        const NormalForm r = reverse_orientation(nf);
        const NormalForm rr = reverse_orientation(r);
        CHECK(graphs_isomorphic(rr.graph, nf.graph, SignMode::up_to_vertex_flips));
        CHECK(h1_from_graph(r.graph) == h1_from_graph(nf.graph));
        CHECK(is_normal(r.graph).normal);
    }
}

TEST_CASE("family boundaries are not amphichiral")
{
    for (int d1 = 1; d1 <= 5; ++d1)
        for (int d2 = 1; d2 <= 5; ++d2) {
            const NormalForm nf = normalize(family_plumbing(d1, d2));
            const NormalForm r = reverse_orientation(nf);
            CHECK_FALSE(graphs_isomorphic(nf.graph, r.graph, SignMode::up_to_vertex_flips));
        }
}

TEST_CASE("reversal of the (1,d) family")
{
    for (int e = 2; e <= 6; ++e) {
        const NormalForm r = reverse_orientation(normalize(family_plumbing(1, e)));
        CHECK(r.graph.size() == 2);
        std::string node;
        for (const auto& v : r.graph.vertices())
            if (r.graph.loop_count(v.id) == 1) node = v.id;
        REQUIRE_FALSE(node.empty());
        CHECK(r.graph.vertex(node).weight == -2);
        for (const auto& v : r.graph.vertices())
            if (v.id != node) CHECK(v.weight == -e);
    }
}

TEST_CASE("JSJ pieces")
{
    const auto pieces = jsj_cut(normalize(family_plumbing(3, 2)).graph);
    REQUIRE(pieces.size() == 2);
    std::vector<std::string> text;
    for (const auto& s : pieces) text.push_back(s.to_string());
    std::sort(text.begin(), text.end());
    CHECK(text == std::vector<std::string>{"M(0,2; 1/2), e = -1", "M(0,2; 1/3), e = -1"});

    const auto one = jsj_cut(normalize(family_plumbing(1, 2)).graph);
    REQUIRE(one.size() == 1);
    CHECK(one[0].to_string() == "M(0,2; 1/2), e = 1");

    for (int d1 = 2; d1 <= 5; ++d1)
        for (int d2 = 2; d2 <= 5; ++d2) {
            const auto p = jsj_cut(normalize(family_plumbing(d1, d2)).graph);
            REQUIRE(p.size() == 2);
            std::vector<Rational> inv{p[0].exceptional.at(0), p[1].exceptional.at(0)};
            std::sort(inv.begin(), inv.end());
            CHECK(inv == std::vector<Rational>{std::min(Rational(1, d1), Rational(1, d2)), std::max(Rational(1, d1), Rational(1, d2))});
            for (const auto& s : p) CHECK(s.boundary_count == 2);
        }
}

TEST_CASE("first homology")
{
    WeightedGraph zero(GraphKind::plumbing);
    zero.add_vertex({"a", 0, 0, 0, ""});
    CHECK(h1_from_graph(zero) == AbelianGroup::free(1));
    CHECK(h1_from_graph(plumbing_chain({-5})).to_string() == "Z/5");
    for (int n = 1; n <= 8; ++n) {
        const WeightedGraph g = plumbing_chain(std::vector<long long>(static_cast<std::size_t>(n), -2));
        CHECK(h1_from_graph(g).torsion == std::vector<Integer>{Integer(n + 1)});
    }
    for (int d1 = 1; d1 <= 6; ++d1)
        for (int d2 = 1; d2 <= 6; ++d2) {
            CHECK(h1_from_graph(family_plumbing(d1, d2)) == AbelianGroup::free(1));
            CHECK(h1_from_graph(normalize(family_plumbing(d1, d2)).graph) == AbelianGroup::free(1));
        }
}

TEST_CASE("corpus manifest")
{
    const std::string dir = PLUMBCALC_CORPUS_DIR;
    const auto manifest = nlohmann::json::parse(read_text_file(dir + "/manifest.json"));
    REQUIRE(manifest.size() >= 20);
    for (const auto& entry : manifest) {
        const std::string file = entry.at("file");
        INFO(file);
        const WeightedGraph g = read_graph_file(dir + "/" + file);
        CHECK(to_string(g.kind()) == entry.at("kind").get<std::string>());
        std::optional<NormalForm> nf;
        try {
            nf = normalize(g);
        } catch (const OutOfScopeError&) {
        }
        CHECK(nf.has_value() == (entry.at("normalize") == "ok"));
        if (!nf) continue;
        CHECK(is_normal(nf->graph).normal);
        CHECK(h1_from_graph(nf->graph) == h1_from_graph(g.kind() == GraphKind::divisor ? from_divisor_graph(g) : g));
        bool reversed = true;
        try {
            reverse_orientation(*nf);
        } catch (const OutOfScopeError&) {
            reversed = false;
        }
        CHECK(reversed == (entry.at("reverse") == "ok"));
    }
}
