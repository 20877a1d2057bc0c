// One line per acceptance criterion; exit status 1 when any fails.

#include "support.hpp"

#include "plumbcalc/divisor.hpp"
#include "plumbcalc/errors.hpp"
#include "plumbcalc/family.hpp"
#include "plumbcalc/io.hpp"
#include "plumbcalc/plumbing.hpp"
#include "plumbcalc/topology.hpp"

#include <filesystem>
#include <functional>
#include <iostream>

using namespace plumbcalc;
using namespace testing_support;

namespace {

// Failure messages of one criterion.
struct Check {
    std::vector<std::string> failures;

    void operator()(bool ok, const std::string& what)
    {
        if (!ok) failures.push_back(what);
    }
};

std::string pair_name(int d1, int d2) { return "(" + std::to_string(d1) + "," + std::to_string(d2) + ")"; }

FamilyParams power_params(int d1, int d2)
{
    Polynomial a(static_cast<std::size_t>(d1), Rational(0)), b(static_cast<std::size_t>(d2), Rational(0));
    a[0] = b[0] = 1;
    return FamilyParams(a, b);
}

Polynomial random_monic(int degree)
{
    Polynomial p{Rational(1)};
    for (int i = 0; i < degree; ++i) p.push_back(Rational(uniform(-5, 5), uniform(1, 3)));
    return p;
}

WeightedGraph family_plumbing(int d1, int d2) { return from_divisor_graph(build_boundary_graph(d1, d2).boundary()); }

WeightedGraph unlabeled(WeightedGraph g)
{
    for (const auto& id : g.ids()) g.set_label(id, "");
    return g;
}

std::vector<std::pair<int, int>> multisets()
{
    std::vector<std::pair<int, int>> out;
    for (int d1 = 1; d1 <= 6; ++d1)
        for (int d2 = d1; d2 <= 6; ++d2) out.emplace_back(d1, d2);
    return out;
}

void criterion_1(Check& check)
{
    for (int d1 = 1; d1 <= 6; ++d1)
        for (int d2 = 1; d2 <= 6; ++d2) {
            const LabeledFamilyGraph f = build_boundary_graph(d1, d2);
            const FamilyRewrite r = build_by_blowups(power_params(d1, d2));
            check(graphs_isomorphic(r.family.graph, f.graph), "blowups differ from direct construction " + pair_name(d1, d2));
            check(f.d_part.size() == static_cast<std::size_t>(d1 + d2 + 2), "D-part size " + pair_name(d1, d2));
            const PicardReport p = picard_check(f);
            check(p.unimodular, "not unimodular " + pair_name(d1, d2));
            check(determinant(intersection_matrix(f.boundary())) == p.det, "det mismatch " + pair_name(d1, d2));
        }
}

void criterion_2(Check& check)
{
    for (int d1 = 1; d1 <= 6; ++d1)
        for (int d2 = 1; d2 <= 6; ++d2) {
            const WeightedGraph b = build_boundary_graph(d1, d2).boundary();
            const bool direct = (d1 >= 2 && d2 >= 2) || (d1 == 1 && d2 == 1);
            if (direct)
                check(is_standard(b).standard, "boundary not standard " + pair_name(d1, d2));
            else {
                const Rewrite r = standardize_mixed_case(build_boundary_graph(d1, d2));
                check(is_standard(r.graph).standard, "mixed case not standard " + pair_name(d1, d2));
                check(replay(b, r.log) == r.graph, "mixed case log does not replay " + pair_name(d1, d2));
            }
        }
}

void criterion_3(Check& check)
{
    const auto sets = multisets();
    std::vector<WeightedGraph> graphs;
    for (const auto& [d1, d2] : sets) graphs.push_back(standard_boundary(d1, d2).graph);
    check(graphs.size() == 21, "expected 21 multisets");
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t k = i + 1; k < graphs.size(); ++k)
            check(!graphs_isomorphic(graphs[i], graphs[k]),
                  pair_name(sets[i].first, sets[i].second) + " ~ " + pair_name(sets[k].first, sets[k].second));
}

void criterion_4(Check& check)
{
    const auto sets = multisets();
    std::vector<NormalForm> forms;
    for (int d1 = 1; d1 <= 6; ++d1)
        for (int d2 = 1; d2 <= 6; ++d2) {
            try {
                const NormalForm nf = normalize(family_plumbing(d1, d2));
                check(is_normal(nf.graph).normal, "result not normal " + pair_name(d1, d2));
                if (d1 == 1 && d2 == 1) {
                    check(nf.tag == NormalTag::seifert_special, "(1,1) not tagged seifert_special");
                    const bool data = nf.seifert && nf.seifert->base_genus == 0 && nf.seifert->boundary_count == 0 &&
                                      nf.seifert->exceptional == std::vector<Rational>{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
                    check(data, "(1,1) Seifert data is not (0,0;1/2,1/3,1/6)");
                    continue;
                }
                const NormalForm rev = reverse_orientation(nf);
                check(!graphs_isomorphic(nf.graph, rev.graph, SignMode::up_to_vertex_flips), "amphichiral " + pair_name(d1, d2));
            } catch (const std::exception& e) {
                check(false, "normalize failed " + pair_name(d1, d2) + ": " + e.what());
            }
        }
    for (const auto& [d1, d2] : sets) forms.push_back(normalize(family_plumbing(d1, d2)));
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t k = i + 1; k < forms.size(); ++k)
            check(!graphs_isomorphic(forms[i].graph, forms[k].graph, SignMode::up_to_vertex_flips),
                  "normal forms agree " + pair_name(sets[i].first, sets[i].second) + " " +
                      pair_name(sets[k].first, sets[k].second));
}

void criterion_5(Check& check)
{
    IntMatrix zero_surgery(1, 1);
    const AbelianGroup linking = cokernel(zero_surgery);
    check(linking == AbelianGroup::free(1), "0-surgery linking matrix does not give Z");
    for (int d1 = 1; d1 <= 6; ++d1)
        for (int d2 = 1; d2 <= 6; ++d2) {
            const AbelianGroup a = h1_from_graph(family_plumbing(d1, d2));
            const AbelianGroup b = abelianization(pi1_presentation(d1, d2));
            check(a == AbelianGroup::free(1), "h1 from graph is " + a.to_string() + " " + pair_name(d1, d2));
            check(a == b && b == linking, "abelianization disagrees " + pair_name(d1, d2));
        }
}

void criterion_6(Check& check)
{
    for (int d1 = 1; d1 <= 6; ++d1)
        for (int d2 = 1; d2 <= 6; ++d2) {
            const HomologyReport h = chain_complex_homology(kirby_handle_data(d1, d2));
            check(h.h0 == AbelianGroup::free(1) && h.h1.is_trivial() && h.h2 == AbelianGroup::free(1),
                  "homology not (Z,0,Z) " + pair_name(d1, d2));
            check(h.euler_characteristic == 2, "euler characteristic " + pair_name(d1, d2));
        }
}

void criterion_7(Check& check)
{
    for (int k = 1; k <= 12; ++k) {
        const WeightedGraph g = chain_graph(ChainType{std::vector<long long>(static_cast<std::size_t>(k), 2), false});
        const std::vector<std::string> twig = g.ids();
        const BarkVector b = bark(g, twig);
        for (int i = 1; i <= k; ++i) {
            const Rational c = b.at(twig[static_cast<std::size_t>(i - 1)]);
            check(c == Rational(k + 1 - i, k + 1), "bark coefficient k=" + std::to_string(k) + " i=" + std::to_string(i));
            check(c > 0 && c < 1, "bark coefficient outside (0,1)");
        }
    }
}

void criterion_8(Check& check)
{
    for (int trial = 0; trial < 200; ++trial) {
        const WeightedGraph g = random_tree(static_cast<std::size_t>(uniform(1, 9)), -4, 2);
        BlowupCenter c;
        if (g.edges().empty() || uniform(0, 1) == 0) {
            c = BlowupCenter::on_vertex(g.ids()[static_cast<std::size_t>(uniform(0, static_cast<long long>(g.size()) - 1))]);
        } else {
            const Edge& e = g.edges()[static_cast<std::size_t>(uniform(0, static_cast<long long>(g.edges().size()) - 1))];
            c = BlowupCenter::on_edge(e.u, e.v);
        }
        check(graphs_isomorphic(blow_down(blow_up(g, c, "E"), "E"), g), "blowup round trip");
    }
    for (int trial = 0; trial < 200; ++trial) {
        ChainType t = random_chain_type(9, -2, 5);
        if (t.entries.size() < 3) t.entries.insert(t.entries.end(), {2, 2});
        const auto z = static_cast<std::size_t>(uniform(1, static_cast<long long>(t.entries.size()) - 2));
        t.entries[z] = 0;
        const WeightedGraph g = chain_graph(t);
        const auto ids = g.ids();
        const WeightedGraph f = elementary_flow(g, ids[z], ids[uniform(0, 1) ? z + 1 : z - 1]);
        check(f.size() == g.size() && weight_sum(f) == weight_sum(g), "flow changed size or weight sum");
    }
    for (const auto& entry : std::filesystem::directory_iterator(PLUMBCALC_CORPUS_DIR)) {
        if (entry.path().filename() == "manifest.json") continue;
        const std::string name = entry.path().filename().string();
        const WeightedGraph g = read_graph_file(entry.path().string());
        if (g.kind() == GraphKind::divisor) {
            const Rewrite m = snc_minimalize(g);
            check(snc_minimalize(m.graph).graph == m.graph, "minimalize not idempotent on " + name);
            const Rewrite s = standardize(g);
            check(standardize(s.graph).graph == s.graph, "standardize not idempotent on " + name);
        }
        try {
            const NormalForm nf = normalize(g);
            check(unlabeled(normalize(nf.graph).graph) == unlabeled(nf.graph), "normalize not idempotent on " + name);
        } catch (const OutOfScopeError&) {
        }
    }
    for (const auto& [d1, d2] : multisets()) {
        const NormalForm base = normalize(family_plumbing(d1, d2));
        for (int trial = 0; trial < 20; ++trial) {
            WeightedGraph g = family_plumbing(d1, d2);
            const int eps = uniform(0, 1) ? 1 : -1;
            const PerturbCenter c = uniform(0, 1)
                ? PerturbCenter::on_edge(static_cast<std::size_t>(uniform(0, static_cast<long long>(g.edges().size()) - 1)))
                : PerturbCenter::on_vertex(g.ids()[static_cast<std::size_t>(uniform(0, static_cast<long long>(g.size()) - 1))]);
            g = perturb(g, c, eps);
            const NormalForm nf = normalize(shuffled(g));
            check(graphs_isomorphic(nf.graph, base.graph, SignMode::up_to_vertex_flips), "perturbation changed normal form " + pair_name(d1, d2));
        }
    }
}

void criterion_9(Check& check)
{
    check(alexander_polynomial(1, 1).to_string({"t"}) == "t - 1 + t^-1", "alexander(1,1)");
    for (int d1 = 1; d1 <= 10; ++d1)
        for (int d2 = 1; d2 <= 10; ++d2) {
            const LaurentPoly1 a = alexander_polynomial(d1, d2);
            check(abs(a.at_one()) == 1, "alexander at 1 " + pair_name(d1, d2));
            check(a == a.inverted_exponents(), "not palindromic " + pair_name(d1, d2));
        }
    check(two_bridge_equivalent(two_bridge_fraction(1, 1), {3, 1}), "(1,1) not in the trefoil class");
}

void criterion_10(Check& check)
{
    auto run = [&](ChartCase c, const FamilyParams& f) {
        const ChartReport r = verify_chart(c, f);
        const VolumeReport v = verify_volume_form(c, f);
        check(r.ok, "residuals nonzero in case " + to_string(c));
        check(r.inverse_ok, "inverse fails in case " + to_string(c));
        check(v.ok && (v.sign == 1 || v.sign == -1), "volume form ratio in case " + to_string(c));
    };
    for (int trial = 0; trial < 20; ++trial)
        run(ChartCase::aa, FamilyParams(random_monic(static_cast<int>(uniform(0, 5))), random_monic(static_cast<int>(uniform(0, 5)))));
    for (int trial = 0; trial < 20; ++trial) {
        const Polynomial p = random_monic(static_cast<int>(uniform(0, 5)));
        if (trial % 2 == 0)
            run(ChartCase::al1, FamilyParams(p, Polynomial{1}));
        else
            run(ChartCase::al2, FamilyParams(Polynomial{1}, p));
    }
    run(ChartCase::lc1, FamilyParams());
    run(ChartCase::lc2, FamilyParams());
}

void criterion_11(Check& check)
{
    for (int d1 = 1; d1 <= 6; ++d1)
        for (int d2 = 1; d2 <= 6; ++d2) {
            const GroupPresentation p = pi1_presentation(d1, d2);
            for (int n = 1; n <= 12; ++n) {
                const FiniteGroupTable z = cyclic_group(n);
                const auto a = count_homs(p, z, EnumerationOrder::first_generator_outermost);
                const auto b = count_homs(p, z, EnumerationOrder::last_generator_outermost);
                check(a == static_cast<std::uint64_t>(n) && b == a, "Z/" + std::to_string(n) + " count " + pair_name(d1, d2));
            }
            if (d1 <= 3 && d2 <= 3)
                for (const auto& g : small_group_catalog(12))
                    check(count_homs(p, g, EnumerationOrder::first_generator_outermost) ==
                              count_homs(p, g, EnumerationOrder::last_generator_outermost),
                          "orders disagree for " + g.name() + " " + pair_name(d1, d2));
        }
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"family construction", criterion_1},  {"standardness", criterion_2},
        {"distinctness", criterion_3},         {"plumbing pipeline", criterion_4},
        {"homology triangulation", criterion_5}, {"surface homology", criterion_6},
        {"bark property", criterion_7},        {"rewriting properties", criterion_8},
        {"knot invariants", criterion_9},      {"chart verification", criterion_10},
        {"quotient counting", criterion_11},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check check;
        try {
            criteria[i].second(check);
        } catch (const std::exception& e) {
            check(false, std::string("exception: ") + e.what());
        }
        const bool ok = check.failures.empty();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
        if (!ok) {
            std::cout << " (" << check.failures.size() << " failures; first: " << check.failures.front() << ")";
        }
        std::cout << "\n";
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
    return failed ? 1 : 0;
}
