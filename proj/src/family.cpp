#include "plumbcalc/family.hpp"

#include "plumbcalc/errors.hpp"

#include <algorithm>

namespace plumbcalc {

// ---------------------------------------------------------------- parameters

Polynomial parse_polynomial(const std::string& text)
{
    Polynomial p;
    std::string item;
    auto flush = [&]() {
        if (item.empty()) throw DomainError("empty coefficient in '" + text + "'");
        p.push_back(parse_rational(item));
        item.clear();
    };
    for (char c : text) {
        if (c == ' ') continue;
        if (c == ',')
            flush();
        else
            item += c;
    }
    flush();
    return p;
}

std::string polynomial_to_string(const Polynomial& p)
{
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + to_string(p[i]);
    return out;
}

FamilyParams::FamilyParams(Polynomial a, Polynomial b) : p1(std::move(a)), p2(std::move(b))
{
    for (const Polynomial* p : {&p1, &p2})
        if (p->empty() || p->front() != 1) throw DomainError("family polynomials must be monic (leading coefficient 1)");
}

Polynomial reversed_polynomial(const Polynomial& p) { return Polynomial(p.rbegin(), p.rend()); }

namespace {

std::string t_id(int j, int i) { return "T" + std::to_string(j) + "_" + std::to_string(i); }
std::string a_id(int j) { return "A" + std::to_string(j); }
std::string linf_id(int j) { return "L" + std::to_string(j) + "inf"; }
std::string l0_id(int j) { return "L" + std::to_string(j) + "0"; }

LaurentPoly2 evaluate(const Polynomial& p, const LaurentPoly2& x)
{
    LaurentPoly2 acc;
    for (const auto& c : p) acc = acc * x + LaurentPoly2(c);
    return acc;
}

} // namespace

// ---------------------------------------------------------------- graphs

WeightedGraph LabeledFamilyGraph::boundary() const
{
    return induced_subgraph(graph, std::vector<std::string>(d_part.begin(), d_part.end()));
}

void label_family_vertices(WeightedGraph& g)
{
    for (int j = 1; j <= 2; ++j) {
        const std::string js = std::to_string(j);
        if (g.has_vertex(linf_id(j))) g.set_label(linf_id(j), "L_{" + js + ",inf}");
        if (g.has_vertex(l0_id(j))) g.set_label(l0_id(j), "L_{" + js + ",0}");
        if (g.has_vertex(a_id(j))) g.set_label(a_id(j), "A_" + js);
        for (int i = 1; g.has_vertex(t_id(j, i)); ++i) g.set_label(t_id(j, i), "T_{" + js + "," + std::to_string(i) + "}");
    }
}

WeightedGraph quadric_boundary()
{
    WeightedGraph g(GraphKind::divisor);
    for (int j = 1; j <= 2; ++j) {
        g.add_vertex(Vertex{linf_id(j), 0, 0, 0, ""});
        g.add_vertex(Vertex{l0_id(j), 0, 0, 0, ""});
    }
    g.add_edge(linf_id(1), linf_id(2));
    g.add_edge(linf_id(2), l0_id(1));
    g.add_edge(l0_id(1), l0_id(2));
    g.add_edge(l0_id(2), linf_id(1));
    label_family_vertices(g);
    return g;
}

LabeledFamilyGraph build_boundary_graph(int d1, int d2)
{
    if (d1 < 1 || d2 < 1) throw DomainError("build_boundary_graph needs d1, d2 >= 1");
    LabeledFamilyGraph out;
    out.d1 = d1;
    out.d2 = d2;
    WeightedGraph g = quadric_boundary();
    const int d[3] = {0, d1, d2};
    for (int j = 1; j <= 2; ++j) {
        g.set_weight(l0_id(j), -1);
        std::string prev = l0_id(j);
        for (int i = d[j] - 1; i >= 1; --i) {
            g.add_vertex(Vertex{t_id(j, i), -2, 0, 0, ""});
            g.add_edge(prev, t_id(j, i));
            prev = t_id(j, i);
        }
        g.add_vertex(Vertex{a_id(j), -1, 0, 0, ""});
        g.add_edge(prev, a_id(j));
    }
    label_family_vertices(g);
    for (const auto& v : g.vertices())
        if (v.id != a_id(1) && v.id != a_id(2)) out.d_part.insert(v.id);
    out.graph = std::move(g);
    return out;
}

FamilyRewrite build_by_blowups(const FamilyParams& params)
{
    FamilyRewrite out;
    WeightedGraph g = quadric_boundary();
    const int d[3] = {0, params.d1(), params.d2()};
    for (int j = 1; j <= 2; ++j) {
        // the first center is a point of L_{j,0} off the other three lines;
        // each later one lies on the newest exceptional curve only
        std::string center = l0_id(j);
        for (int i = 1; i <= d[j]; ++i) {
            const std::string id = i == d[j] ? a_id(j) : t_id(j, d[j] - i);
            const Move m = Move::blowup(BlowupCenter::on_vertex(center), id);
            g = apply_move(g, m);
            out.log.push_back(m);
            center = id;
        }
    }
    label_family_vertices(g);
    out.family.d1 = d[1];
    out.family.d2 = d[2];
    for (const auto& v : g.vertices())
        if (v.id != a_id(1) && v.id != a_id(2)) out.family.d_part.insert(v.id);
    out.family.graph = std::move(g);
    return out;
}

PicardReport picard_check(const LabeledFamilyGraph& fg)
{
    const WeightedGraph& g = fg.graph;
    const int d[3] = {0, fg.d1, fg.d2};
    for (int j = 1; j <= 2; ++j) {
        for (const auto& id : {linf_id(j), l0_id(j), a_id(j)})
            if (!g.has_vertex(id)) throw DomainError("picard_check: family graph lacks vertex '" + id + "'");
        for (int i = 1; i < d[j]; ++i)
            if (!g.has_vertex(t_id(j, i))) throw DomainError("picard_check: family graph lacks vertex '" + t_id(j, i) + "'");
    }
    if (fg.d_part.size() != static_cast<std::size_t>(fg.d1 + fg.d2 + 2))
        throw DomainError("picard_check: boundary part has the wrong number of vertices");

    PicardReport out;
    out.det = determinant(intersection_matrix(g, std::vector<std::string>(fg.d_part.begin(), fg.d_part.end())));
    out.unimodular = out.det == 1 || out.det == -1;

    const IntMatrix m = intersection_matrix(g);
    const std::size_t n = g.size();
    auto pairing = [&](const std::vector<Integer>& x) {
        std::vector<Integer> y(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) y[i] += m(i, k) * x[k];
        return y;
    };
    bool ok = true;
    for (int j = 1; j <= 2; ++j) {
        // fibre through the blown-up point versus the parallel line at infinity
        std::vector<Integer> fibre(n), line(n);
        fibre[g.index_of(a_id(j))] = 1;
        fibre[g.index_of(l0_id(j))] = 1;
        for (int i = 1; i < d[j]; ++i) fibre[g.index_of(t_id(j, i))] = 1;
        line[g.index_of(linf_id(j))] = 1;
        const auto pf = pairing(fibre), pl = pairing(line);
        Integer self = 0;
        for (std::size_t i = 0; i < n; ++i) self += fibre[i] * pf[i];
        ok = ok && pf == pl && self == 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& id = g.vertices()[i].id;
            const bool section = id == linf_id(3 - j) || id == l0_id(3 - j);
            ok = ok && pf[i] == (section ? 1 : 0);
        }
    }
    out.relations_verified = ok;
    return out;
}

HomologyReport surface_homology(int d1, int d2) { return chain_complex_homology(kirby_handle_data(d1, d2)); }

Rewrite standardize_mixed_case(const LabeledFamilyGraph& fg)
{
    if ((fg.d1 == 1) == (fg.d2 == 1)) throw DomainError("standardize_mixed_case needs exactly one of d1, d2 equal to 1");
    const int k = fg.d1 == 1 ? 1 : 2;
    Rewrite r{fg.boundary(), {}};
    const std::string e = r.graph.fresh_id("E");
    const RewriteLog moves{Move::blowup(BlowupCenter::on_edge(linf_id(1), linf_id(2)), e), Move::blowdown(linf_id(k)),
                           Move::blowdown(l0_id(k))};
    for (const auto& m : moves) {
        r.graph = apply_move(r.graph, m);
        r.log.push_back(m);
    }
    if (!is_standard(r.graph).standard) throw InternalError("mixed-case moves did not reach a standard graph");
    return r;
}

Rewrite standard_boundary(int d1, int d2)
{
    const LabeledFamilyGraph fg = build_boundary_graph(d1, d2);
    if ((d1 == 1) != (d2 == 1)) return standardize_mixed_case(fg);
    return standardize(fg.boundary());
}

// ---------------------------------------------------------------- charts

ChartCase parse_chart_case(const std::string& text)
{
    if (text == "aa") return ChartCase::aa;
    if (text == "al1") return ChartCase::al1;
    if (text == "al2") return ChartCase::al2;
    if (text == "lc1") return ChartCase::lc1;
    if (text == "lc2") return ChartCase::lc2;
    throw DomainError("unknown chart case '" + text + "' (expected aa, al1, al2, lc1 or lc2)");
}

std::string to_string(ChartCase c)
{
    switch (c) {
    case ChartCase::aa: return "aa";
    case ChartCase::al1: return "al1";
    case ChartCase::al2: return "al2";
    case ChartCase::lc1: return "lc1";
    case ChartCase::lc2: return "lc2";
    }
    return "?";
}

ChartImage chart_map(ChartCase c, const FamilyParams& params)
{
    const LaurentPoly2 v[3] = {{}, LaurentPoly2::var(0), LaurentPoly2::var(1)};
    const LaurentPoly2 one(Rational(1));
    const Polynomial* p[3] = {nullptr, &params.p1, &params.p2};
    const int d[3] = {0, params.d1(), params.d2()};
    LaurentPoly2 x[3], y[3];
    switch (c) {
    case ChartCase::aa:
        for (int j = 1; j <= 2; ++j) {
            x[j] = v[j];
            y[j] = (v[3 - j] - evaluate(reversed_polynomial(*p[j]), v[j])) * LaurentPoly2::var(static_cast<std::size_t>(j - 1), -d[j]);
        }
        break;
    case ChartCase::al1:
    case ChartCase::al2: {
        const int j = c == ChartCase::al1 ? 1 : 2;
        const int o = 3 - j;
        if (*p[o] != Polynomial{Rational(1)})
            throw DomainError("chart " + to_string(c) + " needs p" + std::to_string(o) + " = 1");
        const LaurentPoly2 vo_inv = LaurentPoly2::var(static_cast<std::size_t>(o - 1), -1);
        x[j] = v[j];
        x[o] = (v[j] - one) * vo_inv;
        y[j] = (v[j] - one - evaluate(reversed_polynomial(*p[j]), v[j]) * v[o]) *
               LaurentPoly2::var(static_cast<std::size_t>(j - 1), -d[j]) * vo_inv;
        y[o] = v[o];
        break;
    }
    case ChartCase::lc1:
    case ChartCase::lc2: {
        if (params.p1 != Polynomial{Rational(1)} || params.p2 != Polynomial{Rational(1)})
            throw DomainError("chart " + to_string(c) + " needs p1 = p2 = 1");
        const int j = c == ChartCase::lc1 ? 1 : 2;
        const int o = 3 - j;
        const LaurentPoly2 v1_inv = LaurentPoly2::var(0, -1), v2_inv = LaurentPoly2::var(1, -1);
        x[j] = -(v[2] + one) * v1_inv;
        x[o] = -(v[1] + v[2] + one) * v1_inv * v2_inv;
        y[j] = (v[1] + one) * v2_inv;
        y[o] = v[2];
        break;
    }
    }
    return ChartImage{x[1], x[2], y[1], y[2]};
}

ChartReport verify_chart(ChartCase c, const FamilyParams& params)
{
    const ChartImage s = chart_map(c, params);
    ChartReport out;
    const LaurentPoly2 r1 = s.y1 * s.x1.pow(static_cast<unsigned>(params.d1())) -
                            (s.x2 - evaluate(reversed_polynomial(params.p1), s.x1));
    const LaurentPoly2 r2 = s.y2 * s.x2.pow(static_cast<unsigned>(params.d2())) -
                            (s.x1 - evaluate(reversed_polynomial(params.p2), s.x2));
    out.residuals = {r1, r2};

    const LaurentPoly2 v1 = LaurentPoly2::var(0), v2 = LaurentPoly2::var(1);
    LaurentPoly2 back1, back2;
    switch (c) {
    case ChartCase::aa:
        back1 = s.x1;
        back2 = s.x2;
        break;
    case ChartCase::al1:
        back1 = s.x1;
        back2 = s.y2;
        break;
    case ChartCase::al2:
        back1 = s.y1;
        back2 = s.x2;
        break;
    case ChartCase::lc1:
    case ChartCase::lc2:
        back1 = s.y1 * s.y2 - LaurentPoly2(Rational(1));
        back2 = c == ChartCase::lc1 ? s.y2 : s.y1;
        break;
    }
    out.inverse_ok = back1 == v1 && back2 == v2;
    if (!out.inverse_ok) out.notes.push_back("inverse map does not return (v1, v2)");
    out.ok = r1.is_zero() && r2.is_zero() && out.inverse_ok;
    return out;
}

VolumeReport verify_volume_form(ChartCase c, const FamilyParams& params)
{
    const ChartImage s = chart_map(c, params);
    const LaurentPoly2 jac = s.x1.derivative(0) * s.x2.derivative(1) - s.x1.derivative(1) * s.x2.derivative(0);
    VolumeReport out;
    out.jacobian_times_v = jac * LaurentPoly2::var(0) * LaurentPoly2::var(1);
    out.x1x2 = s.x1 * s.x2;
    if (out.jacobian_times_v == out.x1x2)
        out.sign = 1;
    else if (out.jacobian_times_v == -out.x1x2)
        out.sign = -1;
    out.ok = out.sign != 0;
    return out;
}

} // namespace plumbcalc
