#include "plumbcalc/cli.hpp"

#include "plumbcalc/divisor.hpp"
#include "plumbcalc/errors.hpp"
#include "plumbcalc/family.hpp"
#include "plumbcalc/io.hpp"
#include "plumbcalc/plumbing.hpp"
#include "plumbcalc/topology.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace plumbcalc::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_ids(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

json seifert_to_json(const SeifertData& s)
{
    json ex = json::array(), fr = json::array();
    for (const auto& r : s.exceptional) ex.push_back(to_string(r));
    for (const auto& r : s.twig_fractions) fr.push_back(to_string(r));
    return json{{"base_genus", s.base_genus},
                {"boundary_count", s.boundary_count},
                {"exceptional", ex},
                {"twig_fractions", fr},
                {"central_weight", s.central_weight}};
}

json abelian_to_json(const AbelianGroup& a)
{
    json t = json::array();
    for (const auto& x : a.torsion) t.push_back(to_string(x));
    return json{{"group", a.to_string()}, {"free_rank", a.free_rank}, {"torsion", t}};
}

json log_summary(const RewriteLog& log) { return log_to_json(log); }

struct Options {
    bool json_output = false;

    // construct
    int d1 = 0, d2 = 0;
    bool by_blowups = false, d_only = false;
    std::string p1, p2;
    // graph files
    std::string file, file2, log_file, log_out;
    // flow
    std::string vertex, toward;
    // bark
    std::string twig;
    // compare
    bool exact_signs = false;
    // pi1
    std::size_t quotients = 0;
    std::vector<std::string> group_files;
    // verify-chart
    std::string chart_case;
};

void emit_graph(std::ostream& out, const Options& o, const WeightedGraph& g, json extra = json::object())
{
    if (!o.json_output) {
        out << graph_to_json(g).dump(2) << "\n";
        return;
    }
    extra["graph"] = graph_to_json(g);
    out << extra.dump(2) << "\n";
}

void write_log(const Options& o, const RewriteLog& log)
{
    if (o.log_out.empty()) return;
    std::ofstream f(o.log_out);
    if (!f) throw DomainError("cannot write '" + o.log_out + "'");
    f << log_to_json(log).dump(2) << "\n";
}

FamilyParams params_from(const Options& o, bool allow_default)
{
    Polynomial a, b;
    if (!o.p1.empty()) a = parse_polynomial(o.p1);
    if (!o.p2.empty()) b = parse_polynomial(o.p2);
    if (allow_default) {
        if (a.empty()) {
            a.assign(static_cast<std::size_t>(o.d1), Rational(0));
            a[0] = 1;
        }
        if (b.empty()) {
            b.assign(static_cast<std::size_t>(o.d2), Rational(0));
            b[0] = 1;
        }
    }
    return FamilyParams(a, b);
}

void require_degrees(const Options& o)
{
    if (o.d1 < 1 || o.d2 < 1) throw UsageError("--d1 and --d2 must be at least 1");
}

int cmd_construct(const Options& o, std::ostream& out)
{
    require_degrees(o);
    if (!o.by_blowups && (!o.p1.empty() || !o.p2.empty())) throw UsageError("--p1/--p2 need --by-blowups");
    LabeledFamilyGraph fam;
    json extra = json::object();
    if (o.by_blowups) {
        const FamilyParams params = params_from(o, true);
        if (params.d1() != o.d1 || params.d2() != o.d2)
            throw UsageError("--p1 must have d1 coefficients and --p2 must have d2 coefficients");
        auto r = build_by_blowups(params);
        fam = std::move(r.family);
        extra["log"] = log_summary(r.log);
    } else {
        fam = build_boundary_graph(o.d1, o.d2);
    }
    extra["d_part"] = json(std::vector<std::string>(fam.d_part.begin(), fam.d_part.end()));
    emit_graph(out, o, o.d_only ? fam.boundary() : fam.graph, extra);
    return kOk;
}

int cmd_standardize(const Options& o, std::ostream& out, bool minimal_only)
{
    const WeightedGraph g = read_graph_file(o.file);
    const Rewrite r = minimal_only ? snc_minimalize(g) : standardize(g);
    write_log(o, r.log);
    json extra{{"log", log_to_json(r.log)}};
    if (!minimal_only) extra["standard"] = is_standard(r.graph).standard;
    emit_graph(out, o, r.graph, extra);
    return kOk;
}

int cmd_flow(const Options& o, std::ostream& out)
{
    const WeightedGraph g = read_graph_file(o.file);
    emit_graph(out, o, elementary_flow(g, o.vertex, o.toward));
    return kOk;
}

int cmd_bark(const Options& o, std::ostream& out)
{
    const WeightedGraph g = read_graph_file(o.file);
    const bool one_twig = !o.twig.empty();
    const auto coeffs = one_twig ? bark(g, split_ids(o.twig)) : d_sharp_coefficients(g);
    if (o.json_output) {
        json m = json::object();
        for (const auto& [id, c] : coeffs) m[id] = to_string(c);
        out << json{{one_twig ? "bark" : "d_sharp", m}}.dump(2) << "\n";
    } else {
        for (const auto& [id, c] : coeffs) out << id << " " << to_string(c) << "\n";
    }
    return kOk;
}

json normal_form_extra(const NormalForm& nf)
{
    json extra{{"tag", to_string(nf.tag)}, {"normal", is_normal(nf.graph).normal}};
    if (nf.seifert) extra["seifert"] = seifert_to_json(*nf.seifert);
    return extra;
}

int cmd_normalize(const Options& o, std::ostream& out, bool reverse)
{
    NormalForm nf = normalize(read_graph_file(o.file));
    if (reverse) nf = reverse_orientation(nf);
    emit_graph(out, o, nf.graph, normal_form_extra(nf));
    return kOk;
}

int cmd_compare(const Options& o, std::ostream& out)
{
    const WeightedGraph a = read_graph_file(o.file);
    const WeightedGraph b = read_graph_file(o.file2);
    const bool flips = !o.exact_signs && a.kind() == GraphKind::plumbing && b.kind() == GraphKind::plumbing;
    const auto map = find_isomorphism(a, b, flips ? SignMode::up_to_vertex_flips : SignMode::exact);
    if (o.json_output) {
        json doc{{"isomorphic", map.has_value()}, {"sign_mode", flips ? "up_to_vertex_flips" : "exact"}};
        if (map) doc["witness"] = *map;
        out << doc.dump(2) << "\n";
    } else {
        out << (map ? "isomorphic" : "not isomorphic") << "\n";
        if (map)
            for (const auto& [x, y] : *map) out << "  " << x << " -> " << y << "\n";
    }
    return kOk;
}

int cmd_jsj(const Options& o, std::ostream& out)
{
    const auto pieces = jsj_cut(normalize(read_graph_file(o.file)).graph);
    if (o.json_output) {
        json arr = json::array();
        for (const auto& p : pieces) arr.push_back(seifert_to_json(p));
        out << json{{"pieces", arr}}.dump(2) << "\n";
    } else {
        for (const auto& p : pieces) out << p.to_string() << "\n";
    }
    return kOk;
}

int cmd_h1(const Options& o, std::ostream& out)
{
    WeightedGraph g = read_graph_file(o.file);
    if (g.kind() == GraphKind::divisor) g = from_divisor_graph(g);
    const AbelianGroup h = h1_from_graph(g);
    if (o.json_output)
        out << json{{"h1", abelian_to_json(h)}}.dump(2) << "\n";
    else
        out << h.to_string() << "\n";
    return kOk;
}

int cmd_pi1(const Options& o, std::ostream& out)
{
    require_degrees(o);
    if (o.quotients > 12 && o.group_files.empty()) throw UsageError("--quotients supports orders up to 12");
    const GroupPresentation p = pi1_presentation(o.d1, o.d2);
    std::vector<FiniteGroupTable> groups;
    if (o.quotients > 0) groups = small_group_catalog(o.quotients);
    for (const auto& f : o.group_files) groups.push_back(group_from_json(json::parse(read_text_file(f)), f));

    struct Row {
        std::string name;
        std::size_t order;
        std::uint64_t count;
    };
    std::vector<Row> rows;
    for (const auto& g : groups) {
        const auto a = count_homs(p, g, EnumerationOrder::first_generator_outermost);
        const auto b = count_homs(p, g, EnumerationOrder::last_generator_outermost);
        if (a != b) throw InternalError("hom counts differ between enumeration orders for " + g.name());
        rows.push_back({g.name(), g.order(), a});
    }
    const AbelianGroup ab = abelianization(p);
    if (o.json_output) {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(json{{"group", r.name}, {"order", r.order}, {"homs", r.count}});
        out << json{{"presentation", p.to_string()}, {"abelianization", abelian_to_json(ab)}, {"quotients", arr}}.dump(2)
            << "\n";
    } else {
        out << p.to_string() << "\n";
        out << "abelianization: " << ab.to_string() << "\n";
        if (!rows.empty()) {
            std::size_t w = 5;
            for (const auto& r : rows) w = std::max(w, r.name.size());
            out << "group" << std::string(w - 5 + 2, ' ') << "order  homs\n";
            for (const auto& r : rows) {
                std::string ord = std::to_string(r.order);
                out << r.name << std::string(w - r.name.size() + 2, ' ') << ord << std::string(7 - std::min<std::size_t>(ord.size(), 6), ' ')
                    << r.count << "\n";
            }
        }
    }
    return kOk;
}

int cmd_alexander(const Options& o, std::ostream& out)
{
    require_degrees(o);
    const LaurentPoly1 a = alexander_polynomial(o.d1, o.d2);
    const auto frac = two_bridge_fraction(o.d1, o.d2);
    const std::string text = a.to_string({"t"});
    const std::string fr = to_string(frac.first) + "/" + to_string(frac.second);
    if (o.json_output) {
        json coeffs = json::object();
        for (const auto& [e, c] : a.terms()) coeffs[std::to_string(e[0])] = to_string(c);
        out << json{{"alexander", text},
                    {"coefficients", coeffs},
                    {"two_bridge_fraction", fr},
                    {"trefoil_class", two_bridge_equivalent(frac, {3, 1})}}
                   .dump(2)
            << "\n";
    } else {
        out << "alexander: " << text << "\n";
        out << "two-bridge fraction: " << fr << "\n";
    }
    return kOk;
}

int cmd_homology(const Options& o, std::ostream& out)
{
    require_degrees(o);
    const HomologyReport h = surface_homology(o.d1, o.d2);
    if (o.json_output) {
        out << json{{"h0", abelian_to_json(h.h0)},
                    {"h1", abelian_to_json(h.h1)},
                    {"h2", abelian_to_json(h.h2)},
                    {"euler_characteristic", h.euler_characteristic}}
                   .dump(2)
            << "\n";
    } else {
        out << "H0 = " << h.h0.to_string() << "\nH1 = " << h.h1.to_string() << "\nH2 = " << h.h2.to_string()
            << "\nchi = " << h.euler_characteristic << "\n";
    }
    return kOk;
}

int cmd_picard(const Options& o, std::ostream& out)
{
    require_degrees(o);
    const PicardReport r = picard_check(build_boundary_graph(o.d1, o.d2));
    if (o.json_output) {
        out << json{{"unimodular", r.unimodular}, {"det", to_string(r.det)}, {"relations_verified", r.relations_verified}}
                   .dump(2)
            << "\n";
    } else {
        out << "det = " << to_string(r.det) << "\nunimodular: " << (r.unimodular ? "yes" : "no")
            << "\nrelations: " << (r.relations_verified ? "verified" : "FAILED") << "\n";
    }
    return kOk;
}

int cmd_verify_chart(const Options& o, std::ostream& out)
{
    if (o.p1.empty() || o.p2.empty()) throw UsageError("verify-chart needs --p1 and --p2");
    const ChartCase c = parse_chart_case(o.chart_case);
    const FamilyParams params(parse_polynomial(o.p1), parse_polynomial(o.p2));
    const ChartReport r = verify_chart(c, params);
    const VolumeReport v = verify_volume_form(c, params);
    const std::array<std::string, 2> vars{"v1", "v2"};
    if (o.json_output) {
        json res = json::array();
        for (const auto& p : r.residuals) res.push_back(p.to_string(vars));
        out << json{{"case", to_string(c)},
                    {"ok", r.ok},
                    {"residuals", res},
                    {"inverse_ok", r.inverse_ok},
                    {"notes", r.notes},
                    {"volume_ok", v.ok},
                    {"volume_sign", v.sign}}
                   .dump(2)
            << "\n";
    } else {
        out << "case " << to_string(c) << ": " << (r.ok ? "ok" : "FAILED") << "\n";
        for (std::size_t i = 0; i < r.residuals.size(); ++i)
            out << "residual " << i + 1 << ": " << r.residuals[i].to_string(vars) << "\n";
        out << "inverse: " << (r.inverse_ok ? "ok" : "FAILED") << "\n";
        out << "volume form ratio: " << v.sign << (v.ok ? "" : " (FAILED)") << "\n";
        for (const auto& n : r.notes) out << "note: " << n << "\n";
    }
    return (r.ok && v.ok) ? kOk : kDomainError;
}

int cmd_dot(const Options& o, std::ostream& out)
{
    out << graph_to_dot(read_graph_file(o.file));
    return kOk;
}

int cmd_replay(const Options& o, std::ostream& out)
{
    const WeightedGraph g = read_graph_file(o.file);
    const RewriteLog log = log_from_json(json::parse(read_text_file(o.log_file)));
    emit_graph(out, o, replay(g, log));
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Divisor and plumbing calculus for the S_{p1,p2} family", "plumbcalc"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.json_output, "machine-readable output");

    std::map<CLI::App*, std::function<int()>> actions;
    auto sub = [&](const std::string& name, const std::string& help, std::function<int()> fn) {
        CLI::App* s = app.add_subcommand(name, help);
        actions[s] = std::move(fn);
        return s;
    };
    auto degrees = [&](CLI::App* s) {
        s->add_option("--d1", o.d1, "degree parameter d1")->required();
        s->add_option("--d2", o.d2, "degree parameter d2")->required();
    };
    auto file_arg = [&](CLI::App* s) { s->add_option("file", o.file, "graph JSON file")->required(); };

    auto* construct = sub("construct", "emit the family boundary graph", [&] { return cmd_construct(o, out); });
    degrees(construct);
    construct->add_flag("--by-blowups", o.by_blowups, "build by replaying blowups from the quadric");
    construct->add_option("--p1", o.p1, "coefficients of p1, leading first");
    construct->add_option("--p2", o.p2, "coefficients of p2, leading first");
    construct->add_flag("--d-only", o.d_only, "omit A1 and A2");

    auto* standard = sub("standardize", "reduce a divisor graph to standard form", [&] { return cmd_standardize(o, out, false); });
    file_arg(standard);
    standard->add_option("--log-out", o.log_out, "write the rewrite log here");
    auto* minimal = sub("minimalize", "contract superfluous (-1)-vertices", [&] { return cmd_standardize(o, out, true); });
    file_arg(minimal);
    minimal->add_option("--log-out", o.log_out, "write the rewrite log here");

    auto* flow = sub("flow", "elementary transformation at a 0-vertex", [&] { return cmd_flow(o, out); });
    file_arg(flow);
    flow->add_option("--vertex", o.vertex, "the 0-vertex")->required();
    flow->add_option("--toward", o.toward, "neighbour whose type drops")->required();

    auto* bk = sub("bark", "bark of a twig, or D# coefficients", [&] { return cmd_bark(o, out); });
    file_arg(bk);
    bk->add_option("--twig", o.twig, "comma-separated twig ids, tip first");

    auto* norm = sub("normalize", "plumbing normal form", [&] { return cmd_normalize(o, out, false); });
    file_arg(norm);
    auto* rev = sub("reverse", "normal form with the opposite orientation", [&] { return cmd_normalize(o, out, true); });
    file_arg(rev);

    auto* cmp = sub("compare", "isomorphism test with witness", [&] { return cmd_compare(o, out); });
    file_arg(cmp);
    cmp->add_option("file2", o.file2, "second graph JSON file")->required();
    cmp->add_flag("--exact-signs", o.exact_signs, "compare plumbing edge signs exactly");

    file_arg(sub("jsj", "Seifert pieces of the normal form", [&] { return cmd_jsj(o, out); }));
    file_arg(sub("h1", "first homology of the plumbed manifold", [&] { return cmd_h1(o, out); }));

    auto* pi1 = sub("pi1", "fundamental group at infinity and finite quotients", [&] { return cmd_pi1(o, out); });
    degrees(pi1);
    pi1->add_option("--quotients", o.quotients, "count homomorphisms into groups up to this order");
    pi1->add_option("--group", o.group_files, "extra group table JSON files");

    degrees(sub("alexander", "Alexander polynomial of the two-bridge knot", [&] { return cmd_alexander(o, out); }));
    degrees(sub("homology", "homology of the surface", [&] { return cmd_homology(o, out); }));
    degrees(sub("picard", "unimodularity of the boundary", [&] { return cmd_picard(o, out); }));

    auto* chart = sub("verify-chart", "check a coordinate chart symbolically", [&] { return cmd_verify_chart(o, out); });
    chart->add_option("--case", o.chart_case, "aa, al1, al2, lc1 or lc2")->required();
    chart->add_option("--p1", o.p1, "coefficients of p1, leading first");
    chart->add_option("--p2", o.p2, "coefficients of p2, leading first");

    file_arg(sub("dot", "Graphviz rendering", [&] { return cmd_dot(o, out); }));
    auto* rep = sub("replay", "apply a rewrite log", [&] { return cmd_replay(o, out); });
    file_arg(rep);
    rep->add_option("log", o.log_file, "rewrite log JSON file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsageError;
    }

    try {
        for (auto* s : app.get_subcommands())
            if (auto it = actions.find(s); it != actions.end()) return it->second();
        err << "usage error: no subcommand\n";
        return kUsageError;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed JSON: " << e.what() << "\n";
        return kDomainError;
    } catch (const OutOfScopeError& e) {
        err << "out of scope: " << e.what() << "\n";
        return kOutOfScope;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
}

} // namespace plumbcalc::cli
