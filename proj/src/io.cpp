#include "plumbcalc/io.hpp"

#include "plumbcalc/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace plumbcalc {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    if (!obj.is_object()) throw DomainError(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw DomainError("unknown field '" + key + "' in " + where);
}

const json& require(const json& obj, const std::string& key, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end()) throw DomainError("missing field '" + key + "' in " + where);
    return *it;
}

std::string get_string(const json& v, const std::string& what)
{
    if (!v.is_string()) throw DomainError(what + " must be a string");
    return v.get<std::string>();
}

long long get_int(const json& v, const std::string& what)
{
    if (!v.is_number_integer()) throw DomainError(what + " must be an integer");
    return v.get<long long>();
}

} // namespace

WeightedGraph graph_from_json(const json& doc)
{
    check_keys(doc, {"kind", "vertices", "edges"}, "graph");
    const std::string kind = get_string(require(doc, "kind", "graph"), "kind");
    if (kind != "divisor" && kind != "plumbing") throw DomainError("kind must be 'divisor' or 'plumbing'");
    WeightedGraph g(kind == "divisor" ? GraphKind::divisor : GraphKind::plumbing);

    const json& vs = require(doc, "vertices", "graph");
    if (!vs.is_array()) throw DomainError("vertices must be an array");
    for (const auto& v : vs) {
        check_keys(v, {"id", "weight", "genus", "boundary", "label"}, "vertex");
        Vertex x;
        x.id = get_string(require(v, "id", "vertex"), "vertex id");
        if (x.id.empty()) throw DomainError("vertex id must be non-empty");
        if (g.has_vertex(x.id)) throw DomainError("duplicate vertex id '" + x.id + "'");
        x.weight = get_int(require(v, "weight", "vertex"), "weight of '" + x.id + "'");
        if (v.contains("genus")) x.genus = static_cast<int>(get_int(v["genus"], "genus of '" + x.id + "'"));
        if (v.contains("boundary"))
            x.boundary = static_cast<int>(get_int(v["boundary"], "boundary of '" + x.id + "'"));
        if (v.contains("label")) x.label = get_string(v["label"], "label of '" + x.id + "'");
        if (x.genus != 0) throw DomainError("vertex '" + x.id + "' has genus " + std::to_string(x.genus) + "; only genus 0 is supported");
        if (x.boundary < 0) throw DomainError("vertex '" + x.id + "' has negative boundary count");
        g.add_vertex(std::move(x));
    }

    if (doc.contains("edges")) {
        const json& es = doc["edges"];
        if (!es.is_array()) throw DomainError("edges must be an array");
        for (const auto& e : es) {
            check_keys(e, {"u", "v", "sign"}, "edge");
            const std::string u = get_string(require(e, "u", "edge"), "edge endpoint");
            const std::string v = get_string(require(e, "v", "edge"), "edge endpoint");
            const int sign = e.contains("sign") ? static_cast<int>(get_int(e["sign"], "edge sign")) : 1;
            if (sign != 1 && sign != -1) throw DomainError("edge sign must be +1 or -1");
            if (!g.has_vertex(u) || !g.has_vertex(v))
                throw DomainError("edge '" + u + "'-'" + v + "' references a missing vertex");
            g.add_edge(u, v, sign);
        }
    }
    g.validate();
    return g;
}

json graph_to_json(const WeightedGraph& g)
{
    json doc;
    doc["kind"] = to_string(g.kind());
    json vs = json::array();
    for (const auto& v : g.vertices()) {
        json x{{"id", v.id}, {"weight", v.weight}, {"genus", v.genus}, {"boundary", v.boundary}};
        if (!v.label.empty()) x["label"] = v.label;
        vs.push_back(std::move(x));
    }
    json es = json::array();
    for (const auto& e : g.edges()) es.push_back({{"u", e.u}, {"v", e.v}, {"sign", e.sign}});
    doc["vertices"] = std::move(vs);
    doc["edges"] = std::move(es);
    return doc;
}

WeightedGraph parse_graph(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("malformed JSON: ") + e.what());
    }
    return graph_from_json(doc);
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

WeightedGraph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

json log_to_json(const RewriteLog& log)
{
    json out = json::array();
    for (const auto& m : log) {
        switch (m.type) {
        case Move::Type::blowup: {
            json center = m.center.kind == BlowupCenter::Kind::vertex ? json{{"vertex", m.center.a}}
                                                                     : json{{"edge", {m.center.a, m.center.b}}};
            out.push_back({{"move", "blowup"}, {"center", center}, {"new_id", m.new_id}});
            break;
        }
        case Move::Type::blowdown:
            out.push_back({{"move", "blowdown"}, {"vertex", m.vertex}});
            break;
        case Move::Type::flow:
            out.push_back({{"move", "flow"}, {"vertex", m.vertex}, {"toward", m.toward}});
            break;
        }
    }
    return out;
}

RewriteLog log_from_json(const json& doc)
{
    if (!doc.is_array()) throw DomainError("rewrite log must be a JSON array");
    RewriteLog log;
    for (const auto& m : doc) {
        if (!m.is_object()) throw DomainError("log entry must be an object");
        const std::string kind = get_string(require(m, "move", "log entry"), "move");
        if (kind == "blowup") {
            check_keys(m, {"move", "center", "new_id"}, "blowup entry");
            const json& c = require(m, "center", "blowup entry");
            check_keys(c, {"vertex", "edge"}, "blowup center");
            BlowupCenter center;
            if (c.contains("vertex") == c.contains("edge"))
                throw DomainError("blowup center needs exactly one of 'vertex' or 'edge'");
            if (c.contains("vertex")) {
                center = BlowupCenter::on_vertex(get_string(c["vertex"], "center vertex"));
            } else {
                const json& e = c["edge"];
                if (!e.is_array() || e.size() != 2) throw DomainError("center edge must be a pair of ids");
                center = BlowupCenter::on_edge(get_string(e[0], "edge endpoint"), get_string(e[1], "edge endpoint"));
            }
            log.push_back(Move::blowup(center, get_string(require(m, "new_id", "blowup entry"), "new_id")));
        } else if (kind == "blowdown") {
            check_keys(m, {"move", "vertex"}, "blowdown entry");
            log.push_back(Move::blowdown(get_string(require(m, "vertex", "blowdown entry"), "vertex")));
        } else if (kind == "flow") {
            check_keys(m, {"move", "vertex", "toward"}, "flow entry");
            log.push_back(Move::flow(get_string(require(m, "vertex", "flow entry"), "vertex"),
                                     get_string(require(m, "toward", "flow entry"), "toward")));
        } else {
            throw DomainError("unknown move '" + kind + "'");
        }
    }
    return log;
}

std::string graph_to_dot(const WeightedGraph& g, const std::string& name)
{
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << "graph " << quote(name) << " {\n";
    os << "  // kind: " << to_string(g.kind()) << "\n";
    for (const auto& v : g.vertices()) {
        std::string text = (v.label.empty() ? v.id : v.label) + "\\n" + std::to_string(v.weight);
        if (v.genus != 0) text += " g=" + std::to_string(v.genus);
        if (v.boundary != 0) text += " r=" + std::to_string(v.boundary);
        os << "  " << quote(v.id) << " [label=\"";
        for (char c : text) {
            if (c == '"') os << '\\';
            os << c;
        }
        os << "\"];\n";
    }
    for (const auto& e : g.edges()) {
        os << "  " << quote(e.u) << " -- " << quote(e.v);
        if (e.sign < 0) os << " [style=dashed, label=\"-\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace plumbcalc
