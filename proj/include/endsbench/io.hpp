#pragma once
// JSON input and canonical JSON output.
//
// Graph-of-groups schema:
//   {"prime":2,
//    "vertices":[{"id":"v0","group":{"type":"cyclic","params":[2,2]}}],
//    "edges":[{"id":"e0","from":"v0","to":"v0",
//              "group":{"type":"cyclic","params":[2,1]},"inj0":[2],"inj1":[2]}]}
// inj0/inj1 list the images of the edge group's generators as element indices
// of the target vertex group. Groups are catalog descriptors, direct products
// {"type":"direct_product","params":[<group>,<group>]}, or explicit tables
// {"type":"table","table":[[...],...],"generators":[...]}.

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ends.hpp"
#include "gog.hpp"
#include "graphs.hpp"

namespace endsbench {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& obj, const std::string& key, const std::string& where)
{
    if (!obj.is_object()) throw InputError(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(where + "/" + key, "missing field '" + key + "'");
    return *it;
}

inline int as_int(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) throw InputError(where, "expected an integer");
    const auto v = j.get<long long>();
    if (v < -1000000 || v > 1000000) throw InputError(where, "integer out of range");
    return static_cast<int>(v);
}

inline std::string as_string(const Json& j, const std::string& where)
{
    if (!j.is_string()) throw InputError(where, "expected a string");
    return j.get<std::string>();
}

inline std::vector<int> int_array(const Json& j, const std::string& where)
{
    if (!j.is_array()) throw InputError(where, "expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], where + "/" + std::to_string(i)));
    return out;
}

inline GroupSpec parse_spec(const Json& j, const std::string& where)
{
    GroupSpec s;
    s.type = as_string(field(j, "type", where), where + "/type");
    if (s.type == "direct_product") {
        const auto& ps = field(j, "params", where);
        if (!ps.is_array() || ps.size() != 2) throw InputError(where + "/params", "direct_product takes two groups");
        for (std::size_t i = 0; i < 2; ++i) s.factors.push_back(parse_spec(ps[i], where + "/params/" + std::to_string(i)));
    } else if (j.contains("params")) {
        s.params = int_array(j["params"], where + "/params");
    }
    return s;
}

} // namespace detail

inline GroupRef parse_group(const Json& j, int prime, const std::string& where)
{
    const auto type = detail::as_string(detail::field(j, "type", where), where + "/type");
    GroupRef g;
    try {
        if (type == "table") {
            const auto& t = detail::field(j, "table", where);
            if (!t.is_array()) throw InputError(where + "/table", "expected an array of rows");
            std::vector<std::vector<int>> rows;
            for (std::size_t r = 0; r < t.size(); ++r) rows.push_back(detail::int_array(t[r], where + "/table/" + std::to_string(r)));
            if (rows.size() > static_cast<std::size_t>(kMaxGroupOrder)) throw InputError(where + "/table", "table too large");
            g = table_group(prime, std::move(rows), detail::int_array(detail::field(j, "generators", where), where + "/generators"));
        } else {
            g = make_group(detail::parse_spec(j, where));
        }
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(where, e.what());
    }
    if (g->prime() != prime) throw InputError(where, "group prime differs from the declared prime");
    return g;
}

inline Json group_to_json(const FiniteGroup& g)
{
    const auto& s = g.spec();
    if (s.type == "table") {
        Json rows = Json::array();
        for (int a = 0; a < g.order(); ++a) {
            Json r = Json::array();
            for (int b = 0; b < g.order(); ++b) r.push_back(g.mult(a, b));
            rows.push_back(std::move(r));
        }
        return {{"type", "table"}, {"table", std::move(rows)}, {"generators", g.generators()}};
    }
    auto spec_json = [](const auto& self, const GroupSpec& sp) -> Json {
        if (sp.type == "direct_product") return {{"type", sp.type}, {"params", {self(self, sp.factors[0]), self(self, sp.factors[1])}}};
        return {{"type", sp.type}, {"params", sp.params}};
    };
    return spec_json(spec_json, s);
}

/// Parses and validates a graph of groups. Errors carry a JSON pointer.
inline GraphOfGroups parse_gog(const Json& j)
{
    GraphOfGroups g;
    g.prime = detail::as_int(detail::field(j, "prime", ""), "/prime");
    if (g.prime != 2 && g.prime != 3) throw InputError("/prime", "prime must be 2 or 3");
    const auto& vs = detail::field(j, "vertices", "");
    if (!vs.is_array() || vs.empty()) throw InputError("/vertices", "expected a non-empty array");
    std::map<std::string, int> index;
    for (std::size_t v = 0; v < vs.size(); ++v) {
        const std::string where = "/vertices/" + std::to_string(v);
        const auto id = detail::as_string(detail::field(vs[v], "id", where), where + "/id");
        if (!index.emplace(id, static_cast<int>(v)).second) throw InputError(where + "/id", "duplicate vertex id '" + id + "'");
        g.vertex_ids.push_back(id);
        g.vertex_groups.push_back(parse_group(detail::field(vs[v], "group", where), g.prime, where + "/group"));
    }
    g.graph.vertex_count = static_cast<int>(vs.size());
    const auto& es = detail::field(j, "edges", "");
    if (!es.is_array()) throw InputError("/edges", "expected an array");
    std::set<std::string> edge_names;
    for (std::size_t e = 0; e < es.size(); ++e) {
        const std::string where = "/edges/" + std::to_string(e);
        const auto id = detail::as_string(detail::field(es[e], "id", where), where + "/id");
        if (!edge_names.insert(id).second) throw InputError(where + "/id", "duplicate edge id '" + id + "'");
        auto endpoint = [&](const char* key) {
            const auto name = detail::as_string(detail::field(es[e], key, where), where + "/" + key);
            auto it = index.find(name);
            if (it == index.end()) throw InputError(where + "/" + key, "edge " + id + " references unknown vertex '" + name + "'");
            return it->second;
        };
        const Edge ed{endpoint("from"), endpoint("to")};
        const auto eg = parse_group(detail::field(es[e], "group", where), g.prime, where + "/group");
        auto inj = [&](const char* key, int v) {
            const auto images = detail::int_array(detail::field(es[e], key, where), where + "/" + key);
            try {
                auto h = hom_from_images(eg, g.vertex_groups[static_cast<std::size_t>(v)], images);
                if (!is_injective(h)) throw InputError(where + "/" + key, "edge " + id + ": " + key + " is not injective");
                return h;
            } catch (const ImagesInconsistent& err) {
                throw InputError(where + "/" + key, "edge " + id + ": " + err.what());
            }
        };
        g.graph.edges.push_back(ed);
        g.edge_ids.push_back(id);
        g.edge_groups.push_back(eg);
        g.inj0.push_back(inj("inj0", ed.d0));
        g.inj1.push_back(inj("inj1", ed.d1));
    }
    check_structure(g);
    return g;
}

inline GraphOfGroups parse_gog_text(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_gog(j);
}

inline GraphOfGroups parse_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_gog_text(ss.str());
}

inline Json gog_to_json(const GraphOfGroups& g)
{
    Json vs = Json::array(), es = Json::array();
    for (int v = 0; v < g.vertex_count(); ++v)
        vs.push_back({{"id", g.vertex_ids[static_cast<std::size_t>(v)]}, {"group", group_to_json(*g.vertex_groups[static_cast<std::size_t>(v)])}});
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto i = static_cast<std::size_t>(e);
        const auto& eg = *g.edge_groups[i];
        std::vector<int> im0, im1;
        for (int s : eg.generators()) {
            im0.push_back(g.inj0[i](s));
            im1.push_back(g.inj1[i](s));
        }
        es.push_back({{"id", g.edge_ids[i]},
                      {"from", g.vertex_ids[static_cast<std::size_t>(g.graph.edges[i].d0)]},
                      {"to", g.vertex_ids[static_cast<std::size_t>(g.graph.edges[i].d1)]},
                      {"group", group_to_json(eg)},
                      {"inj0", im0},
                      {"inj1", im1}});
    }
    return {{"prime", g.prime}, {"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

/// Same graph, ids, group tables and edge maps.
inline bool structurally_equal(const GraphOfGroups& a, const GraphOfGroups& b)
{
    auto same = [](const GroupRef& x, const GroupRef& y) { return detail::same_group(x, y); };
    if (a.prime != b.prime || !(a.graph == b.graph) || a.vertex_ids != b.vertex_ids || a.edge_ids != b.edge_ids) return false;
    for (std::size_t v = 0; v < a.vertex_groups.size(); ++v)
        if (!same(a.vertex_groups[v], b.vertex_groups[v])) return false;
    for (std::size_t e = 0; e < a.edge_groups.size(); ++e)
        if (!same(a.edge_groups[e], b.edge_groups[e]) || a.inj0[e].image != b.inj0[e].image || a.inj1[e].image != b.inj1[e].image)
            return false;
    return true;
}

inline Json graph_to_json(const Graph& x)
{
    Json es = Json::array();
    for (const auto& e : x.edges) es.push_back({e.d0, e.d1});
    return {{"vertices", x.vertex_count}, {"edges", std::move(es)}};
}

inline Json witness_to_json(const ProperWitness& w)
{
    Json maps = Json::array();
    for (const auto& h : w.vertex_maps) {
        std::vector<int> gens;
        for (int s : h.source->generators()) gens.push_back(h(s));
        maps.push_back(gens);
    }
    return {{"quotient", group_to_json(*w.quotient)}, {"vertex_maps", std::move(maps)}, {"stable_images", w.stable_images}};
}

inline Json level_to_json(const EndsLevelReport& r)
{
    Json j = {{"level", r.level},
              {"h1_dim", r.h1_dim},
              {"gen_count", r.gen_count},
              {"b1", r.b1},
              {"edge_count", r.edge_count},
              {"bound_rhs", r.bound_rhs},
              {"bound_holds", r.bound_holds},
              {"ends_signature", {{"h0_dim", r.ends_signature.h0_dim}, {"h1_dim", r.ends_signature.h1_dim}}}};
    j["fox_h1_dim"] = r.fox_h1_dim ? Json(*r.fox_h1_dim) : Json(nullptr);
    return j;
}

inline Json counting_to_json(const Graph& x, const CountingReport& r)
{
    Json j = graph_to_json(x);
    j["E"] = r.edge_count;
    j["M"] = r.matching_size;
    j["T"] = r.t_value;
    j["bound"] = r.bound;
    j["holds"] = r.holds;
    j["exceptional"] = r.exceptional;
    return j;
}

/// Canonical form: sorted keys, compact, no trailing newline.
inline std::string canonical(const Json& j) { return j.dump(); }

inline void emit_report(const Json& report, const std::string& path)
{
    const auto text = canonical(report);
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fputc('\n', stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

} // namespace endsbench
