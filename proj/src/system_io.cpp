#include "epka/system_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace epka {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& msg) {
    throw Error(ErrorKind::SchemaError, msg);
}

const json& need(const json& obj, const char* key) {
    if (!obj.contains(key)) schema_fail(std::string("missing key '") + key + "'");
    return obj.at(key);
}

std::string need_string(const json& obj, const char* key) {
    const json& v = need(obj, key);
    if (!v.is_string()) schema_fail(std::string("key '") + key + "' must be a string");
    return v.get<std::string>();
}

std::int64_t need_int(const json& obj, const char* key) {
    const json& v = need(obj, key);
    if (!v.is_number_integer()) schema_fail(std::string("key '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::vector<std::int64_t> int_vector(const json& v, const std::string& what) {
    if (!v.is_array()) schema_fail(what + " must be an integer array");
    std::vector<std::int64_t> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) schema_fail(what + " must contain only integers");
        out.push_back(x.get<std::int64_t>());
    }
    return out;
}

GroupElement element_from_json(const Group& group, const json& v, const std::string& what) {
    if (v.is_string()) {
        auto found = group.find(v.get<std::string>());
        if (!found) schema_fail(what + ": unknown group element '" + v.get<std::string>() + "'");
        return *found;
    }
    if (v.is_array()) {
        if (group.is_finite()) schema_fail(what + ": vector element in a finite group");
        GroupElement g;
        g.vec = int_vector(v, what);
        if (g.vec.size() != static_cast<std::size_t>(group.rank()))
            schema_fail(what + ": vector rank mismatch");
        return g;
    }
    schema_fail(what + ": group element must be a name or an integer vector");
}

}  // namespace

SystemData parse_system_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& err) {
        schema_fail(std::string("invalid JSON: ") + err.what());
    }
    if (!doc.is_object()) schema_fail("top-level document must be an object");

    SystemData data;
    data.graph.k = static_cast<int>(need_int(doc, "k"));
    const json& vertices = need(doc, "vertices");
    if (!vertices.is_array()) schema_fail("'vertices' must be an array");
    for (const auto& v : vertices) {
        if (!v.is_string()) schema_fail("vertex ids must be strings");
        data.graph.vertices.push_back(v.get<std::string>());
    }
    const json& edges = need(doc, "edges");
    if (!edges.is_array()) schema_fail("'edges' must be an array");
    for (const auto& e : edges) {
        if (!e.is_object()) schema_fail("each edge must be an object");
        data.graph.edges.push_back({need_string(e, "id"), static_cast<int>(need_int(e, "color")),
                                    need_string(e, "source"), need_string(e, "range")});
    }
    if (doc.contains("squares")) {
        const json& squares = doc.at("squares");
        if (!squares.is_array()) schema_fail("'squares' must be an array");
        for (const auto& s : squares)
            data.graph.squares.push_back({need_string(s, "e"), need_string(s, "f"),
                                          need_string(s, "f2"), need_string(s, "e2")});
    }

    const json& group = need(doc, "group");
    std::string type = need_string(group, "type");
    std::vector<std::pair<std::string, GroupElement>> named_generators;
    if (type == "finite") {
        FiniteGroupData fg;
        const json& elems = need(group, "elements");
        if (!elems.is_array()) schema_fail("'group.elements' must be an array");
        for (const auto& e : elems) {
            if (!e.is_string()) schema_fail("group element ids must be strings");
            fg.elements.push_back(e.get<std::string>());
        }
        const json& table = need(group, "table");
        if (!table.is_array()) schema_fail("'group.table' must be an array of arrays");
        for (const auto& row : table) {
            if (!row.is_array()) schema_fail("'group.table' rows must be arrays");
            std::vector<std::string> r;
            for (const auto& cell : row) {
                if (!cell.is_string()) schema_fail("'group.table' entries must be element ids");
                r.push_back(cell.get<std::string>());
            }
            fg.table.push_back(std::move(r));
        }
        data.group = Group::finite(fg);
    } else if (type == "free_abelian") {
        data.group = Group::free_abelian(static_cast<int>(need_int(group, "rank")));
    } else {
        schema_fail("group type must be 'finite' or 'free_abelian'");
    }

    const json& generators = need(doc, "generators");
    if (!generators.is_array()) schema_fail("'generators' must be an array");
    for (const auto& g : generators) {
        if (g.is_string()) {
            if (!data.group.is_finite())
                schema_fail("free abelian generators need {name, vector} objects");
            auto found = data.group.find(g.get<std::string>());
            if (!found) schema_fail("generator '" + g.get<std::string>() + "' is not an element");
            named_generators.emplace_back(g.get<std::string>(), *found);
        } else if (g.is_object()) {
            std::string name = need_string(g, "name");
            GroupElement elem = element_from_json(data.group, need(g, "vector"),
                                                  "generator '" + name + "'");
            data.group.add_alias(name, elem);
            named_generators.emplace_back(name, elem);
        } else {
            schema_fail("generators must be element ids or {name, vector} objects");
        }
    }

    // action tables keyed by generator name
    KGraph skeleton(data.graph);  // resolves ids; rebuilt later by the caller
    auto table_section = [&](const char* key) -> const json& {
        const json& section = need(doc, key);
        if (!section.is_object()) schema_fail(std::string("'") + key + "' must be an object");
        return section;
    };
    const json& vact = table_section("vertex_action");
    const json& eact = table_section("edge_action");
    const json& coc = table_section("cocycle");

    for (const auto& [name, elem] : named_generators) {
        GeneratorTables t;
        t.gen = elem;
        if (!vact.contains(name) || !eact.contains(name) || !coc.contains(name))
            schema_fail("generator '" + name +
                        "' needs vertex_action, edge_action and cocycle tables");
        const json& vmap = vact.at(name);
        const json& emap = eact.at(name);
        const json& cmap = coc.at(name);
        t.vertex_map.resize(skeleton.vertex_count());
        for (VertexId v = 0; v < skeleton.vertex_count(); ++v) {
            const std::string& vn = skeleton.vertex_name(v);
            if (!vmap.contains(vn))
                schema_fail("vertex_action[" + name + "] missing vertex '" + vn + "'");
            auto img = skeleton.find_vertex(need_string(vmap, vn.c_str()));
            if (!img) schema_fail("vertex_action[" + name + "][" + vn + "]: unknown vertex");
            t.vertex_map[v] = *img;
        }
        t.edge_map.resize(skeleton.edge_count());
        t.cocycle.resize(skeleton.edge_count());
        for (EdgeId e = 0; e < skeleton.edge_count(); ++e) {
            const std::string& en = skeleton.edge(e).name;
            if (!emap.contains(en))
                schema_fail("edge_action[" + name + "] missing edge '" + en + "'");
            if (!emap.at(en).is_string())
                schema_fail("edge_action[" + name + "][" + en + "] must be an edge id");
            auto img = skeleton.find_edge(emap.at(en).get<std::string>());
            if (!img) schema_fail("edge_action[" + name + "][" + en + "]: unknown edge");
            t.edge_map[e] = *img;
            if (!cmap.contains(en))
                schema_fail("cocycle[" + name + "] missing edge '" + en + "'");
            t.cocycle[e] = element_from_json(data.group, cmap.at(en),
                                             "cocycle[" + name + "][" + en + "]");
        }
        data.tables.push_back(std::move(t));
    }
    return data;
}

SystemPtr load_system(const std::string& json_text) {
    SystemData data = parse_system_json(json_text);
    return SelfSimilarSystem::build(KGraph(data.graph), std::move(data.group),
                                    std::move(data.tables));
}

SystemPtr load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::SchemaError, "cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_system(buf.str());
}

ValidationReport validate_system_json(const std::string& json_text) {
    SystemData data = parse_system_json(json_text);
    return SelfSimilarSystem::validate(KGraph(data.graph), data.group, data.tables);
}

}  // namespace epka
