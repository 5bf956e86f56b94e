// Command-line front end: validation, normal forms, equality, the
// pseudo-freeness and aperiodicity probes, relation checks, the ideal
// lattice, and the single-vertex boundary-quotient calculus.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "epka/expr.hpp"
#include "epka/groupoid.hpp"
#include "epka/ideals.hpp"
#include "epka/rewrite.hpp"
#include "epka/system_io.hpp"
#include "epka/zappa_szep.hpp"

using njson = nlohmann::ordered_json;
using Ring = epka::GaussianRing;
using Element = epka::AlgebraElement<Ring>;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw epka::Error(epka::ErrorKind::SchemaError, "cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

njson report_json(const epka::ValidationReport& report) {
    njson issues = njson::array();
    for (const auto& issue : report.issues())
        issues.push_back({{"rule", issue.rule}, {"detail", issue.detail}});
    return issues;
}

njson element_json(const Element& a) {
    const auto& graph = a.system()->graph();
    const auto& group = a.system()->group();
    njson terms = njson::array();
    for (const auto& [t, c] : a.terms()) {
        terms.push_back({{"coeff", {{"re", c.re}, {"im", c.im}}},
                         {"mu", graph.path_name(t.mu)},
                         {"g", group.name(t.g)},
                         {"nu", graph.path_name(t.nu)}});
    }
    return terms;
}

epka::VertexSet parse_vertex_set(const epka::SelfSimilarSystem& sys, const std::string& text) {
    epka::VertexSet out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        auto v = sys.graph().find_vertex(cur);
        if (!v)
            throw epka::Error(epka::ErrorKind::UnknownVertex, "unknown vertex '" + cur + "'");
        out.insert(*v);
        cur.clear();
    };
    for (char c : text) {
        if (c == ',')
            flush();
        else if (!std::isspace(static_cast<unsigned char>(c)))
            cur += c;
    }
    flush();
    return out;
}

epka::ConstructibleIdeal parse_ideal(const epka::SelfSimilarSystem& sys,
                                     const std::string& text) {
    if (text == "empty") return epka::empty_ideal();
    if (text == "full") return epka::full_ideal(sys.graph());
    std::vector<epka::Path> gens;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        gens.push_back(epka::parse_path_text(sys, cur));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',')
            flush();
        else if (!std::isspace(static_cast<unsigned char>(c)))
            cur += c;
    }
    flush();
    return epka::make_ideal(sys.graph(), std::move(gens));
}

epka::ZSElement parse_zs(const epka::SelfSimilarSystem& sys, const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '(' && body.back() == ')')
        body = body.substr(1, body.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string::npos)
        throw epka::Error(epka::ErrorKind::ParseError,
                          "semigroup element must look like (path, g)");
    return {epka::parse_path_text(sys, body.substr(0, comma)),
            epka::parse_group_element_text(sys, body.substr(comma + 1))};
}

std::string ideal_name(const epka::SelfSimilarSystem& sys,
                       const epka::ConstructibleIdeal& ideal) {
    if (ideal.is_empty()) return "empty";
    std::string out;
    for (std::size_t i = 0; i < ideal.generators.size(); ++i) {
        if (i) out += ",";
        out += sys.graph().path_name(ideal.generators[i]);
    }
    return out;
}

void emit(bool json_mode, const njson& doc, const std::string& text) {
    if (json_mode)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic calculator for algebras of self-similar k-graphs"};
    app.require_subcommand(1);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "machine-readable JSON output");

    std::string file, expr1, set_text, degree_text, zs_x, zs_y, ideal_x, ideal_y,
        family_text;
    std::vector<std::string> eq_exprs;
    std::uint64_t budget = 10000;
    std::int64_t group_ball = 2;

    auto* validate = app.add_subcommand("validate", "check all axioms of a system file");
    validate->add_option("file", file)->required();

    auto* normalize_cmd = app.add_subcommand("normalize", "print the normal form of an element");
    normalize_cmd->add_option("file", file)->required();
    normalize_cmd->add_option("-e,--expr", expr1, "element expression")->required();

    auto* eq = app.add_subcommand("eq", "decide equality of two elements");
    eq->add_option("file", file)->required();
    eq->add_option("-e,--expr", eq_exprs, "element expressions (give -e twice)")
        ->expected(2)
        ->required();

    auto* pseudofree = app.add_subcommand("pseudofree", "decide pseudo-freeness");
    pseudofree->add_option("file", file)->required();
    pseudofree->add_option("--budget", budget, "state budget");

    auto* aperiodic = app.add_subcommand("aperiodic", "probe G-aperiodicity");
    aperiodic->add_option("file", file)->required();
    aperiodic->add_option("--depth", degree_text, "probe depth, e.g. 3 or (1,1)")->required();
    aperiodic->add_option("--group-ball", group_ball, "Z^m enumeration radius");

    auto* relations = app.add_subcommand("relations", "verify the defining relations");
    relations->add_option("file", file)->required();
    relations->add_option("--depth", degree_text, "path degree bound")->required();
    relations->add_option("--group-ball", group_ball, "Z^m enumeration radius");

    auto* ideals_cmd = app.add_subcommand("ideals", "invariant vertex sets and their ideals");
    ideals_cmd->require_subcommand(1);
    auto* ideals_list = ideals_cmd->add_subcommand("list", "all invariant subsets");
    ideals_list->add_option("file", file)->required();
    auto* ideals_closure = ideals_cmd->add_subcommand("closure", "invariant closure of a set");
    ideals_closure->add_option("file", file)->required();
    ideals_closure->add_option("--set", set_text, "comma-separated vertices")->required();
    auto* ideals_member = ideals_cmd->add_subcommand("member", "ideal membership of an element");
    ideals_member->add_option("file", file)->required();
    ideals_member->add_option("--set", set_text, "comma-separated vertices")->required();
    ideals_member->add_option("-e,--expr", expr1)->required();
    auto* ideals_quotient = ideals_cmd->add_subcommand("quotient", "quotient system by a set");
    ideals_quotient->add_option("file", file)->required();
    ideals_quotient->add_option("--set", set_text)->required();
    ideals_quotient->add_option("-e,--expr", expr1, "optional element to map");
    auto* ideals_verify =
        ideals_cmd->add_subcommand("verify", "verify the lattice correspondence");
    ideals_verify->add_option("file", file)->required();
    ideals_verify->add_option("--group-ball", group_ball);

    auto* zs = app.add_subcommand("zs", "Zappa-Szep semigroup calculus (single vertex)");
    zs->require_subcommand(1);
    auto* zs_mul_cmd = zs->add_subcommand("mul", "multiply semigroup elements");
    zs_mul_cmd->add_option("file", file)->required();
    zs_mul_cmd->add_option("-x", zs_x, "element, e.g. '(a.b, t)'")->required();
    zs_mul_cmd->add_option("-y", zs_y)->required();
    auto* zs_intersect = zs->add_subcommand("intersect", "intersect constructible ideals");
    zs_intersect->add_option("file", file)->required();
    zs_intersect->add_option("-X", ideal_x, "comma-separated generators, or full/empty")
        ->required();
    zs_intersect->add_option("-Y", ideal_y)->required();
    auto* zs_foundation = zs->add_subcommand("foundation", "test a foundation family");
    zs_foundation->add_option("file", file)->required();
    zs_foundation->add_option("-F", family_text, "ideals separated by ';'")->required();
    auto* zs_verify = zs->add_subcommand("verify", "verify the boundary-quotient relations");
    zs_verify->add_option("file", file)->required();
    zs_verify->add_option("--max-degree", degree_text)->required();
    zs_verify->add_option("--group-ball", group_ball);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            auto report = epka::validate_system_json(read_file(file));
            emit(json_mode, {{"command", "validate"}, {"ok", report.ok()},
                             {"issues", report_json(report)}},
                 report.ok() ? "valid\n" : report.summary());
            return report.ok() ? 0 : 1;
        }

        auto sys = epka::load_system_file(file);
        int k = sys->graph().k();

        if (normalize_cmd->parsed()) {
            Element nf = normalize(epka::parse_element<Ring>(sys, expr1));
            emit(json_mode,
                 {{"command", "normalize"}, {"normal_form", epka::print_element(nf)},
                  {"terms", element_json(nf)}},
                 epka::print_element(nf) + "\n");
            return 0;
        }
        if (eq->parsed()) {
            bool equal = epka::equals(epka::parse_element<Ring>(sys, eq_exprs[0]),
                                      epka::parse_element<Ring>(sys, eq_exprs[1]));
            emit(json_mode, {{"command", "eq"}, {"equal", equal}},
                 equal ? "equal\n" : "not equal\n");
            return equal ? 0 : 1;
        }
        if (pseudofree->parsed()) {
            auto res = sys->check_pseudo_free(budget);
            njson doc{{"command", "pseudofree"}, {"states_explored", res.states_explored}};
            std::string text;
            int code = 0;
            switch (res.status) {
                case epka::PseudoFreeStatus::PseudoFree:
                    doc["status"] = "pseudo-free";
                    text = "pseudo-free\n";
                    code = 0;
                    break;
                case epka::PseudoFreeStatus::NotPseudoFree:
                    doc["status"] = "not pseudo-free";
                    doc["witness_g"] = sys->group().name(*res.witness_g);
                    doc["witness_path"] = sys->graph().path_name(*res.witness_path);
                    text = "not pseudo-free: g=" + sys->group().name(*res.witness_g) +
                           " fixes " + sys->graph().path_name(*res.witness_path) +
                           " with trivial restriction\n";
                    code = 1;
                    break;
                case epka::PseudoFreeStatus::Unknown:
                    doc["status"] = "unknown";
                    text = "unknown (budget exhausted)\n";
                    code = 2;
                    break;
            }
            emit(json_mode, doc, text);
            return code;
        }
        if (aperiodic->parsed()) {
            auto res = epka::check_aperiodicity(*sys, epka::parse_degree_text(k, degree_text),
                                                group_ball);
            if (res.violation) {
                emit(json_mode,
                     {{"command", "aperiodic"},
                      {"status", "violation"},
                      {"vertex", sys->graph().vertex_name(res.vertex)},
                      {"g", sys->group().name(res.g)},
                      {"p", res.p.to_string()},
                      {"q", res.q.to_string()},
                      {"sample", sys->graph().path_name(*res.sample)}},
                     "violation witness: v=" + sys->graph().vertex_name(res.vertex) +
                         " g=" + sys->group().name(res.g) + " p=" + res.p.to_string() +
                         " q=" + res.q.to_string() + "\n");
                return 1;
            }
            emit(json_mode,
                 {{"command", "aperiodic"}, {"status", "no-witness"},
                  {"depth", res.depth.to_string()}},
                 "no witness up to depth " + res.depth.to_string() + "\n");
            return 0;
        }
        if (relations->parsed()) {
            auto report = epka::check_relations<Ring>(
                sys, epka::parse_degree_text(k, degree_text), group_ball);
            emit(json_mode, {{"command", "relations"}, {"ok", report.ok()},
                             {"issues", report_json(report)}},
                 report.ok() ? "relations hold\n" : report.summary());
            return report.ok() ? 0 : 1;
        }
        if (ideals_list->parsed()) {
            njson sets = njson::array();
            std::string text;
            for (const auto& H : epka::enumerate_invariant_subsets(*sys)) {
                sets.push_back(epka::vertex_set_name(sys->graph(), H));
                text += epka::vertex_set_name(sys->graph(), H) + "\n";
            }
            emit(json_mode, {{"command", "ideals list"}, {"invariant_sets", sets}}, text);
            return 0;
        }
        if (ideals_closure->parsed()) {
            auto H = epka::closure(*sys, parse_vertex_set(*sys, set_text));
            emit(json_mode,
                 {{"command", "ideals closure"},
                  {"closure", epka::vertex_set_name(sys->graph(), H)}},
                 epka::vertex_set_name(sys->graph(), H) + "\n");
            return 0;
        }
        if (ideals_member->parsed()) {
            bool member = epka::ideal_membership(epka::parse_element<Ring>(sys, expr1),
                                                 parse_vertex_set(*sys, set_text));
            emit(json_mode, {{"command", "ideals member"}, {"member", member}},
                 member ? "member\n" : "not a member\n");
            return member ? 0 : 1;
        }
        if (ideals_quotient->parsed()) {
            auto H = parse_vertex_set(*sys, set_text);
            auto q = epka::quotient_system(sys, H);
            njson doc{{"command", "ideals quotient"},
                      {"vertices", q.system->graph().vertex_count()},
                      {"edges", q.system->graph().edge_count()}};
            std::string text = "quotient: " + std::to_string(q.system->graph().vertex_count()) +
                               " vertices, " + std::to_string(q.system->graph().edge_count()) +
                               " edges\n";
            if (!expr1.empty()) {
                auto image = epka::quotient_map(epka::parse_element<Ring>(sys, expr1), q, H);
                doc["image"] = epka::print_element(image);
                text += "image: " + epka::print_element(image) + "\n";
            }
            emit(json_mode, doc, text);
            return 0;
        }
        if (ideals_verify->parsed()) {
            auto report = epka::verify_ideal_correspondence<Ring>(sys, group_ball);
            emit(json_mode, {{"command", "ideals verify"}, {"ok", report.ok()},
                             {"issues", report_json(report)}},
                 report.ok() ? "correspondence verified\n" : report.summary());
            return report.ok() ? 0 : 1;
        }
        if (zs_mul_cmd->parsed()) {
            auto z = epka::zs_mul(*sys, parse_zs(*sys, zs_x), parse_zs(*sys, zs_y));
            std::string text = "(" + sys->graph().path_name(z.path) + ", " +
                               sys->group().name(z.g) + ")\n";
            emit(json_mode,
                 {{"command", "zs mul"}, {"path", sys->graph().path_name(z.path)},
                  {"g", sys->group().name(z.g)}},
                 text);
            return 0;
        }
        if (zs_intersect->parsed()) {
            auto z = epka::ideal_intersect(*sys, parse_ideal(*sys, ideal_x),
                                           parse_ideal(*sys, ideal_y));
            emit(json_mode, {{"command", "zs intersect"}, {"ideal", ideal_name(*sys, z)}},
                 ideal_name(*sys, z) + "\n");
            return 0;
        }
        if (zs_foundation->parsed()) {
            std::vector<epka::ConstructibleIdeal> family;
            std::string cur;
            for (char c : family_text + ";") {
                if (c == ';') {
                    if (!cur.empty()) family.push_back(parse_ideal(*sys, cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            bool found = epka::is_foundation(*sys, family);
            emit(json_mode, {{"command", "zs foundation"}, {"foundation", found}},
                 found ? "foundation set\n" : "not a foundation set\n");
            return found ? 0 : 1;
        }
        if (zs_verify->parsed()) {
            auto report = epka::verify_boundary_relations<Ring>(
                sys, epka::parse_degree_text(k, degree_text), group_ball);
            emit(json_mode, {{"command", "zs verify"}, {"ok", report.ok()},
                             {"issues", report_json(report)}},
                 report.ok() ? "boundary relations hold\n" : report.summary());
            return report.ok() ? 0 : 1;
        }
    } catch (const epka::Error& err) {
        if (json_mode)
            std::cout << njson{{"error", err.what()}}.dump(2) << "\n";
        else
            std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
