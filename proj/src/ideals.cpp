#include "epka/ideals.hpp"

#include <algorithm>

namespace epka {

namespace {

// orbit of a vertex under the whole group: closure under generator maps
VertexSet vertex_orbit(const SelfSimilarSystem& sys, VertexId v) {
    VertexSet orbit{v};
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
        VertexId cur = stack.back();
        stack.pop_back();
        for (const GroupElement& g : sys.group().generators()) {
            VertexId next = sys.act_vertex(g, cur);
            if (orbit.insert(next).second) stack.push_back(next);
        }
    }
    return orbit;
}

}  // namespace

bool is_hereditary(const SelfSimilarSystem& sys, const VertexSet& H) {
    const auto& graph = sys.graph();
    for (VertexId v : H) {
        if (v >= graph.vertex_count())
            throw Error(ErrorKind::UnknownVertex, "vertex set contains unknown vertex");
        for (VertexId w : vertex_orbit(sys, v))
            if (!H.count(w)) return false;
    }
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        if (!H.count(graph.edge(e).range)) continue;
        for (VertexId w : vertex_orbit(sys, graph.edge(e).source))
            if (!H.count(w)) return false;
    }
    return true;
}

bool is_saturated(const SelfSimilarSystem& sys, const VertexSet& H) {
    // one saturation step: v joins when all its color-i sources already
    // belong, for some color i
    const auto& graph = sys.graph();
    VertexSet cur = H;
    bool grew = true;
    while (grew) {
        grew = false;
        for (VertexId v = 0; v < graph.vertex_count(); ++v) {
            if (cur.count(v)) continue;
            for (int c = 0; c < graph.k(); ++c) {
                bool all_in = true;
                for (EdgeId e : graph.edges_into(v, c))
                    if (!cur.count(graph.edge(e).source)) all_in = false;
                if (all_in) {
                    cur.insert(v);
                    grew = true;
                    break;
                }
            }
        }
    }
    return cur == H;
}

bool is_invariant(const SelfSimilarSystem& sys, const VertexSet& H) {
    return is_hereditary(sys, H) && is_saturated(sys, H);
}

void require_invariant(const SelfSimilarSystem& sys, const VertexSet& H) {
    if (!is_invariant(sys, H))
        throw Error(ErrorKind::NotInvariantSet,
                    "vertex set is not G-saturated G-hereditary");
}

VertexSet closure(const SelfSimilarSystem& sys, const VertexSet& seed) {
    const auto& graph = sys.graph();
    VertexSet cur = seed;
    bool grew = true;
    while (grew) {
        grew = false;
        // hereditary closure: orbits of members and of sources below members
        VertexSet next = cur;
        for (VertexId v : cur)
            for (VertexId w : vertex_orbit(sys, v)) next.insert(w);
        for (EdgeId e = 0; e < graph.edge_count(); ++e)
            if (next.count(graph.edge(e).range))
                for (VertexId w : vertex_orbit(sys, graph.edge(e).source)) next.insert(w);
        // saturation step
        for (VertexId v = 0; v < graph.vertex_count(); ++v) {
            if (next.count(v)) continue;
            for (int c = 0; c < graph.k(); ++c) {
                bool all_in = true;
                for (EdgeId e : graph.edges_into(v, c))
                    if (!next.count(graph.edge(e).source)) all_in = false;
                if (all_in) {
                    next.insert(v);
                    break;
                }
            }
        }
        grew = next != cur;
        cur = std::move(next);
    }
    return cur;
}

std::vector<VertexSet> enumerate_invariant_subsets(const SelfSimilarSystem& sys) {
    const std::size_t n = sys.graph().vertex_count();
    if (n > 20)
        throw Error(ErrorKind::Overflow, "too many vertices for subset enumeration");
    std::vector<VertexSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        VertexSet H;
        for (std::size_t v = 0; v < n; ++v)
            if (mask & (std::uint64_t(1) << v)) H.insert(static_cast<VertexId>(v));
        if (is_invariant(sys, H)) out.push_back(std::move(H));
    }
    return out;
}

std::string vertex_set_name(const KGraph& graph, const VertexSet& H) {
    std::string out = "{";
    bool first = true;
    for (VertexId v : H) {
        if (!first) out += ",";
        out += graph.vertex_name(v);
        first = false;
    }
    return out + "}";
}

QuotientSystem quotient_system(const SystemPtr& sys, const VertexSet& H) {
    require_invariant(*sys, H);
    const auto& graph = sys->graph();
    const auto& group = sys->group();
    if (H.size() == graph.vertex_count())
        throw Error(ErrorKind::SchemaError, "quotient by the full vertex set has no vertices");

    KGraphData data;
    data.k = graph.k();
    QuotientSystem out;
    out.vertex_map.assign(graph.vertex_count(), std::nullopt);
    out.edge_map.assign(graph.edge_count(), std::nullopt);

    std::vector<VertexId> kept_vertices;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        if (H.count(v)) continue;
        out.vertex_map[v] = static_cast<VertexId>(data.vertices.size());
        data.vertices.push_back(graph.vertex_name(v));
        kept_vertices.push_back(v);
    }
    std::vector<EdgeId> kept_edges;
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        const auto& ed = graph.edge(e);
        if (H.count(ed.source)) continue;
        out.edge_map[e] = static_cast<EdgeId>(data.edges.size());
        data.edges.push_back({ed.name, ed.color + 1, graph.vertex_name(ed.source),
                              graph.vertex_name(ed.range)});
        kept_edges.push_back(e);
    }
    // squares restricted to kept pairs; a square survives iff its common
    // source avoids H
    for (EdgeId e : kept_edges) {
        const auto& ed = graph.edge(e);
        for (int cj = ed.color + 1; cj < graph.k(); ++cj) {
            for (EdgeId f : graph.edges_into(ed.source, cj)) {
                if (!out.edge_map[f]) continue;
                Path ef = graph.path_from_word({e, f});
                auto [head, tail] = graph.factorize(ef, Degree::basis(graph.k(), cj));
                EdgeId f2 = head.word.front(), e2 = tail.word.front();
                data.squares.push_back({ed.name, graph.edge(f).name, graph.edge(f2).name,
                                        graph.edge(e2).name});
            }
        }
    }

    std::vector<GeneratorTables> tables;
    for (const GroupElement& gen : group.generators()) {
        GeneratorTables t;
        t.gen = gen;
        for (VertexId v : kept_vertices)
            t.vertex_map.push_back(out.vertex_map[sys->act_vertex(gen, v)].value());
        for (EdgeId e : kept_edges) {
            t.edge_map.push_back(out.edge_map[sys->act_edge(gen, e)].value());
            t.cocycle.push_back(sys->cocycle_edge(gen, e));
        }
        tables.push_back(std::move(t));
    }

    out.system = SelfSimilarSystem::build(KGraph(data), group, std::move(tables));
    return out;
}

}  // namespace epka
