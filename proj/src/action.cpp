#include "epka/action.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "intlin.hpp"

namespace epka {

SelfSimilarSystem::SelfSimilarSystem(KGraph graph, Group group,
                                     std::vector<GeneratorTables> tables)
    : graph_(std::move(graph)), group_(std::move(group)), tables_(std::move(tables)) {
    const std::size_t nv = graph_.vertex_count();
    const std::size_t ne = graph_.edge_count();
    for (const auto& t : tables_) {
        group_.check_element(t.gen);
        if (t.vertex_map.size() != nv || t.edge_map.size() != ne || t.cocycle.size() != ne)
            throw Error(ErrorKind::SchemaError,
                        "action tables for generator " + group_.name(t.gen) +
                            " must cover every vertex and edge");
        for (VertexId v : t.vertex_map)
            if (v >= nv) throw Error(ErrorKind::SchemaError, "vertex_action image out of range");
        for (EdgeId e : t.edge_map)
            if (e >= ne) throw Error(ErrorKind::SchemaError, "edge_action image out of range");
        for (const auto& c : t.cocycle) group_.check_element(c);
        if (table_index_.count(t.gen))
            throw Error(ErrorKind::SchemaError,
                        "duplicate tables for generator " + group_.name(t.gen));
        table_index_[t.gen] = &t - tables_.data();
    }
    derive_inverse_tables();

    std::vector<GroupElement> gens;
    for (const auto& t : tables_)
        if (!group_.is_identity(t.gen)) gens.push_back(t.gen);
    group_.set_generators(std::move(gens));
}

void SelfSimilarSystem::derive_inverse_tables() {
    const std::size_t nv = graph_.vertex_count();
    const std::size_t ne = graph_.edge_count();
    const std::size_t given = tables_.size();
    for (std::size_t i = 0; i < given; ++i) {
        GroupElement ginv = group_.inv(tables_[i].gen);
        if (table_index_.count(ginv)) continue;
        // need bijective maps to invert; if they are not, validation will
        // flag the original table and we skip the derivation
        std::vector<VertexId> vinv(nv, nv);
        std::vector<EdgeId> einv(ne, ne);
        bool ok = true;
        for (VertexId v = 0; v < nv; ++v) {
            VertexId img = tables_[i].vertex_map[v];
            if (vinv[img] != nv) ok = false;
            vinv[img] = v;
        }
        for (EdgeId e = 0; e < ne; ++e) {
            EdgeId img = tables_[i].edge_map[e];
            if (einv[img] != ne) ok = false;
            einv[img] = e;
        }
        if (!ok || std::count(vinv.begin(), vinv.end(), nv) ||
            std::count(einv.begin(), einv.end(), ne))
            continue;
        GeneratorTables t;
        t.gen = ginv;
        t.vertex_map = std::move(vinv);
        t.edge_map = std::move(einv);
        t.cocycle.resize(ne);
        // phi(g^{-1}, e) = phi(g, g^{-1}.e)^{-1}
        for (EdgeId e = 0; e < ne; ++e)
            t.cocycle[e] = group_.inv(tables_[i].cocycle[t.edge_map[e]]);
        table_index_[t.gen] = tables_.size();
        tables_.push_back(std::move(t));
    }
}

const GeneratorTables* SelfSimilarSystem::table_for(const GroupElement& g) const {
    auto it = table_index_.find(g);
    return it == table_index_.end() ? nullptr : &tables_[it->second];
}

VertexId SelfSimilarSystem::gen_act_vertex(const GeneratorTables& t, VertexId v) const {
    return t.vertex_map.at(v);
}

VertexId SelfSimilarSystem::act_vertex(const GroupElement& g, VertexId v) const {
    if (v >= graph_.vertex_count()) throw Error(ErrorKind::UnknownVertex, "vertex out of range");
    if (group_.is_identity(g)) return v;
    if (const auto* t = table_for(g)) return t->vertex_map[v];
    VertexId cur = v;
    auto word = group_.word_for(g);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        cur = table_for(*it)->vertex_map[cur];
    return cur;
}

EdgeId SelfSimilarSystem::act_edge(const GroupElement& g, EdgeId e) const {
    if (e >= graph_.edge_count()) throw Error(ErrorKind::UnknownEdge, "edge out of range");
    if (group_.is_identity(g)) return e;
    if (const auto* t = table_for(g)) return t->edge_map[e];
    EdgeId cur = e;
    auto word = group_.word_for(g);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        cur = table_for(*it)->edge_map[cur];
    return cur;
}

GroupElement SelfSimilarSystem::cocycle_edge(const GroupElement& g, EdgeId e) const {
    if (e >= graph_.edge_count()) throw Error(ErrorKind::UnknownEdge, "edge out of range");
    if (group_.is_identity(g)) return group_.identity();
    if (const auto* t = table_for(g)) return t->cocycle[e];
    // phi(w1..wn, e) accumulated right to left along the moving edge
    EdgeId cur = e;
    GroupElement acc = group_.identity();
    auto word = group_.word_for(g);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const auto* t = table_for(*it);
        acc = group_.mul(t->cocycle[cur], acc);
        cur = t->edge_map[cur];
    }
    return acc;
}

Path SelfSimilarSystem::act_path(const GroupElement& g, const Path& p) const {
    if (p.is_vertex()) return graph_.vertex_path(act_vertex(g, p.range));
    std::vector<EdgeId> word;
    word.reserve(p.word.size());
    GroupElement state = g;
    for (EdgeId e : p.word) {
        word.push_back(act_edge(state, e));
        state = cocycle_edge(state, e);
    }
    return Path{act_vertex(g, p.range), act_vertex(g, p.source), p.degree, std::move(word)};
}

GroupElement SelfSimilarSystem::cocycle_path(const GroupElement& g, const Path& p) const {
    GroupElement state = g;
    for (EdgeId e : p.word) state = cocycle_edge(state, e);
    return state;
}

std::shared_ptr<const SelfSimilarSystem> SelfSimilarSystem::build(
    KGraph graph, Group group, std::vector<GeneratorTables> tables) {
    auto sys = std::shared_ptr<SelfSimilarSystem>(
        new SelfSimilarSystem(std::move(graph), std::move(group), std::move(tables)));
    ValidationReport report = sys->graph_.validate();
    report.merge(sys->group_.validate());
    if (report.ok()) report.merge(sys->validate_action());
    if (!report.ok())
        throw Error(ErrorKind::ValidationError, "\n" + report.summary());
    sys->pseudo_free_ = sys->check_pseudo_free(std::uint64_t(1) << 20);
    return sys;
}

ValidationReport SelfSimilarSystem::validate(const KGraph& graph, const Group& group,
                                             const std::vector<GeneratorTables>& tables) {
    SelfSimilarSystem sys(graph, group, tables);
    ValidationReport report = sys.graph_.validate();
    report.merge(sys.group_.validate());
    if (report.ok()) report.merge(sys.validate_action());
    return report;
}

ValidationReport SelfSimilarSystem::validate_action() const {
    ValidationReport report;
    const std::size_t nv = graph_.vertex_count();
    const std::size_t ne = graph_.edge_count();
    const GroupElement e_g = group_.identity();
    (void)e_g;

    // the table generators must generate the whole finite group, otherwise
    // the action of some element is undefined
    if (group_.is_finite()) {
        for (const auto& x : group_.elements()) {
            try {
                (void)group_.word_for(x);
            } catch (const Error&) {
                report.add("group-generators", "element '" + group_.name(x) +
                                                   "' not reached by the table generators");
            }
        }
        if (!report.ok()) return report;
    }

    // structural checks per table
    for (const auto& t : tables_) {
        const std::string gname = group_.name(t.gen);
        std::vector<int> vhits(nv, 0), ehits(ne, 0);
        for (VertexId v = 0; v < nv; ++v) ++vhits[t.vertex_map[v]];
        for (EdgeId e = 0; e < ne; ++e) ++ehits[t.edge_map[e]];
        if (std::count(vhits.begin(), vhits.end(), 1) != static_cast<long>(nv))
            report.add("action-bijective", "vertex action of " + gname + " is not a bijection");
        if (std::count(ehits.begin(), ehits.end(), 1) != static_cast<long>(ne))
            report.add("action-bijective", "edge action of " + gname + " is not a bijection");
        for (EdgeId e = 0; e < ne; ++e) {
            const auto& src = graph_.edge(e);
            const auto& img = graph_.edge(t.edge_map[e]);
            if (src.color != img.color)
                report.add("degree-preserved", gname + "." + src.name + " changes color");
            if (img.range != t.vertex_map[src.range] || img.source != t.vertex_map[src.source])
                report.add("endpoint-equivariance",
                           gname + "." + src.name + " breaks r/s equivariance");
        }
        if (group_.is_identity(t.gen)) {
            for (VertexId v = 0; v < nv; ++v)
                if (t.vertex_map[v] != v)
                    report.add("identity-action", "identity moves vertex");
            for (EdgeId e = 0; e < ne; ++e)
                if (t.edge_map[e] != e || !group_.is_identity(t.cocycle[e]))
                    report.add("identity-action", "identity table is not trivial");
        }
    }
    if (!report.ok()) return report;

    // word extension for Z^m walks along basis generators, so each e_i (or
    // its inverse) must carry a table
    if (!group_.is_finite()) {
        for (int i = 0; i < group_.rank(); ++i) {
            GroupElement basis;
            basis.vec.assign(group_.rank(), 0);
            basis.vec[i] = 1;
            if (!table_for(basis))
                report.add("basis-generators",
                           "no action table for basis generator " + group_.name(basis) +
                               " or its inverse");
        }
        if (!report.ok()) return report;
    }

    // inverse consistency: g^{-1}.(g.e) = e and phi(g^{-1}, g.e) = phi(g,e)^{-1}
    for (const auto& t : tables_) {
        const auto* ti = table_for(group_.inv(t.gen));
        if (!ti) {
            report.add("inverse-tables",
                       "no tables for inverse of generator " + group_.name(t.gen));
            continue;
        }
        for (EdgeId e = 0; e < ne; ++e) {
            if (ti->edge_map[t.edge_map[e]] != e)
                report.add("inverse-consistency",
                           group_.name(t.gen) + "^-1 does not undo edge action on " +
                               graph_.edge(e).name);
            if (ti->cocycle[t.edge_map[e]] != group_.inv(t.cocycle[e]))
                report.add("inverse-consistency",
                           "phi(" + group_.name(t.gen) + "^-1, " + group_.name(t.gen) + "." +
                               graph_.edge(e).name + ") != phi(" + group_.name(t.gen) + "," +
                               graph_.edge(e).name + ")^-1");
        }
        for (VertexId v = 0; v < nv; ++v)
            if (ti->vertex_map[t.vertex_map[v]] != v)
                report.add("inverse-consistency",
                           group_.name(t.gen) + "^-1 does not undo vertex action");
    }
    if (!report.ok()) return report;

    // extension well-definedness
    if (group_.is_finite()) {
        // different words for the same element must act alike; checking
        // g.(x.e) against the canonical word of g*x covers this inductively
        for (const auto& x : group_.elements()) {
            bool reachable = true;
            try {
                (void)group_.word_for(x);
            } catch (const Error&) {
                reachable = false;  // reported by group validation
            }
            if (!reachable) continue;
            for (const auto& t : tables_) {
                GroupElement gx = group_.mul(t.gen, x);
                for (EdgeId e = 0; e < ne; ++e) {
                    EdgeId xe = act_edge(x, e);
                    if (act_edge(gx, e) != t.edge_map[xe])
                        report.add("action-law", "(" + group_.name(t.gen) + "*" +
                                                     group_.name(x) + ")." +
                                                     graph_.edge(e).name + " inconsistent");
                    GroupElement lhs = cocycle_edge(gx, e);
                    GroupElement rhs = group_.mul(t.cocycle[xe], cocycle_edge(x, e));
                    if (lhs != rhs)
                        report.add("cocycle-law", "phi(" + group_.name(t.gen) + "*" +
                                                      group_.name(x) + ", " +
                                                      graph_.edge(e).name + ") inconsistent");
                }
                for (VertexId v = 0; v < nv; ++v)
                    if (act_vertex(gx, v) != t.vertex_map[act_vertex(x, v)])
                        report.add("action-law", "vertex action of " + group_.name(gx) +
                                                     " inconsistent");
            }
        }
    } else {
        // Z^m: generator actions must commute
        for (const auto& tg : tables_) {
            for (const auto& th : tables_) {
                for (EdgeId e = 0; e < ne; ++e) {
                    if (tg.edge_map[th.edge_map[e]] != th.edge_map[tg.edge_map[e]])
                        report.add("action-law", "generators " + group_.name(tg.gen) + ", " +
                                                     group_.name(th.gen) +
                                                     " do not commute on edge " +
                                                     graph_.edge(e).name);
                    GroupElement lhs = group_.mul(tg.cocycle[th.edge_map[e]], th.cocycle[e]);
                    GroupElement rhs = group_.mul(th.cocycle[tg.edge_map[e]], tg.cocycle[e]);
                    if (lhs != rhs)
                        report.add("cocycle-law", "phi(" + group_.name(tg.gen) + "+" +
                                                      group_.name(th.gen) + ", " +
                                                      graph_.edge(e).name + ") order-dependent");
                }
                for (VertexId v = 0; v < nv; ++v)
                    if (tg.vertex_map[th.vertex_map[v]] != th.vertex_map[tg.vertex_map[v]])
                        report.add("action-law", "generator vertex actions do not commute");
            }
        }
    }
    if (!report.ok()) return report;

    // compatibility with the factorization squares: acting on both
    // factorizations of a 2-color path must agree, in edges and in cocycles
    for (const auto& t : tables_) {
        for (EdgeId e = 0; e < ne; ++e) {
            for (int cj = graph_.edge(e).color + 1; cj < graph_.k(); ++cj) {
                for (EdgeId f : graph_.edges_into(graph_.edge(e).source, cj)) {
                    Path ef = graph_.path_from_word({e, f});
                    auto [head, tail] = graph_.factorize(ef, Degree::basis(graph_.k(), cj));
                    // ef = f2.e2 with f2 = head-of-color-cj
                    EdgeId f2 = head.word.front(), e2 = tail.word.front();
                    EdgeId ge = t.edge_map[e];
                    EdgeId gf = act_edge(t.cocycle[e], f);
                    EdgeId gf2 = t.edge_map[f2];
                    EdgeId ge2 = act_edge(t.cocycle[f2], e2);
                    Path lhs = graph_.path_from_word({ge, gf});
                    Path rhs = graph_.path_from_word({gf2, ge2});
                    if (lhs != rhs)
                        report.add("square-compatibility",
                                   group_.name(t.gen) + " maps the factorizations of " +
                                       graph_.edge(e).name + "." + graph_.edge(f).name +
                                       " to different paths");
                    GroupElement cl = cocycle_edge(t.cocycle[e], f);
                    GroupElement cr = cocycle_edge(t.cocycle[f2], e2);
                    if (cl != cr)
                        report.add("square-compatibility",
                                   "restriction of " + group_.name(t.gen) + " along " +
                                       graph_.edge(e).name + "." + graph_.edge(f).name +
                                       " depends on the factorization");
                }
            }
        }
    }

    // phi(g, mu).v = g.v on vertices (needed for the path action)
    for (const auto& t : tables_)
        for (EdgeId e = 0; e < ne; ++e)
            for (VertexId v = 0; v < nv; ++v)
                if (act_vertex(t.cocycle[e], v) != t.vertex_map[v])
                    report.add("restriction-vertex-compatibility",
                               "phi(" + group_.name(t.gen) + "," + graph_.edge(e).name +
                                   ") and " + group_.name(t.gen) +
                                   " act differently on vertex " + graph_.vertex_name(v));
    return report;
}

PseudoFreeResult SelfSimilarSystem::check_pseudo_free(std::uint64_t state_budget) const {
    PseudoFreeResult res;
    const std::size_t ne = graph_.edge_count();
    // Any (g, mu) with g.mu = mu and phi(g, mu) = e contains, at the first
    // index where the running restriction becomes trivial, a single edge x
    // with g'.x = x and phi(g', x) = e and g' != e.  So scanning edges
    // decides the property.
    if (group_.is_finite()) {
        for (const auto& g : group_.elements()) {
            if (group_.is_identity(g)) continue;
            for (EdgeId e = 0; e < ne; ++e) {
                if (++res.states_explored > state_budget) {
                    res.status = PseudoFreeStatus::Unknown;
                    return res;
                }
                if (act_edge(g, e) == e && group_.is_identity(cocycle_edge(g, e))) {
                    res.status = PseudoFreeStatus::NotPseudoFree;
                    res.witness_g = g;
                    res.witness_path = graph_.edge_path(e);
                    return res;
                }
            }
        }
        res.status = PseudoFreeStatus::PseudoFree;
        return res;
    }

    // Z^m: per edge, the stabilizer is a full-rank sublattice; the cocycle
    // restricted to it is linear.  A nontrivial kernel vector is exactly a
    // witness.
    const int m = group_.rank();
    for (EdgeId x = 0; x < ne; ++x) {
        std::map<EdgeId, std::vector<std::int64_t>> transversal;
        transversal[x] = std::vector<std::int64_t>(m, 0);
        std::deque<EdgeId> queue{x};
        std::vector<std::vector<std::int64_t>> relations;
        while (!queue.empty()) {
            EdgeId y = queue.front();
            queue.pop_front();
            if (++res.states_explored > state_budget) {
                res.status = PseudoFreeStatus::Unknown;
                return res;
            }
            for (const auto& gen : group_.generators()) {
                EdgeId z = act_edge(gen, y);
                std::vector<std::int64_t> wz(m);
                for (int i = 0; i < m; ++i) wz[i] = gen.vec[i] + transversal[y][i];
                auto it = transversal.find(z);
                if (it == transversal.end()) {
                    transversal[z] = std::move(wz);
                    queue.push_back(z);
                } else {
                    for (int i = 0; i < m; ++i) wz[i] -= it->second[i];
                    if (std::any_of(wz.begin(), wz.end(), [](auto v) { return v != 0; }))
                        relations.push_back(std::move(wz));
                }
            }
        }
        std::sort(relations.begin(), relations.end());
        relations.erase(std::unique(relations.begin(), relations.end()), relations.end());

        // columns: stabilizer generators and their restrictions at x
        detail::IntMatrix W(m, std::vector<std::int64_t>(relations.size()));
        detail::IntMatrix F(m, std::vector<std::int64_t>(relations.size()));
        for (std::size_t j = 0; j < relations.size(); ++j) {
            GroupElement g;
            g.vec = relations[j];
            GroupElement c = cocycle_edge(g, x);
            for (int i = 0; i < m; ++i) {
                W[i][j] = relations[j][i];
                F[i][j] = c.vec[i];
            }
        }
        if (detail::rank_over_q(W) != m)
            throw Error(ErrorKind::ValidationError,
                        "internal: stabilizer lattice of edge " + graph_.edge(x).name +
                            " is not full rank");
        if (detail::rank_over_q(F) == m) continue;
        for (const auto& z : detail::kernel_basis(F)) {
            GroupElement g;
            g.vec.assign(m, 0);
            for (std::size_t j = 0; j < z.size(); ++j)
                for (int i = 0; i < m; ++i) g.vec[i] += z[j] * relations[j][i];
            if (std::all_of(g.vec.begin(), g.vec.end(), [](auto v) { return v == 0; })) continue;
            if (act_edge(g, x) != x || !group_.is_identity(cocycle_edge(g, x)))
                throw Error(ErrorKind::ValidationError,
                            "internal: pseudo-freeness witness failed verification");
            res.status = PseudoFreeStatus::NotPseudoFree;
            res.witness_g = g;
            res.witness_path = graph_.edge_path(x);
            return res;
        }
        throw Error(ErrorKind::ValidationError,
                    "internal: singular restriction matrix without witness");
    }
    res.status = PseudoFreeStatus::PseudoFree;
    return res;
}

}  // namespace epka
