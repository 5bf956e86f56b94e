#pragma once

#include <set>

#include "epka/algebra.hpp"

namespace epka {

using VertexSet = std::set<VertexId>;

// r(mu) in H forces g.s(mu) in H; checked on edges and vertex orbits, which
// propagates to all paths.
bool is_hereditary(const SelfSimilarSystem& sys, const VertexSet& H);

// s(v Lambda^n) inside H for some n forces v in H; single-color steps
// iterated to a fixpoint reach every n.
bool is_saturated(const SelfSimilarSystem& sys, const VertexSet& H);

bool is_invariant(const SelfSimilarSystem& sys, const VertexSet& H);

// Least G-saturated G-hereditary superset.
VertexSet closure(const SelfSimilarSystem& sys, const VertexSet& seed);

std::vector<VertexSet> enumerate_invariant_subsets(const SelfSimilarSystem& sys);

void require_invariant(const SelfSimilarSystem& sys, const VertexSet& H);

std::string vertex_set_name(const KGraph& graph, const VertexSet& H);

// Membership in the ideal generated by {s_v : v in H}: every normal-form
// triple must have its middle vertex in H.  Needs pseudo-freeness for the
// "not a member" direction.
template <CoefficientRing R>
bool ideal_membership(const AlgebraElement<R>& a, const VertexSet& H) {
    const auto& sys = *a.system();
    require_invariant(sys, H);
    AlgebraElement<R> nf = normalize(a);
    if (nf.empty()) return true;
    if (!sys.pseudo_free_certified())
        throw Error(ErrorKind::NotPseudoFree,
                    "ideal membership needs a pseudo-free system");
    for (const auto& [t, c] : nf.terms()) {
        (void)c;
        if (!H.count(t.mu.source)) return false;
    }
    return true;
}

// Restriction of the system to the paths avoiding H, with index maps for
// reinterpreting elements.
struct QuotientSystem {
    SystemPtr system;
    std::vector<std::optional<VertexId>> vertex_map;  // old -> new
    std::vector<std::optional<EdgeId>> edge_map;
};

QuotientSystem quotient_system(const SystemPtr& sys, const VertexSet& H);

// Normal form in the full system, H-sourced triples dropped, the rest
// reinterpreted over the quotient.
template <CoefficientRing R>
AlgebraElement<R> quotient_map(const AlgebraElement<R>& a, const QuotientSystem& q,
                               const VertexSet& H) {
    const auto& sys = *a.system();
    require_invariant(sys, H);
    if (!sys.pseudo_free_certified())
        throw Error(ErrorKind::NotPseudoFree, "quotient map needs a pseudo-free system");
    const auto& qgraph = q.system->graph();
    auto map_path = [&](const Path& p) {
        Path out;
        out.range = q.vertex_map[p.range].value();
        out.source = q.vertex_map[p.source].value();
        out.degree = p.degree;
        for (EdgeId e : p.word) out.word.push_back(q.edge_map[e].value());
        (void)qgraph;
        return out;
    };
    AlgebraElement<R> out(q.system);
    AlgebraElement<R> nf = normalize(a);
    for (const auto& [t, c] : nf.terms()) {
        if (H.count(t.mu.source)) continue;
        out.add_term({map_path(t.mu), t.g, map_path(t.nu)}, c);
    }
    return out;
}

// Desk-scale witness of the lattice correspondence H -> I_H: recovery of H
// from vertex projections (with ring samples 1, 2 and i where available),
// diagonal-invariance, and gradedness of enumerated members.
template <CoefficientRing R>
ValidationReport verify_ideal_correspondence(SystemPtr sys, std::int64_t group_radius = 2) {
    ValidationReport report;
    const auto& graph = sys->graph();
    const auto& group = sys->group();

    if (!sys->pseudo_free_certified()) {
        report.add("pseudo-free", "correspondence check needs a pseudo-free system");
        return report;
    }

    std::vector<typename R::Elem> ring_samples;
    for (auto [re, im] : {std::pair<std::int64_t, std::int64_t>{1, 0}, {2, 0}, {0, 1}})
        if (auto r = R::from_parts(re, im)) ring_samples.push_back(*r);

    std::vector<Path> paths = all_paths_up_to(graph, Degree::ones(graph.k()));
    std::vector<GroupElement> elems = enumerable_elements(group, group_radius);

    for (const VertexSet& H : enumerate_invariant_subsets(*sys)) {
        const std::string hname = vertex_set_name(graph, H);

        // (i) basic-ness: r s_v lies in I_H exactly for v in H
        for (VertexId v = 0; v < graph.vertex_count(); ++v) {
            for (const auto& r : ring_samples) {
                bool member =
                    ideal_membership(scalar_mul(r, gen_s<R>(sys, graph.vertex_path(v))), H);
                if (member != (H.count(v) > 0))
                    report.add("H-recovery", "r*s_v membership in I_" + hname +
                                                 " disagrees with v in H at v=" +
                                                 graph.vertex_name(v));
            }
        }

        // enumerate spanning members of I_H
        std::vector<AlgebraElement<R>> members;
        for (const Path& mu : paths) {
            if (!H.count(mu.source)) continue;
            for (const GroupElement& g : elems) {
                VertexId w = sys->act_vertex(group.inv(g), mu.source);
                for (const Path& nu : paths) {
                    if (nu.source != w) continue;
                    AlgebraElement<R> m(sys);
                    m.add_term({mu, g, nu}, R::one());
                    members.push_back(std::move(m));
                }
            }
        }
        for (std::size_t i = 0; i + 1 < members.size(); i += 2)
            members.push_back(add(members[i], scalar_mul(ring_samples.back(),
                                                         members[i + 1])));

        for (const auto& m : members) {
            if (!ideal_membership(m, H)) {
                report.add("membership", "enumerated spanning member escaped I_" + hname);
                continue;
            }
            // (ii) diagonal invariance
            if (!ideal_membership(expectation(m), H))
                report.add("diagonal-invariance",
                           "expectation left I_" + hname + " on a sampled member");
            // (iii) gradedness
            for (const auto& [grade, comp] : graded_components(m)) {
                (void)grade;
                if (!ideal_membership(comp, H))
                    report.add("gradedness",
                               "graded component left I_" + hname + " on a sampled member");
            }
        }
    }
    return report;
}

}  // namespace epka
