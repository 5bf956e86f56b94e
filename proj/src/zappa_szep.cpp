#include "epka/zappa_szep.hpp"

#include <algorithm>
#include <set>

namespace epka {

void require_single_vertex(const SelfSimilarSystem& sys) {
    if (!sys.graph().single_vertex())
        throw Error(ErrorKind::NotSingleVertex,
                    "operation defined only for single-vertex systems");
}

ConstructibleIdeal make_ideal(const KGraph& graph, std::vector<Path> generators) {
    if (generators.empty()) return {};
    Degree big = generators.front().degree;
    for (const Path& p : generators) big = big.join(p.degree);
    std::vector<Path> out;
    for (const Path& p : generators)
        for (const Path& lam : graph.paths_from(p.source, big.minus(p.degree)))
            out.push_back(graph.compose(p, lam));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return {std::move(out)};
}

ConstructibleIdeal full_ideal(const KGraph& graph) {
    return {{graph.vertex_path(0)}};
}

ConstructibleIdeal empty_ideal() { return {}; }

ConstructibleIdeal renormalize_ideal(const KGraph& graph, const ConstructibleIdeal& x,
                                     const Degree& degree) {
    if (x.is_empty()) return x;
    if (!x.degree(graph.k()).leq(degree))
        throw Error(ErrorKind::DegreeOutOfRange, "cannot renormalize an ideal downwards");
    std::vector<Path> gens;
    for (const Path& p : x.generators)
        for (const Path& lam : graph.paths_from(p.source, degree.minus(p.degree)))
            gens.push_back(graph.compose(p, lam));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return {std::move(gens)};
}

ZSElement zs_mul(const SelfSimilarSystem& sys, const ZSElement& x, const ZSElement& y) {
    require_single_vertex(sys);
    const auto& graph = sys.graph();
    Path moved = sys.act_path(x.g, y.path);
    return {graph.compose(x.path, moved),
            sys.group().mul(sys.cocycle_path(x.g, y.path), y.g)};
}

ConstructibleIdeal zs_act_ideal(const SelfSimilarSystem& sys, const ZSElement& x,
                                const ConstructibleIdeal& ideal) {
    require_single_vertex(sys);
    if (ideal.is_empty()) return ideal;
    const auto& graph = sys.graph();
    std::vector<Path> gens;
    for (const Path& mu : ideal.generators)
        gens.push_back(graph.compose(x.path, sys.act_path(x.g, mu)));
    return make_ideal(graph, std::move(gens));
}

ConstructibleIdeal ideal_intersect(const SelfSimilarSystem& sys, const ConstructibleIdeal& x,
                                   const ConstructibleIdeal& y) {
    require_single_vertex(sys);
    if (x.is_empty() || y.is_empty()) return empty_ideal();
    const auto& graph = sys.graph();
    std::vector<Path> gens;
    for (const Path& mu : x.generators) {
        // Ext(mu; gens(y)) through minimal common extensions
        for (const Path& nu : y.generators)
            for (const auto& [alpha, beta] : graph.min_common_extensions(mu, nu)) {
                (void)beta;
                gens.push_back(graph.compose(mu, alpha));
            }
    }
    if (gens.empty()) return empty_ideal();
    return make_ideal(graph, std::move(gens));
}

bool is_foundation(const SelfSimilarSystem& sys,
                   const std::vector<ConstructibleIdeal>& family) {
    require_single_vertex(sys);
    const auto& graph = sys.graph();
    Degree big = Degree::zero(graph.k());
    bool any = false;
    for (const ConstructibleIdeal& x : family) {
        if (x.is_empty()) continue;
        big = big.join(x.degree(graph.k()));
        any = true;
    }
    if (!any) return false;
    std::set<Path> covered;
    for (const ConstructibleIdeal& x : family) {
        if (x.is_empty()) continue;
        for (const Path& p : renormalize_ideal(graph, x, big).generators) covered.insert(p);
    }
    for (const Path& p : graph.paths_from(0, big))
        if (!covered.count(p)) return false;
    return true;
}

ValidationReport check_phi_surjectivity(const SelfSimilarSystem& sys,
                                        const Degree& max_degree) {
    ValidationReport report;
    const auto& graph = sys.graph();
    const auto& group = sys.group();
    std::vector<Path> paths = all_paths_up_to(graph, max_degree);

    if (group.is_finite()) {
        std::vector<GroupElement> all = group.elements();
        for (const Path& mu : paths) {
            std::set<GroupElement> image;
            for (const GroupElement& g : all) image.insert(sys.cocycle_path(g, mu));
            if (image.size() != all.size())
                report.add("hypothesis-surjectivity",
                           "g -> phi(g, mu) is not onto at mu=" + graph.path_name(mu));
        }
        return report;
    }

    // Z^m: the image must reach every basis generator; widen the ball until
    // it does or the budget runs out
    std::vector<GroupElement> targets;
    targets.push_back(group.identity());
    for (int i = 0; i < group.rank(); ++i) {
        GroupElement b;
        b.vec.assign(group.rank(), 0);
        b.vec[i] = 1;
        targets.push_back(b);
        b.vec[i] = -1;
        targets.push_back(b);
    }
    const std::int64_t cap = std::int64_t(1) << std::min<std::int64_t>(
                                 20, max_degree.total() + 4);
    for (const Path& mu : paths) {
        bool covered = false;
        for (std::int64_t radius = 1; radius <= cap && !covered; radius *= 2) {
            std::set<GroupElement> image;
            for (const GroupElement& g : group.ball(radius))
                image.insert(sys.cocycle_path(g, mu));
            covered = std::all_of(targets.begin(), targets.end(),
                                  [&](const GroupElement& t) { return image.count(t) > 0; });
        }
        if (!covered)
            report.add("hypothesis-surjectivity",
                       "could not witness surjectivity of g -> phi(g, mu) at mu=" +
                           graph.path_name(mu) + " within ball " + std::to_string(cap));
    }
    return report;
}

}  // namespace epka
