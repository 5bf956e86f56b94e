#include "epka/groupoid.hpp"

#include <algorithm>
#include <set>

namespace epka {

GroupElement CocycleTail::value_at(const SelfSimilarSystem& sys, const Degree& n) const {
    if (!base.leq(n))
        throw Error(ErrorKind::DepthTooSmall, "tail undefined below its base degree");
    Degree rel = n.minus(base);
    if (!rel.leq(prefix.degree))
        throw Error(ErrorKind::DepthTooSmall, "tail prefix shorter than requested depth");
    return sys.cocycle_path(g, sys.graph().factorize(prefix, rel).first);
}

bool CocycleTail::equal_at(const SelfSimilarSystem& sys, const CocycleTail& other,
                           const Degree& n) const {
    return value_at(sys, n) == other.value_at(sys, n);
}

Path act_prefix(const SelfSimilarSystem& sys, const GroupElement& g, const Path& prefix) {
    return sys.act_path(g, prefix);
}

BasicBisection invert_bisection(const SelfSimilarSystem& sys, const BasicBisection& b) {
    return BasicBisection{b.nu, sys.group().inv(b.g), b.mu};
}

std::vector<BasicBisection> compose_bisections(const SelfSimilarSystem& sys,
                                               const BasicBisection& a,
                                               const BasicBisection& b) {
    const auto& graph = sys.graph();
    const auto& group = sys.group();
    std::vector<BasicBisection> out;
    GroupElement hinv = group.inv(b.g);
    for (const auto& [alpha, beta] : graph.min_common_extensions(a.nu, b.mu)) {
        Path left = graph.compose(a.mu, sys.act_path(a.g, alpha));
        GroupElement mid = group.mul(sys.cocycle_path(a.g, alpha),
                                     group.inv(sys.cocycle_path(hinv, beta)));
        Path right = graph.compose(b.nu, sys.act_path(hinv, beta));
        out.push_back(BasicBisection{left, mid, right});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BasicBisection> refine_bisection(const SelfSimilarSystem& sys,
                                             const BasicBisection& b, const Degree& big) {
    if (!b.mu.degree.leq(big))
        throw Error(ErrorKind::DepthTooSmall, "refinement degree below the bisection degree");
    const auto& graph = sys.graph();
    const auto& group = sys.group();
    std::vector<BasicBisection> out;
    GroupElement ginv = group.inv(b.g);
    for (const Path& lam : graph.paths_from(b.mu.source, big.minus(b.mu.degree))) {
        Path left = graph.compose(b.mu, lam);
        GroupElement mid = group.inv(sys.cocycle_path(ginv, lam));
        Path right = graph.compose(b.nu, sys.act_path(ginv, lam));
        out.push_back(BasicBisection{left, mid, right});
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool disjoint(const SelfSimilarSystem& sys, const BasicBisection& a, const BasicBisection& b,
              const Degree& depth) {
    if (!a.mu.degree.leq(depth) || !b.mu.degree.leq(depth))
        throw Error(ErrorKind::DepthTooSmall,
                    "refinement depth below the degree of a bisection");
    if (a.grade() != b.grade()) return true;
    auto ra = refine_bisection(sys, a, depth);
    auto rb = refine_bisection(sys, b, depth);
    std::vector<BasicBisection> common;
    std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(),
                          std::back_inserter(common));
    return common.empty();
}

bool germ_in_bisection(const SelfSimilarSystem& sys, const Germ& germ,
                       const BasicBisection& b) {
    const auto& graph = sys.graph();
    const Triple& t0 = germ.context;
    if (t0.grade() != b.grade()) return false;

    // the checks below consume the prefix up to q = d(mu0) v d(mu1)
    Degree q = t0.mu.degree.join(b.mu.degree);
    Degree avail = t0.mu.degree.plus(germ.prefix.degree);
    if (!q.leq(avail))
        throw Error(ErrorKind::DepthTooSmall,
                    "germ prefix too shallow to compare against " + b.mu.degree.to_string());

    // source side: b.nu must be a prefix of nu0.x0
    Path source_side = graph.compose(t0.nu, germ.prefix);
    auto [head, y0] = graph.factorize(source_side, b.nu.degree);
    if (head != b.nu) return false;

    // range side: both finite range prefixes have equal degree by the grade
    // match, and must coincide
    Path p0 = graph.compose(t0.mu, sys.act_path(t0.g, germ.prefix));
    Path p1 = graph.compose(b.mu, sys.act_path(b.g, y0));
    if (p0 != p1) return false;

    // cocycle tails at depth q; exact under pseudo-freeness
    GroupElement c0 =
        sys.cocycle_path(t0.g, graph.factorize(germ.prefix, q.minus(t0.mu.degree)).first);
    GroupElement c1 = sys.cocycle_path(b.g, graph.factorize(y0, q.minus(b.mu.degree)).first);
    return c0 == c1;
}

AperiodicityResult check_aperiodicity(const SelfSimilarSystem& sys, const Degree& depth,
                                      std::int64_t group_radius) {
    const auto& graph = sys.graph();
    const auto& group = sys.group();
    AperiodicityResult res;
    res.depth = depth;
    res.group_radius = group.is_finite() ? 0 : group_radius;
    Degree ones = Degree::ones(graph.k());
    if (!ones.leq(depth))
        throw Error(ErrorKind::DegreeOutOfRange,
                    "aperiodicity probe needs depth >= 1 in every color");

    std::vector<GroupElement> elems = enumerable_elements(group, group_radius);
    std::vector<Degree> shifts = Degree::box(depth);

    // shifted tails are compared on windows of full length `depth`, so the
    // sample paths reach degree depth + (p v q)
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        for (const GroupElement& g : elems) {
            for (const Degree& p : shifts) {
                for (const Degree& q : shifts) {
                    if (group.is_identity(g) && p == q) continue;
                    std::vector<Path> xs = graph.paths_from(v, depth.plus(p.join(q)));
                    bool uniform = true;
                    for (const Path& x : xs) {
                        Path seg_p = graph.segment(x, p, p.plus(depth));
                        Path seg_q = graph.segment(x, q, q.plus(depth));
                        if (seg_p != sys.act_path(g, seg_q)) {
                            uniform = false;
                            break;
                        }
                    }
                    if (uniform && !xs.empty()) {
                        res.violation = true;
                        res.vertex = v;
                        res.g = g;
                        res.p = p;
                        res.q = q;
                        res.sample = xs.front();
                        return res;
                    }
                }
            }
        }
    }
    return res;
}

}  // namespace epka
