#pragma once

#include <map>
#include <vector>

#include "epka/action.hpp"
#include "epka/ring.hpp"

namespace epka {

// Spanning element s_mu u_{s(mu),g} s_nu^*.  Invariant: s(mu) = g.s(nu).
struct Triple {
    Path mu;
    GroupElement g;
    Path nu;

    bool operator==(const Triple& o) const { return mu == o.mu && g == o.g && nu == o.nu; }
    bool operator<(const Triple& o) const {
        if (!(mu == o.mu)) return mu < o.mu;
        if (g != o.g) return g < o.g;
        return nu < o.nu;
    }
    std::vector<std::int64_t> grade() const { return mu.degree.diff(nu.degree); }
};

// Finite R-linear combination of spanning triples over a fixed system.
// Stored zero coefficients are pruned eagerly; the map order makes printing
// and iteration deterministic.
template <CoefficientRing R>
class AlgebraElement {
public:
    using Coeff = typename R::Elem;

    explicit AlgebraElement(SystemPtr sys) : sys_(std::move(sys)) {}

    const SystemPtr& system() const { return sys_; }
    const std::map<Triple, Coeff>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Triple& t, const Coeff& c) {
        if (R::is_zero(c)) return;
        auto it = terms_.find(t);
        if (it == terms_.end()) {
            terms_.emplace(t, c);
        } else {
            it->second = R::add(it->second, c);
            if (R::is_zero(it->second)) terms_.erase(it);
        }
    }

private:
    SystemPtr sys_;
    std::map<Triple, Coeff> terms_;
};

namespace detail {
template <CoefficientRing R>
void check_same_system(const AlgebraElement<R>& a, const AlgebraElement<R>& b) {
    if (a.system().get() != b.system().get())
        throw Error(ErrorKind::MixedSystems, "elements belong to different systems");
}
}  // namespace detail

template <CoefficientRing R>
AlgebraElement<R> zero_element(SystemPtr sys) {
    return AlgebraElement<R>(std::move(sys));
}

// s_mu = s_mu u_{s(mu),e} s_{s(mu)}^*
template <CoefficientRing R>
AlgebraElement<R> gen_s(SystemPtr sys, const Path& mu) {
    AlgebraElement<R> out(sys);
    Triple t{mu, sys->group().identity(), sys->graph().vertex_path(mu.source)};
    out.add_term(t, R::one());
    return out;
}

// u_{v,g} = s_v u_{v,g} s_{g^{-1}.v}^*
template <CoefficientRing R>
AlgebraElement<R> gen_u(SystemPtr sys, VertexId v, const GroupElement& g) {
    AlgebraElement<R> out(sys);
    VertexId w = sys->act_vertex(sys->group().inv(g), v);
    Triple t{sys->graph().vertex_path(v), g, sys->graph().vertex_path(w)};
    out.add_term(t, R::one());
    return out;
}

// Sum of all vertex projections; the unit since the vertex set is finite.
template <CoefficientRing R>
AlgebraElement<R> unit_element(SystemPtr sys) {
    AlgebraElement<R> out(sys);
    for (VertexId v = 0; v < sys->graph().vertex_count(); ++v)
        out.add_term({sys->graph().vertex_path(v), sys->group().identity(),
                      sys->graph().vertex_path(v)},
                     R::one());
    return out;
}

template <CoefficientRing R>
AlgebraElement<R> add(const AlgebraElement<R>& a, const AlgebraElement<R>& b) {
    detail::check_same_system(a, b);
    AlgebraElement<R> out = a;
    for (const auto& [t, c] : b.terms()) out.add_term(t, c);
    return out;
}

template <CoefficientRing R>
AlgebraElement<R> scalar_mul(const typename R::Elem& r, const AlgebraElement<R>& a) {
    AlgebraElement<R> out(a.system());
    for (const auto& [t, c] : a.terms()) out.add_term(t, R::mul(r, c));
    return out;
}

template <CoefficientRing R>
AlgebraElement<R> sub(const AlgebraElement<R>& a, const AlgebraElement<R>& b) {
    return add(a, scalar_mul(R::neg(R::one()), b));
}

// (mu, g, nu) -> (nu, g^{-1}, mu) with conjugated coefficients.
template <CoefficientRing R>
AlgebraElement<R> adjoint(const AlgebraElement<R>& a) {
    const auto& group = a.system()->group();
    AlgebraElement<R> out(a.system());
    for (const auto& [t, c] : a.terms())
        out.add_term({t.nu, group.inv(t.g), t.mu}, R::star(c));
    return out;
}

// Bilinear extension of the triple product
//   (mu,g,nu)(alpha,h,beta) =
//     sum over (a,b) in Lambda^min(nu, alpha) of
//       (mu.(g.a), phi(g,a) phi(h^{-1},b)^{-1}, beta.(h^{-1}.b)).
template <CoefficientRing R>
AlgebraElement<R> mul(const AlgebraElement<R>& x, const AlgebraElement<R>& y) {
    detail::check_same_system(x, y);
    const auto& sys = *x.system();
    const auto& graph = sys.graph();
    const auto& group = sys.group();
    AlgebraElement<R> out(x.system());
    for (const auto& [ta, ca] : x.terms()) {
        for (const auto& [tb, cb] : y.terms()) {
            auto coeff = R::mul(ca, cb);
            if (R::is_zero(coeff)) continue;
            GroupElement hinv = group.inv(tb.g);
            for (const auto& [alpha, beta] : graph.min_common_extensions(ta.nu, tb.mu)) {
                Path left = graph.compose(ta.mu, sys.act_path(ta.g, alpha));
                GroupElement mid = group.mul(sys.cocycle_path(ta.g, alpha),
                                             group.inv(sys.cocycle_path(hinv, beta)));
                Path right = graph.compose(tb.nu, sys.act_path(hinv, beta));
                out.add_term({left, mid, right}, coeff);
            }
        }
    }
    return out;
}

// Z^k-graded component: triples with d(mu) - d(nu) = n.
template <CoefficientRing R>
AlgebraElement<R> graded_component(const AlgebraElement<R>& a,
                                   const std::vector<std::int64_t>& n) {
    AlgebraElement<R> out(a.system());
    for (const auto& [t, c] : a.terms())
        if (t.grade() == n) out.add_term(t, c);
    return out;
}

template <CoefficientRing R>
std::map<std::vector<std::int64_t>, AlgebraElement<R>> graded_components(
    const AlgebraElement<R>& a) {
    std::map<std::vector<std::int64_t>, AlgebraElement<R>> out;
    for (const auto& [t, c] : a.terms()) {
        auto key = t.grade();
        auto it = out.find(key);
        if (it == out.end()) it = out.emplace(key, AlgebraElement<R>(a.system())).first;
        it->second.add_term(t, c);
    }
    return out;
}

// Rewrites a homogeneous element so that every left path has degree big:
//   (mu,g,nu) = sum over lam in s(mu)Lambda^{big-d(mu)} of
//     (mu.lam, phi(g^{-1},lam)^{-1}, nu.(g^{-1}.lam)).
template <CoefficientRing R>
AlgebraElement<R> expand_to_degree(const AlgebraElement<R>& a, const Degree& big) {
    const auto& sys = *a.system();
    const auto& graph = sys.graph();
    const auto& group = sys.group();
    AlgebraElement<R> out(a.system());
    if (a.empty()) return out;
    auto grade = a.terms().begin()->first.grade();
    for (const auto& [t, c] : a.terms()) {
        if (t.grade() != grade)
            throw Error(ErrorKind::NotHomogeneous, "element mixes graded components");
        if (!t.mu.degree.leq(big))
            throw Error(ErrorKind::DegreeTooSmall,
                        "target degree " + big.to_string() + " below left degree " +
                            t.mu.degree.to_string());
    }
    for (const auto& [t, c] : a.terms()) {
        GroupElement ginv = group.inv(t.g);
        for (const Path& lam : graph.paths_from(t.mu.source, big.minus(t.mu.degree))) {
            Path left = graph.compose(t.mu, lam);
            GroupElement mid = group.inv(sys.cocycle_path(ginv, lam));
            Path right = graph.compose(t.nu, sys.act_path(ginv, lam));
            out.add_term({left, mid, right}, c);
        }
    }
    return out;
}

// Per graded component, expand every triple to the join of the left degrees
// present and collect.  Idempotent; empty output certifies zero.
template <CoefficientRing R>
AlgebraElement<R> normalize(const AlgebraElement<R>& a) {
    AlgebraElement<R> out(a.system());
    for (const auto& [grade, comp] : graded_components(a)) {
        (void)grade;
        Degree big = comp.terms().begin()->first.mu.degree;
        for (const auto& [t, c] : comp.terms()) big = big.join(t.mu.degree);
        AlgebraElement<R> expanded = expand_to_degree(comp, big);
        for (const auto& [t, c] : expanded.terms()) out.add_term(t, c);
    }
    return out;
}

// Zero test: an empty normal form is always a certificate for zero; a
// nonzero normal form certifies nonzero only over pseudo-free systems.
template <CoefficientRing R>
bool is_zero(const AlgebraElement<R>& a) {
    if (normalize(a).empty()) return true;
    if (!a.system()->pseudo_free_certified())
        throw Error(ErrorKind::NotPseudoFree,
                    "cannot certify a nonzero normal form without pseudo-freeness");
    return false;
}

template <CoefficientRing R>
bool equals(const AlgebraElement<R>& a, const AlgebraElement<R>& b) {
    return is_zero(sub(a, b));
}

// Conditional expectation onto the diagonal: on the normal form, keep the
// triples with mu = nu and trivial group part.
template <CoefficientRing R>
AlgebraElement<R> expectation(const AlgebraElement<R>& a) {
    if (!a.system()->pseudo_free_certified())
        throw Error(ErrorKind::NotPseudoFree,
                    "expectation needs a pseudo-free system to be well-defined");
    const auto& group = a.system()->group();
    AlgebraElement<R> out(a.system());
    AlgebraElement<R> nf = normalize(a);
    for (const auto& [t, c] : nf.terms())
        if (t.mu == t.nu && group.is_identity(t.g)) out.add_term(t, c);
    return out;
}

// --- relation checking -----------------------------------------------------

inline std::vector<Path> all_paths_up_to(const KGraph& graph, const Degree& depth) {
    std::vector<Path> out;
    for (const Degree& n : Degree::box(depth))
        for (VertexId v = 0; v < graph.vertex_count(); ++v)
            for (const Path& p : graph.paths_from(v, n)) out.push_back(p);
    return out;
}

inline std::vector<GroupElement> enumerable_elements(const Group& group,
                                                     std::int64_t ball_radius) {
    return group.is_finite() ? group.elements() : group.ball(ball_radius);
}

// Verifies every instance of the defining relations with paths of degree
// <= depth (and enumerable group elements): the Kumjian-Pask relations for
// the s-family and the u-family intertwiners.  A violation is a nonzero
// normal form of the difference.
template <CoefficientRing R>
ValidationReport check_relations(SystemPtr sys, const Degree& depth,
                                 std::int64_t ball_radius = 2) {
    ValidationReport report;
    const auto& graph = sys->graph();
    const auto& group = sys->group();
    const GroupElement e_g = group.identity();

    auto expect_zero = [&](const AlgebraElement<R>& diff, const std::string& rule,
                           const std::string& detail) {
        if (!normalize(diff).empty()) report.add(rule, detail);
    };
    auto name = [&](const Path& p) { return graph.path_name(p); };

    std::vector<Path> paths = all_paths_up_to(graph, depth);
    std::vector<GroupElement> elems = enumerable_elements(group, ball_radius);

    // (CK1) vertex projections are pairwise orthogonal and self-adjoint
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        auto sv = gen_s<R>(sys, graph.vertex_path(v));
        expect_zero(sub(mul(sv, sv), sv), "CK1", "s_v not idempotent at " + graph.vertex_name(v));
        expect_zero(sub(adjoint(sv), sv), "CK1", "s_v not self-adjoint");
        for (VertexId w = 0; w < graph.vertex_count(); ++w) {
            if (v == w) continue;
            auto sw = gen_s<R>(sys, graph.vertex_path(w));
            expect_zero(mul(sv, sw), "CK1", "s_v s_w != 0 for distinct vertices");
        }
    }

    // (CK2) s_{mu nu} = s_mu s_nu
    for (const Path& mu : paths) {
        for (const Path& nu : paths) {
            if (mu.source != nu.range) continue;
            if (!mu.degree.plus(nu.degree).leq(depth)) continue;
            expect_zero(sub(gen_s<R>(sys, graph.compose(mu, nu)),
                            mul(gen_s<R>(sys, mu), gen_s<R>(sys, nu))),
                        "CK2", "s_{mu nu} != s_mu s_nu at mu=" + name(mu) + " nu=" + name(nu));
        }
    }

    // (CK3) s_mu^* s_mu = s_{s(mu)} and the partial isometry law
    for (const Path& mu : paths) {
        auto smu = gen_s<R>(sys, mu);
        expect_zero(sub(mul(adjoint(smu), smu), gen_s<R>(sys, graph.vertex_path(mu.source))),
                    "CK3", "s_mu^* s_mu != s_{s(mu)} at mu=" + name(mu));
        expect_zero(sub(mul(mul(smu, adjoint(smu)), smu), smu), "CK3",
                    "s_mu not a partial isometry at mu=" + name(mu));
    }

    // (CK4) s_v = sum over v Lambda^n of s_mu s_mu^*
    for (const Degree& n : Degree::box(depth)) {
        if (n.is_zero()) continue;
        for (VertexId v = 0; v < graph.vertex_count(); ++v) {
            AlgebraElement<R> sum(sys);
            for (const Path& mu : graph.paths_from(v, n)) {
                auto smu = gen_s<R>(sys, mu);
                sum = add(sum, mul(smu, adjoint(smu)));
            }
            expect_zero(sub(gen_s<R>(sys, graph.vertex_path(v)), sum), "CK4",
                        "s_v != sum s_mu s_mu^* at v=" + graph.vertex_name(v) +
                            " n=" + n.to_string());
        }
    }

    // (2) u_{v,e} = s_v
    for (VertexId v = 0; v < graph.vertex_count(); ++v)
        expect_zero(sub(gen_u<R>(sys, v, e_g), gen_s<R>(sys, graph.vertex_path(v))), "EP2",
                    "u_{v,e} != s_v at " + graph.vertex_name(v));

    // (3) u_{v,g}^* = u_{g^{-1}.v, g^{-1}}
    for (VertexId v = 0; v < graph.vertex_count(); ++v)
        for (const GroupElement& g : elems)
            expect_zero(sub(adjoint(gen_u<R>(sys, v, g)),
                            gen_u<R>(sys, sys->act_vertex(group.inv(g), v), group.inv(g))),
                        "EP3", "u^* law fails at v=" + graph.vertex_name(v) +
                                   " g=" + group.name(g));

    // (4) u_{v,g} s_mu = [v = g.r(mu)] s_{g.mu} u_{g.s(mu), phi(g,mu)}
    for (const GroupElement& g : elems) {
        for (const Path& mu : paths) {
            for (VertexId v = 0; v < graph.vertex_count(); ++v) {
                auto lhs = mul(gen_u<R>(sys, v, g), gen_s<R>(sys, mu));
                if (v == sys->act_vertex(g, mu.range)) {
                    auto rhs = mul(gen_s<R>(sys, sys->act_path(g, mu)),
                                   gen_u<R>(sys, sys->act_vertex(g, mu.source),
                                            sys->cocycle_path(g, mu)));
                    expect_zero(sub(lhs, rhs), "EP4",
                                "intertwiner fails at g=" + group.name(g) + " mu=" + name(mu));
                } else {
                    expect_zero(lhs, "EP4", "u_{v,g} s_mu != 0 for v != g.r(mu), mu=" + name(mu));
                }
            }
        }
    }

    // (5) u_{v,g} u_{w,h} = [v = g.w] u_{v, gh}
    for (const GroupElement& g : elems) {
        for (const GroupElement& h : elems) {
            for (VertexId w = 0; w < graph.vertex_count(); ++w) {
                VertexId gw = sys->act_vertex(g, w);
                for (VertexId v = 0; v < graph.vertex_count(); ++v) {
                    auto lhs = mul(gen_u<R>(sys, v, g), gen_u<R>(sys, w, h));
                    if (v == gw) {
                        expect_zero(sub(lhs, gen_u<R>(sys, v, group.mul(g, h))), "EP5",
                                    "u-product fails at g=" + group.name(g) +
                                        " h=" + group.name(h));
                    } else {
                        expect_zero(lhs, "EP5", "u_{v,g} u_{w,h} != 0 for v != g.w");
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace epka
