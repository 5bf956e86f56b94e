#pragma once

#include <optional>

#include "epka/algebra.hpp"

namespace epka {

// A compact open bisection Z(mu, g, nu) is determined by its spanning
// triple, so the triple doubles as the bisection datum.
using BasicBisection = Triple;

// Symbolic tail n -> phi(g, x(0, n - base)) of a cocycle germ, carried as
// (g, finite prefix); defined for base <= n <= base + d(prefix).
struct CocycleTail {
    Degree base;
    GroupElement g;
    Path prefix;

    GroupElement value_at(const SelfSimilarSystem& sys, const Degree& n) const;
    // Germ equality witnessed at a single depth; exact over pseudo-free
    // systems once the underlying paths agree.
    bool equal_at(const SelfSimilarSystem& sys, const CocycleTail& other,
                  const Degree& n) const;
};

// Point of Z(context) over any infinite extension of `prefix`; the prefix
// is on the source side, so r(prefix) = s(context.nu).
struct Germ {
    Triple context;
    Path prefix;

    Degree depth() const { return prefix.degree; }
};

// Finite-prefix action; agrees with act_path on every prefix.
Path act_prefix(const SelfSimilarSystem& sys, const GroupElement& g, const Path& prefix);

BasicBisection invert_bisection(const SelfSimilarSystem& sys, const BasicBisection& b);

// Support of the product: mirrors the triple product with coefficients
// dropped; the results are pairwise disjoint after uniform refinement.
std::vector<BasicBisection> compose_bisections(const SelfSimilarSystem& sys,
                                               const BasicBisection& a,
                                               const BasicBisection& b);

// Z(mu,g,nu) as a disjoint union of bisections with left degree `big`.
std::vector<BasicBisection> refine_bisection(const SelfSimilarSystem& sys,
                                             const BasicBisection& b, const Degree& big);

// True iff the uniform refinements at `depth` share no triple; decides
// disjointness when the system is pseudo-free.
bool disjoint(const SelfSimilarSystem& sys, const BasicBisection& a, const BasicBisection& b,
              const Degree& depth);

// Decides whether every point of the germ lies in Z(b), from prefix data
// alone.  Throws DepthTooSmall when the prefix cannot settle the question.
bool germ_in_bisection(const SelfSimilarSystem& sys, const Germ& germ,
                       const BasicBisection& b);

// Pointwise value of the element as a Steinberg-algebra function: the sum
// of coefficients of the stored triples whose bisection contains the germ.
// Works on the representation as given, which keeps it independent of the
// normal form.
template <CoefficientRing R>
typename R::Elem evaluate(const AlgebraElement<R>& a, const Germ& germ) {
    auto out = R::zero();
    for (const auto& [t, c] : a.terms())
        if (germ_in_bisection(*a.system(), germ, t)) out = R::add(out, c);
    return out;
}

// Finite family of germs on which any linear combination of the given
// triples is constant piecewise; the element vanishes as a function iff it
// evaluates to zero on all of them.
template <CoefficientRing R>
std::vector<Germ> covering_germs(const AlgebraElement<R>& a) {
    std::vector<Germ> out;
    const auto& graph = a.system()->graph();
    for (const auto& [grade, comp] : graded_components(a)) {
        (void)grade;
        Degree big = comp.terms().begin()->first.mu.degree;
        for (const auto& [t, c] : comp.terms()) big = big.join(t.mu.degree);
        for (const auto& [t, c] : comp.terms()) {
            (void)c;
            for (const Path& sigma : graph.paths_from(t.nu.source, big.minus(t.mu.degree)))
                out.push_back(Germ{t, sigma});
        }
    }
    return out;
}

template <CoefficientRing R>
bool vanishes_on_groupoid(const AlgebraElement<R>& a) {
    for (const Germ& germ : covering_germs(a))
        if (!R::is_zero(evaluate(a, germ))) return false;
    return true;
}

struct AperiodicityResult {
    bool violation = false;
    // populated for a violation: every x in v Lambda^infty satisfies
    // x(p,.) = g.x(q,.) through the probed window
    VertexId vertex = 0;
    GroupElement g;
    Degree p, q;
    std::optional<Path> sample;
    Degree depth;
    std::int64_t group_radius = 0;
};

// Bounded probe for G-aperiodicity: searches for (v, g, p, q) with
// (g,p) != (e,q) such that every path in v Lambda^depth satisfies the
// shifted relation on the largest comparable window.  Windows are kept
// nonempty in every color, so p v q <= depth - 1.
AperiodicityResult check_aperiodicity(const SelfSimilarSystem& sys, const Degree& depth,
                                      std::int64_t group_radius = 2);

}  // namespace epka
