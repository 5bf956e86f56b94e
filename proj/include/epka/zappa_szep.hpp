#pragma once

#include "epka/algebra.hpp"

namespace epka {

// Element (mu, g) of the product semigroup on paths and group elements of a
// single-vertex system.
struct ZSElement {
    Path path;
    GroupElement g;

    bool operator==(const ZSElement& o) const { return path == o.path && g == o.g; }
};

// Constructible right ideal of the path semigroup: a finite union of
// principal ideals with equal-degree generators.  No generators = the empty
// ideal; the vertex path generates the full semigroup.
struct ConstructibleIdeal {
    std::vector<Path> generators;  // canonical: uniform degree, sorted, unique

    bool is_empty() const { return generators.empty(); }
    bool is_full() const {
        return generators.size() == 1 && generators.front().is_vertex();
    }
    Degree degree(int k) const {
        return generators.empty() ? Degree::zero(k) : generators.front().degree;
    }
    bool operator==(const ConstructibleIdeal& o) const { return generators == o.generators; }
};

void require_single_vertex(const SelfSimilarSystem& sys);

// Canonical form: every generator extended to the join degree, deduplicated.
ConstructibleIdeal make_ideal(const KGraph& graph, std::vector<Path> generators);
ConstructibleIdeal full_ideal(const KGraph& graph);
ConstructibleIdeal empty_ideal();
ConstructibleIdeal renormalize_ideal(const KGraph& graph, const ConstructibleIdeal& x,
                                     const Degree& degree);

// (mu,g)(nu,h) = (mu.(g.nu), phi(g,nu).h)
ZSElement zs_mul(const SelfSimilarSystem& sys, const ZSElement& x, const ZSElement& y);

// image of an ideal under left translation by a semigroup element
ConstructibleIdeal zs_act_ideal(const SelfSimilarSystem& sys, const ZSElement& x,
                                const ConstructibleIdeal& ideal);

// X cap Y through minimal common extensions of the generators
ConstructibleIdeal ideal_intersect(const SelfSimilarSystem& sys, const ConstructibleIdeal& x,
                                   const ConstructibleIdeal& y);

// F is a foundation set iff the degree-n extensions of its generators cover
// Lambda^n, where n is the join of the generator degrees.
bool is_foundation(const SelfSimilarSystem& sys, const std::vector<ConstructibleIdeal>& family);

// Boundary-quotient generators realized inside the algebra:
//   t_{(mu,g)} = s_mu u_g  and  q_X = sum s_{mu_i} s_{mu_i}^*.
template <CoefficientRing R>
AlgebraElement<R> translate_t(SystemPtr sys, const ZSElement& x) {
    require_single_vertex(*sys);
    return mul(gen_s<R>(sys, x.path), gen_u<R>(sys, x.path.source, x.g));
}

template <CoefficientRing R>
AlgebraElement<R> translate_q(SystemPtr sys, const ConstructibleIdeal& ideal) {
    require_single_vertex(*sys);
    if (ideal.is_full()) return unit_element<R>(sys);
    AlgebraElement<R> out(sys);
    for (const Path& mu : ideal.generators) {
        auto smu = gen_s<R>(sys, mu);
        out = add(out, mul(smu, adjoint(smu)));
    }
    return out;
}

// Surjectivity of g -> phi(g, mu) is the standing hypothesis of the
// boundary-quotient translation; finite groups are checked exactly,
// Z^m by an adaptive ball probe that must reach every basis element.
ValidationReport check_phi_surjectivity(const SelfSimilarSystem& sys, const Degree& max_degree);

// Desk-scale verification of the boundary-quotient relations under the
// translation: semigroup multiplicativity, conjugation of projections,
// unit/zero, intersections, and the foundation-set identity
// prod over F of (1 - q_X) = 0 for every uniform-degree foundation family
// with generators of degree <= max_degree.
template <CoefficientRing R>
ValidationReport verify_boundary_relations(SystemPtr sys, const Degree& max_degree,
                                           std::int64_t group_radius = 2) {
    require_single_vertex(*sys);
    ValidationReport report = check_phi_surjectivity(*sys, max_degree);
    if (!report.ok()) return report;

    const auto& graph = sys->graph();
    const auto& group = sys->group();
    auto expect_equal = [&](const AlgebraElement<R>& lhs, const AlgebraElement<R>& rhs,
                            const std::string& rule, const std::string& detail) {
        if (!normalize(sub(lhs, rhs)).empty()) report.add(rule, detail);
    };

    std::vector<Path> paths = all_paths_up_to(graph, max_degree);
    std::vector<GroupElement> elems = enumerable_elements(group, group_radius);
    std::vector<ZSElement> zs;
    for (const Path& p : paths)
        for (const GroupElement& g : elems) zs.push_back({p, g});

    // ideals with uniform-degree generators, grouped by degree
    std::vector<std::vector<ConstructibleIdeal>> by_degree;
    std::vector<ConstructibleIdeal> ideals;
    for (const Degree& n : Degree::box(max_degree)) {
        std::vector<Path> level = graph.paths_from(0, n);
        std::vector<ConstructibleIdeal> here;
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << level.size()); ++mask) {
            std::vector<Path> gens;
            for (std::size_t i = 0; i < level.size(); ++i)
                if (mask & (std::uint64_t(1) << i)) gens.push_back(level[i]);
            here.push_back(make_ideal(graph, std::move(gens)));
        }
        ideals.insert(ideals.end(), here.begin(), here.end());
        by_degree.push_back(std::move(here));
    }

    // (1) t_x t_y = t_{xy}
    for (const ZSElement& x : zs)
        for (const ZSElement& y : zs)
            expect_equal(mul(translate_t<R>(sys, x), translate_t<R>(sys, y)),
                         translate_t<R>(sys, zs_mul(*sys, x, y)), "BQ1",
                         "t_x t_y != t_xy at x=(" + graph.path_name(x.path) + "," +
                             group.name(x.g) + ")");

    // (2) t_x q_X t_x^* = q_{xX}
    for (const ZSElement& x : zs) {
        auto tx = translate_t<R>(sys, x);
        for (const ConstructibleIdeal& ideal : ideals)
            expect_equal(mul(mul(tx, translate_q<R>(sys, ideal)), adjoint(tx)),
                         translate_q<R>(sys, zs_act_ideal(*sys, x, ideal)), "BQ2",
                         "conjugation law fails at x=(" + graph.path_name(x.path) + "," +
                             group.name(x.g) + ")");
    }

    // (3) q_full = 1 and q_empty = 0
    expect_equal(translate_q<R>(sys, full_ideal(graph)), unit_element<R>(sys), "BQ3",
                 "q of the full ideal is not the unit");
    expect_equal(translate_q<R>(sys, empty_ideal()), AlgebraElement<R>(sys), "BQ3",
                 "q of the empty ideal is not zero");

    // (4) q_X q_Y = q_{X cap Y}
    for (const ConstructibleIdeal& x : ideals)
        for (const ConstructibleIdeal& y : ideals)
            expect_equal(mul(translate_q<R>(sys, x), translate_q<R>(sys, y)),
                         translate_q<R>(sys, ideal_intersect(*sys, x, y)), "BQ4",
                         "intersection law fails");

    // (5) prod over F of (1 - q_X) = 0 for every uniform-degree foundation
    // family.  Subsets of each degree level are searched exhaustively; once
    // a subfamily's product vanishes, every superset's product vanishes too
    // (the q's commute), so those masks are skipped.
    auto one = unit_element<R>(sys);
    for (const auto& level : by_degree) {
        if (level.size() > 20)
            throw Error(ErrorKind::Overflow, "foundation family enumeration too large");
        std::vector<AlgebraElement<R>> factors;
        for (const ConstructibleIdeal& x : level)
            factors.push_back(sub(one, translate_q<R>(sys, x)));
        const std::uint64_t end = std::uint64_t(1) << level.size();
        std::vector<std::uint64_t> masks;
        for (std::uint64_t mask = 1; mask < end; ++mask) masks.push_back(mask);
        std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
            int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
            return pa != pb ? pa < pb : a < b;
        });
        std::vector<std::uint64_t> verified_zero;
        for (std::uint64_t mask : masks) {
            bool covered = false;
            for (std::uint64_t vm : verified_zero)
                if ((vm & mask) == vm) covered = true;
            if (covered) continue;
            std::vector<ConstructibleIdeal> family;
            for (std::size_t i = 0; i < level.size(); ++i)
                if (mask & (std::uint64_t(1) << i)) family.push_back(level[i]);
            if (!is_foundation(*sys, family)) continue;
            AlgebraElement<R> prod = one;
            for (std::size_t i = 0; i < level.size(); ++i)
                if (mask & (std::uint64_t(1) << i)) prod = mul(prod, factors[i]);
            if (normalize(prod).empty())
                verified_zero.push_back(mask);
            else
                report.add("BQ5", "foundation product nonzero for a family of " +
                                      std::to_string(family.size()) + " ideals at degree " +
                                      family.front().degree(graph.k()).to_string());
        }
    }
    return report;
}

}  // namespace epka
