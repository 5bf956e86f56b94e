#pragma once

#include <deque>

#include "epka/algebra.hpp"

namespace epka {

// Formal generator symbols of the free *-algebra on {S_mu, U_{v,g}} and
// their adjoints.
struct WordSymbol {
    enum class Kind { S, SStar, U, UStar };
    Kind kind;
    Path path;        // S / SStar
    VertexId vertex;  // U / UStar
    GroupElement g;   // U / UStar

    static WordSymbol s(Path p) { return {Kind::S, std::move(p), 0, {}}; }
    static WordSymbol s_star(Path p) { return {Kind::SStar, std::move(p), 0, {}}; }
    static WordSymbol u(VertexId v, GroupElement g) { return {Kind::U, {}, v, std::move(g)}; }
    static WordSymbol u_star(VertexId v, GroupElement g) {
        return {Kind::UStar, {}, v, std::move(g)};
    }
};

// Slow reference engine: reduces a formal word to a sum of spanning triples
// by applying the defining relations as left-to-right rewrite rules.  Kept
// independent of the closed-form product so the two can cross-check each
// other.  Throws NonTerminating if the step budget runs out.
template <CoefficientRing R>
AlgebraElement<R> rewrite_word(SystemPtr sys, const std::vector<WordSymbol>& input,
                               std::uint64_t step_budget = 1u << 22) {
    using Word = std::vector<WordSymbol>;
    const auto& graph = sys->graph();
    const auto& group = sys->group();

    AlgebraElement<R> out(sys);
    if (input.empty()) return unit_element<R>(sys);

    std::deque<std::pair<Word, typename R::Elem>> queue;
    queue.push_back({input, R::one()});
    std::uint64_t steps = 0;

    auto final_triple = [&](const Word& w) -> Triple {
        // irreducible words have the shape S? U? SStar? with consistent
        // boundary vertices
        Path mu, nu;
        GroupElement g = group.identity();
        std::size_t i = 0;
        bool have_mu = false, have_u = false;
        if (i < w.size() && w[i].kind == WordSymbol::Kind::S) {
            mu = w[i].path;
            have_mu = true;
            ++i;
        }
        if (i < w.size() && w[i].kind == WordSymbol::Kind::U) {
            g = w[i].g;
            if (!have_mu) mu = graph.vertex_path(w[i].vertex);
            have_mu = true;
            have_u = true;
            ++i;
        }
        if (i < w.size() && w[i].kind == WordSymbol::Kind::SStar) {
            nu = w[i].path;
            if (!have_mu) mu = graph.vertex_path(nu.source);
            have_mu = true;
            ++i;
        } else {
            nu = graph.vertex_path(sys->act_vertex(group.inv(g), mu.source));
        }
        if (i != w.size() || !have_mu)
            throw Error(ErrorKind::NonTerminating, "irreducible word of unexpected shape");
        (void)have_u;
        return Triple{std::move(mu), std::move(g), std::move(nu)};
    };

    while (!queue.empty()) {
        auto [w, coeff] = std::move(queue.front());
        queue.pop_front();
        if (++steps > step_budget)
            throw Error(ErrorKind::NonTerminating, "rewrite step budget exhausted");

        // eliminate U^* first: U_{v,g}^* = U_{g^{-1}.v, g^{-1}}
        bool rewrote = false;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i].kind == WordSymbol::Kind::UStar) {
                GroupElement gi = group.inv(w[i].g);
                w[i] = WordSymbol::u(sys->act_vertex(gi, w[i].vertex), gi);
                queue.push_back({std::move(w), coeff});
                rewrote = true;
                break;
            }
        }
        if (rewrote) continue;

        // first reducible adjacent pair, scanning left to right
        bool dropped = false;
        for (std::size_t i = 0; !rewrote && !dropped && i + 1 < w.size(); ++i) {
            const WordSymbol& x = w[i];
            const WordSymbol& y = w[i + 1];
            using K = WordSymbol::Kind;
            auto splice = [&](std::vector<WordSymbol> repl) {
                Word next(w.begin(), w.begin() + i);
                next.insert(next.end(), repl.begin(), repl.end());
                next.insert(next.end(), w.begin() + i + 2, w.end());
                queue.push_back({std::move(next), coeff});
                rewrote = true;
            };

            if (x.kind == K::S && y.kind == K::S) {
                if (x.path.source == y.path.range)
                    splice({WordSymbol::s(graph.compose(x.path, y.path))});
                else
                    dropped = true;
            } else if (x.kind == K::SStar && y.kind == K::SStar) {
                if (y.path.source == x.path.range)
                    splice({WordSymbol::s_star(graph.compose(y.path, x.path))});
                else
                    dropped = true;
            } else if (x.kind == K::SStar && y.kind == K::S) {
                // s_mu^* s_nu = sum over Lambda^min(mu,nu) of s_a s_b^*
                auto exts = graph.min_common_extensions(x.path, y.path);
                for (const auto& [alpha, beta] : exts) {
                    Word next(w.begin(), w.begin() + i);
                    next.push_back(WordSymbol::s(alpha));
                    next.push_back(WordSymbol::s_star(beta));
                    next.insert(next.end(), w.begin() + i + 2, w.end());
                    queue.push_back({next, coeff});
                }
                rewrote = true;
            } else if (x.kind == K::U && y.kind == K::S) {
                if (x.vertex == sys->act_vertex(x.g, y.path.range)) {
                    Path gp = sys->act_path(x.g, y.path);
                    splice({WordSymbol::s(gp),
                            WordSymbol::u(gp.source, sys->cocycle_path(x.g, y.path))});
                } else {
                    dropped = true;
                }
            } else if (x.kind == K::U && y.kind == K::U) {
                if (x.vertex == sys->act_vertex(x.g, y.vertex))
                    splice({WordSymbol::u(x.vertex, group.mul(x.g, y.g))});
                else
                    dropped = true;
            } else if (x.kind == K::SStar && y.kind == K::U) {
                // adjoint of the intertwiner rule
                if (x.path.range == y.vertex) {
                    GroupElement gi = group.inv(y.g);
                    Path gp = sys->act_path(gi, x.path);
                    GroupElement c = group.inv(sys->cocycle_path(gi, x.path));
                    splice({WordSymbol::u(sys->act_vertex(c, gp.source), c),
                            WordSymbol::s_star(gp)});
                } else {
                    dropped = true;
                }
            } else if (x.kind == K::S && y.kind == K::SStar) {
                if (x.path.source != y.path.source) dropped = true;
            } else if (x.kind == K::S && y.kind == K::U) {
                if (x.path.source != y.vertex) dropped = true;
            } else if (x.kind == K::U && y.kind == K::SStar) {
                if (x.vertex != sys->act_vertex(x.g, y.path.source)) dropped = true;
            }
        }
        if (rewrote || dropped) continue;

        out.add_term(final_triple(w), coeff);
    }
    return out;
}

}  // namespace epka
