#include <doctest.h>

#include "epka/rewrite.hpp"
#include "test_util.hpp"

using namespace epka;
using namespace epka::testutil;

namespace {

Path p_(const SystemPtr& sys, const std::string& name) {
    const auto& graph = sys->graph();
    if (auto v = graph.find_vertex(name)) return graph.vertex_path(*v);
    std::vector<EdgeId> word;
    for (char c : name) word.push_back(*graph.find_edge(std::string(1, c)));
    return graph.path_from_word(word);
}

// the closed-form value of a symbol word, for cross-checking the rewriter
AlgebraElement<IntRing> closed_form(SystemPtr sys, const std::vector<WordSymbol>& word) {
    auto out = unit_element<IntRing>(sys);
    for (const auto& sym : word) {
        AlgebraElement<IntRing> piece(sys);
        switch (sym.kind) {
            case WordSymbol::Kind::S:
                piece = gen_s<IntRing>(sys, sym.path);
                break;
            case WordSymbol::Kind::SStar:
                piece = adjoint(gen_s<IntRing>(sys, sym.path));
                break;
            case WordSymbol::Kind::U:
                piece = gen_u<IntRing>(sys, sym.vertex, sym.g);
                break;
            case WordSymbol::Kind::UStar:
                piece = adjoint(gen_u<IntRing>(sys, sym.vertex, sym.g));
                break;
        }
        out = mul(out, piece);
    }
    return out;
}

}  // namespace

TEST_CASE("rewrite rules on the defining relations") {
    auto sys = am2();
    GroupElement t = *sys->group().find("t");

    // the intertwiner: U_t S_a -> S_{t.a} U_{phi(t,a)} = S_b
    auto ua = rewrite_word<IntRing>(sys, {WordSymbol::u(0, t), WordSymbol::s(p_(sys, "a"))});
    CHECK(ua.terms() == gen_s<IntRing>(sys, p_(sys, "b")).terms());

    // S_mu^* S_mu -> S_{s(mu)}
    auto sm = rewrite_word<IntRing>(
        sys, {WordSymbol::s_star(p_(sys, "ab")), WordSymbol::s(p_(sys, "ab"))});
    CHECK(sm.terms() == gen_s<IntRing>(sys, p_(sys, "v")).terms());

    // orthogonality on the rose
    auto rose_sys = rose2();
    auto zero = rewrite_word<IntRing>(
        rose_sys,
        {WordSymbol::s_star(p_(rose_sys, "a")), WordSymbol::s(p_(rose_sys, "b"))});
    CHECK(zero.empty());

    // U^* elimination
    auto ustar = rewrite_word<IntRing>(sys, {WordSymbol::u_star(0, t)});
    CHECK(ustar.terms() == gen_u<IntRing>(sys, 0, sys->group().inv(t)).terms());

    // empty word is the unit
    CHECK(rewrite_word<IntRing>(sys, {}).terms() == unit_element<IntRing>(sys).terms());

    // a step budget that is too small raises
    std::vector<WordSymbol> long_word;
    for (int i = 0; i < 6; ++i) {
        long_word.push_back(WordSymbol::s_star(p_(sys, "a")));
        long_word.push_back(WordSymbol::s(p_(sys, "a")));
    }
    CHECK_THROWS_AS(rewrite_word<IntRing>(sys, long_word, 3), Error);
}

TEST_CASE("rewriter agrees with the closed-form product") {
    for (auto sys : {rose2(), am2(), sv2graph(), sv2graph_z2(), two_vertex_z2()}) {
        const auto& graph = sys->graph();
        Rng rng(97);
        Degree bound = Degree::ones(graph.k());
        for (int trial = 0; trial < 120; ++trial) {
            std::vector<WordSymbol> word;
            int len = 1 + static_cast<int>(pick(rng, 4));
            for (int i = 0; i < len; ++i) {
                switch (pick(rng, 4)) {
                    case 0:
                        word.push_back(WordSymbol::s(random_path(*sys, rng, bound)));
                        break;
                    case 1:
                        word.push_back(WordSymbol::s_star(random_path(*sys, rng, bound)));
                        break;
                    case 2:
                        word.push_back(WordSymbol::u(
                            static_cast<VertexId>(pick(rng, graph.vertex_count())),
                            random_group_element(*sys, rng)));
                        break;
                    default:
                        word.push_back(WordSymbol::u_star(
                            static_cast<VertexId>(pick(rng, graph.vertex_count())),
                            random_group_element(*sys, rng)));
                        break;
                }
            }
            auto via_rules = rewrite_word<IntRing>(sys, word);
            auto via_formula = closed_form(sys, word);
            CHECK(equals(via_rules, via_formula));

            // every output triple satisfies the source-matching law
            for (const auto& [t, c] : via_rules.terms()) {
                (void)c;
                CHECK(t.mu.source == sys->act_vertex(t.g, t.nu.source));
            }
        }
    }
}
