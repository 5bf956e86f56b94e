#include <doctest.h>

#include "test_util.hpp"

using namespace epka;
using namespace epka::testutil;

TEST_CASE("finite group arithmetic and validation") {
    Group z2 = z2_group();
    CHECK(z2.validate().ok());
    GroupElement g = *z2.find("g");
    CHECK(z2.mul(g, g) == z2.identity());
    CHECK(z2.inv(g) == g);
    CHECK(z2.is_identity(z2.mul(z2.identity(), z2.identity())));

    // broken associativity is reported
    Group bad = Group::finite({{"e", "x", "y"},
                               {{"e", "x", "y"}, {"x", "y", "x"}, {"y", "x", "e"}}});
    CHECK(!bad.validate().ok());

    // mixing backends raises
    Group z = Group::free_abelian(1);
    CHECK_THROWS_AS(z.mul(z.identity(), g), Error);
}

TEST_CASE("free abelian arithmetic") {
    Group z2 = Group::free_abelian(2);
    GroupElement a{-1, {2, -1}}, b{-1, {3, 5}};
    CHECK(z2.mul(a, b) == GroupElement{-1, {5, 4}});
    CHECK(z2.inv(a) == GroupElement{-1, {-2, 1}});
    CHECK(z2.validate().ok());
    CHECK(z2.name(a) == "[2,-1]");
    CHECK(z2.ball(1).size() == 9);

    // (g h) h^{-1} = g on a sample
    for (const auto& g : z2.ball(2))
        for (const auto& h : z2.ball(1))
            CHECK(z2.mul(z2.mul(g, h), z2.inv(h)) == g);
}

TEST_CASE("adding machine action and cocycle") {
    auto sys = am2();
    const auto& graph = sys->graph();
    const auto& group = sys->group();
    GroupElement t = *group.find("t");

    auto path = [&](const char* text) {
        std::vector<EdgeId> word;
        for (const char* c = text; *c; ++c) word.push_back(*c == 'a' ? 0 : 1);
        return graph.path_from_word(word);
    };

    CHECK(sys->act_path(t, path("aa")) == path("ba"));
    CHECK(sys->act_path(t, path("ba")) == path("ab"));
    CHECK(sys->act_path(group.identity(), path("ab")) == path("ab"));
    CHECK(sys->cocycle_path(t, path("ab")) == group.identity());
    CHECK(sys->cocycle_path(t, path("bb")) == t);
    CHECK(sys->cocycle_path(t, graph.vertex_path(0)) == t);

    // negative powers act through the derived inverse tables
    GroupElement mt = group.inv(t);
    CHECK(sys->act_path(mt, path("b")) == path("a"));
    CHECK(sys->cocycle_path(mt, path("a")) == mt);
    CHECK(sys->cocycle_path(mt, path("b")) == group.identity());

    // words in a digit: t^2 fixes the first letter and carries one
    CHECK(sys->act_path(group.pow(t, 2), path("aa")) == path("ab"));
    CHECK(sys->act_path(group.pow(t, 4), path("ab")) == path("ab"));
    CHECK(sys->cocycle_path(group.pow(t, 2), path("a")) == t);
}

TEST_CASE("action law property tests on validated systems") {
    for (auto sys : {am2(), two_vertex_z2(), sv2graph_z2()}) {
        const auto& graph = sys->graph();
        const auto& group = sys->group();
        Rng rng(23);
        Degree bound = Degree::ones(graph.k()).plus(Degree::ones(graph.k()));
        for (int trial = 0; trial < 120; ++trial) {
            GroupElement g = random_group_element(*sys, rng);
            GroupElement h = random_group_element(*sys, rng);
            Path p = random_path(*sys, rng, bound);

            CHECK(sys->act_path(group.mul(g, h), p) == sys->act_path(g, sys->act_path(h, p)));
            CHECK(sys->cocycle_path(group.mul(g, h), p) ==
                  group.mul(sys->cocycle_path(g, sys->act_path(h, p)),
                            sys->cocycle_path(h, p)));
            CHECK(sys->act_path(g, p).degree == p.degree);
            CHECK(sys->act_path(g, p).source == sys->act_vertex(g, p.source));

            // self-similar equation on a random composable extension
            Path q = random_path(*sys, rng, bound);
            if (q.range == p.source) {
                Path pq = graph.compose(p, q);
                CHECK(sys->act_path(g, pq) ==
                      graph.compose(sys->act_path(g, p),
                                    sys->act_path(sys->cocycle_path(g, p), q)));
                CHECK(sys->cocycle_path(g, pq) ==
                      sys->cocycle_path(sys->cocycle_path(g, p), q));
            }
        }
    }
}

TEST_CASE("validate_action flags inconsistent tables") {
    // AM2 with phi(t,b) mis-set to 0 while the explicit inverse table keeps
    // the original values: inverse consistency breaks
    KGraphData data;
    data.k = 1;
    data.vertices = {"v"};
    data.edges = {{"a", 1, "v", "v"}, {"b", 1, "v", "v"}};
    Group group = Group::free_abelian(1);
    GroupElement t{-1, {1}}, mt{-1, {-1}}, zero{-1, {0}};

    GeneratorTables tab_t{t, {0}, {1, 0}, {zero, zero}};           // phi(t,b) corrupted
    GeneratorTables tab_mt{mt, {0}, {1, 0}, {mt, zero}};           // honest inverse of AM2
    auto report = SelfSimilarSystem::validate(KGraph(data), group, {tab_t, tab_mt});
    CHECK(!report.ok());
    bool inverse_issue = false;
    for (const auto& issue : report.issues())
        if (issue.rule == "inverse-consistency") inverse_issue = true;
    CHECK(inverse_issue);

    // color-changing edge action
    KGraphData d2;
    d2.k = 2;
    d2.vertices = {"v"};
    d2.edges = {{"a", 1, "v", "v"}, {"f", 2, "v", "v"}};
    d2.squares = {{"a", "f", "f", "a"}};
    GeneratorTables swap_colors{zero, {0}, {1, 0}, {zero, zero}};
    auto r2 = SelfSimilarSystem::validate(KGraph(d2), group, {swap_colors});
    CHECK(!r2.ok());
}

TEST_CASE("trivial group on any graph validates") {
    auto sys = rose2();
    CHECK(SelfSimilarSystem::validate(sys->graph(), sys->group(), {}).ok());
}

TEST_CASE("pseudo-freeness decisions") {
    // trivial group: vacuous
    CHECK(rose2()->pseudo_free().status == PseudoFreeStatus::PseudoFree);

    // adding machine over Z: certified via the stabilizer lattice
    auto am = am2();
    CHECK(am->pseudo_free().status == PseudoFreeStatus::PseudoFree);
    auto res = am->check_pseudo_free(10000);
    CHECK(res.status == PseudoFreeStatus::PseudoFree);
    CHECK(res.states_explored <= 10000);

    // a tiny budget is an honest Unknown
    CHECK(am->check_pseudo_free(0).status == PseudoFreeStatus::Unknown);

    // Z/2 swapping the petals with trivial restriction: nothing is fixed
    {
        KGraphData data;
        data.k = 1;
        data.vertices = {"v"};
        data.edges = {{"a", 1, "v", "v"}, {"b", 1, "v", "v"}};
        Group group = z2_group();
        GroupElement g = *group.find("g"), e = group.identity();
        GeneratorTables swap{g, {0}, {1, 0}, {e, e}};
        auto sys = SelfSimilarSystem::build(KGraph(data), group, {swap});
        CHECK(sys->pseudo_free().status == PseudoFreeStatus::PseudoFree);
    }

    // Z/2 acting trivially with trivial cocycle: a valid system that fails
    // pseudo-freeness with witness (g, a)
    {
        KGraphData data;
        data.k = 1;
        data.vertices = {"v"};
        data.edges = {{"a", 1, "v", "v"}, {"b", 1, "v", "v"}};
        Group group = z2_group();
        GroupElement g = *group.find("g"), e = group.identity();
        GeneratorTables triv{g, {0}, {0, 1}, {e, e}};
        auto sys = SelfSimilarSystem::build(KGraph(data), group, {triv});
        auto r = sys->pseudo_free();
        CHECK(r.status == PseudoFreeStatus::NotPseudoFree);
        CHECK(*r.witness_g == g);
        CHECK(r.witness_path->word.size() == 1);
    }
}

TEST_CASE("non-pseudo-free over Z via the lattice kernel") {
    // Z acting trivially with zero cocycle fails with witness t
    KGraphData data;
    data.k = 1;
    data.vertices = {"v"};
    data.edges = {{"a", 1, "v", "v"}};
    Group group = Group::free_abelian(1);
    GroupElement t{-1, {1}}, zero{-1, {0}};
    GeneratorTables triv{t, {0}, {0}, {zero}};
    auto sys = SelfSimilarSystem::build(KGraph(data), group, {triv});
    auto res = sys->pseudo_free();
    REQUIRE(res.status == PseudoFreeStatus::NotPseudoFree);
    REQUIRE(res.witness_g.has_value());
    CHECK(!sys->group().is_identity(*res.witness_g));
    CHECK(sys->act_path(*res.witness_g, *res.witness_path) == *res.witness_path);
    CHECK(sys->group().is_identity(sys->cocycle_path(*res.witness_g, *res.witness_path)));
}

TEST_CASE("pseudo-free consequence: distinct elements differ on some path data") {
    auto sys = am2();
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        GroupElement g = random_group_element(*sys, rng, 3);
        GroupElement h = random_group_element(*sys, rng, 3);
        if (g == h) continue;
        Path mu = random_path(*sys, rng, deg({3}));
        bool same_action = sys->act_path(g, mu) == sys->act_path(h, mu);
        bool same_cocycle = sys->cocycle_path(g, mu) == sys->cocycle_path(h, mu);
        CHECK(!(same_action && same_cocycle));
    }
}
