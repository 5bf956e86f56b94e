#include <doctest.h>

#include "epka/ideals.hpp"
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

}  // namespace

TEST_CASE("hereditary and saturated predicates") {
    auto sys = two_vertex_z2();
    VertexId v = *sys->graph().find_vertex("v");
    VertexId w = *sys->graph().find_vertex("w");

    CHECK(is_hereditary(*sys, {}));
    CHECK(is_saturated(*sys, {}));
    CHECK(is_hereditary(*sys, {v, w}));
    CHECK(is_saturated(*sys, {v, w}));

    // {w} is invariant: the loop at v keeps saturation from firing
    CHECK(is_hereditary(*sys, {w}));
    CHECK(is_saturated(*sys, {w}));

    // {v} fails heredity: the edge x runs from w into v
    CHECK(!is_hereditary(*sys, {v}));

    CHECK_THROWS_AS(is_hereditary(*sys, {VertexId(9)}), Error);
}

TEST_CASE("saturation needs every incoming source inside") {
    // v -> w with w looped: {w} is hereditary; v saturates into it because
    // the only color-1 edges into v come from w
    KGraphData data;
    data.k = 1;
    data.vertices = {"v", "w"};
    data.edges = {{"x", 1, "w", "v"}, {"a", 1, "w", "w"}};
    auto sys = SelfSimilarSystem::build(KGraph(data), trivial_group(), {});
    VertexId v = 0, w = 1;
    CHECK(is_hereditary(*sys, {w}));
    CHECK(!is_saturated(*sys, {w}));
    CHECK(closure(*sys, {w}) == VertexSet{v, w});
    CHECK(closure(*sys, {v}) == VertexSet{v, w});  // heredity adds w

    auto subsets = enumerate_invariant_subsets(*sys);
    REQUIRE(subsets.size() == 2);
    CHECK(subsets[0].empty());
    CHECK(subsets[1] == VertexSet{v, w});
}

TEST_CASE("closure and enumeration on the two-vertex example") {
    auto sys = two_vertex_z2();
    VertexId v = *sys->graph().find_vertex("v");
    VertexId w = *sys->graph().find_vertex("w");

    CHECK(closure(*sys, {}).empty());
    CHECK(closure(*sys, {w}) == VertexSet{w});
    CHECK(closure(*sys, {v}) == VertexSet{v, w});

    auto subsets = enumerate_invariant_subsets(*sys);
    REQUIRE(subsets.size() == 3);
    CHECK(subsets[0].empty());
    CHECK(subsets[1] == VertexSet{w});
    CHECK(subsets[2] == VertexSet{v, w});

    for (const auto& H : subsets) {
        CHECK(is_hereditary(*sys, H));
        CHECK(is_saturated(*sys, H));
        CHECK(closure(*sys, H) == H);
    }

    // closures are monotone and idempotent on random seeds
    Rng rng(163);
    for (int trial = 0; trial < 20; ++trial) {
        VertexSet seed;
        if (pick(rng, 2)) seed.insert(v);
        if (pick(rng, 2)) seed.insert(w);
        auto c = closure(*sys, seed);
        CHECK(is_hereditary(*sys, c));
        CHECK(is_saturated(*sys, c));
        CHECK(closure(*sys, c) == c);
        for (VertexId x : seed) CHECK(c.count(x));
    }

    // a single vertex has exactly the two trivial invariant sets
    CHECK(enumerate_invariant_subsets(*am2()).size() == 2);
    CHECK(enumerate_invariant_subsets(*rose2()).size() == 2);
}

TEST_CASE("ideal membership") {
    auto sys = two_vertex_z2();
    VertexId w = *sys->graph().find_vertex("w");
    VertexSet H{w};

    CHECK(ideal_membership(gen_s<GaussianRing>(sys, p_(sys, "w")), H));
    CHECK(!ideal_membership(gen_s<GaussianRing>(sys, p_(sys, "v")), H));
    CHECK(ideal_membership(gen_s<GaussianRing>(sys, p_(sys, "a")), H));
    CHECK(ideal_membership(AlgebraElement<GaussianRing>(sys), H));  // zero
    CHECK(!ideal_membership(gen_s<GaussianRing>(sys, p_(sys, "v")), VertexSet{}));

    // the empty set only contains zero
    CHECK(ideal_membership(sub(gen_s<GaussianRing>(sys, p_(sys, "v")),
                               gen_s<GaussianRing>(sys, p_(sys, "v"))),
                           VertexSet{}));

    // non-invariant sets are rejected
    VertexId v = *sys->graph().find_vertex("v");
    CHECK_THROWS_AS(ideal_membership(gen_s<GaussianRing>(sys, p_(sys, "v")), VertexSet{v}),
                    Error);
}

TEST_CASE("membership is an ideal predicate") {
    auto sys = two_vertex_z2();
    VertexId w = *sys->graph().find_vertex("w");
    VertexSet H{w};
    Rng rng(167);

    for (int trial = 0; trial < 60; ++trial) {
        // members: spanning triples sourced in H
        AlgebraElement<GaussianRing> m(sys);
        for (int i = 0; i < 2; ++i) {
            Triple t = random_triple(*sys, rng, deg({2}));
            if (!H.count(t.mu.source)) continue;
            m.add_term(t, GaussianRing::from_parts(pick(rng, 5) - 2, pick(rng, 3) - 1).value());
        }
        REQUIRE(ideal_membership(m, H));
        auto x = random_element<GaussianRing>(sys, rng, deg({1}));
        CHECK(ideal_membership(mul(x, m), H));
        CHECK(ideal_membership(mul(m, x), H));
        CHECK(ideal_membership(add(m, m), H));
        CHECK(ideal_membership(adjoint(m), H));
        CHECK(ideal_membership(scalar_mul(GaussianRing::i(), m), H));
        CHECK(ideal_membership(expectation(m), H));
    }
}

TEST_CASE("quotient systems") {
    auto sys = two_vertex_z2();
    VertexId w = *sys->graph().find_vertex("w");

    // quotient by the empty set is the same shape
    auto q0 = quotient_system(sys, {});
    CHECK(q0.system->graph().vertex_count() == 2);
    CHECK(q0.system->graph().edge_count() == 4);

    // quotient by {w} keeps only the loop at v
    auto q = quotient_system(sys, {w});
    CHECK(q.system->graph().vertex_count() == 1);
    CHECK(q.system->graph().edge_count() == 1);
    CHECK(q.system->pseudo_free_certified());

    // quotient by everything is rejected
    CHECK_THROWS_AS(quotient_system(sys, {VertexId(0), w}), Error);

    // quotient map: s_w dies, the unit maps to the quotient unit
    auto image = quotient_map(gen_s<GaussianRing>(sys, p_(sys, "w")), q, {w});
    CHECK(image.empty());
    auto unit_image = quotient_map(unit_element<GaussianRing>(sys), q, {w});
    CHECK(equals(unit_image, unit_element<GaussianRing>(q.system)));

    // multiplicativity on samples
    Rng rng(173);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_element<GaussianRing>(sys, rng, deg({1}));
        auto b = random_element<GaussianRing>(sys, rng, deg({1}));
        CHECK(equals(quotient_map(mul(a, b), q, {w}),
                     mul(quotient_map(a, q, {w}), quotient_map(b, q, {w}))));
        CHECK(equals(quotient_map(add(a, b), q, {w}),
                     add(quotient_map(a, q, {w}), quotient_map(b, q, {w}))));
        // kernel = membership
        CHECK(ideal_membership(a, {w}) == quotient_map(a, q, {w}).empty());
    }
}

TEST_CASE("a three-vertex chain of invariant subsets") {
    auto sys = chain3();
    VertexId u = *sys->graph().find_vertex("u");
    VertexId v = *sys->graph().find_vertex("v");
    VertexId w = *sys->graph().find_vertex("w");

    auto subsets = enumerate_invariant_subsets(*sys);
    REQUIRE(subsets.size() == 4);
    CHECK(subsets[0].empty());
    CHECK(subsets[1] == VertexSet{u});
    CHECK(subsets[2] == VertexSet{u, w});
    CHECK(subsets[3] == VertexSet{u, v, w});

    CHECK(closure(*sys, {w}) == VertexSet{u, w});
    CHECK(closure(*sys, {v}) == VertexSet{u, v, w});

    // nested quotients stay consistent
    auto q = quotient_system(sys, {u, w});
    CHECK(q.system->graph().vertex_count() == 1);
    CHECK(q.system->graph().edge_count() == 1);

    CHECK(verify_ideal_correspondence<IntRing>(sys).ok());
}

TEST_CASE("lattice correspondence verification") {
    CHECK(verify_ideal_correspondence<GaussianRing>(two_vertex_z2()).ok());
    CHECK(verify_ideal_correspondence<GaussianRing>(rose2()).ok());
    CHECK(verify_ideal_correspondence<IntRing>(two_vertex_z2()).ok());
}
