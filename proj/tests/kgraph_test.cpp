#include <doctest.h>

#include "test_util.hpp"

using namespace epka;
using namespace epka::testutil;

TEST_CASE("degree arithmetic") {
    Degree m({2, 1}), n({1, 3});
    CHECK(m.join(n) == Degree({2, 3}));
    CHECK(m.meet(n) == Degree({1, 1}));
    CHECK(m.plus(n) == Degree({3, 4}));
    CHECK(!m.leq(n));
    CHECK(m.meet(n).leq(m));
    CHECK_THROWS_AS(m.minus(n), Error);
    CHECK(m.minus(Degree({1, 1})) == Degree({1, 0}));
    CHECK(Degree::box(Degree({1, 1})).size() == 4);
    CHECK_THROWS_AS(Degree({-1, 0}), Error);
}

TEST_CASE("compose respects vertex identities and color order") {
    auto sys = sv11();
    const auto& graph = sys->graph();
    Path a = graph.edge_path(*graph.find_edge("a"));
    Path f = graph.edge_path(*graph.find_edge("f"));
    Path v = graph.vertex_path(0);

    CHECK(graph.compose(v, a) == a);
    CHECK(graph.compose(a, v) == a);

    // f then a resorts to canonical color order via the square af = fa
    Path fa = graph.compose(f, a);
    CHECK(fa.word.size() == 2);
    CHECK(graph.edge(fa.word[0]).color == 0);
    CHECK(fa == graph.compose(a, f));
    CHECK(fa.degree == Degree({1, 1}));

    auto rose_sys = rose2();
    const auto& rg = rose_sys->graph();
    Path ab = rg.compose(rg.edge_path(0), rg.edge_path(1));
    CHECK(ab.word == std::vector<EdgeId>{0, 1});

    auto two = two_vertex_z2();
    const auto& tg = two->graph();
    Path loop_v = tg.edge_path(*tg.find_edge("l"));
    Path petal = tg.edge_path(*tg.find_edge("a"));
    CHECK_THROWS_AS(tg.compose(loop_v, petal), Error);
}

TEST_CASE("factorize inverts compose and matches the examples") {
    auto sys = sv11();
    const auto& graph = sys->graph();
    Path a = graph.edge_path(*graph.find_edge("a"));
    Path f = graph.edge_path(*graph.find_edge("f"));
    Path af = graph.compose(a, f);

    auto [head, tail] = graph.factorize(af, Degree({0, 1}));
    CHECK(head == f);
    CHECK(tail == a);

    CHECK(graph.factorize(af, Degree::zero(2)).first == graph.vertex_path(0));
    CHECK(graph.factorize(af, Degree::zero(2)).second == af);
    CHECK(graph.factorize(af, af.degree).first == af);
    CHECK_THROWS_AS(graph.factorize(af, Degree({2, 0})), Error);
}

TEST_CASE("factorization round-trip and uniqueness against brute force") {
    for (auto sys : {rose2(), sv2graph()}) {
        const auto& graph = sys->graph();
        Degree bound = graph.k() == 1 ? deg({3}) : Degree({2, 1});
        for (const Degree& n : Degree::box(bound)) {
            for (VertexId v = 0; v < graph.vertex_count(); ++v) {
                for (const Path& p : graph.paths_from(v, n)) {
                    for (const Degree& m : Degree::box(n)) {
                        auto [alpha, beta] = graph.factorize(p, m);
                        CHECK(graph.compose(alpha, beta) == p);
                        CHECK(alpha.degree == m);
                        // uniqueness: exactly one (alpha, beta) composes to p
                        int found = 0;
                        for (const Path& ca : graph.paths_from(v, m))
                            for (const Path& cb : graph.paths_from(ca.source, n.minus(m)))
                                if (graph.compose(ca, cb) == p) {
                                    ++found;
                                    CHECK(ca == alpha);
                                    CHECK(cb == beta);
                                }
                        CHECK(found == 1);
                    }
                }
            }
        }
    }
}

TEST_CASE("segment is a double factorization") {
    auto sys = sv2graph();
    const auto& graph = sys->graph();
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        Path p = random_path(*sys, rng, Degree({2, 2}));
        Degree n = random_degree(rng, p.degree);
        Degree m = random_degree(rng, n);
        Path mid = graph.segment(p, m, n);
        CHECK(mid.degree == n.minus(m));
        CHECK(graph.segment(p, Degree::zero(2), p.degree) == p);
    }
}

TEST_CASE("paths_from counts") {
    auto sys = rose2();
    const auto& graph = sys->graph();
    CHECK(graph.paths_from(0, deg({0})).size() == 1);
    CHECK(graph.paths_from(0, deg({2})).size() == 4);
    CHECK(graph.paths_from(0, deg({3})).size() == 8);

    auto sys2 = sv11();
    CHECK(sys2->graph().paths_from(0, Degree({1, 1})).size() == 1);

    CHECK_THROWS_AS(graph.paths_from(5, deg({1})), Error);
}

TEST_CASE("minimal common extensions") {
    auto sys = rose2();
    const auto& graph = sys->graph();
    Path a = graph.edge_path(0), b = graph.edge_path(1);
    Path ab = graph.compose(a, b);

    // identical paths extend by their common source
    auto same = graph.min_common_extensions(a, a);
    REQUIRE(same.size() == 1);
    CHECK(same[0].first == graph.vertex_path(0));

    // prefix case
    auto pre = graph.min_common_extensions(a, ab);
    REQUIRE(pre.size() == 1);
    CHECK(pre[0].first == b);
    CHECK(pre[0].second == graph.vertex_path(0));

    // distinct same-degree paths never meet
    CHECK(graph.min_common_extensions(a, b).empty());

    // k=2: a and f meet in the unique square completion
    auto sys2 = sv11();
    const auto& g2 = sys2->graph();
    auto meet = g2.min_common_extensions(g2.edge_path(0), g2.edge_path(1));
    REQUIRE(meet.size() == 1);
    CHECK(g2.compose(g2.edge_path(0), meet[0].first).degree == Degree({1, 1}));

    // symmetry
    auto sys3 = sv2graph();
    const auto& g3 = sys3->graph();
    Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        Path mu = random_path(*sys3, rng, Degree({2, 1}));
        Path nu = random_path(*sys3, rng, Degree({2, 1}));
        auto fwd = g3.min_common_extensions(mu, nu);
        auto bwd = g3.min_common_extensions(nu, mu);
        CHECK(fwd.size() == bwd.size());
        for (const auto& [alpha, beta] : fwd) {
            bool found = false;
            for (const auto& [beta2, alpha2] : bwd)
                if (alpha == alpha2 && beta == beta2) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("kgraph validation catches broken inputs") {
    // a vertex missing incoming edges of one color
    KGraphData data;
    data.k = 2;
    data.vertices = {"v"};
    data.edges = {{"a", 1, "v", "v"}};
    KGraph graph(data);
    auto report = graph.validate();
    CHECK(!report.ok());
    bool found = false;
    for (const auto& issue : report.issues())
        if (issue.rule == "no-sources") found = true;
    CHECK(found);

    // square map missing for a composable pair
    KGraphData d2;
    d2.k = 2;
    d2.vertices = {"v"};
    d2.edges = {{"a", 1, "v", "v"}, {"f", 2, "v", "v"}};
    auto r2 = KGraph(d2).validate();
    bool missing = false;
    for (const auto& issue : r2.issues())
        if (issue.rule == "square-bijection") missing = true;
    CHECK(missing);

    // duplicate ids and unknown vertices are structural
    KGraphData d3;
    d3.k = 1;
    d3.vertices = {"v", "v"};
    CHECK_THROWS_AS((KGraph(d3)), Error);
}

namespace {

KGraphData three_color_data(bool coherent) {
    // two edges per color on one vertex; the 1-2 squares twist by the
    // color-2 index; twisting the 2-3 squares as well breaks the hexagon
    KGraphData data;
    data.k = 3;
    data.vertices = {"v"};
    for (auto base : {"a", "b", "c"}) {
        int color = base[0] - 'a' + 1;
        data.edges.push_back({std::string(base) + "0", color, "v", "v"});
        data.edges.push_back({std::string(base) + "1", color, "v", "v"});
    }
    auto nm = [](const char* base, int i) { return std::string(base) + std::to_string(i); };
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            // a_i b_j = b_j a_{i+j}
            data.squares.push_back({nm("a", i), nm("b", j), nm("b", j), nm("a", (i + j) % 2)});
            // b_i c_j = c_j b_i, twisted to c_j b_{i+j} in the broken variant
            data.squares.push_back({nm("b", i), nm("c", j), nm("c", j),
                                    coherent ? nm("b", i) : nm("b", (i + j) % 2)});
            // a_i c_j = c_j a_i
            data.squares.push_back({nm("a", i), nm("c", j), nm("c", j), nm("a", i)});
        }
    }
    return data;
}

}  // namespace

TEST_CASE("three-color coherence hexagon") {
    // the twisted family above satisfies the hexagon only when the 2-3
    // squares stay untwisted
    CHECK(KGraph(three_color_data(true)).validate().ok());
    auto report = KGraph(three_color_data(false)).validate();
    CHECK(!report.ok());
    bool coherence = false;
    for (const auto& issue : report.issues())
        if (issue.rule == "coherence") coherence = true;
    CHECK(coherence);
}

TEST_CASE("factorization on a coherent 3-graph") {
    KGraph graph(three_color_data(true));
    REQUIRE(graph.validate().ok());
    Degree bound({1, 1, 1});
    for (const Degree& n : Degree::box(bound)) {
        auto level = graph.paths_from(0, n);
        // counting: 2 edges per color, squares are bijections
        std::size_t expect = 1;
        for (int c = 0; c < 3; ++c)
            for (std::int64_t i = 0; i < n[c]; ++i) expect *= 2;
        CHECK(level.size() == expect);
        for (const Path& p : level) {
            for (const Degree& m : Degree::box(n)) {
                auto [alpha, beta] = graph.factorize(p, m);
                CHECK(alpha.degree == m);
                CHECK(graph.compose(alpha, beta) == p);
            }
        }
    }
    // compose resorts full-depth words deterministically
    auto deep = graph.paths_from(0, bound);
    for (const Path& p : deep)
        for (const Path& q : graph.paths_from(p.source, Degree({0, 1, 0})))
            CHECK(graph.factorize(graph.compose(p, q), bound).first == p);
}

TEST_CASE("counting on the free monoid rose") {
    auto sys = rose({"a", "b", "c"});
    const auto& graph = sys->graph();
    for (std::int64_t m = 0; m <= 4; ++m) {
        std::int64_t expect = 1;
        for (int i = 0; i < m; ++i) expect *= 3;
        CHECK(static_cast<std::int64_t>(graph.paths_from(0, deg({m})).size()) == expect);
    }
}
