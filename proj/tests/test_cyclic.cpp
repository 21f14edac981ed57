#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tourglue/cyclic.hpp>
#include <tourglue/generators.hpp>

using namespace tourglue;

static void expect_reject(const Rat& theta, const Multigraph& g, const EdgeVector& x,
                          CyclicReject clause) {
    try {
        validate_cyclic(theta, g, x);
        FAIL("expected rejection");
    } catch (const CyclicError& e) {
        CHECK(e.clause == clause);
    }
}

TEST_CASE("validation rejections, clause by clause") {
    Instance k4h = gen_k4half();
    expect_reject(rat(2, 3), k4h.g, k4h.x, CyclicReject::ThetaRange);
    expect_reject(Rat(0), k4h.g, k4h.x, CyclicReject::ThetaRange);

    EdgeVector bad = k4h.x;
    bad[0] = rat(1, 3);
    expect_reject(rat(1, 2), k4h.g, bad, CyclicReject::ValueSet);

    // an extra support edge pushes a degree above 3
    Multigraph g5 = k4h.g;
    g5.add_edge(0, 1);
    EdgeVector x5 = k4h.x;
    x5.push_back(rat(1, 2));
    expect_reject(rat(1, 2), g5, x5, CyclicReject::Subcubic);

    // a plain 4-cycle at 1/2 has no 1-edge anywhere
    Multigraph c4(4);
    for (int i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4);
    expect_reject(rat(1, 2), c4, EdgeVector(4, rat(1, 2)), CyclicReject::OneEdgeIncidence);

    // 1-edges only: degree sum 2 at the ends, but a path vertex sums to 2
    // while the endpoints sum to 1
    Multigraph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    expect_reject(rat(1, 2), p3, EdgeVector(2, Rat(1)), CyclicReject::DegreeEquality);

    // two disjoint doubled edges: degrees fine, min cut 0
    Multigraph d(4);
    d.add_edge(0, 1);
    d.add_edge(0, 1);
    d.add_edge(2, 3);
    d.add_edge(2, 3);
    EdgeVector dx{Rat(1), Rat(1), Rat(1), Rat(1)};
    expect_reject(rat(1, 2), d, dx, CyclicReject::MinCut);

    // odd fractional cycles only exist at theta = 1/2 (degree equality forces
    // the values around a cycle to alternate theta / 1-theta), where the
    // parity clause does not apply: the prism with fractional triangles and
    // 1-edge rungs validates
    Multigraph prism(6);
    prism.add_edge(0, 1);
    prism.add_edge(1, 2);
    prism.add_edge(0, 2);
    prism.add_edge(3, 4);
    prism.add_edge(4, 5);
    prism.add_edge(3, 5);
    prism.add_edge(0, 3);
    prism.add_edge(1, 4);
    prism.add_edge(2, 5);
    EdgeVector px(9, rat(1, 2));
    px[6] = px[7] = px[8] = Rat(1);
    CHECK(validate_cyclic(rat(1, 2), prism, px).is_cubic());
}

TEST_CASE("zero edges drop out of the support") {
    Instance k4h = gen_k4half();
    Multigraph g = k4h.g;
    g.add_edge(0, 1);  // an extra edge carrying 0
    EdgeVector x = k4h.x;
    x.push_back(Rat(0));
    CyclicPoint p = validate_cyclic(rat(1, 2), g, x);
    CHECK(p.g.m() == 6);
    CHECK(p.to_host == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("efg_at labels the vertex triple") {
    Instance br = gen_block_ring(2, rat(1, 3));
    CyclicPoint p = validate_cyclic(br.theta, br.g, br.x);
    auto inc = p.g.incidence();
    for (int v = 0; v < p.g.n; ++v) {
        auto [e, f, g] = p.efg_at(v, inc);
        CHECK(p.in_W[e]);
        CHECK(p.x[f] == rat(1, 3));
        CHECK(p.x[g] == rat(2, 3));
    }
    // theta = 1/2: tie broken toward the lower edge index
    Instance k4h = gen_k4half();
    CyclicPoint q = validate_cyclic(k4h.theta, k4h.g, k4h.x);
    auto qinc = q.g.incidence();
    for (int v = 0; v < q.g.n; ++v) {
        auto [e, f, g] = q.efg_at(v, qinc);
        CHECK(q.in_W[e]);
        CHECK(f < g);
    }
}

TEST_CASE("to_cubic contracts 1-edge paths; expand_tour inverts") {
    Instance lb = gen_lowerbound(rat(1, 4));
    CyclicPoint p = validate_cyclic(lb.theta, lb.g, lb.x);
    CHECK_FALSE(p.is_cubic());
    CubicReduction r = to_cubic(p);
    CHECK(r.reduced.g.n == 6);
    CHECK(r.reduced.g.m() == 9);  // prism: two triangles plus three rungs
    int wcount = 0;
    for (int e = 0; e < r.reduced.g.m(); ++e)
        if (r.reduced.in_W[e]) {
            ++wcount;
            CHECK(r.path[e].size() == 4);
        } else {
            CHECK(r.path[e].size() == 1);
        }
    CHECK(wcount == 3);

    // a tour of the prism containing all rungs: double one rung, and in each
    // triangle take the two edges at that rung's endpoint
    Mult F(r.reduced.g.m(), 0);
    int estar = -1;
    for (int e = 0; e < r.reduced.g.m(); ++e)
        if (r.reduced.in_W[e]) F[e] = 1, estar = estar == -1 ? e : estar;
    F[estar] = 2;
    auto [sa, sb] = r.reduced.g.edges[estar];
    for (int e = 0; e < r.reduced.g.m(); ++e) {
        if (r.reduced.in_W[e]) continue;
        auto [a, b] = r.reduced.g.edges[e];
        if (a == sa || b == sa || a == sb || b == sb) F[e] = 1;
    }
    REQUIRE(is_tour(r.reduced.g, F));
    Mult big = expand_tour(p, r, F);
    CHECK(is_tour(p.g, big));
    // every 1-edge of the original appears
    for (int e = 0; e < p.g.m(); ++e)
        if (p.in_W[e]) CHECK(big[e] >= 1);

    // missing 1-edge is refused
    Mult miss = F;
    for (int e = 0; e < r.reduced.g.m(); ++e)
        if (r.reduced.in_W[e]) miss[e] = 0;
    CHECK_THROWS_AS(expand_tour(p, r, miss), std::invalid_argument);

    // a point without fractional edges cannot be reduced
    Multigraph two(2);
    two.add_edge(0, 1);
    two.add_edge(0, 1);
    CyclicPoint ham = validate_cyclic(rat(1, 2), two, EdgeVector{Rat(1), Rat(1)});
    CHECK(ham.h_empty());
    CHECK_THROWS_AS(to_cubic(ham), std::invalid_argument);
}

TEST_CASE("cut taxonomy on small instances") {
    Instance k4h = gen_k4half();
    CyclicPoint p = validate_cyclic(k4h.theta, k4h.g, k4h.x);
    auto cuts = classify_cuts(p);
    int vertex = 0;
    for (auto& cc : cuts) {
        if (cc.kind == CutKind::Vertex) ++vertex;
        CHECK(cc.kind != CutKind::Critical);
        CHECK(cc.kind != CutKind::Degenerate);
    }
    CHECK(vertex == 4);
    CHECK_FALSE(minimal_critical_cut(p).has_value());

    // the lower-bound family reduces to the prism, whose tight 3-cuts all
    // have fractional edges meeting at a triangle corner: no critical cuts
    for (auto eps : {rat(1, 4), rat(1, 6)}) {
        Instance lb = gen_lowerbound(eps);
        CubicReduction r = to_cubic(validate_cyclic(lb.theta, lb.g, lb.x));
        CHECK_FALSE(minimal_critical_cut(r.reduced).has_value());
    }
}

TEST_CASE("block rings have critical cuts") {
    for (int b : {2, 4})
        for (auto th : {rat(1, 2), rat(1, 3)}) {
            Instance br = gen_block_ring(b, th);
            CyclicPoint p = validate_cyclic(br.theta, br.g, br.x);
            auto cuts = classify_cuts(p);
            int crit = 0;
            for (auto& cc : cuts) crit += cc.kind == CutKind::Critical ? 1 : 0;
            // for b = 2 the two block cuts are complements, counted once
            CHECK(crit >= (b == 2 ? 1 : b));
            auto mc = minimal_critical_cut(p);
            REQUIRE(mc.has_value());
            CHECK(mc->size() == 3);  // one block
            // contracted side has no critical cuts (also asserted internally)
            std::vector<char> keep(p.g.n, 0);
            for (int v : *mc) keep[v] = 1;
            CyclicSide side = cyclic_contract(p, keep);
            CHECK(side.q.g.n == 4);
            for (auto& cc : classify_cuts(side.q)) CHECK(cc.kind != CutKind::Critical);
        }
}

TEST_CASE("cyclic_contract keeps values and revalidates") {
    Instance br = gen_block_ring(4, rat(1, 3));
    CyclicPoint p = validate_cyclic(br.theta, br.g, br.x);
    auto mc = minimal_critical_cut(p);
    REQUIRE(mc.has_value());
    // complement side: contract the block, keep the rest
    std::vector<char> keep(p.g.n, 1);
    for (int v : *mc) keep[v] = 0;
    CyclicSide side = cyclic_contract(p, keep);
    CHECK(side.q.g.n == p.g.n - (int)mc->size() + 1);
    for (int e = 0; e < side.q.g.m(); ++e)
        CHECK(side.q.x[e] == p.x[side.edge_map[e]]);
    // pseudovertex is cubic with exactly one 1-edge
    auto inc = side.q.g.incidence();
    CHECK(inc[side.pseudo].size() == 3);
    auto [e, f, g] = side.q.efg_at(side.pseudo, inc);
    CHECK(side.q.in_W[e]);
}
