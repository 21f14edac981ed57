#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tourglue/generators.hpp>
#include <tourglue/matchings.hpp>

using namespace tourglue;

TEST_CASE("K4H partition: one 1-edge per part") {
    Instance k4h = gen_k4half();
    CyclicPoint p = validate_cyclic(k4h.theta, k4h.g, k4h.x);
    MatchingPartition mp = partition_induced_matchings(p, 0);
    CHECK(mp.ev_part == 0);
    CHECK(mp.parts[0] == std::vector<int>{1});  // edge 02 = e_0
    CHECK(mp.parts[1] == std::vector<int>{4});  // edge 13
    for (int k = 2; k < 5; ++k) CHECK(mp.parts[k].empty());
    CHECK(verify_partition(p, 0, mp));
}

TEST_CASE("prism reduction of the lower-bound family") {
    for (auto eps : {rat(1, 4), rat(1, 6)}) {
        Instance lb = gen_lowerbound(eps);
        CubicReduction r = to_cubic(validate_cyclic(lb.theta, lb.g, lb.x));
        for (int v : {0, 3}) {
            MatchingPartition mp = partition_induced_matchings(r.reduced, v);
            std::string why;
            CHECK_MESSAGE(verify_partition(r.reduced, v, mp, &why), why);
        }
    }
}

TEST_CASE("block rings reject (critical cuts present)") {
    Instance br = gen_block_ring(4, rat(1, 3));
    CyclicPoint p = validate_cyclic(br.theta, br.g, br.x);
    CHECK_THROWS_AS(partition_induced_matchings(p, 0), std::invalid_argument);
}

TEST_CASE("contracted block-ring sides partition cleanly") {
    // contracting the complement of a minimal critical cut yields a base
    // case; the matching partition applies there
    for (int b : {2, 4})
        for (auto th : {rat(1, 2), rat(1, 3)}) {
            Instance br = gen_block_ring(b, th);
            CyclicPoint p = validate_cyclic(br.theta, br.g, br.x);
            auto mc = minimal_critical_cut(p);
            REQUIRE(mc.has_value());
            std::vector<char> keep(p.g.n, 0);
            for (int v : *mc) keep[v] = 1;
            CyclicSide side = cyclic_contract(p, keep);
            MatchingPartition mp = partition_induced_matchings(side.q, side.pseudo);
            std::string why;
            CHECK_MESSAGE(verify_partition(side.q, side.pseudo, mp, &why), why);
        }
}

TEST_CASE("random base cases partition for every vertex") {
    int done = 0;
    for (unsigned long seed = 1; seed <= 40 && done < 8; ++seed) {
        Instance r = gen_random_cyclic(12, rat(1, 3), seed);
        CyclicPoint p = validate_cyclic(r.theta, r.g, r.x);
        if (!p.is_cubic() || minimal_critical_cut(p).has_value()) continue;
        ++done;
        for (int v = 0; v < p.g.n; ++v) {
            MatchingPartition mp = partition_induced_matchings(p, v);
            std::string why;
            CHECK_MESSAGE(verify_partition(p, v, mp, &why), why);
        }
    }
    CHECK(done > 0);
}

TEST_CASE("verify_partition rejects bad partitions") {
    Instance k4h = gen_k4half();
    CyclicPoint p = validate_cyclic(k4h.theta, k4h.g, k4h.x);
    MatchingPartition mp = partition_induced_matchings(p, 0);

    MatchingPartition together = mp;  // both 1-edges in one part
    together.parts[0] = {1, 4};
    together.parts[1].clear();
    std::string why;
    CHECK_FALSE(verify_partition(p, 0, together, &why));

    MatchingPartition missing = mp;
    missing.parts[1].clear();
    CHECK_FALSE(verify_partition(p, 0, missing, &why));
    CHECK(why.find("left out") != std::string::npos);

    MatchingPartition fractional = mp;
    fractional.parts[2] = {0};  // a 1/2-edge
    CHECK_FALSE(verify_partition(p, 0, fractional, &why));
}

TEST_CASE("endpoint-sharing pair is not an induced matching") {
    // path a-b, b-c as 1-edges cannot happen (two 1-edges at b), so build the
    // sharing case across a fractional edge: two 1-edges joined by an H edge
    Instance br = gen_block_ring(2, rat(1, 2));
    CyclicPoint p = validate_cyclic(br.theta, br.g, br.x);
    // find two 1-edges connected by a fractional edge
    std::vector<int> vedge(p.g.n, -1);
    for (int e = 0; e < p.g.m(); ++e)
        if (p.in_W[e]) vedge[p.g.edges[e].first] = vedge[p.g.edges[e].second] = e;
    int e1 = -1, e2 = -1;
    for (int e = 0; e < p.g.m(); ++e) {
        if (p.in_W[e]) continue;
        auto [a, b] = p.g.edges[e];
        if (vedge[a] != vedge[b]) {
            e1 = vedge[a];
            e2 = vedge[b];
            break;
        }
    }
    REQUIRE(e1 != -1);
    MatchingPartition bad;
    bad.v = 0;
    bad.parts[0] = {std::min(e1, e2), std::max(e1, e2)};
    for (int e = 0; e < p.g.m(); ++e)
        if (p.in_W[e] && e != e1 && e != e2) bad.parts[1].push_back(e);
    bad.ev_part = 0;
    std::string why;
    CHECK_FALSE(verify_partition(p, 0, bad, &why));
    CHECK(why.find("induced") != std::string::npos);
}

TEST_CASE("2-edge cuts exercise condition (iii)") {
    // twin triangles joined by two 1-edges plus a ladder: build an instance
    // with a genuine 2-edge cut from the lower-bound prism
    Instance lb = gen_lowerbound(rat(1, 4));
    CyclicPoint full = validate_cyclic(lb.theta, lb.g, lb.x);
    // the unreduced point has 2-edge cuts across the 1-edge paths; the
    // reduced prism is 3-edge-connected, so exercise (iii) via a doubled
    // block construction instead: two prisms joined by a 2-cut
    CubicReduction r = to_cubic(full);
    const Multigraph& pr = r.reduced.g;
    Multigraph two(pr.n * 2);
    std::vector<Rat> x2;
    // copy each prism but drop one 1-edge in each, then reconnect the loose
    // endpoints across the copies with two new 1-edges
    int drop = -1;
    for (int e = 0; e < pr.m(); ++e)
        if (r.reduced.in_W[e]) drop = e;
    REQUIRE(drop != -1);
    std::array<int, 2> la{pr.edges[drop].first, pr.edges[drop].second};
    for (int copy = 0; copy < 2; ++copy)
        for (int e = 0; e < pr.m(); ++e) {
            if (e == drop) continue;
            two.add_edge(pr.edges[e].first + copy * pr.n, pr.edges[e].second + copy * pr.n);
            x2.push_back(r.reduced.x[e]);
        }
    two.add_edge(la[0], la[0] + pr.n);
    x2.push_back(Rat(1));
    two.add_edge(la[1], la[1] + pr.n);
    x2.push_back(Rat(1));
    CyclicPoint dp = validate_cyclic(rat(1, 2), two, x2);
    CHECK(dp.is_cubic());
    REQUIRE_FALSE(minimal_critical_cut(dp).has_value());
    MatchingPartition mp = partition_induced_matchings(dp, 0);
    std::string why;
    CHECK_MESSAGE(verify_partition(dp, 0, mp, &why), why);
    // the two bridge 1-edges form a 2-edge cut and must share a part
    int b1 = two.m() - 2, b2 = two.m() - 1;
    int p1 = -1, p2 = -1;
    for (int k = 0; k < 5; ++k) {
        if (std::find(mp.parts[k].begin(), mp.parts[k].end(), b1) != mp.parts[k].end()) p1 = k;
        if (std::find(mp.parts[k].begin(), mp.parts[k].end(), b2) != mp.parts[k].end()) p2 = k;
    }
    CHECK(p1 == p2);
}
