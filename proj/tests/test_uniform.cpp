#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tourglue/generators.hpp>
#include <tourglue/uniform.hpp>

using namespace tourglue;

static void check_value(const Multigraph& g, const ConvexCombination& c, const Rat& per_edge) {
    std::string why;
    CHECK_MESSAGE(
        verify_convex_combination(g, c, EdgeVector(g.m(), per_edge), VerifyMode::Equal, &why),
        why);
    for (auto& t : c.terms) {
        CHECK(is_tour(g, t.F));
        for (int m : t.F) CHECK(m <= 2);
    }
}

TEST_CASE("christofides reaches (3/2)x") {
    Instance k4h = gen_k4half();
    ConvexCombination c = christofides(k4h.g, k4h.x);
    EdgeVector v = combination_value(k4h.g, c);
    for (int e = 0; e < k4h.g.m(); ++e) CHECK(v[e] == rat(3, 2) * k4h.x[e]);
    for (auto& t : c.terms) CHECK(is_tour(k4h.g, t.F));

    // Hamilton-cycle point: value 3/2 on every cycle edge
    Multigraph cyc(6);
    for (int i = 0; i < 6; ++i) cyc.add_edge(i, (i + 1) % 6);
    ConvexCombination ch = christofides(cyc, EdgeVector(6, Rat(1)));
    check_value(cyc, ch, rat(3, 2));

    // random cyclic points are subtour points
    Instance r = gen_random_cyclic(12, rat(1, 3), 7);
    ConvexCombination cr = christofides(r.g, r.x);
    EdgeVector vr = combination_value(r.g, cr);
    for (int e = 0; e < r.g.m(); ++e) CHECK(vr[e] == rat(3, 2) * r.x[e]);
}

TEST_CASE("christofides rejects non-members") {
    Instance k4 = gen_k4graph();
    CHECK_THROWS_AS(christofides(k4.g, EdgeVector(6, rat(1, 2))), std::invalid_argument);
    EdgeVector neg(6, rat(2, 3));
    neg[0] = rat(-1, 3);
    CHECK_THROWS_AS(christofides(k4.g, neg), std::invalid_argument);
}

TEST_CASE("covering 2-factor meets every small cut") {
    auto exercise = [](const Multigraph& g) {
        Mult C = covering_two_factor(g);
        CHECK(is_two_factor(g, C));
        for (auto& side : enumerate_cuts_upto(g, 4)) {
            std::vector<char> in(g.n, 0);
            for (int v : side) in[v] = 1;
            auto ce = cut_edges(g, in);
            if (ce.size() > 4) continue;
            int hit = 0;
            for (int e : ce) hit += C[e];
            CHECK(hit > 0);
        }
        return C;
    };
    Instance k4 = gen_k4graph();
    Mult C = exercise(k4.g);
    CHECK(is_spanning_connected(k4.g, C));  // on K4 the complement of a matching
    exercise(gen_petersen().g);
    CHECK_THROWS_AS(covering_two_factor(gen_octahedron().g), std::invalid_argument);
}

TEST_CASE("degree splitting gadget") {
    Instance k4 = gen_k4graph();
    SplitResult id = split_high_degree(k4.g, 3);
    CHECK(id.g.n == 4);
    CHECK(id.g.m() == 6);
    for (int e = 0; e < 6; ++e) CHECK(id.emap[e] == e);

    // two vertices joined by six parallel edges, threshold 5
    Multigraph par(2);
    for (int i = 0; i < 6; ++i) par.add_edge(0, 1);
    SplitResult sp = split_high_degree(par, 5);
    CHECK(sp.g.n == 12);
    for (int d : degrees(sp.g, Mult(sp.g.m(), 1))) CHECK(d == 5);
    // a tour of the split graph: one copy per doubled gadget pair (the two
    // plain cycles) plus a doubled external edge joining the gadgets
    Mult F(sp.g.m(), 0);
    for (int e = 0; e < sp.g.m(); ++e)
        if (sp.emap[e] == -1) {
            F[e] = 1;
            ++e;  // skip the twin copy
        }
    F[0] = 2;
    REQUIRE(is_tour(sp.g, F));
    Mult back = collapse_split(sp, F);
    CHECK(back == Mult{2, 0, 0, 0, 0, 0});
    CHECK(is_tour(par, back));

    CHECK_THROWS_AS(split_high_degree(k4.g, 4), std::invalid_argument);
}

TEST_CASE("two-factor reduction to half-cyclic points") {
    Instance k4 = gen_k4graph();
    auto pts = reduce_uniform23(k4.g);
    Rat total = 0;
    EdgeVector recomb(k4.g.m(), Rat(0));
    for (auto& [w, p] : pts) {
        CHECK(p.theta == rat(1, 2));
        total += w;
        // the per-point target from the cyclic construction: 29/20 on the
        // matching, 3/4 on the 2-factor
        for (int e = 0; e < k4.g.m(); ++e)
            recomb[e] += w * (p.in_W[e] ? rat(29, 20) : rat(3, 4));
    }
    CHECK(total == 1);
    for (int e = 0; e < k4.g.m(); ++e) CHECK(recomb[e] == rat(59, 60));
}

TEST_CASE("reduction arithmetic") {
    // mixing 1-edges at 3/2 - eps and fractional edges at 3/4 - delta over a
    // 2-factor decomposition lands at (3/2 - eps/2 - delta) * 2/3 per edge
    for (auto [eps, del] : {std::pair{rat(1, 20), Rat(0)}, {rat(1, 7), rat(1, 9)}})
        CHECK(rat(1, 3) * (rat(3, 2) - eps) + rat(2, 3) * (rat(3, 4) - del) ==
              (rat(3, 2) - eps / 2 - del) * rat(2, 3));
    // the covering-2-factor route beats the plain reduction factor
    CHECK(rat(17, 12) < rat(3, 2) - rat(1, 40));
}

TEST_CASE("2/3-uniform tours on K4") {
    Instance k4 = gen_k4graph();
    ConvexCombination c = solve_uniform23(k4.g);
    check_value(k4.g, c, rat(17, 18));
}

TEST_CASE("2/3-uniform tours on K4 with a Hamilton hint") {
    Instance k4 = gen_k4graph();
    // edges of K4 in id order: 01 02 03 12 13 23; the cycle 0-1-2-3
    Mult H{1, 0, 1, 1, 0, 1};
    ConvexCombination c = solve_uniform23(k4.g, H);
    check_value(k4.g, c, rat(29, 34));
    CHECK_THROWS_AS(solve_uniform23(k4.g, Mult{1, 1, 1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("2/3-uniform tours on the Petersen graph") {
    Instance pet = gen_petersen();
    ConvexCombination c = solve_uniform23(pet.g);
    check_value(pet.g, c, rat(17, 18));
}

TEST_CASE("2/4-uniform base case on the octahedron") {
    Instance oct = gen_octahedron();
    Uniform24Result r = solve_uniform24_base(oct.g);
    check_value(oct.g, r.comb, rat(31, 42));
    for (int e = 0; e < oct.g.m(); ++e) {
        CHECK(r.pr_join_given_matched[e] == rat(19, 42));
        CHECK(r.pr_join[e] == rat(5, 21));
    }
}

TEST_CASE("2/4-uniform base case preconditions") {
    CHECK_THROWS_WITH_AS(solve_uniform24_base(gen_k4graph().g), "the host must be 4-regular",
                         std::invalid_argument);
    Multigraph k5(5);
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) k5.add_edge(u, v);
    CHECK_THROWS_WITH_AS(solve_uniform24_base(k5),
                         "the host needs an even number of vertices", std::invalid_argument);
    Multigraph dc6(6);  // doubled 6-cycle: 4-regular with proper 4-edge cuts
    for (int i = 0; i < 6; ++i)
        for (int c = 0; c < 2; ++c) dc6.add_edge(i, (i + 1) % 6);
    CHECK_THROWS_WITH_AS(solve_uniform24_base(dc6), "the host has a proper 4-edge cut",
                         std::invalid_argument);
}
