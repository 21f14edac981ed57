#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tourglue/connectors.hpp>
#include <tourglue/generators.hpp>
#include <tourglue/matchings.hpp>

using namespace tourglue;

TEST_CASE("K4H, M = {e_v}, Lambda = 0") {
    Instance k4h = gen_k4half();
    CyclicPoint p = validate_cyclic(k4h.theta, k4h.g, k4h.x);
    PropertyPSpec spec{0, {1}, Rat(0)};  // M = {02}
    ConvexCombination c = connectors_with_P(p, spec);
    CHECK(verify_property_P(c, p, spec));
    auto deg0 = degrees(p.g, c.terms[0].F);
    for (auto& t : c.terms) {
        auto deg = degrees(p.g, t.F);
        CHECK(deg[0] == 2);
        CHECK(deg[2] == 2);  // other endpoint of 02
    }
}

TEST_CASE("K4H, M = {13} pins both neighbours of 0: only Lambda = 0 works") {
    Instance k4h = gen_k4half();
    CyclicPoint p = validate_cyclic(k4h.theta, k4h.g, k4h.x);
    CHECK_THROWS_AS(connectors_with_P(p, {0, {4}, rat(1, 4)}), std::invalid_argument);
    PropertyPSpec zero{0, {4}, Rat(0)};
    ConvexCombination cz = connectors_with_P(p, zero);
    CHECK(verify_property_P(cz, p, zero));
}

TEST_CASE("K4H, empty matching, Lambda = 1/4") {
    Instance k4h = gen_k4half();
    CyclicPoint p = validate_cyclic(k4h.theta, k4h.g, k4h.x);
    PropertyPSpec spec{0, {}, rat(1, 4)};
    ConvexCombination c = connectors_with_P(p, spec);
    std::string why;
    CHECK_MESSAGE(verify_property_P(c, p, spec, &why), why);
    Rat mass1 = 0, mass3 = 0;
    for (auto& t : c.terms) {
        int d = degrees(p.g, t.F)[0];
        if (d == 1) mass1 += t.lambda;
        if (d == 3) mass3 += t.lambda;
    }
    CHECK(mass1 == rat(1, 4));
    CHECK(mass3 == rat(1, 4));
}

TEST_CASE("Lambda = 0 keeps degree 2 at v always") {
    Instance k4h = gen_k4half();
    CyclicPoint p = validate_cyclic(k4h.theta, k4h.g, k4h.x);
    PropertyPSpec spec{1, {1}, Rat(0)};  // e_v = 13 not in M = {02}: allowed, Lambda 0
    ConvexCombination c = connectors_with_P(p, spec);
    for (auto& t : c.terms) CHECK(degrees(p.g, t.F)[1] == 2);
}

TEST_CASE("input validation") {
    Instance k4h = gen_k4half();
    CyclicPoint p = validate_cyclic(k4h.theta, k4h.g, k4h.x);
    CHECK_THROWS_AS(connectors_with_P(p, {0, {1}, rat(1, 4)}), std::invalid_argument);
    CHECK_THROWS_AS(connectors_with_P(p, {0, {4}, rat(2, 3)}), std::invalid_argument);
    CHECK_THROWS_AS(connectors_with_P(p, {0, {0}, Rat(0)}), std::invalid_argument);
}

TEST_CASE("verify_property_P rejects corrupted combinations") {
    Instance k4h = gen_k4half();
    CyclicPoint p = validate_cyclic(k4h.theta, k4h.g, k4h.x);
    PropertyPSpec spec{0, {}, rat(1, 4)};
    ConvexCombination c = connectors_with_P(p, spec);
    std::string why;

    ConvexCombination doubled = c;
    doubled.terms[0].F[1] = 2;
    CHECK_FALSE(verify_property_P(doubled, p, spec, &why));

    ConvexCombination wrongL = c;
    PropertyPSpec other = spec;
    other.Lambda = rat(1, 8);
    CHECK_FALSE(verify_property_P(wrongL, p, other, &why));
    CHECK(why.find("Lambda") != std::string::npos);
}

TEST_CASE("property P across matchings of base cases") {
    auto exercise = [](const CyclicPoint& p, int v) {
        MatchingPartition mp = partition_induced_matchings(p, v);
        Rat alpha = rat(1, 5);
        Rat lam = (1 - alpha) * p.theta / 2;  // a legal Lambda/(1-alpha) source
        auto inc = p.g.incidence();
        auto [ev, fv, gv] = p.efg_at(v, inc);
        int ew1 = p.w_edge_at(p.g.other_end(fv, v), inc);
        int ew2 = p.w_edge_at(p.g.other_end(gv, v), inc);
        {
            PropertyPSpec s{v, mp.parts[0], Rat(0)};
            ConvexCombination c = connectors_with_P(p, s);
            std::string why;
            CHECK_MESSAGE(verify_property_P(c, p, s, &why), why);
        }
        for (int i = 1; i < 5; ++i) {
            auto has = [&](int e) {
                return std::find(mp.parts[i].begin(), mp.parts[i].end(), e) !=
                       mp.parts[i].end();
            };
            bool pinned = has(ew1) && has(ew2);
            PropertyPSpec s{v, mp.parts[i], pinned ? Rat(0) : lam / (1 - alpha)};
            ConvexCombination c = connectors_with_P(p, s);
            std::string why;
            CHECK_MESSAGE(verify_property_P(c, p, s, &why), why);
        }
    };
    Instance k4h = gen_k4half();
    exercise(validate_cyclic(k4h.theta, k4h.g, k4h.x), 0);

    Instance lb = gen_lowerbound(rat(1, 4));
    CubicReduction r = to_cubic(validate_cyclic(lb.theta, lb.g, lb.x));
    exercise(r.reduced, 0);

    Instance br = gen_block_ring(4, rat(1, 3));
    CyclicPoint p = validate_cyclic(br.theta, br.g, br.x);
    auto mc = minimal_critical_cut(p);
    REQUIRE(mc.has_value());
    std::vector<char> keep(p.g.n, 0);
    for (int v : *mc) keep[v] = 1;
    CyclicSide side = cyclic_contract(p, keep);
    exercise(side.q, side.pseudo);
}
