#pragma once

#include "decomp.hpp"

namespace tourglue {

// Every tour of the support with multiplicities <= 2, by edge-wise branching.
// A vertex whose incident support edges are all decided must already have
// even degree >= 2, which prunes most of the 3^m tree. Exhaustive regime
// only: refuses n > 10.
inline std::vector<Mult> enumerate_tours(const Multigraph& g, const std::vector<char>& sup) {
    if (g.n > 10) throw std::invalid_argument("tour enumeration is limited to n <= 10");
    std::vector<int> es;
    for (int e = 0; e < g.m(); ++e)
        if (sup[e]) es.push_back(e);
    std::vector<std::vector<int>> settled((int)es.size());
    {
        std::vector<int> last(g.n, -1);
        for (int i = 0; i < (int)es.size(); ++i) {
            last[g.edges[es[i]].first] = i;
            last[g.edges[es[i]].second] = i;
        }
        for (int v = 0; v < g.n; ++v) {
            if (last[v] == -1) return {};  // untouched vertex: nothing spans
            settled[last[v]].push_back(v);
        }
    }
    std::vector<Mult> out;
    Mult cur(g.m(), 0);
    std::vector<int> deg(g.n, 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == (int)es.size()) {
            if (is_spanning_connected(g, cur)) out.push_back(cur);
            return;
        }
        auto [a, b] = g.edges[es[i]];
        for (int mult = 0; mult <= 2; ++mult) {
            cur[es[i]] = mult;
            deg[a] += mult;
            deg[b] += mult;
            bool ok = true;
            for (int v : settled[i])
                if (deg[v] % 2 != 0 || deg[v] < 2) ok = false;
            if (ok) self(self, i + 1);
            deg[a] -= mult;
            deg[b] -= mult;
        }
        cur[es[i]] = 0;
    };
    rec(rec, 0);
    return out;
}

struct OracleVerdict {
    bool feasible = false;
    size_t tour_count = 0;
    std::string detail;
};

// Exact membership of y in the convex hull of the support's tours, decided
// by rational LP feasibility over the enumerated pool.
inline OracleVerdict oracle_tour_membership(const Multigraph& g, const EdgeVector& y) {
    if ((int)y.size() != g.m()) throw std::invalid_argument("vector size mismatch");
    for (const Rat& v : y)
        if (v < 0) return {false, 0, "a coordinate is negative"};
    std::vector<char> sup(g.m(), 0);
    for (int e = 0; e < g.m(); ++e) sup[e] = y[e] != 0;
    auto pool = enumerate_tours(g, sup);
    if (pool.empty()) return {false, 0, "the support admits no tour"};
    PricingOracle best_in_pool = [&](const EdgeVector& duals, const Rat& y0) -> std::optional<Mult> {
        const Mult* best = nullptr;
        Rat bestv;
        for (const auto& F : pool) {
            Rat v = 0;
            for (int e = 0; e < g.m(); ++e)
                if (F[e]) v += duals[e] * F[e];
            if (!best || v > bestv) {
                best = &F;
                bestv = v;
            }
        }
        if (bestv + y0 <= 0) return std::nullopt;
        return *best;
    };
    try {
        detail::decompose_run(g, y, {}, best_in_pool, "tour membership");
    } catch (const DecompError& err) {
        return {false, pool.size(), err.what()};
    }
    return {true, pool.size(), ""};
}

}  // namespace tourglue
