#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace tourglue {

// Host graph: simple edge list with stable indices. Parallel edges are
// separate entries; loops are rejected. Sub-multigraphs are multiplicity
// vectors indexed by host edge id, rational vectors likewise.
struct Multigraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // stored with u < v

    Multigraph() = default;
    explicit Multigraph(int n_) : n(n_) {}

    int m() const { return (int)edges.size(); }

    int add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("loop edge");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
        return (int)edges.size() - 1;
    }

    int other_end(int e, int v) const {
        auto [a, b] = edges[e];
        if (v == a) return b;
        if (v == b) return a;
        throw std::invalid_argument("vertex not on edge");
    }

    // vertex -> incident edge ids, in edge-index order
    std::vector<std::vector<int>> incidence() const {
        std::vector<std::vector<int>> inc(n);
        for (int e = 0; e < m(); ++e) {
            inc[edges[e].first].push_back(e);
            inc[edges[e].second].push_back(e);
        }
        return inc;
    }
};

using Mult = std::vector<int>;        // multiplicity per host edge
using EdgeVector = std::vector<Rat>;  // rational value per host edge

struct Term {
    Rat lambda;
    Mult F;
};

struct ConvexCombination {
    std::vector<Term> terms;
};

inline std::vector<int> degrees(const Multigraph& g, const Mult& F) {
    std::vector<int> deg(g.n, 0);
    for (int e = 0; e < g.m(); ++e) {
        deg[g.edges[e].first] += F[e];
        deg[g.edges[e].second] += F[e];
    }
    return deg;
}

namespace detail {
struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        p[b] = a;
        return true;
    }
};
}  // namespace detail

// F touches every vertex of g and its support is one connected component.
inline bool is_spanning_connected(const Multigraph& g, const Mult& F) {
    if (g.n == 0) return false;
    detail::UnionFind uf(g.n);
    std::vector<char> touched(g.n, 0);
    int comps = g.n;
    for (int e = 0; e < g.m(); ++e)
        if (F[e] > 0) {
            touched[g.edges[e].first] = touched[g.edges[e].second] = 1;
            if (uf.unite(g.edges[e].first, g.edges[e].second)) --comps;
        }
    if (g.n == 1) return true;
    for (int v = 0; v < g.n; ++v)
        if (!touched[v]) return false;
    return comps == 1;
}

// Connectivity of F restricted to a vertex subset: every vertex with
// keep[v]=1 is touched and all of them lie in one component. Edges leaving
// the subset are ignored.
inline bool is_connected_on(const Multigraph& g, const Mult& F, const std::vector<char>& keep) {
    detail::UnionFind uf(g.n);
    std::vector<char> touched(g.n, 0);
    for (int e = 0; e < g.m(); ++e)
        if (F[e] > 0 && keep[g.edges[e].first] && keep[g.edges[e].second]) {
            touched[g.edges[e].first] = touched[g.edges[e].second] = 1;
            uf.unite(g.edges[e].first, g.edges[e].second);
        }
    int root = -1, cnt = 0;
    for (int v = 0; v < g.n; ++v) cnt += keep[v] ? 1 : 0;
    if (cnt <= 1) return true;
    for (int v = 0; v < g.n; ++v)
        if (keep[v]) {
            if (!touched[v]) return false;
            if (root == -1)
                root = uf.find(v);
            else if (uf.find(v) != root)
                return false;
        }
    return true;
}

// Spanning, connected, Eulerian (all degrees even).
inline bool is_tour(const Multigraph& g, const Mult& F) {
    if (!is_spanning_connected(g, F)) return false;
    for (int d : degrees(g, F))
        if (d % 2 != 0) return false;
    return true;
}

// Spanning connected subgraph with no doubled edges.
inline bool is_connector(const Multigraph& g, const Mult& F) {
    for (int x : F)
        if (x > 1) return false;
    return is_spanning_connected(g, F);
}

inline std::vector<int> cut_edges(const Multigraph& g, const std::vector<char>& in_U) {
    std::vector<int> out;
    for (int e = 0; e < g.m(); ++e)
        if (in_U[g.edges[e].first] != in_U[g.edges[e].second]) out.push_back(e);
    return out;
}

inline Rat value_sum(const EdgeVector& w, const std::vector<int>& ids) {
    Rat s = 0;
    for (int e : ids) s += w[e];
    return s;
}

// Contraction of everything OUTSIDE `keep` into one pseudovertex.
// Vertices in keep retain their relative order as ids 0..|keep|-1; the
// pseudovertex is the last id. Edges internal to the contracted side vanish;
// edge_map sends surviving new edge ids to host edge ids.
struct Contraction {
    Multigraph g;
    int pseudo = -1;
    std::vector<int> vmap;      // host vertex -> new vertex
    std::vector<int> edge_map;  // new edge -> host edge
};

inline Contraction contract(const Multigraph& host, const std::vector<char>& keep) {
    int kept = 0;
    for (int v = 0; v < host.n; ++v) kept += keep[v] ? 1 : 0;
    if (kept == 0 || kept == host.n)
        throw std::invalid_argument("contract: kept side must be proper");
    Contraction c;
    c.g.n = kept + 1;
    c.pseudo = kept;
    c.vmap.assign(host.n, c.pseudo);
    int next = 0;
    for (int v = 0; v < host.n; ++v)
        if (keep[v]) c.vmap[v] = next++;
    for (int e = 0; e < host.m(); ++e) {
        int a = c.vmap[host.edges[e].first], b = c.vmap[host.edges[e].second];
        if (a == b) continue;  // internal to the contracted side (or a loop)
        c.g.add_edge(a, b);
        c.edge_map.push_back(e);
    }
    return c;
}

template <typename T>
std::vector<T> pull_through(const std::vector<int>& edge_map, const std::vector<T>& host_vec) {
    std::vector<T> out;
    out.reserve(edge_map.size());
    for (int e : edge_map) out.push_back(host_vec[e]);
    return out;
}

// Exact global minimum cut (Stoer-Wagner), over all nonempty proper vertex
// subsets. Disconnected support yields 0.
inline Rat min_cut_value(const Multigraph& g, const EdgeVector& w) {
    int n = g.n;
    if (n < 2) throw std::invalid_argument("min cut needs >= 2 vertices");
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n, Rat(0)));
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        a[u][v] += w[e];
        a[v][u] += w[e];
    }
    std::vector<int> active(n);
    std::iota(active.begin(), active.end(), 0);
    bool have = false;
    Rat best = 0;
    while ((int)active.size() > 1) {
        int k = (int)active.size();
        std::vector<Rat> weight(k, Rat(0));
        std::vector<char> added(k, 0);
        int prev = -1, last = -1;
        for (int it = 0; it < k; ++it) {
            int sel = -1;
            for (int i = 0; i < k; ++i)
                if (!added[i] && (sel == -1 || weight[i] > weight[sel])) sel = i;
            added[sel] = 1;
            if (it == k - 1) {
                if (!have || weight[sel] < best) best = weight[sel], have = true;
                last = sel;
            } else {
                prev = sel;
            }
            for (int i = 0; i < k; ++i)
                if (!added[i]) weight[i] += a[active[sel]][active[i]];
        }
        // merge last into prev
        int u = active[prev], v = active[last];
        for (int i = 0; i < k; ++i) {
            int x = active[i];
            if (x == u || x == v) continue;
            a[u][x] += a[v][x];
            a[x][u] = a[u][x];
        }
        active.erase(active.begin() + last);
    }
    return best;
}

// All proper cuts (both sides >= 2 vertices) whose simple-support cut size is
// <= k. Returns the canonical side (the one containing vertex 0), sides
// sorted lexicographically. Brute force; intended for desk-scale hosts.
inline std::vector<std::vector<int>> enumerate_cuts_upto(const Multigraph& g, int k) {
    int n = g.n;
    if (n > 26) throw std::invalid_argument("cut enumeration limited to n <= 26");
    std::vector<std::vector<int>> out;
    if (n < 4) return out;
    auto inc = g.incidence();
    // gray-code walk over subsets of vertices 1..n-1 (side without vertex 0)
    unsigned total = 1u << (n - 1);
    std::vector<char> in(n, 0);
    int cut = 0;
    unsigned gprev = 0;
    int size1 = 0;  // |side without 0|
    for (unsigned i = 1; i < total; ++i) {
        unsigned gray = i ^ (i >> 1);
        unsigned diff = gray ^ gprev;
        gprev = gray;
        int v = __builtin_ctz(diff) + 1;  // toggled vertex
        if (in[v]) {
            in[v] = 0;
            --size1;
        } else {
            in[v] = 1;
            ++size1;
        }
        for (int e : inc[v]) {
            int u = g.other_end(e, v);
            cut += (in[u] != in[v]) ? 1 : -1;
        }
        if (cut <= k && size1 >= 2 && n - size1 >= 2) {
            std::vector<int> side;
            for (int x = 0; x < n; ++x)
                if (!in[x]) side.push_back(x);
            out.push_back(std::move(side));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline EdgeVector combination_value(const Multigraph& g, const ConvexCombination& c) {
    EdgeVector v(g.m(), Rat(0));
    for (const auto& t : c.terms)
        for (int e = 0; e < g.m(); ++e)
            if (t.F[e]) v[e] += t.lambda * t.F[e];
    return v;
}

enum class VerifyMode { Equal, Dominated };

// Checks multiplier validity and value identity; on failure writes a short
// description to *why when provided.
inline bool verify_convex_combination(const Multigraph& g, const ConvexCombination& c,
                                      const EdgeVector& target, VerifyMode mode,
                                      std::string* why = nullptr) {
    Rat sum = 0;
    for (const auto& t : c.terms) {
        if (t.lambda <= 0) {
            if (why) *why = "nonpositive multiplier " + rat_str(t.lambda);
            return false;
        }
        sum += t.lambda;
    }
    if (sum != 1) {
        if (why) *why = "multipliers sum to " + rat_str(sum);
        return false;
    }
    EdgeVector v = combination_value(g, c);
    for (int e = 0; e < g.m(); ++e) {
        bool ok = (mode == VerifyMode::Equal) ? v[e] == target[e] : v[e] <= target[e];
        if (!ok) {
            if (why)
                *why = "edge " + std::to_string(g.edges[e].first) + "-" +
                       std::to_string(g.edges[e].second) + " has value " + rat_str(v[e]) +
                       ", target " + rat_str(target[e]);
            return false;
        }
    }
    return true;
}

// Canonical key for merging identical terms.
inline void merge_terms(ConvexCombination& c) {
    std::sort(c.terms.begin(), c.terms.end(),
              [](const Term& a, const Term& b) { return a.F < b.F; });
    ConvexCombination out;
    for (auto& t : c.terms) {
        if (!out.terms.empty() && out.terms.back().F == t.F)
            out.terms.back().lambda += t.lambda;
        else
            out.terms.push_back(t);
    }
    std::erase_if(out.terms, [](const Term& t) { return t.lambda == 0; });
    c = std::move(out);
}

// Multiplicities of parallel host edges are interchangeable; canonical form
// sorts them descending in index order within each endpoint pair.
inline void canonicalize_parallel_edges(const Multigraph& g, Mult& F) {
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (int e = 0; e < g.m(); ++e) by_pair[g.edges[e]].push_back(e);
    for (auto& [pair, ids] : by_pair) {
        if (ids.size() < 2) continue;
        std::vector<int> mults;
        for (int e : ids) mults.push_back(F[e]);
        std::sort(mults.rbegin(), mults.rend());
        for (size_t i = 0; i < ids.size(); ++i) F[ids[i]] = mults[i];
    }
}

// Canonical output order: descending multiplier, then lexicographic edges.
inline void canonical_order(ConvexCombination& c) {
    merge_terms(c);
    std::sort(c.terms.begin(), c.terms.end(), [](const Term& a, const Term& b) {
        if (a.lambda != b.lambda) return a.lambda > b.lambda;
        return a.F < b.F;
    });
}

}  // namespace tourglue
