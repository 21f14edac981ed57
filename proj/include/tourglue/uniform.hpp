#pragma once

#include <optional>
#include <set>

#include "gluer.hpp"

namespace tourglue {

// ---------- Christofides baseline ----------

inline void require_subtour_point(const Multigraph& g, const EdgeVector& x) {
    if ((int)x.size() != g.m()) throw std::invalid_argument("edge vector size mismatch");
    for (int e = 0; e < g.m(); ++e)
        if (x[e] < 0 || x[e] > 1)
            throw std::invalid_argument("not a subtour point: an edge value is outside [0,1]");
    auto inc = g.incidence();
    for (int u = 0; u < g.n; ++u) {
        Rat s = 0;
        for (int e : inc[u]) s += x[e];
        if (s != 2)
            throw std::invalid_argument("not a subtour point: x(delta(" + std::to_string(u) +
                                        ")) = " + rat_str(s));
    }
    if (g.n >= 2 && min_cut_value(g, x) < 2)
        throw std::invalid_argument("not a subtour point: a cut carries value below 2");
}

// Tours equal to (3/2)x: spanning-tree-with-root-degree-2 decomposition of x,
// then a parity-fixing join decomposition of x/2 per tree.
inline ConvexCombination christofides(const Multigraph& g, const EdgeVector& x) {
    require_subtour_point(g, x);
    ConvexCombination trees = decompose_rainbow(g, x, RainbowSpec{0, {}});
    EdgeVector half(g.m());
    for (int e = 0; e < g.m(); ++e) half[e] = x[e] / 2;
    ConvexCombination out;
    for (const auto& tt : trees.terms) {
        auto deg = degrees(g, tt.F);
        std::vector<int> O;
        for (int u = 0; u < g.n; ++u)
            if (deg[u] % 2 != 0) O.push_back(u);
        ConvexCombination joins = decompose_ojoin(g, half, O);
        for (const auto& jt : joins.terms) {
            Mult F = tt.F;
            for (int e = 0; e < g.m(); ++e) F[e] += jt.F[e];
            out.terms.push_back({tt.lambda * jt.lambda, std::move(F)});
        }
    }
    canonical_order(out);
    EdgeVector target(g.m());
    for (int e = 0; e < g.m(); ++e) target[e] = rat(3, 2) * x[e];
    std::string why;
    if (!verify_convex_combination(g, out, target, VerifyMode::Equal, &why))
        throw std::logic_error("christofides output failed verification: " + why);
    for (const auto& t : out.terms)
        if (!is_tour(g, t.F)) throw std::logic_error("christofides produced a non-tour term");
    return out;
}

// ---------- covering 2-factor ----------

// 2-factor meeting every proper 3- and 4-edge cut, by exhaustive search over
// perfect-matching complements. Degree cuts are met by any 2-factor, so only
// proper cuts are checked.
inline Mult covering_two_factor(const Multigraph& g) {
    for (int d : degrees(g, Mult(g.m(), 1)))
        if (d != 3) throw std::invalid_argument("covering 2-factor needs a cubic host");
    if (min_cut_value(g, EdgeVector(g.m(), Rat(1))) < 2)
        throw std::invalid_argument("covering 2-factor needs a bridgeless host");
    std::vector<std::vector<int>> small;
    for (const auto& side : enumerate_cuts_upto(g, 4)) {
        std::vector<char> in(g.n, 0);
        for (int v : side) in[v] = 1;
        auto ce = cut_edges(g, in);
        if (ce.size() == 3 || ce.size() == 4) small.push_back(std::move(ce));
    }
    for (const auto& M : all_perfect_matchings(g, std::vector<char>(g.m(), 1))) {
        bool covers = true;
        for (const auto& ce : small) {
            bool hit = false;
            for (int e : ce)
                if (!M[e]) {
                    hit = true;
                    break;
                }
            if (!hit) {
                covers = false;
                break;
            }
        }
        if (!covers) continue;
        Mult C(g.m(), 1);
        for (int e = 0; e < g.m(); ++e) C[e] -= M[e];
        return C;
    }
    throw DecompError("no 2-factor covering every 3- and 4-edge cut was found");
}

// ---------- degree-splitting gadget ----------

// Every vertex of degree above d becomes a doubled cycle of its degree, each
// cycle vertex taking one of the original edge endpoints.
struct SplitResult {
    Multigraph g;
    std::vector<int> vmap;  // new vertex -> host vertex
    std::vector<int> emap;  // new edge -> host edge, -1 on gadget edges
    int host_m = 0;
};

inline SplitResult split_high_degree(const Multigraph& g, int d) {
    if (d < 2) throw std::invalid_argument("split threshold must be at least 2");
    auto deg = degrees(g, Mult(g.m(), 1));
    for (int v = 0; v < g.n; ++v)
        if (deg[v] < d) throw std::invalid_argument("every degree must be at least d");
    SplitResult s;
    s.host_m = g.m();
    std::vector<int> base(g.n);
    std::vector<char> split(g.n, 0);
    int next = 0;
    for (int v = 0; v < g.n; ++v) {
        base[v] = next;
        split[v] = deg[v] > d;
        next += split[v] ? deg[v] : 1;
    }
    s.g = Multigraph(next);
    s.vmap.assign(next, -1);
    for (int v = 0; v < g.n; ++v)
        for (int j = 0; j < (split[v] ? deg[v] : 1); ++j) s.vmap[base[v] + j] = v;
    std::vector<int> slot(g.n, 0);
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.edges[e];
        int na = split[a] ? base[a] + slot[a]++ : base[a];
        int nb = split[b] ? base[b] + slot[b]++ : base[b];
        s.g.add_edge(na, nb);
        s.emap.push_back(e);
    }
    for (int v = 0; v < g.n; ++v) {
        if (!split[v]) continue;
        for (int j = 0; j < deg[v]; ++j)
            for (int copy = 0; copy < 2; ++copy) {
                s.g.add_edge(base[v] + j, base[v] + (j + 1) % deg[v]);
                s.emap.push_back(-1);
            }
    }
    return s;
}

// drop gadget edges, keep host-edge multiplicities
inline Mult collapse_split(const SplitResult& s, const Mult& F) {
    Mult out(s.host_m, 0);
    for (int e = 0; e < s.g.m(); ++e)
        if (s.emap[e] >= 0) out[s.emap[e]] += F[e];
    return out;
}

// ---------- 2/3-uniform pipeline ----------

// (2/3)chi^E as 2-factors; each 2-factor C gives the 1/2-cyclic point with
// 1-edges on the complementary matching and 1/2 on C.
inline std::vector<std::pair<Rat, CyclicPoint>> reduce_uniform23(const Multigraph& g) {
    for (int d : degrees(g, Mult(g.m(), 1)))
        if (d != 3) throw std::invalid_argument("the host must be cubic");
    if (min_cut_value(g, EdgeVector(g.m(), Rat(1))) < 3)
        throw std::invalid_argument("the host must be 3-edge-connected");
    ConvexCombination tf = decompose_two_factor(g, EdgeVector(g.m(), rat(2, 3)));
    std::vector<std::pair<Rat, CyclicPoint>> out;
    for (const auto& t : tf.terms) {
        EdgeVector p(g.m());
        for (int e = 0; e < g.m(); ++e) p[e] = t.F[e] ? rat(1, 2) : Rat(1);
        out.emplace_back(t.lambda, validate_cyclic(rat(1, 2), g, p));
    }
    return out;
}

namespace detail {

// exact marginal q per listed edge with few terms: edge i occupies the arc
// [iq, iq+q) of the unit circle, terms are the circle segments
inline std::vector<std::pair<Rat, std::vector<int>>> circle_scheme(const std::vector<int>& ids,
                                                                   const Rat& q) {
    if (ids.empty()) return {{Rat(1), {}}};
    auto frac = [](const Rat& r) {
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        return Rat(r - Rat(fl));
    };
    int L = (int)ids.size();
    std::vector<Rat> cuts{Rat(0), Rat(1)};
    for (int i = 0; i < L; ++i) {
        cuts.push_back(frac(i * q));
        cuts.push_back(frac(i * q + q));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<std::pair<Rat, std::vector<int>>> out;
    for (size_t j = 0; j + 1 < cuts.size(); ++j) {
        Rat w = cuts[j + 1] - cuts[j];
        if (w == 0) continue;
        Rat mid = (cuts[j] + cuts[j + 1]) / 2;
        std::vector<int> sel;
        for (int i = 0; i < L; ++i) {
            Rat s = frac(i * q), t = s + q;
            bool in = t <= 1 ? (mid >= s && mid < t) : (mid >= s || mid < t - 1);
            if (in) sel.push_back(ids[i]);
        }
        out.push_back({w, std::move(sel)});
    }
    return out;
}

// tours worth 1 on C and 4/5 off C: the matching edges between distinct
// cycles of C carry a tree decomposition of the contracted host at 2/5 (split
// to 5-regular first), chords inside a single cycle carry 2/5 independently;
// doubling either kind keeps parity, and the trees restore connectivity
inline ConvexCombination doubled_tree_tours(const Multigraph& g, const Mult& C) {
    UnionFind uf(g.n);
    for (int e = 0; e < g.m(); ++e)
        if (C[e]) uf.unite(g.edges[e].first, g.edges[e].second);
    std::vector<int> comp(g.n, -1);
    int ncyc = 0;
    for (int v = 0; v < g.n; ++v) {
        int r = uf.find(v);
        if (comp[r] == -1) comp[r] = ncyc++;
        comp[v] = comp[r];
    }
    std::vector<int> cross, chords;
    for (int e = 0; e < g.m(); ++e) {
        if (C[e]) continue;
        (comp[g.edges[e].first] == comp[g.edges[e].second] ? chords : cross).push_back(e);
    }
    auto chord_terms = circle_scheme(chords, rat(2, 5));
    std::vector<std::pair<Rat, std::vector<int>>> tree_terms;
    if (ncyc == 1) {
        tree_terms.push_back({Rat(1), {}});
    } else {
        Multigraph gp(ncyc);
        std::vector<int> gpmap;
        for (int e : cross) {
            gp.add_edge(comp[g.edges[e].first], comp[g.edges[e].second]);
            gpmap.push_back(e);
        }
        SplitResult sp = split_high_degree(gp, 5);
        ConvexCombination rt =
            decompose_rainbow(sp.g, EdgeVector(sp.g.m(), rat(2, 5)), RainbowSpec{0, {}});
        for (const auto& t : rt.terms) {
            Mult on_gp = collapse_split(sp, t.F);
            std::vector<int> sel;
            for (int e2 = 0; e2 < gp.m(); ++e2)
                if (on_gp[e2]) sel.push_back(gpmap[e2]);
            tree_terms.push_back({t.lambda, std::move(sel)});
        }
    }
    ConvexCombination out;
    for (const auto& [lt, tids] : tree_terms)
        for (const auto& [lc, cids] : chord_terms) {
            Mult F = C;
            for (int e : tids) F[e] += 2;
            for (int e : cids) F[e] += 2;
            out.terms.push_back({lt * lc, std::move(F)});
        }
    merge_terms(out);
    EdgeVector target(g.m());
    for (int e = 0; e < g.m(); ++e) target[e] = C[e] ? Rat(1) : rat(4, 5);
    std::string why;
    if (!verify_convex_combination(g, out, target, VerifyMode::Equal, &why))
        throw std::logic_error("doubled-tree tours failed verification: " + why);
    for (const auto& t : out.terms)
        if (!is_tour(g, t.F)) throw std::logic_error("doubled-tree term is not a tour");
    return out;
}

}  // namespace detail

// Tours worth 17/18 per edge of a cubic 3-edge-connected host; with a
// Hamilton cycle supplied, 29/34 per edge.
inline ConvexCombination solve_uniform23(const Multigraph& g,
                                         const std::optional<Mult>& hamiltonian_hint = {}) {
    for (int d : degrees(g, Mult(g.m(), 1)))
        if (d != 3) throw std::invalid_argument("the host must be cubic");
    if (min_cut_value(g, EdgeVector(g.m(), Rat(1))) < 3)
        throw std::invalid_argument("the host must be 3-edge-connected");
    Mult C;
    if (hamiltonian_hint) {
        C = *hamiltonian_hint;
        if ((int)C.size() != g.m() || !is_two_factor(g, C) || !is_spanning_connected(g, C))
            throw std::invalid_argument("hint is not a Hamilton cycle of the host");
    } else {
        C = covering_two_factor(g);
    }
    EdgeVector z(g.m());
    for (int e = 0; e < g.m(); ++e) z[e] = C[e] ? rat(1, 2) : Rat(1);
    ConvexCombination y2 = solve_cyclic(validate_cyclic(rat(1, 2), g, z));
    ConvexCombination out;
    Rat per_edge;
    if (hamiltonian_hint) {
        out.terms.push_back({rat(7, 17), C});
        for (const auto& t : y2.terms) out.terms.push_back({t.lambda * rat(10, 17), t.F});
        per_edge = rat(29, 34);
    } else {
        ConvexCombination y1 = detail::doubled_tree_tours(g, C);
        for (const auto& t : y1.terms) out.terms.push_back({t.lambda * rat(7, 9), t.F});
        for (const auto& t : y2.terms) out.terms.push_back({t.lambda * rat(2, 9), t.F});
        per_edge = rat(17, 18);
    }
    canonical_order(out);
    std::string why;
    if (!verify_convex_combination(g, out, EdgeVector(g.m(), per_edge), VerifyMode::Equal, &why))
        throw std::logic_error("uniform 2/3 output failed verification: " + why);
    for (const auto& t : out.terms)
        if (!is_tour(g, t.F)) throw std::logic_error("uniform 2/3 produced a non-tour term");
    return out;
}

// ---------- 2/4-uniform base case ----------

struct Uniform24Result {
    ConvexCombination comb;             // tours worth 31/42 per edge
    EdgeVector pr_join_given_matched;   // per edge: join mass within matched branches / 1/4
    EdgeVector pr_join;                 // per edge: total join mass
};

// Derandomized nested decompositions: perfect matchings of (1/4)chi^E, seven
// induced-matching classes per matching, a rainbow tree family per class, and
// a parity join family per tree; all weights multiplied through exactly.
inline Uniform24Result solve_uniform24_base(const Multigraph& g) {
    for (int d : degrees(g, Mult(g.m(), 1)))
        if (d != 4) throw std::invalid_argument("the host must be 4-regular");
    if (g.n % 2 != 0) throw std::invalid_argument("the host needs an even number of vertices");
    if (min_cut_value(g, EdgeVector(g.m(), Rat(1))) < 4)
        throw std::invalid_argument("the host must be 4-edge-connected");
    for (const auto& side : enumerate_cuts_upto(g, 4)) {
        std::vector<char> in(g.n, 0);
        for (int v : side) in[v] = 1;
        if (cut_edges(g, in).size() == 4)
            throw std::invalid_argument("the host has a proper 4-edge cut");
    }
    auto inc = g.incidence();
    ConvexCombination pm = decompose_perfect_matching(g, EdgeVector(g.m(), rat(1, 4)));
    ConvexCombination out;
    EdgeVector matched_mass(g.m(), Rat(0)), joint(g.m(), Rat(0)), join_mass(g.m(), Rat(0));
    for (const auto& mt : pm.terms) {
        const Mult& M = mt.F;
        for (int e = 0; e < g.m(); ++e)
            if (M[e]) matched_mass[e] += mt.lambda;
        // induced-matching classes: color the M-contraction greedily; it is
        // 6-regular, so seven colors always suffice
        std::vector<int> medges;
        for (int e = 0; e < g.m(); ++e)
            if (M[e]) medges.push_back(e);
        int k = (int)medges.size();
        std::vector<int> pair_of(g.n, -1);
        for (int i = 0; i < k; ++i) {
            pair_of[g.edges[medges[i]].first] = i;
            pair_of[g.edges[medges[i]].second] = i;
        }
        std::vector<std::set<int>> adj(k);
        for (int e = 0; e < g.m(); ++e) {
            if (M[e]) continue;
            int a = pair_of[g.edges[e].first], b = pair_of[g.edges[e].second];
            if (a != b) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        std::vector<int> color(k, -1);
        for (int i = 0; i < k; ++i) {
            std::array<char, 7> used{};
            for (int j : adj[i])
                if (color[j] >= 0) used[color[j]] = 1;
            int c = 0;
            while (c < 7 && used[c]) ++c;
            if (c == 7) throw std::logic_error("matching contraction needed more than 7 colors");
            color[i] = c;
        }
        EdgeVector z(g.m());
        for (int e = 0; e < g.m(); ++e) z[e] = M[e] ? Rat(1) : rat(1, 3);
        for (int i = 0; i < 7; ++i) {
            std::vector<char> in_class(g.m(), 0);
            RainbowSpec rs;
            rs.v = 0;
            for (int idx = 0; idx < k; ++idx) {
                if (color[idx] != i) continue;
                in_class[medges[idx]] = 1;
                for (int s : {g.edges[medges[idx]].first, g.edges[medges[idx]].second}) {
                    std::vector<int> part;
                    for (int e2 : inc[s])
                        if (!M[e2]) part.push_back(e2);
                    if (part.size() != 3)
                        throw std::logic_error("a class edge has a parallel companion");
                    rs.parts.push_back(std::move(part));
                }
            }
            ConvexCombination trees = decompose_rainbow(g, z, rs);
            EdgeVector p(g.m());
            for (int e = 0; e < g.m(); ++e)
                p[e] = (M[e] && !in_class[e]) ? rat(1, 2) : rat(1, 6);
            for (const auto& tt : trees.terms) {
                auto deg = degrees(g, tt.F);
                std::vector<int> O;
                for (int u = 0; u < g.n; ++u)
                    if (deg[u] % 2 != 0) O.push_back(u);
                ConvexCombination joins = decompose_ojoin(g, p, O);
                for (const auto& jt : joins.terms) {
                    Rat w = mt.lambda * rat(1, 7) * tt.lambda * jt.lambda;
                    Mult F = tt.F;
                    for (int e = 0; e < g.m(); ++e) {
                        F[e] += jt.F[e];
                        if (jt.F[e]) {
                            join_mass[e] += w;
                            if (M[e]) joint[e] += w;
                        }
                    }
                    out.terms.push_back({w, std::move(F)});
                }
            }
        }
    }
    canonical_order(out);
    std::string why;
    if (!verify_convex_combination(g, out, EdgeVector(g.m(), rat(31, 42)), VerifyMode::Equal,
                                   &why))
        throw std::logic_error("uniform 2/4 output failed verification: " + why);
    for (const auto& t : out.terms)
        if (!is_tour(g, t.F)) throw std::logic_error("uniform 2/4 produced a non-tour term");
    Uniform24Result res;
    res.comb = std::move(out);
    res.pr_join = std::move(join_mass);
    res.pr_join_given_matched.resize(g.m());
    for (int e = 0; e < g.m(); ++e) res.pr_join_given_matched[e] = joint[e] / matched_mass[e];
    return res;
}

}  // namespace tourglue
