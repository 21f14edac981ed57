#pragma once

#include <functional>
#include <optional>

#include "graph.hpp"
#include "lp.hpp"

namespace tourglue {

struct DecompError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RainbowSpec {
    int v = -1;
    std::vector<std::vector<int>> parts;  // pairwise-disjoint edge id sets
};

// ---------- family predicates ----------

inline bool is_vtree(const Multigraph& g, int v, const Mult& F) {
    int at_v = 0, total = 0;
    for (int e = 0; e < g.m(); ++e) {
        if (F[e] < 0 || F[e] > 1) return false;
        if (!F[e]) continue;
        ++total;
        if (g.edges[e].first == v || g.edges[e].second == v) ++at_v;
    }
    if (at_v != 2 || total != g.n) return false;
    Mult rest = F;
    std::vector<char> keep(g.n, 1);
    keep[v] = 0;
    for (int e = 0; e < g.m(); ++e)
        if (g.edges[e].first == v || g.edges[e].second == v) rest[e] = 0;
    return is_connected_on(g, rest, keep);  // n-2 edges + connected = tree
}

inline bool is_rainbow_vtree(const Multigraph& g, const RainbowSpec& spec, const Mult& F) {
    if (!is_vtree(g, spec.v, F)) return false;
    for (const auto& part : spec.parts) {
        int c = 0;
        for (int e : part) c += F[e];
        if (c != 1) return false;
    }
    return true;
}

inline bool is_ojoin(const Multigraph& g, const std::vector<int>& O, const Mult& F) {
    for (int x : F)
        if (x < 0 || x > 1) return false;
    std::vector<char> odd(g.n, 0);
    for (int v : O) odd[v] = 1;
    auto deg = degrees(g, F);
    for (int v = 0; v < g.n; ++v)
        if ((deg[v] % 2 != 0) != (bool)odd[v]) return false;
    return true;
}

inline bool is_perfect_matching(const Multigraph& g, const Mult& F) {
    for (int x : F)
        if (x < 0 || x > 1) return false;
    for (int d : degrees(g, F))
        if (d != 1) return false;
    return true;
}

inline bool is_two_factor(const Multigraph& g, const Mult& F) {
    for (int x : F)
        if (x < 0 || x > 1) return false;
    for (int d : degrees(g, F))
        if (d != 2) return false;
    return true;
}

// ---------- column-generation driver ----------

// Oracle contract: given edge duals y (full edge indexing; zero off support)
// and the convexity dual y0, return a family member F maximizing y.chi^F, or
// nullopt when even the maximum satisfies y.chi^F + y0 <= 0 (which certifies
// infeasibility of the decomposition).
using PricingOracle =
    std::function<std::optional<Mult>(const EdgeVector& y, const Rat& y0)>;

namespace detail {

inline std::vector<int> support_of(const EdgeVector& target) {
    std::vector<int> s;
    for (int e = 0; e < (int)target.size(); ++e)
        if (target[e] != 0) s.push_back(e);
    return s;
}

inline ConvexCombination decompose_run(const Multigraph& g, const EdgeVector& target,
                                       const std::vector<Mult>& initial_pool,
                                       const PricingOracle& oracle, const char* what) {
    auto support = support_of(target);
    int rows = (int)support.size() + 1;
    std::vector<Rat> b;
    for (int e : support) {
        if (target[e] < 0) throw DecompError(std::string(what) + ": negative target value");
        b.push_back(target[e]);
    }
    b.push_back(Rat(1));
    ColumnLP lp(std::move(b));
    std::vector<Mult> pool;
    auto add_member = [&](const Mult& F) {
        std::vector<Rat> col(rows, Rat(0));
        for (int i = 0; i < (int)support.size(); ++i) col[i] = F[support[i]];
        col[rows - 1] = 1;
        for (int e = 0; e < g.m(); ++e)
            if (F[e] != 0 && target[e] == 0)
                throw DecompError(std::string(what) + ": family member uses a zero-value edge");
        lp.add_column(std::move(col));
        pool.push_back(F);
    };
    for (const auto& F : initial_pool) add_member(F);
    for (int round = 0;; ++round) {
        if (round > 100000) throw std::logic_error("column generation did not converge");
        Rat mass = lp.solve_phase1();
        if (mass == 0) break;
        if (!oracle) {
            std::string msg = std::string(what) +
                              ": target outside the family's polytope (residual mass " +
                              rat_str(mass) + ")";
            throw DecompError(msg);
        }
        auto y = lp.duals_phase1();
        EdgeVector ye(g.m(), Rat(0));
        for (int i = 0; i < (int)support.size(); ++i) ye[support[i]] = y[i];
        Rat y0 = y[rows - 1];
        auto F = oracle(ye, y0);
        if (!F) {
            std::string msg = std::string(what) +
                              ": infeasible; Farkas witness duals have value " + rat_str(mass) +
                              " against the target while every family member prices <= 0";
            throw DecompError(msg);
        }
        Rat score = y0;
        for (int e = 0; e < g.m(); ++e)
            if ((*F)[e]) score += ye[e] * (*F)[e];
        if (score <= 0)
            throw DecompError(std::string(what) + ": infeasible; best column prices " +
                              rat_str(score - y0) + " against dual bound " + rat_str(-y0));
        add_member(*F);
    }
    ConvexCombination out;
    for (auto& [idx, lam] : lp.solution()) out.terms.push_back({lam, pool[idx]});
    merge_terms(out);
    std::string why;
    if (!verify_convex_combination(g, out, target, VerifyMode::Equal, &why))
        throw std::logic_error(std::string(what) + ": engine output failed verification: " + why);
    return out;
}

}  // namespace detail

// ---------- rainbow v-tree pricing (weighted matroid intersection) ----------
//
// The v-tree sets (two edges at v, forest elsewhere, |V| edges total) are the
// bases of the direct sum of a rank-2 uniform matroid on delta(v) and the
// graphic matroid on G - v, restricted to the target's support. Rainbow
// parts add a partition matroid. Max-weight common bases via shortest
// augmenting paths in the exchange graph, costs lexicographic (weight, hops).

namespace detail {

class RainbowOracle {
public:
    RainbowOracle(const Multigraph& g, std::vector<char> in_support, int v,
                  const std::vector<std::vector<int>>& parts)
        : g_(g), sup_(std::move(in_support)), v_(v) {
        part_of_.assign(g.m(), -1);
        for (int p = 0; p < (int)parts.size(); ++p)
            for (int e : parts[p]) {
                if (part_of_[e] != -1) throw std::invalid_argument("overlapping rainbow parts");
                part_of_[e] = p;
            }
        nparts_ = (int)parts.size();
        for (int e = 0; e < g.m(); ++e)
            if (sup_[e]) elems_.push_back(e);
    }

    // max-weight rainbow v-tree, or nullopt when no common base exists
    std::optional<Mult> best(const EdgeVector& w) const {
        std::vector<char> in_I(g_.m(), 0);
        int size = 0;
        while (size < g_.n) {
            if (!augment(in_I, w)) return std::nullopt;
            ++size;
        }
        Mult F(g_.m(), 0);
        for (int e = 0; e < g_.m(); ++e) F[e] = in_I[e];
        return F;
    }

private:
    bool at_v(int e) const { return g_.edges[e].first == v_ || g_.edges[e].second == v_; }

    // circuit of I + y in the v-tree matroid, or empty when independent
    std::vector<int> circuit1(const std::vector<char>& in_I, int y) const {
        if (at_v(y)) {
            std::vector<int> dv;
            for (int e : elems_)
                if (in_I[e] && at_v(e)) dv.push_back(e);
            if ((int)dv.size() < 2) return {};
            dv.push_back(y);
            return dv;
        }
        // path between endpoints of y in the I-forest (edges off delta(v))
        std::vector<std::vector<std::pair<int, int>>> adj(g_.n);
        for (int e : elems_)
            if (in_I[e] && !at_v(e)) {
                adj[g_.edges[e].first].push_back({g_.edges[e].second, e});
                adj[g_.edges[e].second].push_back({g_.edges[e].first, e});
            }
        auto [a, b] = g_.edges[y];
        std::vector<int> via(g_.n, -1), from(g_.n, -1);
        std::vector<char> seen(g_.n, 0);
        std::vector<int> q{a};
        seen[a] = 1;
        for (size_t h = 0; h < q.size(); ++h) {
            int u = q[h];
            if (u == b) break;
            for (auto [t, e] : adj[u])
                if (!seen[t]) {
                    seen[t] = 1;
                    via[t] = e;
                    from[t] = u;
                    q.push_back(t);
                }
        }
        if (!seen[b]) return {};
        std::vector<int> path{y};
        for (int u = b; u != a; u = from[u]) path.push_back(via[u]);
        return path;
    }

    bool augment(std::vector<char>& in_I, const EdgeVector& w) const {
        int n_el = (int)elems_.size();
        std::vector<int> pos(g_.m(), -1);
        for (int i = 0; i < n_el; ++i) pos[elems_[i]] = i;

        std::vector<std::vector<int>> arcs(n_el);  // arcs[i] -> targets
        std::vector<char> src(n_el, 0), snk(n_el, 0);
        std::vector<int> part_use(nparts_ == 0 ? 1 : nparts_, -1);
        for (int e : elems_)
            if (in_I[e] && part_of_[e] != -1) part_use[part_of_[e]] = e;

        for (int e : elems_) {
            if (in_I[e]) continue;
            int i = pos[e];
            auto c1 = circuit1(in_I, e);
            if (c1.empty())
                src[i] = 1;
            else
                for (int z : c1)
                    if (z != e) arcs[pos[z]].push_back(i);  // z -> y
            int p = part_of_[e];
            if (p == -1 || part_use[p] == -1)
                snk[i] = 1;
            else
                arcs[i].push_back(pos[part_use[p]]);  // y -> z
        }

        // Bellman-Ford with lexicographic (cost, hops); node costs are
        // -w for entering elements, +w for leaving ones.
        auto node_cost = [&](int i) {
            int e = elems_[i];
            return in_I[e] ? w[e] : -w[e];
        };
        std::vector<Rat> dist(n_el);
        std::vector<int> hops(n_el, -1), pred(n_el, -1);
        for (int i = 0; i < n_el; ++i)
            if (src[i]) {
                dist[i] = node_cost(i);
                hops[i] = 1;
            }
        for (int round = 0; round < n_el; ++round) {
            bool changed = false;
            for (int i = 0; i < n_el; ++i) {
                if (hops[i] == -1) continue;
                for (int t : arcs[i]) {
                    Rat nd = dist[i] + node_cost(t);
                    int nh = hops[i] + 1;
                    if (hops[t] == -1 || nd < dist[t] ||
                        (nd == dist[t] && nh < hops[t])) {
                        dist[t] = nd;
                        hops[t] = nh;
                        pred[t] = i;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        int best = -1;
        for (int i = 0; i < n_el; ++i) {
            if (!snk[i] || hops[i] == -1) continue;
            if (best == -1 || dist[i] < dist[best] ||
                (dist[i] == dist[best] && hops[i] < hops[best]))
                best = i;
        }
        if (best == -1) return false;
        for (int i = best; i != -1; i = pred[i]) in_I[elems_[i]] ^= 1;
        return true;
    }

    const Multigraph& g_;
    std::vector<char> sup_;
    int v_;
    std::vector<int> part_of_;
    int nparts_ = 0;
    std::vector<int> elems_;
};

}  // namespace detail

// ---------- O-join machinery ----------

namespace detail {

// spanning forest of the support; returns parent edge per vertex (-1 roots)
struct Forest {
    std::vector<int> parent_v, parent_e, comp;
};

inline Forest support_forest(const Multigraph& g, const std::vector<char>& sup) {
    Forest f;
    f.parent_v.assign(g.n, -1);
    f.parent_e.assign(g.n, -1);
    f.comp.assign(g.n, -1);
    auto inc = g.incidence();
    for (int r = 0; r < g.n; ++r) {
        if (f.comp[r] != -1) continue;
        f.comp[r] = r;
        std::vector<int> q{r};
        for (size_t h = 0; h < q.size(); ++h) {
            int u = q[h];
            for (int e : inc[u]) {
                if (!sup[e]) continue;
                int t = g.other_end(e, u);
                if (f.comp[t] != -1) continue;
                f.comp[t] = r;
                f.parent_v[t] = u;
                f.parent_e[t] = e;
                q.push_back(t);
            }
        }
    }
    return f;
}

inline void xor_tree_path(const Multigraph& g, const Forest& f, int a, int b, Mult& J) {
    // climb to the root from both ends; depths via repeated parent walk
    auto depth = [&](int v) {
        int d = 0;
        for (int u = v; f.parent_v[u] != -1; u = f.parent_v[u]) ++d;
        return d;
    };
    int da = depth(a), db = depth(b);
    while (da > db) {
        J[f.parent_e[a]] ^= 1;
        a = f.parent_v[a];
        --da;
    }
    while (db > da) {
        J[f.parent_e[b]] ^= 1;
        b = f.parent_v[b];
        --db;
    }
    while (a != b) {
        J[f.parent_e[a]] ^= 1;
        J[f.parent_e[b]] ^= 1;
        a = f.parent_v[a];
        b = f.parent_v[b];
    }
}

}  // namespace detail

// All O-joins inside the support (0/1 subgraphs with odd-degree set exactly
// O): one base join xor the whole cycle space. Throws when the cycle space
// is larger than max_dim (callers fall back to pricing) or when no O-join
// exists within the support.
inline std::vector<Mult> all_ojoins(const Multigraph& g, const std::vector<char>& sup,
                                    const std::vector<int>& O, int max_dim = 16) {
    detail::Forest f = detail::support_forest(g, sup);
    std::vector<std::vector<int>> percomp(g.n);
    for (int v : O) percomp[f.comp[v]].push_back(v);
    Mult J0(g.m(), 0);
    for (auto& group : percomp) {
        if (group.size() % 2 != 0)
            throw DecompError("no join with the requested odd set exists in the support");
        for (size_t i = 0; i + 1 < group.size(); i += 2)
            detail::xor_tree_path(g, f, group[i], group[i + 1], J0);
    }
    std::vector<int> nontree;
    for (int e = 0; e < g.m(); ++e)
        if (sup[e] && f.parent_e[g.edges[e].first] != e && f.parent_e[g.edges[e].second] != e)
            nontree.push_back(e);
    int dim = (int)nontree.size();
    if (dim > max_dim) throw DecompError("cycle space too large for join enumeration");
    std::vector<Mult> cycles;
    for (int e : nontree) {
        Mult c(g.m(), 0);
        c[e] = 1;
        detail::xor_tree_path(g, f, g.edges[e].first, g.edges[e].second, c);
        cycles.push_back(std::move(c));
    }
    std::vector<Mult> out;
    out.reserve(1u << dim);
    Mult cur = J0;
    out.push_back(cur);
    unsigned gprev = 0;
    for (unsigned i = 1; i < (1u << dim); ++i) {
        unsigned gray = i ^ (i >> 1);
        int bit = __builtin_ctz(gray ^ gprev);
        gprev = gray;
        for (int e = 0; e < g.m(); ++e) cur[e] ^= cycles[bit][e];
        out.push_back(cur);
    }
    return out;
}

// Minimum |y|-weight T-join route for larger cycle spaces: maximize y over
// O-joins via the positive-part flip and a shortest-path matching.
inline std::optional<Mult> max_weight_ojoin(const Multigraph& g, const std::vector<char>& sup,
                                            const std::vector<int>& O, const EdgeVector& y) {
    // flip positive edges: maximizing y over odd-set-O subgraphs equals
    // y(P) minus a min nonnegative-weight join for the adjusted odd set
    std::vector<char> odd(g.n, 0);
    for (int v : O) odd[v] ^= 1;
    Mult P(g.m(), 0);
    for (int e = 0; e < g.m(); ++e)
        if (sup[e] && y[e] > 0) {
            P[e] = 1;
            odd[g.edges[e].first] ^= 1;
            odd[g.edges[e].second] ^= 1;
        }
    std::vector<int> T;
    for (int v = 0; v < g.n; ++v)
        if (odd[v]) T.push_back(v);
    int k = (int)T.size();
    if (k % 2 != 0) return std::nullopt;
    if (k > 18) throw DecompError("odd set too large for the matching-based join oracle");
    // all-pairs shortest paths with weights |y|
    int n = g.n;
    std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, Rat(0)));
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    std::vector<std::vector<int>> mid(n, std::vector<int>(n, -1));
    for (int v = 0; v < n; ++v) reach[v][v] = 1;
    for (int e = 0; e < g.m(); ++e) {
        if (!sup[e]) continue;
        Rat w = y[e] > 0 ? y[e] : -y[e];
        auto [a, b] = g.edges[e];
        if (a == b) continue;
        if (!reach[a][b] || w < d[a][b]) {
            d[a][b] = d[b][a] = w;
            reach[a][b] = reach[b][a] = 1;
        }
    }
    std::vector<std::vector<int>> first_edge(n, std::vector<int>(n, -1));
    for (int e = 0; e < g.m(); ++e) {
        if (!sup[e]) continue;
        Rat w = y[e] > 0 ? y[e] : -y[e];
        auto [a, b] = g.edges[e];
        if (reach[a][b] && d[a][b] == w && first_edge[a][b] == -1)
            first_edge[a][b] = first_edge[b][a] = e;
    }
    for (int kk = 0; kk < n; ++kk)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][kk] && reach[kk][j] &&
                    (!reach[i][j] || d[i][kk] + d[kk][j] < d[i][j])) {
                    d[i][j] = d[i][kk] + d[kk][j];
                    reach[i][j] = 1;
                    mid[i][j] = kk;
                }
    // min-weight perfect matching on T via subset DP
    int full = (1 << k) - 1;
    std::vector<Rat> dp(1 << k, Rat(0));
    std::vector<char> dpok(1 << k, 0);
    std::vector<int> choice(1 << k, -1);
    dpok[0] = 1;
    for (int mask = 0; mask < full; ++mask) {
        if (!dpok[mask]) continue;
        int i = __builtin_ctz(~mask);
        for (int j = i + 1; j < k; ++j) {
            if (mask & (1 << j)) continue;
            if (!reach[T[i]][T[j]]) continue;
            int nmask = mask | (1 << i) | (1 << j);
            Rat nd = dp[mask] + d[T[i]][T[j]];
            if (!dpok[nmask] || nd < dp[nmask]) {
                dp[nmask] = nd;
                dpok[nmask] = 1;
                choice[nmask] = i * 32 + j;
            }
        }
    }
    if (!dpok[full]) return std::nullopt;
    Mult J = P;
    std::function<void(int, int)> add_path = [&](int a, int b) {
        if (a == b) return;
        if (mid[a][b] == -1) {
            J[first_edge[a][b]] ^= 1;
            return;
        }
        add_path(a, mid[a][b]);
        add_path(mid[a][b], b);
    };
    int mask = full;
    while (mask) {
        int c = choice[mask];
        int i = c / 32, j = c % 32;
        add_path(T[i], T[j]);
        mask &= ~((1 << i) | (1 << j));
    }
    return J;
}

// ---------- perfect matchings ----------

inline std::vector<Mult> all_perfect_matchings(const Multigraph& g, const std::vector<char>& sup,
                                               size_t cap = 200000) {
    auto inc = g.incidence();
    std::vector<Mult> out;
    Mult cur(g.m(), 0);
    std::vector<char> used(g.n, 0);
    std::function<void()> rec = [&]() {
        int v = -1;
        for (int u = 0; u < g.n; ++u)
            if (!used[u]) {
                v = u;
                break;
            }
        if (v == -1) {
            out.push_back(cur);
            if (out.size() > cap) throw DecompError("too many perfect matchings to enumerate");
            return;
        }
        for (int e : inc[v]) {
            if (!sup[e]) continue;
            int t = g.other_end(e, v);
            if (used[t]) continue;
            used[v] = used[t] = 1;
            cur[e] = 1;
            rec();
            used[v] = used[t] = 0;
            cur[e] = 0;
        }
    };
    rec();
    return out;
}

// Max-weight rainbow v-tree inside a support; the pricing oracle, exposed
// for direct use (sampling family members, warm pools, tests).
inline std::optional<Mult> rainbow_vtree_oracle(const Multigraph& g, const std::vector<char>& sup,
                                                const RainbowSpec& spec, const EdgeVector& w) {
    detail::RainbowOracle oracle(g, sup, spec.v, spec.parts);
    return oracle.best(w);
}

// ---------- public decomposition entry points ----------

inline ConvexCombination decompose_rainbow(const Multigraph& g, const EdgeVector& target,
                                           const RainbowSpec& spec) {
    std::vector<char> sup(g.m(), 0);
    for (int e = 0; e < g.m(); ++e) sup[e] = target[e] != 0;
    detail::RainbowOracle oracle(g, sup, spec.v, spec.parts);
    PricingOracle po = [&](const EdgeVector& y, const Rat&) { return oracle.best(y); };
    auto out = detail::decompose_run(g, target, {}, po, "rainbow v-tree decomposition");
    for (auto& t : out.terms)
        if (!is_rainbow_vtree(g, spec, t.F))
            throw std::logic_error("engine produced a non-rainbow v-tree term");
    return out;
}

inline ConvexCombination decompose_ojoin(const Multigraph& g, const EdgeVector& target,
                                         const std::vector<int>& O) {
    std::vector<char> sup(g.m(), 0);
    for (int e = 0; e < g.m(); ++e) sup[e] = target[e] != 0;
    ConvexCombination out;
    try {
        auto pool = all_ojoins(g, sup, O);
        out = detail::decompose_run(g, target, pool, nullptr, "join decomposition");
    } catch (const DecompError& err) {
        if (std::string(err.what()).find("cycle space") == std::string::npos) throw;
        PricingOracle po = [&](const EdgeVector& y, const Rat&) {
            return max_weight_ojoin(g, sup, O, y);
        };
        out = detail::decompose_run(g, target, {}, po, "join decomposition");
    }
    for (auto& t : out.terms)
        if (!is_ojoin(g, O, t.F)) throw std::logic_error("engine produced a non-join term");
    return out;
}

// Join decomposition with a secondary linear objective over terms (used to
// steer pattern profiles); requires the enumerable regime.
inline ConvexCombination decompose_ojoin_biased(const Multigraph& g, const EdgeVector& target,
                                                const std::vector<int>& O,
                                                const std::function<Rat(const Mult&)>& cost) {
    std::vector<char> sup(g.m(), 0);
    for (int e = 0; e < g.m(); ++e) sup[e] = target[e] != 0;
    auto pool = all_ojoins(g, sup, O);
    auto support = detail::support_of(target);
    int rows = (int)support.size() + 1;
    std::vector<Rat> b;
    for (int e : support) b.push_back(target[e]);
    b.push_back(Rat(1));
    ColumnLP lp(std::move(b));
    std::vector<Rat> costs;
    std::vector<Mult> kept;
    for (auto& F : pool) {
        bool ok = true;
        for (int e = 0; e < g.m(); ++e)
            if (F[e] && target[e] == 0) ok = false;
        if (!ok) continue;
        std::vector<Rat> col(rows, Rat(0));
        for (int i = 0; i < (int)support.size(); ++i) col[i] = F[support[i]];
        col[rows - 1] = 1;
        lp.add_column(std::move(col));
        costs.push_back(cost(F));
        kept.push_back(F);
    }
    if (lp.solve_phase1() != 0)
        throw DecompError("biased join decomposition: target outside the join polytope");
    lp.optimize(costs);
    ConvexCombination out;
    for (auto& [idx, lam] : lp.solution()) out.terms.push_back({lam, kept[idx]});
    merge_terms(out);
    std::string why;
    if (!verify_convex_combination(g, out, target, VerifyMode::Equal, &why))
        throw std::logic_error("biased join decomposition failed verification: " + why);
    for (auto& t : out.terms)
        if (!is_ojoin(g, O, t.F)) throw std::logic_error("biased join term is not a join");
    return out;
}

inline ConvexCombination decompose_perfect_matching(const Multigraph& g,
                                                    const EdgeVector& target) {
    std::vector<char> sup(g.m(), 0);
    for (int e = 0; e < g.m(); ++e) sup[e] = target[e] != 0;
    auto pool = all_perfect_matchings(g, sup);
    if (pool.empty()) throw DecompError("no perfect matching inside the support");
    auto out = detail::decompose_run(g, target, pool, nullptr, "perfect matching decomposition");
    for (auto& t : out.terms)
        if (!is_perfect_matching(g, t.F))
            throw std::logic_error("engine produced a non-matching term");
    return out;
}

// 2-factor decomposition on a cubic support: a 2-factor is the complement of
// a perfect matching, so decompose the complement weights into matchings.
inline ConvexCombination decompose_two_factor(const Multigraph& g, const EdgeVector& target) {
    std::vector<char> sup(g.m(), 0);
    EdgeVector comp(g.m(), Rat(0));
    for (int e = 0; e < g.m(); ++e) {
        sup[e] = target[e] != 0;
        if (sup[e]) comp[e] = 1 - target[e];
    }
    auto deg = degrees(g, Mult(sup.begin(), sup.end()));
    for (int v = 0; v < g.n; ++v)
        if (deg[v] != 3) throw DecompError("2-factor decomposition needs a cubic support");
    // complement weights may be zero on forced edges; enumerate matchings on
    // the full support and let the LP discard unusable ones
    auto pool = all_perfect_matchings(g, sup);
    std::vector<Mult> factors;
    for (auto& M : pool) {
        Mult F(g.m(), 0);
        bool ok = true;
        for (int e = 0; e < g.m(); ++e) {
            if (!sup[e]) continue;
            F[e] = 1 - M[e];
            if (F[e] && target[e] == 0) ok = false;
        }
        if (ok) factors.push_back(std::move(F));
    }
    if (factors.empty()) throw DecompError("no 2-factor inside the support");
    auto out = detail::decompose_run(g, target, factors, nullptr, "2-factor decomposition");
    for (auto& t : out.terms)
        if (!is_two_factor(g, t.F)) throw std::logic_error("engine produced a non-2-factor term");
    return out;
}

// Joins constrained by Observation-style degree caps: when z(delta(u)) <= 1
// everywhere, every term of any exact decomposition automatically uses
// exactly one edge at each u in O; this wrapper checks the cap up front and
// asserts the conclusion on the output.
inline ConvexCombination ojoin_with_degree_cap(const Multigraph& g, const EdgeVector& z,
                                               const std::vector<int>& O) {
    auto inc = g.incidence();
    for (int u = 0; u < g.n; ++u) {
        Rat s = 0;
        for (int e : inc[u]) s += z[e];
        if (s > 1)
            throw std::invalid_argument("degree cap violated: z(delta(" + std::to_string(u) +
                                        ")) = " + rat_str(s));
    }
    auto out = decompose_ojoin(g, z, O);
    std::vector<char> in_O(g.n, 0);
    for (int u : O) in_O[u] = 1;
    for (auto& t : out.terms) {
        auto deg = degrees(g, t.F);
        for (int u : O)
            if (deg[u] != 1) throw std::logic_error("degree-capped join uses >1 edge at an odd vertex");
    }
    return out;
}

}  // namespace tourglue
