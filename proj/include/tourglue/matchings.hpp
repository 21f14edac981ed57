#pragma once

#include <array>
#include <functional>
#include <set>

#include "cyclic.hpp"

namespace tourglue {

// Partition of the 1-edges into five induced matchings such that
//   (i)   each part holds at most one of {e_v, e_w1, e_w2},
//   (ii)  every 3-edge cut meets each part at most once,
//   (iii) every 2-edge cut meets each part an even number of times.
struct MatchingPartition {
    int v;
    std::array<std::vector<int>, 5> parts;  // edge ids, sorted; parts[ev_part] holds e_v
    int ev_part;
};

namespace detail {

// working graph for the partition recursion: edges marked 1-edge or fractional
struct WGraph {
    Multigraph g;
    std::vector<char> in_W;
};

inline std::vector<int> w_edge_of_vertex(const WGraph& w) {
    std::vector<int> we(w.g.n, -1);
    for (int e = 0; e < w.g.m(); ++e) {
        if (!w.in_W[e]) continue;
        auto [a, b] = w.g.edges[e];
        if (we[a] != -1 || we[b] != -1) throw std::logic_error("two 1-edges at a vertex");
        we[a] = we[b] = e;
    }
    for (int v = 0; v < w.g.n; ++v)
        if (we[v] == -1) throw std::logic_error("vertex without a 1-edge");
    return we;
}

inline bool color_graph(const std::vector<std::vector<char>>& adj, int k,
                        std::vector<int>& color) {
    int n = (int)adj.size();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = 0, db = 0;
        for (int j = 0; j < n; ++j) da += adj[a][j], db += adj[b][j];
        if (da != db) return da > db;
        return a < b;
    });
    color.assign(n, -1);
    std::function<bool(int)> go = [&](int idx) {
        if (idx == n) return true;
        int u = order[idx];
        for (int c = 0; c < k; ++c) {
            bool ok = true;
            for (int j = 0; j < n && ok; ++j)
                if (adj[u][j] && color[j] == c) ok = false;
            if (!ok) continue;
            color[u] = c;
            if (go(idx + 1)) return true;
            color[u] = -1;
        }
        return false;
    };
    return go(0);
}

// distinguished triple at r: its 1-edge and the 1-edges of its two
// fractional neighbours (entries may coincide in tiny gadget graphs)
inline std::array<int, 3> one_edge_triple(const WGraph& w, int r,
                                          const std::vector<int>& we) {
    std::array<int, 3> t{we[r], -1, -1};
    auto inc = w.g.incidence();
    int k = 1;
    for (int e : inc[r])
        if (!w.in_W[e]) t[k++] = we[w.g.other_end(e, r)];
    if (k != 3) throw std::logic_error("vertex is not cubic");
    return t;
}

using Parts = std::array<std::vector<int>, 5>;

// base case: no 2-edge cuts and no bad 3-edge cuts; color the conflict
// graph of 1-edges (adjacent when a fractional edge joins their endpoints)
inline Parts partition_base(const WGraph& w, int r) {
    auto we = w_edge_of_vertex(w);
    std::vector<int> wlist, widx(w.g.m(), -1);
    for (int e = 0; e < w.g.m(); ++e)
        if (w.in_W[e]) {
            widx[e] = (int)wlist.size();
            wlist.push_back(e);
        }
    int n = (int)wlist.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int e = 0; e < w.g.m(); ++e) {
        if (w.in_W[e]) continue;
        int a = widx[we[w.g.edges[e].first]], b = widx[we[w.g.edges[e].second]];
        if (a != b) adj[a][b] = adj[b][a] = 1;  // self-loops carry no constraint
    }
    std::vector<int> color;
    if (!color_graph(adj, 4, color) && !color_graph(adj, 5, color))
        throw std::logic_error("conflict graph not 5-colorable");
    Parts parts;
    for (int i = 0; i < n; ++i) parts[color[i]].push_back(wlist[i]);
    // condition (i): the triple's 1-edge conflicts with both neighbours'
    // 1-edges, so only the two neighbours can collide; move one out
    auto t = one_edge_triple(w, r, we);
    if (t[1] != t[2] && t[1] != t[0] && t[2] != t[0] &&
        color[widx[t[1]]] == color[widx[t[2]]]) {
        int dst = -1;
        for (int k = 0; k < 5; ++k)
            if (parts[k].empty()) dst = dst == -1 ? k : dst;
        if (dst == -1) throw std::logic_error("no spare part for the triple fix");
        auto& src = parts[color[widx[t[1]]]];
        src.erase(std::find(src.begin(), src.end(), t[1]));
        parts[dst].push_back(t[1]);
    }
    return parts;
}

struct SideGraph {
    WGraph w;
    std::vector<int> vmap;      // parent vertex -> side vertex or -1
    std::vector<int> edge_map;  // side edge -> parent edge or -1 (gadget)
};

// side of a 2-edge cut: the induced subgraph plus one gadget 1-edge joining
// the two cut endpoints on this side
inline SideGraph two_cut_side(const WGraph& parent, const std::vector<char>& in,
                              const std::vector<int>& cut) {
    SideGraph s;
    s.vmap.assign(parent.g.n, -1);
    for (int v = 0; v < parent.g.n; ++v)
        if (in[v]) s.vmap[v] = s.w.g.n++;
    for (int e = 0; e < parent.g.m(); ++e) {
        auto [a, b] = parent.g.edges[e];
        if (!in[a] || !in[b]) continue;
        s.w.g.add_edge(s.vmap[a], s.vmap[b]);
        s.w.in_W.push_back(parent.in_W[e]);
        s.edge_map.push_back(e);
    }
    std::vector<int> ends;
    for (int e : cut) {
        auto [a, b] = parent.g.edges[e];
        ends.push_back(s.vmap[in[a] ? a : b]);
    }
    if (ends[0] == ends[1]) throw std::logic_error("2-cut endpoints coincide");
    s.w.g.add_edge(ends[0], ends[1]);
    s.w.in_W.push_back(1);
    s.edge_map.push_back(-1);
    return s;
}

// side of a bad 3-edge cut: this side's vertices, the three foreign cut
// endpoints, the cut edges, and a fractional gadget triangle on the
// foreign endpoints
inline SideGraph three_cut_side(const WGraph& parent, const std::vector<char>& in,
                                const std::vector<int>& cut) {
    SideGraph s;
    s.vmap.assign(parent.g.n, -1);
    std::vector<char> keep = in;
    for (int e : cut) {
        auto [a, b] = parent.g.edges[e];
        keep[in[a] ? b : a] = 1;
    }
    for (int v = 0; v < parent.g.n; ++v)
        if (keep[v]) s.vmap[v] = s.w.g.n++;
    std::set<int> cutset(cut.begin(), cut.end());
    for (int e = 0; e < parent.g.m(); ++e) {
        auto [a, b] = parent.g.edges[e];
        bool internal = in[a] && in[b];
        if (!internal && !cutset.count(e)) continue;
        s.w.g.add_edge(s.vmap[a], s.vmap[b]);
        s.w.in_W.push_back(parent.in_W[e]);
        s.edge_map.push_back(e);
    }
    std::vector<int> fr;
    for (int e : cut) {
        auto [a, b] = parent.g.edges[e];
        fr.push_back(s.vmap[in[a] ? b : a]);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            s.w.g.add_edge(fr[i], fr[j]);
            s.w.in_W.push_back(0);
            s.edge_map.push_back(-1);
        }
    return s;
}

inline Parts partition_rec(const WGraph& w, int r);

inline Parts recurse_side(const SideGraph& s, int parent_r) {
    int r = parent_r >= 0 && s.vmap[parent_r] != -1 ? s.vmap[parent_r] : 0;
    return partition_rec(s.w, r);
}

inline int part_of(const Parts& p, int e) {
    for (int k = 0; k < 5; ++k)
        if (std::find(p[k].begin(), p[k].end(), e) != p[k].end()) return k;
    throw std::logic_error("edge missing from partition");
}

inline Parts partition_rec(const WGraph& w, int r) {
    auto cuts = enumerate_cuts_upto(w.g, 3);
    // 2-edge cuts first
    for (auto& U : cuts) {
        std::vector<char> in(w.g.n, 0);
        for (int v : U) in[v] = 1;
        auto cut = cut_edges(w.g, in);
        if (cut.size() != 2) continue;
        for (int e : cut)
            if (!w.in_W[e]) throw std::logic_error("fractional edge in a 2-edge cut");
        std::vector<char> out(w.g.n, 1);
        for (int v : U) out[v] = 0;
        SideGraph s1 = two_cut_side(w, in, cut);
        SideGraph s2 = two_cut_side(w, out, cut);
        int r1 = in[r] ? s1.vmap[r] : 0, r2 = in[r] ? 0 : s2.vmap[r];
        Parts p1 = partition_rec(s1.w, r1);
        Parts p2 = partition_rec(s2.w, r2);
        int gadget1 = s1.w.g.m() - 1, gadget2 = s2.w.g.m() - 1;
        int a = part_of(p1, gadget1), b = part_of(p2, gadget2);
        // align the gadget parts; both cut edges replace the gadgets there
        std::vector<int> sigma(5, -1);  // side-2 part -> lifted part
        sigma[b] = a;
        {
            int next = 0;
            for (int k = 0; k < 5; ++k) {
                if (k == b) continue;
                while (next == a) ++next;
                sigma[k] = next++;
            }
        }
        Parts out_parts;
        for (int k = 0; k < 5; ++k)
            for (int e : p1[k])
                if (s1.edge_map[e] != -1) out_parts[k].push_back(s1.edge_map[e]);
        for (int k = 0; k < 5; ++k)
            for (int e : p2[k])
                if (s2.edge_map[e] != -1) out_parts[sigma[k]].push_back(s2.edge_map[e]);
        out_parts[a].push_back(cut[0]);
        out_parts[a].push_back(cut[1]);
        return out_parts;
    }
    // bad 3-edge cuts: both sides with at least 4 vertices
    for (auto& U : cuts) {
        if (U.size() < 4 || w.g.n - U.size() < 4) continue;
        std::vector<char> in(w.g.n, 0);
        for (int v : U) in[v] = 1;
        auto cut = cut_edges(w.g, in);
        if (cut.size() != 3) continue;
        // with no 2-edge cuts left and no critical cuts, a bad 3-cut is all
        // 1-edges (a fractional pair sharing an endpoint would expose a
        // 2-edge cut; distinct endpoints would make the cut critical)
        for (int e : cut)
            if (!w.in_W[e]) throw std::logic_error("fractional edge in a bad 3-edge cut");
        std::vector<char> out(w.g.n, 1);
        for (int v : U) out[v] = 0;
        SideGraph s1 = three_cut_side(w, in, cut);
        SideGraph s2 = three_cut_side(w, out, cut);
        int r1 = in[r] ? s1.vmap[r] : 0, r2 = in[r] ? 0 : s2.vmap[r];
        Parts p1 = partition_rec(s1.w, r1);
        Parts p2 = partition_rec(s2.w, r2);
        // pin the parts holding the shared cut edges, pair the rest in order
        std::vector<int> sigma(5, -1);
        std::vector<char> used(5, 0);
        for (int e : cut) {
            int se1 = -1, se2 = -1;
            for (int i = 0; i < s1.w.g.m(); ++i)
                if (s1.edge_map[i] == e) se1 = i;
            for (int i = 0; i < s2.w.g.m(); ++i)
                if (s2.edge_map[i] == e) se2 = i;
            int a = part_of(p1, se1), b = part_of(p2, se2);
            if (sigma[b] != -1 && sigma[b] != a)
                throw std::logic_error("inconsistent cut-edge alignment");
            sigma[b] = a;
            used[a] = 1;
        }
        {
            int next = 0;
            for (int k = 0; k < 5; ++k) {
                if (sigma[k] != -1) continue;
                while (used[next]) ++next;
                sigma[k] = next;
                used[next] = 1;
            }
        }
        Parts out_parts;
        std::array<std::set<int>, 5> dedupe;
        for (int k = 0; k < 5; ++k)
            for (int e : p1[k])
                if (s1.edge_map[e] != -1) dedupe[k].insert(s1.edge_map[e]);
        for (int k = 0; k < 5; ++k)
            for (int e : p2[k])
                if (s2.edge_map[e] != -1) dedupe[sigma[k]].insert(s2.edge_map[e]);
        for (int k = 0; k < 5; ++k)
            out_parts[k].assign(dedupe[k].begin(), dedupe[k].end());
        return out_parts;
    }
    return partition_base(w, r);
}

}  // namespace detail

inline bool verify_partition(const CyclicPoint& p, int v, const MatchingPartition& mp,
                             std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<int> owner(p.g.m(), -1);
    for (int k = 0; k < 5; ++k)
        for (int e : mp.parts[k]) {
            if (e < 0 || e >= p.g.m() || !p.in_W[e]) return fail("part holds a non-1-edge");
            if (owner[e] != -1) return fail("edge in two parts");
            owner[e] = k;
        }
    for (int e = 0; e < p.g.m(); ++e)
        if (p.in_W[e] && owner[e] == -1) return fail("1-edge left out of the partition");
    // each part is an induced matching: vertex-disjoint, and no edge of the
    // graph joins endpoints of two distinct part members
    std::vector<int> vpart(p.g.n, -1);
    for (int e = 0; e < p.g.m(); ++e) {
        if (!p.in_W[e] || owner[e] == -1) continue;
        auto [a, b] = p.g.edges[e];
        if (vpart[a] != -1 || vpart[b] != -1) return fail("two part edges share a vertex");
        vpart[a] = vpart[b] = owner[e];
    }
    std::vector<int> vedge(p.g.n, -1);
    for (int e = 0; e < p.g.m(); ++e)
        if (p.in_W[e]) {
            vedge[p.g.edges[e].first] = e;
            vedge[p.g.edges[e].second] = e;
        }
    for (int e = 0; e < p.g.m(); ++e) {
        auto [a, b] = p.g.edges[e];
        if (vpart[a] == -1 || vpart[a] != vpart[b]) continue;
        if (vedge[a] != vedge[b]) return fail("part is not an induced matching");
    }
    // condition (i)
    auto inc = p.g.incidence();
    auto [ev, fv, gv] = p.efg_at(v, inc);
    int w1 = p.g.other_end(fv, v), w2 = p.g.other_end(gv, v);
    std::set<int> triple{ev, vedge[w1], vedge[w2]};
    auto forced_pair = [&](int a, int b) {
        // a 2-edge cut must stay within one part, overriding the triple rule
        Mult rest(p.g.m(), 1);
        rest[a] = rest[b] = 0;
        return !is_spanning_connected(p.g, rest);
    };
    for (int k = 0; k < 5; ++k) {
        std::vector<int> hit;
        for (int e : triple)
            if (owner[e] == k) hit.push_back(e);
        if (hit.size() > 2 || (hit.size() == 2 && !forced_pair(hit[0], hit[1])))
            return fail("a part holds two of the distinguished 1-edges");
    }
    if (owner[ev] != mp.ev_part) return fail("ev_part index is wrong");
    // conditions (ii) and (iii) over all proper cuts with <= 3 edges
    for (auto& U : enumerate_cuts_upto(p.g, 3)) {
        std::vector<char> in(p.g.n, 0);
        for (int u : U) in[u] = 1;
        auto cut = cut_edges(p.g, in);
        std::array<int, 5> hits{};
        for (int e : cut)
            if (owner[e] != -1) ++hits[owner[e]];
        for (int k = 0; k < 5; ++k) {
            if (cut.size() == 3 && hits[k] > 1)
                return fail("a 3-edge cut meets a part twice");
            if (cut.size() == 2 && hits[k] % 2 != 0)
                return fail("a 2-edge cut meets a part oddly");
        }
    }
    return true;
}

inline MatchingPartition partition_induced_matchings(const CyclicPoint& p, int v) {
    if (!p.is_cubic()) throw std::invalid_argument("partition needs a cubic point");
    for (auto& cc : classify_cuts(p))
        if (cc.kind == CutKind::Critical)
            throw std::invalid_argument("partition needs a point without critical cuts");
    detail::WGraph w{p.g, p.in_W};
    detail::Parts parts = detail::partition_rec(w, v);
    MatchingPartition mp;
    mp.v = v;
    auto inc = p.g.incidence();
    int ev = p.w_edge_at(v, inc);
    int evp = detail::part_of(parts, ev);
    std::swap(parts[0], parts[evp]);
    for (auto& part : parts) std::sort(part.begin(), part.end());
    mp.parts = std::move(parts);
    mp.ev_part = 0;
    std::string why;
    if (!verify_partition(p, v, mp, &why))
        throw std::logic_error("constructed partition fails verification: " + why);
    return mp;
}

}  // namespace tourglue
