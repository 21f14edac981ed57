#pragma once

#include <array>
#include <optional>

#include "graph.hpp"

namespace tourglue {

enum class CyclicReject {
    ThetaRange,
    ValueSet,
    Subcubic,
    OneEdgeIncidence,
    DegreeEquality,
    MinCut,
    OddFractionalCycle,
};

struct CyclicError : std::runtime_error {
    CyclicReject clause;
    CyclicError(CyclicReject c, const std::string& msg) : std::runtime_error(msg), clause(c) {}
};

// A validated cyclic point. g is the support graph (every edge has nonzero
// value); to_host maps support edges back to the graph validate_cyclic was
// given. W = 1-edges, the rest carry theta or 1-theta.
struct CyclicPoint {
    Rat theta;
    Multigraph g;
    EdgeVector x;
    std::vector<int> to_host;
    std::vector<char> in_W;

    bool is_cubic() const {
        for (int d : degrees(g, Mult(g.m(), 1)))
            if (d != 3) return false;
        return true;
    }
    bool h_empty() const {
        for (char w : in_W)
            if (!w) return false;
        return true;
    }
    // The unique 1-edge at v, for vertices with exactly one.
    int w_edge_at(int v, const std::vector<std::vector<int>>& inc) const {
        int found = -1;
        for (int e : inc[v])
            if (in_W[e]) {
                if (found != -1) return -1;
                found = e;
            }
        return found;
    }
    // For a cubic vertex: (e, f, g) = 1-edge, theta-edge, (1-theta)-edge.
    // At theta = 1/2 the tie is broken by lower edge index, which is stable
    // under contraction since contraction preserves relative edge order.
    std::array<int, 3> efg_at(int v, const std::vector<std::vector<int>>& inc) const {
        if (inc[v].size() != 3) throw std::logic_error("efg_at needs a cubic vertex");
        int e = -1;
        std::vector<int> fr;
        for (int id : inc[v]) {
            if (in_W[id])
                e = id;
            else
                fr.push_back(id);
        }
        if (e == -1 || fr.size() != 2) throw std::logic_error("efg_at: bad vertex");
        int f = fr[0], gg = fr[1];  // incidence order = edge-index order
        if (x[f] != theta) std::swap(f, gg);
        if (x[f] != theta || x[gg] != 1 - theta) throw std::logic_error("efg_at: bad values");
        return {e, f, gg};
    }
};

inline CyclicPoint validate_cyclic(const Rat& theta, const Multigraph& host,
                                   const EdgeVector& xs) {
    if (!(theta > 0) || !(theta <= rat(1, 2)))
        throw CyclicError(CyclicReject::ThetaRange, "theta must lie in (0, 1/2]");
    CyclicPoint p;
    p.theta = theta;
    p.g.n = host.n;
    for (int e = 0; e < host.m(); ++e) {
        if (xs[e] == 0) continue;
        if (xs[e] != theta && xs[e] != 1 - theta && xs[e] != 1)
            throw CyclicError(CyclicReject::ValueSet,
                              "edge value " + rat_str(xs[e]) + " not in {theta, 1-theta, 1}");
        p.g.add_edge(host.edges[e].first, host.edges[e].second);
        p.x.push_back(xs[e]);
        p.to_host.push_back(e);
        p.in_W.push_back(xs[e] == 1);
    }
    auto deg = degrees(p.g, Mult(p.g.m(), 1));
    for (int v = 0; v < p.g.n; ++v)
        if (deg[v] > 3)
            throw CyclicError(CyclicReject::Subcubic,
                              "vertex " + std::to_string(v) + " has support degree " +
                                  std::to_string(deg[v]));
    auto inc = p.g.incidence();
    for (int v = 0; v < p.g.n; ++v) {
        bool has1 = false;
        for (int e : inc[v]) has1 = has1 || p.in_W[e];
        if (!has1)
            throw CyclicError(CyclicReject::OneEdgeIncidence,
                              "vertex " + std::to_string(v) + " has no 1-edge");
    }
    for (int v = 0; v < p.g.n; ++v) {
        Rat s = 0;
        for (int e : inc[v]) s += p.x[e];
        if (s != 2)
            throw CyclicError(CyclicReject::DegreeEquality,
                              "vertex " + std::to_string(v) + " has x(delta) = " + rat_str(s));
    }
    if (p.g.n >= 2 && min_cut_value(p.g, p.x) < 2)
        throw CyclicError(CyclicReject::MinCut, "a cut has value below 2");
    if (theta < rat(1, 2)) {
        // fractional edges form vertex-disjoint cycles; each must be even
        std::vector<char> seen(p.g.m(), 0);
        for (int e0 = 0; e0 < p.g.m(); ++e0) {
            if (p.in_W[e0] || seen[e0]) continue;
            int len = 0, v = p.g.edges[e0].first, e = e0;
            do {
                seen[e] = 1;
                ++len;
                v = p.g.other_end(e, v);
                int next = -1;
                for (int e2 : inc[v])
                    if (!p.in_W[e2] && e2 != e) next = e2;
                if (next == -1) throw std::logic_error("open fractional path");
                e = next;
            } while (e != e0);
            if (len % 2 != 0)
                throw CyclicError(CyclicReject::OddFractionalCycle,
                                  "fractional cycle of odd length " + std::to_string(len));
        }
    }
    return p;
}

// Contraction of everything outside `keep` in a cyclic point; the contracted
// point is revalidated.
struct CyclicSide {
    CyclicPoint q;
    int pseudo;
    std::vector<int> vmap;      // parent vertex -> side vertex
    std::vector<int> edge_map;  // side edge -> parent edge
};

inline CyclicSide cyclic_contract(const CyclicPoint& p, const std::vector<char>& keep) {
    Contraction c = contract(p.g, keep);
    CyclicSide s;
    s.q = validate_cyclic(p.theta, c.g, pull_through(c.edge_map, p.x));
    if (s.q.g.m() != c.g.m()) throw std::logic_error("contracted support lost edges");
    s.pseudo = c.pseudo;
    s.vmap = std::move(c.vmap);
    s.edge_map = std::move(c.edge_map);
    return s;
}

// Contraction of maximal 1-edge paths to single 1-edges.
struct CubicReduction {
    CyclicPoint reduced;
    std::vector<int> vmap;               // original vertex -> reduced vertex or -1
    std::vector<std::vector<int>> path;  // reduced edge -> original edges (W paths; H singleton)
};

inline CubicReduction to_cubic(const CyclicPoint& p) {
    if (p.h_empty()) throw std::invalid_argument("to_cubic: point has no fractional edges");
    auto inc = p.g.incidence();
    auto wcount = [&](int v) {
        int c = 0;
        for (int e : inc[v]) c += p.in_W[e] ? 1 : 0;
        return c;
    };
    CubicReduction r;
    r.vmap.assign(p.g.n, -1);
    Multigraph rg;
    for (int v = 0; v < p.g.n; ++v)
        if (wcount(v) == 1) r.vmap[v] = rg.n++;
    EdgeVector rx;
    std::vector<char> seen(p.g.m(), 0);
    // 1-edge paths, walked from each endpoint with exactly one 1-edge
    for (int v0 = 0; v0 < p.g.n; ++v0) {
        if (r.vmap[v0] == -1) continue;
        int e = -1;
        for (int id : inc[v0])
            if (p.in_W[id]) e = id;
        if (seen[e]) continue;
        std::vector<int> path;
        int v = v0;
        while (true) {
            seen[e] = 1;
            path.push_back(e);
            v = p.g.other_end(e, v);
            if (r.vmap[v] != -1) break;
            int next = -1;
            for (int id : inc[v])
                if (p.in_W[id] && !seen[id]) next = id;
            if (next == -1) throw std::logic_error("broken 1-edge path");
            e = next;
        }
        rg.add_edge(r.vmap[v0], r.vmap[v]);
        rx.push_back(Rat(1));
        r.path.push_back(std::move(path));
    }
    for (int e = 0; e < p.g.m(); ++e) {
        if (p.in_W[e]) continue;
        rg.add_edge(r.vmap[p.g.edges[e].first], r.vmap[p.g.edges[e].second]);
        rx.push_back(p.x[e]);
        r.path.push_back({e});
    }
    r.reduced = validate_cyclic(p.theta, rg, rx);
    if (!r.reduced.is_cubic()) throw std::logic_error("reduction did not produce a cubic point");
    return r;
}

// Inverse of to_cubic on tours: each reduced 1-edge of multiplicity k >= 1
// becomes its whole path at multiplicity k.
inline Mult expand_tour(const CyclicPoint& orig, const CubicReduction& r, const Mult& F) {
    Mult out(orig.g.m(), 0);
    for (int e = 0; e < r.reduced.g.m(); ++e) {
        if (r.reduced.in_W[e] && F[e] < 1)
            throw std::invalid_argument("expand_tour: tour misses a 1-edge");
        for (int he : r.path[e]) out[he] += F[e];
    }
    if (!is_tour(orig.g, out)) throw std::logic_error("expansion is not a tour");
    return out;
}

enum class CutKind { Vertex, Critical, Degenerate, OtherTight, NonTight };

struct CutClass {
    std::vector<int> U;
    CutKind kind;
};

inline const char* cut_kind_name(CutKind k) {
    switch (k) {
        case CutKind::Vertex: return "vertex";
        case CutKind::Critical: return "critical";
        case CutKind::Degenerate: return "degenerate";
        case CutKind::OtherTight: return "other-tight";
        case CutKind::NonTight: return "non-tight";
    }
    return "?";
}

// Classification of every proper cut with at most 3 support edges, plus the
// vertex (singleton) cuts.
inline std::vector<CutClass> classify_cuts(const CyclicPoint& p) {
    if (!p.is_cubic()) throw std::invalid_argument("classify_cuts needs a cubic point");
    std::vector<CutClass> out;
    for (int v = 0; v < p.g.n; ++v) out.push_back({{v}, CutKind::Vertex});
    for (auto& U : enumerate_cuts_upto(p.g, 3)) {
        std::vector<char> in(p.g.n, 0);
        for (int v : U) in[v] = 1;
        auto cut = cut_edges(p.g, in);
        Rat val = value_sum(p.x, cut);
        CutKind kind;
        if (val != 2) {
            kind = CutKind::NonTight;
        } else if (cut.size() == 3) {
            int nw = 0;
            for (int e : cut) nw += p.in_W[e] ? 1 : 0;
            // endpoint distinctness on both sides
            std::vector<int> endU, endV;
            for (int e : cut) {
                auto [a, b] = p.g.edges[e];
                endU.push_back(in[a] ? a : b);
                endV.push_back(in[a] ? b : a);
            }
            auto distinct = [](std::vector<int> v) {
                std::sort(v.begin(), v.end());
                return std::adjacent_find(v.begin(), v.end()) == v.end();
            };
            bool frac_share = false;  // the two fractional edges share an endpoint
            if (nw == 1) {
                std::vector<int> fu, fv;
                for (int e : cut)
                    if (!p.in_W[e]) {
                        auto [a, b] = p.g.edges[e];
                        fu.push_back(in[a] ? a : b);
                        fv.push_back(in[a] ? b : a);
                    }
                frac_share = (fu[0] == fu[1]) || (fv[0] == fv[1]);
            }
            size_t su = U.size(), sv = p.g.n - U.size();
            if (nw == 1 && distinct(endU) && distinct(endV))
                kind = CutKind::Critical;
            else if (nw == 1 && frac_share && su > 3 && sv > 3)
                kind = CutKind::Degenerate;
            else
                kind = CutKind::OtherTight;
        } else {
            kind = CutKind::OtherTight;
        }
        out.push_back({U, kind});
    }
    return out;
}

// Subset-minimal critical cut, ties broken by size then lexicographic side.
// Returns nullopt for base-case points. Both orientations of every critical
// cut are considered as candidate sides.
inline std::optional<std::vector<int>> minimal_critical_cut(const CyclicPoint& p) {
    std::vector<std::vector<int>> sides;
    for (auto& cc : classify_cuts(p)) {
        if (cc.kind != CutKind::Critical) continue;
        sides.push_back(cc.U);
        std::vector<char> in(p.g.n, 0);
        for (int v : cc.U) in[v] = 1;
        std::vector<int> comp;
        for (int v = 0; v < p.g.n; ++v)
            if (!in[v]) comp.push_back(v);
        sides.push_back(comp);
    }
    if (sides.empty()) return std::nullopt;
    auto subset_of = [](const std::vector<int>& a, const std::vector<int>& b) {
        return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::vector<std::vector<int>> minimal;
    for (auto& s : sides) {
        bool has_smaller = false;
        for (auto& t : sides)
            if (subset_of(t, s)) has_smaller = true;
        if (!has_smaller) minimal.push_back(s);
    }
    auto best = *std::min_element(minimal.begin(), minimal.end(),
                                  [](const std::vector<int>& a, const std::vector<int>& b) {
                                      if (a.size() != b.size()) return a.size() < b.size();
                                      return a < b;
                                  });
    // Observation: contracting the complement of a minimal critical cut
    // leaves no critical cuts. Checked here so violations surface early.
    std::vector<char> keep(p.g.n, 0);
    for (int v : best) keep[v] = 1;
    CyclicSide side = cyclic_contract(p, keep);
    for (auto& cc : classify_cuts(side.q))
        if (cc.kind == CutKind::Critical)
            throw std::logic_error("contracted side of minimal critical cut still has a critical cut");
    return best;
}

}  // namespace tourglue
