#pragma once

#include <set>

#include "cyclic.hpp"
#include "decomp.hpp"

namespace tourglue {

// P(v, M, Lambda): x written as connectors with degree-of-v masses
// (Lambda, 1-2Lambda, Lambda) at degrees (1, 2, 3), every M-endpoint at
// degree exactly 2 in every term, and every term minus its delta(v) edges
// connected on V minus v.
struct PropertyPSpec {
    int v;
    std::vector<int> M;  // induced matching of 1-edges
    Rat Lambda;
};

inline bool verify_property_P(const ConvexCombination& c, const CyclicPoint& p,
                              const PropertyPSpec& spec, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::string inner;
    if (!verify_convex_combination(p.g, c, p.x, VerifyMode::Equal, &inner))
        return fail("value mismatch: " + inner);
    std::vector<char> mend(p.g.n, 0);
    for (int e : spec.M) {
        mend[p.g.edges[e].first] = 1;
        mend[p.g.edges[e].second] = 1;
    }
    std::vector<char> keep(p.g.n, 1);
    keep[spec.v] = 0;
    Rat d1 = 0, d2 = 0, d3 = 0;
    for (const auto& t : c.terms) {
        for (int m : t.F)
            if (m > 1) return fail("doubled edge in a connector");
        for (int e = 0; e < p.g.m(); ++e)
            if (p.in_W[e] && t.F[e] != 1) return fail("term misses a 1-edge");
        if (!is_spanning_connected(p.g, t.F)) return fail("term is not a connector");
        auto deg = degrees(p.g, t.F);
        for (int u = 0; u < p.g.n; ++u)
            if (mend[u] && deg[u] != 2) return fail("matching endpoint off degree 2");
        if (deg[spec.v] == 1)
            d1 += t.lambda;
        else if (deg[spec.v] == 2)
            d2 += t.lambda;
        else if (deg[spec.v] == 3)
            d3 += t.lambda;
        else
            return fail("bad degree at v");
        Mult rest = t.F;
        for (int e = 0; e < p.g.m(); ++e) {
            auto [a, b] = p.g.edges[e];
            if (a == spec.v || b == spec.v) rest[e] = 0;
        }
        if (!is_connected_on(p.g, rest, keep))
            return fail("term minus delta(v) disconnects V minus v");
    }
    if (d1 != spec.Lambda || d3 != spec.Lambda || d2 != 1 - 2 * spec.Lambda)
        return fail("degree masses at v are (" + rat_str(d1) + ", " + rat_str(d2) + ", " +
                    rat_str(d3) + "), expected Lambda = " + rat_str(spec.Lambda));
    return true;
}

namespace detail {

// peel terms of total multiplier `want` off `from` (largest first, splitting
// the boundary term) and return them; `from` keeps the rest
inline std::vector<Term> take_mass(std::vector<Term>& from, Rat want) {
    std::sort(from.begin(), from.end(),
              [](const Term& a, const Term& b) { return a.lambda > b.lambda; });
    std::vector<Term> taken, left;
    for (auto& t : from) {
        if (want == 0) {
            left.push_back(std::move(t));
        } else if (t.lambda <= want) {
            want -= t.lambda;
            taken.push_back(std::move(t));
        } else {
            taken.push_back({want, t.F});
            left.push_back({t.lambda - want, std::move(t.F)});
            want = 0;
        }
    }
    if (want != 0) throw std::logic_error("family too light for the requested mass");
    from = std::move(left);
    return taken;
}

// trim the mass of connectors with degree 1 at protected vertices: a
// degree-1 and a degree-3 term at u can trade a fractional edge of delta(u)
// against some other fractional edge, turning both into degree-2 terms
inline void calm_exchange(const Multigraph& g, const RainbowSpec& rs,
                          const std::vector<char>& in_W, ConvexCombination& c,
                          const std::vector<int>& calm) {
    if (calm.empty()) return;
    auto inc = g.incidence();
    auto deg_at = [&](const Mult& F, int u) {
        int d = 0;
        for (int e : inc[u]) d += F[e];
        return d;
    };
    auto calm_hits = [&](const Mult& F) {
        int h = 0;
        for (int u : calm) h += deg_at(F, u) == 1;
        return h;
    };
    for (int guard = 0; guard < 500; ++guard) {
        bool progress = false;
        for (int u : calm) {
            for (size_t a = 0; a < c.terms.size() && !progress; ++a) {
                if (deg_at(c.terms[a].F, u) != 1) continue;
                for (size_t b = 0; b < c.terms.size() && !progress; ++b) {
                    if (deg_at(c.terms[b].F, u) != 3) continue;
                    for (int h : inc[u]) {
                        if (progress) break;
                        if (in_W[h] || !c.terms[b].F[h] || c.terms[a].F[h]) continue;
                        for (int e = 0; e < g.m() && !progress; ++e) {
                            if (in_W[e] || e == h) continue;
                            auto [s1, s2] = g.edges[e];
                            if (s1 == u || s2 == u) continue;
                            if (!c.terms[a].F[e] || c.terms[b].F[e]) continue;
                            Mult fa = c.terms[a].F, fb = c.terms[b].F;
                            fa[h] = 1, fa[e] = 0;
                            fb[h] = 0, fb[e] = 1;
                            if (!is_rainbow_vtree(g, rs, fa) || !is_rainbow_vtree(g, rs, fb))
                                continue;
                            int delta = calm_hits(fa) + calm_hits(fb) -
                                        calm_hits(c.terms[a].F) - calm_hits(c.terms[b].F);
                            if (delta >= 0) continue;
                            Rat take = std::min(c.terms[a].lambda, c.terms[b].lambda);
                            c.terms[a].lambda -= take;
                            c.terms[b].lambda -= take;
                            c.terms.push_back({take, std::move(fa)});
                            c.terms.push_back({take, std::move(fb)});
                            std::erase_if(c.terms,
                                          [](const Term& t) { return t.lambda == 0; });
                            progress = true;
                        }
                    }
                }
            }
        }
        if (!progress) break;
    }
    merge_terms(c);
}

}  // namespace detail

inline ConvexCombination connectors_with_P(const CyclicPoint& p, const PropertyPSpec& spec,
                                           const std::vector<int>& calm = {}) {
    if (!p.is_cubic()) throw std::invalid_argument("connectors need a cubic point");
    if (spec.Lambda < 0 || spec.Lambda > p.theta)
        throw std::invalid_argument("Lambda must lie in [0, theta]");
    std::set<int> M(spec.M.begin(), spec.M.end());
    for (int e : M)
        if (!p.in_W[e]) throw std::invalid_argument("M must consist of 1-edges");
    auto inc = p.g.incidence();
    auto [ev, f, g] = p.efg_at(spec.v, inc);
    int w1 = p.g.other_end(f, spec.v), w2 = p.g.other_end(g, spec.v);
    int ew1 = p.w_edge_at(w1, inc), ew2 = p.w_edge_at(w2, inc);
    if (M.count(ev)) {
        if (spec.Lambda != 0)
            throw std::invalid_argument("Lambda must be 0 when e_v is in M");
    } else if (spec.Lambda != 0 && M.count(ew1) && M.count(ew2)) {
        // any shift of f or g would break degree 2 at an M-endpoint
        throw std::invalid_argument("M pins both fractional neighbours of v");
    }

    RainbowSpec rs;
    rs.v = spec.v;
    for (int e : M)
        for (int s : {p.g.edges[e].first, p.g.edges[e].second}) {
            std::vector<int> part;
            for (int id : inc[s])
                if (!p.in_W[id]) part.push_back(id);
            rs.parts.push_back(std::move(part));
        }
    ConvexCombination c = decompose_rainbow(p.g, p.x, rs);
    std::vector<int> guarded;
    for (int u : calm)
        if (u != spec.v) guarded.push_back(u);
    detail::calm_exchange(p.g, rs, p.in_W, c, guarded);

    if (spec.Lambda != 0) {
        // every v-tree holds e_v plus exactly one of {f, g}
        std::vector<Term> tf, tg;
        for (auto& t : c.terms) (t.F[f] ? tf : tg).push_back(std::move(t));
        bool shift_g = M.count(ew1) > 0;  // keep w1 untouched when e_w1 is in M
        std::vector<Term> from_f = detail::take_mass(tf, spec.Lambda);
        std::vector<Term> from_g = detail::take_mass(tg, spec.Lambda);
        for (auto& t : from_f) t.F[shift_g ? g : f] += shift_g ? 1 : -1;
        for (auto& t : from_g) t.F[shift_g ? g : f] += shift_g ? -1 : 1;
        c.terms.clear();
        for (auto* grp : {&tf, &tg, &from_f, &from_g})
            for (auto& t : *grp) c.terms.push_back(std::move(t));
        merge_terms(c);
    }
    canonical_order(c);
    std::string why;
    if (!verify_property_P(c, p, spec, &why))
        throw std::logic_error("connector combination fails property P: " + why);
    return c;
}

}  // namespace tourglue
