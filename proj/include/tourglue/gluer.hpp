#pragma once

#include "connectors.hpp"
#include "matchings.hpp"
#include "parity.hpp"

namespace tourglue {

struct ZetaOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ProfileMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// tour patterns around a vertex, as multiplicities of (e, f, g):
// e = 1-edge, f = theta-edge, g = (1-theta)-edge
inline constexpr std::array<std::array<int, 3>, 8> kPatterns{{{2, 0, 0},
                                                              {1, 1, 0},
                                                              {1, 0, 1},
                                                              {2, 2, 0},
                                                              {2, 0, 2},
                                                              {2, 1, 1},
                                                              {1, 2, 1},
                                                              {1, 1, 2}}};

inline const char* pattern_name(int i) {
    static const char* names[8] = {"{2e}",    "{e,f}",    "{e,g}",    "{2e,2f}",
                                   "{2e,2g}", "{2e,f,g}", "{e,2f,g}", "{e,f,2g}"};
    return names[i];
}

using PatternProfile = std::array<Rat, 8>;

inline int pattern_of(const CyclicPoint& p, const Mult& F, int u,
                      const std::vector<std::vector<int>>& inc) {
    auto [e, f, g] = p.efg_at(u, inc);
    std::array<int, 3> c{F[e], F[f], F[g]};
    for (int i = 0; i < 8; ++i)
        if (kPatterns[i] == c) return i;
    throw std::runtime_error("tour is not handpicked at vertex " + std::to_string(u) +
                             ": delta multiplicities (" + std::to_string(c[0]) + ", " +
                             std::to_string(c[1]) + ", " + std::to_string(c[2]) + ")");
}

inline PatternProfile profile_of(const CyclicPoint& p, const ConvexCombination& c, int u) {
    auto inc = p.g.incidence();
    PatternProfile pr{};
    for (const auto& t : c.terms) pr[pattern_of(p, t.F, u, inc)] += t.lambda;
    return pr;
}

inline EdgeVector phi2(const Multigraph& g, const ConvexCombination& c) {
    EdgeVector q(g.m(), Rat(0));
    for (const auto& t : c.terms)
        for (int e = 0; e < g.m(); ++e)
            if (t.F[e] == 2) q[e] += t.lambda;
    return q;
}

// the cyclic construction's value vector and its doubling frequencies
inline EdgeVector cyclic_target_value(const CyclicPoint& p) {
    const Rat alpha = rat(1, 5);
    EdgeVector y(p.g.m());
    for (int e = 0; e < p.g.m(); ++e)
        y[e] = p.in_W[e] ? Rat(rat(3, 2) - alpha * p.theta / 2) : Rat(rat(3, 2) * p.x[e]);
    return y;
}

inline EdgeVector cyclic_target_phi2(const CyclicPoint& p) {
    const Rat alpha = rat(1, 5);
    EdgeVector q(p.g.m());
    for (int e = 0; e < p.g.m(); ++e)
        q[e] = p.in_W[e] ? Rat(rat(1, 2) - alpha * p.theta / 2) : Rat(p.x[e] * p.x[e] / 2);
    return q;
}

// solution set of the eight pattern equations: three doubled-edge
// frequencies, three edge values, normalization, and phi({2e}) = zeta
struct PatternSystem {
    bool feasible = false;
    int rank = 0;
    std::array<Rat, 8> particular{};
    std::vector<std::array<Rat, 8>> null_basis;
};

inline PatternSystem solve_pattern_system(const std::array<Rat, 3>& y,
                                          const std::array<Rat, 3>& q, const Rat& zeta) {
    // rows: q_e, q_f, q_g, y_e, y_f, y_g, sum, zeta
    std::vector<std::vector<Rat>> a(8, std::vector<Rat>(9, Rat(0)));
    for (int j = 0; j < 8; ++j) {
        for (int k = 0; k < 3; ++k) {
            if (kPatterns[j][k] == 2) a[k][j] = 1;
            a[3 + k][j] = kPatterns[j][k];
        }
        a[6][j] = 1;
    }
    a[7][0] = 1;
    for (int k = 0; k < 3; ++k) {
        a[k][8] = q[k];
        a[3 + k][8] = y[k];
    }
    a[6][8] = 1;
    a[7][8] = zeta;
    // Gauss-Jordan
    PatternSystem out;
    std::vector<int> pivot_col(8, -1);
    int row = 0;
    for (int col = 0; col < 8 && row < 8; ++col) {
        int pr = -1;
        for (int r = row; r < 8; ++r)
            if (a[r][col] != 0) {
                pr = r;
                break;
            }
        if (pr == -1) continue;
        std::swap(a[row], a[pr]);
        Rat d = a[row][col];
        for (int j = col; j <= 8; ++j) a[row][j] /= d;
        for (int r = 0; r < 8; ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (int j = col; j <= 8; ++j) a[r][j] -= f * a[row][j];
        }
        pivot_col[row] = col;
        ++row;
    }
    out.rank = row;
    for (int r = row; r < 8; ++r)
        if (a[r][8] != 0) return out;  // infeasible
    out.feasible = true;
    std::vector<char> is_pivot(8, 0);
    for (int r = 0; r < row; ++r) is_pivot[pivot_col[r]] = 1;
    for (int r = 0; r < row; ++r) out.particular[pivot_col[r]] = a[r][8];
    for (int col = 0; col < 8; ++col) {
        if (is_pivot[col]) continue;
        std::array<Rat, 8> dir{};
        dir[col] = 1;
        for (int r = 0; r < row; ++r) dir[pivot_col[r]] = -a[r][col];
        out.null_basis.push_back(dir);
    }
    return out;
}

// tours of a base-case point with value 3/2 - alpha*theta/2 on 1-edges and
// (3/2)x on fractional edges, doubling frequencies 1/2 - alpha*theta/2 and
// x^2/2, and phi({2e_v}) = zeta. bias = -1/0/+1 steers the one free profile
// coordinate at v to its extremes for glue repair. Vertices in `calm` get
// their degree-1 connector mass minimized so that phi({2e_u}) stays small
// enough to glue over once they become measurement points.
inline ConvexCombination base_case_tours(const CyclicPoint& p, int v, const Rat& zeta,
                                         int bias = 0, const std::vector<int>& calm = {}) {
    const Rat alpha = rat(1, 5);
    if (zeta < 0) throw ZetaOutOfRange("zeta = " + rat_str(zeta) + " is negative");
    MatchingPartition mp = partition_induced_matchings(p, v);
    auto inc = p.g.incidence();
    auto [ev, fe, ge] = p.efg_at(v, inc);
    int ew1 = p.w_edge_at(p.g.other_end(fe, v), inc);
    int ew2 = p.w_edge_at(p.g.other_end(ge, v), inc);
    // groups able to carry the degree shift at v: the shift is illegal when
    // the matching holds the 1-edge joining both fractional neighbours
    std::vector<char> can_shift(5, 0);
    int nshift = 0;
    for (int i = 1; i < 5; ++i) {
        auto has = [&](int e) {
            return std::find(mp.parts[i].begin(), mp.parts[i].end(), e) !=
                   mp.parts[i].end();
        };
        if (!(has(ew1) && has(ew2))) can_shift[i] = 1, ++nshift;
    }
    Rat total_shift = 2 * zeta / alpha;  // phi({2e_v}) = sum_i alpha * Lambda_i / 2
    if (zeta > 0 && (nshift == 0 || total_shift > Rat(nshift) * p.theta))
        throw ZetaOutOfRange("zeta = " + rat_str(zeta) + " exceeds capacity " +
                             rat_str(Rat(nshift) * p.theta * alpha / 2) +
                             " at vertex " + std::to_string(v));
    Rat lam_each = nshift ? total_shift / nshift : Rat(0);

    ConvexCombination out;
    for (int i = 0; i < 5; ++i) {
        Rat Lam = (i > 0 && can_shift[i]) ? lam_each : Rat(0);
        PropertyPSpec ps{v, mp.parts[i], Lam};
        ConvexCombination conns = connectors_with_P(p, ps, calm);
        ParityVector z = parity_vector(p, mp.parts[i]);
        for (auto& t : conns.terms) {
            ConvexCombination joins;
            if (bias == 0) {
                joins = parity_correct(p, t.F, z);
            } else {
                auto degT = degrees(p.g, t.F);
                std::vector<int> O;
                for (int u = 0; u < p.g.n; ++u)
                    if (degT[u] % 2) O.push_back(u);
                // steer only where the joint law at v is free: trees with
                // delta(v) = {e, f}; push the weight of an empty join at v
                bool ef_tree = degT[v] == 2 && t.F[fe] == 1;
                auto cost = [&, ef_tree](const Mult& J) {
                    if (!ef_tree) return Rat(0);
                    bool empty_at_v = J[ev] == 0 && J[fe] == 0 && J[ge] == 0;
                    return empty_at_v ? Rat(bias) : Rat(0);
                };
                joins = decompose_ojoin_biased(p.g, z.z, O, cost);
                for (auto& j : joins.terms) {
                    auto degJ = degrees(p.g, j.F);
                    for (int u : O)
                        if (degJ[u] != 1)
                            throw std::logic_error("degree cap broken in biased join");
                }
            }
            for (auto& j : joins.terms) {
                Term term;
                term.lambda = alpha * t.lambda * j.lambda;
                term.F = t.F;
                for (int e = 0; e < p.g.m(); ++e) term.F[e] += j.F[e];
                out.terms.push_back(std::move(term));
            }
        }
    }
    merge_terms(out);
    canonical_order(out);

    EdgeVector y = cyclic_target_value(p), q = cyclic_target_phi2(p);
    std::string why;
    if (!verify_convex_combination(p.g, out, y, VerifyMode::Equal, &why))
        throw std::logic_error("base-case value off target: " + why);
    EdgeVector q2 = phi2(p.g, out);
    for (int e = 0; e < p.g.m(); ++e)
        if (q2[e] != q[e])
            throw std::logic_error("base-case doubling frequency off target at edge " +
                                   std::to_string(e));
    PatternProfile pr = profile_of(p, out, v);  // also asserts handpickedness at v
    if (pr[0] != zeta)
        throw std::logic_error("phi({2e_v}) = " + rat_str(pr[0]) + ", wanted " + rat_str(zeta));
    std::vector<char> keep(p.g.n, 1);
    keep[v] = 0;
    for (auto& t : out.terms) {
        for (int m : t.F)
            if (m > 2) throw std::logic_error("tour uses an edge more than twice");
        if (!is_tour(p.g, t.F)) throw std::logic_error("base-case term is not a tour");
        for (int u = 0; u < p.g.n; ++u) pattern_of(p, t.F, u, inc);
        Mult rest = t.F;
        for (int e = 0; e < p.g.m(); ++e) {
            auto [a, b] = p.g.edges[e];
            if (a == v || b == v) rest[e] = 0;
        }
        if (!is_connected_on(p.g, rest, keep))
            throw std::logic_error("base-case term disconnects V minus v");
    }
    return out;
}

// merge two side combinations over a critical cut: pair equal patterns at
// the pseudovertices and splice each pair into one tour of the parent.
// sU is the side whose terms must stay connected off its pseudovertex.
inline ConvexCombination glue_over_cut(const CyclicPoint& parent, const CyclicSide& sU,
                                       const ConvexCombination& cU, const CyclicSide& sUb,
                                       const ConvexCombination& cUb) {
    auto incU = sU.q.g.incidence();
    auto incB = sUb.q.g.incidence();
    auto tU = sU.q.efg_at(sU.pseudo, incU);
    auto tB = sUb.q.efg_at(sUb.pseudo, incB);
    for (int k = 0; k < 3; ++k)
        if (sU.edge_map[tU[k]] != sUb.edge_map[tB[k]])
            throw std::logic_error("cut-edge roles disagree between the sides");
    PatternProfile pU = profile_of(sU.q, cU, sU.pseudo);
    PatternProfile pB = profile_of(sUb.q, cUb, sUb.pseudo);
    for (int k = 0; k < 8; ++k)
        if (pU[k] != pB[k])
            throw ProfileMismatch("pattern " + std::string(pattern_name(k)) +
                                  " has mass " + rat_str(pU[k]) + " on the cut side and " +
                                  rat_str(pB[k]) + " on the rest");
    // connectivity of the contracted side off its pseudovertex
    std::vector<char> keep(sU.q.g.n, 1);
    keep[sU.pseudo] = 0;
    for (auto& t : cU.terms) {
        Mult rest = t.F;
        for (int e = 0; e < sU.q.g.m(); ++e) {
            auto [a, b] = sU.q.g.edges[e];
            if (a == sU.pseudo || b == sU.pseudo) rest[e] = 0;
        }
        if (!is_connected_on(sU.q.g, rest, keep))
            throw ProfileMismatch("a cut-side tour disconnects off the pseudovertex");
    }
    std::vector<char> is_cut(parent.g.m(), 0);
    for (int k = 0; k < 3; ++k) is_cut[sU.edge_map[tU[k]]] = 1;
    // pattern buckets, largest multiplier first
    std::array<std::vector<Term>, 8> bU, bB;
    {
        auto inc = incU;
        for (auto& t : cU.terms) bU[pattern_of(sU.q, t.F, sU.pseudo, inc)].push_back(t);
    }
    for (auto& t : cUb.terms) bB[pattern_of(sUb.q, t.F, sUb.pseudo, incB)].push_back(t);
    ConvexCombination out;
    for (int k = 0; k < 8; ++k) {
        auto bigger = [](const Term& a, const Term& b) { return a.lambda > b.lambda; };
        std::sort(bU[k].begin(), bU[k].end(), bigger);
        std::sort(bB[k].begin(), bB[k].end(), bigger);
        size_t i = 0, j = 0;
        Rat ri = 0, rj = 0;
        while (i < bU[k].size() && j < bB[k].size()) {
            if (ri == 0) ri = bU[k][i].lambda;
            if (rj == 0) rj = bB[k][j].lambda;
            Rat take = std::min(ri, rj);
            Term merged;
            merged.lambda = take;
            merged.F.assign(parent.g.m(), 0);
            for (int e = 0; e < sU.q.g.m(); ++e) merged.F[sU.edge_map[e]] += bU[k][i].F[e];
            for (int e = 0; e < sUb.q.g.m(); ++e) {
                int pe = sUb.edge_map[e];
                if (is_cut[pe]) {
                    if (merged.F[pe] != bB[k][j].F[e])
                        throw std::logic_error("cut multiplicities disagree in a pair");
                } else {
                    merged.F[pe] += bB[k][j].F[e];
                }
            }
            if (!is_tour(parent.g, merged.F))
                throw std::logic_error("glued term is not a tour");
            out.terms.push_back(std::move(merged));
            ri -= take;
            rj -= take;
            if (ri == 0) ++i;
            if (rj == 0) ++j;
        }
        if (i < bU[k].size() || j < bB[k].size())
            throw std::logic_error("pattern masses drifted during pairing");
    }
    merge_terms(out);
    canonical_order(out);
    std::string why;
    if (!verify_convex_combination(parent.g, out, cyclic_target_value(parent),
                                   VerifyMode::Equal, &why))
        throw std::logic_error("glued value off target: " + why);
    return out;
}

namespace detail {

// want_v / want_zeta ask for phi({2e_{want_v}}) = want_zeta; honored exactly
// on base cases, and re-targeted to the gluing pseudovertex on glued points
// so the measured zeta* stays inside the base-case capacity. calm carries
// the pseudovertices of enclosing cuts, which later become measurement
// points and must keep small phi({2e}).
inline ConvexCombination solve_cyclic_cubic(const CyclicPoint& p, int want_v,
                                            const Rat& want_zeta,
                                            const std::vector<int>& calm = {}) {
    auto mc = minimal_critical_cut(p);
    if (!mc) return base_case_tours(p, want_v, want_zeta, 0, calm);
    std::vector<char> keepU(p.g.n, 0), keepB(p.g.n, 1);
    for (int v : *mc) keepU[v] = 1, keepB[v] = 0;
    CyclicSide sU = cyclic_contract(p, keepU);
    CyclicSide sUb = cyclic_contract(p, keepB);
    auto map_calm = [&](const CyclicSide& s) {
        std::set<int> out;
        for (int u : calm)
            if (s.vmap[u] != s.pseudo) out.insert(s.vmap[u]);
        return out;
    };
    std::set<int> calmB = map_calm(sUb);
    calmB.insert(sUb.pseudo);
    ConvexCombination cUb = solve_cyclic_cubic(sUb.q, sUb.pseudo, Rat(0),
                                               {calmB.begin(), calmB.end()});
    PatternProfile target = profile_of(sUb.q, cUb, sUb.pseudo);
    Rat zeta = target[0];
    std::set<int> calmU = map_calm(sU);
    std::vector<int> calmUv(calmU.begin(), calmU.end());
    ConvexCombination cU = base_case_tours(sU.q, sU.pseudo, zeta, 0, calmUv);
    PatternProfile got = profile_of(sU.q, cU, sU.pseudo);
    bool match = true;
    for (int k = 0; k < 8; ++k) match = match && got[k] == target[k];
    if (!match) {
        // the mismatch lies along the one free profile direction: rebuild at
        // both extremes and mix exactly
        ConvexCombination clo = base_case_tours(sU.q, sU.pseudo, zeta, -1, calmUv);
        ConvexCombination chi = base_case_tours(sU.q, sU.pseudo, zeta, +1, calmUv);
        PatternProfile plo = profile_of(sU.q, clo, sU.pseudo);
        PatternProfile phi_ = profile_of(sU.q, chi, sU.pseudo);
        int piv = -1;
        for (int k = 0; k < 8; ++k)
            if (plo[k] != phi_[k]) piv = piv == -1 ? k : piv;
        if (piv == -1)
            throw ProfileMismatch("cut-side profile is rigid but misses the target");
        Rat mu = (phi_[piv] - target[piv]) / (phi_[piv] - plo[piv]);
        if (mu < 0 || mu > 1)
            throw ProfileMismatch("target profile outside the reachable segment at " +
                                  std::string(pattern_name(piv)) + ": wanted " +
                                  rat_str(target[piv]) + ", reachable [" +
                                  rat_str(std::min(plo[piv], phi_[piv])) + ", " +
                                  rat_str(std::max(plo[piv], phi_[piv])) + "]");
        for (int k = 0; k < 8; ++k)
            if (mu * plo[k] + (1 - mu) * phi_[k] != target[k])
                throw ProfileMismatch("free-direction mix cannot reach pattern " +
                                      std::string(pattern_name(k)));
        ConvexCombination mixed;
        for (auto& t : clo.terms) mixed.terms.push_back({mu * t.lambda, t.F});
        for (auto& t : chi.terms) mixed.terms.push_back({(1 - mu) * t.lambda, t.F});
        merge_terms(mixed);
        canonical_order(mixed);
        cU = std::move(mixed);
    }
    return glue_over_cut(p, sU, cU, sUb, cUb);
}

// closed form when every support edge is a 1-edge: the support is one cycle;
// mix the cycle itself with each "double everything but one edge" tour
inline ConvexCombination solve_cyclic_hamilton(const CyclicPoint& p) {
    int m = p.g.m();
    if (m < 4)
        throw std::invalid_argument(
            "all-1-edge points need at least 4 edges to reach the target value");
    Rat w = rat(3, 2) - p.theta / 10;
    Rat c = (w - 1) / (m - 2);
    Rat lam0 = 1 - c * m;
    if (lam0 < 0) throw std::logic_error("cycle mix has negative weight");
    ConvexCombination out;
    if (lam0 > 0) out.terms.push_back({lam0, Mult(m, 1)});
    for (int e = 0; e < m; ++e) {
        Mult F(m, 2);
        F[e] = 0;
        out.terms.push_back({c, std::move(F)});
    }
    canonical_order(out);
    std::string why;
    if (!verify_convex_combination(p.g, out, EdgeVector(m, w), VerifyMode::Equal, &why))
        throw std::logic_error("cycle closed form off target: " + why);
    for (auto& t : out.terms)
        if (!is_tour(p.g, t.F)) throw std::logic_error("cycle closed form is not a tour");
    return out;
}

}  // namespace detail

// top-level: reduce to a cubic point, recurse over minimal critical cuts,
// and expand 1-edge paths back. zeta applies when the reduced point is
// itself a base case.
inline ConvexCombination solve_cyclic(const CyclicPoint& p, const Rat& zeta = Rat(0)) {
    if (p.h_empty()) return detail::solve_cyclic_hamilton(p);
    CubicReduction r = to_cubic(p);
    ConvexCombination inner = detail::solve_cyclic_cubic(r.reduced, 0, zeta);
    ConvexCombination out;
    for (auto& t : inner.terms) out.terms.push_back({t.lambda, expand_tour(p, r, t.F)});
    merge_terms(out);
    canonical_order(out);
    std::string why;
    if (!verify_convex_combination(p.g, out, cyclic_target_value(p), VerifyMode::Equal, &why))
        throw std::logic_error("expanded combination off target: " + why);
    return out;
}

}  // namespace tourglue
