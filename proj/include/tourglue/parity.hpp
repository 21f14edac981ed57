#pragma once

#include <set>

#include "cyclic.hpp"
#include "decomp.hpp"

namespace tourglue {

// discounted join vector: 1/2 on 1-edges, except (1-theta)/2 on the matching
// being saved, and x/2 on fractional edges; z(delta(u)) = 1 at every vertex
struct ParityVector {
    EdgeVector z;
    std::vector<int> M;
};

inline ParityVector parity_vector(const CyclicPoint& p, const std::vector<int>& M) {
    std::set<int> m(M.begin(), M.end());
    for (int e : m)
        if (e < 0 || e >= p.g.m() || !p.in_W[e])
            throw std::invalid_argument("parity matching must consist of 1-edges");
    ParityVector pv;
    pv.M = M;
    pv.z.resize(p.g.m());
    for (int e = 0; e < p.g.m(); ++e) {
        if (!p.in_W[e])
            pv.z[e] = p.x[e] / 2;
        else if (m.count(e))
            pv.z[e] = (1 - p.theta) / 2;
        else
            pv.z[e] = rat(1, 2);
    }
    return pv;
}

// outcome of a join-polytope membership check: either certified, or a
// violated cut-set pair (U, A) with z(delta(U) minus A) - z(A) < 1 - |A|
struct ParityCertificate {
    bool ok = false;
    std::vector<int> U;
    std::vector<int> A;
    std::string reason;
};

namespace detail {

// exhaustive check of the join-polytope inequalities; with z <= 1/2 only
// |A| <= 1 can bind, split by the parity of |U cap O|
inline ParityCertificate certify_exhaustive(const Multigraph& g, const EdgeVector& z,
                                            const std::vector<int>& O) {
    std::vector<char> ino(g.n, 0);
    for (int v : O) ino[v] = 1;
    ParityCertificate cert;
    for (unsigned long mask = 0; mask + 1 < (1ul << (g.n - 1)); ++mask) {
        unsigned long full = mask << 1 | 1ul;  // vertex 0 always inside
        std::vector<char> in(g.n, 0);
        int odd = 0;
        for (int v = 0; v < g.n; ++v)
            if (full >> v & 1) {
                in[v] = 1;
                odd ^= ino[v];
            }
        Rat val = 0;
        Rat mx = 0;
        int mxe = -1;
        for (int e = 0; e < g.m(); ++e) {
            auto [a, b] = g.edges[e];
            if (in[a] == in[b]) continue;
            val += z[e];
            if (mxe == -1 || z[e] > mx) mx = z[e], mxe = e;
        }
        bool bad = odd ? val < 1 : (mxe != -1 && val < 2 * mx);
        if (!bad) continue;
        for (int v = 0; v < g.n; ++v)
            if (in[v]) cert.U.push_back(v);
        if (!odd) cert.A.push_back(mxe);
        cert.reason = odd ? "odd side with z(delta(U)) < 1"
                          : "even side with z(delta(U)) < 2 z_a";
        return cert;
    }
    cert.ok = true;
    cert.reason = "exhaustive cut enumeration";
    return cert;
}

// structural sufficiency check mirroring the case analysis: beyond small n,
// verify the conditions that make every cut inequality hold
inline ParityCertificate certify_structural(const CyclicPoint& p, const ParityVector& pv,
                                            const std::vector<int>& O) {
    ParityCertificate cert;
    std::set<int> m(pv.M.begin(), pv.M.end());
    std::vector<char> ino(p.g.n, 0);
    for (int v : O) ino[v] = 1;
    for (auto& U : enumerate_cuts_upto(p.g, 3)) {
        std::vector<char> in(p.g.n, 0);
        int odd = 0;
        for (int v : U) in[v] = 1, odd ^= ino[v];
        auto cut = cut_edges(p.g, in);
        int nw = 0, nm = 0;
        for (int e : cut) {
            nw += p.in_W[e] ? 1 : 0;
            nm += m.count(e) ? 1 : 0;
        }
        auto reject = [&](const std::string& why) {
            cert.U = U;
            cert.reason = why;
            return cert;
        };
        if (cut.size() == 2) {
            if (odd) return reject("odd side of a 2-edge cut");
            if (nm % 2) return reject("matching meets a 2-edge cut once");
        } else if (cut.size() == 3) {
            if (nw == 3 && nm > 1) return reject("matching meets a 1-edge 3-cut twice");
            if (nw == 1 && nm == 1 && odd)
                return reject("odd side of a tight 3-cut carrying a matching edge");
        }
    }
    // vertex cuts: saved endpoints must be parity-even
    for (int e : pv.M)
        for (int v : {p.g.edges[e].first, p.g.edges[e].second})
            if (ino[v]) {
                cert.U = {v};
                cert.reason = "matching endpoint has odd degree";
                return cert;
            }
    for (auto& cc : classify_cuts(p))
        if (cc.kind == CutKind::Critical) {
            cert.U = cc.U;
            cert.reason = "critical cut present";
            return cert;
        }
    cert.ok = true;
    cert.reason = "case analysis on cut shape";
    return cert;
}

}  // namespace detail

inline ParityCertificate certify_ojoin_membership(const CyclicPoint& p, const ParityVector& pv,
                                                  const std::vector<int>& O) {
    if (O.size() % 2) throw std::invalid_argument("O must be even");
    for (const Rat& v : pv.z)
        if (v < 0 || v > rat(1, 2)) throw std::invalid_argument("parity vector out of [0,1/2]");
    if (p.g.n <= 16) return detail::certify_exhaustive(p.g, pv.z, O);
    ParityCertificate cert = detail::certify_structural(p, pv, O);
    return cert;
}

// decompose z into O_T-joins for the odd-degree set of a connector T; the
// degree cap z(delta(u)) <= 1 makes every join use each odd vertex once
inline ConvexCombination parity_correct(const CyclicPoint& p, const Mult& T,
                                        const ParityVector& pv) {
    auto deg = degrees(p.g, T);
    std::vector<int> O;
    for (int v = 0; v < p.g.n; ++v)
        if (deg[v] % 2) O.push_back(v);
    ParityCertificate cert = certify_ojoin_membership(p, pv, O);
    if (!cert.ok)
        throw std::invalid_argument("parity vector not in the join polytope: " + cert.reason);
    return ojoin_with_degree_cap(p.g, pv.z, O);
}

}  // namespace tourglue
