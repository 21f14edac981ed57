#pragma once

#include <random>

#include "cyclic.hpp"
#include "io.hpp"

namespace tourglue {

// K4 with two 1-edges (02, 13) and the 4-cycle 0-1-2-3 at 1/2.
inline Instance gen_k4half() {
    Instance inst;
    inst.g = Multigraph(4);
    inst.has_theta = true;
    inst.theta = rat(1, 2);
    auto add = [&](int u, int v, Rat val) {
        inst.g.add_edge(u, v);
        inst.x.push_back(val);
    };
    add(0, 1, rat(1, 2));
    add(0, 2, rat(1));
    add(0, 3, rat(1, 2));
    add(1, 2, rat(1, 2));
    add(1, 3, rat(1));
    add(2, 3, rat(1, 2));
    return inst;
}

// Three 1-edge paths of ceil(1/eps + 1) vertices each, their left endpoints
// joined by a triangle of 1/2-edges and likewise their right endpoints.
inline Instance gen_lowerbound(const Rat& eps) {
    if (!(eps > 0) || !(eps < 1)) throw std::invalid_argument("eps must lie in (0,1)");
    Rat t_exact = (1 + eps) / eps;
    mpz_class t_z = t_exact.get_num() / t_exact.get_den();
    if (t_z * t_exact.get_den() != t_exact.get_num()) t_z += 1;  // ceiling
    long t = t_z.get_si();
    Instance inst;
    inst.g = Multigraph(3 * (int)t);
    inst.has_theta = true;
    inst.theta = rat(1, 2);
    auto add = [&](int u, int v, Rat val) {
        inst.g.add_edge(u, v);
        inst.x.push_back(val);
    };
    for (int p = 0; p < 3; ++p)
        for (int i = 0; i + 1 < t; ++i) add(p * t + i, p * t + i + 1, rat(1));
    auto tri = [&](int a, int b, int c) {
        add(a, b, rat(1, 2));
        add(a, c, rat(1, 2));
        add(b, c, rat(1, 2));
    };
    tri(0, (int)t, 2 * (int)t);
    tri((int)t - 1, 2 * (int)t - 1, 3 * (int)t - 1);
    return inst;
}

// K_{2,2,2}: 4-regular, 4-edge-connected, all proper cuts have >= 6 edges.
inline Instance gen_octahedron() {
    Instance inst;
    inst.g = Multigraph(6);
    inst.has_theta = false;
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) {
            if ((u == 0 && v == 1) || (u == 2 && v == 3) || (u == 4 && v == 5)) continue;
            inst.g.add_edge(u, v);
            inst.x.push_back(Rat(0));
        }
    return inst;
}

inline Instance gen_k4graph() {
    Instance inst;
    inst.g = Multigraph(4);
    inst.has_theta = false;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) {
            inst.g.add_edge(u, v);
            inst.x.push_back(Rat(0));
        }
    return inst;
}

inline Instance gen_petersen() {
    Instance inst;
    inst.g = Multigraph(10);
    inst.has_theta = false;
    auto add = [&](int u, int v) {
        inst.g.add_edge(u, v);
        inst.x.push_back(Rat(0));
    };
    for (int i = 0; i < 5; ++i) {
        add(i, (i + 1) % 5);          // outer cycle
        add(i, i + 5);                // spokes
        add(i + 5, (i + 2) % 5 + 5);  // inner pentagram
    }
    return inst;
}

// Ring of b (even, >= 2) three-vertex blocks a_i, b_i, c_i. The fractional
// edges form one cycle a_0 b_0 c_0 a_1 b_1 c_1 ... of length 3b with values
// alternating theta, 1-theta; the 1-edges are the block chords a_i c_i plus
// antipodal rungs b_i b_{i+b/2}. Every cut separating one block is a
// critical cut, so these instances exercise the gluing recursion; b = 2 has
// two critical cuts, larger b proportionally more.
inline Instance gen_block_ring(int b, const Rat& theta) {
    if (b < 2 || b % 2 != 0) throw std::invalid_argument("block ring needs even b >= 2");
    Instance inst;
    inst.g = Multigraph(3 * b);
    inst.has_theta = true;
    inst.theta = theta;
    auto add = [&](int u, int v, Rat val) {
        inst.g.add_edge(u, v);
        inst.x.push_back(val);
    };
    for (int i = 0; i < b; ++i) add(3 * i, 3 * i + 2, rat(1));
    for (int i = 0; i < b / 2; ++i) add(3 * i + 1, 3 * (i + b / 2) + 1, rat(1));
    int cyclen = 0;
    auto frac = [&](int u, int v) { add(u, v, cyclen++ % 2 == 0 ? theta : 1 - theta); };
    for (int i = 0; i < b; ++i) {
        frac(3 * i, 3 * i + 1);
        frac(3 * i + 1, 3 * i + 2);
        frac(3 * i + 2, 3 * ((i + 1) % b));
    }
    return inst;
}

// Random cubic theta-cyclic point: an even-cycle 2-factor carrying the
// fractional values plus a perfect matching of 1-edges. Rejection-sampled
// until validation passes; deterministic for a fixed seed.
inline Instance gen_random_cyclic(int n, const Rat& theta, unsigned long seed) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("random cyclic point needs even n >= 4");
    if (!(theta > 0) || !(theta <= rat(1, 2)))
        throw std::invalid_argument("theta must lie in (0, 1/2]");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 5000; ++attempt) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        // split into even cycles of length >= 4
        std::vector<std::vector<int>> cycles;
        int pos = 0;
        while (pos < n) {
            int rem = n - pos;
            int s;
            if (rem <= 7)
                s = rem;
            else
                s = 4 + 2 * (int)(rng() % 2);
            if (rem - s == 2) s += 2;
            cycles.emplace_back(perm.begin() + pos, perm.begin() + pos + s);
            pos += s;
        }
        std::vector<std::vector<char>> h_adj(n, std::vector<char>(n, 0));
        for (auto& c : cycles)
            for (size_t i = 0; i < c.size(); ++i) {
                int u = c[i], v = c[(i + 1) % c.size()];
                h_adj[u][v] = h_adj[v][u] = 1;
            }
        // perfect matching of 1-edges avoiding parallels with the cycles
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        bool ok = false;
        std::vector<std::pair<int, int>> matching;
        for (int tries = 0; tries < 60 && !ok; ++tries) {
            std::shuffle(order.begin(), order.end(), rng);
            matching.clear();
            ok = true;
            for (int i = 0; i < n && ok; i += 2) {
                if (h_adj[order[i]][order[i + 1]]) ok = false;
                matching.emplace_back(order[i], order[i + 1]);
            }
        }
        if (!ok) continue;
        Instance inst;
        inst.g = Multigraph(n);
        inst.has_theta = true;
        inst.theta = theta;
        for (auto [u, v] : matching) {
            inst.g.add_edge(u, v);
            inst.x.push_back(Rat(1));
        }
        for (auto& c : cycles)
            for (size_t i = 0; i < c.size(); ++i) {
                inst.g.add_edge(c[i], c[(i + 1) % c.size()]);
                inst.x.push_back(i % 2 == 0 ? theta : 1 - theta);
            }
        try {
            validate_cyclic(theta, inst.g, inst.x);
            return inst;
        } catch (const CyclicError&) {
            continue;
        }
    }
    throw std::runtime_error("random cyclic generation failed after 5000 attempts");
}

}  // namespace tourglue
