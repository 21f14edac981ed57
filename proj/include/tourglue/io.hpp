#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "graph.hpp"

namespace tourglue {

// Instance file:
//   n m theta_num theta_den
//   u v num den          (m lines; '#' starts a comment anywhere)
// theta_den = 0 marks a plain graph (uniform-point commands); edge values are
// then ignored on read and written as "1 1".
struct Instance {
    Multigraph g;
    bool has_theta = false;
    Rat theta;
    EdgeVector x;
};

namespace detail {
inline bool next_tokens(std::istream& in, std::vector<std::string>& toks, size_t want) {
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        toks.clear();
        std::string t;
        while (ss >> t) toks.push_back(t);
        if (toks.empty()) continue;
        if (toks.size() != want) throw std::runtime_error("malformed line: " + line);
        return true;
    }
    return false;
}
}  // namespace detail

inline Instance read_instance(std::istream& in) {
    std::vector<std::string> t;
    if (!detail::next_tokens(in, t, 4)) throw std::runtime_error("missing instance header");
    Instance inst;
    inst.g.n = std::stoi(t[0]);
    int m = std::stoi(t[1]);
    long tden = std::stol(t[3]);
    if (tden != 0) {
        inst.has_theta = true;
        inst.theta = rat(std::stol(t[2]), tden);
    }
    for (int i = 0; i < m; ++i) {
        if (!detail::next_tokens(in, t, 4)) throw std::runtime_error("missing edge line");
        inst.g.add_edge(std::stoi(t[0]), std::stoi(t[1]));
        if (inst.has_theta)
            inst.x.push_back(rat(std::stol(t[2]), std::stol(t[3])));
        else
            inst.x.push_back(Rat(0));
    }
    return inst;
}

inline void write_instance(std::ostream& out, const Instance& inst) {
    out << inst.g.n << " " << inst.g.m() << " ";
    if (inst.has_theta)
        out << inst.theta.get_num() << " " << inst.theta.get_den() << "\n";
    else
        out << "0 0\n";
    for (int e = 0; e < inst.g.m(); ++e) {
        out << inst.g.edges[e].first << " " << inst.g.edges[e].second << " ";
        if (inst.has_theta)
            out << inst.x[e].get_num() << " " << inst.x[e].get_den() << "\n";
        else
            out << "1 1\n";
    }
}

inline Instance read_instance_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_instance(f);
}

// Combination file:
//   n k
//   lambda_num lambda_den m_i   (per term)
//   u v mult                    (m_i lines)
// Parallel host edges are disambiguated by host index order: within a term,
// repeated "u v" lines consume the host edges with that endpoint pair in
// increasing index order.
inline ConvexCombination read_combination(std::istream& in, const Multigraph& host) {
    std::vector<std::string> t;
    if (!detail::next_tokens(in, t, 2)) throw std::runtime_error("missing combination header");
    if (std::stoi(t[0]) != host.n) throw std::runtime_error("combination vertex count mismatch");
    int k = std::stoi(t[1]);
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (int e = 0; e < host.m(); ++e) by_pair[host.edges[e]].push_back(e);
    ConvexCombination c;
    for (int i = 0; i < k; ++i) {
        if (!detail::next_tokens(in, t, 3)) throw std::runtime_error("missing term header");
        Term term;
        term.lambda = rat(std::stol(t[0]), std::stol(t[1]));
        term.F.assign(host.m(), 0);
        int mi = std::stoi(t[2]);
        std::map<std::pair<int, int>, size_t> used;
        for (int j = 0; j < mi; ++j) {
            if (!detail::next_tokens(in, t, 3)) throw std::runtime_error("missing term edge line");
            int u = std::stoi(t[0]), v = std::stoi(t[1]);
            if (u > v) std::swap(u, v);
            auto it = by_pair.find({u, v});
            size_t& idx = used[{u, v}];
            if (it == by_pair.end() || idx >= it->second.size())
                throw std::runtime_error("term edge not in host: " + std::to_string(u) + "-" +
                                         std::to_string(v));
            term.F[it->second[idx++]] = std::stoi(t[2]);
        }
        c.terms.push_back(std::move(term));
    }
    return c;
}

inline void write_combination(std::ostream& out, const Multigraph& host, ConvexCombination c) {
    for (auto& t : c.terms) canonicalize_parallel_edges(host, t.F);
    canonical_order(c);
    out << host.n << " " << c.terms.size() << "\n";
    for (const auto& t : c.terms) {
        int mi = 0;
        for (int e = 0; e < host.m(); ++e) mi += t.F[e] > 0 ? 1 : 0;
        out << t.lambda.get_num() << " " << t.lambda.get_den() << " " << mi << "\n";
        for (int e = 0; e < host.m(); ++e)
            if (t.F[e] > 0)
                out << host.edges[e].first << " " << host.edges[e].second << " " << t.F[e] << "\n";
    }
}

inline ConvexCombination read_combination_file(const std::string& path, const Multigraph& host) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_combination(f, host);
}

}  // namespace tourglue
