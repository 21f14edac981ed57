// command-line front end: instance/combination files in, certificates and
// PASS/FAIL report lines out
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <tourglue/generators.hpp>
#include <tourglue/matchings.hpp>
#include <tourglue/oracle.hpp>
#include <tourglue/uniform.hpp>

using namespace tourglue;

namespace {

int g_exit = 0;
std::ostream* g_report = &std::cout;

void report(bool ok, const std::string& what, const std::string& detail = "") {
    *g_report << (ok ? "PASS " : "FAIL ") << what;
    if (!detail.empty()) *g_report << ": " << detail;
    *g_report << "\n";
    if (!ok) g_exit = 1;
}

Instance load_instance(const std::string& path) {
    if (path == "-") return read_instance(std::cin);
    return read_instance_file(path);
}

// combinations built on a cyclic point's support graph, re-indexed to the
// host instance so files always speak host edge ids
ConvexCombination to_host(const Instance& inst, const CyclicPoint& p, const ConvexCombination& c) {
    ConvexCombination out;
    for (const auto& t : c.terms) {
        Mult F(inst.g.m(), 0);
        for (int e = 0; e < p.g.m(); ++e) F[p.to_host[e]] = t.F[e];
        out.terms.push_back({t.lambda, std::move(F)});
    }
    return out;
}

EdgeVector host_vector(const Instance& inst, const CyclicPoint& p, const EdgeVector& on_support) {
    EdgeVector out(inst.g.m(), Rat(0));
    for (int e = 0; e < p.g.m(); ++e) out[p.to_host[e]] = on_support[e];
    return out;
}

void emit_combination(const Multigraph& g, const ConvexCombination& c, const std::string& path) {
    if (path.empty()) {
        g_report = &std::cerr;  // keep stdout clean for the certificate
        write_combination(std::cout, g, c);
    } else {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot open " + path);
        write_combination(f, g, c);
    }
}

std::string side_str(const std::vector<int>& side) {
    std::string s = "{";
    for (size_t i = 0; i < side.size(); ++i) s += (i ? "," : "") + std::to_string(side[i]);
    return s + "}";
}

EdgeVector read_vector_file(const std::string& path, int m) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    EdgeVector y;
    std::vector<std::string> t;
    for (int e = 0; e < m; ++e) {
        if (!detail::next_tokens(f, t, 2)) throw std::runtime_error("missing vector line");
        y.push_back(rat(std::stol(t[0]), std::stol(t[1])));
    }
    return y;
}

void check_tours(const Multigraph& g, const ConvexCombination& c) {
    bool tours = true, caps = true;
    for (const auto& t : c.terms) {
        if (!is_tour(g, t.F)) tours = false;
        for (int m : t.F)
            if (m > 2) caps = false;
    }
    report(tours, "every term is a tour");
    report(caps, "multiplicities at most 2");
}

void verify_against(const Multigraph& g, const ConvexCombination& c, const EdgeVector& target,
                    const std::string& label) {
    std::string why;
    report(verify_convex_combination(g, c, target, VerifyMode::Equal, &why), label, why);
    check_tours(g, c);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact convex combinations of tours for cyclic and uniform points"};
    app.require_subcommand(1);

    std::string in_path = "-", comb_path, out_path, target, hint_path, vec_path;
    std::string zeta_s = "0", eps_s = "1/4", theta_s = "1/2";
    int vertex = 0, gen_n = 12;
    unsigned long seed = 1;

    auto* validate = app.add_subcommand("validate", "check an instance file");
    validate->add_option("instance", in_path);

    auto* cuts = app.add_subcommand("cuts", "classify small cuts of a cyclic point");
    cuts->add_option("instance", in_path);

    auto* matchings = app.add_subcommand("matchings", "induced-matching partition at a vertex");
    matchings->add_option("instance", in_path);
    matchings->add_option("--vertex", vertex);

    auto* solve = app.add_subcommand("solve", "construct a combination of tours");
    solve->require_subcommand(1);
    auto* s_cyc = solve->add_subcommand("cyclic", "tours worth 3/2 - theta/10 on 1-edges");
    s_cyc->add_option("instance", in_path);
    s_cyc->add_option("--zeta", zeta_s, "requested phi({2e_v}) at the construction vertex");
    s_cyc->add_option("-o,--output", out_path);
    auto* s_chr = solve->add_subcommand("christofides", "tours worth (3/2)x");
    s_chr->add_option("instance", in_path);
    s_chr->add_option("-o,--output", out_path);
    auto* s_u23 = solve->add_subcommand("uniform23", "tours worth 17/18 per edge, cubic host");
    s_u23->add_option("instance", in_path);
    s_u23->add_option("--hamiltonian-hint", hint_path, "one-term combination file with the cycle");
    s_u23->add_option("-o,--output", out_path);
    auto* s_u24 = solve->add_subcommand("uniform24", "tours worth 31/42 per edge, 4-regular host");
    s_u24->add_option("instance", in_path);
    s_u24->add_option("-o,--output", out_path);

    auto* verify = app.add_subcommand("verify", "recheck a combination file from scratch");
    verify->add_option("instance", in_path)->required();
    verify->add_option("combination", comb_path)->required();
    verify->add_option("--target", target)
        ->required()
        ->check(CLI::IsMember({"cyclic", "christofides", "uniform23", "uniform24"}));

    auto* oracle = app.add_subcommand("oracle", "brute-force tour-hull membership, n <= 10");
    oracle->add_option("instance", in_path)->required();
    oracle->add_option("vector", vec_path)->required();

    auto* gen = app.add_subcommand("gen", "write a built-in instance to stdout");
    gen->require_subcommand(1);
    auto* g_k4h = gen->add_subcommand("k4half", "K4 with two 1-edges and a 1/2 cycle");
    auto* g_low = gen->add_subcommand("lowerbound", "three solid paths between two triangles");
    g_low->add_option("--eps", eps_s);
    auto* g_oct = gen->add_subcommand("octahedron", "K_{2,2,2}");
    auto* g_k4g = gen->add_subcommand("k4graph", "plain K4");
    auto* g_pet = gen->add_subcommand("petersen", "the Petersen graph");
    auto* g_rnd = gen->add_subcommand("random-cyclic", "random cubic cyclic point");
    g_rnd->add_option("--n", gen_n);
    g_rnd->add_option("--theta", theta_s);
    g_rnd->add_option("--seed", seed);

    validate->callback([&] {
        Instance inst = load_instance(in_path);
        report(true, "parse", "n = " + std::to_string(inst.g.n) + ", m = " + std::to_string(inst.g.m()));
        if (!inst.has_theta) {
            report(true, "plain graph (no theta line)");
            return;
        }
        try {
            CyclicPoint p = validate_cyclic(inst.theta, inst.g, inst.x);
            int w = 0;
            for (char c : p.in_W) w += c;
            report(true, "cyclic point",
                   "theta = " + rat_str(p.theta) + ", |W| = " + std::to_string(w) + ", |H| = " +
                       std::to_string(p.g.m() - w));
        } catch (const CyclicError& e) {
            report(false, "cyclic point", e.what());
        }
    });

    cuts->callback([&] {
        Instance inst = load_instance(in_path);
        CyclicPoint p = validate_cyclic(inst.theta, inst.g, inst.x);
        bool reduced = !p.is_cubic();
        if (reduced) {
            p = to_cubic(p).reduced;
            std::cout << "# cuts reported on the cubic reduction\n";
        }
        for (const auto& cc : classify_cuts(p))
            std::cout << cut_kind_name(cc.kind) << " " << side_str(cc.U) << "\n";
        auto mc = minimal_critical_cut(p);
        if (mc)
            std::cout << "minimal-critical " << side_str(*mc) << "\n";
        else
            std::cout << "no critical cuts: base case\n";
    });

    matchings->callback([&] {
        Instance inst = load_instance(in_path);
        CyclicPoint p = validate_cyclic(inst.theta, inst.g, inst.x);
        int v = vertex;
        if (!p.is_cubic()) {
            CubicReduction r = to_cubic(p);
            v = r.vmap[vertex];
            if (v == -1)
                throw std::invalid_argument("vertex lies inside a 1-edge path of the reduction");
            p = r.reduced;
            std::cout << "# partition reported on the cubic reduction, vertex " << v << "\n";
        }
        MatchingPartition mp = partition_induced_matchings(p, v);
        for (int i = 0; i < 5; ++i) {
            std::cout << "part " << i << (i == mp.ev_part ? " (holds e_v):" : ":");
            for (int e : mp.parts[i])
                std::cout << " " << p.g.edges[e].first << "-" << p.g.edges[e].second;
            std::cout << "\n";
        }
        std::string why;
        report(verify_partition(p, v, mp, &why), "partition conditions", why);
    });

    s_cyc->callback([&] {
        Instance inst = load_instance(in_path);
        CyclicPoint p = validate_cyclic(inst.theta, inst.g, inst.x);
        ConvexCombination c = solve_cyclic(p, parse_rat(zeta_s));
        ConvexCombination ch = to_host(inst, p, c);
        emit_combination(inst.g, ch, out_path);
        verify_against(inst.g, ch, host_vector(inst, p, cyclic_target_value(p)),
                       "value 3/2 - theta/10 on W, (3/2)x on H");
        EdgeVector q = phi2(inst.g, ch), qt = host_vector(inst, p, cyclic_target_phi2(p));
        report(q == qt, "doubling frequencies 1/2 - theta/10 on W, x^2/2 on H");
    });

    s_chr->callback([&] {
        Instance inst = load_instance(in_path);
        if (!inst.has_theta)
            throw std::invalid_argument("christofides needs edge values; instance has none");
        ConvexCombination c = christofides(inst.g, inst.x);
        emit_combination(inst.g, c, out_path);
        EdgeVector target(inst.g.m());
        for (int e = 0; e < inst.g.m(); ++e) target[e] = rat(3, 2) * inst.x[e];
        verify_against(inst.g, c, target, "value (3/2)x");
    });

    s_u23->callback([&] {
        Instance inst = load_instance(in_path);
        std::optional<Mult> hint;
        if (!hint_path.empty()) {
            ConvexCombination hc = read_combination_file(hint_path, inst.g);
            if (hc.terms.size() != 1)
                throw std::invalid_argument("hint file must hold exactly one term");
            hint = hc.terms[0].F;
        }
        ConvexCombination c = solve_uniform23(inst.g, hint);
        emit_combination(inst.g, c, out_path);
        Rat per = hint ? rat(29, 34) : rat(17, 18);
        verify_against(inst.g, c, EdgeVector(inst.g.m(), per), "value " + rat_str(per) + " per edge");
    });

    s_u24->callback([&] {
        Instance inst = load_instance(in_path);
        Uniform24Result r = solve_uniform24_base(inst.g);
        emit_combination(inst.g, r.comb, out_path);
        verify_against(inst.g, r.comb, EdgeVector(inst.g.m(), rat(31, 42)), "value 31/42 per edge");
        bool a1 = true, a2 = true;
        for (int e = 0; e < inst.g.m(); ++e) {
            a1 = a1 && r.pr_join_given_matched[e] == rat(19, 42);
            a2 = a2 && r.pr_join[e] == rat(5, 21);
        }
        report(a1, "join frequency 19/42 within matched branches");
        report(a2, "join frequency 5/21 overall");
    });

    verify->callback([&] {
        Instance inst = load_instance(in_path);
        ConvexCombination c = read_combination_file(comb_path, inst.g);
        if (target == "cyclic") {
            CyclicPoint p = validate_cyclic(inst.theta, inst.g, inst.x);
            verify_against(inst.g, c, host_vector(inst, p, cyclic_target_value(p)),
                           "value 3/2 - theta/10 on W, (3/2)x on H");
            EdgeVector q = phi2(inst.g, c), qt = host_vector(inst, p, cyclic_target_phi2(p));
            report(q == qt, "doubling frequencies 1/2 - theta/10 on W, x^2/2 on H");
        } else if (target == "christofides") {
            if (!inst.has_theta)
                throw std::invalid_argument("christofides target needs edge values");
            EdgeVector t(inst.g.m());
            for (int e = 0; e < inst.g.m(); ++e) t[e] = rat(3, 2) * inst.x[e];
            verify_against(inst.g, c, t, "value (3/2)x");
        } else if (target == "uniform23") {
            verify_against(inst.g, c, EdgeVector(inst.g.m(), rat(17, 18)), "value 17/18 per edge");
        } else {
            verify_against(inst.g, c, EdgeVector(inst.g.m(), rat(31, 42)), "value 31/42 per edge");
        }
    });

    oracle->callback([&] {
        Instance inst = load_instance(in_path);
        EdgeVector y = read_vector_file(vec_path, inst.g.m());
        OracleVerdict v = oracle_tour_membership(inst.g, y);
        report(v.feasible, "tour-hull membership",
               v.feasible ? std::to_string(v.tour_count) + " tours enumerated" : v.detail);
    });

    g_k4h->callback([&] { write_instance(std::cout, gen_k4half()); });
    g_low->callback([&] { write_instance(std::cout, gen_lowerbound(parse_rat(eps_s))); });
    g_oct->callback([&] { write_instance(std::cout, gen_octahedron()); });
    g_k4g->callback([&] { write_instance(std::cout, gen_k4graph()); });
    g_pet->callback([&] { write_instance(std::cout, gen_petersen()); });
    g_rnd->callback([&] {
        write_instance(std::cout, gen_random_cyclic(gen_n, parse_rat(theta_s), seed));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ProfileMismatch& e) {
        std::cerr << "construction failed (profile mismatch): " << e.what() << "\n";
        return 1;
    } catch (const ZetaOutOfRange& e) {
        std::cerr << "construction failed (zeta out of range): " << e.what() << "\n";
        return 1;
    } catch (const CyclicError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DecompError& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return g_exit;
}
