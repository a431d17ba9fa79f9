// Batch experiment runner: generate instances, run the pipelines, verify
// outputs, and emit metrics.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "localec/constants.hpp"
#include "localec/graph.hpp"
#include "localec/linial.hpp"
#include "localec/lll.hpp"
#include "localec/lower_bounds.hpp"
#include "localec/nibble.hpp"
#include "localec/rng.hpp"
#include "localec/tree_decomp.hpp"

using namespace localec;

namespace {

int thread_budget() {
    const char* env = std::getenv("LOCAL_EC_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

// deterministic worker pool: results are collected by trial index
template <typename Fn>
void run_trials(int trials, Fn&& fn) {
    int workers = std::min(thread_budget(), std::max(trials, 1));
    if (workers <= 1) {
        for (int t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            while (true) {
                int t = next.fetch_add(1);
                if (t >= trials) return;
                fn(t);
            }
        });
    for (auto& th : pool) th.join();
}

struct GenOptions {
    std::string type = "tree";
    int n = 1000;
    int delta = 4;
    int height = 3;
    uint64_t seed = 1;
};

Graph generate(const GenOptions& o, int* root = nullptr) {
    if (root) *root = -1;
    if (o.type == "tree") {
        auto t = random_tree(o.n, o.seed);
        if (root) *root = t.root;
        return t.g;
    }
    if (o.type == "capped-tree") {
        auto t = random_tree_max_degree(o.n, o.delta, o.seed);
        if (root) *root = t.root;
        return t.g;
    }
    if (o.type == "regular") return random_regular_graph(o.n, o.delta, o.seed);
    if (o.type == "bipartite") return random_regular_bipartite(o.n / 2, o.delta, o.seed);
    if (o.type == "ttree") {
        auto t = truncated_regular_tree(o.delta, o.height);
        if (root) *root = t.root;
        return t.g;
    }
    throw CLI::ValidationError("--gen", "unknown generator '" + o.type + "'");
}

void add_gen_flags(CLI::App* cmd, GenOptions& gen) {
    cmd->add_option("--gen", gen.type, "generator: tree|capped-tree|regular|bipartite|ttree");
    cmd->add_option("--n", gen.n, "vertex count");
    cmd->add_option("--delta", gen.delta, "degree parameter");
    cmd->add_option("--height", gen.height, "truncation height (ttree)");
}

Graph load_or_generate(const std::string& in_path, const GenOptions& gen, int* root = nullptr) {
    if (!in_path.empty()) return graph_from_json(read_text_file(in_path), nullptr, root);
    return generate(gen, root);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LOCAL-model edge coloring and tree LLL toolkit"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    int trials = 1;
    std::string out_path;
    std::string format = "json";
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--trials", trials, "number of trials")->capture_default_str();
    app.add_option("--out", out_path, "output file prefix");
    app.add_option("--format", format, "json|csv")->capture_default_str();

    GenOptions gen;
    std::string in_path;

    // gen
    auto* cmd_gen = app.add_subcommand("gen", "generate an instance and write its JSON");
    add_gen_flags(cmd_gen, gen);

    // color
    auto* cmd_color = app.add_subcommand("color", "randomized edge coloring below 2D-1");
    double eps = 0.5, xi = 0, eta = 0;
    add_gen_flags(cmd_color, gen);
    cmd_color->add_option("--in", in_path, "input graph JSON");
    cmd_color->add_option("--eps", eps, "palette slack epsilon")->capture_default_str();
    cmd_color->add_option("--xi", xi, "override xi");
    cmd_color->add_option("--eta", eta, "override eta");

    // greedy / linial baselines + verify
    auto* cmd_verify = app.add_subcommand("verify", "verify a coloring or decomposition file");
    std::string coloring_path, decomp_path;
    int verify_k = 1;
    cmd_verify->add_option("--graph", in_path, "graph JSON (edges + colors)")->required();
    cmd_verify->add_option("--decomp", decomp_path, "decomposition JSON");
    cmd_verify->add_option("--k", verify_k, "power for decomposition checks");

    // decompose
    auto* cmd_dec = app.add_subcommand("decompose", "tree network decompositions");
    std::string algo = "two";
    int k_param = 1, lambda = 8;
    add_gen_flags(cmd_dec, gen);
    cmd_dec->add_option("--in", in_path, "input tree JSON");
    cmd_dec->add_option("--algo", algo, "two|mixed")->capture_default_str();
    cmd_dec->add_option("--k", k_param, "target power k")->capture_default_str();
    cmd_dec->add_option("--lambda", lambda, "mixed-mode degree bound")->capture_default_str();

    // lll
    auto* cmd_lll = app.add_subcommand("lll", "tree LLL solvers");
    std::string lll_mode = "solve", instance_path;
    int lll_r = 2;
    std::string family = "all_equal_ball";
    add_gen_flags(cmd_lll, gen);
    cmd_lll->add_option("--mode", lll_mode, "solve|mt|shatter")->capture_default_str();
    cmd_lll->add_option("--instance", instance_path, "LLL instance JSON");
    cmd_lll->add_option("--r", lll_r, "dependency radius (even)")->capture_default_str();
    cmd_lll->add_option("--family", family, "builtin event family")->capture_default_str();

    // contagion
    auto* cmd_con = app.add_subcommand("contagion", "find-small-stable-set dynamics");
    double q0 = 0.01;
    int con_r = 2, mu = 4, tau = 0;
    add_gen_flags(cmd_con, gen);
    cmd_con->add_option("--in", in_path, "input tree JSON");
    cmd_con->add_option("--q0", q0, "per-vertex infection rate")->capture_default_str();
    cmd_con->add_option("--r", con_r, "infection radius")->capture_default_str();
    cmd_con->add_option("--mu", mu, "subtree threshold (even, >= 4)")->capture_default_str();
    cmd_con->add_option("--tau", tau, "steps (0 = derived)");

    // sinkless
    auto* cmd_sink = app.add_subcommand("sinkless", "edge-coloring to sinkless-orientation reduction");
    std::string oracle = "perfect";
    add_gen_flags(cmd_sink, gen);
    cmd_sink->add_option("--oracle", oracle, "perfect|blank")->capture_default_str();

    // vizing
    auto* cmd_viz = app.add_subcommand("vizing", "layered recoloring gadget");
    int viz_delta = 5, viz_c = 1, viz_ell = 8, frozen = kFrozenTopLayers;
    cmd_viz->add_option("--delta", viz_delta, "maximum degree")->capture_default_str();
    cmd_viz->add_option("--c", viz_c, "palette excess")->capture_default_str();
    cmd_viz->add_option("--ell", viz_ell, "layers")->capture_default_str();
    cmd_viz->add_option("--frozen", frozen, "frozen top layers")->capture_default_str();

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "timing and round counts");
    std::string pipeline = "color";
    double bench_eps = 0.5;
    add_gen_flags(cmd_bench, gen);
    cmd_bench->add_option("--pipeline", pipeline, "color|greedy|linial|delta-tree|oriented|lll")
        ->capture_default_str();
    cmd_bench->add_option("--eps", bench_eps, "epsilon for the color pipeline");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough(true);
    CLI11_PARSE(app, argc, argv);

    auto emit = [&](const std::string& text, const std::string& suffix) {
        if (out_path.empty()) {
            std::cout << text << "\n";
        } else {
            write_text_file(out_path + suffix, text);
        }
    };

    try {
        if (cmd_gen->parsed()) {
            gen.seed = seed;
            int root = -1;
            Graph g = generate(gen, &root);
            emit(graph_to_json(g, nullptr, root), ".graph.json");
            std::cerr << "generated n=" << g.n << " m=" << g.m() << " maxdeg=" << g.max_degree()
                      << "\n";
            return 0;
        }

        if (cmd_color->parsed()) {
            bool all_ok = true;
            std::ostringstream csv;
            csv << "trial,n,m,delta,colors,iterations,max_retry,wall_ms\n";
            std::vector<std::string> rows(trials);
            std::vector<char> oks(trials, 1);
            run_trials(trials, [&](int t) {
                GenOptions g2 = gen;
                g2.seed = mix64(seed, t);
                Graph g = load_or_generate(in_path, g2);
                ColorGraphOptions opt;
                opt.xi = xi;
                opt.eta = eta;
                auto t0 = std::chrono::steady_clock::now();
                auto res = color_graph(g, eps, mix64(seed, 1000 + t), opt);
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
                auto rep = verify_proper_edge_coloring(g, res.coloring);
                int max_retry = 0;
                for (auto& o : res.outcomes) max_retry = std::max(max_retry, o.retries);
                bool ok = rep.proper() && res.coloring.total();
                std::ostringstream row;
                row << t << "," << g.n << "," << g.m() << "," << g.max_degree() << ","
                    << rep.max_color_used << "," << res.iterations << "," << max_retry << "," << ms
                    << "\n";
                rows[t] = row.str();
                oks[t] = ok;
                if (t == 0 && !out_path.empty()) {
                    write_text_file(out_path + ".coloring.json",
                                    graph_to_json(g, &res.coloring));
                    write_text_file(out_path + ".iterations.csv", experiment_csv(res));
                    nlohmann::json summary;
                    std::vector<int> usage(res.coloring.palette_size + 1, 0);
                    for (int c : res.coloring.color) ++usage[c];
                    summary["palette_size"] = res.coloring.palette_size;
                    summary["phase1_colors"] = res.phase1_colors;
                    summary["max_color"] = rep.max_color_used;
                    summary["iterations"] = res.iterations;
                    summary["usage"] = usage;
                    write_text_file(out_path + ".summary.json", summary.dump(2));
                }
            });
            for (auto& r : rows) csv << r;
            for (char ok : oks) all_ok = all_ok && ok;
            emit(csv.str(), ".trials.csv");
            std::cerr << (all_ok ? "all colorings verified\n" : "verifier FAILED\n");
            return all_ok ? 0 : 1;
        }

        if (cmd_verify->parsed()) {
            PartialEdgeColoring col;
            Graph g = graph_from_json(read_text_file(in_path), &col);
            nlohmann::json j;
            bool ok = true;
            if (!decomp_path.empty()) {
                auto d = decomposition_from_json(read_text_file(decomp_path));
                auto rep = verify_decomposition(g, verify_k, d);
                j["decomposition_pass"] = rep.pass();
                j["separation_violations"] = rep.separation_violations.size();
                j["independence_violations"] = rep.independence_violations.size();
                ok = ok && rep.pass();
            } else {
                auto rep = verify_proper_edge_coloring(g, col);
                j["proper"] = rep.proper();
                j["uncolored"] = rep.uncolored.size();
                j["max_color"] = rep.max_color_used;
                j["violations"] = rep.violations.size();
                ok = ok && rep.proper();
            }
            emit(j.dump(2), ".verify.json");
            return ok ? 0 : 1;
        }

        if (cmd_dec->parsed()) {
            gen.seed = seed;
            Graph g = load_or_generate(in_path, gen);
            DecomposeResult res = algo == "mixed" ? decompose_mixed(g, k_param, lambda, g.n)
                                                  : decompose_two_part(g, k_param, g.n);
            auto rep = verify_decomposition(g, k_param, res.decomposition);
            emit(decomposition_to_json(res.decomposition), ".decomp.json");
            nlohmann::json j;
            j["pass"] = rep.pass();
            j["parts"] = res.decomposition.num_parts();
            j["rounds"] = res.rounds;
            for (auto& p : rep.parts)
                j["part_diameters"].push_back({{"part", p.part},
                                               {"diam_tree", p.max_diameter_tree},
                                               {"components", p.components}});
            std::cerr << j.dump(2) << "\n";
            return rep.pass() ? 0 : 1;
        }

        if (cmd_lll->parsed()) {
            LLLInstance inst;
            if (!instance_path.empty()) {
                inst = lll_instance_from_json(read_text_file(instance_path));
            } else {
                gen.seed = seed;
                Graph g = generate(gen);
                EventKind kind = family == "majority_ball" ? EventKind::MajorityBall
                                                           : EventKind::AllEqualBall;
                inst = make_uniform_instance(g, lll_r, 2, kind);
            }
            nlohmann::json j;
            bool ok = false;
            if (lll_mode == "mt") {
                auto res = moser_tardos(inst, seed);
                ok = res.success && assignment_valid(inst, res.assignment);
                j["resamples"] = res.resamples;
                j["validity"] = ok;
                if (!out_path.empty())
                    write_text_file(out_path + ".assignment.json",
                                    assignment_to_json(res.assignment));
            } else if (lll_mode == "shatter") {
                auto sh = shatter_good_partial(inst, 2 * (std::pow(4.0, inst.radius) +
                                                          8.0 * inst.radius),
                                               seed);
                j["infected"] = sh.infected.size();
                j["stable_set"] = sh.stable_set.size();
                j["components"] = sh.components.size();
                j["best_effort"] = sh.best_effort;
                ok = true;
            } else {
                auto res = solve_tree_lll(inst, seed);
                ok = res.success && assignment_valid(inst, res.assignment);
                j["validity"] = ok;
                j["retries"] = res.stats.retries;
                j["components"] = res.stats.components;
                if (!out_path.empty())
                    write_text_file(out_path + ".assignment.json",
                                    assignment_to_json(res.assignment));
            }
            emit(j.dump(2), ".lll.json");
            return ok ? 0 : 1;
        }

        if (cmd_con->parsed()) {
            gen.seed = seed;
            Graph g = load_or_generate(in_path, gen);
            Rng rng(mix64(seed, 0xc0117a610ULL));
            std::vector<int> infected;
            for (int v = 0; v < g.n; ++v)
                if (rng.unit() < q0) infected.push_back(v);
            if (tau <= 0)
                tau = std::max(1, (int)std::ceil(kTauFactor *
                                                 std::log(std::max(std::log2((double)g.n), 2.0)) /
                                                 std::log((double)mu)));
            auto [s, trace] = find_small_stable_set(g, infected, con_r, mu, tau);
            auto rep = verify_stable_small(g, s, infected, con_r, mu, kSmallnessC);
            nlohmann::json j;
            j["infected"] = infected.size();
            j["stable_set"] = s.size();
            j["tau"] = tau;
            j["stable"] = rep.stable;
            j["small"] = rep.small;
            j["max_dominating_set"] = rep.max_dominating_set;
            j["components"] = rep.num_components;
            emit(j.dump(2), ".contagion.json");
            return rep.stable ? 0 : 1;
        }

        if (cmd_sink->parsed()) {
            gen.type = "bipartite";
            gen.seed = seed;
            Graph g = generate(gen);
            auto pre = ec_to_sinkless(g, gen.delta, all_uncolored_oracle(), seed);
            NodeProgram prog;
            if (oracle == "perfect") {
                auto col = konig_edge_coloring(pre.selected_subgraph);
                if (col.max_color_used() > 2 * gen.delta - 2)
                    throw std::runtime_error("oracle coloring exceeded 2D-2 colors");
                prog = perfect_coloring_oracle(col);
            } else {
                prog = all_uncolored_oracle();
            }
            auto run = ec_to_sinkless(g, gen.delta, prog, seed);
            nlohmann::json j;
            j["sinks"] = run.sinks;
            j["rounds"] = run.rounds;
            j["selected_edges"] = run.selected_edge_ids.size();
            emit(j.dump(2), ".sinkless.json");
            return (oracle != "perfect" || run.sinks.empty()) ? 0 : 1;
        }

        if (cmd_viz->parsed()) {
            auto g = build_gstar(viz_delta, viz_c, viz_ell, seed);
            auto grep = verify_gstar(g);
            auto res = forced_recolor_check(g, frozen);
            if (!out_path.empty()) write_text_file(out_path + ".gadget.json", gadget_to_json(g));
            emit(certificate_to_json(res), ".certificate.json");
            std::cerr << "gadget " << (grep.pass() ? "verified" : "INVALID") << ", n="
                      << g.graph.n << "\n";
            return (grep.pass() && res.verdict == RecolorVerdict::Certificate) ? 0 : 1;
        }

        if (cmd_bench->parsed()) {
            std::ostringstream csv;
            csv << "trial,pipeline,n,m,wall_ms,rounds,retries\n";
            std::vector<std::string> rows(trials);
            run_trials(trials, [&](int t) {
                GenOptions g2 = gen;
                g2.seed = mix64(seed, t);
                int root = -1;
                Graph g = generate(g2, &root);
                auto t0 = std::chrono::steady_clock::now();
                int rounds = 0, retries = 0;
                if (pipeline == "color") {
                    auto res = color_graph(g, bench_eps, mix64(seed, t));
                    rounds = res.iterations;
                    for (auto& o : res.outcomes) retries += o.retries;
                } else if (pipeline == "greedy") {
                    auto col = greedy_edge_coloring(g);
                    rounds = col.max_color_used();
                } else if (pipeline == "linial") {
                    auto res = linial_edge_coloring(g);
                    rounds = res.rounds;
                } else if (pipeline == "delta-tree") {
                    auto res = tree_delta_edge_coloring(g);
                    rounds = res.rounds;
                } else if (pipeline == "oriented") {
                    auto rt = root_tree_at(g, root < 0 ? 0 : root);
                    auto res = oriented_tree_plus_one_coloring(rt);
                    rounds = res.rounds;
                } else if (pipeline == "lll") {
                    auto inst = make_uniform_instance(g, 2, 2, EventKind::AllEqualBall);
                    auto res = solve_tree_lll(inst, mix64(seed, t));
                    retries = res.stats.retries;
                } else {
                    throw CLI::ValidationError("--pipeline", "unknown pipeline " + pipeline);
                }
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
                std::ostringstream row;
                row << t << "," << pipeline << "," << g.n << "," << g.m() << "," << ms << ","
                    << rounds << "," << retries << "\n";
                rows[t] = row.str();
            });
            for (auto& r : rows) csv << r;
            emit(csv.str(), ".bench.csv");
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
