#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "localec/graph.hpp"
#include "localec/rng.hpp"

using namespace localec;

namespace {

// independent Pruefer decoder used as the oracle: counting-based rather than
// set-based, written from the textbook description
std::vector<std::pair<int, int>> pruefer_decode_oracle(const std::vector<int>& seq, int n) {
    std::vector<int> deg(n, 1);
    for (int x : seq) ++deg[x];
    std::vector<std::pair<int, int>> edges;
    int ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int x : seq) {
        edges.push_back({leaf, x});
        if (--deg[x] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (deg[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.push_back({leaf, n - 1});
    return edges;
}

std::set<std::pair<int, int>> edge_set(const Graph& g) {
    std::set<std::pair<int, int>> s;
    for (auto [u, v] : g.edges) s.insert(std::minmax(u, v));
    return s;
}

}  // namespace

TEST_CASE("build_graph basics") {
    Graph empty = build_graph({});
    CHECK(empty.n == 0);
    CHECK(empty.m() == 0);

    Graph single = build_graph({{0, 1}});
    CHECK(single.n == 2);
    CHECK(single.degree(0) == 1);
    CHECK(single.degree(1) == 1);

    Graph tri = build_graph({{0, 1}, {1, 2}, {2, 0}});
    CHECK(tri.max_degree() == 2);
    CHECK(tri.m() == 3);

    CHECK_THROWS_AS(build_graph({{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph({{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph({{0, 2}}), std::invalid_argument);  // id 1 missing
}

TEST_CASE("ports are a bijection onto 1..deg and adjacency is symmetric") {
    auto t = random_tree(40, 11);
    const Graph& g = t.g;
    for (int v = 0; v < g.n; ++v) {
        std::set<int> nbrs;
        for (auto [u, e] : g.adj[v]) {
            CHECK(g.other(e, v) == u);
            nbrs.insert(u);
        }
        CHECK(static_cast<int>(nbrs.size()) == g.degree(v));
    }
    int port_sum = 0;
    for (int v = 0; v < g.n; ++v) port_sum += g.degree(v);
    CHECK(port_sum == 2 * g.m());
}

TEST_CASE("random_tree endpoints and Pruefer oracle") {
    CHECK_THROWS_AS(random_tree(0, 1), std::invalid_argument);
    auto t1 = random_tree(1, 3);
    CHECK(t1.g.n == 1);
    CHECK(t1.g.m() == 0);
    auto t2 = random_tree(2, 3);
    CHECK(t2.g.m() == 1);
    CHECK(edge_set(t2.g).count({0, 1}) == 1);

    // replay the generator's sequence and decode it independently
    int n = 6;
    uint64_t seed = 7;
    Rng rng(splitmix64(seed));
    std::vector<int> seq(n - 2);
    for (int& x : seq) x = static_cast<int>(rng.below(n));
    auto t = random_tree(n, seed);
    auto oracle_edges = pruefer_decode_oracle(seq, n);
    Graph oracle = build_graph(oracle_edges);
    CHECK(edge_set(t.g) == edge_set(oracle));

    for (uint64_t s = 0; s < 30; ++s) {
        auto tr = random_tree(25, s);
        CHECK(is_tree(tr.g));
    }
}

TEST_CASE("truncated_regular_tree shape") {
    auto t0 = truncated_regular_tree(3, 0);
    CHECK(t0.g.n == 1);
    auto t1 = truncated_regular_tree(3, 1);
    CHECK(t1.g.n == 4);
    CHECK(t1.g.degree(0) == 3);
    auto t2 = truncated_regular_tree(3, 2);
    CHECK(t2.g.n == 10);  // 1 + 3 + 6
    // level sizes delta*(delta-1)^(k-1)
    auto t3 = truncated_regular_tree(4, 3);
    std::map<int, int> per_depth;
    for (int v = 0; v < t3.g.n; ++v) ++per_depth[t3.depth[v]];
    CHECK(per_depth[1] == 4);
    CHECK(per_depth[2] == 4 * 3);
    CHECK(per_depth[3] == 4 * 9);
    // labels = depth parity
    for (int v = 0; v < t3.g.n; ++v) CHECK(t3.g.labels[v] == t3.depth[v] % 2);
}

TEST_CASE("random proper coloring of the truncated regular tree") {
    auto star = truncated_regular_tree(2, 1);  // K_{1,2}, palette {1,2,3}
    std::map<std::pair<int, int>, int> freq;
    int trials = 30000;
    for (int s = 0; s < trials; ++s) {
        auto col = random_proper_coloring_t_delta(star, s);
        REQUIRE(col.color.size() == 2);
        CHECK(col.color[0] != col.color[1]);
        freq[std::minmax(col.color[0], col.color[1])]++;
    }
    CHECK(freq.size() == 3);
    for (auto& [pair, count] : freq) {
        (void)pair;
        // Binomial(30000, 1/3): sigma ~ 81; allow 4 sigma
        CHECK(std::abs(count - trials / 3) < 330);
    }

    // properness and totality by construction
    for (int delta = 2; delta <= 4; ++delta) {
        auto tree = truncated_regular_tree(delta, 2);
        auto col = random_proper_coloring_t_delta(tree, 99 + delta);
        CHECK(col.total());
        auto rep = verify_proper_edge_coloring(tree.g, col);
        CHECK(rep.proper());
        CHECK(rep.max_color_used <= 2 * delta - 1);
    }

    // seeded determinism
    auto tr = truncated_regular_tree(2, 1);
    auto a = random_proper_coloring_t_delta(tr, 5);
    auto b = random_proper_coloring_t_delta(tr, 5);
    CHECK(a.color == b.color);

    // not a regular truncation -> rejected
    auto path4 = root_tree_at(build_graph({{0, 1}, {1, 2}, {2, 3}}), 0);
    CHECK_THROWS_AS(random_proper_coloring_t_delta(path4, 1), std::invalid_argument);
}

TEST_CASE("incident color subsets are uniform over Delta-subsets") {
    // 3-sigma per subset at a fixed seed base
    for (int delta = 2; delta <= 4; ++delta) {
        auto tree = truncated_regular_tree(delta, 2);
        // an internal vertex: the first child of the root
        int internal = 1;
        REQUIRE(tree.g.degree(internal) == delta);
        int palette = 2 * delta - 1;
        std::map<std::vector<int>, int> hist;
        int trials = 100000;
        for (int s = 0; s < trials; ++s) {
            auto col = random_proper_coloring_t_delta(tree, 1000000ULL + s);
            std::vector<int> subset;
            for (auto [u, e] : tree.g.adj[internal]) {
                (void)u;
                subset.push_back(col.color[e]);
            }
            std::sort(subset.begin(), subset.end());
            hist[subset]++;
        }
        long long nsub = 1;
        {  // C(2*delta-1, delta)
            long long num = 1, den = 1;
            for (int i = 0; i < delta; ++i) {
                num *= palette - i;
                den *= i + 1;
            }
            nsub = num / den;
        }
        CHECK(static_cast<long long>(hist.size()) == nsub);
        double expect = double(trials) / double(nsub);
        double sigma = std::sqrt(expect * (1.0 - 1.0 / double(nsub)));
        for (auto& [subset, count] : hist) {
            (void)subset;
            CHECK(std::abs(count - expect) <= 3.0 * sigma);
        }
    }
}

TEST_CASE("power_graph") {
    Graph p3 = build_graph({{0, 1}, {1, 2}});
    Graph p3sq = power_graph(p3, 2);
    CHECK(p3sq.m() == 3);

    Graph p5 = build_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(power_graph(p5, 1).m() == p5.m());
    CHECK(power_graph(p5, 2).m() == 7);  // 4 + 3 pairs at distance 2

    // brute-force all-pairs oracle and idempotence up to port order on
    // trees with n <= 50
    for (uint64_t s = 0; s < 10; ++s) {
        int n = 20 + static_cast<int>(s * 3);
        auto t = random_tree(n, s);
        // Floyd-Warshall distances, independent of the BFS used by power_graph
        std::vector<std::vector<int>> dist(n, std::vector<int>(n, 1 << 20));
        for (int v = 0; v < n; ++v) dist[v][v] = 0;
        for (auto [u, v] : t.g.edges) dist[u][v] = dist[v][u] = 1;
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    dist[i][j] = std::min(dist[i][j], dist[i][m] + dist[m][j]);
        for (int a = 1; a <= 6; ++a) {
            Graph ga = power_graph(t.g, a);
            std::set<std::pair<int, int>> expect;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (dist[i][j] <= a) expect.insert({i, j});
            CHECK(edge_set(ga) == expect);
            Graph ga1 = power_graph(ga, 1);
            CHECK(edge_set(ga1) == expect);
        }
    }
}

TEST_CASE("verify_proper_edge_coloring") {
    Graph p3 = build_graph({{0, 1}, {1, 2}});
    PartialEdgeColoring all_bot{4, {0, 0}};
    auto rep = verify_proper_edge_coloring(p3, all_bot);
    CHECK(rep.proper());
    CHECK(rep.uncolored.size() == 2);

    PartialEdgeColoring clash{4, {1, 1}};
    auto rep2 = verify_proper_edge_coloring(p3, clash);
    REQUIRE(rep2.violations.size() == 1);
    CHECK(rep2.violations[0] == std::pair<int, int>{0, 1});

    PartialEdgeColoring wrong_size{4, {1}};
    CHECK_THROWS_AS(verify_proper_edge_coloring(p3, wrong_size), std::invalid_argument);
}

TEST_CASE("greedy_distance_dominating_set") {
    Graph single = build_graph({}, {0});
    auto ds = greedy_distance_dominating_set(single, {0}, 1);
    CHECK(ds == std::vector<int>{0});

    // star: center preferred
    Graph star = build_graph({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    std::vector<int> pref(star.n, 1);
    pref[0] = 0;
    auto ds2 = greedy_distance_dominating_set(star, {0, 1, 2, 3, 4, 5}, 1, pref);
    CHECK(ds2 == std::vector<int>{0});

    // P9 with d=1: greedy from the end gives exactly 3
    std::vector<std::pair<int, int>> pe;
    for (int i = 0; i < 8; ++i) pe.push_back({i, i + 1});
    Graph p9 = build_graph(pe);
    std::vector<int> all(p9.n);
    for (int i = 0; i < p9.n; ++i) all[i] = i;
    auto ds3 = greedy_distance_dominating_set(p9, all, 1);
    CHECK(ds3.size() == 3);

    // domination property on random trees
    for (uint64_t s = 0; s < 20; ++s) {
        auto t = random_tree(60, s);
        std::vector<int> comp(t.g.n);
        for (int i = 0; i < t.g.n; ++i) comp[i] = i;
        int d = 1 + static_cast<int>(s % 3);
        auto dom = greedy_distance_dominating_set(t.g, comp, d);
        std::vector<int> best(t.g.n, -1);
        for (int v : dom) {
            auto dist = bfs_distances(t.g, v, d);
            for (int u = 0; u < t.g.n; ++u)
                if (dist[u] >= 0) best[u] = 1;
        }
        for (int u = 0; u < t.g.n; ++u) CHECK(best[u] == 1);
    }

    // disconnected component rejected
    Graph two = build_graph({{0, 1}, {2, 3}});
    CHECK_THROWS_AS(greedy_distance_dominating_set(two, {0, 1, 2, 3}, 1), std::invalid_argument);
}

TEST_CASE("component_metrics") {
    Graph p4 = build_graph({{0, 1}, {1, 2}, {2, 3}});
    CHECK(component_metrics(p4, {}).empty());
    auto one = component_metrics(p4, {2});
    REQUIRE(one.size() == 1);
    CHECK(one[0].size == 1);
    CHECK(one[0].diameter == 0);
    auto whole = component_metrics(p4, {0, 1, 2, 3});
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].size == 4);
    CHECK(whole[0].diameter == 3);

    // BFS oracle on induced parts of a random tree
    auto t = random_tree(40, 5);
    std::vector<int> part;
    for (int v = 0; v < t.g.n; v += 2) part.push_back(v);
    auto metrics = component_metrics(t.g, part);
    int total = 0;
    for (auto& cm : metrics) total += cm.size;
    CHECK(total == static_cast<int>(part.size()));
}

TEST_CASE("graph json round trip") {
    auto t = truncated_regular_tree(3, 2);
    auto col = random_proper_coloring_t_delta(t, 4);
    std::string js = graph_to_json(t.g, &col, t.root);
    PartialEdgeColoring col2;
    int root = -1;
    Graph g2 = graph_from_json(js, &col2, &root);
    CHECK(g2.n == t.g.n);
    CHECK(root == t.root);
    CHECK(edge_set(g2) == edge_set(t.g));
    CHECK(col2.color == col.color);
    CHECK(g2.labels == t.g.labels);

    CHECK_THROWS(graph_from_json("{\"edges\": []}"));
}
