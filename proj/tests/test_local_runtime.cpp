#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "localec/graph.hpp"
#include "localec/local_runtime.hpp"
#include "localec/rng.hpp"

using namespace localec;

namespace {

Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return build_graph(e);
}

// digest of everything visible in a view
long long view_digest(const NeighborhoodView& v) {
    uint64_t h = 0x12345;
    auto mix = [&](uint64_t x) { h = mix64(h, x); };
    mix(v.n);
    mix(v.center);
    for (auto& a : v.adj) {
        mix(a.size());
        for (auto [u, e] : a) {
            mix(u);
            mix(e);
        }
    }
    for (int i = 0; i < v.n; ++i) {
        mix(static_cast<uint64_t>(v.ids[i]));
        mix(static_cast<uint64_t>(v.labels[i] + 1));
        mix(static_cast<uint64_t>(v.inputs[i]));
        mix(v.tapes[i]);
    }
    return static_cast<long long>(h >> 1);
}

}  // namespace

TEST_CASE("radius-0 program outputs its own label") {
    Graph g = build_graph({{0, 1}, {1, 2}}, {7, 8, 9});
    NodeProgram prog;
    prog.radius = 0;
    prog.output_fn = [](const NeighborhoodView& v) -> long long {
        return v.labels[v.center];
    };
    auto rec = run_local(g, prog, 1);
    CHECK(rec.outputs == std::vector<long long>{7, 8, 9});
    CHECK(rec.rounds_used == 0);
}

TEST_CASE("radius-1 degree program") {
    Graph star = build_graph({{0, 1}, {0, 2}, {0, 3}});
    NodeProgram prog;
    prog.radius = 1;
    prog.output_fn = [](const NeighborhoodView& v) -> long long { return v.center_degree(); };
    auto rec = run_local(star, prog, 1);
    CHECK(rec.outputs[0] == 3);
    CHECK(rec.outputs[1] == 1);
    CHECK(rec.rounds_used == 1);
}

TEST_CASE("determinism") {
    auto t = random_tree(50, 3);
    NodeProgram prog;
    prog.radius = 2;
    prog.output_fn = view_digest;
    auto a = run_local(t.g, prog, 42);
    auto b = run_local(t.g, prog, 42);
    CHECK(a.outputs == b.outputs);
    CHECK(a.rounds_used == b.rounds_used);
}

TEST_CASE("irregular per-entity radii") {
    Graph g = path(5);
    NodeProgram prog;
    prog.radii = {0, 1, 2, 1, 0};
    prog.output_fn = [](const NeighborhoodView& v) -> long long { return v.n; };
    auto rec = run_local(g, prog, 0);
    CHECK(rec.rounds_used == 2);
    CHECK(rec.outputs[0] == 1);
    CHECK(rec.outputs[2] == 5);
}

TEST_CASE("flooding max id") {
    Graph g = path(5);
    auto flood = [](const RoundContext& ctx) -> long long {
        long long mx = ctx.state;
        for (long long s : *ctx.neighbor_states) mx = std::max(mx, s);
        return mx;
    };
    std::vector<long long> init{0, 1, 2, 3, 4};
    auto r0 = iterate_local(g, flood, 0, 1, init);
    CHECK(r0.outputs == init);
    auto r4 = iterate_local(g, flood, 4, 1, init);
    for (long long o : r4.outputs) CHECK(o == 4);
    auto r2 = iterate_local(g, flood, 2, 1, init);
    CHECK(r2.outputs[0] == 2);  // radius-2 ball of vertex 0 is {0,1,2}
}

TEST_CASE("iterate_local matches run_local for flooding programs") {
    for (uint64_t s = 0; s < 8; ++s) {
        auto t = random_tree(40, s);
        std::vector<long long> ids(t.g.n);
        for (int v = 0; v < t.g.n; ++v) ids[v] = (1469 * v + 17) % 997;
        int R = 3;
        auto flood = [&](const RoundContext& ctx) -> long long {
            long long mx = ctx.state;
            for (long long x : *ctx.neighbor_states) mx = std::max(mx, x);
            return mx;
        };
        auto it = iterate_local(t.g, flood, R, s, ids);
        NodeProgram prog;
        prog.radius = R;
        prog.output_fn = [](const NeighborhoodView& v) -> long long {
            long long mx = 0;
            for (int i = 0; i < v.n; ++i) mx = std::max(mx, v.inputs[i]);
            return mx;
        };
        auto rl = run_local(t.g, prog, s, ids);
        CHECK(it.outputs == rl.outputs);
    }
}

TEST_CASE("locality soundness under far mutations") {
    Rng rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 30 + static_cast<int>(rng.below(170));
        auto t = random_tree(n, 1000 + trial);
        Graph g = t.g;
        g.labels.assign(n, 0);
        for (int v = 0; v < n; ++v) g.labels[v] = static_cast<int>(rng.below(5));
        std::vector<long long> inputs(n);
        for (auto& x : inputs) x = static_cast<long long>(rng.below(1000));
        std::vector<uint64_t> tapes(n);
        for (int v = 0; v < n; ++v) tapes[v] = mix64(99, v);

        int radius = 1 + static_cast<int>(rng.below(3));
        NodeProgram prog;
        prog.radius = radius;
        prog.output_fn = view_digest;
        auto base = run_local(g, prog, 99, inputs, &tapes);

        // perturb one entity's label, input, and tape
        int target = static_cast<int>(rng.below(n));
        Graph g2 = g;
        g2.labels[target] += 1;
        auto inputs2 = inputs;
        inputs2[target] += 12345;
        auto tapes2 = tapes;
        tapes2[target] ^= 0xdeadbeefULL;
        auto mut = run_local(g2, prog, 99, inputs2, &tapes2);

        auto dist = bfs_distances(g, target);
        for (int v = 0; v < n; ++v) {
            if (dist[v] > radius) {
                CHECK(base.outputs[v] == mut.outputs[v]);
            } else if (v == target) {
                CHECK(base.outputs[v] != mut.outputs[v]);
            }
        }
    }
}
