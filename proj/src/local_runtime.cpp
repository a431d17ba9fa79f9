#include "localec/local_runtime.hpp"

#include <stdexcept>

#include "localec/rng.hpp"

namespace localec {

NeighborhoodView materialize_view(const Graph& g, int v, int radius, uint64_t seed,
                                  const std::vector<long long>& inputs,
                                  const std::vector<uint64_t>* tape_override) {
    NeighborhoodView view;
    view.radius = radius;
    std::vector<int> local(g.n, -1);
    std::vector<int> members{v};
    local[v] = 0;
    view.depth.push_back(0);
    // BFS in port order; the local numbering depends only on ball contents
    for (size_t i = 0; i < members.size(); ++i) {
        int x = members[i];
        if (view.depth[local[x]] == radius) continue;
        for (auto [u, e] : g.adj[x]) {
            (void)e;
            if (local[u] < 0) {
                local[u] = static_cast<int>(members.size());
                members.push_back(u);
                view.depth.push_back(view.depth[local[x]] + 1);
            }
        }
    }
    view.n = static_cast<int>(members.size());
    view.center = 0;
    view.adj.assign(view.n, {});
    view.ids.resize(view.n);
    view.labels.assign(view.n, -1);
    view.inputs.assign(view.n, 0);
    view.tapes.resize(view.n);
    for (int li = 0; li < view.n; ++li) {
        int x = members[li];
        view.ids[li] = x;
        if (g.has_labels()) view.labels[li] = g.labels[x];
        if (!inputs.empty()) view.inputs[li] = inputs[x];
        view.tapes[li] = tape_override ? (*tape_override)[x] : mix64(seed, static_cast<uint64_t>(x));
    }
    // induced edges, kept in host port order at both endpoints
    std::vector<int> edge_local(g.m(), -1);
    for (int li = 0; li < view.n; ++li) {
        int x = members[li];
        for (auto [u, e] : g.adj[x]) {
            if (local[u] < 0) continue;
            if (edge_local[e] < 0) {
                edge_local[e] = static_cast<int>(view.edges.size());
                view.edges.push_back({std::min(li, local[u]), std::max(li, local[u])});
            }
            view.adj[li].push_back({local[u], edge_local[e]});
        }
    }
    return view;
}

RunRecord run_local(const Graph& g, const NodeProgram& program, uint64_t seed,
                    const std::vector<long long>& inputs,
                    const std::vector<uint64_t>* tape_override) {
    if (!program.radii.empty() && static_cast<int>(program.radii.size()) != g.n)
        throw std::invalid_argument("run_local: radii size mismatch");
    RunRecord rec;
    rec.seed = seed;
    rec.outputs.resize(g.n);
    for (int v = 0; v < g.n; ++v) {
        int r = program.radius_of(v);
        if (r < 0) throw std::invalid_argument("run_local: negative radius");
        rec.rounds_used = std::max(rec.rounds_used, r);
        NeighborhoodView view = materialize_view(g, v, r, seed, inputs, tape_override);
        rec.outputs[v] = program.output_fn(view);
    }
    return rec;
}

RunRecord iterate_local(const Graph& g, const RoundFn& step, int rounds, uint64_t seed,
                        const std::vector<long long>& initial_states) {
    if (rounds < 0) throw std::invalid_argument("iterate_local: rounds must be >= 0");
    RunRecord rec;
    rec.seed = seed;
    rec.rounds_used = rounds;
    std::vector<long long> state = initial_states;
    if (state.empty()) state.assign(g.n, 0);
    for (int r = 0; r < rounds; ++r) {
        std::vector<long long> next(g.n);
        for (int v = 0; v < g.n; ++v) {
            std::vector<long long> nbr;
            nbr.reserve(g.adj[v].size());
            for (auto [u, e] : g.adj[v]) {
                (void)e;
                nbr.push_back(state[u]);
            }
            RoundContext ctx;
            ctx.round = r;
            ctx.id = v;
            ctx.degree = g.degree(v);
            ctx.label = g.has_labels() ? g.labels[v] : -1;
            ctx.state = state[v];
            ctx.neighbor_states = &nbr;
            ctx.tape = mix64(mix64(seed, static_cast<uint64_t>(v)), static_cast<uint64_t>(r));
            next[v] = step(ctx);
        }
        state = std::move(next);
    }
    rec.outputs = std::move(state);
    return rec;
}

}  // namespace localec
