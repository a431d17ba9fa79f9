#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "localec/graph.hpp"

namespace localec {

// The materialized radius-t view of one entity.  The harness re-indexes the
// ball by BFS order from the center (following port order), so the local
// indices are a function of the ball contents only; a program handed a view
// cannot read anything outside it.
struct NeighborhoodView {
    int n = 0;
    std::vector<std::vector<std::pair<int, int>>> adj;  // local adjacency (neighbor, local edge)
    std::vector<std::pair<int, int>> edges;             // local edge endpoints
    int center = 0;                                     // local index of the center vertex
    int radius = 0;
    std::vector<long long> ids;       // global ids of ball members
    std::vector<int> labels;          // -1 if absent
    std::vector<long long> inputs;    // caller-provided per-entity inputs
    std::vector<uint64_t> tapes;      // per-entity random tape seeds
    std::vector<int> depth;           // distance from center

    int center_degree() const { return static_cast<int>(adj[center].size()); }
};

struct NodeProgram {
    // Either a single radius for all entities or one per entity.
    int radius = 0;
    std::vector<int> radii;  // overrides `radius` when non-empty
    std::function<long long(const NeighborhoodView&)> output_fn;

    int radius_of(int v) const { return radii.empty() ? radius : radii[v]; }
};

struct RunRecord {
    std::vector<long long> outputs;
    int rounds_used = 0;
    uint64_t seed = 0;
};

// Runs a one-shot program: every entity's output is computed from exactly its
// declared-radius view, including the random tapes of all ball members.
// tape_override replaces the default per-entity tape seeds (tests use it to
// perturb individual tapes).
RunRecord run_local(const Graph& g, const NodeProgram& program, uint64_t seed,
                    const std::vector<long long>& inputs = {},
                    const std::vector<uint64_t>* tape_override = nullptr);

// Context passed to a per-round step function: strictly radius-1 information.
struct RoundContext {
    int round = 0;
    long long id = 0;
    int degree = 0;
    int label = -1;
    long long state = 0;
    const std::vector<long long>* neighbor_states = nullptr;  // in port order
    uint64_t tape = 0;                                        // fresh per (entity, round)
};

using RoundFn = std::function<long long(const RoundContext&)>;

// Round-synchronous iteration: state threaded between rounds, one message
// exchange of radius 1 per round.
RunRecord iterate_local(const Graph& g, const RoundFn& step, int rounds, uint64_t seed,
                        const std::vector<long long>& initial_states = {});

// Builds the view run_local would hand to entity v (exposed for tests).
NeighborhoodView materialize_view(const Graph& g, int v, int radius, uint64_t seed,
                                  const std::vector<long long>& inputs = {},
                                  const std::vector<uint64_t>* tape_override = nullptr);

}  // namespace localec
