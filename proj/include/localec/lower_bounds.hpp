#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "localec/graph.hpp"
#include "localec/local_runtime.hpp"

namespace localec {

struct Orientation {
    // per edge: true = oriented from the label-0 endpoint to the label-1
    // endpoint ("0 -> 1"), false = the reverse
    std::vector<char> toward_one;
};

struct SinklessRunResult {
    Orientation orientation;
    std::vector<int> sinks;
    int rounds = 0;
    Graph selected_subgraph;              // the both-selected subgraph G'
    std::vector<int> selected_edge_ids;   // ids into the host graph
};

// The reduction from partial edge coloring to sinkless orientation on a
// 2-vertex-colored bipartite graph with minimum degree delta: each vertex
// selects delta incident edges (lowest ports first), the coloring program
// runs on the both-selected subgraph, and edges orient by the color rule.
SinklessRunResult ec_to_sinkless(const Graph& g, int delta, const NodeProgram& color_fn,
                                 uint64_t seed);

std::vector<int> verify_sinkless(const Graph& g, const Orientation& o);

// A radius-0 program for the line graph of G' that outputs a precomputed
// proper coloring (the hypothetical perfect algorithm).
NodeProgram perfect_coloring_oracle(const PartialEdgeColoring& coloring);
NodeProgram all_uncolored_oracle();

// Exact rational arithmetic for the zero-round analysis.
struct Rational {
    long long num = 0;
    long long den = 1;
    Rational() = default;
    Rational(long long n, long long d);
    static Rational from_int(long long n) { return Rational(n, 1); }
    Rational operator+(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator<(const Rational& o) const;
    bool operator==(const Rational& o) const;
    bool operator>=(const Rational& o) const { return !(*this < o); }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// A zero-round orientation strategy: q[i] = probability that an edge with
// input color i+1 orients 0 -> 1.
struct ZeroRoundAlg {
    std::vector<Rational> q;  // length 2*delta - 1
};

// Exact probability that a vertex with the given label is a sink under the
// random proper coloring of the regular tree: the incident color set is a
// uniform delta-subset of {1..2delta-1}; label 1 sinks when all edges orient
// 0 -> 1, label 0 when none do.
Rational zero_round_sink_probability(int delta, const ZeroRoundAlg& alg, int label);

Rational worst_label_failure(int delta, const ZeroRoundAlg& alg);

// Minimum over the grid {0, 1/grid_den, ..., 1}^(2delta-1) of the worst-label
// failure probability, exploiting symmetry under color permutations
// (non-decreasing representatives).  Exact integer arithmetic throughout.
Rational grid_minimum_failure(int delta, int grid_den);

double zero_round_sink_probability_real(int delta, const std::vector<double>& q, int label);

// Layered gadget for the recoloring lower bound.
struct LayerSizes {
    std::vector<long long> n;  // n[i] = size of layer i+1
    std::vector<long long> l;  // l[i] = leftovers at layer i+1
};

LayerSizes layer_sizes(int delta, int c, int ell);

struct LayeredGadget {
    Graph graph;
    PartialEdgeColoring coloring;
    int delta = 0, c = 0, ell = 0;
    int k = 0, kprime = 0;
    int e0 = -1;                      // the unique uncolored bridge
    std::vector<int> side;            // per vertex: 0 = u half, 1 = v half
    std::vector<int> layer;           // per vertex: 0 for the roots u0/v0
    std::vector<char> leftover;       // promoted two layers up
    std::vector<int> promoted_to;     // layer it was grouped into (-1 if none)
};

LayeredGadget build_gstar(int delta, int c, int ell, uint64_t seed);

struct GadgetReport {
    bool proper = true;
    bool e0_unique_uncolored = true;
    std::vector<int> palette_violations;     // edges on the wrong palette half
    std::vector<int> layer_violations;       // edges crossing illegal layers
    std::vector<int> block_violations;       // vertices with malformed blocks
    bool sizes_match = true;                 // layer counts vs layer_sizes
    bool pass() const {
        return proper && e0_unique_uncolored && palette_violations.empty() &&
               layer_violations.empty() && block_violations.empty() && sizes_match;
    }
};

GadgetReport verify_gstar(const LayeredGadget& g);

enum class RecolorVerdict { Certificate, Counterexample, Inconclusive };

struct ForcedRecolorStep {
    int vertex = -1;
    int forced_half = -1;             // the half forced on the lower edges
    std::vector<int> edges;           // the edges forced by this step
};

struct ForcedRecolorResult {
    RecolorVerdict verdict = RecolorVerdict::Inconclusive;
    std::vector<ForcedRecolorStep> steps;  // the derivation log
    std::string reason;
    bool exhaustive_checked = false;       // brute force agreed (small instances)
};

// Constraint propagation mirroring the forced-recoloring argument: freeze the
// coloring on the top `frozen_top` layers, push the palette-half forcing
// downward, and check that both halves collide at e0.  Small instances
// (<= 18 free edges) are cross-checked by exhaustive proper-completion search.
ForcedRecolorResult forced_recolor_check(const LayeredGadget& g, int frozen_top = 6);

std::string gadget_to_json(const LayeredGadget& g);
std::string certificate_to_json(const ForcedRecolorResult& r);

}  // namespace localec
