#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "localec/graph.hpp"

namespace localec {

enum class PartKind { DiameterBounded, DiameterZero };

struct Decomposition {
    int target_power = 1;                 // k of T^k
    std::vector<int> part;                // per vertex
    std::vector<PartKind> kinds;          // per part
    std::vector<int> diameter_bounds;     // per part, -1 for zero-diameter parts
    // per part: whether same-part components are promised to be > k apart in
    // the tree (the two-part construction promises it; the mixed one does not
    // for its bounded part).  Empty = promised for every diameter-bounded part.
    std::vector<char> separated;
    int num_parts() const { return static_cast<int>(kinds.size()); }
    bool part_separated(int p) const {
        if (separated.empty()) return kinds[p] == PartKind::DiameterBounded;
        return separated[p] != 0;
    }
};

enum class TreeOp { Rake, CompressPath, CompressBall, CompressLowDegree };

struct RemovalTrace {
    std::vector<TreeOp> ops;
    std::vector<std::vector<int>> removed;  // per operation
    int rake_count = 0;
    int compress_count = 0;
};

// Removes exactly the degree-<=1 vertices of the surviving forest.
std::vector<int> rake(const Graph& g, const std::vector<char>& alive);

// Removes all vertices on maximal degree-<=2 paths with at least ell vertices.
std::vector<int> compress_path(const Graph& g, const std::vector<char>& alive, int ell);

// Removes vertices whose ceil(2.5k)-ball in the surviving forest has at most
// lambda vertices.
std::vector<int> compress_ball(const Graph& g, const std::vector<char>& alive, int k, int lambda);

struct RulingSetResult {
    std::vector<int> chosen;  // positions on the path, 0-based
    int rounds = 0;
};

// Independent set of positions on a path of `length` vertices such that the
// gaps (components of the complement) all have size in [3k, 6k].  ids feed
// the deterministic symmetry breaking.
RulingSetResult ruling_set_on_path(const std::vector<long long>& ids, int k);

struct DecomposeResult {
    Decomposition decomposition;
    RemovalTrace trace;
    int rounds = 0;  // LOCAL round bookkeeping
};

// Two-part decomposition of T^k: 3d+1 rakes, then rounds of one path
// compression (ell = 20k) followed by ell-1 rakes, with backward labeling.
// Components of the same label are separated by distance > k in T and have
// tree diameter at most kTwoPartDiamC * (k log2 s + d + 1).
DecomposeResult decompose_two_part(const Graph& tree, int k, long long s_hint, int d_hint = 0);

// Mixed decomposition of T^k: ball compressions mark the congested zones;
// unmarked vertices form one diameter-bounded part, marked vertices are
// colored into independent (in T^k) classes.
DecomposeResult decompose_mixed(const Graph& tree, int k, int lambda, long long s_hint = -1,
                                int d_hint = 0);

struct MixedDecompositionInfo {
    std::vector<int> marked;       // the marked vertex set
    int marked_graph_max_degree = 0;
    int num_zero_parts = 0;
};

// Extra structural facts of the last decompose_mixed call live in the result
// of verify; this helper recomputes them exactly.
MixedDecompositionInfo mixed_info(const Graph& tree, int k, const Decomposition& d);

struct DecompositionReport {
    bool labeling_total = false;
    // C1: same-part distinct components at T-distance <= k
    std::vector<std::pair<int, int>> separation_violations;
    // diameter-zero classes: pairs at T-distance <= k
    std::vector<std::pair<int, int>> independence_violations;
    struct PartStats {
        int part = 0;
        int components = 0;          // T-connected components
        int max_diameter_tree = 0;   // measured in T
        int max_diameter_power = 0;  // measured in T^k (exact when separated)
        int max_size = 0;
        int power_merges = 0;        // component pairs joined only in T^k
    };
    std::vector<PartStats> parts;
    std::vector<int> diameter_violations;  // parts exceeding their bound
    bool pass() const {
        return labeling_total && separation_violations.empty() &&
               independence_violations.empty() && diameter_violations.empty();
    }
};

// Exact verification: components, separation, independence, and diameters
// against the per-part bounds (diameter bound is interpreted in T; parts
// with bound < 0 are skipped).
DecompositionReport verify_decomposition(const Graph& tree, int k, const Decomposition& d,
                                         const std::vector<int>& bounds_tree = {});

struct TreeEdgeColoringResult {
    PartialEdgeColoring coloring;
    int rounds = 0;
    RemovalTrace trace;
};

// Total edge coloring of a tree with exactly max-degree colors, via
// alternating low-degree compressions and rakes with backward recoloring.
// k_override forces the compression degree (0 = derived from the degree).
TreeEdgeColoringResult tree_delta_edge_coloring(const Graph& tree, int k_override = 0);

// Total (delta+1)-edge coloring of an oriented (rooted) tree: initial colors
// by sibling rank, then path classes recolored with {i, delta, delta+1}.
TreeEdgeColoringResult oriented_tree_plus_one_coloring(const RootedTree& tree,
                                                       const std::vector<long long>& ids = {});

// Decomposition JSON:
// {"k": int, "parts": {"v": part}, "kinds": {"part": {"type": "diam"|"zero",
//  "bound": int}}}
std::string decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const std::string& text);

}  // namespace localec
