#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace localec {

// Undirected simple graph with per-vertex port numbering.  Ports are the
// 1-based positions in adj[v], assigned in edge insertion order.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;                  // endpoints as given
    std::vector<std::vector<std::pair<int, int>>> adj;       // per vertex: (neighbor, edge id)
    std::vector<int> labels;                                 // per vertex, empty if unlabeled

    int m() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    int max_degree() const;
    bool has_labels() const { return !labels.empty(); }
    // the endpoint of edge e that is not v
    int other(int e, int v) const {
        return edges[e].first == v ? edges[e].second : edges[e].first;
    }
};

struct RootedTree {
    Graph g;
    int root = 0;
    std::vector<int> parent;       // parent vertex, -1 at root
    std::vector<int> parent_edge;  // edge id to parent, -1 at root
    std::vector<int> depth;
};

// Edge coloring with colors 1..palette_size; 0 marks an uncolored edge.
struct PartialEdgeColoring {
    int palette_size = 0;
    std::vector<int> color;

    bool total() const {
        for (int c : color)
            if (c == 0) return false;
        return true;
    }
    int max_color_used() const {
        int mx = 0;
        for (int c : color) mx = std::max(mx, c);
        return mx;
    }
};

struct ColoringReport {
    std::vector<std::pair<int, int>> violations;  // pairs of adjacent edges sharing a color
    std::vector<int> uncolored;
    int max_color_used = 0;
    bool proper() const { return violations.empty(); }
};

struct ComponentMetric {
    int size = 0;
    int diameter = 0;
    std::vector<int> vertices;
};

Graph build_graph(const std::vector<std::pair<int, int>>& edge_list,
                  const std::vector<int>& labels = {});

// Constructs a graph with an explicit vertex count (isolated vertices
// allowed); used for derived graphs such as line graphs.
Graph make_graph(int n, const std::vector<std::pair<int, int>>& edge_list);

// Uniformly random labeled tree on n vertices (Pruefer decoding), rooted at 0.
RootedTree random_tree(int n, uint64_t seed);

// Random tree with maximum degree <= max_deg (random attachment under the cap).
RootedTree random_tree_max_degree(int n, int max_deg, uint64_t seed);

// Depth-h truncation of the infinite Delta-regular tree: the root has Delta
// children, internal vertices Delta-1.  Vertices carry the 2-coloring by
// depth parity.
RootedTree truncated_regular_tree(int delta, int height);

// Random Delta-regular multigraph-free graph via stub pairing with conflict
// resampling.  n * delta must be even.
Graph random_regular_graph(int n, int delta, uint64_t seed);

// Random delta-regular bipartite graph on 2*half vertices with the
// bipartition stored in labels (0/1).
Graph random_regular_bipartite(int half, int delta, uint64_t seed);

// The random proper (2*Delta-1)-edge coloring process on a truncated regular
// tree: the first edge is colored uniformly; each newly reached vertex picks
// a uniform (Delta-1)-subset of the colors unused at it and assigns the
// subset to its uncolored edges in random order.
PartialEdgeColoring random_proper_coloring_t_delta(const RootedTree& tree, uint64_t seed);

Graph power_graph(const Graph& g, int k);

// Line graph; vertex i of the result corresponds to edge i of g.
Graph line_graph(const Graph& g);

ColoringReport verify_proper_edge_coloring(const Graph& g, const PartialEdgeColoring& c);

// Greedy distance-d dominating set of a connected component: repeatedly pick
// the most preferred uncovered vertex and cover its radius-d ball (distances
// inside the induced subgraph).  preference[v] gives the rank; lower is
// earlier; ties by vertex id.  An empty preference means id order.
std::vector<int> greedy_distance_dominating_set(const Graph& g,
                                                const std::vector<int>& component,
                                                int d,
                                                const std::vector<int>& preference = {});

std::vector<ComponentMetric> component_metrics(const Graph& g, const std::vector<int>& part);

// BFS distances from src; -1 beyond max_depth (max_depth < 0 means unbounded).
std::vector<int> bfs_distances(const Graph& g, int src, int max_depth = -1);

// All vertices within distance rad of src, in BFS order.
std::vector<int> ball(const Graph& g, int src, int rad);

// Connected components of the subgraph induced by `part`.
std::vector<std::vector<int>> induced_components(const Graph& g, const std::vector<int>& part);

RootedTree root_tree_at(const Graph& g, int root);

bool is_tree(const Graph& g);

// JSON serialization:
// {"n": int, "edges": [[u,v],...], "labels": {"v": int}?, "root": int?,
//  "colors": {"edge_index": int}?}
std::string graph_to_json(const Graph& g, const PartialEdgeColoring* coloring = nullptr,
                          int root = -1);
Graph graph_from_json(const std::string& text, PartialEdgeColoring* coloring = nullptr,
                      int* root = nullptr);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace localec
