#include "localec/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "localec/rng.hpp"

namespace localec {

int Graph::max_degree() const {
    int mx = 0;
    for (int v = 0; v < n; ++v) mx = std::max(mx, degree(v));
    return mx;
}

Graph build_graph(const std::vector<std::pair<int, int>>& edge_list,
                  const std::vector<int>& labels) {
    int n = 0;
    for (auto [u, v] : edge_list) n = std::max({n, u + 1, v + 1});
    n = std::max(n, static_cast<int>(labels.size()));

    std::vector<char> seen(n, 0);
    std::set<std::pair<int, int>> dedup;
    for (auto [u, v] : edge_list) {
        if (u < 0 || v < 0)
            throw std::invalid_argument("build_graph: negative vertex id on edge (" +
                                        std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v)
            throw std::invalid_argument("build_graph: self-loop at vertex " + std::to_string(u));
        auto key = std::minmax(u, v);
        if (!dedup.insert(key).second)
            throw std::invalid_argument("build_graph: duplicate edge (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
        seen[u] = seen[v] = 1;
    }
    // dense id check: every id below n must be an endpoint or declared via labels
    for (int v = 0; v < n; ++v) {
        if (!seen[v] && static_cast<size_t>(v) >= labels.size())
            throw std::invalid_argument("build_graph: vertex ids not dense, missing " +
                                        std::to_string(v));
    }

    Graph g;
    g.n = n;
    g.edges = edge_list;
    g.adj.assign(n, {});
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        g.adj[u].push_back({v, e});
        g.adj[v].push_back({u, e});
    }
    if (!labels.empty()) {
        g.labels = labels;
        g.labels.resize(n, -1);
    }
    return g;
}

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edge_list) {
    Graph g;
    g.n = n;
    g.edges = edge_list;
    g.adj.assign(n, {});
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        if (u == v || u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("make_graph: bad edge");
        g.adj[u].push_back({v, e});
        g.adj[v].push_back({u, e});
    }
    return g;
}

std::vector<int> bfs_distances(const Graph& g, int src, int max_depth) {
    std::vector<int> dist(g.n, -1);
    std::deque<int> q{src};
    dist[src] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (max_depth >= 0 && dist[v] == max_depth) continue;
        for (auto [u, e] : g.adj[v]) {
            (void)e;
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
        }
    }
    return dist;
}

std::vector<int> ball(const Graph& g, int src, int rad) {
    std::vector<int> out{src};
    std::vector<int> dist(g.n, -1);
    dist[src] = 0;
    for (size_t i = 0; i < out.size(); ++i) {
        int v = out[i];
        if (dist[v] == rad) continue;
        for (auto [u, e] : g.adj[v]) {
            (void)e;
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                out.push_back(u);
            }
        }
    }
    return out;
}

std::vector<std::vector<int>> induced_components(const Graph& g, const std::vector<int>& part) {
    std::vector<char> in(g.n, 0), done(g.n, 0);
    for (int v : part) in[v] = 1;
    std::vector<std::vector<int>> comps;
    for (int s : part) {
        if (done[s]) continue;
        std::vector<int> comp{s};
        done[s] = 1;
        for (size_t i = 0; i < comp.size(); ++i) {
            for (auto [u, e] : g.adj[comp[i]]) {
                (void)e;
                if (in[u] && !done[u]) {
                    done[u] = 1;
                    comp.push_back(u);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

RootedTree root_tree_at(const Graph& g, int root) {
    RootedTree t;
    t.g = g;
    t.root = root;
    t.parent.assign(g.n, -1);
    t.parent_edge.assign(g.n, -1);
    t.depth.assign(g.n, -1);
    t.depth[root] = 0;
    std::deque<int> q{root};
    int reached = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        ++reached;
        for (auto [u, e] : g.adj[v]) {
            if (t.depth[u] < 0) {
                t.depth[u] = t.depth[v] + 1;
                t.parent[u] = v;
                t.parent_edge[u] = e;
                q.push_back(u);
            }
        }
    }
    if (reached != g.n) throw std::invalid_argument("root_tree_at: graph is not connected");
    if (g.m() != g.n - 1) throw std::invalid_argument("root_tree_at: graph is not a tree");
    return t;
}

bool is_tree(const Graph& g) {
    if (g.n == 0) return false;
    if (g.m() != g.n - 1) return false;
    auto d = bfs_distances(g, 0);
    return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

RootedTree random_tree(int n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_tree: n must be >= 1");
    if (n == 1) {
        Graph g;
        g.n = 1;
        g.adj.assign(1, {});
        RootedTree t;
        t.g = g;
        t.root = 0;
        t.parent = {-1};
        t.parent_edge = {-1};
        t.depth = {0};
        return t;
    }
    Rng rng(splitmix64(seed));
    std::vector<int> pruefer(n - 2);
    for (int& x : pruefer) x = static_cast<int>(rng.below(n));

    // Pruefer decoding
    std::vector<int> deg(n, 1);
    for (int x : pruefer) ++deg[x];
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) leaves.insert(v);
    std::vector<std::pair<int, int>> edge_list;
    for (int x : pruefer) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edge_list.push_back({leaf, x});
        if (--deg[x] == 1) leaves.insert(x);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    edge_list.push_back({a, b});
    return root_tree_at(build_graph(edge_list), 0);
}

RootedTree random_tree_max_degree(int n, int max_deg, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_tree_max_degree: n must be >= 1");
    if (max_deg < 2 && n > 2)
        throw std::invalid_argument("random_tree_max_degree: max_deg must be >= 2");
    Rng rng(splitmix64(seed ^ 0x7e57ab1eULL));
    std::vector<int> deg(n, 0);
    std::vector<int> open;  // vertices with spare capacity
    std::vector<std::pair<int, int>> edge_list;
    open.push_back(0);
    for (int v = 1; v < n; ++v) {
        int idx = static_cast<int>(rng.below(open.size()));
        int u = open[idx];
        edge_list.push_back({u, v});
        if (++deg[u] >= max_deg) {
            open[idx] = open.back();
            open.pop_back();
        }
        deg[v] = 1;
        if (deg[v] < max_deg) open.push_back(v);
    }
    if (n == 1) {
        RootedTree t;
        t.g.n = 1;
        t.g.adj.assign(1, {});
        t.root = 0;
        t.parent = {-1};
        t.parent_edge = {-1};
        t.depth = {0};
        return t;
    }
    return root_tree_at(build_graph(edge_list), 0);
}

RootedTree truncated_regular_tree(int delta, int height) {
    if (delta < 2) throw std::invalid_argument("truncated_regular_tree: delta must be >= 2");
    if (height < 0) throw std::invalid_argument("truncated_regular_tree: height must be >= 0");
    std::vector<std::pair<int, int>> edge_list;
    std::vector<int> labels{0};
    std::vector<int> frontier{0};
    int next_id = 1;
    for (int d = 1; d <= height; ++d) {
        std::vector<int> next;
        for (int v : frontier) {
            int children = (d == 1) ? delta : delta - 1;
            for (int c = 0; c < children; ++c) {
                edge_list.push_back({v, next_id});
                labels.push_back(d % 2);
                next.push_back(next_id);
                ++next_id;
            }
        }
        frontier = std::move(next);
    }
    if (edge_list.empty()) {
        RootedTree t;
        t.g.n = 1;
        t.g.adj.assign(1, {});
        t.g.labels = {0};
        t.root = 0;
        t.parent = {-1};
        t.parent_edge = {-1};
        t.depth = {0};
        return t;
    }
    return root_tree_at(build_graph(edge_list, labels), 0);
}

namespace {

// shared by the regular-graph builders: resolve loops and parallel edges in a
// stub pairing by random pair swaps
void repair_pairing(std::vector<std::pair<int, int>>& pairs, Rng& rng) {
    std::vector<std::pair<uint64_t, int>> keys(pairs.size());
    for (int round = 0; round < 20000; ++round) {
        for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
            auto [a, b] = std::minmax(pairs[i].first, pairs[i].second);
            keys[i] = {(static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b), i};
        }
        std::sort(keys.begin(), keys.end());
        std::vector<int> bad_idx;
        for (size_t i = 0; i < keys.size(); ++i) {
            int idx = keys[i].second;
            if (pairs[idx].first == pairs[idx].second ||
                (i > 0 && keys[i].first == keys[i - 1].first))
                bad_idx.push_back(idx);
        }
        if (bad_idx.empty()) return;
        for (int i : bad_idx) {
            int j = static_cast<int>(rng.below(pairs.size()));
            std::swap(pairs[i].second, pairs[j].second);
        }
    }
    throw std::runtime_error("regular graph generation failed to converge");
}

}  // namespace

Graph random_regular_graph(int n, int delta, uint64_t seed) {
    if (n <= delta) throw std::invalid_argument("random_regular_graph: need n > delta");
    if ((static_cast<long long>(n) * delta) % 2 != 0)
        throw std::invalid_argument("random_regular_graph: n*delta must be even");
    Rng rng(splitmix64(seed ^ 0x2e6ULL));
    std::vector<int> stubs;
    stubs.reserve(static_cast<size_t>(n) * delta);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < delta; ++i) stubs.push_back(v);
    rng.shuffle(stubs);
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) pairs.push_back({stubs[i], stubs[i + 1]});
    repair_pairing(pairs, rng);
    return build_graph(pairs);
}

Graph random_regular_bipartite(int half, int delta, uint64_t seed) {
    if (half < delta) throw std::invalid_argument("random_regular_bipartite: need half >= delta");
    Rng rng(splitmix64(seed ^ 0xb1bULL));
    // union of delta random permutations, with swap repair for parallel edges
    std::vector<std::pair<int, int>> pairs;
    for (int r = 0; r < delta; ++r) {
        std::vector<int> perm(half);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        for (int i = 0; i < half; ++i) pairs.push_back({i, half + perm[i]});
    }
    repair_pairing(pairs, rng);
    std::vector<int> labels(2 * half, 0);
    for (int v = half; v < 2 * half; ++v) labels[v] = 1;
    return build_graph(pairs, labels);
}

PartialEdgeColoring random_proper_coloring_t_delta(const RootedTree& tree, uint64_t seed) {
    const Graph& g = tree.g;
    PartialEdgeColoring col;
    if (g.m() == 0) {
        col.palette_size = 0;
        return col;
    }
    int delta = g.degree(tree.root);
    int height = *std::max_element(tree.depth.begin(), tree.depth.end());
    // shape check: root degree delta, internal degree delta, leaves at depth height
    for (int v = 0; v < g.n; ++v) {
        int expect = (v == tree.root) ? delta : (tree.depth[v] == height ? 1 : delta);
        if (g.degree(v) != expect)
            throw std::invalid_argument(
                "random_proper_coloring_t_delta: tree is not a truncated regular tree (vertex " +
                std::to_string(v) + ")");
    }
    int palette = 2 * delta - 1;
    col.palette_size = palette;
    col.color.assign(g.m(), 0);
    Rng rng(splitmix64(seed ^ 0x7de17aULL));

    col.color[0] = 1 + static_cast<int>(rng.below(palette));
    std::vector<char> processed(g.n, 0);
    std::deque<int> queue{g.edges[0].first, g.edges[0].second};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (processed[v]) continue;
        processed[v] = 1;
        int seed_color = 0;
        std::vector<int> uncolored;
        for (auto [u, e] : g.adj[v]) {
            (void)u;
            if (col.color[e] != 0)
                seed_color = col.color[e];
            else
                uncolored.push_back(e);
        }
        if (uncolored.empty()) continue;
        // uniform (delta-1)-subset of the 2*delta-2 colors != seed_color,
        // assigned to the uncolored edges in random order
        std::vector<int> pool;
        for (int c = 1; c <= palette; ++c)
            if (c != seed_color) pool.push_back(c);
        rng.shuffle(pool);
        std::vector<int> subset(pool.begin(), pool.begin() + (delta - 1));
        rng.shuffle(subset);
        for (size_t i = 0; i < uncolored.size(); ++i) {
            col.color[uncolored[i]] = subset[i];
            queue.push_back(g.other(uncolored[i], v));
        }
    }
    return col;
}

Graph power_graph(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("power_graph: k must be >= 1");
    std::vector<std::pair<int, int>> edge_list;
    for (int v = 0; v < g.n; ++v) {
        auto d = bfs_distances(g, v, k);
        for (int u = v + 1; u < g.n; ++u)
            if (d[u] >= 1 && d[u] <= k) edge_list.push_back({v, u});
    }
    Graph p = make_graph(g.n, edge_list);
    p.labels = g.labels;
    return p;
}

Graph line_graph(const Graph& g) {
    std::vector<std::pair<int, int>> edge_list;
    for (int v = 0; v < g.n; ++v) {
        const auto& inc = g.adj[v];
        for (size_t i = 0; i < inc.size(); ++i)
            for (size_t j = i + 1; j < inc.size(); ++j)
                edge_list.push_back({inc[i].second, inc[j].second});
    }
    return make_graph(g.m(), edge_list);
}

ColoringReport verify_proper_edge_coloring(const Graph& g, const PartialEdgeColoring& c) {
    if (static_cast<int>(c.color.size()) != g.m())
        throw std::invalid_argument("verify_proper_edge_coloring: coloring covers " +
                                    std::to_string(c.color.size()) + " edges, graph has " +
                                    std::to_string(g.m()));
    ColoringReport rep;
    for (int e = 0; e < g.m(); ++e) {
        if (c.color[e] == 0)
            rep.uncolored.push_back(e);
        else
            rep.max_color_used = std::max(rep.max_color_used, c.color[e]);
    }
    for (int v = 0; v < g.n; ++v) {
        const auto& inc = g.adj[v];
        for (size_t i = 0; i < inc.size(); ++i) {
            int ei = inc[i].second;
            if (c.color[ei] == 0) continue;
            for (size_t j = i + 1; j < inc.size(); ++j) {
                int ej = inc[j].second;
                if (c.color[ej] == c.color[ei]) rep.violations.push_back({ei, ej});
            }
        }
    }
    return rep;
}

std::vector<int> greedy_distance_dominating_set(const Graph& g, const std::vector<int>& component,
                                                int d, const std::vector<int>& preference) {
    if (component.empty()) return {};
    std::vector<char> in(g.n, 0);
    for (int v : component) in[v] = 1;
    {  // connectivity precondition
        auto comps = induced_components(g, component);
        if (comps.size() != 1)
            throw std::invalid_argument(
                "greedy_distance_dominating_set: component is not connected");
    }
    std::vector<char> covered(g.n, 0);
    auto ball_in = [&](int v) {
        std::vector<int> members{v};
        std::vector<int> dist(g.n, -1);
        dist[v] = 0;
        for (size_t i = 0; i < members.size(); ++i) {
            int x = members[i];
            if (dist[x] == d) continue;
            for (auto [u, e] : g.adj[x]) {
                (void)e;
                if (in[u] && dist[u] < 0) {
                    dist[u] = dist[x] + 1;
                    members.push_back(u);
                }
            }
        }
        return members;
    };
    auto rank = [&](int v) { return preference.empty() ? 0 : preference[v]; };
    auto fresh_coverage = [&](int v) {
        int c = 0;
        for (int u : ball_in(v))
            if (!covered[u]) ++c;
        return c;
    };
    // Candidates are the still-uncovered vertices, taken in preference-class
    // order; within a class, prefer the pick covering the most uncovered
    // vertices (lazy re-evaluation), ties by id.
    std::vector<int> chosen;
    // (-class, coverage, -id) max-heap, with stale coverage values
    std::priority_queue<std::tuple<int, int, int>> heap;
    for (int v : component) heap.push({-rank(v), fresh_coverage(v), -v});
    while (!heap.empty()) {
        auto [nrank, cov, nv] = heap.top();
        heap.pop();
        int v = -nv;
        if (covered[v]) continue;
        int now = fresh_coverage(v);
        if (now != cov) {
            heap.push({nrank, now, nv});
            continue;
        }
        chosen.push_back(v);
        for (int u : ball_in(v)) covered[u] = 1;
    }
    return chosen;
}

std::vector<ComponentMetric> component_metrics(const Graph& g, const std::vector<int>& part) {
    std::vector<ComponentMetric> out;
    for (auto& comp : induced_components(g, part)) {
        ComponentMetric cm;
        cm.size = static_cast<int>(comp.size());
        cm.vertices = comp;
        std::vector<char> in(g.n, 0);
        for (int v : comp) in[v] = 1;
        // exact diameter: BFS inside the component from every vertex
        int diam = 0;
        for (int s : comp) {
            std::vector<int> dist(g.n, -1);
            std::vector<int> frontier{s};
            dist[s] = 0;
            for (size_t i = 0; i < frontier.size(); ++i) {
                int x = frontier[i];
                for (auto [u, e] : g.adj[x]) {
                    (void)e;
                    if (in[u] && dist[u] < 0) {
                        dist[u] = dist[x] + 1;
                        diam = std::max(diam, dist[u]);
                        frontier.push_back(u);
                    }
                }
            }
        }
        cm.diameter = diam;
        out.push_back(std::move(cm));
    }
    return out;
}

std::string graph_to_json(const Graph& g, const PartialEdgeColoring* coloring, int root) {
    nlohmann::json j;
    j["n"] = g.n;
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edges) j["edges"].push_back({u, v});
    if (g.has_labels()) {
        nlohmann::json lab = nlohmann::json::object();
        for (int v = 0; v < g.n; ++v)
            if (g.labels[v] >= 0) lab[std::to_string(v)] = g.labels[v];
        j["labels"] = lab;
    }
    if (root >= 0) j["root"] = root;
    if (coloring) {
        nlohmann::json col = nlohmann::json::object();
        for (int e = 0; e < g.m(); ++e)
            if (coloring->color[e] != 0) col[std::to_string(e)] = coloring->color[e];
        j["colors"] = col;
        j["palette_size"] = coloring->palette_size;
    }
    return j.dump(2);
}

Graph graph_from_json(const std::string& text, PartialEdgeColoring* coloring, int* root) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("graph json: missing \"n\" or \"edges\"");
    int n = j["n"].get<int>();
    std::vector<std::pair<int, int>> edge_list;
    for (auto& e : j["edges"]) edge_list.push_back({e[0].get<int>(), e[1].get<int>()});
    std::vector<int> labels;
    if (j.contains("labels")) {
        labels.assign(n, -1);
        for (auto& [k, v] : j["labels"].items()) labels[std::stoi(k)] = v.get<int>();
    }
    Graph g = edge_list.empty() ? Graph{} : build_graph(edge_list, labels);
    if (g.n < n) {
        g.n = n;
        g.adj.resize(n);
        if (!labels.empty()) g.labels = labels;
    }
    if (root) *root = j.contains("root") ? j["root"].get<int>() : -1;
    if (coloring) {
        coloring->color.assign(g.m(), 0);
        coloring->palette_size = j.value("palette_size", 0);
        if (j.contains("colors")) {
            for (auto& [k, v] : j["colors"].items()) {
                int e = std::stoi(k);
                if (e < 0 || e >= g.m())
                    throw std::invalid_argument("graph json: color for unknown edge " + k);
                coloring->color[e] = v.get<int>();
                coloring->palette_size = std::max(coloring->palette_size, coloring->color[e]);
            }
        }
    }
    return g;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace localec
