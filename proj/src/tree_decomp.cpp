#include "localec/tree_decomp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "localec/constants.hpp"
#include "localec/linial.hpp"
#include "localec/nibble.hpp"

namespace localec {

namespace {

int alive_degree(const Graph& g, const std::vector<char>& alive, int v) {
    int d = 0;
    for (auto [u, e] : g.adj[v]) {
        (void)e;
        if (alive[u]) ++d;
    }
    return d;
}

}  // namespace

std::vector<int> rake(const Graph& g, const std::vector<char>& alive) {
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
        if (alive[v] && alive_degree(g, alive, v) <= 1) out.push_back(v);
    return out;
}

std::vector<int> compress_path(const Graph& g, const std::vector<char>& alive, int ell) {
    if (ell < 2) throw std::invalid_argument("compress_path: ell must be >= 2");
    // maximal chains of alive degree-<=2 vertices; a vertex is removed iff its
    // chain has at least ell vertices
    std::vector<char> low(g.n, 0);
    for (int v = 0; v < g.n; ++v)
        if (alive[v] && alive_degree(g, alive, v) <= 2) low[v] = 1;
    std::vector<int> chain_id(g.n, -1);
    std::vector<int> chain_size;
    for (int v = 0; v < g.n; ++v) {
        if (!low[v] || chain_id[v] >= 0) continue;
        int id = static_cast<int>(chain_size.size());
        chain_size.push_back(0);
        std::vector<int> stack{v};
        chain_id[v] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++chain_size[id];
            for (auto [u, e] : g.adj[x]) {
                (void)e;
                if (alive[u] && low[u] && chain_id[u] < 0) {
                    chain_id[u] = id;
                    stack.push_back(u);
                }
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
        if (low[v] && chain_size[chain_id[v]] >= ell) out.push_back(v);
    return out;
}

std::vector<int> compress_ball(const Graph& g, const std::vector<char>& alive, int k,
                               int lambda) {
    if (lambda < 1) throw std::invalid_argument("compress_ball: lambda must be >= 1");
    // the ball is measured in the static tree; only surviving members count
    int radius = static_cast<int>(std::ceil(2.5 * k));
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v) {
        if (!alive[v]) continue;
        int count = 0;
        for (int u : ball(g, v, radius))
            if (alive[u]) ++count;
        if (count <= lambda) out.push_back(v);
    }
    return out;
}

namespace {

// deterministic 3-coloring of a sequence of distinct ids (a path), counting
// the color-reduction rounds
std::pair<std::vector<int>, int> path_three_coloring(const std::vector<long long>& ids) {
    int n = static_cast<int>(ids.size());
    std::vector<long long> color(ids);
    int rounds = 0;
    // iterated pointer-jumping reduction on (position of differing bit, bit)
    while (true) {
        long long mx = 0;
        for (long long c : color) mx = std::max(mx, c);
        if (mx < 6) break;
        std::vector<long long> next(n);
        for (int i = 0; i < n; ++i) {
            long long prev = (i == 0) ? (color[i] ^ 1) : color[i - 1];
            long long diff = color[i] ^ prev;
            int bit = __builtin_ctzll(diff);
            next[i] = 2LL * bit + ((color[i] >> bit) & 1);
        }
        color = std::move(next);
        ++rounds;
        if (rounds > 64) throw std::runtime_error("path coloring failed to converge");
    }
    // shrink 6 -> 3 by recoloring classes 3,4,5 with the smallest free color
    for (long long c = 5; c >= 3; --c) {
        for (int i = 0; i < n; ++i) {
            if (color[i] != c) continue;
            long long left = (i == 0) ? -1 : color[i - 1];
            long long right = (i == n - 1) ? -1 : color[i + 1];
            for (long long f = 0; f < 3; ++f)
                if (f != left && f != right) {
                    color[i] = f;
                    break;
                }
        }
        ++rounds;
    }
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = static_cast<int>(color[i]);
    return {out, rounds};
}

// maximal independent set of a path given a proper 3-coloring
std::vector<char> path_mis(const std::vector<int>& coloring) {
    int n = static_cast<int>(coloring.size());
    std::vector<char> in(n, 0);
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < n; ++i) {
            if (coloring[i] != c || in[i]) continue;
            bool blocked = (i > 0 && in[i - 1]) || (i + 1 < n && in[i + 1]);
            if (!blocked) in[i] = 1;
        }
    }
    return in;
}

}  // namespace

RulingSetResult ruling_set_on_path(const std::vector<long long>& ids, int k) {
    int n = static_cast<int>(ids.size());
    if (k < 1) throw std::invalid_argument("ruling_set_on_path: k must be >= 1");
    if (n < 6 * k + 1)
        throw std::invalid_argument("ruling_set_on_path: path too short (" + std::to_string(n) +
                                    " < " + std::to_string(6 * k + 1) + ")");
    RulingSetResult res;
    // start with gaps in [1,2]
    std::vector<int> chosen;
    for (int i = 1; i < n; i += 2) chosen.push_back(i);
    int alpha = 1;

    auto enforce_beta = [&](int beta) {
        // merge undersized end runs into their neighbor first
        if (!chosen.empty() && chosen.front() < beta && chosen.size() > 1)
            chosen.erase(chosen.begin());
        if (!chosen.empty() && (n - 1 - chosen.back()) < beta && chosen.size() > 1)
            chosen.pop_back();
        // a single survivor is repositioned so both end runs reach beta
        if (chosen.size() == 1)
            chosen[0] = std::clamp(chosen[0], beta, n - 1 - beta);
        // subdivide oversized runs (each split leaves pieces of >= beta)
        std::vector<int> fixed;
        auto push_run = [&](int lo, int hi) {
            int len = hi - lo + 1;
            while (len > 2 * beta) {
                fixed.push_back(lo + beta);
                lo += beta + 1;
                len = hi - lo + 1;
            }
        };
        int prev = -1;
        for (int c : chosen) {
            if (c - prev - 1 > 0) push_run(prev + 1, c - 1);
            fixed.push_back(c);
            prev = c;
        }
        if (prev < n - 1) push_run(prev + 1, n - 1);
        std::sort(fixed.begin(), fixed.end());
        chosen = std::move(fixed);
    };

    while (alpha < 3 * k) {
        int beta = std::min(2 * alpha + 1, 3 * k);
        // contract: the chosen positions form the imaginary path
        std::vector<long long> contracted_ids;
        for (int c : chosen) contracted_ids.push_back(ids[c]);
        auto [col, col_rounds] = path_three_coloring(contracted_ids);
        auto mis = path_mis(col);
        std::vector<int> next;
        for (size_t i = 0; i < chosen.size(); ++i)
            if (mis[i]) next.push_back(chosen[i]);
        chosen = std::move(next);
        enforce_beta(beta);
        res.rounds += (col_rounds + 2) * alpha;
        alpha = beta;
    }
    // final exact normalization to [3k, 6k]
    enforce_beta(3 * k);
    res.chosen = chosen;

    // postcondition: gaps within [3k, 6k], independence
    int prev = -1;
    std::vector<int> runs;
    for (int c : res.chosen) {
        runs.push_back(c - prev - 1);
        prev = c;
    }
    runs.push_back(n - 1 - prev);
    for (int r : runs)
        if (r < 3 * k || r > 6 * k)
            throw std::runtime_error("ruling_set_on_path: gap " + std::to_string(r) +
                                     " outside [3k,6k]");
    return res;
}

namespace {

struct PeelState {
    std::vector<char> alive;
    std::vector<int> op_of;  // op index that removed each vertex
    RemovalTrace trace;
    int alive_count = 0;
};

PeelState peel_init(const Graph& g) {
    PeelState st;
    st.alive.assign(g.n, 1);
    st.op_of.assign(g.n, -1);
    st.alive_count = g.n;
    return st;
}

void peel_apply(PeelState& st, TreeOp op, const std::vector<int>& removed) {
    int idx = static_cast<int>(st.trace.ops.size());
    st.trace.ops.push_back(op);
    st.trace.removed.push_back(removed);
    if (op == TreeOp::Rake)
        ++st.trace.rake_count;
    else
        ++st.trace.compress_count;
    for (int v : removed) {
        st.alive[v] = 0;
        st.op_of[v] = idx;
        --st.alive_count;
    }
}

// ordered vertices of one path component within `members`
std::vector<std::vector<int>> ordered_path_components(const Graph& g,
                                                      const std::vector<int>& members) {
    std::vector<char> in(g.n, 0);
    for (int v : members) in[v] = 1;
    std::vector<char> used(g.n, 0);
    std::vector<std::vector<int>> paths;
    auto walk = [&](int start) {
        std::vector<int> path{start};
        used[start] = 1;
        int prev = -1, cur = start;
        while (true) {
            int next = -1;
            for (auto [u, e] : g.adj[cur]) {
                (void)e;
                if (in[u] && !used[u] && u != prev) {
                    next = u;
                    break;
                }
            }
            if (next < 0) break;
            path.push_back(next);
            used[next] = 1;
            prev = cur;
            cur = next;
        }
        return path;
    };
    for (int v : members) {
        if (used[v]) continue;
        int inside = 0;
        for (auto [u, e] : g.adj[v]) {
            (void)e;
            if (in[u]) ++inside;
        }
        if (inside <= 1) paths.push_back(walk(v));
    }
    // cycles cannot occur in a forest; anything unused would be a bug
    for (int v : members)
        if (!used[v]) throw std::runtime_error("ordered_path_components: non-path component");
    return paths;
}

}  // namespace

DecomposeResult decompose_two_part(const Graph& tree, int k, long long s_hint, int d_hint) {
    if (!is_tree(tree) && tree.n != 1)
        throw std::invalid_argument("decompose_two_part: input is not a tree");
    if (k < 1) throw std::invalid_argument("decompose_two_part: k must be >= 1");
    if (s_hint < 1) s_hint = tree.n;
    int ell = kCompressPathFactor * k;

    DecomposeResult res;
    PeelState st = peel_init(tree);
    // 3d+1 rakes, then rounds of one compression + ell-1 rakes
    for (int i = 0; i < 3 * d_hint + 1 && st.alive_count > 0; ++i)
        peel_apply(st, TreeOp::Rake, rake(tree, st.alive));
    int guard = 2 * static_cast<int>(std::ceil(std::log2(std::max<double>(s_hint, 2)))) + 4;
    for (int round = 0; st.alive_count > 0; ++round) {
        if (round > guard + tree.n)
            throw std::runtime_error("decompose_two_part: peeling failed to terminate");
        peel_apply(st, TreeOp::CompressPath, compress_path(tree, st.alive, ell));
        for (int i = 0; i < ell - 1 && st.alive_count > 0; ++i)
            peel_apply(st, TreeOp::Rake, rake(tree, st.alive));
    }

    // backward labeling
    std::vector<int> label(tree.n, 0);
    int total_ops = static_cast<int>(st.trace.ops.size());
    int ruling_rounds = 0;
    for (int i = total_ops - 1; i >= 0; --i) {
        const auto& removed = st.trace.removed[i];
        if (removed.empty()) continue;
        if (st.trace.ops[i] == TreeOp::Rake) {
            for (int v : removed) {
                int later = -1, mate = -1;
                for (auto [u, e] : tree.adj[v]) {
                    (void)e;
                    if (st.op_of[u] > i) later = u;
                    if (st.op_of[u] == i) mate = u;
                }
                if (later >= 0)
                    label[v] = label[later];
                else if (mate >= 0)
                    label[v] = 1;  // both ends of an isolated pair get label 1
                else
                    label[v] = 1;  // isolated vertex
            }
        } else {
            for (auto& path : ordered_path_components(tree, removed)) {
                int len = static_cast<int>(path.size());
                std::vector<long long> ids(len);
                for (int j = 0; j < len; ++j) ids[j] = path[j];
                auto rs = ruling_set_on_path(ids, k);
                ruling_rounds = std::max(ruling_rounds, rs.rounds);
                std::vector<int> plabel(len, 2);
                for (int c : rs.chosen) {
                    int start = std::min(c, len - k);
                    for (int j = start; j < start + k; ++j) plabel[j] = 1;
                }
                // endpoint repair: an endpoint adjacent to a later-removed
                // vertex must match its label; flip the whole run
                auto flip_run = [&](int pos) {
                    int c = plabel[pos];
                    int lo = pos, hi = pos;
                    while (lo > 0 && plabel[lo - 1] == c) --lo;
                    while (hi + 1 < len && plabel[hi + 1] == c) ++hi;
                    for (int j = lo; j <= hi; ++j) plabel[j] = 3 - c;
                };
                for (int end : {0, len - 1}) {
                    int v = path[end];
                    for (auto [u, e] : tree.adj[v]) {
                        (void)e;
                        if (st.op_of[u] > i && label[u] != plabel[end]) flip_run(end);
                    }
                }
                for (int j = 0; j < len; ++j) label[path[j]] = plabel[j];
            }
        }
    }

    res.trace = std::move(st.trace);
    res.rounds = res.trace.rake_count + k * res.trace.compress_count + ruling_rounds;
    res.decomposition.target_power = k;
    res.decomposition.part.resize(tree.n);
    for (int v = 0; v < tree.n; ++v) res.decomposition.part[v] = label[v] - 1;
    res.decomposition.kinds = {PartKind::DiameterBounded, PartKind::DiameterBounded};
    res.decomposition.separated = {1, 1};
    double log_s = std::log2(std::max<double>(s_hint, 2));
    int bound = static_cast<int>(kTwoPartDiamC * (k * log_s + d_hint + 1));
    res.decomposition.diameter_bounds = {bound, bound};
    return res;
}

DecomposeResult decompose_mixed(const Graph& tree, int k, int lambda, long long s_hint,
                                int d_hint) {
    if (!is_tree(tree) && tree.n != 1)
        throw std::invalid_argument("decompose_mixed: input is not a tree");
    if (k < 1) throw std::invalid_argument("decompose_mixed: k must be >= 1");
    if (lambda < kMixedMinLambdaFactor * k)
        throw std::invalid_argument("decompose_mixed: lambda must be at least " +
                                    std::to_string(kMixedMinLambdaFactor) + "*k");
    if (s_hint < 1) s_hint = tree.n;

    DecomposeResult res;
    PeelState st = peel_init(tree);
    int radius = static_cast<int>(std::ceil(2.5 * k));
    // marking happens at removal time: only vertices still alive when their
    // witness is ball-compressed get marked, which is what bounds the marked
    // graph degree by lambda
    int mark_radius = (k + 1) / 2;
    std::vector<char> marked(tree.n, 0);
    for (int i = 0; i < 3 * d_hint + 1 && st.alive_count > 0; ++i)
        peel_apply(st, TreeOp::Rake, rake(tree, st.alive));
    for (int round = 0; st.alive_count > 0; ++round) {
        if (round > tree.n)
            throw std::runtime_error("decompose_mixed: peeling failed to terminate");
        auto removed = compress_ball(tree, st.alive, k, lambda);
        for (int v : removed)
            for (int u : ball(tree, v, mark_radius))
                if (st.alive[u]) marked[u] = 1;
        peel_apply(st, TreeOp::CompressBall, removed);
        for (int i = 0; i < radius && st.alive_count > 0; ++i)
            peel_apply(st, TreeOp::Rake, rake(tree, st.alive));
    }
    std::vector<int> mark_list;
    for (int v = 0; v < tree.n; ++v)
        if (marked[v]) mark_list.push_back(v);

    // the marked graph: marked pairs within tree distance k
    std::vector<int> mark_index(tree.n, -1);
    for (size_t i = 0; i < mark_list.size(); ++i) mark_index[mark_list[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> medges;
    for (int v : mark_list) {
        for (int u : ball(tree, v, k))
            if (u != v && marked[u] && u < v) medges.push_back({mark_index[u], mark_index[v]});
    }
    Graph mg = make_graph(static_cast<int>(mark_list.size()), medges);
    if (mg.max_degree() > lambda)
        throw std::runtime_error("decompose_mixed: marked graph degree " +
                                 std::to_string(mg.max_degree()) + " exceeds lambda");

    int linial_rounds = 0;
    std::vector<int> mcolor(mark_list.size(), 0);
    if (!mark_list.empty()) {
        std::vector<int> init(mg.n);
        for (int i = 0; i < mg.n; ++i) init[i] = i;
        auto red = linial_color_reduction(mg, init, mg.n);
        mcolor = red.colors;
        linial_rounds = red.rounds;
    }
    // compact the used classes
    std::map<int, int> remap;
    for (int c : mcolor)
        if (!remap.count(c)) remap[c] = static_cast<int>(remap.size());

    res.trace = std::move(st.trace);
    res.rounds = res.trace.rake_count + k * res.trace.compress_count + k * linial_rounds;
    res.decomposition.target_power = k;
    res.decomposition.part.assign(tree.n, 0);
    for (size_t i = 0; i < mark_list.size(); ++i)
        res.decomposition.part[mark_list[i]] = 1 + remap[mcolor[i]];
    int parts = 1 + static_cast<int>(remap.size());
    res.decomposition.kinds.assign(parts, PartKind::DiameterZero);
    res.decomposition.kinds[0] = PartKind::DiameterBounded;
    res.decomposition.separated.assign(parts, 0);
    double m = lambda / (2.5 * k) - 1.0;
    double log_s = m >= 2.0 ? std::log(std::max<double>(s_hint, 2)) / std::log(m)
                            : std::log2(std::max<double>(s_hint, 2));
    int bound = static_cast<int>(kTwoPartDiamC * (k * log_s + d_hint + 1));
    res.decomposition.diameter_bounds.assign(parts, -1);
    res.decomposition.diameter_bounds[0] = bound;
    return res;
}

MixedDecompositionInfo mixed_info(const Graph& tree, int k, const Decomposition& d) {
    MixedDecompositionInfo info;
    for (int v = 0; v < tree.n; ++v)
        if (d.part[v] != 0) info.marked.push_back(v);
    for (int v : info.marked) {
        int deg = 0;
        for (int u : ball(tree, v, k))
            if (u != v && d.part[u] != 0) ++deg;
        info.marked_graph_max_degree = std::max(info.marked_graph_max_degree, deg);
    }
    info.num_zero_parts = d.num_parts() - 1;
    return info;
}

DecompositionReport verify_decomposition(const Graph& tree, int k, const Decomposition& d,
                                         const std::vector<int>& bounds_tree) {
    DecompositionReport rep;
    rep.labeling_total = static_cast<int>(d.part.size()) == tree.n;
    if (!rep.labeling_total) return rep;
    for (int v = 0; v < tree.n; ++v)
        if (d.part[v] < 0 || d.part[v] >= d.num_parts()) {
            rep.labeling_total = false;
            return rep;
        }

    // component ids per part (components in T; under valid separation these
    // equal the components in T^k)
    std::vector<int> comp(tree.n, -1);
    int comp_count = 0;
    for (int v = 0; v < tree.n; ++v) {
        if (comp[v] >= 0) continue;
        int id = comp_count++;
        std::vector<int> stack{v};
        comp[v] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (auto [u, e] : tree.adj[x]) {
                (void)e;
                if (comp[u] < 0 && d.part[u] == d.part[x]) {
                    comp[u] = id;
                    stack.push_back(u);
                }
            }
        }
    }

    // separation and independence via k-balls
    std::vector<int> merges_of_part(d.num_parts(), 0);
    for (int v = 0; v < tree.n; ++v) {
        for (int u : ball(tree, v, k)) {
            if (u <= v || d.part[u] != d.part[v]) continue;
            if (comp[u] != comp[v]) {
                if (d.part_separated(d.part[v]))
                    rep.separation_violations.push_back({v, u});
                else
                    ++merges_of_part[d.part[v]];
            }
            if (d.kinds[d.part[v]] == PartKind::DiameterZero)
                rep.independence_violations.push_back({v, u});
        }
    }

    // per-part stats; component diameters via double BFS in the tree metric
    std::vector<std::vector<int>> comp_vertices(comp_count);
    for (int v = 0; v < tree.n; ++v) comp_vertices[comp[v]].push_back(v);
    std::map<int, DecompositionReport::PartStats> stats;
    for (int p = 0; p < d.num_parts(); ++p) {
        stats[p].part = p;
    }
    std::vector<char> in(tree.n, 0);
    auto comp_diameter = [&](const std::vector<int>& comp_set) {
        for (int v : comp_set) in[v] = 1;
        auto far = [&](int src) {
            std::vector<int> dist(tree.n, -1);
            std::vector<int> frontier{src};
            dist[src] = 0;
            std::pair<int, int> best{0, src};
            for (size_t i = 0; i < frontier.size(); ++i) {
                int x = frontier[i];
                if (dist[x] > best.first) best = {dist[x], x};
                for (auto [u, e] : tree.adj[x]) {
                    (void)e;
                    if (in[u] && dist[u] < 0) {
                        dist[u] = dist[x] + 1;
                        frontier.push_back(u);
                    }
                }
            }
            return best;
        };
        auto [d1, y] = far(comp_set[0]);
        (void)d1;
        auto [diam, z] = far(y);
        (void)z;
        for (int v : comp_set) in[v] = 0;
        return diam;
    };
    for (int c = 0; c < comp_count; ++c) {
        int p = d.part[comp_vertices[c][0]];
        auto& s = stats[p];
        ++s.components;
        s.max_size = std::max(s.max_size, static_cast<int>(comp_vertices[c].size()));
        int diam = comp_diameter(comp_vertices[c]);
        s.max_diameter_tree = std::max(s.max_diameter_tree, diam);
        s.max_diameter_power = std::max(s.max_diameter_power, (diam + k - 1) / k);
    }
    for (auto& [p, s] : stats) {
        s.power_merges = merges_of_part[p];
        rep.parts.push_back(s);
    }
    for (auto& s : rep.parts) {
        int bound = -1;
        if (!bounds_tree.empty())
            bound = bounds_tree[s.part];
        else if (s.part < static_cast<int>(d.diameter_bounds.size()))
            bound = d.diameter_bounds[s.part];
        if (d.kinds[s.part] == PartKind::DiameterZero) continue;  // handled via independence
        if (bound >= 0 && s.max_diameter_tree > bound) rep.diameter_violations.push_back(s.part);
    }
    return rep;
}

namespace {

struct DeltaPeel {
    std::vector<int> round_of;           // removal round per vertex
    std::vector<char> compress_removed;  // vs rake
    int rounds = 0;
    RemovalTrace trace;
};

DeltaPeel delta_peel(const Graph& tree, int k) {
    DeltaPeel dp;
    dp.round_of.assign(tree.n, -1);
    dp.compress_removed.assign(tree.n, 0);
    std::vector<char> alive(tree.n, 1);
    int alive_count = tree.n;
    int round = 0;
    while (alive_count > 0) {
        if (round > tree.n) throw std::runtime_error("delta_peel: failed to terminate");
        // compression: remove v if every alive u in N+(v) has degree <= k
        std::vector<int> comp;
        for (int v = 0; v < tree.n; ++v) {
            if (!alive[v]) continue;
            bool ok = alive_degree(tree, alive, v) <= k;
            for (auto [u, e] : tree.adj[v]) {
                (void)e;
                if (!ok) break;
                if (alive[u] && alive_degree(tree, alive, u) > k) ok = false;
            }
            if (ok) comp.push_back(v);
        }
        for (int v : comp) {
            alive[v] = 0;
            dp.round_of[v] = round;
            dp.compress_removed[v] = 1;
            --alive_count;
        }
        dp.trace.ops.push_back(TreeOp::CompressLowDegree);
        dp.trace.removed.push_back(comp);
        ++dp.trace.compress_count;
        // rake
        std::vector<int> rk = rake(tree, alive);
        for (int v : rk) {
            alive[v] = 0;
            dp.round_of[v] = round;
            --alive_count;
        }
        dp.trace.ops.push_back(TreeOp::Rake);
        dp.trace.removed.push_back(rk);
        ++dp.trace.rake_count;
        ++round;
    }
    dp.rounds = round;
    return dp;
}

}  // namespace

TreeEdgeColoringResult tree_delta_edge_coloring(const Graph& tree, int k_override) {
    if (!is_tree(tree)) throw std::invalid_argument("tree_delta_edge_coloring: not a tree");
    int delta = tree.max_degree();
    if (delta < 3)
        throw std::invalid_argument("tree_delta_edge_coloring: maximum degree must be >= 3");
    int k = k_override > 0
                ? k_override
                : std::max(2, static_cast<int>(std::floor(std::cbrt((double)delta / kLinialBeta))));

    TreeEdgeColoringResult res;
    DeltaPeel dp = delta_peel(tree, k);
    res.trace = dp.trace;
    if (dp.rounds > static_cast<int>(std::log((double)tree.n) / std::log((double)k)) + 2)
        throw std::runtime_error("tree_delta_edge_coloring: too many peeling rounds");

    res.coloring.palette_size = delta;
    res.coloring.color.assign(tree.m(), 0);
    auto& color = res.coloring.color;

    // classify each edge by the round it vanished and whether it belongs to
    // the compression subgraph (some endpoint compress-removed that round)
    std::vector<int> edge_round(tree.m());
    std::vector<char> edge_compress(tree.m(), 0);
    for (int e = 0; e < tree.m(); ++e) {
        auto [u, v] = tree.edges[e];
        int r = std::min(dp.round_of[u], dp.round_of[v]);
        edge_round[e] = r;
        edge_compress[e] =
            (dp.round_of[u] == r && dp.compress_removed[u]) ||
            (dp.round_of[v] == r && dp.compress_removed[v]);
    }

    // per-vertex color multiplicities (a clash during repair leaves the color
    // still used by the other edge)
    std::vector<std::vector<uint8_t>> used(tree.n, std::vector<uint8_t>(delta + 1, 0));
    auto assign = [&](int e, int c) {
        color[e] = c;
        ++used[tree.edges[e].first][c];
        ++used[tree.edges[e].second][c];
    };
    auto unassign = [&](int e) {
        if (color[e] == 0) return;
        --used[tree.edges[e].first][color[e]];
        --used[tree.edges[e].second][color[e]];
        color[e] = 0;
    };
    auto smallest_free = [&](int e, int lo, int hi) {
        auto [u, v] = tree.edges[e];
        for (int c = lo; c <= hi; ++c)
            if (used[u][c] == 0 && used[v][c] == 0) return c;
        return -1;
    };

    // per-round compression subgraphs, pre-colored in parallel
    std::vector<std::vector<int>> comp_edges(dp.rounds);
    for (int e = 0; e < tree.m(); ++e)
        if (edge_compress[e]) comp_edges[edge_round[e]].push_back(e);

    int aux_rounds = 0;
    std::vector<int> sub_color(tree.m(), -1);  // phi / initial path colors
    std::vector<int> parts_of_round(dp.rounds, 0);
    for (int r = 0; r < dp.rounds; ++r) {
        if (comp_edges[r].empty()) continue;
        // build the subgraph on its own vertex ids
        std::map<int, int> vid;
        std::vector<std::pair<int, int>> sedges;
        for (int e : comp_edges[r]) {
            auto [u, v] = tree.edges[e];
            if (!vid.count(u)) vid[u] = static_cast<int>(vid.size());
            if (!vid.count(v)) vid[v] = static_cast<int>(vid.size());
            sedges.push_back({vid[u], vid[v]});
        }
        Graph sub = make_graph(static_cast<int>(vid.size()), sedges);
        if (k == 2) {
            // the subgraph is a union of paths of edges: 3-edge coloring via
            // the line graph of each component
            Graph lsub = line_graph(sub);
            std::vector<char> seen(lsub.n, 0);
            for (int s = 0; s < lsub.n; ++s) {
                if (seen[s] || lsub.degree(s) > 1) continue;
                // walk the edge path
                std::vector<int> order{s};
                seen[s] = 1;
                int prev = -1, cur = s;
                while (true) {
                    int nxt = -1;
                    for (auto [w, le] : lsub.adj[cur]) {
                        (void)le;
                        if (!seen[w] && w != prev) {
                            nxt = w;
                            break;
                        }
                    }
                    if (nxt < 0) break;
                    order.push_back(nxt);
                    seen[nxt] = 1;
                    prev = cur;
                    cur = nxt;
                }
                std::vector<long long> ids;
                for (int le : order) ids.push_back(comp_edges[r][le]);
                auto [pc, pr] = path_three_coloring(ids);
                aux_rounds = std::max(aux_rounds, pr);
                for (size_t j = 0; j < order.size(); ++j)
                    sub_color[comp_edges[r][order[j]]] = pc[j] + 1;  // colors 1..3
            }
            for (int s = 0; s < lsub.n; ++s)
                if (!seen[s] && lsub.degree(s) == 0) sub_color[comp_edges[r][s]] = 1;
            parts_of_round[r] = 3;
        } else {
            std::vector<long long> ids(sub.m());
            for (int j = 0; j < sub.m(); ++j) ids[j] = comp_edges[r][j];
            auto lec = linial_edge_coloring(sub, ids);
            aux_rounds = std::max(aux_rounds, lec.rounds);
            for (int j = 0; j < sub.m(); ++j) sub_color[comp_edges[r][j]] = lec.coloring.color[j];
            parts_of_round[r] = lec.num_colors;
            if (delta / parts_of_round[r] < k)
                throw std::runtime_error(
                    "tree_delta_edge_coloring: palette partition too small for k=" +
                    std::to_string(k));
        }
    }

    // backward recoloring
    for (int r = dp.rounds - 1; r >= 0; --r) {
        // rake edges first: group by the endpoint that survives longest
        std::vector<int> rake_edges;
        for (int e = 0; e < tree.m(); ++e)
            if (edge_round[e] == r && !edge_compress[e]) rake_edges.push_back(e);
        for (int e : rake_edges) {
            int c = smallest_free(e, 1, delta);
            if (c < 0) throw std::runtime_error("tree_delta_edge_coloring: rake edge stuck");
            assign(e, c);
        }
        if (comp_edges[r].empty()) continue;
        if (k == 2) {
            // adopt the initial path colors, repairing conflicted end-edges
            for (int e : comp_edges[r]) assign(e, sub_color[e]);
            for (int e : comp_edges[r]) {
                auto [u, v] = tree.edges[e];
                bool clash = false;
                for (int w : {u, v})
                    for (auto [x, e2] : tree.adj[w]) {
                        (void)x;
                        if (e2 != e && color[e2] == color[e]) clash = true;
                    }
                if (!clash) continue;
                unassign(e);
                // the palette {1,2,3} always has a free color here
                int c = smallest_free(e, 1, 3);
                if (c < 0)
                    throw std::runtime_error("tree_delta_edge_coloring: end-edge repair stuck");
                assign(e, c);
            }
        } else {
            int parts = parts_of_round[r];
            int part_size = delta / parts;
            for (int e : comp_edges[r]) {
                int j = sub_color[e] - 1;  // 0-based part
                int lo = j * part_size + 1;
                int c = smallest_free(e, lo, lo + part_size - 1);
                if (c < 0)
                    throw std::runtime_error("tree_delta_edge_coloring: palette part exhausted");
                assign(e, c);
            }
        }
    }

    res.rounds = dp.rounds + aux_rounds;
    auto rep = verify_proper_edge_coloring(tree, res.coloring);
    if (!rep.proper() || !res.coloring.total() || rep.max_color_used > delta)
        throw std::runtime_error("tree_delta_edge_coloring: internal verification failed");
    return res;
}

TreeEdgeColoringResult oriented_tree_plus_one_coloring(const RootedTree& tree,
                                                       const std::vector<long long>& ids_in) {
    const Graph& g = tree.g;
    TreeEdgeColoringResult res;
    int delta = g.max_degree();
    res.coloring.color.assign(g.m(), 0);
    res.coloring.palette_size = delta + 1;
    if (g.m() == 0) return res;

    std::vector<long long> ids = ids_in;
    if (ids.empty()) {
        ids.resize(g.n);
        for (int v = 0; v < g.n; ++v) ids[v] = v;
    }
    {
        std::vector<long long> sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("oriented_tree_plus_one_coloring: duplicate ids");
    }

    // initial color: rank of ID(u) among its siblings, largest first
    std::vector<std::vector<int>> children(g.n);
    for (int v = 0; v < g.n; ++v)
        if (tree.parent[v] >= 0) children[tree.parent[v]].push_back(v);
    std::vector<int> rank(g.n, 0);
    for (int p = 0; p < g.n; ++p) {
        auto kids = children[p];
        std::sort(kids.begin(), kids.end(),
                  [&](int a, int b) { return ids[a] > ids[b]; });
        for (size_t i = 0; i < kids.size(); ++i) rank[kids[i]] = static_cast<int>(i) + 1;
    }
    auto& color = res.coloring.color;
    for (int v = 0; v < g.n; ++v)
        if (tree.parent_edge[v] >= 0) color[tree.parent_edge[v]] = rank[v];

    // each class is a union of upward paths; recolor with {i, delta, delta+1}
    // keeping the most ancestral edge at i
    int aux_rounds = 0;
    std::vector<char> visited(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        if (tree.parent_edge[v] < 0 || visited[v]) continue;
        int i = rank[v];
        // path bottom: v is a bottom iff no child of v has the same rank
        bool is_bottom = true;
        for (int c : children[v])
            if (rank[c] == i) is_bottom = false;
        if (!is_bottom) continue;
        // climb while the parent continues the class
        std::vector<int> path_edges;
        int cur = v;
        while (true) {
            visited[cur] = 1;
            path_edges.push_back(tree.parent_edge[cur]);
            int p = tree.parent[cur];
            if (p < 0 || tree.parent_edge[p] < 0 || rank[p] != i) break;
            cur = p;
        }
        if (i == delta) continue;  // the single root-attached class keeps its color
        int len = static_cast<int>(path_edges.size());
        if (len == 1) {
            color[path_edges[0]] = i;
            continue;
        }
        std::vector<long long> eids(len);
        for (int j = 0; j < len; ++j) eids[j] = path_edges[j];
        auto [pc, pr] = path_three_coloring(eids);
        aux_rounds = std::max(aux_rounds, pr);
        auto palette = [&](int c3) { return c3 == 0 ? i : (c3 == 1 ? delta : delta + 1); };
        for (int j = 0; j < len; ++j) color[path_edges[j]] = palette(pc[j]);
        // the most ancestral edge is the last one on the climb
        int top = len - 1;
        if (color[path_edges[top]] != i) {
            color[path_edges[top]] = i;
            if (color[path_edges[top - 1]] == i) {
                int below = (top >= 2) ? color[path_edges[top - 2]] : 0;
                color[path_edges[top - 1]] = (below == delta) ? delta + 1 : delta;
            }
        }
    }

    res.rounds = aux_rounds + 2;
    auto rep = verify_proper_edge_coloring(g, res.coloring);
    if (!rep.proper() || !res.coloring.total() || rep.max_color_used > delta + 1)
        throw std::runtime_error("oriented_tree_plus_one_coloring: verification failed");
    return res;
}

std::string decomposition_to_json(const Decomposition& d) {
    nlohmann::json j;
    j["k"] = d.target_power;
    nlohmann::json parts = nlohmann::json::object();
    for (size_t v = 0; v < d.part.size(); ++v) parts[std::to_string(v)] = d.part[v];
    j["parts"] = parts;
    nlohmann::json kinds = nlohmann::json::object();
    for (int p = 0; p < d.num_parts(); ++p) {
        nlohmann::json kj;
        kj["type"] = d.kinds[p] == PartKind::DiameterBounded ? "diam" : "zero";
        kj["bound"] = d.diameter_bounds.empty() ? -1 : d.diameter_bounds[p];
        kj["separated"] = d.part_separated(p);
        kinds[std::to_string(p)] = kj;
    }
    j["kinds"] = kinds;
    return j.dump(2);
}

Decomposition decomposition_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Decomposition d;
    d.target_power = j.at("k").get<int>();
    auto& parts = j.at("parts");
    d.part.assign(parts.size(), 0);
    for (auto& [key, val] : parts.items()) {
        size_t v = std::stoul(key);
        if (v >= d.part.size()) d.part.resize(v + 1, 0);
        d.part[v] = val.get<int>();
    }
    auto& kinds = j.at("kinds");
    int num_parts = 0;
    for (auto& [key, val] : kinds.items()) {
        (void)val;
        num_parts = std::max(num_parts, std::stoi(key) + 1);
    }
    d.kinds.assign(num_parts, PartKind::DiameterBounded);
    d.diameter_bounds.assign(num_parts, -1);
    d.separated.assign(num_parts, 1);
    for (auto& [key, val] : kinds.items()) {
        int p = std::stoi(key);
        d.kinds[p] = val.at("type").get<std::string>() == "zero" ? PartKind::DiameterZero
                                                                 : PartKind::DiameterBounded;
        d.diameter_bounds[p] = val.value("bound", -1);
        d.separated[p] = val.value("separated", true) ? 1 : 0;
    }
    return d;
}

}  // namespace localec
