#include "localec/nibble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "localec/linial.hpp"
#include "localec/rng.hpp"

namespace localec {

int ColorSet::nth(int i) const {
    for (size_t w = 0; w < words_.size(); ++w) {
        int pc = __builtin_popcountll(words_[w]);
        if (i < pc) {
            uint64_t x = words_[w];
            while (i--) x &= x - 1;
            return static_cast<int>(w * 64 + __builtin_ctzll(x)) + 1;
        }
        i -= pc;
    }
    throw std::out_of_range("ColorSet::nth");
}

void ColorSet::keep_lowest(int p) {
    if (count_ <= p) return;
    int seen = 0;
    for (size_t w = 0; w < words_.size(); ++w) {
        int pc = __builtin_popcountll(words_[w]);
        if (seen + pc <= p) {
            seen += pc;
            continue;
        }
        // clear the bits above the (p - seen)-th set bit of this word
        uint64_t x = words_[w];
        int keep = p - seen;
        uint64_t kept = 0;
        for (int i = 0; i < keep; ++i) {
            uint64_t low = x & (~x + 1);
            kept |= low;
            x &= x - 1;
        }
        words_[w] = kept;
        seen = p;
        for (size_t w2 = w + 1; w2 < words_.size(); ++w2) words_[w2] = 0;
        break;
    }
    count_ = p;
}

void ColorSet::subtract(const ColorSet& other) {
    int removed = 0;
    for (size_t w = 0; w < words_.size() && w < other.words_.size(); ++w) {
        uint64_t gone = words_[w] & other.words_[w];
        removed += __builtin_popcountll(gone);
        words_[w] &= ~other.words_[w];
    }
    count_ -= removed;
}

std::vector<int> ColorSet::to_vector() const {
    std::vector<int> out;
    out.reserve(count_);
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t x = words_[w];
        while (x) {
            out.push_back(static_cast<int>(w * 64 + __builtin_ctzll(x)) + 1);
            x &= x - 1;
        }
    }
    return out;
}

ColoringState ColoringState::fresh(const Graph& g, int palette_capacity) {
    ColoringState s;
    s.g = &g;
    s.palette_capacity = palette_capacity;
    s.committed.assign(g.m(), 0);
    s.palette.assign(g.m(), ColorSet::full(palette_capacity));
    return s;
}

std::vector<int> ColoringState::uncolored_edges() const {
    std::vector<int> out;
    for (int e = 0; e < g->m(); ++e)
        if (committed[e] == 0) out.push_back(e);
    return out;
}

int ColoringState::residual_degree(int v) const {
    int d = 0;
    for (auto [u, e] : g->adj[v]) {
        (void)u;
        if (committed[e] == 0) ++d;
    }
    return d;
}

int ColoringState::max_residual_degree() const {
    int mx = 0;
    for (int v = 0; v < g->n; ++v) mx = std::max(mx, residual_degree(v));
    return mx;
}

InvariantReport check_invariant(const ColoringState& state, double d, double t, double p) {
    const Graph& g = *state.g;
    InvariantReport rep;
    rep.bound_deg = d;
    rep.bound_cdeg = t;
    rep.bound_palette = p;
    std::vector<int> cdeg(state.palette_capacity + 1, 0);
    for (int v = 0; v < g.n; ++v) {
        int deg = 0;
        std::fill(cdeg.begin(), cdeg.end(), 0);
        for (auto [u, e] : g.adj[v]) {
            (void)u;
            if (state.committed[e] != 0) continue;
            ++deg;
            state.palette[e].for_each([&](int c) { ++cdeg[c]; });
        }
        rep.max_deg = std::max(rep.max_deg, deg);
        if (deg > d) rep.deg_violators.push_back(v);
        for (int c = 1; c <= state.palette_capacity; ++c) {
            if (cdeg[c] == 0) continue;
            rep.max_cdeg = std::max(rep.max_cdeg, cdeg[c]);
            if (cdeg[c] > t) rep.cdeg_violators.push_back({v, c});
        }
    }
    for (int e = 0; e < g.m(); ++e) {
        if (state.committed[e] != 0) continue;
        rep.min_palette = std::min(rep.min_palette, state.palette[e].size());
        if (state.palette[e].size() < p) rep.palette_violators.push_back(e);
    }
    return rep;
}

ColoringState pad_uniform(const ColoringState& state, double t, double p,
                          bool enforce_invariant) {
    const Graph& g = *state.g;
    ColoringState out = state;
    out.imaginary.clear();

    if (enforce_invariant) {
        InvariantReport rep = check_invariant(state, std::numeric_limits<double>::infinity(), t, p);
        if (!rep.pass()) {
            std::ostringstream msg;
            msg << "pad_uniform: state violates the invariant (max c-degree " << rep.max_cdeg
                << " vs " << t << ", min palette "
                << (rep.min_palette == std::numeric_limits<int>::max() ? -1 : rep.min_palette)
                << " vs " << p << ")";
            throw std::invalid_argument(msg.str());
        }
    }

    // Integer uniform targets; palettes above the target are truncated down
    // to exactly P.  Off-invariant states (allowed only when not enforcing)
    // keep their smaller palettes and pad c-degrees per vertex, so a single
    // outlier cannot distort the whole graph.
    int P = std::max(1, (int)std::ceil(p - 1e-9));
    for (int e = 0; e < g.m(); ++e)
        if (out.committed[e] == 0 && out.palette[e].size() > P) out.palette[e].keep_lowest(P);

    int T = std::max(0, (int)std::floor(t + 1e-9));
    out.uniform_cdeg = T;
    out.uniform_palette = P;

    // c-degrees are padded per vertex toward max(T, local maximum); the local
    // clamp only engages off-invariant (slack) states
    std::vector<int> cdeg(out.palette_capacity + 1, 0);
    std::vector<int> vertex_target(g.n, T);
    for (int v = 0; v < g.n; ++v) {
        std::fill(cdeg.begin(), cdeg.end(), 0);
        bool any = false;
        int local_max = 0;
        for (auto [u, e] : g.adj[v]) {
            (void)u;
            if (out.committed[e] != 0) continue;
            out.palette[e].for_each([&](int c) {
                local_max = std::max(local_max, ++cdeg[c]);
                any = true;
            });
        }
        if (!any) continue;
        int tv = std::max(T, local_max);
        vertex_target[v] = tv;
        long long total_deficit = 0;
        int max_deficit = 0;
        for (int c = 1; c <= out.palette_capacity; ++c) {
            if (cdeg[c] == 0) continue;
            int def = tv - cdeg[c];
            total_deficit += def;
            max_deficit = std::max(max_deficit, def);
        }
        if (total_deficit == 0) continue;
        int x = static_cast<int>(std::max<long long>(max_deficit, (total_deficit + P - 1) / P));
        size_t base = out.imaginary.size();
        for (int j = 0; j < x; ++j) out.imaginary.push_back({v, {}});
        // balanced round robin: color c occupies def consecutive slots mod x
        long long offset = 0;
        for (int c = 1; c <= out.palette_capacity; ++c) {
            if (cdeg[c] == 0) continue;
            int def = tv - cdeg[c];
            for (int j = 0; j < def; ++j)
                out.imaginary[base + (offset + j) % x].listed.push_back(c);
            offset += def;
        }
    }
    out.padded = true;

    // postcondition: uniformity holds exactly
    std::vector<int> check(out.palette_capacity + 1, 0);
    std::vector<std::vector<int>> imag_at(g.n);
    for (size_t i = 0; i < out.imaginary.size(); ++i)
        imag_at[out.imaginary[i].vertex].push_back(static_cast<int>(i));
    for (int v = 0; v < g.n; ++v) {
        std::fill(check.begin(), check.end(), 0);
        bool any = false;
        for (auto [u, e] : g.adj[v]) {
            (void)u;
            if (out.committed[e] != 0) continue;
            if (out.palette[e].size() > P)
                throw std::runtime_error("pad_uniform: palette truncation failed");
            if (enforce_invariant && out.palette[e].size() != P)
                throw std::runtime_error("pad_uniform: palette not uniform");
            out.palette[e].for_each([&](int c) {
                ++check[c];
                any = true;
            });
        }
        for (int i : imag_at[v])
            for (int c : out.imaginary[i].listed) ++check[c];
        if (!any) continue;
        for (int c = 1; c <= out.palette_capacity; ++c)
            if (check[c] != 0 && check[c] != vertex_target[v])
                throw std::runtime_error("pad_uniform: c-degree uniformization failed");
    }
    return out;
}

OneShotSelections draw_selections(const ColoringState& state, uint64_t seed) {
    const Graph& g = *state.g;
    OneShotSelections sel;
    sel.real.assign(g.m(), 0);
    for (int e = 0; e < g.m(); ++e) {
        if (state.committed[e] != 0 || state.palette[e].size() == 0) continue;
        Rng rng(mix64(seed, static_cast<uint64_t>(e)));
        sel.real[e] = state.palette[e].nth(static_cast<int>(rng.below(state.palette[e].size())));
    }
    sel.imaginary.assign(state.imaginary.size(), 0);
    sel.imaginary_far_blocked.assign(state.imaginary.size(), 0);
    int P = std::max(1, state.uniform_palette);
    int T = std::max(1, state.uniform_cdeg);
    double far_survive = std::exp((T - 1) * std::log1p(-1.0 / P));
    for (size_t i = 0; i < state.imaginary.size(); ++i) {
        Rng rng(mix64(seed, static_cast<uint64_t>(g.m() + 1 + i)));
        uint64_t k = rng.below(P);
        if (k < state.imaginary[i].listed.size())
            sel.imaginary[i] = state.imaginary[i].listed[k];
        // far endpoint of the simulated subtree: T-1 competitors per color
        sel.imaginary_far_blocked[i] = rng.unit() >= far_survive ? 1 : 0;
    }
    return sel;
}

OneShotResult apply_selections(ColoringState& state, const OneShotSelections& sel) {
    const Graph& g = *state.g;
    OneShotResult res;
    std::vector<std::vector<int>> imag_at(g.n);
    for (size_t i = 0; i < state.imaginary.size(); ++i)
        imag_at[state.imaginary[i].vertex].push_back(static_cast<int>(i));

    // conflict marking: entities at a vertex selecting the same color all block
    std::vector<char> blocked_real(g.m(), 0), blocked_imag(state.imaginary.size(), 0);
    std::vector<int> owner(state.palette_capacity + 1, -2);  // -2 free, -1 clash, else entity
    std::vector<char> imag_flag(state.palette_capacity + 1, 0);
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> touched;
        auto touch = [&](int color, int entity, bool imag) {
            if (color == 0) return;
            if (owner[color] == -2) {
                owner[color] = entity;
                imag_flag[color] = imag;
                touched.push_back(color);
            } else {
                if (owner[color] >= 0) {
                    if (imag_flag[color])
                        blocked_imag[owner[color]] = 1;
                    else
                        blocked_real[owner[color]] = 1;
                    owner[color] = -1;
                }
                if (imag)
                    blocked_imag[entity] = 1;
                else
                    blocked_real[entity] = 1;
            }
        };
        for (auto [u, e] : g.adj[v]) {
            (void)u;
            if (state.committed[e] == 0) touch(sel.real[e], e, false);
        }
        for (int i : imag_at[v]) touch(sel.imaginary[i], i, true);
        for (int c : touched) {
            owner[c] = -2;
            imag_flag[c] = 0;
        }
    }

    // commits and palette pruning
    std::vector<ColorSet> committed_at(g.n, ColorSet(state.palette_capacity));
    for (int e = 0; e < g.m(); ++e) {
        if (state.committed[e] != 0 || sel.real[e] == 0 || blocked_real[e]) continue;
        state.committed[e] = sel.real[e];
        res.newly_committed.push_back({e, sel.real[e]});
        committed_at[g.edges[e].first].insert(sel.real[e]);
        committed_at[g.edges[e].second].insert(sel.real[e]);
    }
    for (size_t i = 0; i < state.imaginary.size(); ++i) {
        if (sel.imaginary[i] == 0 || blocked_imag[i] || sel.imaginary_far_blocked[i]) continue;
        ++res.imaginary_commits;
        committed_at[state.imaginary[i].vertex].insert(sel.imaginary[i]);
    }
    for (int e = 0; e < g.m(); ++e) {
        if (state.committed[e] != 0) continue;
        state.palette[e].subtract(committed_at[g.edges[e].first]);
        state.palette[e].subtract(committed_at[g.edges[e].second]);
    }

    // imaginary edges only live for one round
    state.imaginary.clear();
    state.padded = false;
    return res;
}

OneShotResult one_shot_coloring(ColoringState& state, uint64_t seed) {
    return apply_selections(state, draw_selections(state, seed));
}

double DeskSlack::widen(double x, double entities) const {
    if (z <= 0) return 0;
    double L = std::log(std::max(entities, 2.0));
    return z * (std::sqrt(std::max(x, 0.0) * L) + L);
}

IterationOutcome nibble_iteration(ColoringState& state, const Schedule& schedule, int i,
                                  uint64_t seed, int max_retries, const DeskSlack& slack) {
    if (i < 1 || i > static_cast<int>(schedule.rows.size()))
        throw std::invalid_argument("nibble_iteration: row index out of range");
    const ScheduleRow& row = schedule.row(i);
    const ScheduleRow& next =
        schedule.row(std::min(i + 1, static_cast<int>(schedule.rows.size())));

    double entities = state.g->n + state.g->m();
    IterationOutcome out;
    out.eff_d = (double)next.d + slack.widen((double)next.d, entities);
    out.eff_t = (double)next.t + slack.widen((double)next.t, entities);
    out.eff_p = std::max(0.0, (double)next.p - slack.widen((double)next.p, entities));

    IterationOutcome best = out;
    size_t best_violations = SIZE_MAX;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        ColoringState work = pad_uniform(state, (double)row.t, (double)row.p, slack.z <= 0);
        one_shot_coloring(work, mix64(seed, static_cast<uint64_t>(attempt)));
        InvariantReport rep = check_invariant(work, out.eff_d, out.eff_t, out.eff_p);
        if (rep.pass()) {
            state = std::move(work);
            out.retries = attempt;
            out.report = std::move(rep);
            out.success = true;
            return out;
        }
        size_t viol = rep.deg_violators.size() + rep.cdeg_violators.size() +
                      rep.palette_violators.size();
        if (viol < best_violations) {
            best_violations = viol;
            best = out;
            best.report = std::move(rep);
            best.retries = attempt;
        }
    }
    best.success = false;
    return best;
}

ColorGraphResult color_graph(const Graph& g, double eps, uint64_t seed,
                             const ColorGraphOptions& options) {
    if (!(eps > 0 && eps <= 1)) throw std::invalid_argument("color_graph: eps must be in (0,1]");
    ColorGraphResult res;
    int delta = g.max_degree();
    if (delta == 0) {
        res.coloring.palette_size = 0;
        res.coloring.color.assign(g.m(), 0);
        return res;
    }
    if (delta < 2) {
        // single-edge stars: one color suffices
        res.coloring = greedy_edge_coloring(g);
        return res;
    }
    double eta = options.eta > 0 ? options.eta : default_eta(delta);
    double xi = options.xi > 0 ? options.xi : default_xi(eps, eta);

    int total_colors = static_cast<int>(std::floor((1.0 + eps) * delta + 1e-9));
    if (total_colors >= 2 * delta - 1) {
        // at or above the greedy threshold there is nothing to save
        res.coloring = greedy_edge_coloring(g);
        res.coloring.palette_size = total_colors;
        return res;
    }
    res.schedule = compute_schedule(delta, eps, xi, eta);
    int k1 = static_cast<int>(std::ceil(delta * (1.0 + xi) - 1e-9));
    k1 = std::min(k1, total_colors);
    res.phase1_colors = k1;

    ColoringState state = ColoringState::fresh(g, k1);
    double resid_target = (eps - xi) * delta / 5.0;
    int phase2_capacity = (total_colors - k1 + 1) / 2;  // greedy handles 2D-1 <= |C2|
    int n_rows = static_cast<int>(res.schedule.rows.size());
    int cap = std::max(40, 2 * options.extra_iteration_cap * n_rows);

    // Stage one follows the schedule rows while their palette targets are
    // comfortably integral; past that point the asymptotic truncation
    // discards legal colors the finite-scale process still needs, so stage
    // two reruns the selection round on the full legal palettes (all colors
    // of C1 unused at either endpoint) until the residual degree target is
    // met or progress stops.
    auto refresh_legal_palettes = [&]() {
        std::vector<ColorSet> used(g.n, ColorSet(k1));
        for (int e = 0; e < g.m(); ++e)
            if (state.committed[e] != 0) {
                used[g.edges[e].first].insert(state.committed[e]);
                used[g.edges[e].second].insert(state.committed[e]);
            }
        for (int e = 0; e < g.m(); ++e)
            if (state.committed[e] == 0) {
                ColorSet legal = ColorSet::full(k1);
                legal.subtract(used[g.edges[e].first]);
                legal.subtract(used[g.edges[e].second]);
                state.palette[e] = legal;
            }
    };

    int i = 1;
    int stall_rounds = 0;
    int last_uncolored = g.m() + 1;
    while (state.max_residual_degree() > resid_target) {
        if (i > cap)
            throw std::runtime_error("color_graph: residual degree did not reach the target");
        bool row_stage = i <= n_rows && res.schedule.row(i).p >= 12.0L;
        IterationOutcome out;
        if (row_stage) {
            out = nibble_iteration(state, res.schedule, i, mix64(seed, 1000 + i),
                                   options.max_retries, options.slack);
            if (!out.success) {
                std::ostringstream msg;
                msg << "color_graph: iteration " << i << " exhausted " << options.max_retries
                    << " retries (max deg " << out.report.max_deg << " vs " << out.eff_d << ")";
                throw std::runtime_error(msg.str());
            }
        } else {
            refresh_legal_palettes();
            one_shot_coloring(state, mix64(seed, 500000 + i));
            out.success = true;
            out.report = check_invariant(state, delta, delta, 0);
        }
        res.outcomes.push_back(out);
        int resid_deg = state.max_residual_degree();
        res.residual_degrees.push_back(resid_deg);
        int uncolored = static_cast<int>(state.uncolored_edges().size());
        bool slow = uncolored + uncolored / 256 >= last_uncolored;
        stall_rounds = slow ? stall_rounds + 1 : 0;
        last_uncolored = uncolored;
        // once progress stops, hand whatever remains to the fresh palette;
        // the greedy below fails exactly where that is infeasible
        if (stall_rounds >= 3 && resid_deg <= phase2_capacity) break;
        if (stall_rounds >= 10) break;
        ++i;
    }
    res.iterations = static_cast<int>(res.outcomes.size());

    // phase two: greedy on the residual with the disjoint fresh palette
    res.coloring.palette_size = total_colors;
    res.coloring.color = state.committed;
    std::vector<ColorSet> used(g.n, ColorSet(total_colors));
    for (int e = 0; e < g.m(); ++e)
        if (res.coloring.color[e] != 0) {
            used[g.edges[e].first].insert(res.coloring.color[e]);
            used[g.edges[e].second].insert(res.coloring.color[e]);
        }
    for (int e = 0; e < g.m(); ++e) {
        if (res.coloring.color[e] != 0) continue;
        auto [u, v] = g.edges[e];
        int c = k1 + 1;
        while (c <= total_colors && (used[u].contains(c) || used[v].contains(c))) ++c;
        if (c > total_colors) throw std::runtime_error("color_graph: phase-two greedy ran out");
        res.coloring.color[e] = c;
        used[u].insert(c);
        used[v].insert(c);
    }
    auto rep = verify_proper_edge_coloring(g, res.coloring);
    if (!rep.proper() || !res.coloring.total())
        throw std::runtime_error("color_graph: internal verification failed");
    return res;
}

PartialEdgeColoring greedy_edge_coloring(const Graph& g) {
    int delta = g.max_degree();
    int cap = std::max(1, 2 * delta - 1);
    PartialEdgeColoring col;
    col.palette_size = cap;
    col.color.assign(g.m(), 0);
    std::vector<ColorSet> used(g.n, ColorSet(cap));
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        int c = 1;
        while (used[u].contains(c) || used[v].contains(c)) ++c;
        col.color[e] = c;
        used[u].insert(c);
        used[v].insert(c);
    }
    return col;
}

PartialEdgeColoring konig_edge_coloring(const Graph& g) {
    // two-coloring check via BFS
    std::vector<int> side(g.n, -1);
    for (int s = 0; s < g.n; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [u, e] : g.adj[v]) {
                (void)e;
                if (side[u] < 0) {
                    side[u] = 1 - side[v];
                    stack.push_back(u);
                } else if (side[u] == side[v]) {
                    throw std::invalid_argument("konig_edge_coloring: graph is not bipartite");
                }
            }
        }
    }
    int delta = std::max(g.max_degree(), 1);
    PartialEdgeColoring col;
    col.palette_size = delta;
    col.color.assign(g.m(), 0);
    std::vector<std::vector<int>> at(g.n, std::vector<int>(delta + 1, -1));
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        int cu = 0, cv = 0;
        for (int c = 1; c <= delta; ++c)
            if (at[u][c] < 0) {
                cu = c;
                break;
            }
        for (int c = 1; c <= delta; ++c)
            if (at[v][c] < 0) {
                cv = c;
                break;
            }
        if (cu != cv) {
            // flip the maximal cu/cv alternating path from v; bipartiteness
            // keeps it away from u, freeing cu at v
            std::vector<int> path;
            std::vector<int> verts{v};
            int x = v, want = cu;
            while (at[x][want] >= 0) {
                int e2 = at[x][want];
                path.push_back(e2);
                x = g.other(e2, x);
                verts.push_back(x);
                want = (want == cu) ? cv : cu;
            }
            for (int y : verts) at[y][cu] = at[y][cv] = -1;
            for (int e2 : path) {
                col.color[e2] = (col.color[e2] == cu) ? cv : cu;
                at[g.edges[e2].first][col.color[e2]] = e2;
                at[g.edges[e2].second][col.color[e2]] = e2;
            }
        }
        at[u][cu] = e;
        at[v][cu] = e;
        col.color[e] = cu;
    }
    return col;
}

LinialEdgeColoringResult linial_edge_coloring(const Graph& g,
                                              const std::vector<long long>& edge_ids) {
    LinialEdgeColoringResult res;
    res.coloring.color.assign(g.m(), 0);
    if (g.m() == 0) return res;
    std::vector<long long> ids = edge_ids;
    if (ids.empty()) {
        ids.resize(g.m());
        for (int e = 0; e < g.m(); ++e) ids[e] = e;
    }
    long long k0 = 0;
    for (long long x : ids) {
        if (x < 0) throw std::invalid_argument("linial_edge_coloring: negative id");
        k0 = std::max(k0, x + 1);
    }
    {
        std::vector<long long> sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("linial_edge_coloring: ids are not unique");
    }
    Graph lg = line_graph(g);
    std::vector<int> initial(g.m());
    for (int e = 0; e < g.m(); ++e) initial[e] = static_cast<int>(ids[e]);
    auto red = linial_color_reduction(lg, initial, k0);
    res.rounds = red.rounds;
    res.num_colors = red.num_colors;
    res.coloring.palette_size = red.num_colors;
    for (int e = 0; e < g.m(); ++e) res.coloring.color[e] = red.colors[e] + 1;
    return res;
}

ConcentrationStats concentration_experiment(int delta, int trials, uint64_t seed, int n,
                                            double tail_delta) {
    if (delta < 8) throw std::invalid_argument("concentration_experiment: delta must be >= 8");
    if ((static_cast<long long>(n) * delta) % 2 != 0) ++n;
    ConcentrationStats st;
    st.delta = delta;
    st.n = n;
    st.trials = trials;
    double eta = default_eta(delta);
    double xi = default_xi(0.5, eta);
    int p = static_cast<int>(std::ceil(delta * (1.0 + xi) - 1e-9));
    int t = delta;
    st.t = t;
    st.p = p;
    double x1 = std::exp(2.0 * (t - 1) * std::log1p(-1.0 / p));
    double x = std::exp(2.0 * t * std::log1p(-1.0 / p));
    st.d_dia = delta * (1.0 - x1);
    st.t_dia = t * (1.0 - (double)t / p * x) * (1.0 - x);
    st.p_dia = p * (1.0 - (double)t / p * x) * (1.0 - (double)t / p * x);

    long double sum_deg = 0, sum_cdeg = 0, sum_pal = 0;
    long long tail_deg = 0;
    std::vector<uint16_t> cnt(static_cast<size_t>(n) * p);
    for (int trial = 0; trial < trials; ++trial) {
        Graph g = random_regular_graph(n, delta, mix64(seed, 77 + trial));
        ColoringState state = ColoringState::fresh(g, p);
        state = pad_uniform(state, t, p);
        if (!state.imaginary.empty())
            throw std::runtime_error("concentration_experiment: expected no imaginary edges");
        one_shot_coloring(state, mix64(seed, 7000 + trial));

        for (int v = 0; v < n; ++v) {
            int rd = state.residual_degree(v);
            sum_deg += rd;
            ++st.samples_deg;
            if (rd > (1.0 + tail_delta) * st.d_dia) ++tail_deg;
        }
        std::fill(cnt.begin(), cnt.end(), 0);
        for (int e = 0; e < g.m(); ++e) {
            if (state.committed[e] != 0) continue;
            sum_pal += state.palette[e].size();
            ++st.samples_palette;
            auto [u, v] = g.edges[e];
            state.palette[e].for_each([&](int c) {
                ++cnt[static_cast<size_t>(u) * p + c - 1];
                ++cnt[static_cast<size_t>(v) * p + c - 1];
            });
        }
        for (size_t i = 0; i < cnt.size(); ++i) {
            if (cnt[i] > 0) {
                sum_cdeg += cnt[i];
                ++st.samples_cdeg;
            }
        }
    }
    st.mean_residual_deg = (double)(sum_deg / std::max<long long>(1, st.samples_deg));
    st.mean_cdeg = (double)(sum_cdeg / std::max<long long>(1, st.samples_cdeg));
    st.mean_palette = (double)(sum_pal / std::max<long long>(1, st.samples_palette));
    st.tail_fraction_deg = (double)tail_deg / std::max<long long>(1, st.samples_deg);
    return st;
}

std::string experiment_csv(const ColorGraphResult& r) {
    std::ostringstream os;
    os << "iteration,d_i,t_i,p_i,observed_max_deg,observed_max_cdeg,observed_min_palette,retries\n";
    for (size_t i = 0; i < r.outcomes.size(); ++i) {
        int ri = std::min<int>(static_cast<int>(i) + 2, static_cast<int>(r.schedule.rows.size()));
        const auto& row = r.schedule.row(ri);
        const auto& rep = r.outcomes[i].report;
        os << (i + 1) << "," << (double)row.d << "," << (double)row.t << "," << (double)row.p
           << "," << rep.max_deg << "," << rep.max_cdeg << ","
           << (rep.min_palette == std::numeric_limits<int>::max() ? -1 : rep.min_palette) << ","
           << r.outcomes[i].retries << "\n";
    }
    return os.str();
}

}  // namespace localec
