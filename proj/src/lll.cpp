#include "localec/lll.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "localec/constants.hpp"
#include "localec/rng.hpp"

namespace localec {

namespace {

double var_weight_sum(const Variable& var) {
    if (var.weight.empty()) return var.domain;
    double s = 0;
    for (double w : var.weight) s += w;
    return s;
}

double var_prob(const Variable& var, int value) {
    if (var.weight.empty()) return 1.0 / var.domain;
    return var.weight[value] / var_weight_sum(var);
}

int sample_var(const Variable& var, Rng& rng) {
    if (var.weight.empty()) return static_cast<int>(rng.below(var.domain));
    double x = rng.unit() * var_weight_sum(var);
    double acc = 0;
    for (int v = 0; v < var.domain; ++v) {
        acc += var.weight[v];
        if (x < acc) return v;
    }
    return var.domain - 1;
}

}  // namespace

int LLLInstance::dependency_degree() const {
    int d = 0;
    for (int v = 0; v < tree.n; ++v)
        d = std::max(d, static_cast<int>(ball(tree, v, radius).size()) - 1);
    return d;
}

void LLLInstance::finalize() {
    if (radius < 2 || radius % 2 != 0)
        throw std::invalid_argument("LLLInstance: radius must be even and >= 2");
    if (static_cast<int>(vars.size()) != tree.n)
        throw std::invalid_argument("LLLInstance: vars size mismatch");
    var_base.assign(tree.n, 0);
    total_vars = 0;
    for (int v = 0; v < tree.n; ++v) {
        var_base[v] = total_vars;
        total_vars += static_cast<int>(vars[v].size());
    }
    scope.assign(tree.n, {});
    for (int v = 0; v < tree.n; ++v) {
        for (int u : ball(tree, v, radius / 2))
            for (size_t i = 0; i < vars[u].size(); ++i)
                scope[v].push_back({u, static_cast<int>(i)});
        // deterministic order: by (vertex, index)
        std::sort(scope[v].begin(), scope[v].end());
    }
    if (kind == EventKind::CustomTable && static_cast<int>(tables.size()) != tree.n)
        throw std::invalid_argument("LLLInstance: custom tables missing");
}

LLLInstance make_uniform_instance(const Graph& tree, int radius, int domain, EventKind kind) {
    LLLInstance inst;
    inst.tree = tree;
    inst.radius = radius;
    inst.kind = kind;
    inst.vars.assign(tree.n, {Variable{domain, {}}});
    inst.finalize();
    // declared p for the builtin families
    double p = 0;
    for (int v = 0; v < tree.n; ++v) {
        int nv = static_cast<int>(inst.scope[v].size());
        if (kind == EventKind::AllEqualBall)
            p = std::max(p, std::pow(1.0 / domain, nv - 1));
        else
            p = std::max(p, 1.0);
    }
    inst.declared_p = (kind == EventKind::AlwaysFalse) ? 0.0 : std::max(p, 1e-300);
    return inst;
}

PartialAssignment empty_assignment(const LLLInstance& inst) {
    PartialAssignment phi;
    phi.value.assign(inst.total_vars, -1);
    return phi;
}

namespace {

bool predicate(const LLLInstance& inst, int v, const std::vector<int>& values) {
    switch (inst.kind) {
        case EventKind::AlwaysFalse:
            return false;
        case EventKind::AllEqualBall: {
            for (size_t i = 1; i < values.size(); ++i)
                if (values[i] != values[0]) return false;
            return true;
        }
        case EventKind::MajorityBall: {
            std::map<int, int> freq;
            int best = 0;
            for (int x : values) best = std::max(best, ++freq[x]);
            return 2 * best > static_cast<int>(values.size());
        }
        case EventKind::CustomTable: {
            long long idx = 0;
            for (size_t i = 0; i < values.size(); ++i) {
                auto [u, vi] = inst.scope[v][i];
                idx = idx * inst.vars[u][vi].domain + values[i];
            }
            return inst.tables[v].at(static_cast<size_t>(idx)) != 0;
        }
    }
    return false;
}

}  // namespace

bool event_occurs(const LLLInstance& inst, int v, const PartialAssignment& phi) {
    std::vector<int> values;
    values.reserve(inst.scope[v].size());
    for (auto [u, i] : inst.scope[v]) {
        int id = inst.var_id(u, i);
        if (!phi.assigned(id))
            throw std::invalid_argument("event_occurs: scope variable unassigned");
        values.push_back(phi.value[id]);
    }
    return predicate(inst, v, values);
}

ProbabilityResult event_probability(const LLLInstance& inst, int v, const PartialAssignment& phi,
                                    bool allow_monte_carlo, uint64_t mc_seed) {
    std::vector<int> values(inst.scope[v].size(), 0);
    std::vector<int> free_pos;
    long long states = 1;
    bool overflow = false;
    for (size_t i = 0; i < inst.scope[v].size(); ++i) {
        auto [u, vi] = inst.scope[v][i];
        int id = inst.var_id(u, vi);
        if (phi.assigned(id)) {
            values[i] = phi.value[id];
        } else {
            free_pos.push_back(static_cast<int>(i));
            if (states > kEventEnumCap / inst.vars[u][vi].domain + 1) overflow = true;
            states *= inst.vars[u][vi].domain;
        }
    }
    ProbabilityResult res;
    if (!overflow && states <= kEventEnumCap) {
        res.states = states;
        // odometer over the free positions
        std::vector<int> idx(free_pos.size(), 0);
        long double total = 0;
        while (true) {
            long double w = 1.0L;
            for (size_t j = 0; j < free_pos.size(); ++j) {
                auto [u, vi] = inst.scope[v][free_pos[j]];
                values[free_pos[j]] = idx[j];
                w *= var_prob(inst.vars[u][vi], idx[j]);
            }
            if (predicate(inst, v, values)) total += w;
            size_t pos = 0;
            while (pos < idx.size()) {
                auto [u, vi] = inst.scope[v][free_pos[pos]];
                if (++idx[pos] < inst.vars[u][vi].domain) break;
                idx[pos++] = 0;
            }
            if (pos == idx.size()) break;
            if (idx.empty()) break;
        }
        res.probability = static_cast<double>(total);
        res.exact = true;
        return res;
    }
    if (!allow_monte_carlo)
        throw std::invalid_argument("event_probability: joint domain exceeds the enumeration cap");
    Rng rng(mix64(mc_seed, static_cast<uint64_t>(v)));
    long long hits = 0;
    for (int s = 0; s < kEventMonteCarloSamples; ++s) {
        for (int j : free_pos) {
            auto [u, vi] = inst.scope[v][j];
            values[j] = sample_var(inst.vars[u][vi], rng);
        }
        if (predicate(inst, v, values)) ++hits;
    }
    res.exact = false;
    res.samples = kEventMonteCarloSamples;
    res.probability = static_cast<double>(hits) / kEventMonteCarloSamples;
    res.std_error = std::sqrt(res.probability * (1 - res.probability) / kEventMonteCarloSamples);
    return res;
}

bool assignment_valid(const LLLInstance& inst, const PartialAssignment& phi) {
    for (int v = 0; v < inst.tree.n; ++v)
        if (event_occurs(inst, v, phi)) return false;
    return true;
}

MoserTardosResult moser_tardos(const LLLInstance& inst, uint64_t seed, long long max_resamples) {
    MoserTardosResult res;
    res.assignment = empty_assignment(inst);
    Rng rng(mix64(seed, 0xa17eULL));
    for (int v = 0; v < inst.tree.n; ++v)
        for (size_t i = 0; i < inst.vars[v].size(); ++i)
            res.assignment.value[inst.var_id(v, static_cast<int>(i))] =
                sample_var(inst.vars[v][i], rng);

    std::set<int> violated;
    for (int v = 0; v < inst.tree.n; ++v)
        if (event_occurs(inst, v, res.assignment)) violated.insert(v);

    while (!violated.empty()) {
        if (res.resamples >= max_resamples) {
            res.success = false;
            return res;
        }
        int v = *violated.begin();
        for (auto [u, i] : inst.scope[v])
            res.assignment.value[inst.var_id(u, i)] = sample_var(inst.vars[u][i], rng);
        ++res.resamples;
        // events within distance radius share variables with E(v)
        for (int u : ball(inst.tree, v, inst.radius)) {
            if (event_occurs(inst, u, res.assignment))
                violated.insert(u);
            else
                violated.erase(u);
        }
    }
    res.success = true;
    return res;
}

DeterministicSolveResult deterministic_lll_via_decomposition(
    const LLLInstance& inst, const Decomposition& decomp, PartialAssignment phi,
    const std::vector<int>& event_set, const DeterministicSolveOptions& options) {
    const Graph& tree = inst.tree;
    if (static_cast<int>(decomp.part.size()) != tree.n)
        throw std::invalid_argument("deterministic_lll_via_decomposition: decomposition mismatch");
    if (phi.value.empty()) phi = empty_assignment(inst);

    int d = inst.dependency_degree();
    long double base = options.weight_base > 0 ? options.weight_base
                                               : std::exp(1.0L) * std::max(d, 1);
    int parts = decomp.num_parts();
    if (options.enforce_criterion) {
        // the criterion uses the true dependency degree; an isolated event
        // (d = 0) always qualifies
        long double crit = inst.declared_p * std::pow(std::exp(1.0L) * d, (long double)parts);
        if (!(crit < 1.0L))
            throw std::invalid_argument(
                "deterministic_lll_via_decomposition: criterion p (ed)^parts < 1 violated");
    }

    std::vector<int> events;
    if (event_set.empty()) {
        events.resize(tree.n);
        for (int v = 0; v < tree.n; ++v) events[v] = v;
    } else {
        events = event_set;
    }
    std::vector<char> is_event(tree.n, 0);
    for (int v : events) is_event[v] = 1;

    // which parts touch each event's scope (only parts holding unassigned vars)
    auto touching_parts = [&](int v) {
        std::set<int> t;
        for (auto [u, i] : inst.scope[v]) {
            if (decomp.part[u] < 0) continue;
            if (!phi.assigned(inst.var_id(u, i))) t.insert(decomp.part[u]);
        }
        return t;
    };

    DeterministicSolveResult res;
    // conditional probability cache
    std::vector<long double> prob(tree.n, 0);
    for (int v : events) prob[v] = event_probability(inst, v, phi).probability;

    auto weight_of = [&](int v, int current_part) {
        auto t = touching_parts(v);
        int c = 0;
        for (int j : t)
            if (j >= current_part) ++c;
        return std::pow(base, (long double)c);
    };

    auto potential = [&](int current_part) {
        long double sum = 0;
        for (int v : events) sum += prob[v] * weight_of(v, current_part);
        return sum;
    };
    res.initial_potential = potential(0);

    for (int j = 0; j < parts; ++j) {
        long double before = potential(j);
        if (before > res.initial_potential * (1 + 1e-9) + 1e-12) res.potential_monotone = false;
        // fix unassigned variables of part-j vertices in id order
        for (int u = 0; u < tree.n; ++u) {
            if (decomp.part[u] != j) continue;
            for (size_t i = 0; i < inst.vars[u].size(); ++i) {
                int id = inst.var_id(u, static_cast<int>(i));
                if (phi.assigned(id)) continue;
                // events affected by this variable
                std::vector<int> affected;
                for (int w : ball(tree, u, inst.radius / 2))
                    if (is_event[w]) affected.push_back(w);
                long double w_before = 0;
                std::vector<long double> weights(affected.size());
                for (size_t a = 0; a < affected.size(); ++a) {
                    weights[a] = weight_of(affected[a], j);
                    w_before += prob[affected[a]] * weights[a];
                }
                int best_value = 0;
                long double best_sum = -1;
                std::vector<long double> best_probs;
                for (int x = 0; x < inst.vars[u][i].domain; ++x) {
                    phi.value[id] = x;
                    long double sum = 0;
                    std::vector<long double> probs(affected.size());
                    for (size_t a = 0; a < affected.size(); ++a) {
                        probs[a] = event_probability(inst, affected[a], phi).probability;
                        sum += probs[a] * weights[a];
                    }
                    if (best_sum < 0 || sum < best_sum) {
                        best_sum = sum;
                        best_value = x;
                        best_probs = std::move(probs);
                    }
                }
                phi.value[id] = best_value;
                // conditional expectation: the minimum never exceeds the mean
                if (best_sum > w_before * (1 + 1e-9) + 1e-15) res.potential_monotone = false;
                for (size_t a = 0; a < affected.size(); ++a) prob[affected[a]] = best_probs[a];
            }
        }
    }
    res.final_potential = potential(parts);
    res.assignment = std::move(phi);
    res.success = true;
    for (int v : events)
        if (event_occurs(inst, v, res.assignment)) res.success = false;
    return res;
}

int hatdeg(const Graph& tree, const std::vector<char>& in_s, int u, int r) {
    int count = 0;
    for (auto [w, e] : tree.adj[u]) {
        (void)e;
        // BFS into the subtree entered through w, up to depth r from u
        bool found = in_s[w];
        if (!found && r >= 2) {
            std::vector<std::pair<int, int>> frontier{{w, 1}};
            std::vector<int> seen{u, w};
            for (size_t i = 0; i < frontier.size() && !found; ++i) {
                auto [x, dist] = frontier[i];
                if (dist == r) continue;
                for (auto [y, e2] : tree.adj[x]) {
                    (void)e2;
                    if (y == u || std::find(seen.begin(), seen.end(), y) != seen.end()) continue;
                    seen.push_back(y);
                    if (in_s[y]) {
                        found = true;
                        break;
                    }
                    frontier.push_back({y, dist + 1});
                }
            }
        }
        if (found) ++count;
    }
    return count;
}

namespace {

// hatdeg of every vertex against the set S in one multi-source pass
std::vector<int> hatdeg_all(const Graph& tree, const std::vector<int>& s, int r) {
    std::vector<int> count(tree.n, 0);
    std::vector<std::set<int>> keys(tree.n);
    std::vector<int> dist(tree.n, -1), pred(tree.n, -1);
    for (int src : s) {
        // BFS from src up to depth r; the subtree key of src at u is the
        // neighbor of u on the unique u..src path, i.e. the BFS predecessor
        std::vector<int> touched{src};
        dist[src] = 0;
        pred[src] = -1;
        for (size_t i = 0; i < touched.size(); ++i) {
            int x = touched[i];
            if (x != src) keys[x].insert(pred[x]);
            if (dist[x] == r) continue;
            for (auto [y, e] : tree.adj[x]) {
                (void)e;
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    pred[y] = x;
                    touched.push_back(y);
                }
            }
        }
        for (int x : touched) dist[x] = -1;
    }
    for (int v = 0; v < tree.n; ++v) count[v] = static_cast<int>(keys[v].size());
    return count;
}

}  // namespace

std::pair<std::vector<int>, ContagionTrace> find_small_stable_set(const Graph& tree,
                                                                  const std::vector<int>& infected,
                                                                  int r, int mu, int tau) {
    if (mu < 4 || mu % 2 != 0)
        throw std::invalid_argument("find_small_stable_set: mu must be even and >= 4");
    if (tau < 1) throw std::invalid_argument("find_small_stable_set: tau must be >= 1");
    ContagionTrace trace;
    trace.mu = mu;
    trace.r = r;
    trace.tau = tau;

    std::vector<int> u0 = infected;
    std::sort(u0.begin(), u0.end());
    u0.erase(std::unique(u0.begin(), u0.end()), u0.end());
    std::vector<char> in_u0(tree.n, 0);
    for (int v : u0) in_u0[v] = 1;

    trace.u_sets.push_back(u0);
    std::vector<int> cur = u0;
    std::vector<char> in_cur = in_u0;
    for (int i = 1; i <= tau; ++i) {
        auto deg = hatdeg_all(tree, cur, r);
        std::vector<int> next = cur;
        for (int v = 0; v < tree.n; ++v)
            if (!in_cur[v] && 2 * deg[v] > mu) next.push_back(v);
        std::sort(next.begin(), next.end());
        for (int v : next) in_cur[v] = 1;
        cur = next;
        trace.u_sets.push_back(cur);
    }
    trace.l_sets.push_back(cur);
    for (int i = 1; i <= tau; ++i) {
        auto deg = hatdeg_all(tree, cur, r);
        std::vector<int> next;
        for (int v : cur)
            if (in_u0[v] || deg[v] > mu) next.push_back(v);
        std::vector<char> in_next(tree.n, 0);
        for (int v : next) in_next[v] = 1;
        in_cur = in_next;
        cur = next;
        trace.l_sets.push_back(cur);
    }
    return {cur, trace};
}

StableSmallReport verify_stable_small(const Graph& tree, const std::vector<int>& s,
                                      const std::vector<int>& infected, int r, int mu,
                                      double c_small) {
    StableSmallReport rep;
    std::vector<char> in_s(tree.n, 0);
    for (int v : s) in_s[v] = 1;
    auto deg = hatdeg_all(tree, s, r);
    std::vector<char> in_infected(tree.n, 0);
    for (int v : infected) in_infected[v] = 1;
    for (int v = 0; v < tree.n; ++v) {
        if (in_s[v]) continue;
        if (in_infected[v] || deg[v] > mu) {
            rep.stable = false;
            rep.instability_witnesses.push_back(v);
        }
    }
    // smallness: components of the union of r-balls of S
    std::vector<char> in_union(tree.n, 0);
    for (int v : s)
        for (int u : ball(tree, v, r)) in_union[u] = 1;
    std::vector<int> members;
    for (int v = 0; v < tree.n; ++v)
        if (in_union[v]) members.push_back(v);
    std::vector<int> pref(tree.n, 2);
    for (int v : s) pref[v] = 1;
    for (int v : infected) pref[v] = 0;
    double budget = c_small * std::log2(std::max(tree.n, 2));
    for (auto& comp : induced_components(tree, members)) {
        ++rep.num_components;
        rep.max_component_size = std::max(rep.max_component_size, (int)comp.size());
        auto dom = greedy_distance_dominating_set(tree, comp, 2 * r, pref);
        rep.max_dominating_set = std::max(rep.max_dominating_set, (int)dom.size());
    }
    rep.small = rep.max_dominating_set <= budget;
    return rep;
}

namespace {

// probability of E(v) when only vbl(resample_set) is redrawn, everything else
// fixed at phi; phi is restored before returning
double resample_probability(const LLLInstance& inst, int v, PartialAssignment& phi,
                            const std::vector<int>& resample_set) {
    std::vector<std::pair<int, int>> saved;
    for (int u : resample_set)
        for (int w : ball(inst.tree, u, inst.radius / 2))
            for (size_t i = 0; i < inst.vars[w].size(); ++i) {
                int id = inst.var_id(w, static_cast<int>(i));
                if (phi.value[id] >= 0) {
                    saved.push_back({id, phi.value[id]});
                    phi.value[id] = -1;
                }
            }
    double p = event_probability(inst, v, phi).probability;
    for (auto [id, val] : saved) phi.value[id] = val;
    return p;
}

}  // namespace

ShatterResult shatter_good_partial(const LLLInstance& inst, double lambda, uint64_t seed,
                                   InfectionMode mode) {
    if (lambda < 2) throw std::invalid_argument("shatter_good_partial: lambda must be >= 2");
    const Graph& tree = inst.tree;
    int r = inst.radius;
    ShatterResult res;
    res.lambda = lambda;

    // mu: largest even integer with lambda >= 2(mu^r + 8r)
    int mu = 4;
    res.best_effort = lambda < 2.0 * (std::pow(4.0, r) + 8.0 * r);
    if (!res.best_effort) {
        while (true) {
            int next = mu + 2;
            if (lambda >= 2.0 * (std::pow((double)next, r) + 8.0 * r))
                mu = next;
            else
                break;
        }
    }
    res.mu = mu;
    double loglog = std::max(std::log2(std::max(tree.n, 2)), 2.0);
    res.tau = std::max(1, (int)std::ceil(kTauFactor * std::log(loglog) / std::log((double)mu)));

    // total sample
    res.phi = empty_assignment(inst);
    for (int v = 0; v < tree.n; ++v)
        for (size_t i = 0; i < inst.vars[v].size(); ++i) {
            Rng rng(mix64(seed, inst.var_id(v, static_cast<int>(i))));
            res.phi.value[inst.var_id(v, static_cast<int>(i))] = sample_var(inst.vars[v][i], rng);
        }

    int d = inst.dependency_degree();
    double threshold = std::pow(std::exp(1.0) * std::max(d, 1), -lambda / 2.0);

    // initial infection
    double mu_pow_r = std::pow((double)mu, r);
    for (int v = 0; v < tree.n; ++v) {
        auto nbhd = ball(tree, v, r);
        bool use_exact = mode == InfectionMode::Exact ||
                         (mode == InfectionMode::Auto &&
                          static_cast<int>(nbhd.size()) <= 13 && mu_pow_r <= 4);
        bool infected = false;
        if (use_exact) {
            if (nbhd.size() > 13)
                throw std::invalid_argument(
                    "shatter_good_partial: exact infection needs |N^r(v)| <= 12");
            // enumerate subsets of N^r(v) with |S| <= mu^r
            int m = static_cast<int>(nbhd.size());
            for (uint32_t mask = 0; mask < (1u << m) && !infected; ++mask) {
                if (__builtin_popcount(mask) > mu_pow_r) continue;
                std::vector<int> rs;
                for (int b = 0; b < m; ++b)
                    if (mask & (1u << b)) rs.push_back(nbhd[b]);
                if (resample_probability(inst, v, res.phi, rs) >= threshold) infected = true;
            }
        } else {
            infected = event_occurs(inst, v, res.phi);
            for (size_t j = 0; j < nbhd.size() && !infected; ++j)
                if (resample_probability(inst, v, res.phi, {nbhd[j]}) >= threshold)
                    infected = true;
        }
        if (infected) res.infected.push_back(v);
    }

    auto [s, trace] = find_small_stable_set(tree, res.infected, r, mu, res.tau);
    res.stable_set = s;
    res.trace = std::move(trace);

    // unset vbl(S)
    for (int v : s)
        for (int w : ball(tree, v, r / 2))
            for (size_t i = 0; i < inst.vars[w].size(); ++i)
                res.phi.value[inst.var_id(w, static_cast<int>(i))] = -1;

    // components of vertices with unassigned scope variables
    std::vector<int> open;
    for (int v = 0; v < tree.n; ++v) {
        bool has_unset = false;
        for (auto [u, i] : inst.scope[v])
            if (!res.phi.assigned(inst.var_id(u, i))) has_unset = true;
        if (has_unset) open.push_back(v);
    }
    res.components = induced_components(tree, open);
    return res;
}

GoodPartialReport verify_good_partial(const LLLInstance& inst, const PartialAssignment& phi,
                                      double p_prime) {
    GoodPartialReport rep;
    const Graph& tree = inst.tree;
    std::vector<int> open;
    for (int v = 0; v < tree.n; ++v) {
        bool has_unset = false;
        for (auto [u, i] : inst.scope[v])
            if (!phi.assigned(inst.var_id(u, i))) has_unset = true;
        if (!has_unset) {
            if (event_occurs(inst, v, phi)) {
                rep.assigned_events_ok = false;
                rep.occurring_events.push_back(v);
            }
        } else {
            open.push_back(v);
        }
    }
    std::vector<int> pref(tree.n, 1);
    auto comps = induced_components(tree, open);
    rep.num_components = static_cast<int>(comps.size());
    for (auto& comp : comps) {
        rep.max_component_size = std::max(rep.max_component_size, (int)comp.size());
        auto dom = greedy_distance_dominating_set(tree, comp, 2 * inst.radius, pref);
        rep.max_dominating_set = std::max(rep.max_dominating_set, (int)dom.size());
    }
    for (int v = 0; v < tree.n; ++v) {
        auto pr = event_probability(inst, v, phi, true, 0x900d);
        if (!pr.exact) rep.all_exact = false;
        rep.max_conditional = std::max(rep.max_conditional, pr.probability);
        if (pr.probability > p_prime + 1e-12) {
            rep.conditional_ok = false;
            rep.conditional_violations.push_back(v);
        }
    }
    return rep;
}

SolveResult solve_tree_lll(const LLLInstance& inst, uint64_t seed, int max_retries) {
    SolveResult res;
    const Graph& tree = inst.tree;
    int d = inst.dependency_degree();
    double ed = std::exp(1.0) * std::max(d, 1);
    // the largest workable lambda for the declared p
    double lam = 2;
    if (inst.declared_p > 0 && inst.declared_p < 1)
        lam = std::max(2.0, std::floor(-std::log(inst.declared_p) / std::log(ed) - 1e-9));

    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        ShatterResult sh = shatter_good_partial(inst, lam, mix64(seed, 7000 + attempt));
        res.stats.retries = attempt;
        res.stats.used_shattering = !sh.stable_set.empty();
        res.stats.components = static_cast<int>(sh.components.size());
        PartialAssignment phi = sh.phi;
        bool failed = false;
        for (auto& comp : sh.components) {
            res.stats.max_component = std::max(res.stats.max_component, (int)comp.size());
            // subtree of this component
            std::vector<int> local(tree.n, -1);
            for (size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
            std::vector<std::pair<int, int>> sedges;
            for (int v : comp)
                for (auto [u, e] : tree.adj[v]) {
                    (void)e;
                    if (local[u] >= 0 && u < v) sedges.push_back({local[u], local[v]});
                }
            Graph sub = make_graph(static_cast<int>(comp.size()), sedges);
            Decomposition emb;
            if (comp.size() == 1) {
                emb.target_power = 2 * inst.radius;
                emb.part.assign(tree.n, -1);
                emb.part[comp[0]] = 0;
                emb.kinds = {PartKind::DiameterBounded};
                emb.diameter_bounds = {0};
            } else {
                std::vector<int> all(sub.n);
                for (int i = 0; i < sub.n; ++i) all[i] = i;
                auto dom = greedy_distance_dominating_set(sub, all, 2 * inst.radius);
                auto dec = decompose_two_part(sub, 2 * inst.radius,
                                              std::max<long long>(1, (long long)dom.size()),
                                              2 * inst.radius);
                emb = dec.decomposition;
                std::vector<int> full(tree.n, -1);
                for (size_t i = 0; i < comp.size(); ++i) full[comp[i]] = emb.part[i];
                emb.part = std::move(full);
            }
            DeterministicSolveOptions opt;
            opt.enforce_criterion = false;  // the exact final check governs
            auto solved = deterministic_lll_via_decomposition(inst, emb, phi, comp, opt);
            phi = solved.assignment;
            if (!solved.success) failed = true;
        }
        if (!failed && phi.num_unset() == 0 && assignment_valid(inst, phi)) {
            res.assignment = std::move(phi);
            res.success = true;
            return res;
        }
    }
    res.success = false;
    return res;
}

std::string lll_instance_to_json(const LLLInstance& inst) {
    nlohmann::json j;
    j["tree"] = nlohmann::json::parse(graph_to_json(inst.tree));
    j["r"] = inst.radius;
    nlohmann::json vars = nlohmann::json::object();
    for (int v = 0; v < inst.tree.n; ++v) {
        nlohmann::json lst = nlohmann::json::array();
        for (auto& var : inst.vars[v]) {
            nlohmann::json vj;
            vj["domain"] = var.domain;
            if (!var.weight.empty()) vj["dist"] = var.weight;
            lst.push_back(vj);
        }
        vars[std::to_string(v)] = lst;
    }
    j["vars"] = vars;
    nlohmann::json events;
    switch (inst.kind) {
        case EventKind::AllEqualBall: events["type"] = "all_equal_ball"; break;
        case EventKind::MajorityBall: events["type"] = "majority_ball"; break;
        case EventKind::AlwaysFalse: events["type"] = "always_false"; break;
        case EventKind::CustomTable: {
            events["type"] = "custom_table";
            nlohmann::json tables = nlohmann::json::object();
            for (int v = 0; v < inst.tree.n; ++v) tables[std::to_string(v)] = inst.tables[v];
            events["tables"] = tables;
            break;
        }
    }
    j["events"] = events;
    j["p"] = inst.declared_p;
    return j.dump(2);
}

LLLInstance lll_instance_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LLLInstance inst;
    inst.tree = graph_from_json(j.at("tree").dump());
    inst.radius = j.at("r").get<int>();
    inst.vars.assign(inst.tree.n, {});
    for (auto& [key, lst] : j.at("vars").items()) {
        int v = std::stoi(key);
        for (auto& vj : lst) {
            Variable var;
            var.domain = vj.at("domain").get<int>();
            if (vj.contains("dist")) var.weight = vj["dist"].get<std::vector<double>>();
            inst.vars.at(v).push_back(var);
        }
    }
    std::string type = j.at("events").at("type").get<std::string>();
    if (type == "all_equal_ball")
        inst.kind = EventKind::AllEqualBall;
    else if (type == "majority_ball")
        inst.kind = EventKind::MajorityBall;
    else if (type == "always_false")
        inst.kind = EventKind::AlwaysFalse;
    else if (type == "custom_table") {
        inst.kind = EventKind::CustomTable;
        inst.tables.assign(inst.tree.n, {});
        for (auto& [key, tbl] : j.at("events").at("tables").items())
            inst.tables.at(std::stoul(key)) = tbl.get<std::vector<uint8_t>>();
    } else {
        throw std::invalid_argument("lll json: unknown event type " + type);
    }
    inst.declared_p = j.value("p", 1.0);
    inst.finalize();
    return inst;
}

std::string assignment_to_json(const PartialAssignment& phi) {
    nlohmann::json j;
    j["values"] = phi.value;
    return j.dump();
}

}  // namespace localec
