#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "localec/graph.hpp"
#include "localec/tree_decomp.hpp"

namespace localec {

struct Variable {
    int domain = 2;
    std::vector<double> weight;  // unnormalized; empty = uniform
};

enum class EventKind { AllEqualBall, MajorityBall, CustomTable, AlwaysFalse };

// Tree-structured constraint system: vertex v's bad event reads exactly the
// variables within distance radius/2 of v.
struct LLLInstance {
    Graph tree;
    int radius = 2;  // r; even
    std::vector<std::vector<Variable>> vars;  // per vertex
    EventKind kind = EventKind::AllEqualBall;
    // CustomTable: per vertex a truth table over the joint domain of its
    // scope, ordered by the scope enumeration with the last variable fastest
    std::vector<std::vector<uint8_t>> tables;
    double declared_p = 1.0;

    // derived on build
    std::vector<std::vector<std::pair<int, int>>> scope;  // per event: (vertex, var idx)
    std::vector<int> var_base;                             // flattened variable ids
    int total_vars = 0;

    int dependency_degree() const;  // max degree of T^r
    void finalize();                // computes scopes and ids
    int var_id(int vertex, int idx) const { return var_base[vertex] + idx; }
};

LLLInstance make_uniform_instance(const Graph& tree, int radius, int domain, EventKind kind);

struct PartialAssignment {
    std::vector<int> value;  // per flattened var id; -1 = unset
    bool assigned(int id) const { return value[id] >= 0; }
    int num_unset() const {
        int c = 0;
        for (int v : value) c += v < 0;
        return c;
    }
};

PartialAssignment empty_assignment(const LLLInstance& inst);

// Evaluates E(v) when the whole scope is assigned.
bool event_occurs(const LLLInstance& inst, int v, const PartialAssignment& phi);

struct ProbabilityResult {
    double probability = 0;
    bool exact = true;
    long long states = 0;    // enumerated joint states
    long long samples = 0;   // Monte Carlo mode
    double std_error = 0;
};

// Pr[E(v) | phi] by exact enumeration over the unassigned scope variables;
// Monte Carlo fallback when the joint domain exceeds the cap and
// allow_monte_carlo is set, otherwise rejected.
ProbabilityResult event_probability(const LLLInstance& inst, int v, const PartialAssignment& phi,
                                    bool allow_monte_carlo = false, uint64_t mc_seed = 1);

struct MoserTardosResult {
    PartialAssignment assignment;
    long long resamples = 0;
    bool success = false;
};

// Sequential resampling baseline: sample everything, then repeatedly resample
// the scope of the lowest-index occurring event.
MoserTardosResult moser_tardos(const LLLInstance& inst, uint64_t seed,
                               long long max_resamples = 1000000);

// True iff no event occurs under a total assignment.
bool assignment_valid(const LLLInstance& inst, const PartialAssignment& phi);

struct DeterministicSolveOptions {
    bool enforce_criterion = true;  // reject unless p (ed)^parts < 1
    double weight_base = 0;          // 0 = e * d
};

struct DeterministicSolveResult {
    PartialAssignment assignment;
    long double initial_potential = 0;
    long double final_potential = 0;
    bool potential_monotone = true;
    bool success = false;
};

// Conditional-expectation solver driven by a network decomposition of
// (T^r)^2: parts processed in order, each component independently fixing its
// variables so that the potential sum_v Pr[E(v)|phi] (ed)^{c(v)} never
// increases, where c(v) counts the remaining parts touching E(v)'s scope.
// event_set restricts the events considered (empty = all); only unassigned
// variables of restrict-set vertices are fixed.
DeterministicSolveResult deterministic_lll_via_decomposition(
    const LLLInstance& inst, const Decomposition& decomp, PartialAssignment phi = {},
    const std::vector<int>& event_set = {}, const DeterministicSolveOptions& options = {});

// Number of distinct subtrees of u containing a vertex of S within distance r.
int hatdeg(const Graph& tree, const std::vector<char>& in_s, int u, int r);

struct ContagionTrace {
    std::vector<std::vector<int>> u_sets;  // U_0 .. U_tau
    std::vector<std::vector<int>> l_sets;  // L_0 .. L_tau
    int mu = 0, r = 0, tau = 0;
};

// Forward growth at threshold mu/2 for tau steps, then backward shrink at
// threshold mu; returns the final set and the full trace.
std::pair<std::vector<int>, ContagionTrace> find_small_stable_set(const Graph& tree,
                                                                  const std::vector<int>& infected,
                                                                  int r, int mu, int tau);

struct StableSmallReport {
    bool stable = true;
    std::vector<int> instability_witnesses;  // vertices violating stability
    int num_components = 0;
    int max_component_size = 0;
    int max_dominating_set = 0;  // greedy distance-2r dominating sets
    bool small = true;           // vs c_small * log2(n)
};

StableSmallReport verify_stable_small(const Graph& tree, const std::vector<int>& s,
                                      const std::vector<int>& infected, int r, int mu,
                                      double c_small);

enum class InfectionMode { Auto, Exact, Surrogate };

struct ShatterResult {
    PartialAssignment phi;
    std::vector<int> infected;             // initially infected vertices
    std::vector<int> stable_set;           // S = L_tau
    ContagionTrace trace;
    std::vector<std::vector<int>> components;  // of vertices with unset scope
    int mu = 0, tau = 0;
    double lambda = 0;
    bool best_effort = false;  // lambda below the guaranteed threshold
};

// Samples a total assignment, infects the events that are too close to
// occurring, computes a small stable superset, and unsets its scopes.
ShatterResult shatter_good_partial(const LLLInstance& inst, double lambda, uint64_t seed,
                                   InfectionMode mode = InfectionMode::Auto);

struct GoodPartialReport {
    bool assigned_events_ok = true;          // (1)
    std::vector<int> occurring_events;
    int num_components = 0;                  // (2) measured
    int max_component_size = 0;
    int max_dominating_set = 0;
    bool conditional_ok = true;              // (3)
    std::vector<int> conditional_violations;
    double max_conditional = 0;
    bool all_exact = true;
};

GoodPartialReport verify_good_partial(const LLLInstance& inst, const PartialAssignment& phi,
                                      double p_prime);

struct SolveStats {
    int retries = 0;
    int components = 0;
    int max_component = 0;
    bool used_shattering = false;
};

struct SolveResult {
    PartialAssignment assignment;
    SolveStats stats;
    bool success = false;
};

// Shatter, decompose each residual component, solve deterministically, check
// exactly, retry the pipeline on failure.
SolveResult solve_tree_lll(const LLLInstance& inst, uint64_t seed, int max_retries = 5);

// JSON: {"tree": {...}, "r": int, "vars": {"v": [{"domain": d, "dist": [..]}]},
//        "events": {"type": "all_equal_ball"|"majority_ball"|"custom_table",
//                   "tables": {"v": [0/1,...]}?}, "p": double}
std::string lll_instance_to_json(const LLLInstance& inst);
LLLInstance lll_instance_from_json(const std::string& text);
std::string assignment_to_json(const PartialAssignment& phi);

}  // namespace localec
