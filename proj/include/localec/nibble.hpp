#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "localec/graph.hpp"
#include "localec/schedule.hpp"

namespace localec {

// Small dynamic bitset over colors 1..capacity.
class ColorSet {
public:
    ColorSet() = default;
    explicit ColorSet(int capacity) : capacity_(capacity), words_((capacity + 63) / 64, 0) {}
    static ColorSet full(int capacity) {
        ColorSet s(capacity);
        for (int c = 1; c <= capacity; ++c) s.insert(c);
        return s;
    }
    bool contains(int color) const {
        int b = color - 1;
        return (words_[b >> 6] >> (b & 63)) & 1;
    }
    void insert(int color) {
        int b = color - 1;
        if (!((words_[b >> 6] >> (b & 63)) & 1)) {
            words_[b >> 6] |= 1ULL << (b & 63);
            ++count_;
        }
    }
    void erase(int color) {
        int b = color - 1;
        if ((words_[b >> 6] >> (b & 63)) & 1) {
            words_[b >> 6] &= ~(1ULL << (b & 63));
            --count_;
        }
    }
    int size() const { return count_; }
    int capacity() const { return capacity_; }
    // i-th smallest color, 0-based
    int nth(int i) const;
    // drop the highest-numbered colors until exactly p remain
    void keep_lowest(int p);
    void subtract(const ColorSet& other);
    std::vector<int> to_vector() const;
    int num_words() const { return static_cast<int>(words_.size()); }
    uint64_t word(int i) const { return words_[i]; }
    // calls fn(color) for every member
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (size_t w = 0; w < words_.size(); ++w) {
            uint64_t x = words_[w];
            while (x) {
                fn(static_cast<int>(w * 64 + __builtin_ctzll(x)) + 1);
                x &= x - 1;
            }
        }
    }

private:
    int capacity_ = 0;
    int count_ = 0;
    std::vector<uint64_t> words_;
    friend struct ColoringState;
};

// A virtual edge pendant at `vertex`.  Its palette has the uniform size p,
// of which `listed` interact with the host vertex; the rest are private to
// its simulated subtree.  The far endpoint's competitors are realized as a
// single survival draw with the exact subtree probability.
struct ImaginaryEdge {
    int vertex = 0;
    std::vector<int> listed;
};

struct ColoringState {
    const Graph* g = nullptr;
    int palette_capacity = 0;          // size of the phase-one color space
    std::vector<int> committed;        // per edge, 0 = uncolored
    std::vector<ColorSet> palette;     // per edge; meaningful while uncolored
    // padding (present after pad_uniform)
    bool padded = false;
    int uniform_cdeg = 0;              // t
    int uniform_palette = 0;           // p
    std::vector<ImaginaryEdge> imaginary;

    static ColoringState fresh(const Graph& g, int palette_capacity);
    std::vector<int> uncolored_edges() const;
    int residual_degree(int v) const;
    int max_residual_degree() const;
};

struct InvariantReport {
    double bound_deg = 0, bound_cdeg = 0, bound_palette = 0;
    int max_deg = 0;
    int max_cdeg = 0;
    int min_palette = std::numeric_limits<int>::max();  // over uncolored edges
    std::vector<int> deg_violators;                     // vertices
    std::vector<std::pair<int, int>> cdeg_violators;    // (vertex, color)
    std::vector<int> palette_violators;                 // edges
    bool pass() const {
        return deg_violators.empty() && cdeg_violators.empty() && palette_violators.empty();
    }
};

// Exhaustive comparison of the real residual graph against (d, t, p).
InvariantReport check_invariant(const ColoringState& state, double d, double t, double p);

// Uniformizes the state: real palettes truncated to exactly p (dropping the
// highest-numbered colors), imaginary edges added so that every color
// present at a vertex sits in exactly t incident palettes.  Edges with
// empty palettes are left out of the uniformization.
ColoringState pad_uniform(const ColoringState& state, double t, double p,
                          bool enforce_invariant = true);

struct OneShotResult {
    std::vector<std::pair<int, int>> newly_committed;  // (edge, color)
    int imaginary_commits = 0;
};

// Selections: per real edge the chosen color (0 = none, e.g. dead palette),
// per imaginary edge the chosen listed color (0 = a private color).
struct OneShotSelections {
    std::vector<int> real;
    std::vector<int> imaginary;
    std::vector<char> imaginary_far_blocked;  // far-side conflict pre-drawn
};

OneShotSelections draw_selections(const ColoringState& state, uint64_t seed);

// Pure outcome of one round given the selections: an edge commits iff no
// adjacent edge selected the same color; commits prune the color from every
// adjacent uncolored palette.  Imaginary commits are discarded afterwards
// but do block and do prune.
OneShotResult apply_selections(ColoringState& state, const OneShotSelections& sel);

OneShotResult one_shot_coloring(ColoringState& state, uint64_t seed);

// Finite-scale invariant slack: bounds are widened to
//   x + z * (sqrt(x * ln(M)) + ln(M))
// with M the entity count, absorbing the max-over-n fluctuations that the
// asymptotic rows ignore.  z = 0 reproduces the bare schedule rows.
struct DeskSlack {
    double z = 0.0;
    double widen(double x, double entities) const;
};

struct IterationOutcome {
    int retries = 0;
    InvariantReport report;        // of the accepted state
    double eff_d = 0, eff_t = 0, eff_p = 0;  // bounds actually enforced
    bool success = false;
};

// One pipeline iteration: pad, color one shot, check the next invariant on
// the real residual; on violation discard and retry with a fresh seed.
IterationOutcome nibble_iteration(ColoringState& state, const Schedule& schedule, int i,
                                  uint64_t seed, int max_retries, const DeskSlack& slack = {});

struct ColorGraphOptions {
    double xi = 0;        // 0 = default eps/(6 eta)
    double eta = 0;       // 0 = default max(2 ln delta, 2)
    int max_retries = 10;
    DeskSlack slack{3.0};
    int extra_iteration_cap = 4;  // multiple of the schedule length
};

struct ColorGraphResult {
    PartialEdgeColoring coloring;
    Schedule schedule;
    int phase1_colors = 0;  // colors 1..phase1_colors reserved for phase one
    int iterations = 0;
    std::vector<IterationOutcome> outcomes;
    std::vector<int> residual_degrees;  // per iteration, after the round
};

// Full pipeline: iterate one-shot rounds under the schedule until the
// residual degree drops below (eps - xi) * delta / 5, then finish the
// residual greedily with a fresh palette.  Output is proper and total with
// max color <= floor((1 + eps) * delta).
ColorGraphResult color_graph(const Graph& g, double eps, uint64_t seed,
                             const ColorGraphOptions& options = {});

// Sequential greedy: proper, total, at most 2*maxdeg - 1 colors.
PartialEdgeColoring greedy_edge_coloring(const Graph& g);

// Proper edge coloring of a bipartite graph with exactly max-degree colors,
// by alternating-path recoloring.
PartialEdgeColoring konig_edge_coloring(const Graph& g);

struct LinialEdgeColoringResult {
    PartialEdgeColoring coloring;
    int rounds = 0;
    int num_colors = 0;
};

// Iterated color reduction on the line graph; at most
// kLinialBeta * max(2*maxdeg-2, 1)^2 colors in O(log* n) rounds.
LinialEdgeColoringResult linial_edge_coloring(const Graph& g,
                                              const std::vector<long long>& edge_ids = {});

struct ConcentrationStats {
    int delta = 0, n = 0, trials = 0;
    int t = 0, p = 0;
    double d_dia = 0, t_dia = 0, p_dia = 0;  // reference values
    double mean_residual_deg = 0;            // |S_dia(v)|
    double mean_cdeg = 0;                    // |N_c_dia(v)| conditioned nonempty
    double mean_palette = 0;                 // |Psi_dia(e)| conditioned uncolored
    double tail_fraction_deg = 0;            // fraction of v with |S_dia| > 1.2 d_dia
    long long samples_deg = 0, samples_cdeg = 0, samples_palette = 0;
};

// One-shot round statistics on a random regular graph against the
// closed-form expectations.
ConcentrationStats concentration_experiment(int delta, int trials, uint64_t seed, int n = 10000,
                                            double tail_delta = 0.2);

std::string experiment_csv(const ColorGraphResult& r);

}  // namespace localec
