#include "localec/linial.hpp"

#include <cmath>
#include <stdexcept>

#include "localec/constants.hpp"
#include "localec/local_runtime.hpp"

namespace localec {

int log_star(double n) {
    int c = 0;
    while (n > 2.0) {
        n = std::log2(n);
        ++c;
    }
    return c;
}

namespace {

int next_prime(int x) {
    auto is_prime = [](int p) {
        if (p < 2) return false;
        for (int q = 2; q * q <= p; ++q)
            if (p % q == 0) return false;
        return true;
    };
    while (!is_prime(x)) ++x;
    return x;
}

// One reduction step: colors in [0,k) -> [0,q^2) where q is the smallest
// prime with q >= D*t+1 and q^(t+1) >= k.  Every color is read as a degree-t
// polynomial over F_q; a vertex picks an evaluation point where it differs
// from all neighbors (at most D*t < q points are blocked).
struct StepParams {
    int t = 1;
    long long q = 2;
};

bool pow_at_least(long long q, int exp, long long k) {
    long long pw = 1;
    for (int i = 0; i < exp; ++i) {
        if (pw >= (k + q - 1) / q) return true;  // pw * q >= k, no overflow
        pw *= q;
    }
    return pw >= k;
}

StepParams choose_step(int max_deg, long long k) {
    int d = std::max(max_deg, 1);
    for (int t = 1;; ++t) {
        long long q = next_prime(d * t + 1);
        if (pow_at_least(q, t + 1, k)) return {t, q};
    }
}

}  // namespace

ColorReductionResult linial_color_reduction(const Graph& g, const std::vector<int>& initial,
                                            long long k0) {
    if (static_cast<int>(initial.size()) != g.n)
        throw std::invalid_argument("linial_color_reduction: initial coloring size mismatch");
    for (int v = 0; v < g.n; ++v) {
        if (initial[v] < 0 || initial[v] >= k0)
            throw std::invalid_argument("linial_color_reduction: color out of range");
        for (auto [u, e] : g.adj[v]) {
            (void)e;
            if (initial[u] == initial[v])
                throw std::invalid_argument(
                    "linial_color_reduction: initial coloring is not proper (ids not unique?)");
        }
    }
    int d = std::max(g.max_degree(), 1);

    ColorReductionResult res;
    res.colors = initial;
    res.num_colors = static_cast<int>(std::min<long long>(k0, 1LL << 30));
    long long k = k0;
    std::vector<long long> state(initial.begin(), initial.end());

    while (true) {
        StepParams sp = choose_step(d, k);
        long long next_k = sp.q * sp.q;
        if (next_k >= k) break;
        // one radius-1 round through the harness
        auto step = [&](const RoundContext& ctx) -> long long {
            long long q = sp.q;
            int t = sp.t;
            auto coeffs = [&](long long color) {
                std::vector<long long> c(t + 1);
                for (int i = 0; i <= t; ++i) {
                    c[i] = color % q;
                    color /= q;
                }
                return c;
            };
            auto eval = [&](const std::vector<long long>& c, long long x) {
                long long acc = 0;
                for (int i = t; i >= 0; --i) acc = (acc * x + c[i]) % q;
                return acc;
            };
            auto mine = coeffs(ctx.state);
            std::vector<std::vector<long long>> nbr;
            for (long long s : *ctx.neighbor_states) nbr.push_back(coeffs(s));
            for (long long x = 0; x < q; ++x) {
                long long my = eval(mine, x);
                bool ok = true;
                for (auto& nc : nbr) {
                    if (eval(nc, x) == my) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return x * q + my;
            }
            throw std::runtime_error("linial step: no free evaluation point");
        };
        RunRecord rec = iterate_local(g, step, 1, 0, state);
        state = rec.outputs;
        k = next_k;
        ++res.rounds;
        if (res.rounds > 128) throw std::runtime_error("linial reduction failed to converge");
    }
    res.num_colors = static_cast<int>(k);
    res.colors.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v) res.colors[v] = static_cast<int>(state[v]);
    if (res.num_colors > kLinialBeta * d * d)
        throw std::runtime_error("linial reduction exceeded the frozen color bound");
    return res;
}

}  // namespace localec
