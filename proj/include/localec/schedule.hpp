#pragma once

#include <vector>

namespace localec {

// Parameter schedule of the iterated partial-coloring process.  Row i holds
// the target degree d, color-degree t, and palette size p before iteration i,
// the post-round expectations (d_dia, t_dia, p_dia), and the drift terms.
struct ScheduleRow {
    long double d = 0, t = 0, p = 0;
    long double d_dia = 0, t_dia = 0, p_dia = 0;  // expectations after one round
    long double beta = 0;                          // p/t - 1
    long double delta = 0;                         // beta / eta
};

struct Schedule {
    double delta_max = 0;  // the graph degree parameter
    double eps = 0, xi = 0, eta = 0;
    std::vector<ScheduleRow> rows;    // rows[0] is i = 1
    int terminating_index = 0;        // 1-based; first i with d_i <= (eps-xi)*delta/5
    int beta_horizon = 0;             // largest i with beta_{i-1} <= 1/eta (i* in the analysis)

    const ScheduleRow& row(int i) const { return rows.at(i - 1); }
};

// Evaluates the recurrences
//   d_{i+1} = (1+delta_i) d_i (1 - (1-1/p_i)^{2(t_i-1)})
//   t_{i+1} = (1+delta_i) t_i (1 - (t_i/p_i)(1-1/p_i)^{2 t_i}) (1 - (1-1/p_i)^{2 t_i})
//   p_{i+1} = (1-delta_i) p_i (1 - (t_i/p_i)(1-1/p_i)^{2 t_i})^2
// with d_1 = t_1 = delta, p_1 = delta(1+xi), beta_i = p_i/t_i - 1,
// delta_i = beta_i/eta, until the terminating condition or a non-positive row.
Schedule compute_schedule(double delta, double eps, double xi, double eta, int max_rows = 4096);

// First index meeting d_i <= (eps - xi) * delta / 5.  Throws if the computed
// rows never meet it.
int terminating_index(const Schedule& s);

// Default parameter choices: eta = max(2 ln delta, 2), xi = eps / (6 eta).
double default_eta(double delta);
double default_xi(double eps, double eta);

}  // namespace localec
