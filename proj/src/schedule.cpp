#include "localec/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace localec {

double default_eta(double delta) { return std::max(2.0 * std::log(delta), 2.0); }
double default_xi(double eps, double eta) { return eps / (6.0 * eta); }

namespace {

// (1 - 1/p)^x without cancellation for large p
long double pow_one_minus_inv(long double p, long double x) {
    return std::exp(x * std::log1p(-1.0L / p));
}

ScheduleRow advance(const ScheduleRow& r, long double eta) {
    ScheduleRow next;
    long double survive_edge = pow_one_minus_inv(r.p, 2.0L * (r.t - 1.0L));
    long double survive_color = pow_one_minus_inv(r.p, 2.0L * r.t);
    long double keep = 1.0L - (r.t / r.p) * survive_color;
    // expectations after one round
    long double d_dia = r.d * (1.0L - survive_edge);
    long double t_dia = r.t * keep * (1.0L - survive_color);
    long double p_dia = r.p * keep * keep;
    next.d = (1.0L + r.delta) * d_dia;
    next.t = (1.0L + r.delta) * t_dia;
    next.p = (1.0L - r.delta) * p_dia;
    next.beta = next.p / next.t - 1.0L;
    next.delta = next.beta / eta;
    return next;
}

}  // namespace

Schedule compute_schedule(double delta, double eps, double xi, double eta, int max_rows) {
    if (delta < 2) throw std::invalid_argument("compute_schedule: delta must be >= 2");
    if (!(xi > 0 && xi < eps)) throw std::invalid_argument("compute_schedule: need 0 < xi < eps");
    if (eta < 1) throw std::invalid_argument("compute_schedule: eta must be >= 1");
    if (delta * (1 + xi) < 1)
        throw std::invalid_argument("compute_schedule: parameters give p_1 < 1");

    Schedule s;
    s.delta_max = delta;
    s.eps = eps;
    s.xi = xi;
    s.eta = eta;

    ScheduleRow r;
    r.d = delta;
    r.t = delta;
    r.p = (long double)delta * (1.0L + (long double)xi);
    r.beta = r.p / r.t - 1.0L;  // = xi
    r.delta = r.beta / eta;

    long double threshold = (long double)(eps - xi) * delta / 5.0L;
    s.terminating_index = 0;
    for (int i = 1; i <= max_rows; ++i) {
        {
            long double survive_edge = pow_one_minus_inv(r.p, 2.0L * (r.t - 1.0L));
            r.d_dia = r.d * (1.0L - survive_edge);
            long double survive_color = pow_one_minus_inv(r.p, 2.0L * r.t);
            long double keep = 1.0L - (r.t / r.p) * survive_color;
            r.t_dia = r.t * keep * (1.0L - survive_color);
            r.p_dia = r.p * keep * keep;
        }
        s.rows.push_back(r);
        if (s.terminating_index == 0 && r.d <= threshold) {
            s.terminating_index = i;
            break;
        }
        ScheduleRow nxt = advance(r, eta);
        if (!(nxt.d > 0 && nxt.t > 0 && nxt.p > 0) || !std::isfinite((double)nxt.p)) break;
        r = nxt;
    }

    s.beta_horizon = 0;
    for (int i = 2; i <= static_cast<int>(s.rows.size()); ++i)
        if (s.rows[i - 2].beta <= 1.0L / (long double)eta) s.beta_horizon = i;

    return s;
}

int terminating_index(const Schedule& s) {
    long double threshold = (long double)(s.eps - s.xi) * s.delta_max / 5.0L;
    for (int i = 1; i <= static_cast<int>(s.rows.size()); ++i)
        if (s.rows[i - 1].d <= threshold) return i;
    throw std::runtime_error("terminating_index: condition not met within " +
                             std::to_string(s.rows.size()) + " computed rows");
}

}  // namespace localec
