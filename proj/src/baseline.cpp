#include "scdt/baseline.hpp"

#include <cmath>
#include <limits>

#include "scdt/errors.hpp"

namespace scdt {

double l2_delay_estimate(const Signal& r, const Signal& s, const GridSearchSpec& spec) {
    if (spec.axes.size() != 1)
        throw ConfigError("l2_delay_estimate needs a single-parameter search grid");
    const AxisSpec& axis = spec.axes[0];
    double dt = r.dt();
    double best_tau = axis.min;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int i = 0; i < axis.steps; ++i) {
        double tau = axis.value(i);
        double cost = 0.0;
        for (int k = 0; k < r.grid.n; ++k) {
            double d = s.sample(r.grid.point(k) - tau) - r.values[k];
            cost += d * d;
        }
        cost *= dt;
        if (cost < best_cost) {
            best_cost = cost;
            best_tau = tau;
        }
    }
    return best_tau;
}

double wbaf_value(const Signal& r, const Signal& s, double omega, double tau) {
    if (!(omega > 0.0))
        throw DomainError("WBAF requires omega > 0");
    double dt = r.dt();
    double acc = 0.0;
    for (int k = 0; k < r.grid.n; ++k) {
        double v = r.values[k] * s.sample(omega * r.grid.point(k) + tau);
        bool edge = (k == 0 || k == r.grid.n - 1);
        acc += edge ? 0.5 * v : v;  // trapezoid
    }
    return std::sqrt(omega) * acc * dt;
}

Surface wbaf_surface(const Signal& r, const Signal& s, const GridSearchSpec& spec) {
    if (spec.axes.size() != 2)
        throw ConfigError("wbaf_surface needs a 2-D (omega, tau) grid");
    if (!(spec.axes[0].min > 0.0))
        throw DomainError("WBAF requires omega > 0 over the whole window");
    Surface surf(spec.axes[0], spec.axes[1]);
    for (int i = 0; i < surf.ax1.steps; ++i) {
        double omega = surf.ax1.value(i);
        for (int j = 0; j < surf.ax2.steps; ++j)
            surf.at(i, j) = wbaf_value(r, s, omega, surf.ax2.value(j));
    }
    return surf;
}

std::pair<double, double> wbaf_estimate(const Signal& r, const Signal& s,
                                        const GridSearchSpec& spec) {
    Surface surf = wbaf_surface(r, s, spec);
    auto [i, j] = surf.argmax_cell();
    return {surf.ax1.value(i), surf.ax2.value(j)};
}

}  // namespace scdt
