#include "scdt/grid_search.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "scdt/errors.hpp"

namespace scdt {

AxisSpec::AxisSpec(double min_, double max_, int steps_)
    : min(min_), max(max_), steps(steps_) {
    if (!(min < max))
        throw ConfigError("axis requires min < max");
    if (steps < 2)
        throw ConfigError("axis requires steps >= 2");
}

std::vector<double> AxisSpec::values() const {
    std::vector<double> v(steps);
    for (int i = 0; i < steps; ++i) v[i] = value(i);
    return v;
}

Surface::Surface(AxisSpec a1, AxisSpec a2)
    : ax1(a1), ax2(a2), values(static_cast<size_t>(a1.steps) * a2.steps, 0.0) {}

std::pair<int, int> Surface::argmin_cell() const {
    size_t best = 0;
    for (size_t k = 1; k < values.size(); ++k)
        if (values[k] < values[best]) best = k;
    return {static_cast<int>(best) / ax2.steps, static_cast<int>(best) % ax2.steps};
}

std::pair<int, int> Surface::argmax_cell() const {
    size_t best = 0;
    for (size_t k = 1; k < values.size(); ++k)
        if (values[k] > values[best]) best = k;
    return {static_cast<int>(best) / ax2.steps, static_cast<int>(best) % ax2.steps};
}

void write_surface_csv(const Surface& s, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("io_error", "cannot write " + path);
    out << "param1,param2,cost\n";
    char buf[128];
    for (int i = 0; i < s.ax1.steps; ++i)
        for (int j = 0; j < s.ax2.steps; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", s.ax1.value(i),
                          s.ax2.value(j), s.at(i, j));
            out << buf;
        }
}

bool convexity_audit(const Surface& s, double tol) {
    double scale = 0.0;
    for (double v : s.values) scale = std::max(scale, std::abs(v));
    double floor = -tol * std::max(scale, 1.0);
    for (int i = 0; i < s.ax1.steps; ++i)
        for (int j = 1; j + 1 < s.ax2.steps; ++j)
            if (s.at(i, j + 1) - 2.0 * s.at(i, j) + s.at(i, j - 1) < floor) return false;
    for (int j = 0; j < s.ax2.steps; ++j)
        for (int i = 1; i + 1 < s.ax1.steps; ++i)
            if (s.at(i + 1, j) - 2.0 * s.at(i, j) + s.at(i - 1, j) < floor) return false;
    return true;
}

int count_strict_interior_maxima(const Surface& s) {
    int count = 0;
    for (int i = 1; i + 1 < s.ax1.steps; ++i)
        for (int j = 1; j + 1 < s.ax2.steps; ++j) {
            double c = s.at(i, j);
            bool strict = true;
            for (int di = -1; di <= 1 && strict; ++di)
                for (int dj = -1; dj <= 1 && strict; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    if (!(c > s.at(i + di, j + dj))) strict = false;
                }
            if (strict) ++count;
        }
    return count;
}

}  // namespace scdt
