#ifndef SCDT_GRID_SEARCH_HPP
#define SCDT_GRID_SEARCH_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace scdt {

// One search axis: `steps` equally spaced values from min to max inclusive.
struct AxisSpec {
    double min;
    double max;
    int steps;

    AxisSpec(double min_, double max_, int steps_);

    double step() const { return (max - min) / (steps - 1); }
    double value(int i) const { return min + i * step(); }
    std::vector<double> values() const;
};

struct GridSearchSpec {
    std::vector<AxisSpec> axes;
};

// Dense 2-D surface over (ax1, ax2); values stored row-major, ax1 outer.
struct Surface {
    AxisSpec ax1;
    AxisSpec ax2;
    std::vector<double> values;

    Surface(AxisSpec a1, AxisSpec a2);

    double& at(int i, int j) { return values[static_cast<size_t>(i) * ax2.steps + j]; }
    double at(int i, int j) const { return values[static_cast<size_t>(i) * ax2.steps + j]; }

    std::pair<int, int> argmin_cell() const;
    std::pair<int, int> argmax_cell() const;
};

// CSV emission, header "param1,param2,cost", full double precision.
void write_surface_csv(const Surface& s, const std::string& path);

// Discrete convexity audit: every 1-D restriction along rows and columns
// must have second differences >= -tol * max|values|.
bool convexity_audit(const Surface& s, double tol = 1e-9);

// Count of interior cells strictly greater than all 8 neighbours.
int count_strict_interior_maxima(const Surface& s);

}  // namespace scdt

#endif  // SCDT_GRID_SEARCH_HPP
