#ifndef SCDT_SIGNAL_HPP
#define SCDT_SIGNAL_HPP

#include <string>
#include <vector>

#include "scdt/errors.hpp"
#include "scdt/warp.hpp"

namespace scdt {

// Uniform sampling lattice t_k = t_min + k * dt, k = 0..n-1.
struct Grid {
    double t_min;
    double t_max;
    int n;

    Grid(double t_min_, double t_max_, int n_);

    double dt() const { return (t_max - t_min) / (n - 1); }
    double point(int k) const { return t_min + k * dt(); }
    std::vector<double> points() const;

    bool operator==(const Grid& o) const {
        return t_min == o.t_min && t_max == o.t_max && n == o.n;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

// Sampled real-valued signal on a Grid. Immutable after construction.
struct Signal {
    Grid grid;
    std::vector<double> values;

    Signal(Grid g, std::vector<double> v);

    double dt() const { return grid.dt(); }
    int size() const { return grid.n; }

    // Linear interpolation; signals are compactly supported on their grid,
    // so points outside [t_min, t_max] evaluate to 0.
    double sample(double t) const;
};

struct JordanPair {
    Signal pos;       // max(0, s)
    Signal neg;       // max(0, -s)
    double pos_mass;  // Riemann L1 mass of pos
    double neg_mass;  // Riemann L1 mass of neg
};

// Riemann L1 norm: sum |v_k| * dt.
double l1_mass(const Signal& s);

JordanPair jordan_decompose(const Signal& s);

// Scales s to unit Riemann L1 norm. Throws ZeroMassError when the mass is 0.
Signal normalize_l1(const Signal& s);

// cos(freq (t - center)) * exp(-width (t - center)^2). The parameter set
// (0.5, 40*pi, 120) gives the Gabor pulse used throughout the experiments.
Signal gabor(const Grid& g, double center, double freq, double width);

// Constant density with unit Riemann mass on g.
Signal uniform_density(const Grid& g);

// The generative model: out[k] = g'(t_k) * s(g(t_k)) on out_grid. Throws
// NonMonotoneWarpError if g' <= 0 at any output sample.
Signal apply_warp(const Signal& s, const WarpModel& g, const Grid& out_grid);

// CSV I/O, header "t,value". The reader requires strictly increasing,
// uniform t (validated to 1e-9 relative tolerance).
Signal read_signal_csv(const std::string& path);
void write_signal_csv(const Signal& s, const std::string& path);

}  // namespace scdt

#endif  // SCDT_SIGNAL_HPP
