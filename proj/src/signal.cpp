#include "scdt/signal.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace scdt {

Grid::Grid(double t_min_, double t_max_, int n_) : t_min(t_min_), t_max(t_max_), n(n_) {
    if (!(t_min < t_max))
        throw Error("invalid_grid", "grid requires t_min < t_max");
    if (n < 2)
        throw Error("invalid_grid", "grid requires n >= 2");
    if (!std::isfinite(t_min) || !std::isfinite(t_max))
        throw Error("invalid_grid", "grid bounds must be finite");
}

std::vector<double> Grid::points() const {
    std::vector<double> t(n);
    for (int k = 0; k < n; ++k) t[k] = point(k);
    return t;
}

Signal::Signal(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n)
        throw Error("invalid_signal", "value count does not match grid");
    for (double x : values)
        if (!std::isfinite(x))
            throw Error("invalid_signal", "signal values must be finite");
}

double Signal::sample(double t) const {
    if (t < grid.t_min || t > grid.t_max) return 0.0;
    double u = (t - grid.t_min) / dt();
    int i = static_cast<int>(std::floor(u));
    if (i >= grid.n - 1) return values.back();
    if (i < 0) return values.front();
    double w = u - i;
    return values[i] + w * (values[i + 1] - values[i]);
}

double l1_mass(const Signal& s) {
    double acc = 0.0;
    for (double v : s.values) acc += std::abs(v);
    return acc * s.dt();
}

JordanPair jordan_decompose(const Signal& s) {
    std::vector<double> pos(s.values.size()), neg(s.values.size());
    for (size_t k = 0; k < s.values.size(); ++k) {
        pos[k] = s.values[k] > 0.0 ? s.values[k] : 0.0;
        neg[k] = s.values[k] < 0.0 ? -s.values[k] : 0.0;
    }
    Signal sp(s.grid, std::move(pos));
    Signal sn(s.grid, std::move(neg));
    double mp = l1_mass(sp);
    double mn = l1_mass(sn);
    return JordanPair{std::move(sp), std::move(sn), mp, mn};
}

Signal normalize_l1(const Signal& s) {
    double m = l1_mass(s);
    if (m <= 0.0)
        throw ZeroMassError("cannot normalize a signal with zero L1 mass");
    std::vector<double> v(s.values.size());
    for (size_t k = 0; k < v.size(); ++k) v[k] = s.values[k] / m;
    return Signal(s.grid, std::move(v));
}

Signal gabor(const Grid& g, double center, double freq, double width) {
    if (!(width > 0.0))
        throw Error("invalid_argument", "gabor requires width > 0");
    std::vector<double> v(g.n);
    for (int k = 0; k < g.n; ++k) {
        double d = g.point(k) - center;
        v[k] = std::cos(freq * d) * std::exp(-width * d * d);
    }
    return Signal(g, std::move(v));
}

Signal uniform_density(const Grid& g) {
    double c = 1.0 / (g.n * g.dt());
    return Signal(g, std::vector<double>(g.n, c));
}

Signal apply_warp(const Signal& s, const WarpModel& g, const Grid& out_grid) {
    std::vector<double> v(out_grid.n);
    for (int k = 0; k < out_grid.n; ++k) {
        double t = out_grid.point(k);
        double gp = g.derivative(t);
        if (!(gp > 0.0))
            throw NonMonotoneWarpError("g' <= 0 at t = " + std::to_string(t));
        v[k] = gp * s.sample(g(t));
    }
    return Signal(out_grid, std::move(v));
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Signal read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("io_error", "cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,value", 0) != 0)
        throw Error("csv_format", path + ": expected header 't,value'");
    std::vector<double> ts, vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            throw Error("csv_format", path + ": malformed row '" + line + "'");
        ts.push_back(std::stod(a));
        vs.push_back(std::stod(b));
    }
    if (ts.size() < 2)
        throw Error("csv_format", path + ": need at least two samples");
    int n = static_cast<int>(ts.size());
    double span = ts.back() - ts.front();
    if (!(span > 0.0))
        throw Error("csv_format", path + ": t must be strictly increasing");
    double step = span / (n - 1);
    double tol = 1e-9 * std::max({std::abs(ts.front()), std::abs(ts.back()), span});
    for (int k = 0; k < n; ++k) {
        if (std::abs(ts[k] - (ts.front() + k * step)) > tol)
            throw Error("csv_format", path + ": t is not uniform at row " + std::to_string(k));
    }
    return Signal(Grid(ts.front(), ts.back(), n), std::move(vs));
}

void write_signal_csv(const Signal& s, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("io_error", "cannot write " + path);
    out << "t,value\n";
    for (int k = 0; k < s.grid.n; ++k)
        out << fmt_double(s.grid.point(k)) << ',' << fmt_double(s.values[k]) << '\n';
}

}  // namespace scdt
