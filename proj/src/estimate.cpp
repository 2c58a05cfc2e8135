#include "scdt/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace scdt {

namespace {

constexpr double kTrivialRel = 1e-12;
constexpr double kRankTol = 1e-10;  // sigma_min / sigma_max degeneracy threshold

bool part_trivial(double mass, double total) {
    return total <= 0.0 || mass <= kTrivialRel * total;
}

std::vector<const std::vector<double>*> nontrivial_maps(const Scdt& x) {
    double total = x.pos_mass + x.neg_mass;
    std::vector<const std::vector<double>*> maps;
    if (!part_trivial(x.pos_mass, total)) maps.push_back(&x.pos_map);
    if (!part_trivial(x.neg_mass, total)) maps.push_back(&x.neg_map);
    return maps;
}

int family_columns(WarpFamily family, int degree) {
    if (family == WarpFamily::polynomial) {
        if (degree < 0) throw DomainError("polynomial degree must be >= 0");
        return degree + 1;
    }
    return 2;
}

void fill_basis_row(WarpFamily family, int degree, double m, double* row) {
    switch (family) {
        case WarpFamily::polynomial: {
            double p = 1.0;
            for (int c = 0; c <= degree; ++c) {
                row[c] = p;
                p *= m;
            }
            break;
        }
        case WarpFamily::affine:
            row[0] = m;
            row[1] = 1.0;
            break;
        case WarpFamily::quadratic_dispersion:
            row[0] = m * m;
            row[1] = 1.0;
            break;
        case WarpFamily::exponential:
            if (!(m > 0.0))
                throw DomainError("exponential design needs positive map values for log");
            row[0] = std::log(m);
            row[1] = 1.0;
            break;
        case WarpFamily::logarithmic:
            row[0] = std::exp(m);
            row[1] = 1.0;
            break;
    }
}

}  // namespace

Eigen::MatrixXd design_matrix(const Scdt& x, WarpFamily family, int degree) {
    auto maps = nontrivial_maps(x);
    int cols = family_columns(family, degree);
    size_t rows = 0;
    std::set<double> distinct;
    for (const auto* m : maps) {
        rows += m->size();
        distinct.insert(m->begin(), m->end());
    }
    if (static_cast<int>(distinct.size()) < cols)
        throw DegenerateDesignError("fewer distinct map values than design columns");

    Eigen::MatrixXd X(rows, cols);
    size_t r = 0;
    std::vector<double> row(cols);
    for (const auto* m : maps)
        for (double v : *m) {
            fill_basis_row(family, degree, v, row.data());
            for (int c = 0; c < cols; ++c) X(r, c) = row[c];
            ++r;
        }
    return X;
}

Eigen::VectorXd solve_stacked_lsq(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& w, double* condition) {
    if (X.rows() != y.size() || X.rows() != w.size())
        throw DomainError("solve_stacked_lsq: inconsistent dimensions");
    Eigen::VectorXd sw = w.array().max(0.0).sqrt();
    Eigen::MatrixXd Xw = sw.asDiagonal() * X;
    Eigen::VectorXd yw = sw.asDiagonal() * y;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Xw, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    double smax = sigma(0), smin = sigma(sigma.size() - 1);
    if (!(smax > 0.0) || smin < kRankTol * smax)
        throw DegenerateDesignError("design matrix is numerically rank-deficient");
    if (condition) *condition = smax / smin;
    return svd.solve(yw);
}

namespace {

struct StackedSystem {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    Eigen::VectorXd w;
    double map_lo;
    double map_hi;
};

// Rows: the design built from `basis`'s maps, targets from `target`'s maps,
// weighted by the reference density. Both transforms share the reference
// grid and the parts of a pair align by the matching-triviality contract.
StackedSystem stack_system(const Scdt& basis, const Scdt& target, const Signal& s0,
                           WarpFamily family, int degree) {
    double bt = basis.pos_mass + basis.neg_mass;
    double tt = target.pos_mass + target.neg_mass;
    bool bpos = !part_trivial(basis.pos_mass, bt), bneg = !part_trivial(basis.neg_mass, bt);
    bool tpos = !part_trivial(target.pos_mass, tt), tneg = !part_trivial(target.neg_mass, tt);
    if (bpos != tpos || bneg != tneg)
        throw PartMismatchError("signals have different trivial-part patterns");

    StackedSystem sys;
    sys.X = design_matrix(basis, family, degree);
    size_t rows = sys.X.rows();
    sys.y.resize(rows);
    sys.w.resize(rows);
    double dt0 = s0.dt();
    size_t r = 0;
    sys.map_lo = std::numeric_limits<double>::infinity();
    sys.map_hi = -std::numeric_limits<double>::infinity();
    auto add_part = [&](const std::vector<double>& tmap, const std::vector<double>& bmap) {
        for (size_t k = 0; k < tmap.size(); ++k, ++r) {
            sys.y(r) = tmap[k];
            sys.w(r) = s0.values[k] * dt0;
        }
        sys.map_lo = std::min(sys.map_lo, *std::min_element(bmap.begin(), bmap.end()));
        sys.map_hi = std::max(sys.map_hi, *std::max_element(bmap.begin(), bmap.end()));
    };
    if (bpos) add_part(target.pos_map, basis.pos_map);
    if (bneg) add_part(target.neg_map, basis.neg_map);
    if (r == 0) throw DegenerateDesignError("both parts are trivial");
    return sys;
}

// Interval within [lo, hi] around its midpoint on which g' > 0.
std::pair<double, double> monotone_interval(const WarpModel& g, double lo, double hi) {
    if (!(hi > lo)) return {lo, hi};
    const int n = 512;
    double step = (hi - lo) / n;
    auto ok = [&](double t) {
        try {
            return g.derivative(t) > 0.0;
        } catch (const DomainError&) {
            return false;
        }
    };
    int mid = n / 2;
    if (!ok(lo + mid * step)) return {lo + mid * step, lo + mid * step};
    int i = mid;
    while (i > 0 && ok(lo + (i - 1) * step)) --i;
    int j = mid;
    while (j < n && ok(lo + (j + 1) * step)) ++j;
    return {lo + i * step, lo + j * step};
}

}  // namespace

EstimationResult estimate_warp(const Signal& r, const Signal& s, const Signal& s0,
                               WarpFamily family, int degree) {
    Scdt r_hat = scdt(r, s0);
    Scdt s_hat = scdt(s, s0);

    bool inverse_form =
        family == WarpFamily::exponential || family == WarpFamily::logarithmic;
    // Linear families fit g(r_hat) ~ s_hat. The transcendental pair has no
    // linear forward form; fit r_hat ~ g^{-1}(s_hat), linear in (1/a, -b/a).
    StackedSystem sys = inverse_form ? stack_system(s_hat, r_hat, s0, family, degree)
                                     : stack_system(r_hat, s_hat, s0, family, degree);

    double condition = 0.0;
    Eigen::VectorXd q = solve_stacked_lsq(sys.X, sys.y, sys.w, &condition);
    double residual = (sys.w.array().sqrt() * (sys.X * q - sys.y).array()).matrix().squaredNorm();

    WarpModel model = WarpModel::identity();
    switch (family) {
        case WarpFamily::polynomial:
            model = WarpModel::polynomial(std::vector<double>(q.data(), q.data() + q.size()));
            break;
        case WarpFamily::affine:
            model = WarpModel::affine(q(0), q(1));
            break;
        case WarpFamily::quadratic_dispersion:
            model = WarpModel::quadratic_dispersion(q(0), q(1));
            break;
        case WarpFamily::exponential:
        case WarpFamily::logarithmic: {
            double alpha = q(0), beta = q(1);
            double a = 1.0 / alpha;
            double b = -beta * a;
            if (!std::isfinite(a) || !std::isfinite(b))
                throw DegenerateDesignError("linearized solution has a = 0");
            model = family == WarpFamily::exponential ? WarpModel::exponential(a, b)
                                                      : WarpModel::logarithmic(a, b);
            break;
        }
    }

    // Monotone span is reported over the received map's range: that is where
    // the recovered g is actually applied.
    std::pair<double, double> span = inverse_form
        ? monotone_interval(model, r.grid.t_min, r.grid.t_max)
        : monotone_interval(model, sys.map_lo, sys.map_hi);
    return EstimationResult{model, residual, condition, span};
}

Surface cost_surface(const Signal& r, const Signal& s, const Signal& s0,
                     WarpFamily family, const GridSearchSpec& window) {
    if (family != WarpFamily::affine && family != WarpFamily::quadratic_dispersion)
        throw DomainError("cost_surface requires a 2-parameter linear family");
    if (window.axes.size() != 2)
        throw ConfigError("cost_surface needs a 2-D window");

    Scdt r_hat = scdt(r, s0);
    Scdt s_hat = scdt(s, s0);
    StackedSystem sys = stack_system(r_hat, s_hat, s0, family, 0);

    // J(a,b) = || sqrt(w) (a c0 + b c1 - y) ||^2 expands into six scalars.
    Eigen::ArrayXd w = sys.w.array();
    Eigen::ArrayXd c0 = sys.X.col(0).array(), c1 = sys.X.col(1).array(),
                   y = sys.y.array();
    double c00 = (w * c0 * c0).sum(), c11 = (w * c1 * c1).sum(), c01 = (w * c0 * c1).sum();
    double c0y = (w * c0 * y).sum(), c1y = (w * c1 * y).sum(), yy = (w * y * y).sum();

    Surface surf(window.axes[0], window.axes[1]);
    for (int i = 0; i < surf.ax1.steps; ++i) {
        double a = surf.ax1.value(i);
        for (int j = 0; j < surf.ax2.steps; ++j) {
            double b = surf.ax2.value(j);
            surf.at(i, j) =
                a * a * c00 + b * b * c11 + yy + 2.0 * (a * b * c01 - a * c0y - b * c1y);
        }
    }
    return surf;
}

}  // namespace scdt
