#ifndef SCDT_ESTIMATE_HPP
#define SCDT_ESTIMATE_HPP

#include <Eigen/Dense>
#include <utility>

#include "scdt/grid_search.hpp"
#include "scdt/signal.hpp"
#include "scdt/transform.hpp"
#include "scdt/warp.hpp"

namespace scdt {

struct EstimationResult {
    WarpModel model;
    double residual;   // weighted least-squares objective at the optimum
    double condition;  // sigma_max / sigma_min of the weighted design
    std::pair<double, double> monotone_on;  // interval where recovered g' > 0
};

// Stacked design matrix: rows for the positive map over rows for the
// negative map, trivial parts contributing none. Columns per family:
//   polynomial           1, m, m^2, ..., m^degree
//   affine               m, 1
//   quadratic_dispersion m^2, 1
//   exponential          log m, 1   (DomainError if any m <= 0)
//   logarithmic          exp m, 1
// DegenerateDesignError when the included maps carry fewer distinct values
// than columns.
Eigen::MatrixXd design_matrix(const Scdt& x, WarpFamily family, int degree);

// Weighted least squares min_p || diag(sqrt w) (X p - y) ||^2 solved by SVD
// rather than the normal equations; DegenerateDesignError when
// sigma_min < 1e-10 sigma_max. Optionally reports the condition number.
Eigen::VectorXd solve_stacked_lsq(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& w, double* condition = nullptr);

// Closed-form warp recovery in transform space. For linear-in-parameter
// families fits g(r_hat) ~ s_hat; the exponential and logarithmic families
// fit the inverse composition r_hat ~ (1/a) log(s_hat) - b/a (resp. exp)
// and back-solve (a, b). `degree` is used by the polynomial family only.
EstimationResult estimate_warp(const Signal& r, const Signal& s, const Signal& s0,
                               WarpFamily family, int degree = 1);

// Transform-domain objective over a 2-D parameter window; affine and
// quadratic_dispersion families only.
Surface cost_surface(const Signal& r, const Signal& s, const Signal& s0,
                     WarpFamily family, const GridSearchSpec& window);

}  // namespace scdt

#endif  // SCDT_ESTIMATE_HPP
