#ifndef SCDT_BASELINE_HPP
#define SCDT_BASELINE_HPP

#include <utility>

#include "scdt/grid_search.hpp"
#include "scdt/signal.hpp"

namespace scdt {

// Classical delay match: tau minimizing || s(. - tau) - r ||_2^2 over the
// single-axis search grid, with interpolation for off-sample shifts.
double l2_delay_estimate(const Signal& r, const Signal& s, const GridSearchSpec& spec);

// Wide-band ambiguity value A(omega, tau) = sqrt(omega) * int r(t) s(omega t + tau) dt
// by trapezoid quadrature on r's grid (out-of-range reads of s are 0).
double wbaf_value(const Signal& r, const Signal& s, double omega, double tau);

// A over a 2-D (omega, tau) window, omega > 0 throughout.
Surface wbaf_surface(const Signal& r, const Signal& s, const GridSearchSpec& spec);

// Companion estimator: (omega, tau) of the argmax cell.
std::pair<double, double> wbaf_estimate(const Signal& r, const Signal& s,
                                        const GridSearchSpec& spec);

}  // namespace scdt

#endif  // SCDT_BASELINE_HPP
