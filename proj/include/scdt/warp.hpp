#ifndef SCDT_WARP_HPP
#define SCDT_WARP_HPP

#include <string>
#include <utility>
#include <vector>

namespace scdt {

enum class WarpFamily {
    polynomial,            // g(t) = p0 + p1 t + ... + pk t^k
    affine,                // g(t) = omega t + tau, omega > 0
    quadratic_dispersion,  // g(t) = kappa t^2 + tau, kappa > 0
    exponential,           // g(t) = exp(a t + b), a != 0
    logarithmic            // g(t) = log(a t + b), a != 0
};

std::string family_name(WarpFamily f);
WarpFamily family_from_name(const std::string& name);

// A parametric time warp g. Strict monotonicity is a property of where the
// warp is applied, not of the object; apply sites check g' > 0 themselves.
class WarpModel {
public:
    static WarpModel polynomial(std::vector<double> coeffs);
    static WarpModel affine(double omega, double tau);
    static WarpModel quadratic_dispersion(double kappa, double tau);
    static WarpModel exponential(double a, double b);
    static WarpModel logarithmic(double a, double b);
    static WarpModel make(WarpFamily family, std::vector<double> coeffs);
    static WarpModel identity() { return affine(1.0, 0.0); }

    WarpFamily family() const { return family_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    double operator()(double t) const;
    double derivative(double t) const;

    // Inverse of g at y, restricted to the increasing branch. Closed form
    // where one exists; monotone bisection on [lo, hi] for polynomials.
    double inverse(double y, double lo, double hi) const;

    // Maximal interval around `center` on which g' > 0, found by scanning a
    // lattice over [center - span, center + span]. Used to place receive
    // grids for warps that are only locally increasing.
    std::pair<double, double> increasing_interval(double center, double span) const;

    std::string describe() const;

private:
    WarpModel(WarpFamily f, std::vector<double> c) : family_(f), coeffs_(std::move(c)) {}

    WarpFamily family_;
    std::vector<double> coeffs_;
};

}  // namespace scdt

#endif  // SCDT_WARP_HPP
