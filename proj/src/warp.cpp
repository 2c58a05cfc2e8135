#include "scdt/warp.hpp"

#include <cmath>
#include <sstream>

#include "scdt/errors.hpp"

namespace scdt {

std::string family_name(WarpFamily f) {
    switch (f) {
        case WarpFamily::polynomial: return "polynomial";
        case WarpFamily::affine: return "affine";
        case WarpFamily::quadratic_dispersion: return "quadratic_dispersion";
        case WarpFamily::exponential: return "exponential";
        case WarpFamily::logarithmic: return "logarithmic";
    }
    return "unknown";
}

WarpFamily family_from_name(const std::string& name) {
    if (name == "polynomial") return WarpFamily::polynomial;
    if (name == "affine") return WarpFamily::affine;
    if (name == "quadratic_dispersion") return WarpFamily::quadratic_dispersion;
    if (name == "exponential") return WarpFamily::exponential;
    if (name == "logarithmic") return WarpFamily::logarithmic;
    throw ConfigError("unknown warp family '" + name + "'");
}

WarpModel WarpModel::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty())
        throw DomainError("polynomial warp needs at least one coefficient");
    for (double c : coeffs)
        if (!std::isfinite(c))
            throw DomainError("polynomial coefficients must be finite");
    return WarpModel(WarpFamily::polynomial, std::move(coeffs));
}

WarpModel WarpModel::affine(double omega, double tau) {
    if (!(omega > 0.0))
        throw DomainError("affine warp requires omega > 0");
    return WarpModel(WarpFamily::affine, {omega, tau});
}

WarpModel WarpModel::quadratic_dispersion(double kappa, double tau) {
    if (!(kappa > 0.0))
        throw DomainError("quadratic dispersion requires kappa > 0");
    return WarpModel(WarpFamily::quadratic_dispersion, {kappa, tau});
}

WarpModel WarpModel::exponential(double a, double b) {
    if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("exponential warp requires finite a != 0");
    return WarpModel(WarpFamily::exponential, {a, b});
}

WarpModel WarpModel::logarithmic(double a, double b) {
    if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("logarithmic warp requires finite a != 0");
    return WarpModel(WarpFamily::logarithmic, {a, b});
}

WarpModel WarpModel::make(WarpFamily family, std::vector<double> coeffs) {
    switch (family) {
        case WarpFamily::polynomial:
            return polynomial(std::move(coeffs));
        case WarpFamily::affine:
            if (coeffs.size() != 2) throw DomainError("affine warp takes (omega, tau)");
            return affine(coeffs[0], coeffs[1]);
        case WarpFamily::quadratic_dispersion:
            if (coeffs.size() != 2) throw DomainError("quadratic dispersion takes (kappa, tau)");
            return quadratic_dispersion(coeffs[0], coeffs[1]);
        case WarpFamily::exponential:
            if (coeffs.size() != 2) throw DomainError("exponential warp takes (a, b)");
            return exponential(coeffs[0], coeffs[1]);
        case WarpFamily::logarithmic:
            if (coeffs.size() != 2) throw DomainError("logarithmic warp takes (a, b)");
            return logarithmic(coeffs[0], coeffs[1]);
    }
    throw DomainError("unknown warp family");
}

double WarpModel::operator()(double t) const {
    switch (family_) {
        case WarpFamily::polynomial: {
            double acc = 0.0;  // Horner
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
            return acc;
        }
        case WarpFamily::affine:
            return coeffs_[0] * t + coeffs_[1];
        case WarpFamily::quadratic_dispersion:
            return coeffs_[0] * t * t + coeffs_[1];
        case WarpFamily::exponential:
            return std::exp(coeffs_[0] * t + coeffs_[1]);
        case WarpFamily::logarithmic: {
            double u = coeffs_[0] * t + coeffs_[1];
            if (!(u > 0.0)) throw DomainError("logarithmic warp undefined: a t + b <= 0");
            return std::log(u);
        }
    }
    return 0.0;
}

double WarpModel::derivative(double t) const {
    switch (family_) {
        case WarpFamily::polynomial: {
            double acc = 0.0;
            for (size_t k = coeffs_.size(); k-- > 1;) acc = acc * t + k * coeffs_[k];
            return acc;
        }
        case WarpFamily::affine:
            return coeffs_[0];
        case WarpFamily::quadratic_dispersion:
            return 2.0 * coeffs_[0] * t;
        case WarpFamily::exponential:
            return coeffs_[0] * std::exp(coeffs_[0] * t + coeffs_[1]);
        case WarpFamily::logarithmic: {
            double u = coeffs_[0] * t + coeffs_[1];
            if (!(u > 0.0)) throw DomainError("logarithmic warp undefined: a t + b <= 0");
            return coeffs_[0] / u;
        }
    }
    return 0.0;
}

double WarpModel::inverse(double y, double lo, double hi) const {
    switch (family_) {
        case WarpFamily::affine:
            return (y - coeffs_[1]) / coeffs_[0];
        case WarpFamily::quadratic_dispersion: {
            double u = (y - coeffs_[1]) / coeffs_[0];
            if (u < 0.0) throw DomainError("quadratic dispersion inverse: y below tau");
            return std::sqrt(u);  // increasing branch t > 0
        }
        case WarpFamily::exponential:
            if (!(y > 0.0)) throw DomainError("exponential inverse needs y > 0");
            return (std::log(y) - coeffs_[1]) / coeffs_[0];
        case WarpFamily::logarithmic:
            return (std::exp(y) - coeffs_[1]) / coeffs_[0];
        case WarpFamily::polynomial: {
            // monotone bisection; assumes g increasing on [lo, hi]
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                if ((*this)(mid) < y)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
    }
    return y;
}

std::pair<double, double> WarpModel::increasing_interval(double center, double span) const {
    const int n = 8192;
    double lo = center - span, hi = center + span;
    double step = (hi - lo) / n;
    auto deriv_ok = [&](double t) {
        switch (family_) {
            case WarpFamily::logarithmic:
                return coeffs_[0] * t + coeffs_[1] > 0.0 && derivative(t) > 0.0;
            default:
                return derivative(t) > 0.0;
        }
    };
    if (!deriv_ok(center))
        throw NonMonotoneWarpError("warp is not increasing at the domain center");
    int mid = n / 2;
    int i = mid;
    while (i > 0 && deriv_ok(lo + (i - 1) * step)) --i;
    int j = mid;
    while (j < n && deriv_ok(lo + (j + 1) * step)) ++j;
    return {lo + i * step, lo + j * step};
}

std::string WarpModel::describe() const {
    std::ostringstream os;
    os << family_name(family_) << '(';
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        if (k) os << ", ";
        os << coeffs_[k];
    }
    os << ')';
    return os.str();
}

}  // namespace scdt
