#ifndef SCDT_TRANSFORM_HPP
#define SCDT_TRANSFORM_HPP

#include <functional>
#include <string>
#include <vector>

#include "scdt/signal.hpp"
#include "scdt/warp.hpp"

namespace scdt {

// Running integral F[k] = (sum_{j<=k} v_j) * dt. A discrete CDF when the
// source is a density.
struct Cumulation {
    Grid grid;
    std::vector<double> values;
};

Cumulation cumulate(const Signal& s);

// Generalized inverse F^+(y) = inf{x : F(x) > y} for non-decreasing F:
// scan for the first strict exceedance, then refine by linear interpolation
// on the rising segment. Returns t_max when no sample exceeds y, t_min when
// the first sample already does.
double generalized_inverse(const Cumulation& F, double y);

// The four-component signed transform. Maps are sampled on the reference
// grid; a trivial part (zero mass) carries an all-zero map.
struct Scdt {
    Grid reference;
    std::vector<double> pos_map;
    double pos_mass;
    std::vector<double> neg_map;
    double neg_mass;
};

// C(s) = F_s^+ ∘ F_s0 for unit-mass densities s, s0 (checked to 1e-9;
// NotADensityError otherwise). Output has s0's length and is non-decreasing.
std::vector<double> cdt(const Signal& s, const Signal& s0);

// Transform of a signed signal with respect to the density s0. Only a
// malformed s0 raises NotADensityError; the parts of s are normalized
// internally and a part with relative mass below 1e-12 is treated as
// trivial.
Scdt scdt(const Signal& s, const Signal& s0);

// Numerical inverse used for round-trip verification: each part's map is
// inverted back into a cumulation on s0's grid and differentiated; returns
// pos_mass * pos - neg_mass * neg on s0's grid. Throws DegenerateMapError
// if a nontrivial part's map is constant over the whole domain.
Signal inverse_scdt(const Scdt& x, const Signal& s0);

// Applies a scalar function pointwise to both maps (masses unchanged).
// Trivial parts keep their zero map. DomainError if h produces a non-finite
// value at any map sample.
Scdt compose_scdt(const std::function<double(double)>& h, const Scdt& x);
Scdt compose_scdt(const WarpModel& g, const Scdt& x);

// JSON round trip, schema:
// {reference:{t_min,t_max,n}, pos_mass, neg_mass, pos_map:[...], neg_map:[...]}
std::string scdt_to_json(const Scdt& x);
Scdt scdt_from_json(const std::string& text);

}  // namespace scdt

#endif  // SCDT_TRANSFORM_HPP
