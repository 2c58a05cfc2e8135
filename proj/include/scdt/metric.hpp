#ifndef SCDT_METRIC_HPP
#define SCDT_METRIC_HPP

#include "scdt/signal.hpp"
#include "scdt/transform.hpp"

namespace scdt {

// 1-D Wasserstein-2 distance between unit-mass densities p and q, computed
// through quantile maps: ( sum_k (C(p)_k - C(q)_k)^2 s0_k dt0 )^{1/2}.
double wasserstein2(const Signal& p, const Signal& q, const Signal& s0);

// Signed distance D_S: part-wise Wasserstein distances of the normalized
// Jordan parts plus the squared part-mass gaps, square-rooted. A part that
// is trivial in one signal must be trivial in the other (PartMismatchError
// otherwise: the normalization is undefined there).
double signed_distance(const Signal& r, const Signal& s, const Signal& s0);

// L2(s0 dx)-norm distance between two transforms sharing a reference.
// With include_masses the two mass-gap terms are added, making this equal
// to signed_distance by the isometry; without, the mass coordinates are
// ignored as in the estimation objective.
double transform_distance(const Scdt& x, const Scdt& y, const Signal& s0,
                          bool include_masses);

}  // namespace scdt

#endif  // SCDT_METRIC_HPP
