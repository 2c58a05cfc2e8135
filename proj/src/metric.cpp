#include "scdt/metric.hpp"

#include <cmath>

namespace scdt {

namespace {

constexpr double kTrivialRel = 1e-12;

double weighted_map_gap_sq(const std::vector<double>& a, const std::vector<double>& b,
                           const Signal& s0) {
    double dt0 = s0.dt();
    double acc = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        acc += d * d * s0.values[k] * dt0;
    }
    return acc;
}

}  // namespace

double wasserstein2(const Signal& p, const Signal& q, const Signal& s0) {
    std::vector<double> mp = cdt(p, s0);
    std::vector<double> mq = cdt(q, s0);
    return std::sqrt(weighted_map_gap_sq(mp, mq, s0));
}

double signed_distance(const Signal& r, const Signal& s, const Signal& s0) {
    JordanPair jr = jordan_decompose(r);
    JordanPair js = jordan_decompose(s);
    double tr = jr.pos_mass + jr.neg_mass;
    double ts = js.pos_mass + js.neg_mass;

    auto trivial = [](double mass, double total) {
        return total <= 0.0 || mass <= kTrivialRel * total;
    };

    double d2 = 0.0;
    struct PartPair {
        const Signal *a, *b;
        double ma, mb;
        const char* name;
    };
    PartPair pairs[2] = {{&jr.pos, &js.pos, jr.pos_mass, js.pos_mass, "positive"},
                         {&jr.neg, &js.neg, jr.neg_mass, js.neg_mass, "negative"}};
    for (const auto& pp : pairs) {
        bool ta = trivial(pp.ma, tr), tb = trivial(pp.mb, ts);
        if (ta != tb)
            throw PartMismatchError(std::string(pp.name) +
                                    " part is trivial in one signal only");
        double gap = pp.ma - pp.mb;
        d2 += gap * gap;
        if (!ta) {
            double w = wasserstein2(normalize_l1(*pp.a), normalize_l1(*pp.b), s0);
            d2 += w * w;
        }
    }
    return std::sqrt(d2);
}

double transform_distance(const Scdt& x, const Scdt& y, const Signal& s0,
                          bool include_masses) {
    if (x.reference != y.reference)
        throw ReferenceMismatchError("transforms use different references");
    if (s0.grid != x.reference)
        throw ReferenceMismatchError("weight density is not on the reference grid");

    double d2 = weighted_map_gap_sq(x.pos_map, y.pos_map, s0) +
                weighted_map_gap_sq(x.neg_map, y.neg_map, s0);
    if (include_masses) {
        double gp = x.pos_mass - y.pos_mass;
        double gn = x.neg_mass - y.neg_mass;
        d2 += gp * gp + gn * gn;
    }
    return std::sqrt(d2);
}

}  // namespace scdt
