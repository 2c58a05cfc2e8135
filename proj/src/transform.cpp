#include "scdt/transform.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <json.hpp>

namespace scdt {

namespace {

constexpr double kDensityTol = 1e-9;   // unit-mass check for cdt inputs
constexpr double kTrivialRel = 1e-12;  // relative mass below which a part is trivial

void require_density(const Signal& s, const char* role) {
    for (double v : s.values)
        if (v < 0.0)
            throw NotADensityError(std::string(role) + " has negative values");
    double m = l1_mass(s);
    if (std::abs(m - 1.0) > kDensityTol)
        throw NotADensityError(std::string(role) + " is not unit-mass (got " +
                               std::to_string(m) + ")");
}

// Cumulation scaled to end exactly at 1.0. The running sum of nonnegative
// values is non-decreasing in IEEE arithmetic and division by the final
// value preserves that, so no interior value exceeds the top level.
std::vector<double> unit_cumulation(const Signal& s) {
    std::vector<double> F(s.values.size());
    double run = 0.0;
    for (size_t k = 0; k < s.values.size(); ++k) {
        run += s.values[k];
        F[k] = run;
    }
    double total = F.back();
    for (double& v : F) v /= total;
    return F;
}

}  // namespace

Cumulation cumulate(const Signal& s) {
    std::vector<double> F(s.values.size());
    double run = 0.0;
    double dt = s.dt();
    for (size_t k = 0; k < s.values.size(); ++k) {
        run += s.values[k];
        F[k] = run * dt;
    }
    return Cumulation{s.grid, std::move(F)};
}

double generalized_inverse(const Cumulation& F, double y) {
    const auto& v = F.values;
    auto it = std::upper_bound(v.begin(), v.end(), y);  // first strict exceedance
    if (it == v.end()) return F.grid.t_max;
    size_t i = static_cast<size_t>(it - v.begin());
    if (i == 0) return F.grid.t_min;
    double rise = v[i] - v[i - 1];
    double w = rise > 0.0 ? (y - v[i - 1]) / rise : 0.0;
    return F.grid.point(static_cast<int>(i - 1)) + w * F.grid.dt();
}

std::vector<double> cdt(const Signal& s, const Signal& s0) {
    require_density(s, "cdt input");
    require_density(s0, "cdt reference");

    std::vector<double> Fs = unit_cumulation(s);
    std::vector<double> F0 = unit_cumulation(s0);
    const int n = s.grid.n;
    const double dt = s.dt();

    std::vector<double> map(F0.size());
    // Levels are non-decreasing, so the exceedance index only moves forward:
    // one merged pass over both cumulations.
    int i = 0;
    for (size_t k = 0; k < F0.size(); ++k) {
        double y = F0[k];
        while (i < n && Fs[i] <= y) ++i;
        if (i == n) {
            map[k] = s.grid.t_max;
        } else if (i == 0) {
            map[k] = s.grid.t_min;
        } else {
            double rise = Fs[i] - Fs[i - 1];
            double w = rise > 0.0 ? (y - Fs[i - 1]) / rise : 0.0;
            map[k] = s.grid.point(i - 1) + w * dt;
        }
    }
    return map;
}

Scdt scdt(const Signal& s, const Signal& s0) {
    require_density(s0, "scdt reference");
    JordanPair parts = jordan_decompose(s);
    double total = parts.pos_mass + parts.neg_mass;

    auto part_map = [&](const Signal& part, double mass) -> std::vector<double> {
        if (total <= 0.0 || mass <= kTrivialRel * total)
            return std::vector<double>(s0.grid.n, 0.0);
        return cdt(normalize_l1(part), s0);
    };

    Scdt out{s0.grid, part_map(parts.pos, parts.pos_mass), parts.pos_mass,
             part_map(parts.neg, parts.neg_mass), parts.neg_mass};
    return out;
}

namespace {

// Rebuild one part density on s0's grid from its transport map: the map
// carries F_part(map[k]) = F0[k]; interpolate that relation onto the grid
// and differentiate. Plateaus in the map collapse to their last level.
std::vector<double> invert_part(const std::vector<double>& map, const std::vector<double>& F0,
                                const Grid& g) {
    std::vector<double> xs, ys;
    xs.reserve(map.size());
    ys.reserve(map.size());
    for (size_t k = 0; k < map.size(); ++k) {
        if (!xs.empty() && !(map[k] > xs.back())) {
            ys.back() = F0[k];
        } else {
            xs.push_back(map[k]);
            ys.push_back(F0[k]);
        }
    }

    std::vector<double> F(g.n);
    size_t j = 0;
    for (int k = 0; k < g.n; ++k) {
        double t = g.point(k);
        if (t < xs.front()) {
            F[k] = 0.0;
            continue;
        }
        if (t >= xs.back()) {
            F[k] = ys.back();
            continue;
        }
        while (j + 1 < xs.size() && xs[j + 1] <= t) ++j;
        double w = (t - xs[j]) / (xs[j + 1] - xs[j]);
        F[k] = ys[j] + w * (ys[j + 1] - ys[j]);
    }

    std::vector<double> dens(g.n);
    double dt = g.dt();
    dens[0] = F[0] / dt;
    for (int k = 1; k < g.n; ++k) dens[k] = (F[k] - F[k - 1]) / dt;
    return dens;
}

}  // namespace

Signal inverse_scdt(const Scdt& x, const Signal& s0) {
    require_density(s0, "inverse reference");
    if (s0.grid != x.reference)
        throw ReferenceMismatchError("s0 grid does not match the transform's reference");

    std::vector<double> F0 = unit_cumulation(s0);
    std::vector<double> out(s0.grid.n, 0.0);

    auto accumulate = [&](const std::vector<double>& map, double mass, double sign) {
        if (mass <= 0.0) return;
        if (!(map.back() - map.front() > 0.0))
            throw DegenerateMapError("transport map is constant but carries mass");
        std::vector<double> dens = invert_part(map, F0, s0.grid);
        for (int k = 0; k < s0.grid.n; ++k) out[k] += sign * mass * dens[k];
    };
    accumulate(x.pos_map, x.pos_mass, 1.0);
    accumulate(x.neg_map, x.neg_mass, -1.0);
    return Signal(s0.grid, std::move(out));
}

Scdt compose_scdt(const std::function<double(double)>& h, const Scdt& x) {
    double total = x.pos_mass + x.neg_mass;
    auto apply = [&](const std::vector<double>& map, double mass) {
        if (total <= 0.0 || mass <= kTrivialRel * total)
            return map;  // trivial part keeps its zero map
        std::vector<double> out(map.size());
        for (size_t k = 0; k < map.size(); ++k) {
            out[k] = h(map[k]);
            if (!std::isfinite(out[k]))
                throw DomainError("composition undefined at map value " +
                                  std::to_string(map[k]));
        }
        return out;
    };
    return Scdt{x.reference, apply(x.pos_map, x.pos_mass), x.pos_mass,
                apply(x.neg_map, x.neg_mass), x.neg_mass};
}

Scdt compose_scdt(const WarpModel& g, const Scdt& x) {
    return compose_scdt([&g](double t) { return g(t); }, x);
}

std::string scdt_to_json(const Scdt& x) {
    nlohmann::json j;
    j["reference"] = {{"t_min", x.reference.t_min},
                      {"t_max", x.reference.t_max},
                      {"n", x.reference.n}};
    j["pos_mass"] = x.pos_mass;
    j["neg_mass"] = x.neg_mass;
    j["pos_map"] = x.pos_map;
    j["neg_map"] = x.neg_map;
    return j.dump(2);
}

Scdt scdt_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Grid ref(j.at("reference").at("t_min").get<double>(),
             j.at("reference").at("t_max").get<double>(),
             j.at("reference").at("n").get<int>());
    Scdt x{ref, j.at("pos_map").get<std::vector<double>>(), j.at("pos_mass").get<double>(),
           j.at("neg_map").get<std::vector<double>>(), j.at("neg_mass").get<double>()};
    if (static_cast<int>(x.pos_map.size()) != ref.n ||
        static_cast<int>(x.neg_map.size()) != ref.n)
        throw Error("json_format", "scdt map length does not match reference grid");
    return x;
}

}  // namespace scdt
