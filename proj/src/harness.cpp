#include "scdt/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "scdt/baseline.hpp"
#include "scdt/estimate.hpp"
#include "scdt/metric.hpp"
#include "scdt/transform.hpp"

namespace scdt {

namespace {

using nlohmann::json;

Grid grid_from_json(const json& j) {
    return Grid(j.at("t_min").get<double>(), j.at("t_max").get<double>(),
                j.at("n").get<int>());
}

json grid_to_json(const Grid& g) {
    return json{{"t_min", g.t_min}, {"t_max", g.t_max}, {"n", g.n}};
}

AxisSpec axis_from_json(const json& j) {
    return AxisSpec(j.at("min").get<double>(), j.at("max").get<double>(),
                    j.at("steps").get<int>());
}

WarpModel warp_from_json(const json& j) {
    WarpFamily family = family_from_name(j.at("family").get<std::string>());
    return WarpModel::make(family, j.at("coefficients").get<std::vector<double>>());
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        ExperimentConfig cfg;
        if (j.contains("template")) {
            const json& t = j["template"];
            if (t.contains("csv")) {
                cfg.template_signal.csv_path = t["csv"].get<std::string>();
            } else if (t.contains("generator")) {
                const json& g = t["generator"];
                cfg.template_signal.generator = g.value("name", std::string("gabor"));
                cfg.template_signal.center = g.value("center", 0.5);
                cfg.template_signal.freq = g.value("freq", 125.66370614359172);
                cfg.template_signal.width = g.value("width", 120.0);
            }
        }
        if (j.contains("grid")) cfg.grid = grid_from_json(j["grid"]);
        if (j.contains("reference")) cfg.reference = grid_from_json(j["reference"]);
        if (j.contains("true_warp")) cfg.true_warp = warp_from_json(j["true_warp"]);
        if (j.contains("receive")) {
            const json& rec = j["receive"];
            if (rec.contains("grid")) cfg.receive_grid = grid_from_json(rec["grid"]);
            cfg.receive_refine = rec.value("refine", 4);
            if (cfg.receive_refine < 1)
                throw ConfigError("receive.refine must be >= 1");
        }
        if (j.contains("estimators")) {
            for (const json& e : j["estimators"]) {
                EstimatorSpec spec;
                spec.type = e.at("type").get<std::string>();
                if (spec.type == "scdt") {
                    spec.family = family_from_name(e.at("family").get<std::string>());
                    spec.degree = e.value("degree", 1);
                    spec.label = e.value(
                        "label", "scdt_" + family_name(spec.family) +
                                     (spec.family == WarpFamily::polynomial
                                          ? "_" + std::to_string(spec.degree)
                                          : ""));
                } else if (spec.type == "l2_delay") {
                    spec.search.axes.push_back(axis_from_json(e.at("tau")));
                    spec.label = e.value("label", std::string("l2_delay"));
                } else if (spec.type == "wbaf") {
                    spec.search.axes.push_back(axis_from_json(e.at("omega")));
                    spec.search.axes.push_back(axis_from_json(e.at("tau")));
                    spec.label = e.value("label", std::string("wbaf"));
                } else {
                    throw ConfigError("unknown estimator type '" + spec.type + "'");
                }
                cfg.estimators.push_back(std::move(spec));
            }
        }
        if (j.contains("surface_window")) {
            GridSearchSpec win;
            win.axes.push_back(axis_from_json(j["surface_window"].at("param1")));
            win.axes.push_back(axis_from_json(j["surface_window"].at("param2")));
            cfg.surface_window = std::move(win);
        }
        cfg.output_dir = j.value("output_dir", std::string());
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

Signal build_template(const ExperimentConfig& cfg) {
    if (cfg.template_signal.csv_path)
        return read_signal_csv(*cfg.template_signal.csv_path);
    if (cfg.template_signal.generator == "gabor")
        return gabor(cfg.grid, cfg.template_signal.center, cfg.template_signal.freq,
                     cfg.template_signal.width);
    throw ConfigError("unknown generator '" + cfg.template_signal.generator + "'");
}

}  // namespace

Grid widened_receive_grid(const WarpModel& g, const Grid& tmpl, int refine) {
    double span = tmpl.t_max - tmpl.t_min;
    double center = 0.5 * (tmpl.t_min + tmpl.t_max);
    auto [a, b] = g.increasing_interval(center, 3.0 * span);
    double inset = 1e-9 * (b - a);
    a += inset;
    b -= inset;
    double ga = g(a), gb = g(b);
    // Pull the template bounds back through g, clamped to what g attains on
    // its increasing branch.
    double lo = std::clamp(tmpl.t_min, ga, gb);
    double hi = std::clamp(tmpl.t_max, ga, gb);
    double A = g.inverse(lo, a, b);
    double B = g.inverse(hi, a, b);
    if (!(B > A))
        throw NonMonotoneWarpError("warp range does not cover the template interval");
    double dt = tmpl.dt() / refine;
    int n = static_cast<int>(std::ceil((B - A) / dt)) + 1;
    n = std::max(n, 2);
    return Grid(A, B, n);
}

namespace {

struct RunContext {
    Signal tmpl;
    Signal received;
    Signal reference;
};

json estimator_to_json(const EstimatorReport& er, bool include_timings) {
    json j;
    j["label"] = er.label;
    j["type"] = er.type;
    j["ok"] = er.ok;
    if (!er.ok) {
        j["error"] = er.error_code;
        j["message"] = er.error_message;
        return j;
    }
    j["recovered"] = er.recovered;
    if (!er.true_coeffs.empty()) {
        j["true"] = er.true_coeffs;
        j["abs_error"] = er.abs_error;
        json rel = json::array();
        for (double v : er.rel_error) {
            if (std::isnan(v))
                rel.push_back(nullptr);
            else
                rel.push_back(v);
        }
        j["rel_error"] = rel;
    }
    j["residual"] = er.residual;
    j["condition"] = er.condition;
    if (include_timings) j["wall_ms"] = er.wall_ms;
    return j;
}

void fill_errors(EstimatorReport& er, const std::vector<double>& truth) {
    er.true_coeffs = truth;
    er.abs_error.resize(truth.size());
    er.rel_error.resize(truth.size());
    for (size_t k = 0; k < truth.size(); ++k) {
        double abs = std::abs(er.recovered[k] - truth[k]);
        er.abs_error[k] = abs;
        er.rel_error[k] =
            truth[k] != 0.0 ? abs / std::abs(truth[k]) : std::numeric_limits<double>::quiet_NaN();
    }
}

void write_gcurve_csv(const WarpModel& truth, const WarpModel& recovered, const Grid& domain,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("io_error", "cannot write " + path);
    out << "t,g_true,g_recovered\n";
    const int samples = 257;
    for (int k = 0; k < samples; ++k) {
        double t = domain.t_min + (domain.t_max - domain.t_min) * k / (samples - 1);
        out << fmt_double(t) << ',' << fmt_double(truth(t)) << ',' << fmt_double(recovered(t))
            << '\n';
    }
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
    Signal tmpl = build_template(cfg);
    Signal reference = uniform_density(cfg.reference);

    Grid receive_grid = cfg.grid;
    if (cfg.true_warp) {
        receive_grid = cfg.receive_grid
                           ? *cfg.receive_grid
                           : widened_receive_grid(*cfg.true_warp, cfg.grid, cfg.receive_refine);
    }
    Signal received =
        cfg.true_warp ? apply_warp(tmpl, *cfg.true_warp, receive_grid) : tmpl;

    Report report;
    report.grid = cfg.grid;
    report.receive = receive_grid;
    report.true_warp = cfg.true_warp;

    std::filesystem::path outdir;
    bool emit = !cfg.output_dir.empty();
    if (emit) {
        outdir = cfg.output_dir;
        std::filesystem::create_directories(outdir);
        write_signal_csv(tmpl, (outdir / "template.csv").string());
        write_signal_csv(received, (outdir / "received.csv").string());
    }

    for (const EstimatorSpec& spec : cfg.estimators) {
        EstimatorReport er;
        er.label = spec.label;
        er.type = spec.type;
        auto start = std::chrono::steady_clock::now();
        try {
            if (spec.type == "scdt") {
                EstimationResult res =
                    estimate_warp(received, tmpl, reference, spec.family, spec.degree);
                er.recovered = res.model.coefficients();
                er.residual = res.residual;
                er.condition = res.condition;
                er.ok = true;
                if (cfg.true_warp && cfg.true_warp->family() == spec.family &&
                    cfg.true_warp->coefficients().size() == er.recovered.size())
                    fill_errors(er, cfg.true_warp->coefficients());
                if (emit && cfg.true_warp)
                    write_gcurve_csv(*cfg.true_warp, res.model, cfg.grid,
                                     (outdir / ("gcurve_" + spec.label + ".csv")).string());
            } else if (spec.type == "l2_delay") {
                // Classical model s(t - p0): equivalent warp g(t) = t - p0,
                // reported as affine (1, -p0) so rows compare against an
                // affine true warp directly.
                double p0 = l2_delay_estimate(received, tmpl, spec.search);
                er.recovered = {1.0, -p0};
                er.ok = true;
                if (cfg.true_warp && cfg.true_warp->family() == WarpFamily::affine)
                    fill_errors(er, cfg.true_warp->coefficients());
            } else if (spec.type == "wbaf") {
                auto [omega, tau] = wbaf_estimate(received, tmpl, spec.search);
                er.recovered = {omega, tau};
                er.ok = true;
                if (cfg.true_warp && cfg.true_warp->family() == WarpFamily::affine)
                    fill_errors(er, cfg.true_warp->coefficients());
            } else {
                throw ConfigError("unknown estimator type '" + spec.type + "'");
            }
        } catch (const Error& e) {
            er.ok = false;
            er.error_code = e.code();
            er.error_message = e.what();
        }
        er.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
        report.estimators.push_back(std::move(er));
    }

    if (emit) {
        std::ofstream rep(outdir / "report.json");
        rep << report_to_json(report, false) << '\n';
        std::ofstream tim(outdir / "timings.json");
        json t;
        for (const auto& er : report.estimators) t[er.label] = er.wall_ms;
        tim << t.dump(2) << '\n';
    }
    return report;
}

std::string report_to_json(const Report& report, bool include_timings) {
    json j;
    j["grid"] = grid_to_json(report.grid);
    j["receive_grid"] = grid_to_json(report.receive);
    if (report.true_warp) {
        j["true_warp"] = {{"family", family_name(report.true_warp->family())},
                          {"coefficients", report.true_warp->coefficients()}};
    }
    j["estimators"] = json::array();
    for (const auto& er : report.estimators)
        j["estimators"].push_back(estimator_to_json(er, include_timings));
    return j.dump(2);
}

void emit_surfaces(const ExperimentConfig& cfg) {
    if (!cfg.true_warp)
        throw ConfigError("surface emission needs a configured true warp");
    WarpFamily family = cfg.true_warp->family();
    if (family != WarpFamily::affine && family != WarpFamily::quadratic_dispersion)
        throw ConfigError("surface emission needs an affine or quadratic_dispersion warp");
    if (!cfg.surface_window)
        throw ConfigError("surface emission needs a surface_window");
    if (cfg.output_dir.empty())
        throw ConfigError("surface emission needs an output_dir");

    Signal tmpl = build_template(cfg);
    Signal reference = uniform_density(cfg.reference);
    Grid receive_grid = cfg.receive_grid
                            ? *cfg.receive_grid
                            : widened_receive_grid(*cfg.true_warp, cfg.grid, cfg.receive_refine);
    Signal received = apply_warp(tmpl, *cfg.true_warp, receive_grid);

    Surface scdt_surf = cost_surface(received, tmpl, reference, family, *cfg.surface_window);
    Surface wbaf_surf = wbaf_surface(received, tmpl, *cfg.surface_window);

    auto normalize = [](Surface s, bool flip) {
        double lo = *std::min_element(s.values.begin(), s.values.end());
        double hi = *std::max_element(s.values.begin(), s.values.end());
        double span = hi - lo;
        for (double& v : s.values) {
            v = span > 0.0 ? (v - lo) / span : 0.0;
            if (flip) v = 1.0 - v;
        }
        return s;
    };

    std::filesystem::path outdir = cfg.output_dir;
    std::filesystem::create_directories(outdir);
    // Both files share the "lower = better" orientation: the WBAF is a
    // maximization, so its normalized surface is flipped.
    write_surface_csv(normalize(scdt_surf, false), (outdir / "scdt_surface.csv").string());
    write_surface_csv(normalize(wbaf_surf, true), (outdir / "wbaf_surface.csv").string());

    auto [si, sj] = scdt_surf.argmin_cell();
    auto [wi, wj] = wbaf_surf.argmax_cell();
    json ann;
    ann["window"] = {{"param1",
                      {{"min", scdt_surf.ax1.min}, {"max", scdt_surf.ax1.max},
                       {"steps", scdt_surf.ax1.steps}}},
                     {"param2",
                      {{"min", scdt_surf.ax2.min}, {"max", scdt_surf.ax2.max},
                       {"steps", scdt_surf.ax2.steps}}}};
    ann["scdt"] = {{"optimum_cell", {si, sj}},
                   {"param1", scdt_surf.ax1.value(si)},
                   {"param2", scdt_surf.ax2.value(sj)},
                   {"objective", scdt_surf.at(si, sj)}};
    ann["wbaf"] = {{"optimum_cell", {wi, wj}},
                   {"param1", wbaf_surf.ax1.value(wi)},
                   {"param2", wbaf_surf.ax2.value(wj)},
                   {"ambiguity", wbaf_surf.at(wi, wj)}};
    std::ofstream out(outdir / "surfaces.json");
    out << ann.dump(2) << '\n';
}

}  // namespace scdt
