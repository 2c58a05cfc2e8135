#ifndef SCDT_HARNESS_HPP
#define SCDT_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "scdt/grid_search.hpp"
#include "scdt/signal.hpp"
#include "scdt/warp.hpp"

namespace scdt {

// Template signal source: a named generator or a CSV file.
struct TemplateSpec {
    std::string generator = "gabor";  // ignored when csv_path is set
    double center = 0.5;
    double freq = 125.66370614359172;  // 40*pi
    double width = 120.0;
    std::optional<std::string> csv_path;
};

struct EstimatorSpec {
    std::string type;  // "scdt" | "l2_delay" | "wbaf"
    std::string label;
    // scdt estimators
    WarpFamily family = WarpFamily::polynomial;
    int degree = 1;
    // baseline estimators
    GridSearchSpec search;
};

struct ExperimentConfig {
    TemplateSpec template_signal;
    Grid grid{0.0, 1.0, 2048};
    Grid reference{0.0, 1.0, 1987};
    std::optional<WarpModel> true_warp;
    std::optional<Grid> receive_grid;  // default: widened automatically
    int receive_refine = 4;            // receive-grid oversampling vs template dt
    std::vector<EstimatorSpec> estimators;
    std::optional<GridSearchSpec> surface_window;  // for emit_surfaces
    std::string output_dir;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

struct EstimatorReport {
    std::string label;
    std::string type;
    bool ok = false;
    std::string error_code;   // set when ok is false
    std::string error_message;
    std::vector<double> recovered;
    std::vector<double> true_coeffs;       // empty unless comparable
    std::vector<double> abs_error;         // per coefficient
    std::vector<double> rel_error;         // NaN where the true value is 0
    double residual = 0.0;
    double condition = 0.0;
    double wall_ms = 0.0;
};

struct Report {
    Grid grid{0.0, 1.0, 2};
    Grid receive{0.0, 1.0, 2};
    std::optional<WarpModel> true_warp;
    std::vector<EstimatorReport> estimators;
};

// Builds the template, synthesizes the received signal through the true
// warp (on the configured or auto-widened grid), runs every estimator, and
// when output_dir is set writes template.csv, received.csv, report.json,
// timings.json and a g-curve table per scdt estimator. An estimator error
// is contained in its own report row. report.json carries no timings, so
// identical configs produce byte-identical reports.
Report run_experiment(const ExperimentConfig& config);

// Emits the SCDT objective and the WBAF surface over the configured window
// (both normalized to [0,1], WBAF flipped so lower is better everywhere)
// plus a JSON annotation of each surface's optimum cell.
void emit_surfaces(const ExperimentConfig& config);

std::string report_to_json(const Report& report, bool include_timings);

// The receive grid used when the config does not pin one: the template
// interval pulled back through the warp's increasing branch, sampled at
// dt / refine.
Grid widened_receive_grid(const WarpModel& g, const Grid& template_grid, int refine);

}  // namespace scdt

#endif  // SCDT_HARNESS_HPP
