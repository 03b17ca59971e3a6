#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "renyi/glue/align.hpp"
#include "renyi/glue/kde.hpp"
#include "renyi/glue/sampler.hpp"
#include "renyi/glue/scheme.hpp"
#include "renyi/renyi_state.hpp"

namespace renyi::glue {

struct GlueDiagnostics {
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> stream_seeds;
    std::vector<double> acceptance_rates;
    std::vector<double> tuned_scales;
    std::vector<double> offsets;
    std::vector<std::size_t> overlap_counts;
    std::vector<std::string> warnings;
    double max_join_discontinuity = 0.0;
};

/// Glued estimate of a log density, defined up to one additive constant.
/// Sampler-coordinate tables plus a merged grid; when the scheme sampled in
/// log space raw_grid/raw_log_density carry the back-transformed curve.
struct GlueResult {
    std::vector<KdeTable> per_window;
    std::vector<double> offsets; // offsets[0] == 0

    std::vector<double> grid; // sampler coordinate, sorted union of window grids
    std::vector<double> glued_log_density;
    std::vector<double> weight; // summed supporting weight per point
    std::vector<int> window_id; // window with the largest weight at the point

    std::vector<double> raw_grid; // raw parameter coordinate
    std::vector<double> raw_log_density;

    WindowScheme::Coordinate coordinate = WindowScheme::Coordinate::Raw;
    GlueDiagnostics diagnostics;
};

/// Merges aligned tables onto the union grid; overlaps are weight-averaged.
GlueResult glue(std::vector<KdeTable> tables, std::vector<double> offsets,
                GlueDiagnostics diagnostics = {});

/// Best-shift sup-norm distance between the glued curve and a reference log
/// density (a function of the raw coordinate), over grid points whose weight
/// is at least weight_floor_rel of the maximum.
double glue_error_vs_analytic(const GlueResult& result, const RenyiState& truth,
                              double weight_floor_rel = 0.05);

struct GluePipelineConfig {
    WindowScheme scheme;
    ChainConfig chain;
    bool parallel = false; // windows are independent; output does not depend on this
};

/// Full estimator: per-window restricted MCMC, per-window KDE, offset
/// alignment, gluing. The target is given in raw coordinates; with a log
/// scheme it is transformed (with Jacobian) before sampling.
GlueResult run_glue_pipeline(const RenyiState& target, const GluePipelineConfig& cfg);

/// CSV with columns grid,gluedLogDensity,windowId,weight (raw coordinate).
void write_glue_csv(std::ostream& os, const GlueResult& result);
/// JSON diagnostics: seeds, acceptance rates, offsets, overlap counts.
void write_glue_diagnostics_json(std::ostream& os, const GlueResult& result);

} // namespace renyi::glue
