#include "renyi/glue/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>

#include <json.hpp>

#include "renyi/errors.hpp"
#include "renyi/io/table.hpp"

namespace renyi::glue {

namespace {

constexpr double kWeightFloorRel = 0.01;

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return ys.front();
    if (it == xs.end()) return ys.back();
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return (1.0 - t) * ys[i - 1] + t * ys[i];
}

} // namespace

WindowScheme WindowScheme::geometric(double lo, double hi, int count, double overlap) {
    if (!(lo > 0.0 && hi > lo)) throw DomainMismatchError("need 0 < lo < hi");
    WindowScheme s = linear(std::log(lo), std::log(hi), count, overlap);
    s.coordinate = Coordinate::Log;
    return s;
}

WindowScheme WindowScheme::linear(double lo, double hi, int count, double overlap) {
    if (count < 1) throw DomainMismatchError("need at least one window");
    if (!(overlap > 0.0 && overlap < 1.0) && count > 1)
        throw DomainMismatchError("overlap fraction must lie in (0,1)");
    WindowScheme s;
    s.overlap_fraction = overlap;
    s.coordinate = Coordinate::Raw;
    const double range = hi - lo;
    // length L with step (1-overlap)L covering the range exactly
    const double denom = 1.0 + (count - 1) * (1.0 - overlap);
    const double length = range / denom;
    const double step = (1.0 - overlap) * length;
    for (int i = 0; i < count; ++i)
        s.windows.push_back({lo + i * step, lo + i * step + length});
    s.windows.back().hi = hi; // guard rounding
    s.validate();
    return s;
}

void WindowScheme::validate() const {
    if (windows.empty()) throw DomainMismatchError("window scheme is empty");
    for (const Interval& w : windows)
        if (!(w.lo < w.hi)) throw DomainMismatchError("degenerate sampling window");
    for (std::size_t i = 0; i + 1 < windows.size(); ++i) {
        if (!(windows[i + 1].lo > windows[i].lo))
            throw DomainMismatchError("windows must be ordered");
        if (!(windows[i + 1].lo < windows[i].hi))
            throw DomainMismatchError("consecutive windows must overlap");
    }
}

GlueResult glue(std::vector<KdeTable> tables, std::vector<double> offsets,
                GlueDiagnostics diagnostics) {
    if (tables.size() != offsets.size())
        throw DomainMismatchError("one offset per table required");
    if (!offsets.empty() && offsets.front() != 0.0)
        throw DomainMismatchError("offsets must be anchored at zero");

    GlueResult out;
    out.diagnostics = std::move(diagnostics);
    out.offsets = std::move(offsets);

    std::vector<double> grid;
    for (const KdeTable& t : tables)
        grid.insert(grid.end(), t.grid.begin(), t.grid.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> floors(tables.size(), 0.0);
    for (std::size_t i = 0; i < tables.size(); ++i) {
        double m = 0.0;
        for (double w : tables[i].weight) m = std::max(m, w);
        floors[i] = kWeightFloorRel * m;
    }

    out.grid = std::move(grid);
    out.glued_log_density.resize(out.grid.size());
    out.weight.resize(out.grid.size());
    out.window_id.resize(out.grid.size());
    for (std::size_t j = 0; j < out.grid.size(); ++j) {
        const double g = out.grid[j];
        double num = 0.0, den = 0.0, best_w = -1.0, only_v = 0.0;
        int best_id = -1, supporters = 0;
        for (std::size_t i = 0; i < tables.size(); ++i) {
            const KdeTable& t = tables[i];
            if (g < t.window.lo || g > t.window.hi) continue;
            const double w = interpolate(t.grid, t.weight, g);
            if (w <= floors[i]) continue;
            const double v = interpolate(t.grid, t.log_density, g) + out.offsets[i];
            num += w * v;
            den += w;
            only_v = v;
            ++supporters;
            if (w > best_w) {
                best_w = w;
                best_id = static_cast<int>(i);
            }
        }
        out.weight[j] = den;
        out.window_id[j] = best_id;
        // a single supporter passes through untouched (w*v/w rounds)
        out.glued_log_density[j] =
            supporters == 1 ? only_v : (den > 0.0 ? num / den : -kInf);
    }

    // continuity diagnostic: the largest aligned disagreement between two
    // tables at a shared supported point
    double max_gap = 0.0;
    for (std::size_t i = 0; i + 1 < tables.size(); ++i) {
        const KdeTable& a = tables[i];
        const KdeTable& b = tables[i + 1];
        for (std::size_t j = 0; j < a.grid.size(); ++j) {
            const double g = a.grid[j];
            if (g < b.window.lo || g > b.window.hi) continue;
            if (a.weight[j] <= floors[i]) continue;
            if (interpolate(b.grid, b.weight, g) <= floors[i + 1]) continue;
            const double va = a.log_density[j] + out.offsets[i];
            const double vb = interpolate(b.grid, b.log_density, g) + out.offsets[i + 1];
            max_gap = std::max(max_gap, std::abs(va - vb));
        }
    }
    out.diagnostics.max_join_discontinuity = max_gap;
    out.per_window = std::move(tables);
    return out;
}

double glue_error_vs_analytic(const GlueResult& result, const RenyiState& truth,
                              double weight_floor_rel) {
    const std::vector<double>& xs =
        result.coordinate == WindowScheme::Coordinate::Log ? result.raw_grid : result.grid;
    const std::vector<double>& ys = result.coordinate == WindowScheme::Coordinate::Log
                                        ? result.raw_log_density
                                        : result.glued_log_density;
    double max_w = 0.0;
    for (double w : result.weight) max_w = std::max(max_w, w);
    const double floor = weight_floor_rel * max_w;

    double shift_num = 0.0;
    std::size_t kept = 0;
    std::vector<double> diffs(xs.size(), 0.0);
    std::vector<bool> use(xs.size(), false);
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (result.weight[j] < floor) continue;
        const double t = truth.log_density(Point{xs[j], 0.0});
        if (!std::isfinite(t) || !std::isfinite(ys[j])) continue;
        diffs[j] = ys[j] - t;
        use[j] = true;
        shift_num += diffs[j];
        ++kept;
    }
    if (kept == 0) throw DomainMismatchError("no supported grid point to compare on");
    const double shift = shift_num / static_cast<double>(kept); // least-squares shift
    double sup = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j)
        if (use[j]) sup = std::max(sup, std::abs(diffs[j] - shift));
    return sup;
}

GlueResult run_glue_pipeline(const RenyiState& target, const GluePipelineConfig& cfg) {
    cfg.scheme.validate();
    cfg.chain.validate();

    // sampling happens in the scheme's coordinate
    RenyiState sampling_target = target;
    if (cfg.scheme.coordinate == WindowScheme::Coordinate::Log) {
        sampling_target = RenyiState::line([f = target.log_density](double u) {
            const double lam = std::exp(u);
            return f(Point{lam, 0.0}) + u; // Jacobian d(lambda)/du
        });
    }

    const std::size_t n = cfg.scheme.windows.size();
    std::vector<SampleResult> runs(n);
    auto run_window = [&](std::size_t i) {
        return sample_restricted(sampling_target, cfg.scheme.windows[i], cfg.chain, i);
    };
    if (cfg.parallel) {
        std::vector<std::future<SampleResult>> futs;
        futs.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            futs.push_back(std::async(std::launch::async, run_window, i));
        for (std::size_t i = 0; i < n; ++i) runs[i] = futs[i].get(); // merge in index order
    } else {
        for (std::size_t i = 0; i < n; ++i) runs[i] = run_window(i);
    }

    GlueDiagnostics diag;
    diag.master_seed = cfg.chain.master_seed;
    std::vector<KdeTable> tables;
    tables.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag.stream_seeds.push_back(runs[i].stream_seed);
        diag.acceptance_rates.push_back(runs[i].acceptance_rate);
        diag.tuned_scales.push_back(runs[i].tuned_scale);
        if (runs[i].warning) diag.warnings.push_back(*runs[i].warning);
        tables.push_back(kde_log_density(runs[i].samples, cfg.scheme.windows[i]));
    }

    std::vector<double> offsets = align_offsets(tables);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double lo = std::max(tables[i].window.lo, tables[i + 1].window.lo);
        const double hi = std::min(tables[i].window.hi, tables[i + 1].window.hi);
        std::size_t cnt = 0;
        for (double g : tables[i].grid) cnt += (g >= lo && g <= hi) ? 1 : 0;
        for (double g : tables[i + 1].grid) cnt += (g >= lo && g <= hi) ? 1 : 0;
        diag.overlap_counts.push_back(cnt);
    }
    diag.offsets = offsets;

    GlueResult out = glue(std::move(tables), std::move(offsets), std::move(diag));
    out.coordinate = cfg.scheme.coordinate;
    out.raw_grid = out.grid;
    out.raw_log_density = out.glued_log_density;
    if (cfg.scheme.coordinate == WindowScheme::Coordinate::Log) {
        for (std::size_t j = 0; j < out.grid.size(); ++j) {
            out.raw_grid[j] = std::exp(out.grid[j]);
            // undo the Jacobian: log f_lambda = log f_u - u
            out.raw_log_density[j] = out.glued_log_density[j] - out.grid[j];
        }
    }
    return out;
}

void write_glue_csv(std::ostream& os, const GlueResult& result) {
    io::CsvWriter csv(os, {"grid", "gluedLogDensity", "windowId", "weight"});
    for (std::size_t j = 0; j < result.raw_grid.size(); ++j) {
        if (result.weight[j] <= 0.0) continue;
        csv.row(result.raw_grid[j], result.raw_log_density[j],
                static_cast<double>(result.window_id[j]), result.weight[j]);
    }
}

void write_glue_diagnostics_json(std::ostream& os, const GlueResult& result) {
    nlohmann::json j;
    j["masterSeed"] = result.diagnostics.master_seed;
    j["streamSeeds"] = result.diagnostics.stream_seeds;
    j["acceptanceRates"] = result.diagnostics.acceptance_rates;
    j["tunedScales"] = result.diagnostics.tuned_scales;
    j["offsets"] = result.diagnostics.offsets;
    j["overlapCounts"] = result.diagnostics.overlap_counts;
    j["warnings"] = result.diagnostics.warnings;
    j["maxJoinDiscontinuity"] = result.diagnostics.max_join_discontinuity;
    j["coordinate"] =
        result.coordinate == WindowScheme::Coordinate::Log ? "log" : "raw";
    os << j.dump(2) << "\n";
}

} // namespace renyi::glue
