// Command line driver: model zoo posteriors, the window-glue estimator, and
// the paradox reproductions. Emits CSV/JSON artifacts; all output is a
// deterministic function of the flags and the seed.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "renyi/errors.hpp"
#include "renyi/glue/pipeline.hpp"
#include "renyi/io/table.hpp"
#include "renyi/measure_ops.hpp"
#include "renyi/model_zoo.hpp"
#include "renyi/paradox/improper_test.hpp"
#include "renyi/paradox/lindley.hpp"
#include "renyi/paradox/marginalization.hpp"
#include "renyi/posterior_ops.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUndetermined = 3;
constexpr int kExitAlignment = 4;

struct GlobalOpts {
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::string out;
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw renyi::DomainMismatchError("cannot open output file: " + path);
    return file;
}

double parse_bound(const std::string& s) {
    if (s == "inf" || s == "+inf") return renyi::kInf;
    if (s == "-inf") return -renyi::kInf;
    return std::stod(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

struct ModelOpts {
    std::string name = "poisson";
    double t = 1.0;
    int n = 10;
    double sigma = 1.0;
    double pi0 = 0.5;
    double tau = 1.0;
    std::string slab = "normal"; // pointmass slab: normal(tau) or flat
};

renyi::JointModel make_model(const ModelOpts& m) {
    using namespace renyi;
    if (m.name == "poisson") return poisson_process_model(m.t);
    if (m.name == "haldane") return haldane_binomial_model(m.n);
    if (m.name == "locscale") return normal_location_scale_model();
    if (m.name == "expratio")
        return exponential_ratio_model([](double) { return 0.0; });
    if (m.name == "pointmass") {
        const double pi0 = m.pi0;
        if (m.slab == "flat")
            return normal_point_mass_model(m.sigma, pi0,
                                           [pi0](double) { return std::log1p(-pi0); });
        const double tau = m.tau;
        return normal_point_mass_model(m.sigma, pi0, [pi0, tau](double th) {
            return std::log1p(-pi0) - 0.5 * std::log(2.0 * 3.14159265358979324) -
                   std::log(tau) - 0.5 * th * th / (tau * tau);
        });
    }
    throw DomainMismatchError("unknown model: " + m.name);
}

const char* verdict_name(renyi::Properness p) {
    switch (p) {
        case renyi::Properness::Proper: return "proper";
        case renyi::Properness::Improper: return "improper";
        case renyi::Properness::Undetermined: return "undetermined";
    }
    return "?";
}

int cmd_posterior(const GlobalOpts& g, const ModelOpts& mo, double x, double z,
                  const std::string& window_spec, const std::string& table_path) {
    using namespace renyi;
    const JointModel model = make_model(mo);
    const Point data{x, z};
    const QuadratureOptions opts{g.tol, 1'000'000};

    const PosteriorClassification cls = classify_posterior(model, data, opts);
    std::cout << "model: " << model.label << "\n";
    std::cout << "verdict: " << verdict_name(cls.verdict) << "\n";
    if (cls.mass.finite()) {
        std::cout << "mass: " << io::format_double(cls.mass.value) << "\n";
        std::cout << "dataMarginal: " << io::format_double(cls.data_marginal_at_x.value)
                  << "\n";
    } else {
        std::cout << "mass: " << (cls.mass.infinite() ? "infinite" : "undetermined")
                  << (cls.mass.note.empty() ? "" : " (" + cls.mass.note + ")") << "\n";
    }

    if (!window_spec.empty()) {
        if (model.param_base.dim() != 1)
            throw DomainMismatchError("density tables need a 1-D parameter model");
        const auto parts = split(window_spec, ',');
        if (parts.size() != 2) throw DomainMismatchError("--window expects lo,hi");
        const double lo = parse_bound(parts[0]), hi = parse_bound(parts[1]);
        const WindowSet w = WindowSet::interval(lo, hi);
        const RenyiState post = posterior_state(model, data);

        const MassValue wm = window_mass(post, w, opts);
        std::cout << "windowMass: "
                  << (wm.finite() ? io::format_double(wm.value)
                                  : wm.infinite() ? "infinite" : "undetermined")
                  << "\n";
        if (wm.undetermined()) return kExitUndetermined;

        if (!table_path.empty()) {
            if (!wm.finite() || wm.value <= 0.0)
                throw NotElementaryError(wm.infinite() ? ElementaryFailure::InfiniteMass
                                                       : ElementaryFailure::ZeroMass,
                                         "window is not elementary; no density table");
            const RenyiState norm = normalize_on_window(post, w, opts);
            std::ofstream file;
            std::ostream& os = open_out(table_path, file);
            io::CsvWriter csv(os, {"theta", "logDensity"});
            const double a = std::isinf(lo) ? -50.0 : lo;
            const double b = std::isinf(hi) ? 50.0 : hi;
            const int kPoints = 257;
            for (int i = 0; i < kPoints; ++i) {
                const double th = a + (i + 0.5) * (b - a) / kPoints;
                csv.row(th, norm.log_density(Point{th, 0.0}));
            }
        }
    }
    return cls.verdict == Properness::Undetermined ? kExitUndetermined : kExitOk;
}

int cmd_glue(const GlobalOpts& g, const ModelOpts& mo, double x, double range_lo,
             double range_hi, int windows, double overlap, std::size_t samples,
             std::size_t burnin, const std::string& coordinate, bool parallel,
             const std::string& diag_path) {
    using namespace renyi;
    const JointModel model = make_model(mo);
    if (model.param_base.dim() != 1)
        throw DomainMismatchError("the glue pipeline needs a 1-D parameter model");
    const RenyiState post = posterior_state(model, Point{x, 0.0});

    glue::GluePipelineConfig cfg;
    cfg.scheme = coordinate == "raw"
                     ? glue::WindowScheme::linear(range_lo, range_hi, windows, overlap)
                     : glue::WindowScheme::geometric(range_lo, range_hi, windows, overlap);
    cfg.chain.chain_length = samples;
    cfg.chain.burn_in = burnin;
    cfg.chain.master_seed = g.seed;
    cfg.parallel = parallel;

    const glue::GlueResult result = glue::run_glue_pipeline(post, cfg);

    std::ofstream file;
    glue::write_glue_csv(open_out(g.out, file), result);
    if (!diag_path.empty()) {
        std::ofstream dfile;
        glue::write_glue_diagnostics_json(open_out(diag_path, dfile), result);
    }
    for (const std::string& w : result.diagnostics.warnings) std::cerr << "warning: " << w << "\n";
    return kExitOk;
}

int cmd_lindley(const GlobalOpts& g, double sigma, const std::string& grid_spec) {
    const auto parts = split(grid_spec, ',');
    if (parts.size() != 3) throw renyi::DomainMismatchError("--grid expects lo,hi,points");
    const auto curve = renyi::paradox::lindley_curve(
        sigma, std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
    std::ofstream file;
    renyi::paradox::write_lindley_csv(open_out(g.out, file), curve);
    return kExitOk;
}

int cmd_marginalization(const GlobalOpts& g, double z, const std::string& prior,
                        double power, const std::string& grid_spec) {
    const auto parts = split(grid_spec, ',');
    if (parts.size() != 3)
        throw renyi::DomainMismatchError("--theta-grid expects lo,hi,points");
    const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
    const int n = std::stoi(parts[2]);
    if (!(lo > 0.0 && hi > lo && n >= 2))
        throw renyi::DomainMismatchError("bad theta grid");
    std::vector<double> grid;
    grid.reserve(n);
    for (int i = 0; i < n; ++i) grid.push_back(lo + i * (hi - lo) / (n - 1));

    std::function<double(double)> log_prior = [](double) { return 0.0; };
    if (prior == "power")
        log_prior = [power](double th) { return power * std::log(th); };
    else if (prior != "flat")
        throw renyi::DomainMismatchError("unknown prior: " + prior);

    const auto report = renyi::paradox::marginalization_pair(log_prior, z, grid, g.tol);
    std::ofstream file;
    renyi::paradox::write_marginalization_json(open_out(g.out, file), report);
    std::cerr << "equivalent: " << (report.equivalent ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_impropertest(const GlobalOpts& g, double x, double m, double n, bool focus,
                     int max_exp) {
    using namespace renyi;
    const QuadratureOptions opts{g.tol, 1'000'000};
    if (!focus) {
        const double p = paradox::improper_test_probability(x, m, n, opts);
        std::ofstream file;
        std::ostream& os = open_out(g.out, file);
        io::CsvWriter csv(os, {"x", "m", "n", "phi"});
        csv.row(x, m, n, p);
        return kExitOk;
    }
    std::vector<double> schedule;
    for (int k = 1; k <= max_exp; ++k) schedule.push_back(std::pow(10.0, k));
    const auto result = paradox::focus_test_limit(x, m, schedule, opts);
    std::ofstream file;
    std::ostream& os = open_out(g.out, file);
    io::CsvWriter csv(os, {"n", "phi"});
    for (std::size_t i = 0; i < result.n_values.size(); ++i)
        csv.row(result.n_values[i], result.probabilities[i]);
    const char* verdict = result.verdict == paradox::FocusLimit::Zero
                              ? "reject"
                              : result.verdict == paradox::FocusLimit::One ? "accept"
                                                                           : "inconclusive";
    std::cerr << "verdict: " << verdict << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian inference with improper priors and posteriors"};
    app.set_config("--config", "", "read options from a flat key=value file");
    app.fallthrough(); // global flags may follow the subcommand name

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master seed for all randomized subcommands");
    app.add_option("--tol", g.tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "output path for the primary artifact ('-' = stdout)");

    ModelOpts mo;
    double x = 0.0, z = 1.0;

    auto add_model_opts = [&](CLI::App* cmd) {
        cmd->add_option("--model", mo.name, "poisson|haldane|pointmass|locscale|expratio");
        cmd->add_option("--t", mo.t, "poisson exposure");
        cmd->add_option("--n", mo.n, "haldane trial count");
        cmd->add_option("--sigma", mo.sigma, "pointmass observation deviation");
        cmd->add_option("--pi0", mo.pi0, "pointmass prior atom mass");
        cmd->add_option("--tau", mo.tau, "pointmass normal slab spread");
        cmd->add_option("--slab", mo.slab, "pointmass slab: normal|flat");
    };

    // posterior
    auto* post = app.add_subcommand("posterior", "classify a posterior, optionally tabulate it");
    add_model_opts(post);
    post->add_option("--x", x, "observed data value")->required();
    post->add_option("--z", z, "second data coordinate (expratio)");
    std::string window_spec, table_path;
    post->add_option("--window", window_spec, "window lo,hi (inf allowed)");
    post->add_option("--table-out", table_path, "CSV path for the normalized density table");

    // glue
    auto* glue_cmd = app.add_subcommand("glue", "window-restricted MCMC + KDE gluing");
    add_model_opts(glue_cmd);
    glue_cmd->add_option("--x", x, "observed data value")->required();
    double range_lo = 1e-3, range_hi = 10.0, overlap = 0.5;
    int windows = 6;
    std::size_t samples = 200'000, burnin = 20'000;
    std::string coordinate = "log";
    bool parallel = false;
    std::string diag_path;
    glue_cmd->add_option("--range-lo", range_lo, "parameter range lower end");
    glue_cmd->add_option("--range-hi", range_hi, "parameter range upper end");
    glue_cmd->add_option("--windows", windows, "number of overlapping windows");
    glue_cmd->add_option("--overlap", overlap, "pairwise overlap fraction");
    glue_cmd->add_option("--samples", samples, "chain length per window (incl. burn-in)");
    glue_cmd->add_option("--burnin", burnin, "burn-in steps per window");
    glue_cmd->add_option("--coordinate", coordinate, "sampling coordinate: log|raw");
    glue_cmd->add_flag("--parallel", parallel, "run windows concurrently");
    glue_cmd->add_option("--diag", diag_path, "JSON diagnostics path");

    // lindley
    auto* lindley = app.add_subcommand("lindley", "p-value vs posterior test statistics");
    double sigma = 1.0;
    std::string grid_spec = "0,4,81";
    lindley->add_option("--sigma", sigma, "observation deviation");
    lindley->add_option("--grid", grid_spec, "x/sigma grid as lo,hi,points");

    // marginalization
    auto* marg = app.add_subcommand("marginalization", "the two conditionals of the ratio parameter");
    double marg_z = 1.0, prior_power = 0.0;
    std::string prior = "flat", theta_grid = "0.05,20,200";
    marg->add_option("--z", marg_z, "observed ratio");
    marg->add_option("--prior", prior, "prior on theta: flat|power");
    marg->add_option("--power", prior_power, "exponent for the power prior");
    marg->add_option("--theta-grid", theta_grid, "grid as lo,hi,points");

    // impropertest
    auto* itest = app.add_subcommand("impropertest", "window posteriors of H0: gamma <= 0");
    double it_m = 5.0, it_n = 10.0;
    bool focus = false;
    int max_exp = 60;
    itest->add_option("--x", x, "observed data value")->required();
    itest->add_option("--m", it_m, "window half-width in gamma");
    itest->add_option("--n", it_n, "window index (sigma in (1/n, n))");
    itest->add_flag("--focus", focus, "focus-space limit over deleted neighborhoods");
    itest->add_option("--max-exp", max_exp, "focus schedule runs n = 10^1..10^maxExp");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (post->parsed()) return cmd_posterior(g, mo, x, z, window_spec, table_path);
        if (glue_cmd->parsed())
            return cmd_glue(g, mo, x, range_lo, range_hi, windows, overlap, samples, burnin,
                            coordinate, parallel, diag_path);
        if (lindley->parsed()) return cmd_lindley(g, sigma, grid_spec);
        if (marg->parsed()) return cmd_marginalization(g, marg_z, prior, prior_power, theta_grid);
        if (itest->parsed()) return cmd_impropertest(g, x, it_m, it_n, focus, max_exp);
    } catch (const renyi::AlignmentError& e) {
        std::cerr << "alignment failure: " << e.what() << "\n";
        return kExitAlignment;
    } catch (const renyi::UndeterminedError& e) {
        std::cerr << "undetermined: " << e.what() << "\n";
        return kExitUndetermined;
    } catch (const renyi::NotElementaryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.reason == renyi::ElementaryFailure::Undetermined ? kExitUndetermined
                                                                  : kExitUsage;
    } catch (const renyi::RenyiError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
