// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Everything here is pinned: tolerances, seeds, window batteries.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "renyi/glue/pipeline.hpp"
#include "renyi/measure_ops.hpp"
#include "renyi/model_zoo.hpp"
#include "renyi/paradox/improper_test.hpp"
#include "renyi/paradox/lindley.hpp"
#include "renyi/paradox/marginalization.hpp"
#include "renyi/posterior_ops.hpp"

using namespace renyi;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// 1. glue benchmark on the Poisson x = 0 target
void criterion_glue_benchmark() {
    const auto t0 = std::chrono::steady_clock::now();
    const RenyiState target = posterior_state(poisson_process_model(1.0), Point{0.0, 0.0});

    glue::GluePipelineConfig cfg;
    cfg.scheme = glue::WindowScheme::geometric(1e-3, 10.0, 6, 0.5);
    cfg.chain.chain_length = 200'000; // 180k post burn-in
    cfg.chain.burn_in = 20'000;
    cfg.chain.master_seed = 42;
    const glue::GlueResult result = glue::run_glue_pipeline(target, cfg);

    const RenyiState truth =
        RenyiState::half_line([](double l) { return -l - std::log(l); });
    const double sup = glue::glue_error_vs_analytic(result, truth, 0.05);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(1, sup <= 0.15 && seconds < 60.0, "glue benchmark vs -lambda - log(lambda)",
           "sup error " + fmt(sup) + " <= 0.15, " + fmt(seconds) + " s single-threaded");

    // window-refinement stability rider: doubling the window count moves the
    // error by less than 0.1
    glue::GluePipelineConfig fine = cfg;
    fine.scheme = glue::WindowScheme::geometric(1e-3, 10.0, 12, 0.5);
    const double sup12 = glue::glue_error_vs_analytic(
        glue::run_glue_pipeline(target, fine), truth, 0.05);
    report(1, std::abs(sup12 - sup) < 0.1, "glue benchmark window-refinement stability",
           "|" + fmt(sup12) + " - " + fmt(sup) + "| < 0.1");
}

void criterion_p_values() {
    const bool ok = std::abs(paradox::p_value(1.645, 1.0) - 0.10) < 5e-4 &&
                    std::abs(paradox::p_value(1.960, 1.0) - 0.05) < 5e-4 &&
                    std::abs(paradox::p_value(2.576, 1.0) - 0.01) < 5e-4;
    report(2, ok, "p-values at 1.645 / 1.960 / 2.576",
           fmt(paradox::p_value(1.645, 1)) + ", " + fmt(paradox::p_value(1.960, 1)) + ", " +
               fmt(paradox::p_value(2.576, 1)));
}

void criterion_lower_bounds() {
    const double b1 = paradox::unimodal_lower_bound(1.645);
    const double b2 = paradox::unimodal_lower_bound(1.960);
    const double b3 = paradox::unimodal_lower_bound(2.576);
    const bool ok = std::abs(b1 - 0.39) <= 0.015 && std::abs(b2 - 0.29) <= 0.015 &&
                    std::abs(b3 - 0.10) <= 0.015;
    report(3, ok, "unimodal lower bounds vs 39% / 29% / 10%",
           fmt(b1) + ", " + fmt(b2) + ", " + fmt(b3));
}

void criterion_slab_limit() {
    const double x = 1.96, sigma = 1.0;
    double prev = 0.0;
    bool increasing = true;
    double last = 0.0;
    for (double tau : {10.0, 100.0, 1000.0, 10000.0}) {
        last = paradox::bayes_test_posterior(x, sigma, 0.5, [tau](double th) {
            const double z = th / tau;
            return std::log(0.5) - 0.5 * z * z -
                   std::log(tau * std::sqrt(2.0 * 3.14159265358979324));
        });
        increasing &= last > prev;
        prev = last;
    }
    const double flat = paradox::lindley_posterior_flat(x, sigma);
    const double bound = 1.0 / (1.0 + std::sqrt(2.0 * 3.14159265358979324) * sigma);
    const bool ok = increasing && last > 0.99 && flat <= bound;
    report(4, ok, "normal-slab limit pushes the null posterior to 1",
           "tau = 1e4 gives " + fmt(last) + "; flat " + fmt(flat) + " <= " + fmt(bound));
}

void criterion_scale_invariance() {
    double max_diff = 0.0;
    for (double z : {0.5, 1.0, 1.96}) {
        const double ref = paradox::scaled_prior_posterior(z, 1.0);
        for (double sigma : {0.1, 10.0})
            max_diff = std::max(
                max_diff, std::abs(paradox::scaled_prior_posterior(z * sigma, sigma) - ref));
    }
    const double flat_gap =
        std::abs(paradox::lindley_posterior_flat(0.1, 0.1) -
                 paradox::lindley_posterior_flat(10.0, 10.0));
    const bool ok = max_diff <= 1e-12 && flat_gap > 0.05;
    report(5, ok, "scaled posterior is scale free; flat posterior is not",
           "max scaled drift " + fmt(max_diff) + ", flat gap " + fmt(flat_gap));
}

void criterion_window_prior() {
    double worst = 0.0;
    for (double z : {0.0, 1.0, 1.96, 3.0})
        worst = std::max(worst, std::abs(paradox::window_prior_posterior(z, 1.0, 1000) -
                                         paradox::scaled_prior_posterior(z, 1.0)));
    report(6, worst < 0.01, "window priors converge to the scaled posterior",
           "max gap " + fmt(worst) + " < 0.01 at n = 1000");
}

void criterion_marginalization() {
    std::vector<double> grid;
    for (int i = 1; i <= 200; ++i) grid.push_back(0.05 * i);
    bool ok = true;
    double worst = 0.0;
    for (double z : {0.5, 1.0, 2.0}) {
        const auto rep =
            paradox::marginalization_pair([](double) { return 0.0; }, z, grid, 1e-9);
        ok &= !rep.equivalent;
        // profile must match -log(theta + z) up to one constant
        double shift = rep.log_ratio[0] + std::log(grid[0] + z);
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst,
                             std::abs(rep.log_ratio[i] + std::log(grid[i] + z) - shift));
    }
    report(7, ok && worst <= 1e-9, "marginalization pair: different states, known ratio",
           "profile deviation " + fmt(worst));
}

void criterion_commutation() {
    std::mt19937 gen(20260811);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int passed = 0;
    const int trials = 50;
    for (int trial = 0; trial < trials; ++trial) {
        const int which = trial % 5;
        bool ok = false;
        if (which == 0) {
            const double t = 0.5 + 2.0 * unit(gen);
            const double x = static_cast<double>(trial % 4);
            const double lo = 0.05 + 0.4 * unit(gen);
            ok = restriction_commutes(poisson_process_model(t), Point{x, 0.0},
                                      WindowSet::interval(lo, lo + 1.0 + 4.0 * unit(gen)),
                                      1e-8);
        } else if (which == 1) {
            const double x = 1.0 + static_cast<double>(trial % 9);
            const double lo = 0.05 + 0.3 * unit(gen);
            ok = restriction_commutes(haldane_binomial_model(10), Point{x, 0.0},
                                      WindowSet::interval(lo, lo + 0.2 + 0.4 * unit(gen)),
                                      1e-8);
        } else if (which == 2) {
            const double tau = 0.5 + 2.0 * unit(gen);
            const auto model = normal_point_mass_model(1.0, 0.5, [tau](double th) {
                const double z = th / tau;
                return std::log(0.5) - 0.5 * z * z;
            });
            ok = restriction_commutes(model, Point{unit(gen), 0.0},
                                      WindowSet::interval(-1.0 - unit(gen), 1.0 + unit(gen)),
                                      1e-8);
        } else if (which == 3) {
            const WindowSet b = WindowSet::box({-1.0 - unit(gen), 1.0 + unit(gen)},
                                               {0.3, 2.0 + unit(gen)});
            ok = restriction_commutes(normal_location_scale_model(),
                                      Point{2.0 * unit(gen) - 1.0, 0.0}, b, 1e-8);
        } else {
            const WindowSet b = WindowSet::box({0.2, 2.0 + unit(gen)},
                                               {0.2, 2.0 + unit(gen)});
            ok = restriction_commutes(exponential_ratio_model([](double) { return 0.0; }),
                                      Point{0.5 + unit(gen), 0.5 + unit(gen)}, b, 1e-8);
        }
        passed += ok ? 1 : 0;
    }
    report(8, passed == trials, "conditioning commutes with disintegration",
           std::to_string(passed) + "/" + std::to_string(trials) + " randomized triples");
}

void criterion_sequential() {
    std::mt19937 gen(1234);
    std::uniform_real_distribution<double> split(0.15, 0.85);
    std::uniform_int_distribution<int> counts(0, 7);
    const RenyiState prior = RenyiState::half_line([](double l) { return -std::log(l); });
    int passed = 0;
    const int trials = 20;
    double worst_sd = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const double total_t = 3.0;
        const double t1 = total_t * split(gen);
        const double x1 = counts(gen), x2 = counts(gen);
        StageModelFactory factory = [&](std::size_t stage, const RenyiState& p) {
            const double t = stage == 0 ? t1 : total_t - t1;
            JointModel m;
            m.data_base = BaseMeasure::counting_nonneg();
            m.param_base = p.base;
            m.log_joint = [t, prior_ld = p.log_density](const Point& x, const Point& theta) {
                const double k = x[0], lambda = theta[0];
                if (lambda <= 0.0) return -kInf;
                return prior_ld(theta) + k * std::log(lambda * t) - lambda * t -
                       std::lgamma(k + 1.0);
            };
            return m;
        };
        const std::vector<Point> obs{{x1, 0.0}, {x2, 0.0}};
        const RenyiState seq = sequential_update(factory, prior, obs);
        const RenyiState batch = RenyiState::half_line([x = x1 + x2, total_t](double l) {
            return (x - 1.0) * std::log(l) - total_t * l;
        });
        const WindowSet probe[] = {WindowSet::interval(0.3, 5.0)};
        EquivalenceDiagnostics diag;
        const bool ok = states_equivalent(seq, batch, probe, 1e-10, &diag);
        worst_sd = std::max(worst_sd, diag.log_ratio_sd);
        passed += ok ? 1 : 0;
    }
    report(9, passed == trials, "sequential updating equals the batch update",
           std::to_string(passed) + "/" + std::to_string(trials) +
               " splits, worst log-sd " + fmt(worst_sd));
}

void criterion_marginal_shapes() {
    const RenyiState post =
        posterior_state(normal_location_scale_model(), Point{1.0, 0.0});

    const MarginalResult keep_sigma = marginal_state(post, 1);
    const RenyiState sigma_truth =
        RenyiState::half_line([](double s) { return -std::log(s); });
    const WindowSet sigma_probe[] = {WindowSet::interval(0.5, 3.0)};
    const bool sig_ok = keep_sigma.ok() &&
                        states_equivalent(*keep_sigma.state, sigma_truth, sigma_probe, 1e-6);

    const MarginalResult keep_gamma = marginal_state(post, 0);
    const RenyiState gamma_truth =
        RenyiState::line([](double g) { return -std::log(std::abs(g - 1.0)); });
    const WindowSet gamma_probe[] = {WindowSet::intervals({{-2.0, 0.5}, {1.5, 4.0}})};
    const bool gam_ok = keep_gamma.ok() &&
                        states_equivalent(*keep_gamma.state, gamma_truth, gamma_probe, 1e-6);

    report(10, sig_ok && gam_ok, "marginal shapes 1/sigma and 1/|gamma - x|",
           std::string("sigma ") + (sig_ok ? "ok" : "off") + ", gamma " +
               (gam_ok ? "ok" : "off"));
}

void criterion_properness_table() {
    bool ok = true;
    const JointModel haldane = haldane_binomial_model(10);
    for (int x = 0; x <= 10; ++x) {
        const auto verdict =
            classify_posterior(haldane, Point{static_cast<double>(x), 0.0}).verdict;
        const bool improper = x == 0 || x == 10;
        ok &= verdict == (improper ? Properness::Improper : Properness::Proper);
    }
    const JointModel poisson = poisson_process_model(1.0);
    for (int x = 0; x <= 6; ++x) {
        const auto verdict =
            classify_posterior(poisson, Point{static_cast<double>(x), 0.0}).verdict;
        ok &= verdict == (x == 0 ? Properness::Improper : Properness::Proper);
    }
    report(11, ok, "properness truth table (Haldane n = 10, Poisson)",
           ok ? "improper exactly at x in {0, 10} and x = 0" : "mismatch");
}

void criterion_focus_limits() {
    std::vector<double> schedule;
    for (int k = 1; k <= 60; ++k) schedule.push_back(std::pow(10.0, k));
    bool ok = true;
    for (double x : {-2.0, -0.5, 0.5, 2.0}) {
        const auto r = paradox::focus_test_limit(x, 5.0, schedule);
        const auto want = x <= 0.0 ? paradox::FocusLimit::One : paradox::FocusLimit::Zero;
        ok &= r.verdict == want;
    }
    const auto half = paradox::focus_test_limit(0.0, 5.0, schedule);
    ok &= half.verdict == paradox::FocusLimit::Half;
    for (double p : half.probabilities) ok &= std::abs(p - 0.5) < 1e-9;
    report(12, ok, "focus-space verdicts equal (x <= 0), one half at x = 0",
           ok ? "all five abscissae" : "mismatch");
}

void criterion_q_vague() {
    // pi_n -> delta_0 with tau_n = n
    auto member = [](int n) {
        const double tau = n;
        return RenyiState::on_1d(
            BaseMeasure::lebesgue_with_atoms({0.0}), [tau](double t) {
                if (t == 0.0) return std::log(0.5);
                const double z = t / tau;
                return std::log(0.5) - 0.5 * z * z -
                       std::log(tau * std::sqrt(2.0 * 3.14159265358979324));
            });
    };
    const RenyiState delta = RenyiState::on_1d(
        BaseMeasure::lebesgue_with_atoms({0.0}),
        [](double t) { return t == 0.0 ? 0.0 : -kInf; });
    const std::vector<int> schedule{1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
    const std::vector<WindowSet> probes{WindowSet::interval(-1, 1),
                                        WindowSet::interval(-3, 3)};
    const QVagueReport to_atom = q_vague_limit_check(member, delta, WindowSet::interval(0, 0),
                                                     probes, schedule, 0.02);

    // m_n -> Lebesgue
    auto box = [](int n) {
        return RenyiState::line(
            [n](double t) { return std::abs(t) <= n ? -std::log(2.0 * n) : -kInf; });
    };
    const RenyiState lebesgue = RenyiState::uniform(BaseMeasure::lebesgue_line());
    const std::vector<int> box_schedule{1, 2, 4, 8, 16, 32, 64};
    const std::vector<WindowSet> box_probes{WindowSet::interval(-3, 3),
                                            WindowSet::interval(0, 2)};
    const QVagueReport to_uniform =
        q_vague_limit_check(box, lebesgue, WindowSet::interval(-1, 1), box_probes,
                            box_schedule, 1e-9);

    report(13, to_atom.converged && to_uniform.converged,
           "q-vague limits: slabs to the atom, boxes to Lebesgue",
           std::string(to_atom.converged ? "slabs ok" : "slabs off") + ", " +
               (to_uniform.converged ? "boxes ok" : "boxes off"));
}

} // namespace

int main() {
    criterion_glue_benchmark();
    criterion_p_values();
    criterion_lower_bounds();
    criterion_slab_limit();
    criterion_scale_invariance();
    criterion_window_prior();
    criterion_marginalization();
    criterion_commutation();
    criterion_sequential();
    criterion_marginal_shapes();
    criterion_properness_table();
    criterion_focus_limits();
    criterion_q_vague();

    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all 13 criteria passed\n");
    return 0;
}
