#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace renyi {

struct QuadratureOptions {
    double rel_tol = 1e-9;
    std::size_t max_evals = 1'000'000; // hard budget per integral
};

/// Shared evaluation budget across the pieces of one window-mass computation.
struct EvalBudget {
    std::size_t used = 0;
    std::size_t cap = 1'000'000;
    bool exhausted() const { return used >= cap; }
    std::size_t left() const { return used >= cap ? 0 : cap - used; }
};

struct Integral {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
    /// Point where the integrand blew up (non-finite value), or the center of
    /// the worst-converging panel when the budget ran out. Singularity probes
    /// start here.
    std::optional<double> suspect_point;
};

/// Thrown by an integrand (e.g. a nested inner integral that hit its budget
/// watermark) to end the current adaptive pass; the driver returns the
/// partial result as a non-converged Integral.
struct PassAborted {};

/// Globally adaptive integration of f over [a, b] (finite endpoints) with an
/// embedded Gauss-Kronrod panel rule. Stops when the error estimate drops
/// below max(rel_tol * |value|, abs_tol). NaN integrand values raise
/// EvaluationError; +inf values abort the pass and set suspect_point.
Integral integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                            double rel_tol, EvalBudget& budget, double abs_tol = 0.0);

/// Same driver, but the queue starts from the given panel cuts (ascending,
/// at least two). Narrow seed panels let the refinement sense features that
/// a single wide panel's nodes would step over.
Integral integrate_adaptive_pieces(const std::function<double(double)>& f,
                                   const std::vector<double>& cuts, double rel_tol,
                                   EvalBudget& budget, double abs_tol = 0.0);

/// Classification of a sequence of nonnegative increments approaching a limit
/// (doubling windows toward infinity, shrinking windows toward a singularity).
enum class LimitClass { Converged, Diverged, Undetermined };

struct LimitSum {
    LimitClass cls = LimitClass::Undetermined;
    double value = 0.0;     // includes extrapolated tail when Converged
    double abs_error = 0.0;
    std::string_view reason{};
};

/// Sums increments(k) for k = 0, 1, ... and classifies the limit: geometric
/// decay converges (with tail extrapolation), persistent non-decay diverges,
/// anything else is undetermined. `baseline` participates in relative-
/// smallness tests, e.g. the mass already accumulated on the core interval.
/// With `assume_convergent` (an analytic tail hint vouches for convergence)
/// the divergence exit is disabled and summing continues to the cap.
LimitSum sum_limit(const std::function<Integral(int)>& increments, double rel_tol,
                   double baseline, EvalBudget& budget, int min_segments = 3,
                   bool assume_convergent = false);

} // namespace renyi
