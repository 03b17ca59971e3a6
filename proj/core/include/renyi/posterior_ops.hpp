#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "renyi/joint_model.hpp"
#include "renyi/measure_ops.hpp"
#include "renyi/quadrature.hpp"
#include "renyi/window_set.hpp"

namespace renyi {

/// The posterior as a Renyi state: theta -> log_joint(x, theta), no
/// normalization. Throws ZeroMassError when the section is identically -inf
/// on a probe grid (conditioning on an impossible observation).
RenyiState posterior_state(const JointModel& model, const Point& x);

/// Properness verdict from the posterior-state mass over the full parameter
/// domain; the same number is the data marginal at x.
PosteriorClassification classify_posterior(const JointModel& model, const Point& x,
                                           const QuadratureOptions& opts = {});

struct NotSigmaFinite {
    std::vector<double> divergent_probes; // adjacent kept-axis points with infinite slices
    std::string note;
};

struct MarginalResult {
    std::optional<RenyiState> state;
    std::optional<NotSigmaFinite> not_sigma_finite;
    std::vector<double> undetermined_probes;
    bool ok() const { return state.has_value(); }
};

/// Integrates out one coordinate of a 2-D state. The kept coordinate's log
/// density is the log inner mass, computed on demand. When the inner integral
/// diverges on a set of positive extent the marginal is not sigma-finite and
/// no state is returned.
MarginalResult marginal_state(const RenyiState& joint2d, int keep_axis,
                              const QuadratureOptions& opts = {});

/// Cell-wise restrictions: the conditional Renyi states given each partition
/// cell. Cells must be disjoint and of positive (possibly infinite) mass.
std::vector<RenyiState> disintegrate_discrete(const RenyiState& state,
                                              std::span<const WindowSet> partition,
                                              const QuadratureOptions& opts = {});

/// Does conditioning commute with disintegration on this window?
/// Route A: normalize the posterior on b. Route B: restrict the prior side of
/// the joint to b, then take the posterior. True when the two states match.
bool restriction_commutes(const JointModel& model, const Point& x, const WindowSet& b,
                          double tol, const QuadratureOptions& opts = {});

/// Builds the stage-n joint from the running prior; stages may differ (e.g.
/// different exposure windows).
using StageModelFactory =
    std::function<JointModel(std::size_t stage, const RenyiState& prior)>;

/// Folds observations through posterior updates, each posterior becoming the
/// next prior. With an empty observation list the prior is returned unchanged.
RenyiState sequential_update(const StageModelFactory& factory, RenyiState prior,
                             std::span<const Point> observations);

/// Normalization exponent (n - k)/2 for the improper Gaussian model with
/// precision matrix q, where k is the dimension of the null space detected at
/// the relative eigenvalue tolerance.
IcarExponent icar_normalization_exponent(const PrecisionMatrix& q,
                                         double rank_tol = 1e-9);

} // namespace renyi
