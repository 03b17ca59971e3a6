#include "renyi/posterior_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <Eigen/Dense>

#include "renyi/detail/mass1d.hpp"
#include "renyi/errors.hpp"

namespace renyi {

namespace {

/// Probe points spread over one axis of a domain; geometric ladder for
/// half-lines, clipped linspace otherwise.
std::vector<double> axis_probes(const Interval& domain, int n) {
    std::vector<double> out;
    out.reserve(n);
    if (domain.lo == 0.0 && domain.hi == kInf) {
        const double llo = std::log(1e-3), lhi = std::log(1e3);
        for (int i = 0; i < n; ++i)
            out.push_back(std::exp(llo + (i + 0.5) * (lhi - llo) / n));
        return out;
    }
    const double lo = std::max(domain.lo, -64.0);
    const double hi = std::min(domain.hi, 64.0);
    for (int i = 0; i < n; ++i) out.push_back(lo + (i + 0.5) * (hi - lo) / n);
    return out;
}

bool section_visible(const JointModel& model, const Point& x) {
    const BaseMeasure& pb = model.param_base;
    for (std::size_t i = 0; i < pb.atoms.size(); ++i) {
        if (model.param_support && !model.param_support->atom_included(pb, i)) continue;
        if (model.log_joint(x, Point{pb.atoms[i], 0.0}) > -kInf) return true;
    }
    if (model.param_support) {
        // probe inside the declared support, box by box
        for (const Box& b : model.param_support->canonical_on(pb)) {
            const Interval bx{std::max(b.x.lo, -1e6), std::min(b.x.hi, 1e6)};
            const Interval by{std::max(b.y.lo, -1e6), std::min(b.y.hi, 1e6)};
            const int n = pb.dim() == 1 ? 64 : 12;
            for (int i = 0; i < n; ++i) {
                const double px = bx.lo + (i + 0.5) * (bx.hi - bx.lo) / n;
                if (pb.dim() == 1) {
                    if (model.log_joint(x, Point{px, 0.0}) > -kInf) return true;
                    continue;
                }
                for (int j = 0; j < n; ++j) {
                    const double py = by.lo + (j + 0.5) * (by.hi - by.lo) / n;
                    if (model.log_joint(x, Point{px, py}) > -kInf) return true;
                }
            }
        }
        return false;
    }
    if (pb.dim() == 1) {
        for (double t : axis_probes(pb.domain[0], 256))
            if (model.log_joint(x, Point{t, 0.0}) > -kInf) return true;
        return false;
    }
    const auto ps = axis_probes(pb.domain[0], 24);
    const auto qs = axis_probes(pb.domain[1], 24);
    for (double p : ps)
        for (double q : qs)
            if (model.log_joint(x, Point{p, q}) > -kInf) return true;
    return false;
}

} // namespace

RenyiState posterior_state(const JointModel& model, const Point& x) {
    if (!section_visible(model, x))
        throw ZeroMassError("theta-section at x is identically zero: "
                            "conditioning on an impossible observation");
    RenyiState out;
    out.base = model.param_base;
    out.log_density = [lj = model.log_joint, x](const Point& theta) { return lj(x, theta); };
    out.tail = model.param_tail;
    out.support = model.param_support;
    return out;
}

PosteriorClassification classify_posterior(const JointModel& model, const Point& x,
                                           const QuadratureOptions& opts) {
    const RenyiState post = posterior_state(model, x);
    const MassValue m = window_mass(post, WindowSet::whole(model.param_base), opts);
    PosteriorClassification out;
    out.mass = m;
    out.data_marginal_at_x = m;
    if (m.undetermined()) {
        out.verdict = Properness::Undetermined;
    } else if (m.infinite() || m.value <= 0.0) {
        out.verdict = Properness::Improper;
    } else {
        out.verdict = Properness::Proper;
    }
    return out;
}

MarginalResult marginal_state(const RenyiState& joint2d, int keep_axis,
                              const QuadratureOptions& opts) {
    if (joint2d.base.dim() != 2)
        throw DomainMismatchError("marginal_state needs a 2-D base");
    if (keep_axis != 0 && keep_axis != 1)
        throw DomainMismatchError("keep_axis must be 0 or 1");
    const int drop_axis = 1 - keep_axis;
    const Interval kept_domain = joint2d.base.domain[keep_axis];
    const Interval drop_domain = joint2d.base.domain[drop_axis];

    auto inner_log_mass = [joint2d, keep_axis, drop_axis, drop_domain,
                           opts](double kept) -> double {
        detail::Mass1DRequest req;
        req.log_density = [&joint2d, keep_axis, kept](double dropped) {
            Point p;
            p[keep_axis] = kept;
            p[1 - keep_axis] = dropped;
            return joint2d.log_density(p);
        };
        req.box = drop_domain;
        req.domain = drop_domain;
        req.hint = joint2d.tail.axis[drop_axis];
        req.rel_tol = opts.rel_tol;
        EvalBudget budget{0, std::max<std::size_t>(opts.max_evals / 16, 20000)};
        const detail::Mass1DResult r = detail::integrate_mass_1d(req, budget);
        if (r.kind == MassKind::Infinite) return kInf;
        if (r.kind == MassKind::Undetermined)
            throw EvaluationError("marginal density undetermined at kept coordinate");
        return r.log_value;
    };

    MarginalResult res;
    NotSigmaFinite nsf;
    bool prev_infinite = false;
    for (double kept : axis_probes(kept_domain, 64)) {
        double lv;
        try {
            lv = inner_log_mass(kept);
        } catch (const EvaluationError&) {
            res.undetermined_probes.push_back(kept);
            prev_infinite = false;
            continue;
        }
        if (lv == kInf) {
            if (prev_infinite) {
                nsf.divergent_probes.push_back(kept);
            }
            prev_infinite = true;
        } else {
            prev_infinite = false;
        }
    }
    if (!nsf.divergent_probes.empty()) {
        nsf.note = "inner integral diverges on a set of positive extent";
        res.not_sigma_finite = std::move(nsf);
        return res;
    }

    RenyiState marg;
    marg.base = BaseMeasure::lebesgue_line(kept_domain);
    marg.base.kind = MeasureKind::Lebesgue1D;
    marg.log_density = [inner_log_mass](const Point& p) { return inner_log_mass(p[0]); };
    res.state = std::move(marg);
    return res;
}

std::vector<RenyiState> disintegrate_discrete(const RenyiState& state,
                                              std::span<const WindowSet> partition,
                                              const QuadratureOptions& opts) {
    for (std::size_t i = 0; i < partition.size(); ++i)
        for (std::size_t j = i + 1; j < partition.size(); ++j) {
            const WindowSet both = window_intersection(state.base, partition[i], partition[j]);
            if (!both.is_empty_on(state.base))
                throw DomainMismatchError("partition cells overlap");
        }
    std::vector<RenyiState> out;
    out.reserve(partition.size());
    for (const WindowSet& cell : partition) out.push_back(restrict_to(state, cell, opts));
    return out;
}

bool restriction_commutes(const JointModel& model, const Point& x, const WindowSet& b,
                          double tol, const QuadratureOptions& opts) {
    const RenyiState route_a = normalize_on_window(posterior_state(model, x), b, opts);

    JointModel restricted = model;
    const int dim = model.param_base.dim();
    auto window = std::make_shared<const WindowSet>(b);
    restricted.param_support =
        model.param_support
            ? std::make_shared<const WindowSet>(
                  window_intersection(model.param_base, *model.param_support, b))
            : window;
    restricted.log_joint = [lj = model.log_joint, window, dim](const Point& xx,
                                                               const Point& theta) {
        return window->contains(theta, dim) ? lj(xx, theta) : -kInf;
    };
    const RenyiState route_b = posterior_state(restricted, x);

    const WindowSet probes[] = {b};
    return states_equivalent(route_a, route_b, probes, tol);
}

RenyiState sequential_update(const StageModelFactory& factory, RenyiState prior,
                             std::span<const Point> observations) {
    for (std::size_t stage = 0; stage < observations.size(); ++stage) {
        const JointModel model = factory(stage, prior);
        if (!model.param_base.same_as(prior.base))
            throw DomainMismatchError("stage model changed the parameter base");
        prior = posterior_state(model, observations[stage]);
    }
    return prior;
}

PrecisionMatrix::PrecisionMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_)
        throw DomainMismatchError("precision matrix: wrong entry count");
    double scale = 0.0;
    for (double v : entries_) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (std::abs(at(i, j) - at(j, i)) > 1e-12 * std::max(scale, 1.0))
                throw DomainMismatchError("precision matrix not symmetric");
}

PrecisionMatrix PrecisionMatrix::identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return PrecisionMatrix(n, std::move(e));
}

IcarExponent icar_normalization_exponent(const PrecisionMatrix& q, double rank_tol) {
    const auto n = static_cast<Eigen::Index>(q.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = q.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw EvaluationError("eigendecomposition failed");
    const Eigen::VectorXd ev = solver.eigenvalues();
    const double max_ev = ev.size() ? ev.maxCoeff() : 0.0;
    if (ev.size() && ev.minCoeff() < -1e-10 * std::max(max_ev, 1.0))
        throw DomainMismatchError("matrix is not positive semidefinite within tolerance");

    // zero matrix: the whole space is the null space
    const double threshold =
        std::max(rank_tol * max_ev, std::numeric_limits<double>::min());
    IcarExponent out;
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    for (double v : out.eigenvalues)
        if (v < threshold) ++out.null_space_dim;
    out.exponent = 0.5 * (static_cast<double>(q.size()) -
                          static_cast<double>(out.null_space_dim));
    return out;
}

} // namespace renyi
