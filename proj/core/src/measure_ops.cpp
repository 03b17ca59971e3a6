#include "renyi/measure_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "renyi/detail/mass1d.hpp"
#include "renyi/errors.hpp"

namespace renyi {

namespace {

constexpr double kLogDoubleMax = 709.0;
constexpr double kEquivalenceFloor = 30.0; // e^-30 relative density floor

struct Accumulator {
    // log-scaled sum of per-piece masses
    double log_peak = -kInf;
    double scaled_sum = 0.0;
    double scaled_err = 0.0;

    void add(double log_value, double rel_error) {
        if (log_value == -kInf) return;
        if (log_value > log_peak) {
            const double shift = log_peak == -kInf ? 0.0 : std::exp(log_peak - log_value);
            scaled_sum = scaled_sum * shift + 1.0;
            scaled_err = scaled_err * shift + rel_error;
            log_peak = log_value;
        } else {
            const double w = std::exp(log_value - log_peak);
            scaled_sum += w;
            scaled_err += rel_error * w;
        }
    }

    bool empty() const { return log_peak == -kInf || scaled_sum <= 0.0; }
    double log_total() const { return empty() ? -kInf : log_peak + std::log(scaled_sum); }
    double rel_error() const { return empty() ? 0.0 : scaled_err / scaled_sum; }
};

AxisTail axis_hint(const RenyiState& state, int axis) { return state.tail.axis[axis]; }

/// Mass of the counting part: integer lattice points inside the window.
MassValue counting_mass(const RenyiState& state, const WindowSet& w,
                        const QuadratureOptions& opts) {
    EvalBudget budget{0, opts.max_evals};
    Accumulator acc;
    for (const Box& b : w.canonical_on(state.base)) {
        const double lo = std::ceil(std::max(b.x.lo, 0.0));
        auto term = [&](double k) -> double {
            if (!w.contains(Point{k, 0.0}, 1)) return -kInf;
            ++budget.used;
            const double ld = state.log_density(Point{k, 0.0});
            if (std::isnan(ld)) throw EvaluationError("log density NaN at integer point");
            return ld;
        };
        if (b.x.hi < kInf) {
            for (double k = lo; k <= b.x.hi; k += 1.0) {
                const double ld = term(k);
                if (ld == kInf) return MassValue::infinite_value("infinite term", budget.used);
                acc.add(ld, 0.0);
                if (budget.exhausted())
                    return MassValue::undetermined_value("term budget exhausted", budget.used);
            }
            continue;
        }
        // unbounded integer tail: geometric blocks with the usual classifier
        const AxisTail hint = axis_hint(state, 0);
        if (b.x.hi >= state.base.domain[0].hi && hint.toward_hi) {
            const TailBehavior& t = *hint.toward_hi;
            const bool conv = t.exp_rate > 0.0 || (t.exp_rate == 0.0 && t.power < -1.0);
            if (!conv) return MassValue::infinite_value("tail hint: divergent series", budget.used);
        }
        Accumulator tail_acc;
        auto block = [&](int j) {
            const double from = lo + 64.0 * (std::ldexp(1.0, j) - 1.0);
            const double to = lo + 64.0 * (std::ldexp(1.0, j + 1) - 1.0);
            Integral seg;
            seg.converged = true;
            for (double k = from; k < to; k += 1.0) {
                const double ld = term(k);
                if (ld == kInf) throw EvaluationError("infinite term in series");
                if (ld > -kInf) seg.value += std::exp(std::min(ld, kLogDoubleMax));
                if (budget.exhausted()) {
                    seg.converged = false;
                    break;
                }
            }
            return seg;
        };
        LimitSum s = sum_limit(block, opts.rel_tol, 0.0, budget, 3,
                               b.x.hi >= state.base.domain[0].hi && hint.toward_hi.has_value());
        if (s.cls == LimitClass::Diverged)
            return MassValue::infinite_value("series diverges", budget.used);
        if (s.cls == LimitClass::Undetermined)
            return MassValue::undetermined_value(std::string("series: ") + std::string(s.reason),
                                                 budget.used);
        if (s.value > 0.0) acc.add(std::log(s.value), s.abs_error / s.value);
    }
    if (acc.empty()) return MassValue::finite_value(0.0, 0.0, budget.used);
    const double lv = acc.log_total();
    if (lv > kLogDoubleMax) return MassValue::infinite_value("mass exceeds double range", budget.used);
    return MassValue::finite_value(std::exp(lv), acc.rel_error(), budget.used);
}

/// Splits a 1-D interval at interior atom points so quadrature never lands on
/// them (atom values encode atom masses, not Lebesgue density).
std::vector<Interval> split_at_atoms(Interval iv, const std::vector<double>& atoms) {
    std::vector<double> cuts;
    for (double a : atoms)
        if (iv.lo < a && a < iv.hi) cuts.push_back(a);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Interval> out;
    double lo = iv.lo;
    for (double c : cuts) {
        out.push_back({lo, c});
        lo = c;
    }
    out.push_back({lo, iv.hi});
    return out;
}

detail::Mass1DResult lebesgue_mass_2d_box(const RenyiState& state, const Box& box,
                                          const QuadratureOptions& opts, EvalBudget& budget);

} // namespace

MassValue window_mass(const RenyiState& state, const WindowSet& w_in,
                      const QuadratureOptions& opts) {
    state.base.validate();
    w_in.validate_for(state.base);
    EvalBudget budget{0, opts.max_evals};

    // a known support clips the integration region away from its own edge
    const WindowSet w =
        state.support ? window_intersection(state.base, w_in, *state.support) : w_in;

    Accumulator acc;
    // atoms first: their masses are plain density evaluations
    for (std::size_t i = 0; i < state.base.atoms.size(); ++i) {
        if (!w.atom_included(state.base, i)) continue;
        const double ld = state.log_density(Point{state.base.atoms[i], 0.0});
        ++budget.used;
        if (std::isnan(ld)) throw EvaluationError("log density NaN at atom");
        if (ld == kInf) return MassValue::infinite_value("atom of infinite mass", budget.used);
        acc.add(ld, 0.0);
    }

    if (state.base.kind == MeasureKind::CountingNonnegInt) {
        MassValue mv = counting_mass(state, w, opts);
        if (!mv.finite()) return mv;
        if (mv.value > 0.0) acc.add(std::log(mv.value), mv.rel_error);
        if (acc.empty()) return MassValue::finite_value(0.0, 0.0, mv.evals);
        const double lv = acc.log_total();
        if (lv > kLogDoubleMax)
            return MassValue::infinite_value("mass exceeds double range", mv.evals);
        return MassValue::finite_value(std::exp(lv), acc.rel_error(), mv.evals);
    }

    try {
        if (state.base.dim() == 1) {
            for (const Box& b : w.canonical_on(state.base)) {
                for (const Interval& piece : split_at_atoms(b.x, state.base.atoms)) {
                    detail::Mass1DRequest req;
                    req.log_density = [&state](double x) {
                        return state.log_density(Point{x, 0.0});
                    };
                    req.box = piece;
                    req.domain = state.base.domain[0];
                    req.hint = axis_hint(state, 0);
                    req.avoid = state.base.atoms;
                    req.rel_tol = opts.rel_tol;
                    detail::Mass1DResult r = detail::integrate_mass_1d(req, budget);
                    if (r.kind == MassKind::Infinite)
                        return MassValue::infinite_value(r.note, budget.used);
                    if (r.kind == MassKind::Undetermined)
                        return MassValue::undetermined_value(r.note, budget.used);
                    acc.add(r.log_value, r.rel_error);
                }
            }
        } else {
            for (const Box& b : w.canonical_on(state.base)) {
                detail::Mass1DResult r = lebesgue_mass_2d_box(state, b, opts, budget);
                if (r.kind == MassKind::Infinite)
                    return MassValue::infinite_value(r.note, budget.used);
                if (r.kind == MassKind::Undetermined)
                    return MassValue::undetermined_value(r.note, budget.used);
                acc.add(r.log_value, r.rel_error);
            }
        }
    } catch (const detail::InnerUndetermined& iu) {
        return MassValue::undetermined_value(iu.note, budget.used);
    }

    if (acc.empty()) return MassValue::finite_value(0.0, 0.0, budget.used);
    const double lv = acc.log_total();
    if (lv > kLogDoubleMax)
        return MassValue::infinite_value("mass exceeds double range", budget.used);
    return MassValue::finite_value(std::exp(lv), std::max(acc.rel_error(), 0.0), budget.used);
}

namespace {

detail::Mass1DResult lebesgue_mass_2d_box(const RenyiState& state, const Box& box,
                                          const QuadratureOptions& opts, EvalBudget& budget) {
    // nested 1-D: the outer integrand is the log inner mass along y
    detail::Mass1DRequest outer;
    outer.box = box.x;
    outer.domain = state.base.domain[0];
    outer.hint = axis_hint(state, 0);
    outer.rel_tol = opts.rel_tol;
    outer.log_density = [&state, &box, &opts, &budget](double x) -> double {
        detail::Mass1DRequest inner;
        inner.log_density = [&state, x](double y) { return state.log_density(Point{x, y}); };
        inner.box = box.y;
        inner.domain = state.base.domain[1];
        inner.hint = axis_hint(state, 1);
        inner.rel_tol = opts.rel_tol * 0.5;
        detail::Mass1DResult r = detail::integrate_mass_1d(inner, budget);
        if (r.kind == MassKind::Infinite) return kInf;
        if (r.kind == MassKind::Undetermined) {
            // starvation under a budget watermark ends the outer pass; a
            // genuine classification failure is the whole answer
            if (budget.exhausted()) throw PassAborted{};
            throw detail::InnerUndetermined{std::string("inner integral: ") + r.note};
        }
        return r.log_value;
    };
    return detail::integrate_mass_1d(outer, budget);
}

MassValue mass_for_condition(const RenyiState& state, const WindowSet& b,
                             const QuadratureOptions& opts) {
    return window_mass(state, b, opts);
}

ElementaryFailure failure_of(const MassValue& m) {
    if (m.infinite()) return ElementaryFailure::InfiniteMass;
    if (m.undetermined()) return ElementaryFailure::Undetermined;
    return ElementaryFailure::ZeroMass;
}

} // namespace

Tristate is_elementary(const RenyiState& state, const WindowSet& w,
                       const QuadratureOptions& opts) {
    const MassValue m = window_mass(state, w, opts);
    if (m.undetermined()) return Tristate::Undetermined;
    if (m.infinite()) return Tristate::False;
    return m.value > 0.0 ? Tristate::True : Tristate::False;
}

double conditional_probability(const RenyiState& state, const WindowSet& a,
                               const WindowSet& b, const QuadratureOptions& opts) {
    const MassValue mb = mass_for_condition(state, b, opts);
    if (!(mb.finite() && mb.value > 0.0))
        throw NotElementaryError(failure_of(mb),
                                 std::string("conditioning window is not elementary: ") +
                                     to_string(failure_of(mb)));
    const WindowSet ab = window_intersection(state.base, a, b);
    const MassValue ma = window_mass(state, ab, opts);
    if (ma.undetermined()) throw UndeterminedError("mass of A and B undetermined: " + ma.note);
    if (ma.infinite())
        throw UndeterminedError("mass of A and B reported infinite inside a finite window");
    return std::clamp(ma.value / mb.value, 0.0, 1.0);
}

RenyiState restrict_to(const RenyiState& state, const WindowSet& b,
                       const QuadratureOptions& opts) {
    const MassValue mb = window_mass(state, b, opts);
    if (mb.undetermined())
        throw UndeterminedError("cannot certify positive mass of the window: " + mb.note);
    if (mb.finite() && mb.value <= 0.0)
        throw ZeroMassError("conditional is not defined on a null window");

    const int dim = state.base.dim();
    const BaseMeasure& base = state.base;
    auto flags = base.atoms.empty() ? std::vector<bool>{} : b.resolved_atom_flags(base);
    auto window = std::make_shared<WindowSet>(b);

    RenyiState out;
    out.base = base;
    out.support = std::make_shared<const WindowSet>(
        state.support ? window_intersection(base, *state.support, b) : b);
    out.log_density = [f = state.log_density, window, flags, base, dim](const Point& p) {
        for (std::size_t i = 0; i < base.atoms.size(); ++i)
            if (p[0] == base.atoms[i]) return flags[i] ? f(p) : -kInf;
        return window->contains(p, dim) ? f(p) : -kInf;
    };
    // keep tail hints only toward ends the window still reaches
    out.tail = state.tail;
    const std::vector<Box> boxes = b.canonical_on(base);
    for (int axis = 0; axis < dim; ++axis) {
        bool reach_lo = false, reach_hi = false;
        for (const Box& bx : boxes) {
            const Interval iv = axis == 0 ? bx.x : bx.y;
            reach_lo |= iv.lo <= base.domain[axis].lo;
            reach_hi |= iv.hi >= base.domain[axis].hi;
        }
        if (!reach_lo) out.tail.axis[axis].toward_lo.reset();
        if (!reach_hi) out.tail.axis[axis].toward_hi.reset();
    }
    return out;
}

RenyiState normalize_on_window(const RenyiState& state, const WindowSet& b,
                               const QuadratureOptions& opts) {
    const MassValue mb = window_mass(state, b, opts);
    if (!(mb.finite() && mb.value > 0.0))
        throw NotElementaryError(failure_of(mb),
                                 std::string("window is not elementary: ") +
                                     to_string(failure_of(mb)));
    return restrict_to(state, b, opts).scaled(-std::log(mb.value));
}

namespace {

std::vector<Point> probe_grid(const BaseMeasure& base, const WindowSet& w) {
    constexpr double kClip = 1e3; // finite stand-in for unbounded probe boxes
    std::vector<Point> pts;
    const int dim = base.dim();
    for (const Box& b : w.canonical_on(base)) {
        Interval x{std::max(b.x.lo, -kClip), std::min(b.x.hi, kClip)};
        Interval y{std::max(b.y.lo, -kClip), std::min(b.y.hi, kClip)};
        if (x.hi <= x.lo) continue;
        if (dim == 1) {
            const int n = 16;
            for (int i = 0; i < n; ++i) {
                const double v = x.lo + (i + 0.5) * (x.hi - x.lo) / n;
                Point p{v, 0.0};
                bool at_atom = false;
                for (double a : base.atoms) at_atom |= v == a;
                if (!at_atom && w.contains(p, 1)) pts.push_back(p);
            }
        } else {
            if (y.hi <= y.lo) continue;
            const int n = 6;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Point p{x.lo + (i + 0.5) * (x.hi - x.lo) / n,
                            y.lo + (j + 0.5) * (y.hi - y.lo) / n};
                    if (w.contains(p, 2)) pts.push_back(p);
                }
        }
    }
    for (std::size_t i = 0; i < base.atoms.size(); ++i)
        if (w.atom_included(base, i)) pts.push_back(Point{base.atoms[i], 0.0});
    return pts;
}

} // namespace

bool states_equivalent(const RenyiState& s1, const RenyiState& s2,
                       std::span<const WindowSet> probe_windows, double tol,
                       EquivalenceDiagnostics* diag) {
    if (!s1.base.same_as(s2.base))
        throw DomainMismatchError("states live on different base measures");

    std::vector<double> l1, l2;
    for (const WindowSet& w : probe_windows) {
        for (const Point& p : probe_grid(s1.base, w)) {
            const double a = s1.log_density(p), b = s2.log_density(p);
            if (std::isnan(a) || std::isnan(b))
                throw EvaluationError("log density NaN on probe grid");
            l1.push_back(a);
            l2.push_back(b);
        }
    }
    double m1 = -kInf, m2 = -kInf;
    for (double v : l1) m1 = std::max(m1, v);
    for (double v : l2) m2 = std::max(m2, v);

    std::vector<double> diffs;
    for (std::size_t i = 0; i < l1.size(); ++i) {
        if (l1[i] < m1 - kEquivalenceFloor || l2[i] < m2 - kEquivalenceFloor) continue;
        diffs.push_back(l1[i] - l2[i]);
    }
    if (diffs.empty()) {
        if (diag) diag->note = "no probe point carries both densities (disjoint supports?)";
        return false;
    }
    double mean = 0.0;
    for (double d : diffs) mean += d;
    mean /= static_cast<double>(diffs.size());
    double var = 0.0;
    for (double d : diffs) var += (d - mean) * (d - mean);
    const double sd = std::sqrt(var / static_cast<double>(diffs.size()));
    if (diag) {
        diag->points_used = diffs.size();
        diag->log_ratio_sd = sd;
        diag->log_ratio_mean = mean;
    }
    return sd < tol;
}

BunchReport check_bunch_axioms(const RenyiState& state, std::span<const WindowSet> family,
                               const WindowSet& cover_target, const QuadratureOptions& opts) {
    BunchReport rep;
    const BaseMeasure& base = state.base;

    rep.axiom_no_empty = true;
    for (const WindowSet& w : family)
        if (w.is_empty_on(base)) {
            rep.axiom_no_empty = false;
            rep.notes.push_back("axiom (i): family contains the empty window");
        }

    rep.all_members_elementary = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const Tristate e = is_elementary(state, family[i], opts);
        if (e != Tristate::True) {
            rep.all_members_elementary = false;
            rep.notes.push_back("member " + std::to_string(i) + " is not elementary");
        }
    }

    rep.axiom_union_closed = true;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            const WindowSet u = window_union(base, family[i], family[j]);
            bool found = false;
            for (const WindowSet& w : family)
                if (windows_equal(base, u, w)) {
                    found = true;
                    break;
                }
            if (!found) {
                rep.axiom_union_closed = false;
                std::ostringstream os;
                os << "axiom (ii): union of members " << i << " and " << j
                   << " is outside the family";
                rep.notes.push_back(os.str());
            }
        }

    WindowSet all = family.empty() ? WindowSet::empty() : family[0];
    for (std::size_t i = 1; i < family.size(); ++i) all = window_union(base, all, family[i]);
    rep.axiom_cover = !family.empty() && window_subset(base, cover_target, all);
    if (!rep.axiom_cover) rep.notes.push_back("axiom (iii): family does not cover the target");

    rep.positivity = true;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (i == j || !window_subset(base, family[i], family[j])) continue;
            try {
                if (conditional_probability(state, family[i], family[j], opts) <= 0.0) {
                    rep.positivity = false;
                    rep.notes.push_back("P(B" + std::to_string(i) + "|B" + std::to_string(j) +
                                        ") = 0");
                }
            } catch (const RenyiError&) {
                rep.positivity = false;
                rep.notes.push_back("positivity check failed on nested pair");
            }
        }
    return rep;
}

bool check_consistency(const RenyiState& state, const WindowSet& a, const WindowSet& b1,
                       const WindowSet& b2, double tol, const QuadratureOptions& opts) {
    if (!window_subset(state.base, b1, b2))
        throw DomainMismatchError("consistency check requires B1 inside B2");
    const double lhs = conditional_probability(state, a, b1, opts);
    const WindowSet ab1 = window_intersection(state.base, a, b1);
    const double num = conditional_probability(state, ab1, b2, opts);
    const double den = conditional_probability(state, b1, b2, opts);
    if (den <= 0.0) throw ZeroMassError("P(B1|B2) vanished in consistency check");
    return std::abs(lhs - num / den) < tol;
}

QVagueReport q_vague_limit_check(const std::function<RenyiState(int)>& sequence,
                                 const RenyiState& limit, const WindowSet& ref_window,
                                 std::span<const WindowSet> probe_windows,
                                 std::span<const int> schedule, double tol,
                                 const QuadratureOptions& opts) {
    QVagueReport rep;
    rep.schedule.assign(schedule.begin(), schedule.end());

    const MassValue ref_limit = window_mass(limit, ref_window, opts);
    if (!(ref_limit.finite() && ref_limit.value > 0.0))
        throw NotElementaryError(failure_of(ref_limit),
                                 "reference window is not elementary for the limit state");

    std::vector<RenyiState> members;
    members.reserve(schedule.size());
    for (int n : schedule) members.push_back(sequence(n));

    rep.scale_factors.assign(schedule.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < members.size(); ++k) {
        const MassValue m = window_mass(members[k], ref_window, opts);
        if (m.finite() && m.value > 0.0) {
            rep.scale_factors[k] = ref_limit.value / m.value;
        } else {
            rep.flagged_indices.push_back(rep.schedule[k]);
        }
    }

    rep.converged = true;
    for (const WindowSet& probe : probe_windows) {
        QVagueProbeRow row;
        row.window = probe.describe();
        const MassValue lm = window_mass(limit, probe, opts);
        if (!lm.finite()) {
            row.within_tol = false;
            rep.converged = false;
            rep.probes.push_back(std::move(row));
            continue;
        }
        row.limit_mass = lm.value;
        for (std::size_t k = 0; k < members.size(); ++k) {
            if (std::isnan(rep.scale_factors[k])) {
                row.scaled_masses.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            const MassValue m = window_mass(members[k], probe, opts);
            row.scaled_masses.push_back(m.finite() ? rep.scale_factors[k] * m.value
                                                   : std::numeric_limits<double>::quiet_NaN());
        }
        // tail monotonicity of |scaled - limit| over the last half of the schedule
        row.monotone_tail = true;
        const std::size_t from = row.scaled_masses.size() / 2;
        for (std::size_t k = from + 1; k < row.scaled_masses.size(); ++k) {
            const double prev = std::abs(row.scaled_masses[k - 1] - row.limit_mass);
            const double cur = std::abs(row.scaled_masses[k] - row.limit_mass);
            if (std::isnan(cur) || cur > prev * 1.05 + 1e-14) row.monotone_tail = false;
        }
        const double last = row.scaled_masses.empty()
                                ? std::numeric_limits<double>::quiet_NaN()
                                : row.scaled_masses.back();
        row.within_tol = !std::isnan(last) &&
                         std::abs(last - row.limit_mass) <=
                             tol * std::max(1.0, std::abs(row.limit_mass));
        if (!(row.monotone_tail && row.within_tol)) rep.converged = false;
        rep.probes.push_back(std::move(row));
    }
    return rep;
}

} // namespace renyi
