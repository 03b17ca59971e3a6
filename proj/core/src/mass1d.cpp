#include "renyi/detail/mass1d.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "renyi/errors.hpp"

namespace renyi::detail {

namespace {

constexpr double kLogDoubleMax = 709.0;
constexpr double kAbsTiny = 1e-300;

enum class EndKind { None, ToInfinity, ToEdge };

struct AxisChart {
    bool log_space = false; // u = log(x) on half-line domains
    double to_raw(double t) const { return log_space ? std::exp(t) : t; }
    double from_raw(double x) const { return log_space ? std::log(x) : x; }
    double log_jacobian(double t) const { return log_space ? t : 0.0; }
};

/// Convergence verdict from an analytic tail declaration.
/// at_infinite_end: density ~ C x^p exp(-r x); finite edge: ~ C (x-e)^p.
bool hint_converges(const TailBehavior& t, bool infinite_end) {
    if (t.exp_rate > 0.0) return true;
    if (t.exp_rate < 0.0) return false;
    return infinite_end ? t.power < -1.0 : t.power > -1.0;
}

struct ScaledIntegrand {
    const Mass1DRequest* req;
    const AxisChart* chart;
    double scale; // log offset subtracted before exponentiation

    double operator()(double t) const {
        const double x = chart->to_raw(t);
        for (double a : req->avoid)
            if (x == a) return 0.0; // atom point: Lebesgue part by continuity
        const double ld = req->log_density(x) + chart->log_jacobian(t);
        if (std::isnan(ld)) throw EvaluationError("log density evaluated to NaN");
        if (ld == kInf) return kInf; // integrate_adaptive flags the blow-up
        return std::exp(ld - scale);
    }
};

struct Prescan {
    double peak_at = 0.0;
    double peak_log = -kInf;
    double support_lo = 0.0; // range of points within 40 log-units of the peak
    double support_hi = 0.0;
    double peak_width = 0.0; // visible scale of the bulk around the peak
    std::vector<double> infinite_at;
};

constexpr double kSupportDrop = 40.0;

Prescan prescan(const Mass1DRequest& req, const AxisChart& chart, double lo, double hi,
                EvalBudget& budget) {
    Prescan out;
    double a = lo, b = hi;
    const bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);
    double ra = lo_inf ? (hi_inf ? -48.0 : b - 96.0) : a;
    double rb = hi_inf ? (lo_inf ? 48.0 : a + 96.0) : b;
    if (!(ra < rb)) {
        ra = std::min(a, b);
        rb = std::max(a, b);
    }

    std::vector<std::pair<double, double>> seen; // (t, log density)
    auto look = [&](double t) {
        if (t <= lo || t >= hi) return;
        if (chart.log_space && std::abs(t) > 688.0) return; // exp(t) leaves double range
        const double x = chart.to_raw(t);
        for (double av : req.avoid)
            if (x == av) return;
        ++budget.used;
        const double ld = req.log_density(x) + chart.log_jacobian(t);
        if (std::isnan(ld)) throw EvaluationError("log density evaluated to NaN");
        if (ld == kInf) {
            out.infinite_at.push_back(t);
            return;
        }
        seen.emplace_back(t, ld);
    };

    // dense scan of the finite reference range, geometric ladders beyond it
    int n = 65;
    for (int round = 0; round < 3; ++round) {
        for (int i = 0; i < n; ++i) look(ra + (i + 0.5) * (rb - ra) / n);
        for (int k = 0; k < 44 && lo_inf; ++k) look(ra - std::ldexp(1.0, k));
        for (int k = 0; k < 44 && hi_inf; ++k) look(rb + std::ldexp(1.0, k));
        bool visible = false;
        for (const auto& [t, ld] : seen) visible |= ld > -kInf;
        if (visible || !out.infinite_at.empty()) break;
        n *= 8; // nothing visible yet: refine before concluding the box is empty
    }

    bool have_peak = false;
    for (const auto& [t, ld] : seen) {
        if (!have_peak || ld > out.peak_log) {
            out.peak_log = ld;
            out.peak_at = t;
            have_peak = true;
        }
    }
    if (!have_peak) {
        out.peak_at = 0.5 * (std::max(ra, lo) + std::min(rb, hi));
        out.support_lo = out.support_hi = out.peak_at;
        return out;
    }
    out.support_lo = out.support_hi = out.peak_at;
    for (const auto& [t, ld] : seen) {
        if (ld < out.peak_log - kSupportDrop) continue;
        out.support_lo = std::min(out.support_lo, t);
        out.support_hi = std::max(out.support_hi, t);
    }
    // bulk scale: extent of points within 5 log-units of the peak, floored by
    // the nearest sampled neighbor (an isolated spike is known no finer)
    double bulk_lo = out.peak_at, bulk_hi = out.peak_at;
    double nearest = kInf;
    for (const auto& [t, ld] : seen) {
        if (ld >= out.peak_log - 5.0) {
            bulk_lo = std::min(bulk_lo, t);
            bulk_hi = std::max(bulk_hi, t);
        }
        if (t != out.peak_at) nearest = std::min(nearest, std::abs(t - out.peak_at));
    }
    out.peak_width = std::max(bulk_hi - bulk_lo, std::isfinite(nearest) ? nearest : 0.0);
    return out;
}

/// Panel error estimates saturate near singular points (integrand noise from
/// cancellation); a stalled segment whose residual error is still small
/// relative to the target is accepted, with the residual kept in the budget.
void accept_if_bounded(Integral& r, double abs_tol) {
    if (!r.converged && std::isfinite(r.abs_error) && r.abs_error <= 32.0 * abs_tol)
        r.converged = true;
}

Integral side_pair(const ScaledIntegrand& f, double left_a, double left_b, double right_a,
                   double right_b, double rel_tol, EvalBudget& budget, double abs_tol = 0.0) {
    Integral l = integrate_adaptive(f, left_a, left_b, rel_tol, budget, abs_tol);
    Integral r = integrate_adaptive(f, right_a, right_b, rel_tol, budget, abs_tol);
    Integral out;
    out.value = l.value + r.value;
    out.abs_error = l.abs_error + r.abs_error;
    out.converged = l.converged && r.converged;
    if (!l.converged) out.suspect_point = l.suspect_point;
    if (!r.converged) out.suspect_point = r.suspect_point;
    return out;
}

/// Narrows a density blow-up location by hill climbing, so deleted
/// neighborhoods can be centered on it down to floating resolution. The climb
/// runs on a budget slice: nested integrands make each probe expensive, and a
/// partially narrowed location still serves the shrink test.
double localize_singularity(const ScaledIntegrand& f, double s, double lo, double hi,
                            EvalBudget& budget) {
    // nested integrands bill the shared budget from inside f, so the cap
    // watches the total spent since entry
    const std::size_t entry = budget.used;
    const std::size_t cap = std::min<std::size_t>(budget.left() / 4, 32768);
    double w = 0.125 * (hi - lo);
    for (int round = 0; round < 80 && budget.used - entry < cap; ++round) {
        const double a = std::max(lo, s - w), b = std::min(hi, s + w);
        if (!(a < b)) break;
        double best = -1.0, best_at = s;
        for (int i = 1; i < 16; ++i) {
            const double t = a + i * (b - a) / 16.0;
            ++budget.used;
            double v;
            try {
                v = f(t);
            } catch (...) {
                v = kInf; // blow-up right here
            }
            if (v > best) {
                best = v;
                best_at = t;
            }
        }
        s = best_at;
        w /= 6.0;
        if (w <= 8.0 * std::abs(s) * std::numeric_limits<double>::epsilon() + 1e-300) break;
    }
    return s;
}

} // namespace

Mass1DResult integrate_mass_1d(const Mass1DRequest& req, EvalBudget& budget) {
    Mass1DResult res;
    if (req.box.hi <= req.box.lo) {
        res.kind = MassKind::Finite;
        return res;
    }

    AxisChart chart;
    chart.log_space = req.domain.lo == 0.0 && req.domain.hi == kInf;

    const double A = chart.log_space
                         ? (req.box.lo <= 0.0 ? -kInf : std::log(req.box.lo))
                         : req.box.lo;
    const double B = chart.log_space
                         ? (req.box.hi == kInf ? kInf : std::log(req.box.hi))
                         : req.box.hi;

    const bool reaches_lo = req.box.lo <= req.domain.lo;
    const bool reaches_hi = req.box.hi >= req.domain.hi;

    EndKind left = EndKind::None, right = EndKind::None;
    if (std::isinf(A)) left = EndKind::ToInfinity;
    else if (reaches_lo && !chart.log_space) left = EndKind::ToEdge;
    if (std::isinf(B)) right = EndKind::ToInfinity;
    else if (reaches_hi && !chart.log_space) right = EndKind::ToEdge;

    // analytic tail hints are authoritative where the box reaches the edge
    if (reaches_lo && req.hint.toward_lo &&
        !hint_converges(*req.hint.toward_lo, std::isinf(req.domain.lo))) {
        res.kind = MassKind::Infinite;
        res.note = "tail hint: divergent toward lower edge";
        return res;
    }
    if (reaches_hi && req.hint.toward_hi &&
        !hint_converges(*req.hint.toward_hi, std::isinf(req.domain.hi))) {
        res.kind = MassKind::Infinite;
        res.note = "tail hint: divergent toward upper edge";
        return res;
    }
    const bool trust_lo = reaches_lo && req.hint.toward_lo.has_value();
    const bool trust_hi = reaches_hi && req.hint.toward_hi.has_value();

    const Prescan scan = prescan(req, chart, A, B, budget);
    if (scan.infinite_at.size() >= 2) {
        res.kind = MassKind::Infinite;
        res.note = "density infinite on a set of positive extent";
        return res;
    }

    const double scale = std::isfinite(scan.peak_log) ? scan.peak_log : 0.0;
    const ScaledIntegrand f{&req, &chart, scale};

    // core interval covering the visible density bulk, pulled inside limit
    // ends; the progressive ends then start past the shoulder, so their
    // increments reflect tail behavior rather than bulk growth
    double lo0 = A, hi0 = B;
    const double span = (std::isfinite(A) && std::isfinite(B)) ? (B - A) : 8.0;
    if (left == EndKind::ToInfinity) lo0 = scan.support_lo - 2.0;
    if (left == EndKind::ToEdge) lo0 = A + 0.125 * span;
    if (right == EndKind::ToInfinity) hi0 = scan.support_hi + 2.0;
    if (right == EndKind::ToEdge) hi0 = B - 0.125 * span;
    if (chart.log_space) {
        // leave runway before the exp() representability wall at |t| = 688
        lo0 = std::max(lo0, -600.0);
        hi0 = std::min(hi0, 600.0);
    }
    lo0 = std::min(lo0, scan.peak_at);
    hi0 = std::max(hi0, scan.peak_at);
    lo0 = std::max(lo0, A);
    hi0 = std::min(hi0, B);
    if (!(lo0 < hi0)) {
        lo0 = std::isfinite(A) ? A : scan.peak_at - 2.0;
        hi0 = std::isfinite(B) ? B : scan.peak_at + 2.0;
    }

    double total = 0.0, abs_err = 0.0;

    // the first pass gets a slice of the budget so a failed core attempt
    // still leaves room for the singularity probe and the ends
    // when the core dwarfs the visible bulk, seed panels geometrically around
    // the peak; a single wide panel's nodes would step right over it
    std::vector<double> cuts{lo0, hi0};
    if (scan.peak_width > 0.0 && hi0 - lo0 > 200.0 * scan.peak_width) {
        for (double w = scan.peak_width; w < hi0 - lo0; w *= 4.0) {
            if (scan.peak_at - w > lo0) cuts.push_back(scan.peak_at - w);
            if (scan.peak_at + w < hi0) cuts.push_back(scan.peak_at + w);
        }
        std::sort(cuts.begin(), cuts.end());
    }
    // the attempt spends against the shared budget (nested integrands bill it
    // from inside f), held back by a watermark so a failure leaves room for
    // the singularity probe and the ends
    const std::size_t core_slice =
        std::max(budget.left() / 4, std::min<std::size_t>(4096, budget.left()));
    const std::size_t saved_cap = budget.cap;
    budget.cap = std::min(saved_cap, budget.used + core_slice);
    Integral core = integrate_adaptive_pieces(f, cuts, req.rel_tol, budget);
    budget.cap = saved_cap;
    // nested integrands carry the inner pass's noise; a stall within a small
    // multiple of the target is a result, not a failure
    if (!core.converged && std::isfinite(core.abs_error) &&
        core.abs_error <= 32.0 * req.rel_tol * std::max(std::abs(core.value), kAbsTiny)) {
        core.converged = true;
        core.suspect_point.reset();
    }
    std::optional<double> singular = core.converged ? std::nullopt : core.suspect_point;
    if (!scan.infinite_at.empty()) singular = scan.infinite_at.front();

    if (!core.converged || singular) {
        if (!singular) {
            res.kind = MassKind::Undetermined;
            res.note = "core quadrature did not converge within budget";
            return res;
        }
        // deleted-neighborhood probe around the blow-up
        const double s =
            localize_singularity(f, std::clamp(*singular, lo0, hi0), lo0, hi0, budget);
        double w0 = std::min({s - lo0, hi0 - s, 0.125 * (hi0 - lo0)});
        const bool one_sided_left = s - lo0 <= 0.0;  // blow-up at the core edge
        const bool one_sided_right = hi0 - s <= 0.0;
        if (w0 <= 0.0) w0 = 0.125 * (hi0 - lo0);
        // panels fan out geometrically from the singular point, so the whole
        // profile of the blow-up stays visible to the error estimates
        auto fan = [&](double from, double to, bool outward_right) {
            std::vector<double> cs{from, to};
            const double origin = outward_right ? from : to;
            for (double w = w0; w < std::abs(to - from); w *= 4.0) {
                const double c = outward_right ? origin + w : origin - w;
                if (c > from && c < to) cs.push_back(c);
            }
            std::sort(cs.begin(), cs.end());
            return cs;
        };
        auto probe_base = [&](double tol) {
            Integral bl = one_sided_left
                              ? Integral{0.0, 0.0, true, std::nullopt}
                              : integrate_adaptive_pieces(f, fan(lo0, s - w0, false), tol,
                                                          budget);
            Integral br = one_sided_right
                              ? Integral{0.0, 0.0, true, std::nullopt}
                              : integrate_adaptive_pieces(f, fan(s + w0, hi0, true), tol,
                                                          budget);
            Integral b;
            b.value = bl.value + br.value;
            b.abs_error = bl.abs_error + br.abs_error;
            b.converged = bl.converged && br.converged;
            return b;
        };
        auto probe_rings = [&](double tol, double baseline) {
            const double ring_abs_tol = 0.125 * tol * (std::abs(baseline) + kAbsTiny);
            auto shrink = [&, ring_abs_tol](int k) {
                const double wa = std::ldexp(w0, -k), wb = std::ldexp(w0, -(k + 1));
                // one stuck ring must not starve the rest of the probe
                const std::size_t outer_cap = budget.cap;
                budget.cap = std::min(outer_cap,
                                      budget.used + std::min<std::size_t>(budget.left(), 65536));
                Integral r =
                    side_pair(f, one_sided_left ? s : s - wa, one_sided_left ? s : s - wb,
                              one_sided_right ? s : s + wb, one_sided_right ? s : s + wa,
                              tol, budget, ring_abs_tol);
                budget.cap = outer_cap;
                accept_if_bounded(r, ring_abs_tol);
                return r;
            };
            return sum_limit(shrink, tol, baseline, budget);
        };

        // classify coarsely first: divergence only needs the shape of the
        // ring increments, so the expensive base integral waits until the
        // singularity is known integrable. The failed core attempt's partial
        // value is no scale reference; the rings stand on their own.
        const double coarse = std::max(req.rel_tol, 1e-4);
        LimitSum ring = probe_rings(coarse, 0.0);
        if (ring.cls == LimitClass::Diverged) {
            res.kind = MassKind::Infinite;
            res.note = "non-integrable singularity";
            return res;
        }
        if (ring.cls == LimitClass::Undetermined) {
            res.kind = MassKind::Undetermined;
            res.note = std::string("singularity probe: ") += ring.reason;
            return res;
        }
        Integral base = probe_base(req.rel_tol);
        if (!base.converged) {
            res.kind = MassKind::Undetermined;
            res.note = "mass away from the singular point did not converge";
            return res;
        }
        LimitSum fine_ring = probe_rings(req.rel_tol, base.value);
        if (fine_ring.cls == LimitClass::Converged) ring = fine_ring;
        total = base.value + ring.value;
        abs_err = base.abs_error + ring.abs_error;
    } else {
        total = core.value;
        abs_err = core.abs_error;
    }

    // progressive ends; in log space the step stays small so several live
    // segments fit between the core and the representability wall
    double step = std::max(1.0, 0.25 * (hi0 - lo0));
    if (chart.log_space) step = std::min(step, 4.0);
    const int min_segments = total * std::exp(std::min(scale, kLogDoubleMax)) > 0.0 ? 3 : 24;

    auto run_end = [&](bool is_left, EndKind kind, bool trusted) -> bool {
        if (kind == EndKind::None) return true;
        bool range_truncated = false;
        double prev_increment = 0.0;
        const double live_floor = 0.25 * req.rel_tol * (std::abs(total) + kAbsTiny);
        std::function<Integral(int)> seg;
        if (kind == EndKind::ToInfinity) {
            seg = [&, is_left](int k) {
                const double o1 = step * (std::ldexp(1.0, k) - 1.0);
                const double o2 = step * (std::ldexp(1.0, k + 1) - 1.0);
                double a = is_left ? lo0 - o2 : hi0 + o1;
                double b = is_left ? lo0 - o1 : hi0 + o2;
                bool clipped = false;
                if (chart.log_space) {
                    // exp(t) must stay inside double range
                    const double ca = std::max(a, -688.0), cb = std::min(b, 688.0);
                    clipped = ca != a || cb != b;
                    a = ca;
                    b = cb;
                }
                const double seg_abs_tol = 0.125 * req.rel_tol * (std::abs(total) + kAbsTiny);
                const std::size_t outer_cap = budget.cap;
                budget.cap = std::min(outer_cap,
                                      budget.used + std::min<std::size_t>(budget.left(), 65536));
                Integral r = (a < b)
                                 ? integrate_adaptive(f, a, b, req.rel_tol, budget, seg_abs_tol)
                                 : Integral{0.0, 0.0, true, std::nullopt};
                budget.cap = outer_cap;
                accept_if_bounded(r, seg_abs_tol);
                // clipping only matters while increments are still live
                if (clipped && std::max(r.value, prev_increment) > live_floor)
                    range_truncated = true;
                prev_increment = r.value;
                return r;
            };
        } else {
            const double edge = is_left ? A : B;
            const double d0 = is_left ? lo0 - A : B - hi0;
            seg = [&, is_left, edge, d0](int k) {
                const double da = std::ldexp(d0, -k), db = std::ldexp(d0, -(k + 1));
                const double seg_abs_tol = 0.125 * req.rel_tol * (std::abs(total) + kAbsTiny);
                const std::size_t outer_cap = budget.cap;
                budget.cap = std::min(outer_cap,
                                      budget.used + std::min<std::size_t>(budget.left(), 32768));
                Integral r = is_left ? integrate_adaptive(f, edge + db, edge + da, req.rel_tol,
                                                          budget, seg_abs_tol)
                                     : integrate_adaptive(f, edge - da, edge - db, req.rel_tol,
                                                          budget, seg_abs_tol);
                budget.cap = outer_cap;
                accept_if_bounded(r, seg_abs_tol);
                return r;
            };
        }
        LimitSum end = sum_limit(seg, req.rel_tol, total, budget, min_segments, trusted);
        if (end.cls == LimitClass::Diverged) {
            res.kind = MassKind::Infinite;
            res.note = is_left ? "divergent toward lower end" : "divergent toward upper end";
            return false;
        }
        if (end.cls == LimitClass::Converged && range_truncated && !trusted) {
            // increments were still live when exp() ran out of range
            res.kind = MassKind::Undetermined;
            res.note = "no tail verdict within representable range";
            return false;
        }
        if (end.cls == LimitClass::Undetermined) {
            res.kind = MassKind::Undetermined;
            res.note = std::string(is_left ? "lower end: " : "upper end: ") += end.reason;
            return false;
        }
        total += end.value;
        abs_err += end.abs_error;
        return true;
    };

    if (!run_end(true, left, trust_lo)) return res;
    if (!run_end(false, right, trust_hi)) return res;

    if (total <= 0.0) {
        res.kind = MassKind::Finite;
        res.log_value = -kInf;
        res.rel_error = 0.0;
        return res;
    }
    const double log_value = scale + std::log(total);
    if (log_value > kLogDoubleMax) {
        res.kind = MassKind::Infinite;
        res.note = "mass exceeds double range";
        return res;
    }
    res.kind = MassKind::Finite;
    res.log_value = log_value;
    res.rel_error = abs_err / total;
    return res;
}

} // namespace renyi::detail
