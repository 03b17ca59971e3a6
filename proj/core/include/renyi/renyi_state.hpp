#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "renyi/base_measure.hpp"
#include "renyi/geometry.hpp"

namespace renyi {

/// Analytic tail declaration: density ~ C * |x|^power * exp(-exp_rate*|x|)
/// toward an infinite end, or ~ C * (x-edge)^power toward a finite open edge.
struct TailBehavior {
    double power = 0.0;
    double exp_rate = 0.0;
};

struct AxisTail {
    std::optional<TailBehavior> toward_lo;
    std::optional<TailBehavior> toward_hi;
};

struct TailHint {
    std::array<AxisTail, 2> axis{};
    bool any() const {
        for (const AxisTail& a : axis)
            if (a.toward_lo || a.toward_hi) return true;
        return false;
    }
};

/// A sigma-finite law represented by a log density against a base measure.
/// Everything downstream treats two states whose log densities differ by a
/// constant on the support as the same state. At an atom of the base the
/// evaluator returns the log atom mass; the Lebesgue part is read by
/// continuity and never evaluated exactly at atom points.
struct WindowSet;

struct RenyiState {
    BaseMeasure base;
    std::function<double(const Point&)> log_density;
    TailHint tail{};
    /// Known support window (set by restriction); integration clips to it,
    /// which keeps quadrature away from the indicator jump.
    std::shared_ptr<const WindowSet> support{};

    double log_density_at(const Point& p) const { return log_density(p); }

    static RenyiState on(BaseMeasure b, std::function<double(const Point&)> f,
                         TailHint t = {}) {
        return RenyiState{std::move(b), std::move(f), t};
    }
    static RenyiState on_1d(BaseMeasure b, std::function<double(double)> f,
                            TailHint t = {}) {
        return RenyiState{std::move(b),
                          [g = std::move(f)](const Point& p) { return g(p[0]); }, t};
    }
    /// Lebesgue measure on the real line with the given log density.
    static RenyiState line(std::function<double(double)> f, TailHint t = {}) {
        return on_1d(BaseMeasure::lebesgue_line(), std::move(f), t);
    }
    /// Lebesgue on (0, inf).
    static RenyiState half_line(std::function<double(double)> f, TailHint t = {}) {
        return on_1d(BaseMeasure::lebesgue_half_line(), std::move(f), t);
    }
    /// The uniform state: log density identically zero.
    static RenyiState uniform(BaseMeasure b) {
        return on(std::move(b), [](const Point&) { return 0.0; });
    }
    /// Log density shifted by a constant; the same Renyi state.
    RenyiState scaled(double log_factor) const {
        return RenyiState{base,
                          [f = log_density, log_factor](const Point& p) {
                              return f(p) + log_factor;
                          },
                          tail, support};
    }
};

} // namespace renyi
