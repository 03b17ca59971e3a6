#pragma once

#include <cstddef>
#include <string>

namespace renyi {

enum class MassKind { Finite, Infinite, Undetermined };

/// Outcome of a window-mass computation. Infinite masses are first-class
/// results, not errors; undetermined means the integrator could neither
/// converge nor certify divergence within budget.
struct MassValue {
    MassKind kind = MassKind::Undetermined;
    double value = 0.0;     // Finite only
    double rel_error = 0.0; // achieved estimate, Finite only
    std::size_t evals = 0;
    std::string note;

    bool finite() const { return kind == MassKind::Finite; }
    bool infinite() const { return kind == MassKind::Infinite; }
    bool undetermined() const { return kind == MassKind::Undetermined; }
    bool positive() const { return infinite() || (finite() && value > 0.0); }

    static MassValue finite_value(double v, double rel_err, std::size_t evals,
                                  std::string note = {}) {
        return MassValue{MassKind::Finite, v, rel_err, evals, std::move(note)};
    }
    static MassValue infinite_value(std::string note, std::size_t evals = 0) {
        return MassValue{MassKind::Infinite, 0.0, 0.0, evals, std::move(note)};
    }
    static MassValue undetermined_value(std::string note, std::size_t evals = 0) {
        return MassValue{MassKind::Undetermined, 0.0, 0.0, evals, std::move(note)};
    }
};

} // namespace renyi
