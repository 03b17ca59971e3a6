#pragma once

#include <vector>

#include "renyi/geometry.hpp"

namespace renyi {

enum class MeasureKind {
    Lebesgue1D,
    Lebesgue2D,
    CountingNonnegInt,
    LebesguePlusAtoms,
};

/// Dominating measure. Atoms carry unit weight; the state's density at an
/// atom point is the atom mass.
struct BaseMeasure {
    MeasureKind kind = MeasureKind::Lebesgue1D;
    std::vector<Interval> domain; // one interval per coordinate
    std::vector<double> atoms;    // LebesguePlusAtoms only, distinct, inside domain

    int dim() const { return kind == MeasureKind::Lebesgue2D ? 2 : 1; }
    bool has_lebesgue_part() const { return kind != MeasureKind::CountingNonnegInt; }

    /// Throws DomainMismatchError on broken invariants.
    void validate() const;

    bool same_as(const BaseMeasure& other) const;

    static BaseMeasure lebesgue_line(Interval d = {-kInf, kInf});
    static BaseMeasure lebesgue_half_line();     // (0, inf)
    static BaseMeasure lebesgue_unit_interval(); // (0, 1)
    static BaseMeasure lebesgue_plane(Interval dx = {-kInf, kInf}, Interval dy = {-kInf, kInf});
    static BaseMeasure counting_nonneg(double max_value = kInf);
    static BaseMeasure lebesgue_with_atoms(std::vector<double> atoms, Interval d = {-kInf, kInf});
};

} // namespace renyi
