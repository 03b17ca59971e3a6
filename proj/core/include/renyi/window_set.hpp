#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renyi/base_measure.hpp"
#include "renyi/geometry.hpp"

namespace renyi {

/// An event to condition on: a finite union of boxes minus excluded boxes,
/// plus per-atom include flags. Without explicit flags an atom is included
/// exactly when it lies in the geometric region.
struct WindowSet {
    std::vector<Box> include;
    std::vector<Box> exclude;
    std::optional<std::vector<bool>> atom_flags; // indexed like BaseMeasure::atoms

    static WindowSet empty() { return WindowSet{}; }
    static WindowSet interval(double lo, double hi);
    static WindowSet intervals(std::vector<Interval> xs);
    static WindowSet box(Interval x, Interval y);
    static WindowSet whole(const BaseMeasure& base);

    WindowSet minus(const WindowSet& other) const;
    WindowSet with_atom_flags(std::vector<bool> flags) const;

    /// Geometric membership from the raw include/exclude lists (closed boxes;
    /// a point inside any exclude box is out).
    bool contains(const Point& p, int dim) const;

    /// Disjoint box decomposition of the geometric region.
    std::vector<Box> canonical(int dim) const;

    /// Canonical boxes clipped to the base domain.
    std::vector<Box> canonical_on(const BaseMeasure& base) const;

    bool atom_included(const BaseMeasure& base, std::size_t atom_index) const;
    std::vector<bool> resolved_atom_flags(const BaseMeasure& base) const;

    /// No geometric extent on the base and no included atom.
    bool is_empty_on(const BaseMeasure& base) const;

    /// Checks dimensionality and atom-flag shape against the base.
    void validate_for(const BaseMeasure& base) const;

    std::string describe() const;
};

WindowSet window_union(const BaseMeasure& base, const WindowSet& a, const WindowSet& b);
WindowSet window_intersection(const BaseMeasure& base, const WindowSet& a, const WindowSet& b);
bool windows_equal(const BaseMeasure& base, const WindowSet& a, const WindowSet& b);
bool window_subset(const BaseMeasure& base, const WindowSet& a, const WindowSet& b);

} // namespace renyi
