#pragma once

#include <array>
#include <limits>
#include <vector>

namespace renyi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A point in at most two coordinates; 1-D objects read only [0].
using Point = std::array<double, 2>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool empty() const { return hi < lo; }
    bool degenerate() const { return hi == lo; }
    double length() const { return empty() ? 0.0 : hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool bounded() const { return lo > -kInf && hi < kInf; }
};

Interval intersect(Interval a, Interval b);

/// Axis-aligned box. 1-D windows use x only; y defaults to the whole line.
struct Box {
    Interval x{-kInf, kInf};
    Interval y{-kInf, kInf};

    bool contains(const Point& p, int dim) const {
        return x.contains(p[0]) && (dim < 2 || y.contains(p[1]));
    }
};

// --- interval set algebra -------------------------------------------------
//
// An interval set is a sorted list of pairwise disjoint closed intervals
// (touching intervals get merged; zero-length intervals are dropped, since
// they carry no Lebesgue mass). Atoms and integer lattice points are
// resolved against the original include/exclude lists, never against these
// canonical forms, so measure-zero boundary loss here is harmless.

std::vector<Interval> normalize_intervals(std::vector<Interval> xs);
std::vector<Interval> intervals_subtract(const std::vector<Interval>& a,
                                         const std::vector<Interval>& b);
std::vector<Interval> intervals_intersect(const std::vector<Interval>& a,
                                          const std::vector<Interval>& b);

// --- box set algebra (disjoint canonical forms) ----------------------------

/// Decomposes (union of include) minus (union of exclude) into disjoint boxes.
std::vector<Box> decompose_boxes(const std::vector<Box>& include,
                                 const std::vector<Box>& exclude);
std::vector<Box> boxes_union(const std::vector<Box>& a, const std::vector<Box>& b);
std::vector<Box> boxes_intersect(const std::vector<Box>& a, const std::vector<Box>& b);
std::vector<Box> boxes_subtract(const std::vector<Box>& a, const std::vector<Box>& b);

/// Total measure of a disjoint box list (length in 1-D, area in 2-D).
double boxes_volume(const std::vector<Box>& boxes, int dim);

/// Volume of the symmetric difference is (numerically) zero.
bool regions_equal(const std::vector<Box>& a, const std::vector<Box>& b, int dim);

} // namespace renyi
