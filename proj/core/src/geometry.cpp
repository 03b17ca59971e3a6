#include "renyi/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace renyi {

Interval intersect(Interval a, Interval b) {
    return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

std::vector<Interval> normalize_intervals(std::vector<Interval> xs) {
    std::erase_if(xs, [](const Interval& i) { return i.hi <= i.lo; });
    std::sort(xs.begin(), xs.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const Interval& i : xs) {
        if (!out.empty() && i.lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, i.hi);
        } else {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<Interval> intervals_subtract(const std::vector<Interval>& a,
                                         const std::vector<Interval>& b) {
    std::vector<Interval> out;
    for (Interval cur : a) {
        std::vector<Interval> pieces{cur};
        for (const Interval& cut : b) {
            std::vector<Interval> next;
            for (const Interval& p : pieces) {
                if (cut.hi <= p.lo || cut.lo >= p.hi) {
                    next.push_back(p);
                    continue;
                }
                if (cut.lo > p.lo) next.push_back({p.lo, cut.lo});
                if (cut.hi < p.hi) next.push_back({cut.hi, p.hi});
            }
            pieces = std::move(next);
        }
        out.insert(out.end(), pieces.begin(), pieces.end());
    }
    return normalize_intervals(std::move(out));
}

std::vector<Interval> intervals_intersect(const std::vector<Interval>& a,
                                          const std::vector<Interval>& b) {
    std::vector<Interval> out;
    for (const Interval& i : a)
        for (const Interval& j : b) {
            Interval k = intersect(i, j);
            if (k.hi > k.lo) out.push_back(k);
        }
    return normalize_intervals(std::move(out));
}

namespace {

std::vector<double> x_breakpoints(const std::vector<Box>& include,
                                  const std::vector<Box>& exclude) {
    std::vector<double> xs;
    for (const Box& b : include) {
        xs.push_back(b.x.lo);
        xs.push_back(b.x.hi);
    }
    for (const Box& b : exclude) {
        xs.push_back(b.x.lo);
        xs.push_back(b.x.hi);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

} // namespace

std::vector<Box> decompose_boxes(const std::vector<Box>& include,
                                 const std::vector<Box>& exclude) {
    std::vector<Box> out;
    const std::vector<double> xs = x_breakpoints(include, exclude);
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double x0 = xs[k], x1 = xs[k + 1];
        if (!(x0 < x1)) continue;
        // every box edge is a breakpoint, so a box either spans the whole
        // slab or misses its interior entirely
        std::vector<Interval> ys_in, ys_ex;
        for (const Box& b : include)
            if (b.x.lo <= x0 && b.x.hi >= x1) ys_in.push_back(b.y);
        if (ys_in.empty()) continue;
        for (const Box& b : exclude)
            if (b.x.lo <= x0 && b.x.hi >= x1) ys_ex.push_back(b.y);
        for (const Interval& y : intervals_subtract(normalize_intervals(std::move(ys_in)), ys_ex))
            out.push_back(Box{{x0, x1}, y});
    }
    return out;
}

std::vector<Box> boxes_union(const std::vector<Box>& a, const std::vector<Box>& b) {
    std::vector<Box> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return decompose_boxes(all, {});
}

std::vector<Box> boxes_intersect(const std::vector<Box>& a, const std::vector<Box>& b) {
    std::vector<Box> out;
    for (const Box& i : a)
        for (const Box& j : b) {
            Box k{intersect(i.x, j.x), intersect(i.y, j.y)};
            if (k.x.hi > k.x.lo && k.y.hi > k.y.lo) out.push_back(k);
        }
    return out;
}

std::vector<Box> boxes_subtract(const std::vector<Box>& a, const std::vector<Box>& b) {
    return decompose_boxes(a, b);
}

double boxes_volume(const std::vector<Box>& boxes, int dim) {
    double v = 0.0;
    for (const Box& b : boxes) {
        const double w = b.x.length();
        if (dim < 2) {
            v += w;
        } else {
            const double h = b.y.length();
            if (w == 0.0 || h == 0.0) continue; // 0 * inf
            v += w * h;
        }
        if (std::isinf(v)) return kInf;
    }
    return v;
}

bool regions_equal(const std::vector<Box>& a, const std::vector<Box>& b, int dim) {
    const double scale = std::max({1.0, std::isinf(boxes_volume(a, dim)) ? 1.0 : boxes_volume(a, dim),
                                   std::isinf(boxes_volume(b, dim)) ? 1.0 : boxes_volume(b, dim)});
    const double d = boxes_volume(boxes_subtract(a, b), dim) + boxes_volume(boxes_subtract(b, a), dim);
    return d <= 1e-12 * scale;
}

} // namespace renyi
