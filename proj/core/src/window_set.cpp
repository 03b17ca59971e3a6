#include "renyi/window_set.hpp"

#include <cmath>
#include <sstream>

#include "renyi/errors.hpp"

namespace renyi {

WindowSet WindowSet::interval(double lo, double hi) {
    WindowSet w;
    w.include.push_back(Box{{lo, hi}, {-kInf, kInf}});
    return w;
}

WindowSet WindowSet::intervals(std::vector<Interval> xs) {
    WindowSet w;
    for (const Interval& i : xs) w.include.push_back(Box{i, {-kInf, kInf}});
    return w;
}

WindowSet WindowSet::box(Interval x, Interval y) {
    WindowSet w;
    w.include.push_back(Box{x, y});
    return w;
}

WindowSet WindowSet::whole(const BaseMeasure& base) {
    WindowSet w;
    Box b;
    b.x = base.domain[0];
    b.y = base.dim() == 2 ? base.domain[1] : Interval{-kInf, kInf};
    w.include.push_back(b);
    return w;
}

WindowSet WindowSet::minus(const WindowSet& other) const {
    WindowSet w = *this;
    w.exclude.insert(w.exclude.end(), other.include.begin(), other.include.end());
    return w;
}

WindowSet WindowSet::with_atom_flags(std::vector<bool> flags) const {
    WindowSet w = *this;
    w.atom_flags = std::move(flags);
    return w;
}

bool WindowSet::contains(const Point& p, int dim) const {
    bool in = false;
    for (const Box& b : include)
        if (b.contains(p, dim)) {
            in = true;
            break;
        }
    if (!in) return false;
    for (const Box& b : exclude)
        if (b.contains(p, dim)) return false;
    return true;
}

std::vector<Box> WindowSet::canonical(int /*dim*/) const {
    return decompose_boxes(include, exclude);
}

std::vector<Box> WindowSet::canonical_on(const BaseMeasure& base) const {
    std::vector<Box> clipped;
    const Interval dx = base.domain[0];
    const Interval dy = base.dim() == 2 ? base.domain[1] : Interval{-kInf, kInf};
    for (const Box& b : canonical(base.dim())) {
        Box c{intersect(b.x, dx), intersect(b.y, dy)};
        if (c.x.hi > c.x.lo && c.y.hi > c.y.lo) clipped.push_back(c);
    }
    return clipped;
}

bool WindowSet::atom_included(const BaseMeasure& base, std::size_t atom_index) const {
    if (atom_flags) return (*atom_flags)[atom_index];
    return contains(Point{base.atoms[atom_index], 0.0}, 1);
}

std::vector<bool> WindowSet::resolved_atom_flags(const BaseMeasure& base) const {
    std::vector<bool> flags(base.atoms.size());
    for (std::size_t i = 0; i < base.atoms.size(); ++i) flags[i] = atom_included(base, i);
    return flags;
}

bool WindowSet::is_empty_on(const BaseMeasure& base) const {
    for (std::size_t i = 0; i < base.atoms.size(); ++i)
        if (atom_included(base, i)) return false;
    const std::vector<Box> boxes = canonical_on(base);
    if (base.kind == MeasureKind::CountingNonnegInt) {
        for (const Box& b : boxes) {
            double k = std::ceil(std::max(b.x.lo, 0.0));
            for (int step = 0; step < 4096 && k <= b.x.hi; ++step, k += 1.0)
                if (contains(Point{k, 0.0}, 1)) return false;
            if (k <= b.x.hi) return false; // unbounded run of candidates
        }
        return true;
    }
    return boxes_volume(boxes, base.dim()) == 0.0;
}

void WindowSet::validate_for(const BaseMeasure& base) const {
    if (atom_flags && atom_flags->size() != base.atoms.size())
        throw DomainMismatchError("window atom flags do not match base atoms");
    if (base.dim() == 1) return;
    // 2-D windows must constrain both axes or deliberately span the domain
    for (const Box& b : include)
        if (b.y.lo > b.y.hi) throw DomainMismatchError("window box with empty y extent");
}

std::string WindowSet::describe() const {
    std::ostringstream os;
    auto put = [&os](const Box& b) {
        os << "[" << b.x.lo << "," << b.x.hi << "]";
        if (b.y.lo != -kInf || b.y.hi != kInf) os << "x[" << b.y.lo << "," << b.y.hi << "]";
    };
    for (std::size_t i = 0; i < include.size(); ++i) {
        if (i) os << " u ";
        put(include[i]);
    }
    for (const Box& b : exclude) {
        os << " \\ ";
        put(b);
    }
    if (atom_flags) {
        os << " atoms{";
        for (bool f : *atom_flags) os << (f ? '1' : '0');
        os << "}";
    }
    return os.str();
}

WindowSet window_union(const BaseMeasure& base, const WindowSet& a, const WindowSet& b) {
    WindowSet w;
    w.include = boxes_union(a.canonical(base.dim()), b.canonical(base.dim()));
    if (a.atom_flags || b.atom_flags) {
        std::vector<bool> fa = a.resolved_atom_flags(base), fb = b.resolved_atom_flags(base);
        std::vector<bool> merged(fa.size());
        for (std::size_t i = 0; i < fa.size(); ++i) merged[i] = fa[i] || fb[i];
        w.atom_flags = std::move(merged);
    }
    return w;
}

WindowSet window_intersection(const BaseMeasure& base, const WindowSet& a, const WindowSet& b) {
    WindowSet w;
    w.include = boxes_intersect(a.canonical(base.dim()), b.canonical(base.dim()));
    if (!base.atoms.empty()) {
        std::vector<bool> fa = a.resolved_atom_flags(base), fb = b.resolved_atom_flags(base);
        std::vector<bool> merged(fa.size());
        for (std::size_t i = 0; i < fa.size(); ++i) merged[i] = fa[i] && fb[i];
        w.atom_flags = std::move(merged);
    }
    return w;
}

bool windows_equal(const BaseMeasure& base, const WindowSet& a, const WindowSet& b) {
    if (!base.atoms.empty() && a.resolved_atom_flags(base) != b.resolved_atom_flags(base))
        return false;
    return regions_equal(a.canonical_on(base), b.canonical_on(base), base.dim());
}

bool window_subset(const BaseMeasure& base, const WindowSet& a, const WindowSet& b) {
    if (!base.atoms.empty()) {
        const std::vector<bool> fa = a.resolved_atom_flags(base), fb = b.resolved_atom_flags(base);
        for (std::size_t i = 0; i < fa.size(); ++i)
            if (fa[i] && !fb[i]) return false;
    }
    const std::vector<Box> rest =
        boxes_subtract(a.canonical_on(base), b.canonical_on(base));
    return boxes_volume(rest, base.dim()) <= 1e-12;
}

} // namespace renyi
