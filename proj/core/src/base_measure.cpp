#include "renyi/base_measure.hpp"

#include <algorithm>
#include <cmath>

#include "renyi/errors.hpp"

namespace renyi {

void BaseMeasure::validate() const {
    const std::size_t want = kind == MeasureKind::Lebesgue2D ? 2 : 1;
    if (domain.size() != want)
        throw DomainMismatchError("base measure: wrong number of domain intervals");
    for (const Interval& d : domain)
        if (!(d.lo < d.hi)) throw DomainMismatchError("base measure: empty domain interval");
    if (kind == MeasureKind::LebesguePlusAtoms) {
        if (atoms.empty())
            throw DomainMismatchError("lebesgue-plus-atoms requires a nonempty atom list");
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (!domain[0].contains(atoms[i]))
                throw DomainMismatchError("atom outside domain");
            for (std::size_t j = i + 1; j < atoms.size(); ++j)
                if (atoms[i] == atoms[j]) throw DomainMismatchError("duplicate atom");
        }
    } else if (!atoms.empty()) {
        throw DomainMismatchError("atoms only allowed for lebesgue-plus-atoms");
    }
    if (kind == MeasureKind::CountingNonnegInt && domain[0].lo < 0)
        throw DomainMismatchError("counting measure lives on nonnegative integers");
}

bool BaseMeasure::same_as(const BaseMeasure& other) const {
    return kind == other.kind && domain.size() == other.domain.size() &&
           std::equal(domain.begin(), domain.end(), other.domain.begin(),
                      [](const Interval& a, const Interval& b) {
                          return a.lo == b.lo && a.hi == b.hi;
                      }) &&
           atoms == other.atoms;
}

BaseMeasure BaseMeasure::lebesgue_line(Interval d) {
    return BaseMeasure{MeasureKind::Lebesgue1D, {d}, {}};
}

BaseMeasure BaseMeasure::lebesgue_half_line() {
    return BaseMeasure{MeasureKind::Lebesgue1D, {Interval{0.0, kInf}}, {}};
}

BaseMeasure BaseMeasure::lebesgue_unit_interval() {
    return BaseMeasure{MeasureKind::Lebesgue1D, {Interval{0.0, 1.0}}, {}};
}

BaseMeasure BaseMeasure::lebesgue_plane(Interval dx, Interval dy) {
    return BaseMeasure{MeasureKind::Lebesgue2D, {dx, dy}, {}};
}

BaseMeasure BaseMeasure::counting_nonneg(double max_value) {
    return BaseMeasure{MeasureKind::CountingNonnegInt, {Interval{0.0, max_value}}, {}};
}

BaseMeasure BaseMeasure::lebesgue_with_atoms(std::vector<double> atoms, Interval d) {
    BaseMeasure b{MeasureKind::LebesguePlusAtoms, {d}, std::move(atoms)};
    std::sort(b.atoms.begin(), b.atoms.end());
    return b;
}

} // namespace renyi
