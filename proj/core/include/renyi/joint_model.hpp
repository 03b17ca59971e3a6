#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "renyi/base_measure.hpp"
#include "renyi/mass_value.hpp"
#include "renyi/renyi_state.hpp"

namespace renyi {

/// A joint law over data x parameter space, given by a log density against
/// the product base measure. The joint density is the primitive here; a
/// (prior, likelihood) pair is only well defined once the likelihood's
/// per-parameter normalization is fixed, and the joint sidesteps that gauge.
struct JointModel {
    BaseMeasure data_base;
    BaseMeasure param_base;
    std::function<double(const Point& x, const Point& theta)> log_joint;
    std::string label;
    TailHint param_tail{}; // per-axis tail of theta-sections, passed to posteriors
    /// Known support of the theta-sections (set when a prior is restricted);
    /// posteriors inherit it and probes stay inside it.
    std::shared_ptr<const WindowSet> param_support{};
};

enum class Properness { Proper, Improper, Undetermined };

struct PosteriorClassification {
    Properness verdict = Properness::Undetermined;
    MassValue mass;               // posterior-state mass over the parameter domain
    MassValue data_marginal_at_x; // the same quantity read as the data marginal
};

/// Symmetric positive semidefinite matrix (row-major storage).
class PrecisionMatrix {
public:
    PrecisionMatrix(std::size_t n, std::vector<double> entries);
    static PrecisionMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

private:
    std::size_t n_;
    std::vector<double> entries_;
};

struct IcarExponent {
    double exponent = 0.0;       // (n - k) / 2
    std::size_t null_space_dim = 0; // k
    std::vector<double> eigenvalues;
};

} // namespace renyi
