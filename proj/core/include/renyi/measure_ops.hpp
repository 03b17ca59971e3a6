#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "renyi/mass_value.hpp"
#include "renyi/quadrature.hpp"
#include "renyi/renyi_state.hpp"
#include "renyi/window_set.hpp"

namespace renyi {

/// Mass of the state on a window: Lebesgue/counting integral of
/// exp(log density) plus included atom masses. Infinite and undetermined are
/// ordinary outcomes; see MassValue.
MassValue window_mass(const RenyiState& state, const WindowSet& w,
                      const QuadratureOptions& opts = {});

enum class Tristate { False, True, Undetermined };

/// 0 < mass < inf, with undetermined propagated, never coerced.
Tristate is_elementary(const RenyiState& state, const WindowSet& w,
                       const QuadratureOptions& opts = {});

/// P(A | B) = P(A and B) / P(B). Throws NotElementaryError when B fails,
/// naming the failure (zero vs infinite vs undetermined).
double conditional_probability(const RenyiState& state, const WindowSet& a,
                               const WindowSet& b, const QuadratureOptions& opts = {});

/// Restriction of the state to a window: the conditional given B, defined as
/// soon as P(B) > 0 (infinite allowed). Throws ZeroMassError otherwise.
RenyiState restrict_to(const RenyiState& state, const WindowSet& b,
                       const QuadratureOptions& opts = {});

/// Restriction renormalized to unit mass: the interpretive object P(.|B).
/// Requires B elementary.
RenyiState normalize_on_window(const RenyiState& state, const WindowSet& b,
                               const QuadratureOptions& opts = {});

struct EquivalenceDiagnostics {
    std::size_t points_used = 0;
    double log_ratio_sd = 0.0;
    double log_ratio_mean = 0.0;
    std::string note;
};

/// True when log densities differ by a constant over a probe grid drawn from
/// the given windows (points where either density is more than e^-30 below
/// its grid maximum are ignored).
bool states_equivalent(const RenyiState& s1, const RenyiState& s2,
                       std::span<const WindowSet> probe_windows, double tol,
                       EquivalenceDiagnostics* diag = nullptr);

struct BunchReport {
    bool all_members_elementary = false;
    bool axiom_no_empty = false;     // (i)  empty set not in the family
    bool axiom_union_closed = false; // (ii) closed under pairwise union
    bool axiom_cover = false;        // (iii) family covers the target
    bool positivity = false;         // P(B1|B2) > 0 for nested members
    std::vector<std::string> notes;
    bool pass() const {
        return all_members_elementary && axiom_no_empty && axiom_union_closed &&
               axiom_cover && positivity;
    }
};

BunchReport check_bunch_axioms(const RenyiState& state,
                               std::span<const WindowSet> family,
                               const WindowSet& cover_target,
                               const QuadratureOptions& opts = {});

/// Consistency of conditionals under nesting:
/// |P(A|B1) - P(A B1|B2) / P(B1|B2)| < tol, for B1 inside B2.
bool check_consistency(const RenyiState& state, const WindowSet& a,
                       const WindowSet& b1, const WindowSet& b2, double tol,
                       const QuadratureOptions& opts = {});

struct QVagueProbeRow {
    std::string window;
    double limit_mass = 0.0;
    std::vector<double> scaled_masses; // a_n * mass_n(probe), one per schedule index
    bool monotone_tail = false;
    bool within_tol = false;
};

struct QVagueReport {
    std::vector<int> schedule;
    std::vector<double> scale_factors; // a_n = limit(ref) / mass_n(ref)
    std::vector<int> flagged_indices;  // ref window not elementary there
    std::vector<QVagueProbeRow> probes;
    bool converged = false; // every probe monotone in the tail and within tol
};

/// Convergence of states up to per-index rescaling, anchored on a reference
/// window: checks a_n * mass_n(probe) -> limit_mass(probe) along the schedule.
QVagueReport q_vague_limit_check(const std::function<RenyiState(int)>& sequence,
                                 const RenyiState& limit, const WindowSet& ref_window,
                                 std::span<const WindowSet> probe_windows,
                                 std::span<const int> schedule, double tol,
                                 const QuadratureOptions& opts = {});

} // namespace renyi
