#include "renyi/glue/sampler.hpp"

#include <cmath>
#include <sstream>

#include "renyi/errors.hpp"
#include "renyi/glue/rng.hpp"
#include "renyi/measure_ops.hpp"

namespace renyi::glue {

namespace {

constexpr std::size_t kPilotSteps = 2000;
constexpr std::size_t kPilotBlock = 250;

} // namespace

void ChainConfig::validate() const {
    if (burn_in >= chain_length)
        throw DomainMismatchError("burn-in must be shorter than the chain");
    if (proposal_scale && !(*proposal_scale > 0.0))
        throw DomainMismatchError("proposal scale must be positive");
}

SampleResult sample_restricted(const RenyiState& target, Interval window,
                               const ChainConfig& cfg, std::size_t window_index) {
    cfg.validate();
    if (!(window.lo < window.hi))
        throw DomainMismatchError("sampling window has no interior");
    {
        const MassValue m = window_mass(target, WindowSet::interval(window.lo, window.hi));
        if (!(m.finite() && m.value > 0.0)) {
            const ElementaryFailure reason =
                m.infinite() ? ElementaryFailure::InfiniteMass
                             : m.undetermined() ? ElementaryFailure::Undetermined
                                                : ElementaryFailure::ZeroMass;
            throw NotElementaryError(reason,
                                     std::string("window is not elementary for the target: ") +
                                         to_string(reason));
        }
    }

    auto log_target = [&](double v) {
        if (v <= window.lo || v >= window.hi) return -kInf;
        return target.log_density(Point{v, 0.0});
    };

    SampleResult out;
    out.stream_seed = derive_stream_seed(cfg.master_seed, window_index);
    RngStream rng(out.stream_seed);

    double x = 0.5 * (window.lo + window.hi);
    double lx = log_target(x);
    double scale = cfg.proposal_scale.value_or((window.hi - window.lo) / 6.0);

    auto step = [&](double s) -> bool {
        const double prop = x + s * rng.normal();
        const double lp = log_target(prop);
        if (lp - lx > std::log(rng.uniform01())) {
            x = prop;
            lx = lp;
            return true;
        }
        return false;
    };

    // pilot: double or halve toward 35% acceptance, then freeze
    if (!cfg.proposal_scale) {
        std::size_t done = 0;
        while (done < kPilotSteps) {
            std::size_t accepted = 0;
            for (std::size_t i = 0; i < kPilotBlock; ++i) accepted += step(scale) ? 1 : 0;
            done += kPilotBlock;
            const double rate = static_cast<double>(accepted) / kPilotBlock;
            scale = rate > 0.35 ? scale * 2.0 : scale * 0.5;
        }
    }
    out.tuned_scale = scale;

    // fresh start for the measured chain; pilot samples are discarded
    x = 0.5 * (window.lo + window.hi);
    lx = log_target(x);
    std::size_t accepted = 0;
    out.samples.reserve(cfg.chain_length - cfg.burn_in);
    for (std::size_t i = 0; i < cfg.chain_length; ++i) {
        accepted += step(scale) ? 1 : 0;
        if (i >= cfg.burn_in) out.samples.push_back(x);
    }
    out.acceptance_rate = static_cast<double>(accepted) / cfg.chain_length;
    if (out.acceptance_rate < 0.1 || out.acceptance_rate > 0.7) {
        std::ostringstream os;
        os << "acceptance rate " << out.acceptance_rate << " outside [0.1, 0.7]"
           << " in window " << window_index;
        out.warning = os.str();
    }
    return out;
}

} // namespace renyi::glue
