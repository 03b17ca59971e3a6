#include "renyi/glue/kde.hpp"

#include <algorithm>
#include <cmath>

#include "renyi/errors.hpp"

namespace renyi::glue {

namespace {

constexpr std::size_t kBins = 4096;
constexpr double kLogFloor = -690.0; // log of the density floor
constexpr double kKernelCut = 8.0;   // kernel support in bandwidths

double silverman_bandwidth(std::vector<double> sorted, double n) {
    double mean = 0.0;
    for (double v : sorted) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : sorted) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    const double q1 = sorted[static_cast<std::size_t>(0.25 * (n - 1))];
    const double q3 = sorted[static_cast<std::size_t>(0.75 * (n - 1))];
    const double iqr = q3 - q1;
    double spread = sd;
    if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
    return 0.9 * spread * std::pow(n, -0.2);
}

} // namespace

KdeTable kde_log_density(std::span<const double> samples, Interval window,
                         std::size_t grid_size) {
    if (samples.size() < 1000)
        throw DegenerateSamplesError("need at least 1000 samples for a KDE");
    if (!(window.lo < window.hi)) throw DomainMismatchError("empty KDE window");

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    const double h = silverman_bandwidth(std::move(sorted), n);
    if (!(h > 0.0))
        throw DegenerateSamplesError("zero bandwidth: samples have no spread");

    // bin the samples; bandwidth is far wider than a bin, so binning error is
    // negligible next to the KDE's own bias
    const double width = window.hi - window.lo;
    const double bin_w = width / kBins;
    std::vector<double> count(kBins, 0.0);
    for (double s : samples) {
        if (s < window.lo || s > window.hi) continue;
        auto b = static_cast<std::size_t>((s - window.lo) / bin_w);
        if (b >= kBins) b = kBins - 1;
        count[b] += 1.0;
    }

    KdeTable out;
    out.window = window;
    out.bandwidth = h;
    out.grid.resize(grid_size);
    out.log_density.resize(grid_size);
    out.weight.resize(grid_size);

    std::vector<double> cum(kBins + 1, 0.0);
    for (std::size_t b = 0; b < kBins; ++b) cum[b + 1] = cum[b] + count[b];

    auto bin_center = [&](std::size_t b) { return window.lo + (b + 0.5) * bin_w; };
    const double inv_h = 1.0 / h;
    const double norm = 1.0 / (n * h * std::sqrt(2.0 * 3.14159265358979323846));

    for (std::size_t j = 0; j < grid_size; ++j) {
        const double g = window.lo + j * width / (grid_size - 1);
        out.grid[j] = g;
        double acc = 0.0;
        const auto lo_bin = static_cast<std::ptrdiff_t>((g - window.lo - kKernelCut * h) / bin_w) - 1;
        const auto hi_bin = static_cast<std::ptrdiff_t>((g - window.lo + kKernelCut * h) / bin_w) + 1;
        for (std::ptrdiff_t b = std::max<std::ptrdiff_t>(lo_bin, 0);
             b <= std::min<std::ptrdiff_t>(hi_bin, kBins - 1); ++b) {
            const double c = count[static_cast<std::size_t>(b)];
            if (c == 0.0) continue;
            const double xb = bin_center(static_cast<std::size_t>(b));
            const double z0 = (g - xb) * inv_h;
            const double z1 = (g - (2.0 * window.lo - xb)) * inv_h; // reflect at lo
            const double z2 = (g - (2.0 * window.hi - xb)) * inv_h; // reflect at hi
            double k = std::exp(-0.5 * z0 * z0);
            if (std::abs(z1) < kKernelCut) k += std::exp(-0.5 * z1 * z1);
            if (std::abs(z2) < kKernelCut) k += std::exp(-0.5 * z2 * z2);
            acc += c * k;
        }
        const double density = acc * norm;
        out.log_density[j] = density > 0.0 ? std::max(std::log(density), kLogFloor) : kLogFloor;

        // local effective weight: sample count within one bandwidth
        const double a = std::clamp((g - h - window.lo) / bin_w, 0.0, double(kBins));
        const double b = std::clamp((g + h - window.lo) / bin_w, 0.0, double(kBins));
        out.weight[j] = cum[static_cast<std::size_t>(b)] - cum[static_cast<std::size_t>(a)];
    }
    return out;
}

} // namespace renyi::glue
