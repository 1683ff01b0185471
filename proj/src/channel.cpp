#include "latspec/channel.hpp"

#include "latspec/error.hpp"
#include "latspec/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace latspec {

std::vector<Interval> merge_intervals(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (!(iv.lo <= iv.hi)) throw InvalidArgument("merge_intervals: interval with lo > hi");
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
    std::vector<Interval> out;
    for (const auto& iv : intervals) {
        if (!out.empty() && iv.lo - out.back().hi < kTouchGap) {
            out.back().hi = std::max(out.back().hi, iv.hi);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

namespace {

enum class Side { below, above };

struct Extremum {
    double value = 0.0;
    TorusPoint k;
    bool found = false;
};

std::optional<double> fiber_root(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k,
                                 const TorusGrid& quad_grid, Side side) {
    FiberModel fiber(spec, K, k, quad_grid);
    return side == Side::below ? fiber.eigenvalue_below() : fiber.eigenvalue_above();
}

// Local search around `best.k` on an 11^d stencil whose half-width shrinks
// tenfold per round. maximize selects the direction.
void zoom(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& quad_grid, Side side, bool maximize,
          double half_width, Extremum& best) {
    const int d = spec.dimension;
    constexpr int kSide = 11;
    long stencil = 1;
    for (int a = 0; a < d; ++a) stencil *= kSide;

    for (int round = 0; round < 3; ++round) {
        std::vector<std::optional<double>> values(static_cast<std::size_t>(stencil));
        std::vector<TorusPoint> points(static_cast<std::size_t>(stencil));
        for (long s = 0; s < stencil; ++s) {
            TorusPoint k = best.k;
            long rest = s;
            for (int a = d - 1; a >= 0; --a) {
                k(a) += half_width * ((rest % kSide) - kSide / 2) / double(kSide / 2);
                rest /= kSide;
            }
            points[static_cast<std::size_t>(s)] = canonicalize(k);
        }
        parallel_for(values.size(), [&](std::size_t s) { values[s] = fiber_root(spec, K, points[s], quad_grid, side); });
        for (std::size_t s = 0; s < values.size(); ++s) {
            if (!values[s]) continue;
            const bool better = maximize ? *values[s] > best.value : *values[s] < best.value;
            if (better) {
                best.value = *values[s];
                best.k = points[s];
            }
        }
        half_width /= 10.0;
    }
}

}  // namespace

LambdaBranches lambda_branches(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& k_grid,
                               const TorusGrid& quad_grid) {
    if (k_grid.dimension != spec.dimension || quad_grid.dimension != spec.dimension) {
        throw InvalidArgument("lambda_branches: grid dimension mismatch");
    }
    const auto n = static_cast<std::size_t>(k_grid.size());
    std::vector<FiberSpectrum> fibers(n);
    parallel_for(n, [&](std::size_t i) {
        const TorusPoint k = k_grid.node(static_cast<Eigen::Index>(i));
        try {
            fibers[i] = FiberModel(spec, K, k, quad_grid).spectrum();
        } catch (const NumericalFailure& e) {
            std::ostringstream msg;
            msg.precision(17);
            msg << e.what() << " at k = (" << k.transpose() << ")";
            throw NumericalFailure(msg.str());
        }
    });

    const double inf = std::numeric_limits<double>::infinity();
    Extremum below_lo{inf, {}, false}, below_hi{-inf, {}, false};
    Extremum above_lo{inf, {}, false}, above_hi{-inf, {}, false};
    std::size_t below_count = 0, above_count = 0;

    // Ties keep the first node, so the reduction is order-deterministic.
    for (std::size_t i = 0; i < n; ++i) {
        const TorusPoint k = k_grid.node(static_cast<Eigen::Index>(i));
        if (const auto& z = fibers[i].below) {
            ++below_count;
            if (*z < below_lo.value) below_lo = {*z, k, true};
            if (*z > below_hi.value) below_hi = {*z, k, true};
        }
        if (const auto& z = fibers[i].above) {
            ++above_count;
            if (*z < above_lo.value) above_lo = {*z, k, true};
            if (*z > above_hi.value) above_hi = {*z, k, true};
        }
    }

    const double half_width = kTwoPi / k_grid.points_per_axis;
    LambdaBranches out;
    out.uniform_below = below_count == n;
    out.uniform_above = above_count == n;
    if (below_count > 0) {
        zoom(spec, K, quad_grid, Side::below, false, half_width, below_lo);
        zoom(spec, K, quad_grid, Side::below, true, half_width, below_hi);
        out.below = Interval{below_lo.value, below_hi.value};
    }
    if (above_count > 0) {
        zoom(spec, K, quad_grid, Side::above, false, half_width, above_lo);
        zoom(spec, K, quad_grid, Side::above, true, half_width, above_hi);
        out.above = Interval{above_lo.value, above_hi.value};
    }
    return out;
}

std::vector<Interval> ChannelSpectrum::merged() const {
    std::vector<Interval> parts{three_particle};
    if (two_particle_below) parts.push_back(*two_particle_below);
    if (two_particle_above) parts.push_back(*two_particle_above);
    return merge_intervals(std::move(parts));
}

double ChannelSpectrum::distance(double z) const {
    double best = three_particle.distance(z);
    if (two_particle_below) best = std::min(best, two_particle_below->distance(z));
    if (two_particle_above) best = std::min(best, two_particle_above->distance(z));
    return best;
}

ChannelSpectrum channel_spectrum(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& k_grid,
                                 const TorusGrid& quad_grid) {
    const Extrema band = band_extrema(spec, K, k_grid);
    const LambdaBranches branches = lambda_branches(spec, K, k_grid, quad_grid);

    ChannelSpectrum out;
    out.K = K;
    out.three_particle = {band.lo, band.hi};
    out.two_particle_below = branches.below;
    out.two_particle_above = branches.above;
    out.existence_uniform_below = branches.uniform_below;
    out.existence_uniform_above = branches.uniform_above;
    out.k_samples = static_cast<long>(k_grid.size());
    return out;
}

}  // namespace latspec
