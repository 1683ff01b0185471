#pragma once

#include "latspec/friedrichs.hpp"
#include "latspec/model.hpp"
#include "latspec/torus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace latspec {

/// Closed interval [lo, hi]; lo == hi is a single point.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
    bool contains(double x, double tol = 0.0) const noexcept { return x >= lo - tol && x <= hi + tol; }
    double distance(double x) const noexcept { return x < lo ? lo - x : (x > hi ? x - hi : 0.0); }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intervals closer than this are considered touching and merged.
inline constexpr double kTouchGap = 1e-12;

/// Sorted canonical union of closed intervals. Inverted inputs (lo > hi)
/// throw InvalidArgument.
std::vector<Interval> merge_intervals(std::vector<Interval> intervals);

/// Two-particle branches of the channel spectrum: hulls of the fiber
/// eigenvalues below and above the fiber bands, taken over all scanned k.
struct LambdaBranches {
    std::optional<Interval> below;
    std::optional<Interval> above;
    /// True when every scanned k carried an eigenvalue on that side.
    bool uniform_below = false;
    bool uniform_above = false;
};

/// Sweeps the fibers over every node of `k_grid` (Delta evaluated on
/// `quad_grid`), then polishes the k attaining each hull endpoint by three
/// rounds of tenfold local zoom.
LambdaBranches lambda_branches(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& k_grid,
                               const TorusGrid& quad_grid);

/// Spectrum of the channel operator: [m_K, M_K] together with the two-particle
/// branches.
struct ChannelSpectrum {
    TorusPoint K;
    Interval three_particle;
    std::optional<Interval> two_particle_below;
    std::optional<Interval> two_particle_above;
    bool existence_uniform_below = false;
    bool existence_uniform_above = false;
    long k_samples = 0;

    /// Canonical disjoint union of all branches (at most three intervals).
    std::vector<Interval> merged() const;
    /// Distance from z to the union; 0 inside.
    double distance(double z) const;
    bool contains(double z, double tol = 0.0) const { return distance(z) <= tol; }
};

ChannelSpectrum channel_spectrum(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& k_grid,
                                 const TorusGrid& quad_grid);

}  // namespace latspec
