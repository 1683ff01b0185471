#pragma once

#include "latspec/model.hpp"
#include "latspec/torus.hpp"

#include <Eigen/Dense>

#include <optional>

namespace latspec {

/// Half-width of the forbidden neighbourhood of a band in which the
/// determinant's integrand has a pole.
inline constexpr double kGapGuard = 1e-8;
/// Distance from the band edge at which existence of an eigenvalue is decided.
inline constexpr double kEdgeProbe = 1e-6;
/// Bands narrower than this are treated as a single point.
inline constexpr double kDegenerateWidth = 1e-9;
/// Outward bracket expansion gives up beyond this magnitude.
inline constexpr double kBracketLimit = 1e6;

/// Essential spectrum [E_min, E_max] of one fiber.
struct FiberBand {
    double e_min = 0.0;
    double e_max = 0.0;
    bool degenerate = false;

    static FiberBand from_extrema(const Extrema& e) { return {e.lo, e.hi, e.hi - e.lo < kDegenerateWidth}; }
};

/// The band plus at most one eigenvalue on each side of it.
struct FiberSpectrum {
    FiberBand band;
    std::optional<double> below;
    std::optional<double> above;
};

/// Generalized Friedrichs model h(K,k) on C + L2(T^d), discretized for its
/// Fredholm determinant
///   Delta(z) = w1(K;k) - z - (1/2) int v1(t)^2 / (w2(K;k,t) - z) dt
/// on a quadrature grid. The band comes from fiber_extrema on the same grid.
class FiberModel {
public:
    FiberModel(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k, const TorusGrid& quad_grid);

    const FiberBand& band() const noexcept { return band_; }
    double w1() const noexcept { return w1_; }

    /// Throws DomainError when z lies in [e_min - kGapGuard, e_max + kGapGuard].
    double delta(double z) const;

    /// Root of Delta below the band, if Delta(e_min - kEdgeProbe) < 0.
    std::optional<double> eigenvalue_below() const;
    /// Root of Delta above the band, if Delta(e_max + kEdgeProbe) > 0.
    std::optional<double> eigenvalue_above() const;
    FiberSpectrum spectrum() const;

private:
    double delta_unchecked(double z) const;

    double w1_ = 0.0;
    double weight_ = 0.0;
    Eigen::ArrayXd w2_;
    Eigen::ArrayXd v1_sq_;
    FiberBand band_;
};

double delta(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k, double z, const TorusGrid& quad_grid);
FiberBand fiber_essential_spectrum(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k,
                                   const TorusGrid& refine_grid);
std::optional<double> fiber_eigenvalue_below(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k,
                                             const TorusGrid& quad_grid);
std::optional<double> fiber_eigenvalue_above(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k,
                                             const TorusGrid& quad_grid);
FiberSpectrum fiber_discrete_spectrum(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k,
                                      const TorusGrid& quad_grid);

}  // namespace latspec
