#include "latspec/friedrichs.hpp"

#include "bisect.hpp"
#include "latspec/error.hpp"

#include <cmath>
#include <sstream>

namespace latspec {

FiberModel::FiberModel(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k, const TorusGrid& quad_grid)
    : w1_(eval_w1(spec, K, k)),
      weight_(quad_grid.weight),
      w2_(quad_grid.size()),
      v1_sq_(quad_grid.size()),
      band_(FiberBand::from_extrema(fiber_extrema(spec, K, k, quad_grid))) {
    for (Eigen::Index j = 0; j < quad_grid.size(); ++j) {
        const TorusPoint t = quad_grid.node(j);
        w2_(j) = eval_w2(spec, K, k, t);
        const double v = eval_v1(spec, t);
        v1_sq_(j) = v * v;
    }
}

double FiberModel::delta_unchecked(double z) const {
    return w1_ - z - 0.5 * weight_ * (v1_sq_ / (w2_ - z)).sum();
}

double FiberModel::delta(double z) const {
    if (z >= band_.e_min - kGapGuard && z <= band_.e_max + kGapGuard) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "Delta undefined on fiber band: z = " << z << " in [" << band_.e_min << ", " << band_.e_max << "]";
        throw DomainError(msg.str());
    }
    return delta_unchecked(z);
}

std::optional<double> FiberModel::eigenvalue_below() const {
    const double edge = band_.e_min - kEdgeProbe;
    const double at_edge = delta(edge);
    if (at_edge >= 0.0) return std::nullopt;

    double step = 1.0;
    double lo = edge - step;
    double at_lo = delta(lo);
    while (at_lo <= 0.0) {
        step *= 2.0;
        lo = edge - step;
        if (std::abs(lo) > kBracketLimit) throw NumericalFailure("fiber_eigenvalue_below: bracket expansion diverged");
        at_lo = delta(lo);
    }
    return detail::bisect([this](double z) { return delta_unchecked(z); }, lo, edge, at_lo);
}

std::optional<double> FiberModel::eigenvalue_above() const {
    const double edge = band_.e_max + kEdgeProbe;
    const double at_edge = delta(edge);
    if (at_edge <= 0.0) return std::nullopt;

    double step = 1.0;
    double hi = edge + step;
    double at_hi = delta(hi);
    while (at_hi >= 0.0) {
        step *= 2.0;
        hi = edge + step;
        if (std::abs(hi) > kBracketLimit) throw NumericalFailure("fiber_eigenvalue_above: bracket expansion diverged");
        at_hi = delta(hi);
    }
    return detail::bisect([this](double z) { return delta_unchecked(z); }, edge, hi, at_edge);
}

FiberSpectrum FiberModel::spectrum() const { return {band_, eigenvalue_below(), eigenvalue_above()}; }

double delta(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k, double z, const TorusGrid& quad_grid) {
    return FiberModel(spec, K, k, quad_grid).delta(z);
}

FiberBand fiber_essential_spectrum(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k,
                                   const TorusGrid& refine_grid) {
    return FiberBand::from_extrema(fiber_extrema(spec, K, k, refine_grid));
}

std::optional<double> fiber_eigenvalue_below(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k,
                                             const TorusGrid& quad_grid) {
    return FiberModel(spec, K, k, quad_grid).eigenvalue_below();
}

std::optional<double> fiber_eigenvalue_above(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k,
                                             const TorusGrid& quad_grid) {
    return FiberModel(spec, K, k, quad_grid).eigenvalue_above();
}

FiberSpectrum fiber_discrete_spectrum(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k,
                                      const TorusGrid& quad_grid) {
    return FiberModel(spec, K, k, quad_grid).spectrum();
}

}  // namespace latspec
