#pragma once

#include "latspec/channel.hpp"
#include "latspec/model.hpp"
#include "latspec/torus.hpp"

#include <Eigen/Dense>

#include <vector>

namespace latspec {

/// Nystrom discretization of the compact block operator T(K,z) on
/// C + L2(T^d). Row/column 0 is the scalar component; rows/columns 1..N are
/// function values at the quadrature nodes:
///   T(0,0)     = 1 + w0(K) - z
///   T(0,1+j)   = w * v0(t_j)
///   T(1+i,0)   = -v0(p_i) / Delta(p_i; z)
///   T(1+i,1+j) = w * v1(p_i) v1(t_j) / (2 Delta(p_i; z) (w2(K;p_i,t_j) - z))
struct FaddeevMatrix {
    TorusPoint K;
    double z = 0.0;
    Eigen::MatrixXd entries;

    Eigen::Index size() const noexcept { return entries.rows(); }
};

/// A solution (f0, f1, f2) of the eigenvalue equations at a root z, sampled on
/// the quadrature grid. f2 is rebuilt from f1 by
///   f2(p,q) = -(v1(q) f1(p) + v1(p) f1(q)) / (2 (w2(K;p,q) - z)).
struct FaddeevEigenvector {
    double z = 0.0;
    double f0 = 0.0;
    Eigen::VectorXd f1;
    Eigen::MatrixXd f2;
};

/// Per-(K, grid) cache of parameter samples; evaluating at many z reuses it.
class FaddeevSystem {
public:
    FaddeevSystem(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& quad_grid);

    const TorusPoint& K() const noexcept { return K_; }
    const TorusGrid& grid() const noexcept { return grid_; }
    /// [m_K, M_K] on the quadrature grid, polished.
    const Extrema& three_particle_band() const noexcept { return band_; }

    /// Delta(p_i; z) at every quadrature node.
    Eigen::VectorXd deltas(double z) const;

    /// Throws DomainError when z is within kGapGuard of [m_K, M_K] or when
    /// |Delta(p; z)| < 1e-12 at some node.
    FaddeevMatrix build(double z) const;
    /// Omega(z) = det(I - T(K,z)) by partial-pivot LU.
    double fredholm_det(double z) const;
    /// min_i |lambda_i(T) - 1|.
    double eigen_check(double z) const;
    /// Number of eigenvalues of T within `cluster` of 1.
    int multiplicity(double z, double cluster = 1e-4) const;
    /// Null vector of I - T(K,z) (smallest singular vector) with f2 rebuilt.
    FaddeevEigenvector eigenvector(double z) const;

private:
    TorusPoint K_;
    TorusGrid grid_;
    double w0_ = 0.0;
    Eigen::VectorXd v0_;
    Eigen::VectorXd v1_;
    Eigen::VectorXd w1_;
    Eigen::MatrixXd w2_;
    Extrema band_;
};

struct DiscreteEigenvalue {
    double z = 0.0;
    double residual = 0.0;  // |Omega(z)|
    int multiplicity = 1;
};

struct DiscreteSpectrumReport {
    std::vector<DiscreteEigenvalue> eigenvalues;  // ascending
    Interval search_window;
    ChannelSpectrum sigma_K_used;
};

struct DiscreteSearchOptions {
    int mesh_points = 2001;
};

/// [m - 2(M - m) - 1, M + 2(M - m) + 1] for the three-particle band [m, M].
Interval default_window(const ChannelSpectrum& sigma);

FaddeevMatrix build_T(const ModelSpec& spec, const TorusPoint& K, double z, const TorusGrid& quad_grid);
double fredholm_det(const ModelSpec& spec, const TorusPoint& K, double z, const TorusGrid& quad_grid);
double eigen_check(const ModelSpec& spec, const TorusPoint& K, double z, const TorusGrid& quad_grid);

/// Real roots of Omega in `window` minus the gap-guarded channel spectrum:
/// sign changes on a uniform mesh are bisected to full precision; local
/// minima of |Omega| without a sign change are accepted when eigen_check
/// confirms them (even-multiplicity roots).
DiscreteSpectrumReport discrete_spectrum(const FaddeevSystem& system, const ChannelSpectrum& sigma,
                                         const Interval& window, const DiscreteSearchOptions& options = {});
DiscreteSpectrumReport discrete_spectrum(const ModelSpec& spec, const TorusPoint& K, const Interval& window,
                                         const TorusGrid& quad_grid, const TorusGrid& k_grid,
                                         const DiscreteSearchOptions& options = {});

}  // namespace latspec
