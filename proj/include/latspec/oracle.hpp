#pragma once

#include "latspec/channel.hpp"
#include "latspec/faddeev.hpp"
#include "latspec/model.hpp"
#include "latspec/torus.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace latspec {

enum class OracleKind { full_H, fiber_h, channel_Hch };

/// Dense symmetric discretization of one of the operators on a torus grid.
///
/// Basis functions are indicator deltas scaled by 1/sqrt(weight) so that the
/// rectangle-rule inner product becomes the Euclidean one:
///   full_H       vacuum | one-particle nodes | unordered node pairs (i <= j)
///   fiber_h      scalar | nodes
///   channel_Hch  one-particle nodes | ordered node pairs (p-major)
struct OracleMatrix {
    OracleKind kind = OracleKind::full_H;
    TorusGrid grid;
    Eigen::MatrixXd entries;

    Eigen::Index dimension() const noexcept { return entries.rows(); }
};

/// Maximum node count n^d accepted by discretize_H.
inline constexpr Eigen::Index kOracleNodeLimit = 128;

OracleMatrix discretize_H(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& grid);
OracleMatrix discretize_h(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k, const TorusGrid& grid);
OracleMatrix discretize_Hch(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& grid);

/// All eigenvalues, ascending.
Eigen::VectorXd eigenvalues(const OracleMatrix& matrix);

/// Index of the unordered pair (i, j), i <= j, in the full_H pair block.
Eigen::Index pair_index(Eigen::Index i, Eigen::Index j, Eigen::Index n);

/// Coefficients of a Faddeev eigenvector in the full_H basis on the same grid.
Eigen::VectorXd embed_full_H(const FaddeevEigenvector& f, const TorusGrid& grid);

struct SpectrumComparison {
    std::vector<Interval> essential;   // merged channel spectrum
    std::vector<double> discrete;      // analytic roots
    Eigen::VectorXd oracle_eigenvalues;
    std::vector<double> coverage_violations;  // oracle values explained by neither set
    std::vector<double> missing_discrete;     // analytic roots with no oracle partner
    double ess_tol = 0.0;
    double disc_tol = 0.0;

    bool passed() const noexcept { return coverage_violations.empty() && missing_discrete.empty(); }
};

/// Every oracle eigenvalue must lie within ess_tol of the channel spectrum or
/// within disc_tol of an analytic root; every analytic root must have an
/// oracle eigenvalue within disc_tol.
SpectrumComparison compare_spectra(const ChannelSpectrum& sigma, const std::vector<double>& discrete,
                                   const Eigen::VectorXd& oracle_eigs, double ess_tol, double disc_tol);

}  // namespace latspec
