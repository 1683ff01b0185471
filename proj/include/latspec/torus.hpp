#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace latspec {

/// A point of the torus (-pi, pi]^d, one coordinate per axis (radians).
using TorusPoint = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Default cap on the number of nodes make_grid will allocate.
inline constexpr std::size_t kDefaultNodeLimit = std::size_t{1} << 22;

/// Uniform tensor-product grid on the torus with equal rectangle-rule weights.
///
/// Nodes are stored column-wise (d x n^d). The 1-D node set is
/// {-pi + 2pi(j+1)/n : j = 0..n-1}, so pi is always a node and 0 is a node
/// whenever n is even. Axis 0 varies slowest.
struct TorusGrid {
    int dimension = 0;
    int points_per_axis = 0;
    Eigen::MatrixXd nodes;
    double weight = 0.0;

    Eigen::Index size() const noexcept { return nodes.cols(); }
    auto node(Eigen::Index i) const { return nodes.col(i); }
    /// Sum of all weights, i.e. the quadrature's total measure.
    double total_measure() const noexcept { return weight * static_cast<double>(size()); }
};

/// Reduces every coordinate modulo 2pi into (-pi, pi]. Values already in range
/// are returned unchanged. Throws InvalidArgument on empty or non-finite input.
TorusPoint canonicalize(const Eigen::Ref<const Eigen::VectorXd>& raw);

/// Scalar version of canonicalize.
double canonicalize_angle(double x);

/// Throws InvalidArgument if d < 1 or n < 2, ResourceError if n^d > node_limit.
TorusGrid make_grid(int d, int n, std::size_t node_limit = kDefaultNodeLimit);

/// Rectangle rule: weight * sum(samples). Spectrally accurate for smooth
/// periodic integrands.
double integrate(const Eigen::Ref<const Eigen::VectorXd>& samples, const TorusGrid& grid);

/// The point (value, ..., value) in dimension d, e.g. zero_point / pi_point.
inline TorusPoint constant_point(int d, double value) { return TorusPoint::Constant(d, value); }
inline TorusPoint zero_point(int d) { return TorusPoint::Zero(d); }
inline TorusPoint pi_point(int d) { return TorusPoint::Constant(d, kPi); }

}  // namespace latspec
