#pragma once

#include "latspec/torus.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace latspec {

/// One term a*cos(m x) + b*sin(m x), applied to every axis.
struct Harmonic {
    int order = 1;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

/// Per-axis trigonometric polynomial
///   f(q) = constant + sum_i sum_m [a_m cos(m q_i) + b_m sin(m q_i)].
/// `dimension` is 0 when the series applies to any dimension.
struct CosineSeries {
    double constant = 0.0;
    std::vector<Harmonic> harmonics;
    int dimension = 0;

    static CosineSeries constant_series(double c) { return CosineSeries{c, {}, 0}; }
    /// sum_i (1 - cos q_i): the nearest-neighbour lattice dispersion.
    static CosineSeries dispersion(int d) { return CosineSeries{double(d), {{1, -1.0, 0.0}}, 0}; }
};

double evaluate(const CosineSeries& f, const Eigen::Ref<const Eigen::VectorXd>& q);
/// Derivatives along one axis; the series is separable so only q_axis matters.
double axis_derivative(const CosineSeries& f, double q_axis);
double axis_second_derivative(const CosineSeries& f, double q_axis);

/// Parameter functions of the operator family:
///   w0(K)
///   w1(K;p)   = w1_self(p) + w1_pair(K-p) + w1_const
///   w2(K;p,q) = w2_const + w2_single(p) + w2_single(q) + w2_recoil(K-p-q)
///   v0(p), v1(p)
/// w2 is symmetric in (p,q) by construction.
struct ModelSpec {
    int dimension = 1;
    CosineSeries w0;
    CosineSeries w1_self;
    CosineSeries w1_pair;
    double w1_const = 0.0;
    double w2_const = 0.0;
    CosineSeries w2_single;
    CosineSeries w2_recoil;
    CosineSeries v0;
    CosineSeries v1;
};

/// eps(q) = sum_i (1 - cos q_i); w0 = eps(K), w1 = eps(p) + eps(K-p),
/// w2 = eps(p) + eps(q) + eps(K-p-q), v0 = alpha, v1 = beta.
ModelSpec model_a(int d, double alpha, double beta);

double eval_w0(const ModelSpec& spec, const TorusPoint& K);
double eval_w1(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& p);
double eval_w2(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& p, const TorusPoint& q);
double eval_v0(const ModelSpec& spec, const TorusPoint& p);
double eval_v1(const ModelSpec& spec, const TorusPoint& p);

struct Extrema {
    double lo = 0.0;
    double hi = 0.0;
};

/// Step tolerance of the coordinate-descent polish that follows the grid scan.
inline constexpr double kPolishTolerance = 1e-10;

/// (m_K, M_K) = (min, max) of w2(K;p,q) over all (p,q). Scans every node pair
/// of `grid` (dimension d), then polishes the best pair by coordinate descent.
Extrema band_extrema(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& grid);

/// (E_min, E_max) of q -> w2(K;k,q), scanned on `grid` and polished.
Extrema fiber_extrema(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k,
                      const TorusGrid& grid);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Checks coefficient finiteness, dimension consistency, and w2 swap symmetry
/// on a fixed pseudo-random sample of 100 triples.
ValidationReport validate(const ModelSpec& spec);

}  // namespace latspec
