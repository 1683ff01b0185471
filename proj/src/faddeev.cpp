#include "latspec/faddeev.hpp"

#include "bisect.hpp"
#include "latspec/error.hpp"
#include "latspec/friedrichs.hpp"
#include "latspec/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace latspec {

FaddeevSystem::FaddeevSystem(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& quad_grid)
    : K_(K), grid_(quad_grid), w0_(eval_w0(spec, K)), band_(band_extrema(spec, K, quad_grid)) {
    const Eigen::Index n = quad_grid.size();
    v0_.resize(n);
    v1_.resize(n);
    w1_.resize(n);
    w2_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const TorusPoint p = quad_grid.node(i);
        v0_(i) = eval_v0(spec, p);
        v1_(i) = eval_v1(spec, p);
        w1_(i) = eval_w1(spec, K, p);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            w2_(i, j) = w2_(j, i) = eval_w2(spec, K, quad_grid.node(i), quad_grid.node(j));
        }
    }
}

Eigen::VectorXd FaddeevSystem::deltas(double z) const {
    const Eigen::ArrayXd v1_sq = v1_.array().square();
    Eigen::VectorXd out(w1_.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        out(i) = w1_(i) - z - 0.5 * grid_.weight * (v1_sq / (w2_.col(i).array() - z)).sum();
    }
    return out;
}

FaddeevMatrix FaddeevSystem::build(double z) const {
    if (z >= band_.lo - kGapGuard && z <= band_.hi + kGapGuard) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "build_T: z = " << z << " lies in the three-particle band [" << band_.lo << ", " << band_.hi << "]";
        throw DomainError(msg.str());
    }
    const Eigen::VectorXd delta = deltas(z);
    Eigen::Index worst = 0;
    delta.cwiseAbs().minCoeff(&worst);
    if (std::abs(delta(worst)) < 1e-12) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "build_T: near-singular fiber at p = (" << grid_.node(worst).transpose() << "), z = " << z;
        throw DomainError(msg.str());
    }

    const Eigen::Index n = w1_.size();
    const double w = grid_.weight;
    FaddeevMatrix T{K_, z, Eigen::MatrixXd(n + 1, n + 1)};
    T.entries(0, 0) = 1.0 + w0_ - z;
    T.entries.block(0, 1, 1, n) = w * v0_.transpose();
    T.entries.block(1, 0, n, 1) = -v0_.cwiseQuotient(delta);
    const Eigen::VectorXd row_scale = 0.5 * w * v1_.cwiseQuotient(delta);
    for (Eigen::Index j = 0; j < n; ++j) {
        T.entries.col(j + 1).tail(n) = row_scale.cwiseProduct(v1_(j) * (w2_.col(j).array() - z).inverse().matrix());
    }
    return T;
}

double FaddeevSystem::fredholm_det(double z) const {
    const FaddeevMatrix T = build(z);
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(T.size(), T.size()) - T.entries;
    return A.partialPivLu().determinant();
}

double FaddeevSystem::eigen_check(double z) const {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(build(z).entries, false);
    if (solver.info() != Eigen::Success) throw NumericalFailure("eigen_check: eigensolver did not converge");
    return (solver.eigenvalues().array() - 1.0).abs().minCoeff();
}

int FaddeevSystem::multiplicity(double z, double cluster) const {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(build(z).entries, false);
    if (solver.info() != Eigen::Success) throw NumericalFailure("multiplicity: eigensolver did not converge");
    return static_cast<int>(((solver.eigenvalues().array() - 1.0).abs() < cluster).count());
}

FaddeevEigenvector FaddeevSystem::eigenvector(double z) const {
    const FaddeevMatrix T = build(z);
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(T.size(), T.size()) - T.entries;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const Eigen::VectorXd g = svd.matrixV().col(A.cols() - 1);

    const Eigen::Index n = w1_.size();
    FaddeevEigenvector out;
    out.z = z;
    out.f0 = g(0);
    out.f1 = g.tail(n);
    out.f2.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out.f2(i, j) = -(v1_(j) * out.f1(i) + v1_(i) * out.f1(j)) / (2.0 * (w2_(i, j) - z));
        }
    }
    return out;
}

Interval default_window(const ChannelSpectrum& sigma) {
    const double m = sigma.three_particle.lo, M = sigma.three_particle.hi;
    return {m - 2.0 * (M - m) - 1.0, M + 2.0 * (M - m) + 1.0};
}

FaddeevMatrix build_T(const ModelSpec& spec, const TorusPoint& K, double z, const TorusGrid& quad_grid) {
    return FaddeevSystem(spec, K, quad_grid).build(z);
}

double fredholm_det(const ModelSpec& spec, const TorusPoint& K, double z, const TorusGrid& quad_grid) {
    return FaddeevSystem(spec, K, quad_grid).fredholm_det(z);
}

double eigen_check(const ModelSpec& spec, const TorusPoint& K, double z, const TorusGrid& quad_grid) {
    return FaddeevSystem(spec, K, quad_grid).eigen_check(z);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kConfirmDistance = 1e-6;

double safe_det(const FaddeevSystem& system, double z) {
    try {
        return system.fredholm_det(z);
    } catch (const DomainError&) {
        return kNaN;
    }
}

// Golden-section minimization of |f| on [a, b].
template <class F>
double golden_min(F&& f, double a, double b) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = std::abs(f(c)), fd = std::abs(f(d));
    while (b - a > 1e-12 * std::max(1.0, std::abs(a))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = std::abs(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = std::abs(f(d));
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

DiscreteSpectrumReport discrete_spectrum(const FaddeevSystem& system, const ChannelSpectrum& sigma,
                                         const Interval& window, const DiscreteSearchOptions& options) {
    if (!(window.lo <= window.hi)) throw InvalidArgument("discrete_spectrum: empty window");
    if (options.mesh_points < 2) throw InvalidArgument("discrete_spectrum: mesh needs at least 2 points");

    DiscreteSpectrumReport report;
    report.search_window = window;
    report.sigma_K_used = sigma;

    // Allowed segments: window minus the channel spectrum fattened by twice the guard.
    std::vector<Interval> segments;
    double cursor = window.lo;
    for (const auto& iv : sigma.merged()) {
        const double cut_lo = iv.lo - 2.0 * kGapGuard, cut_hi = iv.hi + 2.0 * kGapGuard;
        if (cut_lo > cursor) segments.push_back({cursor, std::min(cut_lo, window.hi)});
        cursor = std::max(cursor, cut_hi);
        if (cursor >= window.hi) break;
    }
    if (cursor < window.hi) segments.push_back({cursor, window.hi});

    const double step = (window.hi - window.lo) / (options.mesh_points - 1);
    std::vector<double> roots;
    for (const auto& seg : segments) {
        if (seg.hi <= seg.lo) continue;
        std::vector<double> zs{seg.lo};
        const long first = static_cast<long>(std::floor((seg.lo - window.lo) / step)) + 1;
        for (long j = std::max(0L, first); j < options.mesh_points; ++j) {
            const double z = window.lo + j * step;
            if (z >= seg.hi) break;
            if (z > seg.lo) zs.push_back(z);
        }
        zs.push_back(seg.hi);

        std::vector<double> omega(zs.size());
        parallel_for(zs.size(), [&](std::size_t i) { omega[i] = safe_det(system, zs[i]); });

        for (std::size_t i = 0; i < zs.size(); ++i) {
            if (omega[i] == 0.0) roots.push_back(zs[i]);
            if (i + 1 < zs.size() && std::isfinite(omega[i]) && std::isfinite(omega[i + 1]) && omega[i] != 0.0 &&
                omega[i + 1] != 0.0 && (omega[i] < 0.0) != (omega[i + 1] < 0.0)) {
                roots.push_back(detail::bisect([&](double z) { return system.fredholm_det(z); }, zs[i], zs[i + 1],
                                               omega[i]));
            }
        }

        // Even-multiplicity candidates: interior local minima of |Omega| without a sign change.
        for (std::size_t i = 1; i + 1 < zs.size(); ++i) {
            const double a = omega[i - 1], b = omega[i], c = omega[i + 1];
            if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) continue;
            if ((a < 0.0) != (b < 0.0) || (b < 0.0) != (c < 0.0)) continue;
            if (!(std::abs(b) < std::abs(a) && std::abs(b) < std::abs(c))) continue;
            const double z = golden_min([&](double x) { return system.fredholm_det(x); }, zs[i - 1], zs[i + 1]);
            if (system.eigen_check(z) < kConfirmDistance) roots.push_back(z);
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double z : roots) {
        if (unique.empty() || z - unique.back() > 1e-9) unique.push_back(z);
    }
    for (double z : unique) {
        report.eigenvalues.push_back({z, std::abs(system.fredholm_det(z)), std::max(1, system.multiplicity(z))});
    }
    return report;
}

DiscreteSpectrumReport discrete_spectrum(const ModelSpec& spec, const TorusPoint& K, const Interval& window,
                                         const TorusGrid& quad_grid, const TorusGrid& k_grid,
                                         const DiscreteSearchOptions& options) {
    const ChannelSpectrum sigma = channel_spectrum(spec, K, k_grid, quad_grid);
    const FaddeevSystem system(spec, K, quad_grid);
    return discrete_spectrum(system, sigma, window, options);
}

}  // namespace latspec
