#include "latspec/oracle.hpp"

#include "latspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace latspec {

namespace {

void symmetrize(Eigen::MatrixXd& A) {
    const Eigen::MatrixXd upper = A.triangularView<Eigen::StrictlyUpper>();
    A.triangularView<Eigen::StrictlyLower>() = upper.transpose();
}

void require_grid(const ModelSpec& spec, const TorusGrid& grid, const char* what) {
    if (grid.dimension != spec.dimension) throw InvalidArgument(std::string(what) + ": grid dimension mismatch");
}

}  // namespace

Eigen::Index pair_index(Eigen::Index i, Eigen::Index j, Eigen::Index n) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

OracleMatrix discretize_H(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& grid) {
    require_grid(spec, grid, "discretize_H");
    const Eigen::Index n = grid.size();
    if (n > kOracleNodeLimit) {
        throw ResourceError("discretize_H: " + std::to_string(n) + " nodes exceeds limit " +
                            std::to_string(kOracleNodeLimit));
    }
    const Eigen::Index pairs = n * (n + 1) / 2;
    const double w = grid.weight, sw = std::sqrt(w), sw2 = std::sqrt(0.5 * w);

    Eigen::VectorXd v0(n), v1(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v0(i) = eval_v0(spec, grid.node(i));
        v1(i) = eval_v1(spec, grid.node(i));
    }

    OracleMatrix out{OracleKind::full_H, grid, Eigen::MatrixXd::Zero(1 + n + pairs, 1 + n + pairs)};
    auto& A = out.entries;
    const Eigen::Index one = 1, two = 1 + n;

    A(0, 0) = eval_w0(spec, K);
    for (Eigen::Index i = 0; i < n; ++i) {
        A(0, one + i) = sw * v0(i);
        A(one + i, one + i) = eval_w1(spec, K, grid.node(i));
    }
    // Two-particle diagonal and the creation block (1/2)(v1(p) f1(q) + v1(q) f1(p)).
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const Eigen::Index s = two + pair_index(i, j, n);
            A(s, s) = eval_w2(spec, K, grid.node(i), grid.node(j));
            if (i == j) {
                A(one + i, s) += sw * v1(i);
            } else {
                A(one + j, s) += sw2 * v1(i);
                A(one + i, s) += sw2 * v1(j);
            }
        }
    }
    symmetrize(A);
    return out;
}

OracleMatrix discretize_h(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k, const TorusGrid& grid) {
    require_grid(spec, grid, "discretize_h");
    const Eigen::Index n = grid.size();
    const double c = std::sqrt(0.5 * grid.weight);
    OracleMatrix out{OracleKind::fiber_h, grid, Eigen::MatrixXd::Zero(1 + n, 1 + n)};
    auto& A = out.entries;
    A(0, 0) = eval_w1(spec, K, k);
    for (Eigen::Index j = 0; j < n; ++j) {
        const TorusPoint q = grid.node(j);
        A(0, 1 + j) = c * eval_v1(spec, q);
        A(1 + j, 1 + j) = eval_w2(spec, K, k, q);
    }
    symmetrize(A);
    return out;
}

OracleMatrix discretize_Hch(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& grid) {
    require_grid(spec, grid, "discretize_Hch");
    const Eigen::Index n = grid.size();
    if (n > kOracleNodeLimit) {
        throw ResourceError("discretize_Hch: " + std::to_string(n) + " nodes exceeds limit " +
                            std::to_string(kOracleNodeLimit));
    }
    const double c = std::sqrt(0.5 * grid.weight);
    OracleMatrix out{OracleKind::channel_Hch, grid, Eigen::MatrixXd::Zero(n + n * n, n + n * n)};
    auto& A = out.entries;
    for (Eigen::Index p = 0; p < n; ++p) {
        const TorusPoint pp = grid.node(p);
        A(p, p) = eval_w1(spec, K, pp);
        for (Eigen::Index q = 0; q < n; ++q) {
            const Eigen::Index s = n + p * n + q;
            A(s, s) = eval_w2(spec, K, pp, grid.node(q));
            A(p, s) = c * eval_v1(spec, grid.node(q));
        }
    }
    symmetrize(A);
    return out;
}

Eigen::VectorXd eigenvalues(const OracleMatrix& matrix) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix.entries, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalFailure("eigenvalues: symmetric eigensolver did not converge");
    return solver.eigenvalues();
}

Eigen::VectorXd embed_full_H(const FaddeevEigenvector& f, const TorusGrid& grid) {
    const Eigen::Index n = grid.size();
    if (f.f1.size() != n) throw InvalidArgument("embed_full_H: eigenvector and grid sizes differ");
    const double w = grid.weight;
    Eigen::VectorXd c(1 + n + n * (n + 1) / 2);
    c(0) = f.f0;
    c.segment(1, n) = std::sqrt(w) * f.f1;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            c(1 + n + pair_index(i, j, n)) = i == j ? w * f.f2(i, i) : std::sqrt(2.0) * w * f.f2(i, j);
        }
    }
    return c;
}

SpectrumComparison compare_spectra(const ChannelSpectrum& sigma, const std::vector<double>& discrete,
                                   const Eigen::VectorXd& oracle_eigs, double ess_tol, double disc_tol) {
    SpectrumComparison out;
    out.essential = sigma.merged();
    out.discrete = discrete;
    out.oracle_eigenvalues = oracle_eigs;
    out.ess_tol = ess_tol;
    out.disc_tol = disc_tol;

    auto near_root = [&](double x) {
        return std::any_of(discrete.begin(), discrete.end(), [&](double z) { return std::abs(z - x) <= disc_tol; });
    };
    for (double x : oracle_eigs) {
        if (sigma.distance(x) <= ess_tol || near_root(x)) continue;
        out.coverage_violations.push_back(x);
    }
    for (double z : discrete) {
        const bool matched = oracle_eigs.size() > 0 && (oracle_eigs.array() - z).abs().minCoeff() <= disc_tol;
        if (!matched) out.missing_discrete.push_back(z);
    }
    return out;
}

}  // namespace latspec
