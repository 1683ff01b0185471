#include "latspec/torus.hpp"

#include "latspec/error.hpp"

#include <cmath>
#include <string>

namespace latspec {

double canonicalize_angle(double x) {
    if (!std::isfinite(x)) throw InvalidArgument("canonicalize: non-finite coordinate");
    if (x > -kPi && x <= kPi) return x;
    double r = std::remainder(x, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

TorusPoint canonicalize(const Eigen::Ref<const Eigen::VectorXd>& raw) {
    if (raw.size() < 1) throw InvalidArgument("canonicalize: empty point");
    TorusPoint out(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i) out(i) = canonicalize_angle(raw(i));
    return out;
}

TorusGrid make_grid(int d, int n, std::size_t node_limit) {
    if (d < 1) throw InvalidArgument("make_grid: dimension must be >= 1");
    if (n < 2) throw InvalidArgument("make_grid: points per axis must be >= 2");

    std::size_t count = 1;
    for (int a = 0; a < d; ++a) {
        if (count > node_limit / static_cast<std::size_t>(n)) {
            throw ResourceError("make_grid: " + std::to_string(n) + "^" + std::to_string(d) +
                                " nodes exceeds limit " + std::to_string(node_limit));
        }
        count *= static_cast<std::size_t>(n);
    }

    Eigen::VectorXd axis(n);
    const double step = kTwoPi / n;
    for (int j = 0; j < n; ++j) axis(j) = j + 1 == n ? kPi : -kPi + step * (j + 1);

    TorusGrid grid;
    grid.dimension = d;
    grid.points_per_axis = n;
    grid.nodes.resize(d, static_cast<Eigen::Index>(count));
    grid.weight = std::pow(step, d);

    for (std::size_t i = 0; i < count; ++i) {
        std::size_t rest = i;
        for (int a = d - 1; a >= 0; --a) {
            grid.nodes(a, static_cast<Eigen::Index>(i)) = axis(static_cast<Eigen::Index>(rest % n));
            rest /= n;
        }
    }
    return grid;
}

double integrate(const Eigen::Ref<const Eigen::VectorXd>& samples, const TorusGrid& grid) {
    if (samples.size() != grid.size()) {
        throw InvalidArgument("integrate: " + std::to_string(samples.size()) + " samples for " +
                              std::to_string(grid.size()) + " nodes");
    }
    if (!samples.allFinite()) throw InvalidArgument("integrate: non-finite sample");
    return grid.weight * samples.sum();
}

}  // namespace latspec
