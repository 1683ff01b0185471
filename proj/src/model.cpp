#include "latspec/model.hpp"

#include "latspec/error.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

namespace latspec {

namespace {

double axis_value(const CosineSeries& f, double x) {
    double s = 0.0;
    for (const auto& h : f.harmonics) s += h.cos_coeff * std::cos(h.order * x) + h.sin_coeff * std::sin(h.order * x);
    return s;
}

void require_dim(const ModelSpec& spec, const TorusPoint& x, const char* what) {
    if (x.size() != spec.dimension) {
        throw InvalidArgument(std::string(what) + ": point has dimension " + std::to_string(x.size()) +
                              ", model has " + std::to_string(spec.dimension));
    }
}

// Smooth objective over R^n with per-coordinate first and second derivatives.
struct Objective {
    std::function<double(const Eigen::VectorXd&)> value;
    std::function<double(const Eigen::VectorXd&, Eigen::Index)> d1;
    std::function<double(const Eigen::VectorXd&, Eigen::Index)> d2;
};

// Coordinate descent with safeguarded 1-D Newton steps. sign = +1 minimizes,
// -1 maximizes. Steps are capped at `max_step` (the scan spacing).
double polish(const Objective& f, Eigen::VectorXd& x, double sign, double max_step) {
    double fx = sign * f.value(x);
    for (int sweep = 0; sweep < 1000; ++sweep) {
        double largest = 0.0;
        for (Eigen::Index c = 0; c < x.size(); ++c) {
            const double g = sign * f.d1(x, c);
            const double h = sign * f.d2(x, c);
            if (std::abs(g) <= 1e-13 * (1.0 + std::abs(fx))) continue;
            double step = h > 0.0 ? -g / h : -std::copysign(0.25 * max_step, g);
            if (std::abs(step) > max_step) step = std::copysign(max_step, step);
            while (std::abs(step) > 1e-15) {
                Eigen::VectorXd trial = x;
                trial(c) += step;
                const double ft = sign * f.value(trial);
                if (ft < fx) {
                    x = trial;
                    fx = ft;
                    largest = std::max(largest, std::abs(step));
                    break;
                }
                step *= 0.5;
            }
        }
        if (largest < kPolishTolerance) break;
    }
    return sign * fx;
}

}  // namespace

double evaluate(const CosineSeries& f, const Eigen::Ref<const Eigen::VectorXd>& q) {
    double s = f.constant;
    for (Eigen::Index i = 0; i < q.size(); ++i) s += axis_value(f, q(i));
    return s;
}

double axis_derivative(const CosineSeries& f, double x) {
    double s = 0.0;
    for (const auto& h : f.harmonics)
        s += h.order * (h.sin_coeff * std::cos(h.order * x) - h.cos_coeff * std::sin(h.order * x));
    return s;
}

double axis_second_derivative(const CosineSeries& f, double x) {
    double s = 0.0;
    for (const auto& h : f.harmonics)
        s -= double(h.order) * h.order * (h.cos_coeff * std::cos(h.order * x) + h.sin_coeff * std::sin(h.order * x));
    return s;
}

ModelSpec model_a(int d, double alpha, double beta) {
    const auto eps = CosineSeries::dispersion(d);
    ModelSpec spec;
    spec.dimension = d;
    spec.w0 = eps;
    spec.w1_self = eps;
    spec.w1_pair = eps;
    spec.w2_single = eps;
    spec.w2_recoil = eps;
    spec.v0 = CosineSeries::constant_series(alpha);
    spec.v1 = CosineSeries::constant_series(beta);
    return spec;
}

double eval_w0(const ModelSpec& spec, const TorusPoint& K) {
    require_dim(spec, K, "eval_w0");
    return evaluate(spec.w0, K);
}

double eval_w1(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& p) {
    require_dim(spec, K, "eval_w1");
    require_dim(spec, p, "eval_w1");
    return evaluate(spec.w1_self, p) + evaluate(spec.w1_pair, K - p) + spec.w1_const;
}

double eval_w2(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& p, const TorusPoint& q) {
    require_dim(spec, K, "eval_w2");
    require_dim(spec, p, "eval_w2");
    require_dim(spec, q, "eval_w2");
    return spec.w2_const + evaluate(spec.w2_single, p) + evaluate(spec.w2_single, q) +
           evaluate(spec.w2_recoil, K - p - q);
}

double eval_v0(const ModelSpec& spec, const TorusPoint& p) {
    require_dim(spec, p, "eval_v0");
    return evaluate(spec.v0, p);
}

double eval_v1(const ModelSpec& spec, const TorusPoint& p) {
    require_dim(spec, p, "eval_v1");
    return evaluate(spec.v1, p);
}

Extrema band_extrema(const ModelSpec& spec, const TorusPoint& K, const TorusGrid& grid) {
    require_dim(spec, K, "band_extrema");
    if (grid.dimension != spec.dimension) throw InvalidArgument("band_extrema: grid dimension mismatch");
    const int d = spec.dimension;
    const Eigen::Index n = grid.size();

    Eigen::VectorXd single(n);
    for (Eigen::Index i = 0; i < n; ++i) single(i) = evaluate(spec.w2_single, grid.node(i));

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    Eigen::Index lo_i = 0, lo_j = 0, hi_i = 0, hi_j = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = spec.w2_const + single(i) + single(j) +
                             evaluate(spec.w2_recoil, K - grid.node(i) - grid.node(j));
            if (v < lo) lo = v, lo_i = i, lo_j = j;
            if (v > hi) hi = v, hi_i = i, hi_j = j;
        }
    }

    // x = (p, q) stacked.
    Objective obj;
    obj.value = [&](const Eigen::VectorXd& x) {
        return spec.w2_const + evaluate(spec.w2_single, x.head(d)) + evaluate(spec.w2_single, x.tail(d)) +
               evaluate(spec.w2_recoil, K - x.head(d) - x.tail(d));
    };
    obj.d1 = [&](const Eigen::VectorXd& x, Eigen::Index c) {
        const Eigen::Index a = c % d;
        return axis_derivative(spec.w2_single, x(c)) - axis_derivative(spec.w2_recoil, K(a) - x(a) - x(a + d));
    };
    obj.d2 = [&](const Eigen::VectorXd& x, Eigen::Index c) {
        const Eigen::Index a = c % d;
        return axis_second_derivative(spec.w2_single, x(c)) +
               axis_second_derivative(spec.w2_recoil, K(a) - x(a) - x(a + d));
    };

    const double spacing = kTwoPi / grid.points_per_axis;
    Eigen::VectorXd x(2 * d);
    x << grid.node(lo_i), grid.node(lo_j);
    lo = polish(obj, x, +1.0, spacing);
    x << grid.node(hi_i), grid.node(hi_j);
    hi = polish(obj, x, -1.0, spacing);
    return {lo, hi};
}

Extrema fiber_extrema(const ModelSpec& spec, const TorusPoint& K, const TorusPoint& k, const TorusGrid& grid) {
    require_dim(spec, K, "fiber_extrema");
    require_dim(spec, k, "fiber_extrema");
    if (grid.dimension != spec.dimension) throw InvalidArgument("fiber_extrema: grid dimension mismatch");

    const double base = spec.w2_const + evaluate(spec.w2_single, k);
    const TorusPoint shift = K - k;
    Objective obj;
    obj.value = [&](const Eigen::VectorXd& q) {
        return base + evaluate(spec.w2_single, q) + evaluate(spec.w2_recoil, shift - q);
    };
    obj.d1 = [&](const Eigen::VectorXd& q, Eigen::Index c) {
        return axis_derivative(spec.w2_single, q(c)) - axis_derivative(spec.w2_recoil, shift(c) - q(c));
    };
    obj.d2 = [&](const Eigen::VectorXd& q, Eigen::Index c) {
        return axis_second_derivative(spec.w2_single, q(c)) + axis_second_derivative(spec.w2_recoil, shift(c) - q(c));
    };

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    Eigen::Index lo_i = 0, hi_i = 0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double v = obj.value(grid.node(i));
        if (v < lo) lo = v, lo_i = i;
        if (v > hi) hi = v, hi_i = i;
    }

    const double spacing = kTwoPi / grid.points_per_axis;
    Eigen::VectorXd q = grid.node(lo_i);
    lo = polish(obj, q, +1.0, spacing);
    q = grid.node(hi_i);
    hi = polish(obj, q, -1.0, spacing);
    return {lo, hi};
}

namespace {

bool series_finite(const CosineSeries& f) {
    if (!std::isfinite(f.constant)) return false;
    for (const auto& h : f.harmonics)
        if (!std::isfinite(h.cos_coeff) || !std::isfinite(h.sin_coeff)) return false;
    return true;
}

}  // namespace

ValidationReport validate(const ModelSpec& spec) {
    struct Named {
        const char* name;
        const CosineSeries* series;
    };
    const Named all[] = {{"w0", &spec.w0},           {"w1.self", &spec.w1_self}, {"w1.pair", &spec.w1_pair},
                         {"w2.single", &spec.w2_single}, {"w2.recoil", &spec.w2_recoil}, {"v0", &spec.v0},
                         {"v1", &spec.v1}};

    ValidationReport report;

    ValidationCheck finite{"finite_coefficients", true, ""};
    for (const auto& s : all) {
        if (!series_finite(*s.series)) {
            finite.passed = false;
            finite.detail += std::string(finite.detail.empty() ? "" : ", ") + s.name;
        }
    }
    if (!std::isfinite(spec.w1_const) || !std::isfinite(spec.w2_const)) {
        finite.passed = false;
        finite.detail += std::string(finite.detail.empty() ? "" : ", ") + "constants";
    }
    if (!finite.passed) finite.detail = "non-finite coefficient in " + finite.detail;
    report.checks.push_back(finite);

    ValidationCheck dims{"dimension_consistency", true, ""};
    if (spec.dimension < 1) {
        dims.passed = false;
        dims.detail = "dimension must be >= 1";
    }
    for (const auto& s : all) {
        if (s.series->dimension != 0 && s.series->dimension != spec.dimension) {
            dims.passed = false;
            dims.detail += std::string(s.name) + " declares dimension " + std::to_string(s.series->dimension) +
                           " (model has " + std::to_string(spec.dimension) + "); ";
        }
        for (const auto& h : s.series->harmonics) {
            if (h.order < 1) {
                dims.passed = false;
                dims.detail += std::string(s.name) + " has non-positive harmonic order; ";
            }
        }
    }
    report.checks.push_back(dims);

    ValidationCheck symmetry{"w2_swap_symmetry", true, ""};
    if (finite.passed && spec.dimension >= 1) {
        std::mt19937_64 rng(20240229);
        std::uniform_real_distribution<double> angle(-kPi, kPi);
        double worst = 0.0;
        auto draw = [&] {
            TorusPoint x(spec.dimension);
            for (auto& c : x) c = angle(rng);
            return x;
        };
        for (int t = 0; t < 100; ++t) {
            const TorusPoint K = draw(), p = draw(), q = draw();
            worst = std::max(worst, std::abs(eval_w2(spec, K, p, q) - eval_w2(spec, K, q, p)));
        }
        symmetry.passed = worst <= 1e-12;
        symmetry.detail = "max |w2(K;p,q) - w2(K;q,p)| = " + std::to_string(worst);
    } else {
        symmetry.passed = false;
        symmetry.detail = "skipped: earlier checks failed";
    }
    report.checks.push_back(symmetry);
    return report;
}

}  // namespace latspec
