#include <doctest.h>

#include "latspec/channel.hpp"
#include "latspec/error.hpp"

#include "closed_forms.hpp"

#include <cmath>
#include <random>

using namespace latspec;

namespace {

TorusPoint one(double x) { return TorusPoint::Constant(1, x); }

}  // namespace

TEST_CASE("merge_intervals examples") {
    CHECK(merge_intervals({{0, 1}, {1, 2}}) == std::vector<Interval>{{0, 2}});
    CHECK(merge_intervals({{0, 1}, {2, 3}}) == std::vector<Interval>{{0, 1}, {2, 3}});
    CHECK(merge_intervals({{0, 4.5}, {-1.3, -1.2}, {4.8, 5.0}}) ==
          std::vector<Interval>{{-1.3, -1.2}, {0, 4.5}, {4.8, 5.0}});
    CHECK(merge_intervals({{0, 1}, {1 + 1e-13, 2}}) == std::vector<Interval>{{0, 2}});
    CHECK(merge_intervals({{3, 3}, {3, 3}}) == std::vector<Interval>{{3, 3}});
    CHECK(merge_intervals({}).empty());
    CHECK_THROWS_AS(merge_intervals({{2, 1}}), InvalidArgument);
}

TEST_CASE("merge_intervals preserves membership and is canonical") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> pos(-10, 10), len(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Interval> in;
        for (int i = 0; i < 1 + trial % 6; ++i) {
            const double lo = pos(rng);
            in.push_back({lo, lo + len(rng)});
        }
        const auto out = merge_intervals(in);
        for (std::size_t i = 0; i + 1 < out.size(); ++i) CHECK(out[i].hi + kTouchGap <= out[i + 1].lo);
        for (int s = 0; s < 50; ++s) {
            const double x = pos(rng);
            bool in_any = false, out_any = false;
            for (const auto& iv : in) in_any = in_any || iv.contains(x);
            for (const auto& iv : out) out_any = out_any || iv.contains(x);
            CHECK(in_any == out_any);
        }
        CHECK(merge_intervals(out) == out);
    }
}

TEST_CASE("lambda_branches") {
    const TorusGrid kg = make_grid(1, 64), qg = make_grid(1, 128);

    const LambdaBranches none = lambda_branches(model_a(1, 1.0, 0.0), one(0), kg, qg);
    CHECK_FALSE(none.below);
    CHECK_FALSE(none.above);
    CHECK_FALSE(none.uniform_below);

    const LambdaBranches coupled = lambda_branches(model_a(1, 1.0, 1.0), one(0), kg, qg);
    REQUIRE(coupled.below);
    REQUIRE(coupled.above);
    const double origin_root = testing::model_a_root_below();
    CHECK(coupled.below->lo <= origin_root + 1e-9);
    CHECK(origin_root <= coupled.below->hi);
    CHECK(coupled.uniform_below);
    CHECK(coupled.uniform_above);
}

TEST_CASE("constant fibers give point branches") {
    for (int d : {1, 2}) {
        ModelSpec spec;
        spec.dimension = d;
        spec.w2_const = 2.0;
        spec.v1 = CosineSeries::constant_series(0.5);
        const TorusGrid g = make_grid(d, 8);
        const ChannelSpectrum s = channel_spectrum(spec, TorusPoint::Zero(d), g, g);
        CHECK(s.three_particle == Interval{2.0, 2.0});
        REQUIRE(s.two_particle_below);
        REQUIRE(s.two_particle_above);
        const double lo = testing::constant_band_root(2.0, 0.5, d, -1), hi = testing::constant_band_root(2.0, 0.5, d, +1);
        CHECK(s.two_particle_below->lo == doctest::Approx(lo).epsilon(1e-12));
        CHECK(s.two_particle_below->width() < 1e-12);
        CHECK(s.two_particle_above->lo == doctest::Approx(hi).epsilon(1e-12));
        CHECK(s.two_particle_above->width() < 1e-12);
        CHECK(s.merged().size() == 3);
    }
}

TEST_CASE("channel_spectrum for Model A at K = 0") {
    const TorusGrid kg = make_grid(1, 64), qg = make_grid(1, 128);

    const ChannelSpectrum plain = channel_spectrum(model_a(1, 1.0, 0.0), one(0), kg, qg);
    CHECK(plain.merged().size() == 1);
    CHECK(std::abs(plain.three_particle.lo) < 1e-12);
    CHECK(std::abs(plain.three_particle.hi - 4.5) < 1e-12);
    CHECK(plain.k_samples == 64);

    const ChannelSpectrum coupled = channel_spectrum(model_a(1, 1.0, 1.0), one(0), kg, qg);
    CHECK(coupled.merged().size() <= 3);
    CHECK(coupled.contains(testing::model_a_root_below(), 1e-9));
    CHECK(coupled.contains(testing::model_a_root_above(), 1e-9));
    // The degenerate fiber k = pi contributes 4 + sqrt(pi), the top of the upper branch.
    CHECK(coupled.two_particle_above->hi == doctest::Approx(4.0 + std::sqrt(testing::kPi)).epsilon(1e-9));
}

TEST_CASE("every scanned fiber quantity lies in the channel spectrum") {
    const ModelSpec a = model_a(1, 1.0, 1.0);
    const TorusGrid kg = make_grid(1, 32), qg = make_grid(1, 64);
    for (double Kx : {0.0, 1.1, kPi}) {
        const ChannelSpectrum s = channel_spectrum(a, one(Kx), kg, qg);
        const TorusGrid probe = make_grid(1, 45);  // nodes off the sweep grid
        for (Eigen::Index i = 0; i < probe.size(); ++i) {
            const FiberSpectrum f = FiberModel(a, one(Kx), probe.node(i), qg).spectrum();
            CHECK(s.contains(f.band.e_min, 1e-9));
            CHECK(s.contains(f.band.e_max, 1e-9));
            if (f.below) CHECK(s.contains(*f.below, 1e-6));
            if (f.above) CHECK(s.contains(*f.above, 1e-6));
        }
    }
}

TEST_CASE("interval count stays within three and endpoints are refinement-stable") {
    const TorusGrid qg = make_grid(1, 128);
    for (double beta : {0.5, 1.0, 2.0}) {
        for (double Kx : {0.0, 0.9, kPi / 2, kPi}) {
            const ModelSpec a = model_a(1, 1.0, beta);
            const ChannelSpectrum s64 = channel_spectrum(a, one(Kx), make_grid(1, 64), qg);
            const ChannelSpectrum s128 = channel_spectrum(a, one(Kx), make_grid(1, 128), qg);
            CHECK(s64.merged().size() <= 3);
            REQUIRE(s64.two_particle_below.has_value() == s128.two_particle_below.has_value());
            REQUIRE(s64.two_particle_above.has_value() == s128.two_particle_above.has_value());
            CHECK(std::abs(s64.three_particle.lo - s128.three_particle.lo) < 1e-3);
            CHECK(std::abs(s64.three_particle.hi - s128.three_particle.hi) < 1e-3);
            if (s64.two_particle_below) {
                CHECK(std::abs(s64.two_particle_below->lo - s128.two_particle_below->lo) < 1e-3);
                CHECK(std::abs(s64.two_particle_below->hi - s128.two_particle_below->hi) < 1e-3);
            }
            if (s64.two_particle_above) {
                CHECK(std::abs(s64.two_particle_above->lo - s128.two_particle_above->lo) < 1e-3);
                CHECK(std::abs(s64.two_particle_above->hi - s128.two_particle_above->hi) < 1e-3);
            }
        }
    }
}

TEST_CASE("grid dimension mismatch") {
    CHECK_THROWS_AS(lambda_branches(model_a(2, 1, 1), TorusPoint::Zero(2), make_grid(1, 8), make_grid(2, 8)),
                    InvalidArgument);
}
