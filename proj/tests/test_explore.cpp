#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "hpcprice/errors.hpp"
#include "hpcprice/explore.hpp"
#include "hpcprice/scenarios.hpp"

using namespace hpcprice;

namespace {

AxisSpec axis(const char* name, double lo, double hi, int steps) {
    AxisSpec a;
    a.parameter_name = name;
    a.lo = lo;
    a.hi = hi;
    a.steps = steps;
    return a;
}

Field2D make_field(const AxisSpec& x, const AxisSpec& y,
                   const std::function<double(double, double)>& f, const char* name) {
    Field2D field;
    field.x_axis = x;
    field.y_axis = y;
    field.metric_name = name;
    field.values.resize(static_cast<size_t>(x.steps) * y.steps);
    for (int i = 0; i < x.steps; ++i) {
        for (int j = 0; j < y.steps; ++j) {
            field.values[static_cast<size_t>(i) * y.steps + j] = f(x.value_at(i), y.value_at(j));
        }
    }
    return field;
}

} // namespace

TEST_CASE("axis validation") {
    CHECK_THROWS_AS(axis("pue", 1, 2, 5).validate(), InvalidAxis);
    CHECK_THROWS_AS(axis("not_a_thing", 0, 1, 5).validate(), InvalidAxis);
    CHECK_THROWS_AS(axis("phi", 2, 1, 5).validate(), InvalidAxis);
    CHECK_THROWS_AS(axis("phi", 1, 2, 1).validate(), InvalidAxis);
    CHECK(axis("phi", 1, 5, 11).validate() == ParamKey::ScalingFactor);
    CHECK(axis("lifetime", 1, 50, 11).validate() == ParamKey::LifetimeYears);

    const AxisSpec a = axis("sigma", 0.0, 1.0, 41);
    CHECK(a.value_at(0) == 0.0);
    CHECK(a.value_at(40) == 1.0);
    CHECK(a.value_at(8) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("sweep of the scheme-2 normalized price is flat at 1") {
    const Scenario& s = presets().fermi_like;
    MetricSpec metric{Metric::PriceNormalized, SchemeId::Scheme2};
    const Field2D field = sweep2d(metric, s.config, s.workload, s.policy,
                                  axis("phi", 1, 5, 11), axis("sigma", 0, 1, 11));
    for (double v : field.values) {
        CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sweep of the scheme-1 normalized gain is 1 on the no-scaling column") {
    const Scenario& s = presets().fermi_like;
    MetricSpec metric{Metric::GainNormalized, SchemeId::Scheme1};
    const Field2D field = sweep2d(metric, s.config, s.workload, s.policy,
                                  axis("phi", 1, 5, 9), axis("sigma", 0, 1, 9));
    for (int j = 0; j < 9; ++j) {
        CHECK(field.at(0, j) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("energy-ratio sweep reduces to phi^alpha on the zero-sensitivity row") {
    Scenario s = presets().fermi_like;
    s.config.idle_fraction = 0.0;
    s.config.alpha = 2.0;
    MetricSpec metric{Metric::EnergyRatio, SchemeId::Scheme1};
    const AxisSpec x = axis("phi", 1, 5, 21);
    const Field2D field =
        sweep2d(metric, s.config, s.workload, s.policy, x, axis("sigma", 0, 1, 5));
    for (int i = 0; i < x.steps; ++i) {
        const double phi = x.value_at(i);
        CHECK(field.at(i, 0) == doctest::Approx(phi * phi).epsilon(1e-12));
    }
}

TEST_CASE("sweep rejects duplicate axes") {
    const Scenario& s = presets().fermi_like;
    MetricSpec metric{Metric::EnergyRatio, SchemeId::Scheme1};
    CHECK_THROWS_AS(sweep2d(metric, s.config, s.workload, s.policy, axis("phi", 1, 5, 5),
                            axis("scaling_factor", 1, 5, 5)),
                    InvalidAxis);
}

TEST_CASE("contour of a linear cell") {
    const Field2D field = make_field(axis("iota", 0, 1, 2), axis("sigma", 0, 1, 2),
                                     [](double x, double y) { return x + y; }, "f");
    const auto sets = contours(field, {0.5});
    REQUIRE(sets.size() == 1);
    REQUIRE(sets[0].polylines.size() == 1);
    const auto& line = sets[0].polylines[0];
    REQUIRE(line.size() == 2);
    const bool forward = line[0].x == 0.5;
    const Point2 a = forward ? line[0] : line[1];
    const Point2 b = forward ? line[1] : line[0];
    CHECK(a.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.y == 0.0);
    CHECK(b.x == 0.0);
    CHECK(b.y == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("contour of a constant field is empty") {
    const Field2D field = make_field(axis("iota", 0, 1, 5), axis("sigma", 0, 1, 5),
                                     [](double, double) { return 2.0; }, "f");
    const auto sets = contours(field, {1.0});
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].polylines.empty());
}

TEST_CASE("saddle cells split by the center average") {
    Field2D field;
    field.x_axis = axis("iota", 0, 1, 2);
    field.y_axis = axis("sigma", 0, 1, 2);
    field.metric_name = "f";
    // corners A=(0,0)=1, B=(1,0)=0, D=(0,1)=0, C=(1,1)=1; center = 0.5
    field.values = {1.0, 0.0, 0.0, 1.0}; // row-major: (0,0) (0,1) (1,0) (1,1)
    const auto sets = contours(field, {0.5});
    REQUIRE(sets[0].polylines.size() == 2);
    for (const auto& line : sets[0].polylines) {
        REQUIRE(line.size() == 2);
        // center >= level joins the diagonal of the two high corners: each
        // segment isolates one low corner
        const double mid_x = 0.5 * (line[0].x + line[1].x);
        const double mid_y = 0.5 * (line[0].y + line[1].y);
        CHECK(std::abs(mid_x - mid_y) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("stretch-limit contour matches the acceptable-sensitivity curve") {
    const Field2D field =
        make_field(axis("phi", 1, 5, 101), axis("sigma", 0, 1, 101),
                   [](double phi, double sigma) { return tts_stretch(phi, sigma); }, "stretch");
    const auto sets = contours(field, {1.5});
    REQUIRE(sets.size() == 1);
    size_t vertices = 0;
    for (const auto& line : sets[0].polylines) {
        for (const auto& p : line) {
            ++vertices;
            CHECK(p.y == doctest::Approx(acceptable_sensitivity_bound(p.x, 1.5)).epsilon(1e-9));
        }
    }
    CHECK(vertices > 50);
}

TEST_CASE("contour vertices re-evaluate to the level through bilinear interpolation") {
    Scenario s = presets().fermi_like;
    MetricSpec metric{Metric::EnergyRatio, SchemeId::Scheme1};
    const Field2D field = sweep2d(metric, s.config, s.workload, s.policy, axis("phi", 1, 5, 51),
                                  axis("sigma", 0, 1, 51));
    size_t vertices = 0;
    for (const auto& set : contours(field, {1.0, 2.0, 3.0, 4.0})) {
        for (const auto& line : set.polylines) {
            for (const auto& p : line) {
                ++vertices;
                CHECK(field.interpolate(p.x, p.y) ==
                      doctest::Approx(set.level).epsilon(1e-9));
            }
        }
    }
    CHECK(vertices > 100);
}

TEST_CASE("contours converge under grid refinement") {
    Scenario s = presets().fermi_like;
    MetricSpec metric{Metric::EnergyRatio, SchemeId::Scheme1};
    const AxisSpec coarse_x = axis("phi", 1, 5, 51);
    const AxisSpec coarse_y = axis("sigma", 0, 1, 51);
    const Field2D coarse =
        sweep2d(metric, s.config, s.workload, s.policy, coarse_x, coarse_y);
    const Field2D fine = sweep2d(metric, s.config, s.workload, s.policy, axis("phi", 1, 5, 101),
                                 axis("sigma", 0, 1, 101));
    const auto coarse_sets = contours(coarse, {2.0});
    const auto fine_sets = contours(fine, {2.0});

    const double hx = (coarse_x.hi - coarse_x.lo) / (coarse_x.steps - 1);
    const double hy = (coarse_y.hi - coarse_y.lo) / (coarse_y.steps - 1);
    for (const auto& line : coarse_sets[0].polylines) {
        for (const auto& p : line) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& fline : fine_sets[0].polylines) {
                for (const auto& q : fline) {
                    best = std::min(best,
                                    std::max(std::abs(p.x - q.x) / hx, std::abs(p.y - q.y) / hy));
                }
            }
            CHECK(best < 1.0);
        }
    }
}

TEST_CASE("isosurface of a known root") {
    const auto f = [](double, double, double z) { return z * z - 2.0; };
    const IsoSurface surf = isosurface_monotone(f, axis("iota", 0, 1, 5), axis("sigma", 0, 1, 5),
                                                0.0, 2.0, 0.0, 1e-6);
    for (const auto& h : surf.heights) {
        REQUIRE(h.has_value());
        CHECK(*h == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    }
}

TEST_CASE("isosurface of a constant field has no crossings") {
    const auto f = [](double, double, double) { return 3.0; };
    const IsoSurface surf = isosurface_monotone(f, axis("iota", 0, 1, 3), axis("sigma", 0, 1, 3),
                                                0.0, 1.0, 1.0, 1e-6);
    for (size_t i = 0; i < surf.heights.size(); ++i) {
        CHECK_FALSE(surf.heights[i].has_value());
        CHECK(surf.column_side[i] == 1);
    }
}

TEST_CASE("energy-ratio isosurface classifies the reference points") {
    const auto f = [](double iota, double sigma, double alpha) {
        return energy_ratio(iota, sigma, alpha, 2.0);
    };
    const IsoSurface surf = isosurface_monotone(f, axis("iota", 0, 1, 41),
                                                axis("sigma", 0, 1, 41), 1.0, 3.0, 1.0, 1e-6);
    CHECK(energy_ratio(0.2, 0.2, 2.0, 2.0) > 1.0);
    CHECK(surf.classify(0.2, 0.2, 2.0) == SurfaceSide::Above);
    CHECK(energy_ratio(0.8, 0.8, 1.5, 2.0) < 1.0);
    CHECK(surf.classify(0.8, 0.8, 1.5) == SurfaceSide::Below);

    // present heights re-evaluate to the level within tolerance
    size_t crossings = 0;
    for (int i = 0; i < 41; ++i) {
        for (int j = 0; j < 41; ++j) {
            const auto& h = surf.heights[static_cast<size_t>(i) * 41 + j];
            if (!h) continue;
            ++crossings;
            CHECK(std::abs(f(surf.x_axis.value_at(i), surf.y_axis.value_at(j), *h) - 1.0) <=
                  1e-6);
        }
    }
    CHECK(crossings > 0);
}

TEST_CASE("zero-sensitivity jobs always sit above the unit energy-ratio surface") {
    const auto f = [](double iota, double sigma, double alpha) {
        return energy_ratio(iota, sigma, alpha, 2.0);
    };
    const IsoSurface surf = isosurface_monotone(f, axis("iota", 0, 0.975, 40),
                                                axis("sigma", 0, 1, 41), 1.0, 3.0, 1.0, 1e-6);
    for (int i = 0; i < 40; ++i) {
        const size_t idx = static_cast<size_t>(i) * 41; // sigma = 0 column
        CHECK_FALSE(surf.heights[idx].has_value());
        CHECK(surf.column_side[idx] == 1);
    }
}

TEST_CASE("non-monotone functions are rejected") {
    const auto f = [](double, double, double z) { return std::sin(5.0 * z); };
    CHECK_THROWS_AS(isosurface_monotone(f, axis("iota", 0, 1, 3), axis("sigma", 0, 1, 3), 0.0,
                                        3.0, 0.5, 1e-9),
                    NonMonotone);
}

TEST_CASE("profitability") {
    const Scenario& s = presets().fermi_like;

    // income above cost when U * ROI > 1
    SystemConfig profitable = s.config;
    profitable.roi = 1.5;
    profitable.utilization = 0.9;
    ScalingPolicy rest;
    CHECK(profitability(SchemeId::Scheme1, profitable, s.workload, rest) < 1.0);

    // break-even at U * ROI = 1
    SystemConfig even = s.config;
    even.roi = 1.0;
    even.utilization = 1.0;
    CHECK(profitability(SchemeId::Scheme1, even, s.workload, rest) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // aggressive scaling under scheme 3 runs at a loss on the reference system
    ScalingPolicy aggressive;
    aggressive.scaling_factor = 5.0;
    WorkloadSpec cpu_insensitive = s.workload;
    cpu_insensitive.sensitivity = 0.0;
    CHECK(profitability(SchemeId::Scheme3, s.config, cpu_insensitive, aggressive) > 1.0);
}

TEST_CASE("profitability is monotone in the lifetime and extractable") {
    const Scenario& s = presets().energy_proportional;
    MetricSpec metric{Metric::Profitability, SchemeId::Scheme3};
    const auto f = [&](double a, double phi, double lf) {
        return evaluate_metric(metric, s.config, s.workload, s.policy,
                               {{ParamKey::Alpha, a},
                                {ParamKey::ScalingFactor, phi},
                                {ParamKey::LifetimeYears, lf}});
    };
    const IsoSurface surf = isosurface_monotone(f, axis("alpha", 1, 3, 9),
                                                axis("phi", 1.1, 5, 9), 1.0, 50.0, 1.0, 1e-6);
    size_t crossings = 0;
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            const auto& h = surf.heights[static_cast<size_t>(i) * 9 + j];
            if (!h) continue;
            ++crossings;
            CHECK(std::abs(f(surf.x_axis.value_at(i), surf.y_axis.value_at(j), *h) - 1.0) <=
                  1e-6);
        }
    }
    CHECK(crossings > 0);
}

TEST_CASE("depreciation share of the timeframe cost") {
    SystemConfig c = presets().fermi_like.config;
    c.install_cost = 7'330'000.0;
    c.pue = 1.25;
    c.it_energy_cost_per_year = 800'000.0; // yearly total energy cost = 1e6
    c.utilization = 1.0;

    c.lifetime_years = 1.0;
    CHECK(lifetime_to_depreciation_share(c) == doctest::Approx(0.88).epsilon(1e-3));
    c.lifetime_years = 50.0;
    CHECK(lifetime_to_depreciation_share(c) == doctest::Approx(0.128).epsilon(2e-3));

    c.it_energy_cost_per_year = 0.0;
    CHECK(lifetime_to_depreciation_share(c) == 1.0);
}
