#pragma once

/// Design-space exploration: grid sweeps of a scalar metric over two base
/// parameters, contour extraction from the resulting fields, and height-map
/// isosurface extraction for metrics that are monotone along a third axis.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hpcprice/model.hpp"
#include "hpcprice/params.hpp"
#include "hpcprice/pricing.hpp"

namespace hpcprice {

/// One swept parameter: `steps` evenly spaced samples covering [lo, hi]
/// inclusive. Only scaling_factor, sensitivity, idle_fraction, alpha and
/// lifetime_years may be swept.
struct AxisSpec {
    std::string parameter_name;
    double lo = 0.0;
    double hi = 1.0;
    int steps = 2;

    /// Resolves the name (aliases allowed), checks sweepability and bounds.
    ParamKey validate() const;

    /// Sample position for step index k in [0, steps).
    double value_at(int k) const;
};

/// Scalar metric evaluated at grid nodes. gain_normalized and
/// price_normalized divide by the scheme-1/no-scaling baseline;
/// energy_ratio ignores the scheme; profitability is total cost over
/// income (below 1 = profitable).
enum class Metric { GainNormalized, PriceNormalized, EnergyRatio, Profitability };

struct MetricSpec {
    Metric kind = Metric::EnergyRatio;
    SchemeId scheme = SchemeId::Scheme1;
};

std::string metric_name(Metric kind);
std::optional<Metric> parse_metric(std::string_view name);

/// Row-major scalar field: values[i * y_steps + j] holds the metric at
/// (x_axis step i, y_axis step j). Masked nodes (normalization undefined)
/// hold NaN.
struct Field2D {
    AxisSpec x_axis;
    AxisSpec y_axis;
    std::vector<double> values;
    std::string metric_name;

    double at(int i, int j) const { return values[static_cast<size_t>(i) * y_axis.steps + j]; }

    /// Bilinear interpolation at an arbitrary point inside the axis bounds.
    double interpolate(double x, double y) const;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Level-set polylines of a Field2D at one level. Vertices sit on grid
/// cell edges where linear interpolation crosses the level; a level outside
/// the field range yields no polylines.
struct ContourSet {
    double level = 0.0;
    std::vector<std::vector<Point2>> polylines;
};

/// Side of an isosurface a probe point falls on.
enum class SurfaceSide { Below, On, Above };

/// Height-map isosurface: for each (x, y) grid node, the z in [z_lo, z_hi]
/// where f crosses `level`, or absent when the whole column sits on one
/// side. Column metadata allows classifying arbitrary points without
/// re-evaluating f.
struct IsoSurface {
    AxisSpec x_axis;
    AxisSpec y_axis;
    std::string z_name;
    double z_lo = 0.0;
    double z_hi = 1.0;
    double level = 0.0;
    double tolerance = 1e-6;
    std::vector<std::optional<double>> heights; // row-major, like Field2D
    std::vector<signed char> column_side; // no crossing: +1 whole column above
                                          // level, -1 below; 0 when crossing
    std::vector<signed char> slope_sign;  // sign of f(z_hi) - f(z_lo)

    /// Classifies a point against the surface using the nearest grid node.
    SurfaceSide classify(double x, double y, double z) const;
};

/// Evaluates the metric on a scenario copy with the two axis parameters
/// overridden at every grid node. NormalizationUndefined masks the node as
/// NaN; other validation errors propagate.
Field2D sweep2d(const MetricSpec& metric, const SystemConfig& base_config,
                const WorkloadSpec& base_workload, const ScalingPolicy& base_policy,
                const AxisSpec& x_axis, const AxisSpec& y_axis);

/// Marching-squares extraction. Cells whose corners all sit on one side of
/// a level contribute nothing; ambiguous saddle cells are split by the
/// cell-center average. Cells touching non-finite (masked) values are
/// skipped.
std::vector<ContourSet> contours(const Field2D& field, const std::vector<double>& levels);

/// Bisection-based isosurface extraction for f monotone in z. Each bracketed
/// column is bisected until |f - level| <= tolerance or 60 iterations.
/// Unbracketed columns record an absent height with the side they sit on.
/// Throws NonMonotone when a midpoint sample falls outside the current
/// bracket values.
IsoSurface isosurface_monotone(const std::function<double(double, double, double)>& f,
                               const AxisSpec& x_axis, const AxisSpec& y_axis, double z_lo,
                               double z_hi, double level, double tolerance = 1e-6);

/// Total cost divided by income for one scheme; below 1 is profitable.
double profitability(SchemeId scheme, const SystemConfig& config, const WorkloadSpec& workload,
                     const ScalingPolicy& policy);

/// Share of the per-timeframe cost due to depreciation at the no-scaling
/// baseline: depreciation / (depreciation + PUE * U * yearly IT energy cost
/// prorated to the timeframe). 1 when the energy cost is zero.
double lifetime_to_depreciation_share(const SystemConfig& config);

/// Metric value with explicit parameter overrides applied on top of the
/// base records (validation runs after the overrides).
double evaluate_metric(const MetricSpec& metric, SystemConfig config, WorkloadSpec workload,
                       ScalingPolicy policy,
                       const std::vector<std::pair<ParamKey, double>>& overrides = {});

} // namespace hpcprice
