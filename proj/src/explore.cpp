#include "hpcprice/explore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "hpcprice/errors.hpp"

namespace hpcprice {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

ParamKey AxisSpec::validate() const {
    auto key = parse_param_key(parameter_name);
    if (!key) throw InvalidAxis("not a model parameter: " + parameter_name);
    if (!is_sweepable(*key)) throw InvalidAxis("parameter cannot be swept: " + parameter_name);
    if (!(lo < hi)) throw InvalidAxis("axis " + parameter_name + ": lo must be < hi");
    if (steps < 2) throw InvalidAxis("axis " + parameter_name + ": steps must be >= 2");
    return *key;
}

double AxisSpec::value_at(int k) const {
    if (k == steps - 1) return hi; // endpoints inclusive and exact
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

std::string metric_name(Metric kind) {
    switch (kind) {
    case Metric::GainNormalized: return "gain_normalized";
    case Metric::PriceNormalized: return "price_normalized";
    case Metric::EnergyRatio: return "energy_ratio";
    case Metric::Profitability: return "profitability";
    }
    return "";
}

std::optional<Metric> parse_metric(std::string_view name) {
    if (name == "gain_normalized") return Metric::GainNormalized;
    if (name == "price_normalized") return Metric::PriceNormalized;
    if (name == "energy_ratio") return Metric::EnergyRatio;
    if (name == "profitability") return Metric::Profitability;
    return std::nullopt;
}

double Field2D::interpolate(double x, double y) const {
    const int nx = x_axis.steps;
    const int ny = y_axis.steps;
    const double fx = (x - x_axis.lo) / (x_axis.hi - x_axis.lo) * (nx - 1);
    const double fy = (y - y_axis.lo) / (y_axis.hi - y_axis.lo) * (ny - 1);
    const int i = std::clamp(static_cast<int>(std::floor(fx)), 0, nx - 2);
    const int j = std::clamp(static_cast<int>(std::floor(fy)), 0, ny - 2);
    const double tx = fx - i;
    const double ty = fy - j;
    return (1.0 - tx) * (1.0 - ty) * at(i, j) + tx * (1.0 - ty) * at(i + 1, j) +
           (1.0 - tx) * ty * at(i, j + 1) + tx * ty * at(i + 1, j + 1);
}

double evaluate_metric(const MetricSpec& metric, SystemConfig config, WorkloadSpec workload,
                       ScalingPolicy policy,
                       const std::vector<std::pair<ParamKey, double>>& overrides) {
    for (const auto& [key, value] : overrides) {
        apply_param(key, value, config, workload, policy);
    }
    switch (metric.kind) {
    case Metric::EnergyRatio:
        return energy_ratio(config.idle_fraction, workload.sensitivity, config.alpha,
                            policy.scaling_factor);
    case Metric::Profitability:
        return profitability(metric.scheme, config, workload, policy);
    case Metric::GainNormalized:
    case Metric::PriceNormalized: {
        const TimeframeOutcome outcome = evaluate(metric.scheme, config, workload, policy);
        const NormalizedOutcome n = normalize(outcome, baseline(config, workload));
        return metric.kind == Metric::GainNormalized ? n.gain_normalized : n.price_normalized;
    }
    }
    return kNaN;
}

Field2D sweep2d(const MetricSpec& metric, const SystemConfig& base_config,
                const WorkloadSpec& base_workload, const ScalingPolicy& base_policy,
                const AxisSpec& x_axis, const AxisSpec& y_axis) {
    const ParamKey kx = x_axis.validate();
    const ParamKey ky = y_axis.validate();
    if (kx == ky) throw InvalidAxis("sweep axes must name distinct parameters");

    Field2D field;
    field.x_axis = x_axis;
    field.y_axis = y_axis;
    field.metric_name = metric_name(metric.kind);
    field.values.resize(static_cast<size_t>(x_axis.steps) * y_axis.steps, kNaN);
    for (int i = 0; i < x_axis.steps; ++i) {
        const double xv = x_axis.value_at(i);
        for (int j = 0; j < y_axis.steps; ++j) {
            const double yv = y_axis.value_at(j);
            double v;
            try {
                v = evaluate_metric(metric, base_config, base_workload, base_policy,
                                    {{kx, xv}, {ky, yv}});
            } catch (const NormalizationUndefined&) {
                v = kNaN; // masked cell
            }
            field.values[static_cast<size_t>(i) * y_axis.steps + j] = v;
        }
    }
    return field;
}

namespace {

// Canonical id for a grid edge; crossings computed once per edge so shared
// cell borders produce bit-identical vertices.
std::uint64_t edge_key(int i, int j, bool vertical, int nx) {
    return (static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(nx) +
            static_cast<std::uint64_t>(i)) *
               2ull +
           (vertical ? 1ull : 0ull);
}

struct Crossing {
    std::uint64_t key;
    Point2 p;
};

struct Segment {
    Crossing a;
    Crossing b;
};

class CellExtractor {
public:
    CellExtractor(const Field2D& field, double level) : field_(field), level_(level) {}

    void run(std::vector<Segment>& out) {
        const int nx = field_.x_axis.steps;
        const int ny = field_.y_axis.steps;
        for (int i = 0; i + 1 < nx; ++i) {
            for (int j = 0; j + 1 < ny; ++j) {
                cell(i, j, out);
            }
        }
    }

private:
    double value(int i, int j) const { return field_.at(i, j); }
    double xv(int i) const { return field_.x_axis.value_at(i); }
    double yv(int j) const { return field_.y_axis.value_at(j); }

    Crossing bottom(int i, int j) const { return horizontal(i, j); }
    Crossing top(int i, int j) const { return horizontal(i, j + 1); }
    Crossing left(int i, int j) const { return vertical(i, j); }
    Crossing right(int i, int j) const { return vertical(i + 1, j); }

    Crossing horizontal(int i, int j) const {
        const double va = value(i, j);
        const double vb = value(i + 1, j);
        const double t = (level_ - va) / (vb - va);
        return {edge_key(i, j, false, field_.x_axis.steps),
                {xv(i) + t * (xv(i + 1) - xv(i)), yv(j)}};
    }

    Crossing vertical(int i, int j) const {
        const double va = value(i, j);
        const double vb = value(i, j + 1);
        const double t = (level_ - va) / (vb - va);
        return {edge_key(i, j, true, field_.x_axis.steps),
                {xv(i), yv(j) + t * (yv(j + 1) - yv(j))}};
    }

    void emit(std::vector<Segment>& out, const Crossing& a, const Crossing& b) const {
        if (a.p.x == b.p.x && a.p.y == b.p.y) return; // degenerate corner touch
        out.push_back({a, b});
    }

    void cell(int i, int j, std::vector<Segment>& out) const {
        const double va = value(i, j);
        const double vb = value(i + 1, j);
        const double vc = value(i + 1, j + 1);
        const double vd = value(i, j + 1);
        if (!std::isfinite(va) || !std::isfinite(vb) || !std::isfinite(vc) ||
            !std::isfinite(vd)) {
            return;
        }
        int mask = 0;
        if (va >= level_) mask |= 1;
        if (vb >= level_) mask |= 2;
        if (vc >= level_) mask |= 4;
        if (vd >= level_) mask |= 8;

        switch (mask) {
        case 0:
        case 15:
            break;
        case 1:
        case 14:
            emit(out, bottom(i, j), left(i, j));
            break;
        case 2:
        case 13:
            emit(out, bottom(i, j), right(i, j));
            break;
        case 4:
        case 11:
            emit(out, right(i, j), top(i, j));
            break;
        case 8:
        case 7:
            emit(out, left(i, j), top(i, j));
            break;
        case 3:
        case 12:
            emit(out, left(i, j), right(i, j));
            break;
        case 6:
        case 9:
            emit(out, bottom(i, j), top(i, j));
            break;
        case 5: { // A and C above: saddle, split by cell-center average
            const double center = 0.25 * (va + vb + vc + vd);
            if (center >= level_) {
                emit(out, bottom(i, j), right(i, j));
                emit(out, left(i, j), top(i, j));
            } else {
                emit(out, bottom(i, j), left(i, j));
                emit(out, right(i, j), top(i, j));
            }
            break;
        }
        case 10: { // B and D above: the mirrored saddle
            const double center = 0.25 * (va + vb + vc + vd);
            if (center >= level_) {
                emit(out, left(i, j), bottom(i, j));
                emit(out, top(i, j), right(i, j));
            } else {
                emit(out, bottom(i, j), right(i, j));
                emit(out, left(i, j), top(i, j));
            }
            break;
        }
        default:
            break;
        }
    }

    const Field2D& field_;
    double level_;
};

std::vector<std::vector<Point2>> chain_segments(const std::vector<Segment>& segs) {
    // Endpoint adjacency; every edge hosts at most one crossing, so each
    // key has degree <= 2 and walking yields simple chains or loops.
    std::unordered_map<std::uint64_t, std::vector<size_t>> by_key;
    for (size_t s = 0; s < segs.size(); ++s) {
        by_key[segs[s].a.key].push_back(s);
        by_key[segs[s].b.key].push_back(s);
    }

    std::vector<bool> used(segs.size(), false);
    std::vector<std::vector<Point2>> polylines;

    auto next_unused = [&](std::uint64_t key, size_t current) -> std::optional<size_t> {
        for (size_t s : by_key[key]) {
            if (s != current && !used[s]) return s;
        }
        return std::nullopt;
    };

    for (size_t start = 0; start < segs.size(); ++start) {
        if (used[start]) continue;

        // Walk backwards first so open chains start at a free end.
        size_t first = start;
        std::uint64_t back_key = segs[start].a.key;
        while (true) {
            auto prev = next_unused(back_key, first);
            if (!prev) break;
            first = *prev;
            back_key = (segs[first].a.key == back_key) ? segs[first].b.key : segs[first].a.key;
            if (first == start) break; // closed loop
        }

        std::vector<Point2> line;
        size_t current = first;
        const bool forward = (segs[current].a.key == back_key);
        Crossing tail = forward ? segs[current].b : segs[current].a;
        line.push_back(forward ? segs[current].a.p : segs[current].b.p);
        line.push_back(tail.p);
        used[current] = true;
        while (true) {
            auto next = next_unused(tail.key, current);
            if (!next) break;
            current = *next;
            tail = (segs[current].a.key == tail.key) ? segs[current].b : segs[current].a;
            line.push_back(tail.p);
            used[current] = true;
        }
        polylines.push_back(std::move(line));
    }
    return polylines;
}

} // namespace

std::vector<ContourSet> contours(const Field2D& field, const std::vector<double>& levels) {
    std::vector<ContourSet> out;
    out.reserve(levels.size());
    for (double level : levels) {
        std::vector<Segment> segs;
        CellExtractor(field, level).run(segs);
        ContourSet set;
        set.level = level;
        set.polylines = chain_segments(segs);
        out.push_back(std::move(set));
    }
    return out;
}

SurfaceSide IsoSurface::classify(double x, double y, double z) const {
    const int nx = x_axis.steps;
    const int ny = y_axis.steps;
    const double fx = (x - x_axis.lo) / (x_axis.hi - x_axis.lo) * (nx - 1);
    const double fy = (y - y_axis.lo) / (y_axis.hi - y_axis.lo) * (ny - 1);
    const int i = std::clamp(static_cast<int>(std::lround(fx)), 0, nx - 1);
    const int j = std::clamp(static_cast<int>(std::lround(fy)), 0, ny - 1);
    const size_t idx = static_cast<size_t>(i) * ny + j;
    if (!heights[idx]) {
        return column_side[idx] > 0 ? SurfaceSide::Above : SurfaceSide::Below;
    }
    const double h = *heights[idx];
    if (z == h) return SurfaceSide::On;
    const bool larger_z_above = slope_sign[idx] >= 0;
    return ((z > h) == larger_z_above) ? SurfaceSide::Above : SurfaceSide::Below;
}

IsoSurface isosurface_monotone(const std::function<double(double, double, double)>& f,
                               const AxisSpec& x_axis, const AxisSpec& y_axis, double z_lo,
                               double z_hi, double level, double tolerance) {
    x_axis.validate();
    y_axis.validate();
    if (!(z_lo < z_hi)) throw InvalidAxis("isosurface: z_lo must be < z_hi");
    if (!(tolerance > 0.0)) throw InvalidAxis("isosurface: tolerance must be > 0");

    IsoSurface surf;
    surf.x_axis = x_axis;
    surf.y_axis = y_axis;
    surf.z_lo = z_lo;
    surf.z_hi = z_hi;
    surf.level = level;
    surf.tolerance = tolerance;
    const size_t n = static_cast<size_t>(x_axis.steps) * y_axis.steps;
    surf.heights.assign(n, std::nullopt);
    surf.column_side.assign(n, 0);
    surf.slope_sign.assign(n, 0);

    for (int i = 0; i < x_axis.steps; ++i) {
        const double x = x_axis.value_at(i);
        for (int j = 0; j < y_axis.steps; ++j) {
            const double y = y_axis.value_at(j);
            const size_t idx = static_cast<size_t>(i) * y_axis.steps + j;

            double lo = z_lo, hi = z_hi;
            double vlo = f(x, y, lo), vhi = f(x, y, hi);
            surf.slope_sign[idx] = (vhi > vlo) ? 1 : (vhi < vlo ? -1 : 0);

            const double slo = vlo - level;
            const double shi = vhi - level;
            if (slo * shi > 0.0) {
                surf.column_side[idx] = slo > 0.0 ? 1 : -1; // not bracketed
                continue;
            }
            if (slo == 0.0) {
                surf.heights[idx] = lo;
                continue;
            }
            if (shi == 0.0) {
                surf.heights[idx] = hi;
                continue;
            }

            const double band =
                1e-9 * (std::abs(vlo) + std::abs(vhi) + std::abs(level));
            double mid = 0.5 * (lo + hi);
            for (int iter = 0; iter < 60; ++iter) {
                mid = 0.5 * (lo + hi);
                const double vmid = f(x, y, mid);
                if (vmid < std::min(vlo, vhi) - band || vmid > std::max(vlo, vhi) + band) {
                    throw NonMonotone("function is not monotone along z near (" +
                                      std::to_string(x) + ", " + std::to_string(y) + ")");
                }
                if (std::abs(vmid - level) <= tolerance) break;
                if ((vmid - level) * slo < 0.0) {
                    hi = mid;
                    vhi = vmid;
                } else {
                    lo = mid;
                    vlo = vmid;
                }
            }
            surf.heights[idx] = mid;
        }
    }
    return surf;
}

double profitability(SchemeId scheme, const SystemConfig& config, const WorkloadSpec& workload,
                     const ScalingPolicy& policy) {
    const TimeframeOutcome out = evaluate(scheme, config, workload, policy);
    if (out.income <= 0.0) throw ZeroIncome();
    return out.total_cost / out.income;
}

double lifetime_to_depreciation_share(const SystemConfig& config) {
    config.validate();
    const double depreciation =
        config.install_cost / config.lifetime_years / 365.0 * config.timeframe_days;
    const double baseline_energy = config.pue * config.utilization *
                                   config.it_energy_cost_per_year * config.timeframe_days / 365.0;
    return depreciation / (depreciation + baseline_energy);
}

} // namespace hpcprice
