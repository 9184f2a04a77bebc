#include "hpcprice/model.hpp"

#include <algorithm>
#include <cmath>

#include "hpcprice/errors.hpp"

namespace hpcprice {

namespace {

void require(bool ok, const char* field, const char* bound) {
    if (!ok) throw InvalidParameter(field, bound);
}

bool finite(double v) { return std::isfinite(v); }

} // namespace

void SystemConfig::validate() const {
    require(finite(timeframe_days) && timeframe_days > 0.0, "timeframe_days", "must be > 0");
    require(total_cores >= 1, "total_cores", "must be >= 1");
    require(finite(pue) && pue >= 1.0, "pue", "must be >= 1");
    require(finite(electricity_price) && electricity_price > 0.0, "electricity_price", "must be > 0");
    require(finite(lifetime_years) && lifetime_years > 0.0, "lifetime_years", "must be > 0");
    require(finite(install_cost) && install_cost > 0.0, "install_cost", "must be > 0");
    require(finite(it_energy_cost_per_year) && it_energy_cost_per_year >= 0.0,
            "it_energy_cost_per_year", "must be >= 0");
    require(finite(roi) && roi >= 1.0, "roi", "must be >= 1");
    require(finite(utilization) && utilization > 0.0 && utilization <= 1.0,
            "utilization", "must be in (0, 1]");
    require(finite(idle_fraction) && idle_fraction >= 0.0 && idle_fraction <= 1.0,
            "idle_fraction", "must be in [0, 1]");
    require(finite(alpha) && alpha >= 1.0 && alpha <= 4.0, "alpha", "must be in [1, 4]");
}

void WorkloadSpec::validate(const SystemConfig& config) const {
    require(finite(tts_max_freq_hours) && tts_max_freq_hours > 0.0,
            "tts_max_freq_hours", "must be > 0");
    require(cores_per_job >= 1, "cores_per_job", "must be >= 1");
    require(cores_per_job <= config.total_cores, "cores_per_job", "must be <= total_cores");
    require(finite(sensitivity) && sensitivity >= 0.0 && sensitivity <= 1.0,
            "sensitivity", "must be in [0, 1]");
    require(finite(unscaled_fraction) && unscaled_fraction >= 0.0 && unscaled_fraction <= 1.0,
            "unscaled_fraction", "must be in [0, 1]");
}

void ScalingPolicy::validate() const {
    require(finite(scaling_factor) && scaling_factor >= 1.0, "scaling_factor", "must be >= 1");
}

DerivedModel derive(const SystemConfig& config, const WorkloadSpec& workload) {
    config.validate();
    workload.validate(config);

    DerivedModel d;
    d.system_cost_per_year = config.install_cost / config.lifetime_years;
    d.cooling_cost_per_year = config.it_energy_cost_per_year * (config.pue - 1.0);
    d.it_energy_cost_lifetime = config.it_energy_cost_per_year * config.lifetime_years;
    d.cooling_cost_lifetime = d.cooling_cost_per_year * config.lifetime_years;
    d.total_energy_cost_lifetime = d.it_energy_cost_lifetime + d.cooling_cost_lifetime;
    d.depreciation_per_timeframe = d.system_cost_per_year / 365.0 * config.timeframe_days;

    const double core_hours_lifetime =
        static_cast<double>(config.total_cores) * config.lifetime_years * 24.0 * 365.0;
    d.coeff_total =
        (config.roi * config.install_cost + d.total_energy_cost_lifetime) / core_hours_lifetime;
    d.coeff_system_only = config.roi * config.install_cost / core_hours_lifetime;

    d.core_power = (1000.0 * config.it_energy_cost_per_year / config.electricity_price) /
                   (static_cast<double>(config.total_cores) * 365.0 * 24.0);
    // two-step split: core_power - core_active_power is exactly
    // representable, so idle + active reproduces the core power bit-exactly
    const double idle_rounded = config.idle_fraction * d.core_power;
    d.core_active_power = d.core_power - idle_rounded;
    d.core_idle_power = d.core_power - d.core_active_power;
    d.job_power_max =
        static_cast<double>(workload.cores_per_job) * (d.core_idle_power + d.core_active_power);
    d.active_resources = static_cast<double>(config.total_cores) * config.utilization;
    return d;
}

double scaled_tts(double delta_m_hours, double phi, double sigma) {
    require(finite(delta_m_hours) && delta_m_hours > 0.0, "tts_max_freq_hours", "must be > 0");
    require(finite(phi) && phi >= 1.0, "scaling_factor", "must be >= 1");
    require(finite(sigma) && sigma >= 0.0 && sigma <= 1.0, "sensitivity", "must be in [0, 1]");
    return delta_m_hours + delta_m_hours * (phi - 1.0) * sigma;
}

double job_power_scaled(const DerivedModel& derived, const WorkloadSpec& workload,
                        const SystemConfig& config, double phi) {
    require(finite(phi) && phi >= 1.0, "scaling_factor", "must be >= 1");
    return static_cast<double>(workload.cores_per_job) *
           (derived.core_idle_power + derived.core_active_power / std::pow(phi, config.alpha));
}

double energy_ratio(double iota, double sigma, double alpha, double phi) {
    require(finite(iota) && iota >= 0.0 && iota <= 1.0, "idle_fraction", "must be in [0, 1]");
    require(finite(sigma) && sigma >= 0.0 && sigma <= 1.0, "sensitivity", "must be in [0, 1]");
    require(finite(alpha) && alpha >= 1.0 && alpha <= 4.0, "alpha", "must be in [1, 4]");
    require(finite(phi) && phi >= 1.0, "scaling_factor", "must be >= 1");
    const double power_factor = iota + (1.0 - iota) / std::pow(phi, alpha);
    const double stretch = 1.0 + (phi - 1.0) * sigma;
    return 1.0 / (power_factor * stretch);
}

double tts_stretch(double phi, double sigma) {
    require(finite(phi) && phi >= 1.0, "scaling_factor", "must be >= 1");
    require(finite(sigma) && sigma >= 0.0 && sigma <= 1.0, "sensitivity", "must be in [0, 1]");
    return 1.0 + (phi - 1.0) * sigma;
}

double acceptable_sensitivity_bound(double phi, double stretch_limit) {
    require(finite(phi) && phi >= 1.0, "scaling_factor", "must be >= 1");
    require(finite(stretch_limit) && stretch_limit >= 1.0, "stretch_limit", "must be >= 1");
    if (phi == 1.0) return 1.0; // degenerate boundary: every sensitivity acceptable
    return std::clamp((stretch_limit - 1.0) / (phi - 1.0), 0.0, 1.0);
}

} // namespace hpcprice
