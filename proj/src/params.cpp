#include "hpcprice/params.hpp"

#include <cmath>

#include "hpcprice/errors.hpp"

namespace hpcprice {

namespace {

struct KeyEntry {
    ParamKey key;
    std::string_view canonical;
    std::string_view alias; // empty when none
};

constexpr KeyEntry kKeys[] = {
    {ParamKey::TimeframeDays, "timeframe_days", "theta"},
    {ParamKey::TotalCores, "total_cores", ""},
    {ParamKey::Pue, "pue", ""},
    {ParamKey::ElectricityPrice, "electricity_price", ""},
    {ParamKey::LifetimeYears, "lifetime_years", "lifetime"},
    {ParamKey::InstallCost, "install_cost", ""},
    {ParamKey::ItEnergyCostPerYear, "it_energy_cost_per_year", ""},
    {ParamKey::Roi, "roi", ""},
    {ParamKey::Utilization, "utilization", "u"},
    {ParamKey::IdleFraction, "idle_fraction", "iota"},
    {ParamKey::Alpha, "alpha", ""},
    {ParamKey::TtsMaxFreqHours, "tts_max_freq_hours", "delta_m"},
    {ParamKey::CoresPerJob, "cores_per_job", ""},
    {ParamKey::Sensitivity, "sensitivity", "sigma"},
    {ParamKey::UnscaledFraction, "unscaled_fraction", "beta"},
    {ParamKey::ScalingFactor, "scaling_factor", "phi"},
};

std::int64_t to_integer(ParamKey key, double value) {
    double rounded = std::nearbyint(value);
    if (!std::isfinite(value) || rounded != value) {
        throw InvalidParameter(std::string(canonical_name(key)), "must be an integer");
    }
    return static_cast<std::int64_t>(rounded);
}

} // namespace

std::string_view canonical_name(ParamKey key) {
    for (const auto& e : kKeys) {
        if (e.key == key) return e.canonical;
    }
    return "";
}

std::optional<ParamKey> parse_param_key(std::string_view name) {
    for (const auto& e : kKeys) {
        if (name == e.canonical || (!e.alias.empty() && name == e.alias)) return e.key;
    }
    return std::nullopt;
}

bool is_sweepable(ParamKey key) {
    switch (key) {
    case ParamKey::ScalingFactor:
    case ParamKey::Sensitivity:
    case ParamKey::IdleFraction:
    case ParamKey::Alpha:
    case ParamKey::LifetimeYears:
        return true;
    default:
        return false;
    }
}

void apply_param(ParamKey key, double value, SystemConfig& config, WorkloadSpec& workload,
                 ScalingPolicy& policy) {
    switch (key) {
    case ParamKey::TimeframeDays: config.timeframe_days = value; break;
    case ParamKey::TotalCores: config.total_cores = to_integer(key, value); break;
    case ParamKey::Pue: config.pue = value; break;
    case ParamKey::ElectricityPrice: config.electricity_price = value; break;
    case ParamKey::LifetimeYears: config.lifetime_years = value; break;
    case ParamKey::InstallCost: config.install_cost = value; break;
    case ParamKey::ItEnergyCostPerYear: config.it_energy_cost_per_year = value; break;
    case ParamKey::Roi: config.roi = value; break;
    case ParamKey::Utilization: config.utilization = value; break;
    case ParamKey::IdleFraction: config.idle_fraction = value; break;
    case ParamKey::Alpha: config.alpha = value; break;
    case ParamKey::TtsMaxFreqHours: workload.tts_max_freq_hours = value; break;
    case ParamKey::CoresPerJob: workload.cores_per_job = to_integer(key, value); break;
    case ParamKey::Sensitivity: workload.sensitivity = value; break;
    case ParamKey::UnscaledFraction: workload.unscaled_fraction = value; break;
    case ParamKey::ScalingFactor: policy.scaling_factor = value; break;
    }
}

double read_param(ParamKey key, const SystemConfig& config, const WorkloadSpec& workload,
                  const ScalingPolicy& policy) {
    switch (key) {
    case ParamKey::TimeframeDays: return config.timeframe_days;
    case ParamKey::TotalCores: return static_cast<double>(config.total_cores);
    case ParamKey::Pue: return config.pue;
    case ParamKey::ElectricityPrice: return config.electricity_price;
    case ParamKey::LifetimeYears: return config.lifetime_years;
    case ParamKey::InstallCost: return config.install_cost;
    case ParamKey::ItEnergyCostPerYear: return config.it_energy_cost_per_year;
    case ParamKey::Roi: return config.roi;
    case ParamKey::Utilization: return config.utilization;
    case ParamKey::IdleFraction: return config.idle_fraction;
    case ParamKey::Alpha: return config.alpha;
    case ParamKey::TtsMaxFreqHours: return workload.tts_max_freq_hours;
    case ParamKey::CoresPerJob: return static_cast<double>(workload.cores_per_job);
    case ParamKey::Sensitivity: return workload.sensitivity;
    case ParamKey::UnscaledFraction: return workload.unscaled_fraction;
    case ParamKey::ScalingFactor: return policy.scaling_factor;
    }
    return 0.0;
}

} // namespace hpcprice
