#pragma once

/// Named access to the scalar base parameters, shared by CLI overrides and
/// sweep axes. Canonical names match the scenario-file keys; short aliases
/// (phi, sigma, iota, beta, ...) are accepted everywhere a name is parsed.

#include <optional>
#include <string>
#include <string_view>

#include "hpcprice/model.hpp"

namespace hpcprice {

enum class ParamKey {
    TimeframeDays,
    TotalCores,
    Pue,
    ElectricityPrice,
    LifetimeYears,
    InstallCost,
    ItEnergyCostPerYear,
    Roi,
    Utilization,
    IdleFraction,
    Alpha,
    TtsMaxFreqHours,
    CoresPerJob,
    Sensitivity,
    UnscaledFraction,
    ScalingFactor,
};

/// Canonical (scenario-file) spelling of a key.
std::string_view canonical_name(ParamKey key);

/// Resolves a canonical name or alias; empty when unrecognized.
std::optional<ParamKey> parse_param_key(std::string_view name);

/// Keys that sweeps and isosurface axes may vary.
bool is_sweepable(ParamKey key);

/// Writes `value` into the owning record. Integer-valued keys reject
/// non-integral values. Does not re-validate; callers validate after the
/// full batch of overrides is applied.
void apply_param(ParamKey key, double value, SystemConfig& config, WorkloadSpec& workload,
                 ScalingPolicy& policy);

/// Reads the current value of `key`.
double read_param(ParamKey key, const SystemConfig& config, const WorkloadSpec& workload,
                  const ScalingPolicy& policy);

} // namespace hpcprice
