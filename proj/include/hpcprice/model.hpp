#pragma once

/// Facility-level cost/energy/performance model for an HPC system whose
/// compute resources can be slowed by a frequency scaling factor. Base
/// parameters describe the installation and a representative job class;
/// derived quantities (per-core power split, hourly cost coefficients,
/// per-timeframe depreciation) feed the pricing and exploration layers.

#include <cstdint>
#include <optional>

namespace hpcprice {

/// Facility-wide base parameters.
///
/// Monetary values are in a single unnamed currency; energy prices are per
/// kWh. `alpha` is the technology exponent that governs how active power
/// shrinks when frequency drops (power ~ 1/phi^alpha), valid in [1, 4].
/// `idle_fraction` is the share of a core's max-frequency power drawn even
/// when idle; low values describe energy-proportional hardware.
struct SystemConfig {
    double timeframe_days = 30.0;
    std::int64_t total_cores = 1;
    double pue = 1.0;
    double electricity_price = 0.1;   // currency / kWh
    double lifetime_years = 5.0;
    double install_cost = 1.0;
    double it_energy_cost_per_year = 0.0;
    double roi = 1.0;                 // owner's target multiple, >= 1
    double utilization = 1.0;         // fraction of cores booked, (0, 1]
    double idle_fraction = 0.0;       // iota, [0, 1]
    double alpha = 1.0;               // [1, 4]

    /// Throws InvalidParameter naming the offending field.
    void validate() const;

    bool operator==(const SystemConfig&) const = default;
};

/// Representative job class.
///
/// `sensitivity` is the fraction of the worst-case slowdown the job actually
/// suffers when scaled (0 = memory/IO bound, 1 = fully CPU bound).
/// `unscaled_fraction` is the share of jobs exempt from scaling.
struct WorkloadSpec {
    double tts_max_freq_hours = 1.0;  // wall hours at maximum frequency
    std::int64_t cores_per_job = 1;
    double sensitivity = 0.0;         // sigma, [0, 1]
    double unscaled_fraction = 0.0;   // beta, [0, 1]

    /// Validates the job-level bounds plus cores_per_job <= total cores.
    void validate(const SystemConfig& config) const;

    bool operator==(const WorkloadSpec&) const = default;
};

/// How the per-timeframe workload volume is closed when jobs stretch.
///
/// FixedWork freezes the number of job waves at the no-scaling value (a
/// stretched wave may exceed the timeframe; reported as capacity overflow).
/// FullOccupancy keeps the machine continuously booked, so fewer waves
/// complete when jobs run longer.
enum class Anchoring { FixedWork, FullOccupancy };

/// Scaling decision applied to the workload.
///
/// `anchoring` left unset selects the per-scheme default (FixedWork for
/// schemes 1-3, FullOccupancy for scheme 4). `bill_cooling_energy` controls
/// whether scheme 4's energy pass-through charges users the facility rate
/// (IT energy times PUE) or the bare IT rate.
struct ScalingPolicy {
    double scaling_factor = 1.0;      // phi = f_max / f_scaled, >= 1
    std::optional<Anchoring> anchoring;
    bool bill_cooling_energy = true;

    void validate() const;

    bool operator==(const ScalingPolicy&) const = default;
};

/// Quantities computed once per (config, workload) pair.
struct DerivedModel {
    double system_cost_per_year = 0.0;       // install_cost / lifetime
    double cooling_cost_per_year = 0.0;      // IT energy cost * (PUE - 1)
    double it_energy_cost_lifetime = 0.0;
    double cooling_cost_lifetime = 0.0;
    double total_energy_cost_lifetime = 0.0;
    double depreciation_per_timeframe = 0.0;
    double coeff_total = 0.0;        // currency per core-hour, incl. energy
    double coeff_system_only = 0.0;  // currency per core-hour, depreciation only
    double core_power = 0.0;         // W at max frequency
    double core_idle_power = 0.0;    // W
    double core_active_power = 0.0;  // W; idle + active == core_power
    double job_power_max = 0.0;      // W for one job at max frequency
    double active_resources = 0.0;   // cores booked = total_cores * utilization

    bool operator==(const DerivedModel&) const = default;
};

/// Computes every derived quantity. Deterministic: equal inputs give
/// bit-identical outputs. Throws InvalidParameter if any input invariant
/// fails.
DerivedModel derive(const SystemConfig& config, const WorkloadSpec& workload);

/// Wall time of a job slowed by factor `phi`:
/// delta_m + delta_m * (phi - 1) * sigma. Lies in [delta_m, delta_m * phi].
double scaled_tts(double delta_m_hours, double phi, double sigma);

/// Power draw of one job at scaled frequency:
/// cores_per_job * (P_idle + P_active / phi^alpha).
double job_power_scaled(const DerivedModel& derived, const WorkloadSpec& workload,
                        const SystemConfig& config, double phi);

/// Energy at max frequency divided by energy at scaled frequency:
///   1 / ((iota + (1 - iota) / phi^alpha) * (1 + (phi - 1) * sigma))
/// Values above 1 mean the slowdown saves energy.
double energy_ratio(double iota, double sigma, double alpha, double phi);

/// Relative TtS stretch 1 + (phi - 1) * sigma, bounded by [1, phi].
double tts_stretch(double phi, double sigma);

/// Largest sensitivity for which the stretch stays within `stretch_limit`:
/// (stretch_limit - 1) / (phi - 1), clamped to [0, 1]. At phi == 1 the
/// boundary degenerates (any sensitivity is acceptable) and the clamp
/// value 1 is returned.
double acceptable_sensitivity_bound(double phi, double stretch_limit = 1.5);

} // namespace hpcprice
