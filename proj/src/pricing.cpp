#include "hpcprice/pricing.hpp"

#include <algorithm>
#include <cmath>

#include "hpcprice/errors.hpp"

namespace hpcprice {

namespace {

// Weighted wall hours of one job slot: the unscaled share runs delta_M,
// the scaled share runs delta_S.
double mixed_duration(const WorkloadSpec& workload, const ScalingPolicy& policy) {
    const double delta_m = workload.tts_max_freq_hours;
    const double delta_s = scaled_tts(delta_m, policy.scaling_factor, workload.sensitivity);
    const double beta = workload.unscaled_fraction;
    return (1.0 - beta) * delta_s + beta * delta_m;
}

// Mixed per-job energy in Wh: power * hours for the scaled and unscaled
// shares of the workload.
double mixed_job_energy_wh(const SystemConfig& config, const WorkloadSpec& workload,
                           const ScalingPolicy& policy, const DerivedModel& derived) {
    const double delta_m = workload.tts_max_freq_hours;
    const double delta_s = scaled_tts(delta_m, policy.scaling_factor, workload.sensitivity);
    const double pi_s = job_power_scaled(derived, workload, config, policy.scaling_factor);
    const double beta = workload.unscaled_fraction;
    return (1.0 - beta) * pi_s * delta_s + beta * derived.job_power_max * delta_m;
}

double waves_for(Anchoring anchoring, const SystemConfig& config, const WorkloadSpec& workload,
                 const ScalingPolicy& policy) {
    const double timeframe_hours = 24.0 * config.timeframe_days;
    if (anchoring == Anchoring::FixedWork) {
        return timeframe_hours / workload.tts_max_freq_hours;
    }
    return timeframe_hours / mixed_duration(workload, policy);
}

double income_for_waves(SchemeId scheme, const SystemConfig& config, const WorkloadSpec& workload,
                        const ScalingPolicy& policy, const DerivedModel& derived, double waves) {
    const double delta_m = workload.tts_max_freq_hours;
    const double delta_s = scaled_tts(delta_m, policy.scaling_factor, workload.sensitivity);
    const double beta = workload.unscaled_fraction;
    const double active = derived.active_resources;

    double per_wave = 0.0;
    switch (scheme) {
    case SchemeId::Scheme1:
        per_wave = derived.coeff_total * active * ((1.0 - beta) * delta_s + beta * delta_m);
        break;
    case SchemeId::Scheme2:
        per_wave = derived.coeff_total * active * delta_m;
        break;
    case SchemeId::Scheme3:
        per_wave = derived.coeff_total * active *
                   ((1.0 - beta) * delta_s / policy.scaling_factor + beta * delta_m);
        break;
    case SchemeId::Scheme4: {
        const double jobs_per_wave = active / static_cast<double>(workload.cores_per_job);
        double passthrough = mixed_job_energy_wh(config, workload, policy, derived) *
                             config.electricity_price / 1000.0 * jobs_per_wave;
        if (policy.bill_cooling_energy) passthrough *= config.pue;
        per_wave = derived.coeff_system_only * active * ((1.0 - beta) * delta_s + beta * delta_m) +
                   passthrough;
        break;
    }
    }
    return per_wave * waves;
}

double it_energy_for_waves(const SystemConfig& config, const WorkloadSpec& workload,
                           const ScalingPolicy& policy, const DerivedModel& derived,
                           double waves) {
    const double jobs_per_wave =
        derived.active_resources / static_cast<double>(workload.cores_per_job);
    return mixed_job_energy_wh(config, workload, policy, derived) * config.electricity_price /
           1000.0 * jobs_per_wave * waves;
}

} // namespace

Anchoring resolve_anchoring(const ScalingPolicy& policy, SchemeId scheme) {
    if (policy.anchoring) return *policy.anchoring;
    return scheme == SchemeId::Scheme4 ? Anchoring::FullOccupancy : Anchoring::FixedWork;
}

double wave_count(Anchoring anchoring, const SystemConfig& config, const WorkloadSpec& workload,
                  const ScalingPolicy& policy) {
    config.validate();
    workload.validate(config);
    policy.validate();
    return waves_for(anchoring, config, workload, policy);
}

double income(SchemeId scheme, const SystemConfig& config, const WorkloadSpec& workload,
              const ScalingPolicy& policy, const DerivedModel& derived) {
    policy.validate();
    const double waves = waves_for(resolve_anchoring(policy, scheme), config, workload, policy);
    return income_for_waves(scheme, config, workload, policy, derived, waves);
}

double it_energy_cost_timeframe(const SystemConfig& config, const WorkloadSpec& workload,
                                const ScalingPolicy& policy, const DerivedModel& derived) {
    policy.validate();
    const Anchoring anchoring = policy.anchoring.value_or(Anchoring::FixedWork);
    const double waves = waves_for(anchoring, config, workload, policy);
    return it_energy_for_waves(config, workload, policy, derived, waves);
}

TimeframeOutcome evaluate(SchemeId scheme, const SystemConfig& config,
                          const WorkloadSpec& workload, const ScalingPolicy& policy) {
    policy.validate();
    const DerivedModel derived = derive(config, workload);
    const Anchoring anchoring = resolve_anchoring(policy, scheme);
    const double waves = waves_for(anchoring, config, workload, policy);

    TimeframeOutcome out;
    out.income = income_for_waves(scheme, config, workload, policy, derived, waves);
    out.it_energy_cost = it_energy_for_waves(config, workload, policy, derived, waves);
    out.cooling_energy_cost = out.it_energy_cost * (config.pue - 1.0);
    out.depreciation_cost = derived.depreciation_per_timeframe;
    out.total_cost = out.depreciation_cost + out.it_energy_cost + out.cooling_energy_cost;
    out.gain = out.income - out.total_cost;
    out.jobs_per_timeframe =
        derived.active_resources / static_cast<double>(workload.cores_per_job) * waves;
    out.avg_job_price = out.income / out.jobs_per_timeframe;
    if (anchoring == Anchoring::FixedWork) {
        const double required = waves * mixed_duration(workload, policy);
        out.capacity_overflow =
            std::max(0.0, required / (24.0 * config.timeframe_days) - 1.0);
    }
    return out;
}

TimeframeOutcome baseline(const SystemConfig& config, const WorkloadSpec& workload) {
    ScalingPolicy no_scaling;
    no_scaling.scaling_factor = 1.0;
    no_scaling.anchoring = Anchoring::FixedWork;
    return evaluate(SchemeId::Scheme1, config, workload, no_scaling);
}

NormalizedOutcome normalize(const TimeframeOutcome& outcome, const TimeframeOutcome& base) {
    if (base.gain == 0.0) {
        throw NormalizationUndefined("baseline gain is zero (break-even: U * ROI = 1)");
    }
    if (!(base.avg_job_price > 0.0)) {
        throw NormalizationUndefined("baseline job price is not positive");
    }
    NormalizedOutcome n;
    n.gain_normalized = outcome.gain / base.gain;
    n.price_normalized = outcome.avg_job_price / base.avg_job_price;
    n.baseline = base;
    return n;
}

std::vector<SchemeComparison> compare_schemes(const SystemConfig& config,
                                              const WorkloadSpec& workload,
                                              const ScalingPolicy& policy) {
    const TimeframeOutcome base = baseline(config, workload);
    std::vector<SchemeComparison> rows;
    rows.reserve(4);
    for (SchemeId scheme : {SchemeId::Scheme1, SchemeId::Scheme2, SchemeId::Scheme3,
                            SchemeId::Scheme4}) {
        SchemeComparison row;
        row.scheme = scheme;
        row.outcome = evaluate(scheme, config, workload, policy);
        const double gain_delta = row.outcome.gain - base.gain;
        if (base.gain != 0.0) {
            row.gain_delta_vs_baseline_gain = gain_delta / base.gain;
        }
        row.gain_delta_vs_baseline_income = gain_delta / base.income;
        row.price_delta = row.outcome.avg_job_price / base.avg_job_price - 1.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace hpcprice
