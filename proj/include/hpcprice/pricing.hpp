#pragma once

/// The four charging schemes and the per-timeframe bottom line.
///
/// Income formulas are defined per job wave (one wave = every active core
/// running one job). A wave count closes the gap between per-wave income
/// and per-timeframe costs: under FixedWork the count stays at the
/// no-scaling value 24*theta/delta_M, under FullOccupancy the machine is
/// continuously booked and stretched jobs reduce the count. Scheme 4's
/// default closure is FullOccupancy, which makes its gain independent of
/// the scaling decision; schemes 1-3 default to FixedWork.

#include <optional>
#include <vector>

#include "hpcprice/model.hpp"

namespace hpcprice {

enum class SchemeId { Scheme1 = 1, Scheme2 = 2, Scheme3 = 3, Scheme4 = 4 };

/// Everything the owner sees for one timeframe under one scheme.
struct TimeframeOutcome {
    double income = 0.0;
    double it_energy_cost = 0.0;
    double cooling_energy_cost = 0.0; // it_energy_cost * (PUE - 1)
    double depreciation_cost = 0.0;
    double total_cost = 0.0;          // depreciation + IT energy + cooling
    double gain = 0.0;                // income - total_cost
    double avg_job_price = 0.0;
    double jobs_per_timeframe = 0.0;
    double capacity_overflow = 0.0;   // fraction of required hours beyond the
                                      // timeframe under FixedWork; 0 = feasible
};

/// Outcome divided by the scheme-1, no-scaling baseline.
struct NormalizedOutcome {
    double gain_normalized = 0.0;  // may be negative
    double price_normalized = 0.0; // never negative
    TimeframeOutcome baseline;
};

/// One row of a scheme-comparison table: deltas versus the baseline. The
/// gain delta relative to the baseline gain is absent when the baseline
/// breaks even (gain == 0); the income-relative gain delta and the price
/// delta are always defined.
struct SchemeComparison {
    SchemeId scheme = SchemeId::Scheme1;
    std::optional<double> gain_delta_vs_baseline_gain;
    double gain_delta_vs_baseline_income = 0.0;
    double price_delta = 0.0;
    TimeframeOutcome outcome;
};

/// Scheme default when the policy leaves the closure unset.
Anchoring resolve_anchoring(const ScalingPolicy& policy, SchemeId scheme);

/// Number of job waves in the timeframe under the given closure.
double wave_count(Anchoring anchoring, const SystemConfig& config, const WorkloadSpec& workload,
                  const ScalingPolicy& policy);

/// Per-timeframe income for one scheme (per-wave income times the wave
/// count, with the closure resolved per scheme).
double income(SchemeId scheme, const SystemConfig& config, const WorkloadSpec& workload,
              const ScalingPolicy& policy, const DerivedModel& derived);

/// Per-timeframe IT energy cost: the mixed per-job energy times jobs per
/// wave times the wave count (closure from the policy, FixedWork when
/// unset). At phi = 1, U = 1, FixedWork this equals
/// it_energy_cost_per_year * theta / 365.
double it_energy_cost_timeframe(const SystemConfig& config, const WorkloadSpec& workload,
                                const ScalingPolicy& policy, const DerivedModel& derived);

/// Full outcome for one scheme. Income and energy share a single wave
/// count so that scheme 4's pass-through cancels its energy bill exactly.
TimeframeOutcome evaluate(SchemeId scheme, const SystemConfig& config,
                          const WorkloadSpec& workload, const ScalingPolicy& policy);

/// Scheme 1 with no scaling (phi = 1, FixedWork): the reference all
/// normalized outputs divide by. Its gain has the closed form
/// depreciation_per_timeframe * (U * ROI - 1).
TimeframeOutcome baseline(const SystemConfig& config, const WorkloadSpec& workload);

/// Divides gain and price by the baseline's. Throws NormalizationUndefined
/// when the baseline breaks even.
NormalizedOutcome normalize(const TimeframeOutcome& outcome, const TimeframeOutcome& base);

/// One comparison row per scheme against the shared baseline.
std::vector<SchemeComparison> compare_schemes(const SystemConfig& config,
                                              const WorkloadSpec& workload,
                                              const ScalingPolicy& policy);

} // namespace hpcprice
