#pragma once

/// Named scenarios, strict JSON scenario files, the lifetime calibration
/// solver, and CSV/JSON exporters for sweep fields, isosurfaces and scheme
/// comparisons. Exported documents are byte-deterministic and carry a
/// provenance header (scenario values plus a content hash, no timestamps).

#include <string>
#include <vector>

#include "hpcprice/explore.hpp"
#include "hpcprice/model.hpp"
#include "hpcprice/pricing.hpp"

namespace hpcprice {

struct Scenario {
    std::string name;
    SystemConfig config;
    WorkloadSpec workload;
    ScalingPolicy policy;
    std::vector<std::string> provenance_notes;

    void validate() const;

    bool operator==(const Scenario&) const = default;
};

/// Bundled reference scenarios. fermi_like reproduces a large 2012-era
/// installation whose baseline cost is two-thirds depreciation;
/// energy_proportional lowers the idle power to 1%; low_depreciation
/// drives the depreciation share of the timeframe cost to (almost) zero.
struct PresetCatalog {
    Scenario fermi_like;
    Scenario energy_proportional;
    Scenario low_depreciation;
};

const PresetCatalog& presets();

/// Preset lookup by name; throws ValidationError for unknown names.
const Scenario& find_preset(const std::string& name);

/// Parses and validates a scenario document. Unknown keys are rejected.
/// A document may `extends` a preset, in which case omitted fields default
/// to the preset's; otherwise every config/workload field is required.
Scenario load_scenario(const std::string& json_text);

/// Serializes a scenario so load_scenario reproduces it exactly.
std::string scenario_to_json(const Scenario& scenario);

/// Applies `name=value` to the owning record (canonical names or aliases).
/// Throws InvalidAxis for unknown names. Callers re-validate afterwards.
void set_parameter(Scenario& scenario, const std::string& name, double value);

/// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string scenario_hash(const Scenario& scenario);

/// Lifetime that makes the baseline depreciation share equal target_share:
/// closed-form inversion of lifetime_to_depreciation_share. Requires
/// 0 < target_share < 1 and a positive yearly energy cost.
double calibrate_lifetime(const SystemConfig& config, double target_share);

enum class ExportFormat { Csv, Json };

std::string export_field(const Field2D& field, const Scenario& scenario, ExportFormat format);
std::string export_field(const IsoSurface& surface, const Scenario& scenario,
                         ExportFormat format);
std::string export_field(const std::vector<SchemeComparison>& rows, const Scenario& scenario,
                         ExportFormat format);

} // namespace hpcprice
