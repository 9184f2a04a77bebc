#include "hpcprice/scenarios.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "hpcprice/errors.hpp"

namespace hpcprice {

namespace {

using nlohmann::json;

// 9 significant digits, trailing zeros kept (so 0.8 prints as 0.800000000).
std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%#.9g", v);
    return buf;
}

std::string anchoring_name(const std::optional<Anchoring>& anchoring) {
    if (!anchoring) return "scheme-default";
    return *anchoring == Anchoring::FixedWork ? "fixed-work" : "full-occupancy";
}

std::optional<Anchoring> parse_anchoring(const std::string& text, const char* context) {
    if (text == "scheme-default") return std::nullopt;
    if (text == "fixed-work") return Anchoring::FixedWork;
    if (text == "full-occupancy") return Anchoring::FullOccupancy;
    throw ValidationError(context,
                          "must be one of scheme-default, fixed-work, full-occupancy");
}

Scenario make_fermi_like() {
    Scenario s;
    s.name = "fermi_like";
    s.config.timeframe_days = 30.0;
    s.config.total_cores = 163840;
    s.config.pue = 1.25;
    s.config.electricity_price = 0.12;
    s.config.lifetime_years = 3.6;
    s.config.install_cost = 7'400'000.0;
    s.config.it_energy_cost_per_year = 900'000.0;
    s.config.roi = 1.0;
    s.config.utilization = 0.9;
    s.config.idle_fraction = 0.2;
    s.config.alpha = 3.0;
    s.workload.tts_max_freq_hours = 10.0;
    s.workload.cores_per_job = 1024;
    s.workload.sensitivity = 0.2;
    s.workload.unscaled_fraction = 0.5;
    s.policy.scaling_factor = 1.0;
    s.provenance_notes = {
        "total_cores 163840: public core count of a 2 PFlops BlueGene/Q-class system",
        "pue 1.25: round figure for a liquid-cooled machine room",
        "electricity_price 0.12/kWh: round industrial tariff",
        "it_energy_cost_per_year 900000: ~850 kW average IT draw at that tariff",
        "install_cost 7400000, lifetime_years 3.6: calibrated so depreciation is 67% of the"
        " baseline timeframe cost",
        "utilization 0.9, roi 1.0: stand-ins, not operator figures",
        "idle_fraction 0.2, alpha 3: mid-range technology values",
        "timeframe_days 30: stand-in accounting period",
        "workload: 10 h jobs on 1024 cores, sensitivity 0.2, half the jobs never scaled",
    };
    return s;
}

Scenario make_energy_proportional() {
    Scenario s = make_fermi_like();
    s.name = "energy_proportional";
    s.config.idle_fraction = 0.01;
    s.provenance_notes.push_back(
        "idle_fraction 0.01: near energy-proportional hardware");
    return s;
}

Scenario make_low_depreciation() {
    Scenario s = make_fermi_like();
    s.name = "low_depreciation";
    s.config.install_cost = 500'000.0;
    s.config.lifetime_years = calibrate_lifetime(s.config, 9e-5);
    s.provenance_notes.push_back(
        "install_cost 500000, lifetime_years solved so depreciation is 0.009% of the baseline"
        " timeframe cost; an asymptotic stand-in, not a hardware lifetime");
    return s;
}

json config_to_json(const SystemConfig& c) {
    return json{
        {"timeframe_days", c.timeframe_days},
        {"total_cores", c.total_cores},
        {"pue", c.pue},
        {"electricity_price", c.electricity_price},
        {"lifetime_years", c.lifetime_years},
        {"install_cost", c.install_cost},
        {"it_energy_cost_per_year", c.it_energy_cost_per_year},
        {"roi", c.roi},
        {"utilization", c.utilization},
        {"idle_fraction", c.idle_fraction},
        {"alpha", c.alpha},
    };
}

json workload_to_json(const WorkloadSpec& w) {
    return json{
        {"tts_max_freq_hours", w.tts_max_freq_hours},
        {"cores_per_job", w.cores_per_job},
        {"sensitivity", w.sensitivity},
        {"unscaled_fraction", w.unscaled_fraction},
    };
}

json policy_to_json(const ScalingPolicy& p) {
    return json{
        {"scaling_factor", p.scaling_factor},
        {"anchoring", anchoring_name(p.anchoring)},
        {"bill_cooling_energy", p.bill_cooling_energy},
    };
}

json scenario_to_json_object(const Scenario& s) {
    return json{
        {"name", s.name},
        {"config", config_to_json(s.config)},
        {"workload", workload_to_json(s.workload)},
        {"policy", policy_to_json(s.policy)},
        {"provenance_notes", s.provenance_notes},
    };
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) throw UnknownField(where.empty() ? it.key() : where + "." + it.key());
    }
}

double read_number(const json& obj, const std::string& where, const char* key, double fallback,
                   bool has_fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (has_fallback) return fallback;
        throw ParseError("missing required field " + where + "." + key);
    }
    if (!it->is_number()) {
        throw ParseError("field " + where + "." + key + " must be a number");
    }
    return it->get<double>();
}

std::int64_t read_integer(const json& obj, const std::string& where, const char* key,
                          std::int64_t fallback, bool has_fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (has_fallback) return fallback;
        throw ParseError("missing required field " + where + "." + key);
    }
    if (it->is_number_integer()) return it->get<std::int64_t>();
    if (it->is_number_float()) {
        const double v = it->get<double>();
        if (std::nearbyint(v) == v) return static_cast<std::int64_t>(v);
    }
    throw ParseError("field " + where + "." + key + " must be an integer");
}

void parse_config(const json& obj, SystemConfig& c, bool defaults) {
    reject_unknown_keys(obj,
                        {"timeframe_days", "total_cores", "pue", "electricity_price",
                         "lifetime_years", "install_cost", "it_energy_cost_per_year", "roi",
                         "utilization", "idle_fraction", "alpha"},
                        "config");
    c.timeframe_days = read_number(obj, "config", "timeframe_days", c.timeframe_days, defaults);
    c.total_cores = read_integer(obj, "config", "total_cores", c.total_cores, defaults);
    c.pue = read_number(obj, "config", "pue", c.pue, defaults);
    c.electricity_price =
        read_number(obj, "config", "electricity_price", c.electricity_price, defaults);
    c.lifetime_years = read_number(obj, "config", "lifetime_years", c.lifetime_years, defaults);
    c.install_cost = read_number(obj, "config", "install_cost", c.install_cost, defaults);
    c.it_energy_cost_per_year =
        read_number(obj, "config", "it_energy_cost_per_year", c.it_energy_cost_per_year, defaults);
    c.roi = read_number(obj, "config", "roi", c.roi, defaults);
    c.utilization = read_number(obj, "config", "utilization", c.utilization, defaults);
    c.idle_fraction = read_number(obj, "config", "idle_fraction", c.idle_fraction, defaults);
    c.alpha = read_number(obj, "config", "alpha", c.alpha, defaults);
}

void parse_workload(const json& obj, WorkloadSpec& w, bool defaults) {
    reject_unknown_keys(
        obj, {"tts_max_freq_hours", "cores_per_job", "sensitivity", "unscaled_fraction"},
        "workload");
    w.tts_max_freq_hours =
        read_number(obj, "workload", "tts_max_freq_hours", w.tts_max_freq_hours, defaults);
    w.cores_per_job = read_integer(obj, "workload", "cores_per_job", w.cores_per_job, defaults);
    w.sensitivity = read_number(obj, "workload", "sensitivity", w.sensitivity, defaults);
    w.unscaled_fraction =
        read_number(obj, "workload", "unscaled_fraction", w.unscaled_fraction, defaults);
}

void parse_policy(const json& obj, ScalingPolicy& p, bool defaults) {
    reject_unknown_keys(obj, {"scaling_factor", "anchoring", "bill_cooling_energy"}, "policy");
    p.scaling_factor =
        read_number(obj, "policy", "scaling_factor", p.scaling_factor, defaults);
    if (auto it = obj.find("anchoring"); it != obj.end()) {
        if (!it->is_string()) throw ParseError("field policy.anchoring must be a string");
        p.anchoring = parse_anchoring(it->get<std::string>(), "policy.anchoring");
    }
    if (auto it = obj.find("bill_cooling_energy"); it != obj.end()) {
        if (!it->is_boolean()) {
            throw ParseError("field policy.bill_cooling_energy must be a boolean");
        }
        p.bill_cooling_energy = it->get<bool>();
    }
}

// Provenance comment block shared by all CSV exports.
void write_csv_provenance(std::ostringstream& out, const Scenario& s) {
    const SystemConfig& c = s.config;
    const WorkloadSpec& w = s.workload;
    out << "# scenario: " << s.name << "\n";
    out << "# scenario_hash: " << scenario_hash(s) << "\n";
    out << "# config: timeframe_days=" << fmt_real(c.timeframe_days)
        << " total_cores=" << c.total_cores << " pue=" << fmt_real(c.pue)
        << " electricity_price=" << fmt_real(c.electricity_price)
        << " lifetime_years=" << fmt_real(c.lifetime_years)
        << " install_cost=" << fmt_real(c.install_cost)
        << " it_energy_cost_per_year=" << fmt_real(c.it_energy_cost_per_year)
        << " roi=" << fmt_real(c.roi) << " utilization=" << fmt_real(c.utilization)
        << " idle_fraction=" << fmt_real(c.idle_fraction) << " alpha=" << fmt_real(c.alpha)
        << "\n";
    out << "# workload: tts_max_freq_hours=" << fmt_real(w.tts_max_freq_hours)
        << " cores_per_job=" << w.cores_per_job << " sensitivity=" << fmt_real(w.sensitivity)
        << " unscaled_fraction=" << fmt_real(w.unscaled_fraction) << "\n";
    out << "# policy: scaling_factor=" << fmt_real(s.policy.scaling_factor)
        << " anchoring=" << anchoring_name(s.policy.anchoring)
        << " bill_cooling_energy=" << (s.policy.bill_cooling_energy ? "true" : "false") << "\n";
}

json axis_to_json(const AxisSpec& axis) {
    return json{
        {"parameter", axis.parameter_name},
        {"lo", axis.lo},
        {"hi", axis.hi},
        {"steps", axis.steps},
    };
}

json provenance_block(const Scenario& s) {
    return json{
        {"scenario", scenario_to_json_object(s)},
        {"scenario_hash", scenario_hash(s)},
    };
}

} // namespace

void Scenario::validate() const {
    if (name.empty()) throw ValidationError("name", "must be non-empty");
    try {
        config.validate();
        workload.validate(config);
        policy.validate();
    } catch (const InvalidParameter& e) {
        throw ValidationError(e.field(), e.bound());
    }
}

const PresetCatalog& presets() {
    static const PresetCatalog catalog{
        make_fermi_like(),
        make_energy_proportional(),
        make_low_depreciation(),
    };
    return catalog;
}

const Scenario& find_preset(const std::string& name) {
    const PresetCatalog& c = presets();
    if (name == c.fermi_like.name) return c.fermi_like;
    if (name == c.energy_proportional.name) return c.energy_proportional;
    if (name == c.low_depreciation.name) return c.low_depreciation;
    throw ValidationError("preset",
                          "unknown preset '" + name +
                              "' (available: fermi_like, energy_proportional, low_depreciation)");
}

Scenario load_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("scenario document must be a JSON object");
    reject_unknown_keys(doc, {"name", "extends", "config", "workload", "policy",
                              "provenance_notes"},
                        "");

    Scenario s;
    bool defaults = false;
    if (auto it = doc.find("extends"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("field extends must be a string");
        s = find_preset(it->get<std::string>());
        defaults = true;
    }

    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("field name must be a string");
        s.name = it->get<std::string>();
    } else if (!defaults) {
        s.name = "scenario";
    }

    if (auto it = doc.find("config"); it != doc.end()) {
        if (!it->is_object()) throw ParseError("field config must be an object");
        parse_config(*it, s.config, defaults);
    } else if (!defaults) {
        throw ParseError("missing required field config");
    }
    if (auto it = doc.find("workload"); it != doc.end()) {
        if (!it->is_object()) throw ParseError("field workload must be an object");
        parse_workload(*it, s.workload, defaults);
    } else if (!defaults) {
        throw ParseError("missing required field workload");
    }
    if (auto it = doc.find("policy"); it != doc.end()) {
        if (!it->is_object()) throw ParseError("field policy must be an object");
        parse_policy(*it, s.policy, defaults);
    } else if (!defaults) {
        throw ParseError("missing required field policy");
    }
    if (auto it = doc.find("provenance_notes"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("field provenance_notes must be an array");
        s.provenance_notes.clear();
        for (const auto& note : *it) {
            if (!note.is_string()) throw ParseError("provenance_notes entries must be strings");
            s.provenance_notes.push_back(note.get<std::string>());
        }
    }

    s.validate();
    return s;
}

std::string scenario_to_json(const Scenario& scenario) {
    return scenario_to_json_object(scenario).dump(2) + "\n";
}

void set_parameter(Scenario& scenario, const std::string& name, double value) {
    auto key = parse_param_key(name);
    if (!key) throw InvalidAxis("not a model parameter: " + name);
    apply_param(*key, value, scenario.config, scenario.workload, scenario.policy);
}

std::string scenario_hash(const Scenario& scenario) {
    const std::string text = scenario_to_json_object(scenario).dump();
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double calibrate_lifetime(const SystemConfig& config, double target_share) {
    if (!(target_share > 0.0) || !(target_share < 1.0)) {
        throw InvalidParameter("target_share", "must be in (0, 1)");
    }
    const double yearly_total_energy =
        config.pue * config.utilization * config.it_energy_cost_per_year;
    if (!(yearly_total_energy > 0.0)) {
        throw InvalidParameter("it_energy_cost_per_year",
                               "yearly energy cost must be > 0 to calibrate a lifetime");
    }
    return config.install_cost * (1.0 - target_share) / (target_share * yearly_total_energy);
}

std::string export_field(const Field2D& field, const Scenario& scenario, ExportFormat format) {
    if (format == ExportFormat::Csv) {
        std::ostringstream out;
        write_csv_provenance(out, scenario);
        out << "# metric: " << field.metric_name << "\n";
        out << field.x_axis.parameter_name << "," << field.y_axis.parameter_name << ","
            << field.metric_name << "\n";
        for (int i = 0; i < field.x_axis.steps; ++i) {
            for (int j = 0; j < field.y_axis.steps; ++j) {
                const double v = field.at(i, j);
                out << fmt_real(field.x_axis.value_at(i)) << ","
                    << fmt_real(field.y_axis.value_at(j)) << ",";
                if (std::isfinite(v)) out << fmt_real(v);
                out << "\n";
            }
        }
        return out.str();
    }
    json doc{
        {"metric", field.metric_name},
        {"x_axis", axis_to_json(field.x_axis)},
        {"y_axis", axis_to_json(field.y_axis)},
        {"values", field.values}, // row-major; NaN serializes as null
        {"provenance", provenance_block(scenario)},
    };
    return doc.dump(2) + "\n";
}

std::string export_field(const IsoSurface& surface, const Scenario& scenario,
                         ExportFormat format) {
    if (format == ExportFormat::Csv) {
        std::ostringstream out;
        write_csv_provenance(out, scenario);
        out << "# level: " << fmt_real(surface.level) << "\n";
        out << "# tolerance: " << fmt_real(surface.tolerance) << "\n";
        out << "# z_range: " << surface.z_name << " in [" << fmt_real(surface.z_lo) << ", "
            << fmt_real(surface.z_hi) << "]\n";
        out << surface.x_axis.parameter_name << "," << surface.y_axis.parameter_name << ","
            << surface.z_name << "\n";
        for (int i = 0; i < surface.x_axis.steps; ++i) {
            for (int j = 0; j < surface.y_axis.steps; ++j) {
                const auto& h = surface.heights[static_cast<size_t>(i) * surface.y_axis.steps + j];
                out << fmt_real(surface.x_axis.value_at(i)) << ","
                    << fmt_real(surface.y_axis.value_at(j)) << ",";
                if (h) out << fmt_real(*h);
                out << "\n";
            }
        }
        return out.str();
    }
    json heights = json::array();
    for (const auto& h : surface.heights) {
        if (h) {
            heights.push_back(*h);
        } else {
            heights.push_back(nullptr);
        }
    }
    json doc{
        {"level", surface.level},
        {"tolerance", surface.tolerance},
        {"x_axis", axis_to_json(surface.x_axis)},
        {"y_axis", axis_to_json(surface.y_axis)},
        {"z", json{{"parameter", surface.z_name}, {"lo", surface.z_lo}, {"hi", surface.z_hi}}},
        {"heights", heights},
        {"provenance", provenance_block(scenario)},
    };
    return doc.dump(2) + "\n";
}

std::string export_field(const std::vector<SchemeComparison>& rows, const Scenario& scenario,
                         ExportFormat format) {
    if (format == ExportFormat::Csv) {
        std::ostringstream out;
        write_csv_provenance(out, scenario);
        out << "scheme,gain_delta_vs_baseline_gain,gain_delta_vs_baseline_income,price_delta\n";
        for (const auto& row : rows) {
            out << static_cast<int>(row.scheme) << ",";
            if (row.gain_delta_vs_baseline_gain) out << fmt_real(*row.gain_delta_vs_baseline_gain);
            out << "," << fmt_real(row.gain_delta_vs_baseline_income) << ","
                << fmt_real(row.price_delta) << "\n";
        }
        return out.str();
    }
    json rows_json = json::array();
    for (const auto& row : rows) {
        json r{
            {"scheme", static_cast<int>(row.scheme)},
            {"gain_delta_vs_baseline_income", row.gain_delta_vs_baseline_income},
            {"price_delta", row.price_delta},
        };
        if (row.gain_delta_vs_baseline_gain) {
            r["gain_delta_vs_baseline_gain"] = *row.gain_delta_vs_baseline_gain;
        } else {
            r["gain_delta_vs_baseline_gain"] = nullptr;
        }
        rows_json.push_back(r);
    }
    json doc{
        {"rows", rows_json},
        {"provenance", provenance_block(scenario)},
    };
    return doc.dump(2) + "\n";
}

} // namespace hpcprice
