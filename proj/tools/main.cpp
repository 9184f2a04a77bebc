// Command-line front end: single-scheme evaluation, scheme comparison,
// 2-d metric sweeps, isosurface extraction and lifetime calibration.
// Outputs are deterministic; validation failures exit 2, an undefined
// normalization exits 3, I/O failures exit 4.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hpcprice/errors.hpp"
#include "hpcprice/explore.hpp"
#include "hpcprice/model.hpp"
#include "hpcprice/pricing.hpp"
#include "hpcprice/scenarios.hpp"

namespace {

using namespace hpcprice;

struct IoFailure : std::runtime_error {
    explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

struct Options {
    std::string preset;
    std::string scenario_path;
    std::vector<std::string> sets;
    std::vector<std::string> fixes;
    std::string anchoring;
    bool no_bill_cooling = false;

    int scheme = 1;
    std::string metric;
    std::string x_spec;
    std::string y_spec;
    std::string z_spec;
    double level = 1.0;
    double tolerance = 1e-6;
    double share = 0.0;
    std::string format = "csv";
    std::string out_path;
};

std::string fmt_money(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_value(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string fmt_percent(double fraction) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%+.1f%%", fraction * 100.0);
    return buf;
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InvalidAxis(what + ": '" + text + "' is not a number");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

AxisSpec parse_axis(const std::string& text, int default_steps) {
    const auto parts = split(text, ':');
    if (parts.size() != 3 && parts.size() != 4) {
        throw InvalidAxis("axis syntax is name:lo:hi[:steps], got '" + text + "'");
    }
    AxisSpec axis;
    axis.parameter_name = parts[0];
    axis.lo = parse_number(parts[1], "axis lo");
    axis.hi = parse_number(parts[2], "axis hi");
    axis.steps = default_steps;
    if (parts.size() == 4) {
        const double steps = parse_number(parts[3], "axis steps");
        axis.steps = static_cast<int>(steps);
        if (axis.steps != steps) throw InvalidAxis("axis steps must be an integer");
    }
    axis.validate();
    return axis;
}

Scenario load_requested_scenario(const Options& opts) {
    Scenario scenario;
    if (!opts.scenario_path.empty()) {
        std::ifstream in(opts.scenario_path);
        if (!in) throw IoFailure("cannot read scenario file " + opts.scenario_path);
        std::ostringstream text;
        text << in.rdbuf();
        scenario = load_scenario(text.str());
    } else {
        scenario = find_preset(opts.preset.empty() ? "fermi_like" : opts.preset);
    }

    for (const auto* list : {&opts.sets, &opts.fixes}) {
        for (const auto& entry : *list) {
            const auto eq = entry.find('=');
            if (eq == std::string::npos) {
                throw InvalidAxis("override syntax is KEY=VALUE, got '" + entry + "'");
            }
            const std::string key = entry.substr(0, eq);
            set_parameter(scenario, key, parse_number(entry.substr(eq + 1), key));
        }
    }
    if (!opts.anchoring.empty()) {
        if (opts.anchoring == "fixed-work") {
            scenario.policy.anchoring = Anchoring::FixedWork;
        } else if (opts.anchoring == "full-occupancy") {
            scenario.policy.anchoring = Anchoring::FullOccupancy;
        } else {
            throw ValidationError("anchoring", "must be fixed-work or full-occupancy");
        }
    }
    if (opts.no_bill_cooling) scenario.policy.bill_cooling_energy = false;

    scenario.validate();
    return scenario;
}

ExportFormat parse_format(const std::string& name) {
    if (name == "csv") return ExportFormat::Csv;
    if (name == "json") return ExportFormat::Json;
    throw ValidationError("format", "must be csv or json");
}

void write_output(const std::string& document, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << document;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoFailure("cannot write " + out_path);
    out << document;
    if (!out) throw IoFailure("write failed for " + out_path);
}

SchemeId scheme_from(int number) { return static_cast<SchemeId>(number); }

MetricSpec metric_from(const Options& opts, Metric fallback) {
    MetricSpec spec;
    spec.scheme = scheme_from(opts.scheme);
    if (opts.metric.empty()) {
        spec.kind = fallback;
        return spec;
    }
    auto kind = parse_metric(opts.metric);
    if (!kind) {
        throw ValidationError("metric",
                              "must be one of gain_normalized, price_normalized, energy_ratio, "
                              "profitability");
    }
    spec.kind = *kind;
    return spec;
}

int run_eval(const Options& opts) {
    const Scenario s = load_requested_scenario(opts);
    const SchemeId scheme = scheme_from(opts.scheme);
    const TimeframeOutcome outcome = evaluate(scheme, s.config, s.workload, s.policy);

    std::cout << "scenario: " << s.name << " (hash " << scenario_hash(s) << ")\n";
    std::cout << "scheme: " << opts.scheme << "\n";
    std::cout << "anchoring: "
              << (resolve_anchoring(s.policy, scheme) == Anchoring::FixedWork ? "fixed-work"
                                                                              : "full-occupancy")
              << "\n";
    std::cout << "income: " << fmt_money(outcome.income) << "\n";
    std::cout << "it_energy_cost: " << fmt_money(outcome.it_energy_cost) << "\n";
    std::cout << "cooling_energy_cost: " << fmt_money(outcome.cooling_energy_cost) << "\n";
    std::cout << "depreciation_cost: " << fmt_money(outcome.depreciation_cost) << "\n";
    std::cout << "total_cost: " << fmt_money(outcome.total_cost) << "\n";
    std::cout << "gain: " << fmt_money(outcome.gain) << "\n";
    std::cout << "avg_job_price: " << fmt_money(outcome.avg_job_price) << "\n";
    std::cout << "jobs_per_timeframe: " << fmt_value(outcome.jobs_per_timeframe) << "\n";
    std::cout << "capacity_overflow: " << fmt_value(outcome.capacity_overflow) << "\n";

    const NormalizedOutcome n = normalize(outcome, baseline(s.config, s.workload));
    std::cout << "gain_normalized: " << fmt_value(n.gain_normalized) << "\n";
    std::cout << "price_normalized: " << fmt_value(n.price_normalized) << "\n";
    return 0;
}

int run_compare(const Options& opts, bool format_given, bool out_given) {
    const Scenario s = load_requested_scenario(opts);
    const auto rows = compare_schemes(s.config, s.workload, s.policy);

    if (format_given || out_given) {
        write_output(export_field(rows, s, parse_format(opts.format)), opts.out_path);
        return 0;
    }
    std::cout << "scenario: " << s.name << " (hash " << scenario_hash(s) << ")\n";
    std::cout << "scheme  gain_vs_baseline_gain  gain_vs_baseline_income  price_dif\n";
    for (const auto& row : rows) {
        const std::string gain_col = row.gain_delta_vs_baseline_gain
                                         ? fmt_percent(*row.gain_delta_vs_baseline_gain)
                                         : std::string("n/a");
        std::printf("%-7d %-22s %-24s %s\n", static_cast<int>(row.scheme), gain_col.c_str(),
                    fmt_percent(row.gain_delta_vs_baseline_income).c_str(),
                    fmt_percent(row.price_delta).c_str());
    }
    return 0;
}

int run_sweep(const Options& opts) {
    const Scenario s = load_requested_scenario(opts);
    if (opts.metric.empty()) throw ValidationError("metric", "required for sweep");
    const MetricSpec metric = metric_from(opts, Metric::EnergyRatio);
    const AxisSpec x = parse_axis(opts.x_spec.empty() ? "phi:1:5:101" : opts.x_spec, 101);
    const AxisSpec y = parse_axis(opts.y_spec.empty() ? "sigma:0:1:101" : opts.y_spec, 101);
    const Field2D field = sweep2d(metric, s.config, s.workload, s.policy, x, y);
    write_output(export_field(field, s, parse_format(opts.format)), opts.out_path);
    return 0;
}

int run_iso(const Options& opts) {
    const Scenario s = load_requested_scenario(opts);
    const MetricSpec metric = metric_from(opts, Metric::EnergyRatio);
    const AxisSpec x = parse_axis(opts.x_spec.empty() ? "iota:0:1:41" : opts.x_spec, 41);
    const AxisSpec y = parse_axis(opts.y_spec.empty() ? "sigma:0:1:41" : opts.y_spec, 41);

    const auto z_parts = split(opts.z_spec.empty() ? "alpha:1:3" : opts.z_spec, ':');
    if (z_parts.size() != 3) {
        throw InvalidAxis("z axis syntax is name:lo:hi, got '" + opts.z_spec + "'");
    }
    const auto z_key = parse_param_key(z_parts[0]);
    if (!z_key || !is_sweepable(*z_key)) {
        throw InvalidAxis("z parameter cannot be swept: " + z_parts[0]);
    }
    const double z_lo = parse_number(z_parts[1], "z lo");
    const double z_hi = parse_number(z_parts[2], "z hi");

    const ParamKey kx = x.validate();
    const ParamKey ky = y.validate();
    if (kx == ky || kx == *z_key || ky == *z_key) {
        throw InvalidAxis("iso axes must name three distinct parameters");
    }

    const auto f = [&](double xv, double yv, double zv) {
        return evaluate_metric(metric, s.config, s.workload, s.policy,
                               {{kx, xv}, {ky, yv}, {*z_key, zv}});
    };
    IsoSurface surf = isosurface_monotone(f, x, y, z_lo, z_hi, opts.level, opts.tolerance);
    surf.z_name = std::string(canonical_name(*z_key));
    write_output(export_field(surf, s, parse_format(opts.format)), opts.out_path);
    return 0;
}

int run_calibrate(const Options& opts) {
    Scenario s = load_requested_scenario(opts);
    const double lifetime = calibrate_lifetime(s.config, opts.share);
    s.config.lifetime_years = lifetime;
    std::cout << "lifetime_years: " << fmt_value(lifetime) << "\n";
    std::cout << "depreciation_share: " << fmt_value(lifetime_to_depreciation_share(s.config))
              << "\n";
    return 0;
}

int run_presets() {
    const PresetCatalog& catalog = presets();
    for (const Scenario* s :
         {&catalog.fermi_like, &catalog.energy_proportional, &catalog.low_depreciation}) {
        std::cout << s->name << " (hash " << scenario_hash(*s) << ")\n";
        std::cout << "  depreciation_share: "
                  << fmt_value(lifetime_to_depreciation_share(s->config)) << "\n";
        for (const auto& note : s->provenance_notes) {
            std::cout << "  - " << note << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cost/energy/pricing model for frequency-scaled HPC systems"};
    app.require_subcommand(1);

    Options opts;

    auto add_scenario_options = [&](CLI::App* cmd) {
        cmd->add_option("--preset", opts.preset,
                        "Named preset (fermi_like, energy_proportional, low_depreciation)");
        cmd->add_option("--scenario", opts.scenario_path, "Scenario JSON file");
        cmd->add_option("--set", opts.sets, "Override KEY=VALUE (repeatable)");
        cmd->add_option("--fix", opts.fixes, "Alias of --set (repeatable)");
        cmd->add_option("--anchoring", opts.anchoring,
                        "Workload closure: fixed-work or full-occupancy");
        cmd->add_flag("--no-bill-cooling", opts.no_bill_cooling,
                      "Scheme 4 bills bare IT energy instead of IT energy times PUE");
    };

    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate one scheme on one scenario");
    add_scenario_options(eval_cmd);
    eval_cmd->add_option("--scheme", opts.scheme, "Pricing scheme")->check(CLI::Range(1, 4));

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Compare all four schemes against the baseline");
    add_scenario_options(compare_cmd);
    auto* cmp_format = compare_cmd->add_option("--format", opts.format, "csv or json");
    auto* cmp_out = compare_cmd->add_option("--out", opts.out_path, "Output file");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "2-d grid sweep of a metric");
    add_scenario_options(sweep_cmd);
    sweep_cmd->add_option("--scheme", opts.scheme, "Pricing scheme")->check(CLI::Range(1, 4));
    sweep_cmd->add_option("--metric", opts.metric,
                          "gain_normalized, price_normalized, energy_ratio or profitability");
    sweep_cmd->add_option("--x", opts.x_spec, "X axis name:lo:hi[:steps] (default phi:1:5:101)");
    sweep_cmd->add_option("--y", opts.y_spec, "Y axis name:lo:hi[:steps] (default sigma:0:1:101)");
    sweep_cmd->add_option("--format", opts.format, "csv or json");
    sweep_cmd->add_option("--out", opts.out_path, "Output file (default stdout)");

    CLI::App* iso_cmd =
        app.add_subcommand("iso", "Extract the level set of a metric over three parameters");
    add_scenario_options(iso_cmd);
    iso_cmd->add_option("--scheme", opts.scheme, "Pricing scheme")->check(CLI::Range(1, 4));
    iso_cmd->add_option("--metric", opts.metric, "Metric (default energy_ratio)");
    iso_cmd->add_option("--level", opts.level, "Level to extract (default 1)");
    iso_cmd->add_option("--tolerance", opts.tolerance, "Bisection tolerance on the metric");
    iso_cmd->add_option("--x", opts.x_spec, "X axis name:lo:hi[:steps] (default iota:0:1:41)");
    iso_cmd->add_option("--y", opts.y_spec, "Y axis name:lo:hi[:steps] (default sigma:0:1:41)");
    iso_cmd->add_option("--z", opts.z_spec, "Probe axis name:lo:hi (default alpha:1:3)");
    iso_cmd->add_option("--format", opts.format, "csv or json");
    iso_cmd->add_option("--out", opts.out_path, "Output file (default stdout)");

    CLI::App* calibrate_cmd = app.add_subcommand(
        "calibrate", "Solve the lifetime for a target baseline depreciation share");
    add_scenario_options(calibrate_cmd);
    calibrate_cmd->add_option("--share", opts.share, "Target depreciation share in (0, 1)")
        ->required();

    app.add_subcommand("presets", "List bundled scenarios and their provenance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(opts);
        if (compare_cmd->parsed()) {
            return run_compare(opts, cmp_format->count() > 0, cmp_out->count() > 0);
        }
        if (sweep_cmd->parsed()) return run_sweep(opts);
        if (iso_cmd->parsed()) return run_iso(opts);
        if (calibrate_cmd->parsed()) return run_calibrate(opts);
        return run_presets();
    } catch (const NormalizationUndefined& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
