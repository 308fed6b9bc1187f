// normpatrol: plan patrols, run comparison batches, render routes.
//
// Exit codes: 0 patrol success (or command completed), 2 planning/patrol
// failure, 1 usage, input or I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normpatrol/normpatrol.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPatrolFailure = 2;

struct OverrideFlags {
    std::string framing;
    std::string meta;
    std::optional<double> ch;
    std::optional<std::uint32_t> k;
    std::optional<double> meta_threshold;
    std::optional<std::int64_t> budget;
    std::optional<double> coverage;
    std::optional<std::int32_t> obs_radius;

    void attach(CLI::App& cmd) {
        cmd.add_option("--framing", framing, "Norm framing")->check(CLI::IsMember({"deont", "util"}));
        cmd.add_option("--ch", ch, "Person-space cost c_h (utilitarian)")->check(CLI::NonNegativeNumber);
        cmd.add_option("--k", k, "Allowed person-cell entries (deontological)");
        cmd.add_option("--meta", meta, "Metacognition")->check(CLI::IsMember({"on", "off"}));
        cmd.add_option("--meta-threshold", meta_threshold, "c_h at or below which plans are reviewed")
            ->check(CLI::NonNegativeNumber);
        cmd.add_option("--budget", budget, "Movement budget")->check(CLI::PositiveNumber);
        cmd.add_option("--coverage", coverage, "Fraction of perimeter cells to visit")->check(CLI::Range(0.0, 1.0));
        cmd.add_option("--obs-radius", obs_radius, "Observation radius; enables replanning")
            ->check(CLI::PositiveNumber);
    }

    normpatrol::Overrides to_overrides() const {
        normpatrol::Overrides o;
        if (!framing.empty()) o.framing = normpatrol::framing_from_name(framing);
        if (!meta.empty()) o.meta = meta == "on";
        o.ch = ch;
        o.k = k;
        o.meta_threshold = meta_threshold;
        o.budget = budget;
        o.coverage = coverage;
        o.obs_radius = obs_radius;
        return o;
    }
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot write '" + path + "'");
    out << text;
    if (!out) throw std::system_error(errno, std::generic_category(), "error writing '" + path + "'");
}

std::string summary_line(const normpatrol::Trace& t) {
    std::ostringstream s;
    s << "patrol_success=" << (t.outcome.patrol_success ? "true" : "false")
      << " people_avoided=" << (t.outcome.people_avoided ? "true" : "false") << " movements=" << t.totals.movements
      << " violations=" << t.totals.violations << " expansions=" << t.totals.expansions_total
      << " replans=" << t.totals.replans << " conflict=" << normpatrol::conflict_name(t.conflict);
    return s.str();
}

int cmd_plan(const std::string& scenario_path, const OverrideFlags& flags, const std::string& render_style,
             const std::string& out_path) {
    normpatrol::Scenario sc = [&] {
        try {
            return normpatrol::apply_overrides(normpatrol::load_scenario(scenario_path), flags.to_overrides());
        } catch (const normpatrol::ScenarioParseError& e) {
            throw std::runtime_error("parse error in '" + scenario_path + "': " + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("invalid scenario '" + scenario_path + "': " + e.what());
        }
    }();

    const auto trace = normpatrol::run_scenario(sc);
    const auto doc = normpatrol::make_trace_document(sc, trace, scenario_path);
    if (!out_path.empty()) write_output(out_path, normpatrol::to_json(doc).dump(2) + "\n");
    std::cout << summary_line(trace) << '\n';
    if (!render_style.empty())
        std::cout << normpatrol::render(sc.map, trace, *normpatrol::render_style_from_name(render_style));
    if (!trace.outcome.patrol_success) {
        std::cerr << "planning failure: patrol not completed (" << normpatrol::conflict_name(trace.conflict)
                  << ")\n";
        return kExitPatrolFailure;
    }
    return kExitSuccess;
}

std::vector<normpatrol::BatchEntry> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::system_error(errno, std::generic_category(), "cannot open manifest '" + path + "'");
    const auto base = std::filesystem::path(path).parent_path();
    std::vector<normpatrol::BatchEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string scenario, config;
        if (!(fields >> scenario) || scenario.front() == '#') continue;
        fields >> config;
        const std::filesystem::path p(scenario);
        entries.push_back({p.is_absolute() ? scenario : (base / p).string(), config});
    }
    return entries;
}

std::vector<std::string> sweep_configs(const std::string& range, const std::string& base) {
    const auto dots = range.find("..");
    auto lo = dots == std::string::npos ? std::nullopt : normpatrol::detail::parse_number<int>(range.substr(0, dots));
    auto hi = dots == std::string::npos ? std::nullopt : normpatrol::detail::parse_number<int>(range.substr(dots + 2));
    if (!lo || !hi || *lo < 0 || *hi < *lo) throw CLI::ValidationError("--sweep-ch", "expected a range like 0..12");
    std::vector<std::string> out;
    for (int ch = *lo; ch <= *hi; ++ch) out.push_back(base + ":ch=" + std::to_string(ch));
    return out;
}

int cmd_batch(const std::vector<std::string>& scenarios, std::vector<std::string> configs,
              const std::string& sweep, const std::string& sweep_base, const std::string& manifest,
              const std::string& out_path, unsigned threads) {
    if (!sweep.empty()) {
        auto extra = sweep_configs(sweep, sweep_base);
        configs.insert(configs.end(), extra.begin(), extra.end());
    }
    for (const auto& c : configs) normpatrol::parse_config(c);  // reject bad configs before running
    if (configs.empty()) configs.push_back("");

    std::vector<normpatrol::BatchEntry> entries;
    for (const auto& s : scenarios)
        for (const auto& c : configs) entries.push_back({s, c});
    if (!manifest.empty()) {
        auto more = read_manifest(manifest);
        entries.insert(entries.end(), more.begin(), more.end());
    }
    if (entries.empty()) throw CLI::ValidationError("batch", "no scenarios given");

    write_output(out_path, normpatrol::to_csv(normpatrol::run_batch(entries, threads)));
    return kExitSuccess;
}

int cmd_render(const std::string& trace_path, const std::string& style, const std::string& scenario_path,
               const std::string& out_path) {
    auto doc = normpatrol::load_trace_document(trace_path);
    const auto& map = [&]() -> const normpatrol::GridMap& {
        if (scenario_path.empty()) return doc.map;
        static const auto sc = normpatrol::load_scenario(scenario_path);
        if (sc.map.width() != doc.map.width() || sc.map.height() != doc.map.height())
            throw std::invalid_argument("trace/scenario dimension mismatch: trace is " +
                                        std::to_string(doc.map.width()) + "x" + std::to_string(doc.map.height()) +
                                        ", scenario is " + std::to_string(sc.map.width()) + "x" +
                                        std::to_string(sc.map.height()));
        return sc.map;
    }();
    write_output(out_path, normpatrol::render(map, doc.trace, *normpatrol::render_style_from_name(style)));
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Norm-aware patrol planner for grid warehouses"};
    app.require_subcommand(1);

    std::optional<std::int64_t> seed;  // reserved; planning is deterministic

    auto* plan = app.add_subcommand("plan", "Plan and execute one scenario");
    std::string plan_scenario, plan_out, plan_render;
    OverrideFlags plan_flags;
    plan->add_option("scenario", plan_scenario, "Scenario file")->required();
    plan_flags.attach(*plan);
    plan->add_option("--render", plan_render, "Also print the route")->check(CLI::IsMember({"ascii", "svg"}));
    plan->add_option("--out", plan_out, "Write the trace document here");
    plan->add_option("--seed", seed, "Reserved; the engine is deterministic");

    auto* batch = app.add_subcommand("batch", "Run scenarios across a configuration matrix, emit CSV");
    std::vector<std::string> batch_scenarios, batch_configs;
    std::string batch_sweep, batch_sweep_base = "util", batch_manifest, batch_out;
    unsigned batch_threads = 0;
    batch->add_option("scenarios", batch_scenarios, "Scenario files");
    batch->add_option("--config", batch_configs, "Configuration string, e.g. util:ch=2:meta=on (repeatable)");
    batch->add_option("--sweep-ch", batch_sweep, "Add util:ch=i configurations for a range like 0..12");
    batch->add_option("--sweep-base", batch_sweep_base, "Configuration prefix for --sweep-ch");
    batch->add_option("--manifest", batch_manifest, "File of 'scenario [config]' lines");
    batch->add_option("--out", batch_out, "CSV output path (default stdout)");
    batch->add_option("--threads", batch_threads, "Worker threads (default: hardware concurrency)");
    batch->add_option("--seed", seed, "Reserved; the engine is deterministic");

    auto* rend = app.add_subcommand("render", "Render a trace document");
    std::string render_trace, render_style = "ascii", render_scenario, render_out;
    rend->add_option("trace", render_trace, "Trace document (JSON)")->required();
    rend->add_option("--render", render_style, "Output style")->check(CLI::IsMember({"ascii", "svg"}));
    rend->add_option("--scenario", render_scenario, "Draw over this scenario's map instead of the embedded one");
    rend->add_option("--out", render_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*plan) return cmd_plan(plan_scenario, plan_flags, plan_render, plan_out);
        if (*batch)
            return cmd_batch(batch_scenarios, batch_configs, batch_sweep, batch_sweep_base, batch_manifest,
                             batch_out, batch_threads);
        if (*rend) return cmd_render(render_trace, render_style, render_scenario, render_out);
    } catch (const std::system_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: malformed trace document: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
