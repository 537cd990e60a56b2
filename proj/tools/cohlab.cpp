// Command-line front end: parameter sweeps, freezing checks, single-state
// measure evaluation, and the lemma verification suites.
//
// Exit codes: 0 success, 1 usage/config error, 2 sweep degraded by optimizer
// failures, 3 freeze check found a non-frozen measure.

#include "coh/dynamics.hpp"
#include "coh/io.hpp"
#include "coh/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

using nlohmann::json;

namespace {

struct StateFlags {
    std::string m3;
    std::string bloch;
    int n_qubits = 2;

    coh::StateDescriptor resolve() const {
        if (!m3.empty() && !bloch.empty())
            throw std::invalid_argument("--m3 and --bloch are exclusive");
        if (!m3.empty()) return coh::parse_m3_flag(m3, n_qubits);
        if (!bloch.empty()) return coh::parse_bloch_flag(bloch);
        throw std::invalid_argument("need --m3 or --bloch");
    }
};

void add_state_flags(CLI::App* cmd, StateFlags& flags) {
    cmd->add_option("--m3", flags.m3,
                    "M3 triple c1,c2,c3 ('freeze' expands c2)");
    cmd->add_option("--bloch", flags.bloch, "Bloch vector n1,n2,n3");
    cmd->add_option("--n", flags.n_qubits, "qubit count for --m3");
}

void print_verdicts(const coh::SweepSeries& series) {
    std::printf("%-10s %-8s %-14s %-10s\n", "measure", "frozen", "max_dev",
                "tol");
    for (size_t m = 0; m < series.measures.size(); ++m) {
        const coh::FreezeVerdict& v = series.verdicts[m];
        std::printf("%-10s %-8s %-14.3e %-10.0e\n", series.measures[m].c_str(),
                    v.indeterminate ? "indet" : (v.frozen ? "yes" : "no"),
                    v.max_deviation, v.tolerance);
    }
}

int emit_series(const coh::SweepSeries& series, const std::string& path,
                const std::string& format) {
    if (format != "csv" && format != "json")
        throw std::invalid_argument("format must be csv or json");
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!path.empty()) {
        file.open(path);
        if (!file)
            throw std::invalid_argument("cannot open output path '" + path + "'");
        os = &file;
    }
    if (format == "csv")
        coh::write_series_csv(series, *os);
    else
        *os << coh::series_to_json(series).dump(2) << "\n";
    return series.any_failure() ? 2 : 0;
}

int cmd_sweep(const std::string& config_path, const StateFlags& state,
              const std::string& channel_kind,
              const std::string& measures_csv, int grid_points,
              std::uint64_t seed, const std::string& output,
              const std::string& format) {
    coh::RunConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in)
            throw std::invalid_argument("cannot read config '" + config_path +
                                        "'");
        cfg = coh::parse_run_config(json::parse(in));
    } else {
        cfg.spec.initial = state.resolve();
        cfg.spec.channel.kind = channel_kind;
        cfg.spec.measures = coh::split_csv(measures_csv);
        cfg.spec.grid = coh::uniform_grid(grid_points);
        cfg.spec.seed = seed;
        cfg.output_path = output;
        cfg.format = format;
    }
    const coh::SweepSeries series = coh::run_sweep(cfg.spec);
    return emit_series(series, cfg.output_path, cfg.format);
}

int cmd_freeze(const StateFlags& state, const std::string& channel_kind,
               const std::string& measures_csv, int grid_points,
               std::uint64_t seed) {
    coh::SweepSpec spec;
    spec.initial = state.resolve();
    spec.channel.kind = channel_kind;
    spec.measures = coh::split_csv(measures_csv);
    spec.grid = coh::uniform_grid(grid_points);
    spec.seed = seed;
    const coh::SweepSeries series = coh::run_sweep(spec);
    print_verdicts(series);

    if (const auto* c = std::get_if<coh::M3Triple>(&spec.initial)) {
        const coh::DensityMatrix rho = coh::m3_state(*c);
        if (coh::is_incoherent(rho))
            std::printf("note: initial state is incoherent (trivial freezing)\n");
    }
    for (const coh::FreezeVerdict& v : series.verdicts)
        if (!v.frozen) return 3;
    return 0;
}

int cmd_verify(const std::string& selector, std::uint64_t seed, int samples,
               const std::string& out_path) {
    const auto reports = coh::verify::run_suite(selector, seed, samples);
    bool all_pass = true;
    json out = json::array();
    std::printf("%-22s %-6s %-12s %-10s %s\n", "lemma", "n", "max_viol", "tol",
                "pass");
    for (const auto& r : reports) {
        std::printf("%-22s %-6d %-12.3e %-10.0e %s\n", r.id.c_str(),
                    r.instances, r.max_violation, r.tolerance,
                    r.pass ? "yes" : "NO");
        all_pass = all_pass && r.pass;
        out.push_back(coh::report_to_json(r));
    }
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        file << out.dump(2) << "\n";
    }
    return all_pass ? 0 : 4;
}

int cmd_measure(const StateFlags& state, const std::string& measures_csv,
                bool as_json, std::uint64_t seed) {
    const coh::StateDescriptor descriptor = state.resolve();
    std::optional<coh::M3Triple> triple;
    std::optional<coh::DensityMatrix> rho;
    if (const auto* c = std::get_if<coh::M3Triple>(&descriptor)) {
        triple = *c;
        rho = coh::m3_state(*c);
    } else {
        rho = coh::bloch_to_density(std::get<coh::BlochVector>(descriptor));
    }
    coh::MinimizeOptions opts;
    opts.seed = seed;
    json out;
    for (const std::string& m : coh::split_csv(measures_csv)) {
        const coh::MeasureValue v = coh::eval_measure(m, *rho, triple, opts);
        if (as_json)
            out[m] = v.value;
        else
            std::printf("%s %.12g\n", m.c_str(), v.value);
    }
    if (as_json) std::printf("%s\n", out.dump(2).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherence dynamics laboratory"};
    app.require_subcommand(1);

    StateFlags state;
    std::string config_path, channel_kind = "bit_flip", measures = "l1,re";
    std::string output, format = "csv", out_path, selector = "all";
    int grid_points = 101, samples = coh::verify::kDefaultSamples;
    std::uint64_t seed = 0;
    bool as_json = false;

    CLI::App* sweep = app.add_subcommand("sweep", "evolve and tabulate measures");
    add_state_flags(sweep, state);
    sweep->add_option("--config", config_path, "JSON run config");
    sweep->add_option("--channel", channel_kind, "channel kind");
    sweep->add_option("--measures", measures, "comma-separated selectors");
    sweep->add_option("--grid", grid_points, "uniform grid point count");
    sweep->add_option("--seed", seed, "optimizer seed");
    sweep->add_option("--output", output, "output path (default stdout)");
    sweep->add_option("--format", format, "csv or json");

    CLI::App* freeze = app.add_subcommand("freeze", "per-measure freeze verdicts");
    add_state_flags(freeze, state);
    freeze->add_option("--channel", channel_kind, "channel kind");
    freeze->add_option("--measures", measures, "comma-separated selectors");
    freeze->add_option("--grid", grid_points, "uniform grid point count");
    freeze->add_option("--seed", seed, "optimizer seed");

    CLI::App* verify = app.add_subcommand("verify", "lemma verification suites");
    verify->add_option("selector", selector,
                       "all|A1|A2|A3|rephasing|symmetrization|frozen-identity|"
                       "eigensystem");
    verify->add_option("--seed", seed, "suite seed")->default_val(
        coh::verify::kDefaultSeed);
    verify->add_option("--samples", samples, "instances per lemma");
    verify->add_option("--out", out_path, "JSON report path");

    CLI::App* measure = app.add_subcommand("measure", "evaluate measures once");
    add_state_flags(measure, state);
    measure->add_option("--measures", measures, "comma-separated selectors");
    measure->add_option("--seed", seed, "optimizer seed");
    measure->add_flag("--json", as_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed())
            return cmd_sweep(config_path, state, channel_kind, measures,
                             grid_points, seed, output, format);
        if (freeze->parsed())
            return cmd_freeze(state, channel_kind, measures, grid_points, seed);
        if (verify->parsed())
            return cmd_verify(selector, seed, samples, out_path);
        if (measure->parsed())
            return cmd_measure(state, measures, as_json, seed);
    } catch (const json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
