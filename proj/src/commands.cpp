#include "cfilt/commands.hpp"

#include "cfilt/error.hpp"
#include "cfilt/touchstone.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cfilt {

namespace fs = std::filesystem;

std::string_view to_string(Topology t) {
    return t == Topology::traditional ? "traditional" : "proposed";
}

namespace {

std::string format(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

std::string format_fz(double fz) {
    return std::isinf(fz) ? std::string("inf") : format("%.6f", fz / 1e9);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    return f;
}

void check_coverage(const DesignConfig& cfg) {
    const auto& f = cfg.filter;
    if (cfg.sweep.f_start_hz > f.f0_hz * (1.0 - f.delta))
        throw ConfigError("sweep.f_start_hz", "sweep must start at or below f0 * (1 - delta)");
    if (cfg.sweep.f_stop_hz < 3.0 * f.f0_hz * (1.0 + cfg.objective.harmonic_window))
        throw ConfigError("sweep.f_stop_hz", "sweep must reach the third-harmonic window, 3 f0 (1 + harmonic_window)");
}

std::vector<std::string> header_comments(const DesignConfig& cfg, Topology which, const StubConfig* stubs) {
    const auto& f = cfg.filter;
    std::vector<std::string> lines{
        format("cfilt %s coupled-line bandpass response", std::string(to_string(which)).c_str()),
        format("f0_hz=%.10g delta=%.10g z0_ohm=%.10g order=%d family=%s ripple_db=%.9g", f.f0_hz, f.delta, f.z0_ohm,
               f.prototype.order, std::string(to_string(f.prototype.family)).c_str(), f.prototype.ripple_db),
        format("sweep f_start_hz=%.10g f_stop_hz=%.10g points=%d", cfg.sweep.f_start_hz, cfg.sweep.f_stop_hz,
               cfg.sweep.n_points)};
    if (stubs) {
        for (const auto& s : stubs->stubs)
            lines.push_back(format("stub zt_ohm=%.9g fz_ghz=%s site=%d", s.zt_ohm, format_fz(s.fz_hz).c_str(), s.site));
    }
    return lines;
}

ResponseTrace run_sweep(const DesignConfig& cfg, const std::vector<SectionDesign>& sections, Topology which,
                        const StubConfig* stubs) {
    const auto& spec = cfg.filter;
    if (which == Topology::traditional)
        return sweep([&](double f) { return build_traditional(sections, f, spec); }, cfg.sweep, spec.z0_ohm);
    return sweep([&](double f) { return build_proposed(sections, *stubs, f, spec); }, cfg.sweep, spec.z0_ohm);
}

SweepFiles write_trace(const DesignConfig& cfg, const ResponseTrace& trace, Topology which, const StubConfig* stubs,
                       const fs::path& out_dir) {
    ensure_dir(out_dir);
    const std::string stem(to_string(which));
    SweepFiles files{out_dir / (stem + ".s2p"), out_dir / (stem + ".csv")};
    {
        auto f = open_output(files.touchstone);
        write_touchstone(f, trace, header_comments(cfg, which, stubs));
    }
    {
        auto f = open_output(files.csv);
        write_csv(f, trace);
    }
    return files;
}

void print_metrics(std::ostream& out, const char* label, const BandMetrics& m) {
    out << format("%-12s passband IL %8.3f dB  RL %8.3f dB  2f0 %9.3f dB  3f0 %9.3f dB\n", label,
                  m.passband_il_db + 0.0, m.passband_rl_db + 0.0, m.suppression_2f0_db + 0.0,
                  m.suppression_3f0_db + 0.0);
}

void print_stubs(std::ostream& out, const StubConfig& stubs) {
    for (std::size_t i = 0; i < stubs.stubs.size(); ++i) {
        const auto& s = stubs.stubs[i];
        out << format("stub %zu: zt = %.3f ohm, fz = %s GHz, site = %d\n", i, s.zt_ohm, format_fz(s.fz_hz).c_str(),
                      s.site);
    }
}

const StubSearchSpace& require_search(const DesignConfig& cfg) {
    if (!cfg.stub_search) throw ConfigError("stubs.search", "required for optimization");
    return *cfg.stub_search;
}

OptimizationResult optimize(const DesignConfig& cfg, const std::vector<SectionDesign>& sections) {
    OptimizerOptions o;
    o.budget = cfg.optimizer.budget;
    o.restarts = cfg.optimizer.restarts;
    o.refine = cfg.optimizer.refine;
    o.seed = cfg.seed;
    return optimize_stubs(sections, require_search(cfg), cfg.filter, cfg.objective, cfg.sweep, o);
}

}  // namespace

DesignConfig with_overrides(DesignConfig cfg, const RunOptions& opts) {
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.points) {
        if (*opts.points < 2) throw ConfigError("--points", "must be >= 2");
        cfg.sweep.n_points = *opts.points;
    }
    return cfg;
}

std::vector<SectionDesign> cmd_synth(const DesignConfig& cfg, const RunOptions& opts, std::ostream& out,
                                     std::ostream& err) {
    const auto sections = synthesize(cfg.filter);

    out << format("%3s %10s %10s %10s\n", "n", "Z0*J", "Z0e_ohm", "Z0o_ohm");
    for (const auto& s : sections) out << format("%3d %#10.4g %#10.4g %#10.4g\n", s.index, s.jz0, s.z0e, s.z0o);
    for (const auto& w : realizability_warnings(sections, cfg.filter.z0_ohm)) err << "warning: " << w << '\n';

    nlohmann::ordered_json design;
    const auto cfg_json = nlohmann::ordered_json::parse(dump_config(cfg));
    design["filter"] = cfg_json.at("filter");
    design["sections"] = nlohmann::ordered_json::array();
    for (const auto& s : sections)
        design["sections"].push_back({{"n", s.index}, {"jz0", s.jz0}, {"z0e_ohm", s.z0e}, {"z0o_ohm", s.z0o}});

    ensure_dir(opts.out_dir);
    auto f = open_output(opts.out_dir / "design.json");
    f << design.dump(2) << '\n';
    return sections;
}

SweepFiles cmd_sweep(const DesignConfig& cfg, const RunOptions& opts, std::ostream& out) {
    const StubConfig* stubs = nullptr;
    if (opts.which == Topology::proposed) {
        if (!cfg.stubs) throw ConfigError("stubs.config", "required for --which proposed");
        stubs = &*cfg.stubs;
    }
    const auto sections = synthesize(cfg.filter);
    const auto trace = run_sweep(cfg, sections, opts.which, stubs);
    const auto files = write_trace(cfg, trace, opts.which, stubs, opts.out_dir);

    int flagged = 0;
    for (auto flag : trace.flags) flagged += flag != PointFlag::ok;
    out << format("%s sweep: %zu points (%d flagged)\n", std::string(to_string(opts.which)).c_str(), trace.size(),
                  flagged);
    out << "wrote " << files.touchstone.string() << '\n' << "wrote " << files.csv.string() << '\n';
    return files;
}

OptimizationResult cmd_optimize(const DesignConfig& cfg, const RunOptions& opts, std::ostream& out) {
    require_search(cfg);
    check_coverage(cfg);
    const auto sections = synthesize(cfg.filter);
    const auto result = optimize(cfg, sections);

    print_metrics(out, "before", result.metrics_before);
    print_metrics(out, "after", result.metrics_after);
    print_stubs(out, result.best);
    out << format("score %.6f after %d evaluations%s\n", result.score, result.evaluations,
                  result.budget_exhausted ? " (budget exhausted)" : "");

    DesignConfig best = cfg;
    best.stubs = result.best;
    ensure_dir(opts.out_dir);
    const auto path = opts.out_dir / "optimized.json";
    auto f = open_output(path);
    f << dump_config(best);
    out << "wrote " << path.string() << '\n';
    return result;
}

ComparisonReport cmd_compare(const DesignConfig& cfg, const RunOptions& opts, std::ostream& out) {
    check_coverage(cfg);
    const auto sections = synthesize(cfg.filter);

    ComparisonReport report;
    if (cfg.stubs) {
        report.stubs = *cfg.stubs;
    } else {
        require_search(cfg);
        out << "no stubs.config given; optimizing first\n";
        report.stubs = optimize(cfg, sections).best;
    }

    const auto trad = run_sweep(cfg, sections, Topology::traditional, nullptr);
    const auto prop = run_sweep(cfg, sections, Topology::proposed, &report.stubs);
    report.traditional_files = write_trace(cfg, trad, Topology::traditional, nullptr, opts.out_dir);
    report.proposed_files = write_trace(cfg, prop, Topology::proposed, &report.stubs, opts.out_dir);

    const auto& f = cfg.filter;
    const double window = cfg.objective.harmonic_window;
    report.traditional = band_metrics(trad, f.f0_hz, f.delta, window);
    report.proposed = band_metrics(prop, f.f0_hz, f.delta, window);
    report.delta = {report.proposed.passband_il_db - report.traditional.passband_il_db,
                    report.proposed.passband_rl_db - report.traditional.passband_rl_db,
                    report.proposed.suppression_2f0_db - report.traditional.suppression_2f0_db,
                    report.proposed.suppression_3f0_db - report.traditional.suppression_3f0_db};

    print_stubs(out, report.stubs);
    print_metrics(out, "traditional", report.traditional);
    print_metrics(out, "proposed", report.proposed);
    print_metrics(out, "delta", report.delta);
    for (const auto* files : {&report.traditional_files, &report.proposed_files})
        out << "wrote " << files->touchstone.string() << '\n' << "wrote " << files->csv.string() << '\n';
    return report;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coupled-line bandpass filter synthesis, sweep and open-stub harmonic suppression"};
    app.require_subcommand(1);

    std::string config_path;
    RunOptions opts;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int points = 0;
    std::string which = "traditional";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Design config (JSON)")->required();
        sub->add_option("--out-dir", out_dir, "Directory for output files");
        sub->add_option("--seed", seed, "Override the config seed");
        sub->add_option("--points", points, "Override the sweep point count")->check(CLI::PositiveNumber);
    };
    auto* synth = app.add_subcommand("synth", "Synthesize coupled-line sections");
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one topology to Touchstone and CSV");
    auto* optimize_cmd = app.add_subcommand("optimize", "Optimize T-shaped open stubs");
    auto* compare = app.add_subcommand("compare", "Compare traditional and proposed responses");
    for (auto* sub : {synth, sweep_cmd, optimize_cmd, compare}) add_common(sub);
    sweep_cmd->add_option("--which", which, "traditional or proposed")
        ->check(CLI::IsMember({"traditional", "proposed"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    opts.out_dir = out_dir;
    opts.which = which == "proposed" ? Topology::proposed : Topology::traditional;
    for (auto* sub : {synth, sweep_cmd, optimize_cmd, compare}) {
        if (!*sub) continue;
        if (sub->count("--seed")) opts.seed = seed;
        if (sub->count("--points")) opts.points = points;
    }

    try {
        const auto cfg = with_overrides(load_config(config_path), opts);
        if (*synth) cmd_synth(cfg, opts, out, err);
        else if (*sweep_cmd) cmd_sweep(cfg, opts, out);
        else if (*optimize_cmd) cmd_optimize(cfg, opts, out);
        else cmd_compare(cfg, opts, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

}  // namespace cfilt
