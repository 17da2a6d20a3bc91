// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "cfilt/commands.hpp"
#include "cfilt/prototype.hpp"
#include "cfilt/touchstone.hpp"
#include "../oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace cfilt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %d: %s - %s (%s) [%.3f s]\n", n, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string src(const std::string& rel) { return std::string(CFILT_SOURCE_DIR) + "/" + rel; }

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("cfilt_acceptance_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "cfilt");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (code != 0) std::fprintf(stderr, "cfilt %s failed (%d): %s\n", args[1].c_str(), code, err.str().c_str());
    return code;
}

std::vector<CsvRow> load_csv(const fs::path& p) {
    std::ifstream in(p);
    return read_csv(in);
}

double worst_db(const std::vector<CsvRow>& rows, double lo, double hi) {
    double w = -1e300;
    for (const auto& r : rows)
        if (r.freq_hz >= lo && r.freq_hz <= hi) w = std::max(w, r.s21_db);
    return w;
}

double passband_il(const std::vector<CsvRow>& rows, double lo, double hi) { return -[&] {
    double m = 1e300;
    for (const auto& r : rows)
        if (r.freq_hz >= lo && r.freq_hz <= hi) m = std::min(m, r.s21_db);
    return m;
}(); }

FilterSpec reference_spec() {
    FilterSpec s;
    s.f0_hz = 2e9;
    s.delta = 0.1;
    s.z0_ohm = 50.0;
    s.prototype = {3, Family::equal_ripple, 0.5};
    return s;
}

// Criterion 6 artifacts are reused by criterion 9.
fs::path compare_dir_a, compare_dir_b;

Outcome run_default_pipeline(const fs::path& dir) {
    if (cli({"optimize", "--config", src("configs/default.json"), "--seed", "42", "--out-dir", dir.string()}) != 0)
        return {false, "optimize failed"};
    if (cli({"compare", "--config", (dir / "optimized.json").string(), "--out-dir", dir.string()}) != 0)
        return {false, "compare failed"};
    return {true, ""};
}

}  // namespace

int main() {
    criterion(1, "synthesis regression", [] {
        const auto d = synthesize(reference_spec());
        const double want[2][2] = {{70.61, 39.24}, {56.64, 44.77}};
        double worst = 0.0;
        for (int k = 0; k < 2; ++k) {
            worst = std::max({worst, std::abs(d[k].z0e - want[k][0]), std::abs(d[k].z0o - want[k][1])});
            // The design is mirror-symmetric, so the outer pair repeats.
            const auto& m = d[d.size() - 1 - k];
            worst = std::max({worst, std::abs(m.z0e - want[k][0]), std::abs(m.z0o - want[k][1])});
        }
        return Outcome{worst <= 0.05, fmt("(%.4f, %.4f) (%.4f, %.4f), max error %.4f ohm", d[0].z0e, d[0].z0o,
                                          d[1].z0e, d[1].z0o, worst)};
    });

    criterion(2, "passband fidelity", [] {
        const auto spec = reference_spec();
        const auto d = synthesize(spec);
        const auto t = sweep([&](double f) { return build_traditional(d, f, spec); }, SweepConfig{1e8, 7e9, 691},
                             spec.z0_ohm);
        double min_db = 1e300, peak_db = -1e300, peak_f = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double v = magnitude_db(std::abs(t.s[i].s21));
            if (t.freqs[i] >= 1.9e9 - 1.0 && t.freqs[i] <= 2.1e9 + 1.0) min_db = std::min(min_db, v);
            if (v > peak_db) {
                peak_db = v;
                peak_f = t.freqs[i];
            }
        }
        const bool ok = min_db >= -0.6 && std::abs(peak_f - 2e9) <= 0.01 * 2e9;
        return Outcome{ok, fmt("min |S21| in 1.9-2.1 GHz %.4f dB, peak at %.3f GHz", min_db, peak_f / 1e9)};
    });

    criterion(3, "unitarity over randomized lossless designs", [] {
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        long checked = 0;
        int designs = 0;
        for (int k = 0; k < 24; ++k) {
            FilterSpec spec;
            spec.f0_hz = 1e9 + 2e9 * u(rng);
            spec.delta = 0.03 + 0.2 * u(rng);
            spec.prototype.order = 1 + static_cast<int>(rng() % 8);
            spec.prototype.family = (k % 2) ? Family::maximally_flat : Family::equal_ripple;
            spec.prototype.ripple_db = 0.05 + u(rng);
            const auto d = synthesize(spec);
            StubConfig stubs;
            const int n_stubs = static_cast<int>(rng() % 4);
            for (int s = 0; s < n_stubs; ++s)
                stubs.stubs.push_back({20.0 + 130.0 * u(rng), spec.f0_hz * (1.2 + 3.0 * u(rng)),
                                       static_cast<int>(rng() % (d.size() + 1))});
            const SweepConfig cfg{0.05 * spec.f0_hz, 3.5 * spec.f0_hz, 701};
            const auto t = sweep([&](double f) { return build_proposed(d, stubs, f, spec); }, cfg, spec.z0_ohm);
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t.flags[i] != PointFlag::ok) continue;
                worst = std::max(worst, std::abs(std::norm(t.s[i].s11) + std::norm(t.s[i].s21) - 1.0));
                ++checked;
            }
            ++designs;
        }
        return Outcome{worst <= 1e-9 && designs >= 20,
                       fmt("%d designs, %ld ok points, max | |S11|^2+|S21|^2-1 | = %.2e", designs, checked, worst)};
    });

    criterion(4, "T-section oracle and reciprocity", [] {
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> z(20.0, 150.0), th(0.05, 3.0), jj(0.002, 0.05), fr(0.05, 0.9);
        double worst_oracle = 0.0, worst_det = 0.0;
        int draws = 0;
        auto det_err = [&](const TwoPort& t) {
            if (t.state() != TwoPort::State::regular) return;
            const auto& m = t.abcd();
            const double scale = std::max({1.0, std::abs(m.a * m.d), std::abs(m.b * m.c)});
            worst_det = std::max(worst_det, std::abs(m.det() - 1.0) / scale);
        };
        for (int i = 0; i < 1000; ++i) {
            const double zc = z(rng), zt = z(rng), tc = th(rng), tt = th(rng), j = jj(rng);
            const auto t = t_shaped_section(zc, zt, {tc}, {tt}, j);
            det_err(t);
            det_err(tline(zc, {tc}));
            det_err(shunt_open_stub(zt, {tt}));
            det_err(inverter(j));
            det_err(coupled_section(zt * (1.0 + 2.0 * fr(rng)), zt, {tc}));
            if (t.state() != TwoPort::State::regular) continue;
            const auto& m = t.abcd();
            worst_oracle =
                std::max(worst_oracle, oracle::rel_err({m.a, m.b, m.c, m.d}, oracle::five_matrix_product(zc, zt, tc, tt, j)));
            ++draws;
        }
        return Outcome{worst_oracle <= 1e-12 && worst_det <= 1e-10 && draws == 1000,
                       fmt("%d draws, oracle rel err %.2e, det rel err %.2e", draws, worst_oracle, worst_det)};
    });

    criterion(5, "transmission zero at 4 GHz", [] {
        const auto dir = scratch("c5");
        if (cli({"sweep", "--config", src("configs/single_stub_4ghz.json"), "--which", "proposed", "--out-dir",
                 dir.string()}) != 0)
            return Outcome{false, "sweep failed"};
        const auto rows = load_csv(dir / "proposed.csv");
        double at4 = 0.0;
        for (const auto& r : rows)
            if (r.freq_hz == 4e9) at4 = r.s21_db;
        const double near = worst_db(rows, 4e9 - 20e6, 4e9 + 20e6);
        return Outcome{at4 == -200.0 && near <= -80.0,
                       fmt("s21_db at 4 GHz %.1f, worst within +-20 MHz %.2f dB", at4, near)};
    });

    criterion(6, "harmonic suppression after optimize + compare", [] {
        compare_dir_a = scratch("c6");
        const auto run = run_default_pipeline(compare_dir_a);
        if (!run.pass) return run;
        const auto trad = load_csv(compare_dir_a / "traditional.csv");
        const auto prop = load_csv(compare_dir_a / "proposed.csv");
        const double h2 = worst_db(trad, 3.8e9, 4.2e9) - worst_db(prop, 3.8e9, 4.2e9);
        const double h3 = worst_db(trad, 5.7e9, 6.3e9) - worst_db(prop, 5.7e9, 6.3e9);
        const double il = passband_il(prop, 1.9e9, 2.1e9) - passband_il(trad, 1.9e9, 2.1e9);
        return Outcome{h2 >= 15.0 && h3 >= 10.0 && il <= 0.5,
                       fmt("2f0 band %.2f -> %.2f dB (+%.2f), 3f0 band %.2f -> %.2f dB (+%.2f), IL change %+.3f dB",
                           worst_db(trad, 3.8e9, 4.2e9), worst_db(prop, 3.8e9, 4.2e9), h2,
                           worst_db(trad, 5.7e9, 6.3e9), worst_db(prop, 5.7e9, 6.3e9), h3, il)};
    });

    criterion(7, "degenerate stubs reproduce the traditional filter", [] {
        const auto spec = reference_spec();
        const auto d = synthesize(spec);
        StubConfig none;
        for (int s = 0; s <= static_cast<int>(d.size()); ++s)
            none.stubs.push_back({60.0, std::numeric_limits<double>::infinity(), s});
        const SweepConfig cfg{1e8, 7e9, 691};
        const auto a = sweep([&](double f) { return build_traditional(d, f, spec); }, cfg, spec.z0_ohm);
        const auto b = sweep([&](double f) { return build_proposed(d, none, f, spec); }, cfg, spec.z0_ohm);
        double worst = 0.0;
        bool flags_match = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            flags_match = flags_match && a.flags[i] == b.flags[i];
            worst = std::max({worst, std::abs(a.s[i].s11 - b.s[i].s11), std::abs(a.s[i].s21 - b.s[i].s21),
                              std::abs(a.s[i].s12 - b.s[i].s12), std::abs(a.s[i].s22 - b.s[i].s22)});
        }
        return Outcome{worst <= 1e-12 && flags_match, fmt("max pointwise difference %.2e", worst)};
    });

    criterion(8, "prototype values", [] {
        double worst_er = 0.0, worst_mf = 0.0;
        for (int n = 1; n <= 10; ++n) {
            const auto g = lowpass_prototype({n, Family::equal_ripple, 0.5}).g;
            const auto ref = oracle::chebyshev_g(n, 0.5);
            for (int k = 0; k <= n + 1; ++k) worst_er = std::max(worst_er, std::abs(g[k] - ref[k]));
            const auto b = lowpass_prototype({n, Family::maximally_flat, 0.0}).g;
            for (int k = 1; k <= n; ++k)
                worst_mf = std::max(worst_mf, std::abs(b[k] - 2.0 * std::sin((2 * k - 1) * std::numbers::pi / (2.0 * n))));
            worst_mf = std::max({worst_mf, std::abs(b[0] - 1.0), std::abs(b[n + 1] - 1.0)});
        }
        return Outcome{worst_er <= 1e-3 && worst_mf <= 1e-12,
                       fmt("equal-ripple max diff %.2e, maximally-flat max diff %.2e", worst_er, worst_mf)};
    });

    criterion(9, "file round trip and byte stability", [] {
        if (compare_dir_a.empty()) return Outcome{false, "criterion 6 artifacts missing"};
        compare_dir_b = scratch("c9");
        const auto run = run_default_pipeline(compare_dir_b);
        if (!run.pass) return run;
        bool identical = true;
        for (const char* f : {"optimized.json", "traditional.s2p", "traditional.csv", "proposed.s2p", "proposed.csv"})
            identical = identical && slurp(compare_dir_a / f) == slurp(compare_dir_b / f);

        // Reparse the written proposed trace against a fresh in-memory sweep.
        const auto cfg = load_config(compare_dir_a / "optimized.json");
        const auto d = synthesize(cfg.filter);
        const auto t = sweep([&](double f) { return build_proposed(d, *cfg.stubs, f, cfg.filter); }, cfg.sweep,
                             cfg.filter.z0_ohm);
        std::ifstream in(compare_dir_a / "proposed.s2p");
        const auto data = read_touchstone(in);
        double worst = data.freqs_hz.size() == t.size() ? 0.0 : 1e300;
        for (std::size_t i = 0; i < t.size() && i < data.s.size(); ++i)
            worst = std::max({worst, std::abs(data.s[i].s11 - t.s[i].s11), std::abs(data.s[i].s21 - t.s[i].s21),
                              std::abs(data.s[i].s12 - t.s[i].s12), std::abs(data.s[i].s22 - t.s[i].s22)});
        return Outcome{identical && worst <= 1e-6,
                       fmt("reload max diff %.2e, two runs byte-identical: %s", worst, identical ? "yes" : "no")};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
