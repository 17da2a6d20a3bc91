#include "cfilt/optimizer.hpp"

#include "cfilt/error.hpp"
#include "cfilt/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cfilt {

void ObjectiveSpec::validate() const {
    if (!(w_pass >= 0.0) || !(w_h2 >= 0.0) || !(w_h3 >= 0.0))
        throw SpecError("objective weights must be >= 0");
    if (!(w_pass > 0.0 || w_h2 > 0.0 || w_h3 > 0.0))
        throw SpecError("at least one objective weight must be > 0");
    if (!(il_budget_db >= 0.0)) throw SpecError("insertion-loss budget must be >= 0 dB");
    if (!(harmonic_window > 0.0 && harmonic_window < 1.0))
        throw SpecError("harmonic window must lie in (0, 1)");
    if (!(suppression_target_db <= 0.0 && suppression_target_db >= kDbFloor))
        throw SpecError("suppression target must lie in [-200, 0] dB");
}

double objective(const BandMetrics& m, const ObjectiveSpec& spec) {
    spec.validate();
    const double il_excess = std::max(0.0, m.passband_il_db - spec.il_budget_db);
    return spec.w_pass * il_excess + spec.w_h2 * std::max(m.suppression_2f0_db, spec.suppression_target_db) +
           spec.w_h3 * std::max(m.suppression_3f0_db, spec.suppression_target_db);
}

double objective(const ResponseTrace& trace, const ObjectiveSpec& spec, double f0_hz, double delta) {
    return objective(band_metrics(trace, f0_hz, delta, spec.harmonic_window), spec);
}

bool OptimizationResult::operator==(const OptimizationResult& o) const {
    auto same = [](const BandMetrics& a, const BandMetrics& b) {
        return a.passband_il_db == b.passband_il_db && a.passband_rl_db == b.passband_rl_db &&
               a.suppression_2f0_db == b.suppression_2f0_db && a.suppression_3f0_db == b.suppression_3f0_db;
    };
    return best == o.best && score == o.score && same(metrics_before, o.metrics_before) &&
           same(metrics_after, o.metrics_after) && evaluations == o.evaluations &&
           budget_exhausted == o.budget_exhausted && best_history == o.best_history;
}

namespace {

int max_site(const StubSearchSpace& space, int n_sections) {
    return space.symmetric ? n_sections / 2 : n_sections;
}

bool zt_free(const StubGroupBounds& g) { return g.zt_max > g.zt_min; }
bool fz_free(const StubGroupBounds& g) { return g.fz_max_hz > g.fz_min_hz; }

double lerp(double lo, double hi, double t) { return lo + t * (hi - lo); }

}  // namespace

void StubSearchSpace::validate(int n_sections, double f0_hz) const {
    if (groups.empty()) throw SpecError("stub search space has no groups");
    const int top = max_site(*this, n_sections);
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto& g = groups[i];
        const std::string tag = "stub group " + std::to_string(i);
        if (!(g.zt_min >= kStubZtMin && g.zt_max <= kStubZtMax && g.zt_min <= g.zt_max))
            throw SpecError(tag + ": zt bounds must satisfy 20 <= zt_min <= zt_max <= 150");
        if (!(g.fz_min_hz > f0_hz)) throw SpecError(tag + ": fz_min must exceed f0");
        if (!(g.fz_max_hz >= g.fz_min_hz)) throw SpecError(tag + ": fz_max must be >= fz_min");
        for (int s : g.sites) {
            if (s < 0 || s > top)
                throw SpecError(tag + ": site " + std::to_string(s) + " outside 0.." + std::to_string(top));
        }
    }
}

int search_dimensions(const StubSearchSpace& space, double /*f0_hz*/) {
    int dims = 0;
    for (const auto& g : space.groups) dims += static_cast<int>(zt_free(g)) + static_cast<int>(fz_free(g));
    return dims;
}

std::vector<std::vector<int>> site_combinations(const StubSearchSpace& space, int n_sections) {
    std::vector<std::vector<int>> choices;
    for (const auto& g : space.groups) {
        if (!g.sites.empty()) {
            choices.push_back(g.sites);
        } else {
            std::vector<int> all(max_site(space, n_sections) + 1);
            std::iota(all.begin(), all.end(), 0);
            choices.push_back(std::move(all));
        }
    }

    std::vector<std::vector<int>> out{{}};
    for (const auto& options : choices) {
        std::vector<std::vector<int>> next;
        for (const auto& prefix : out) {
            for (int s : options) {
                auto c = prefix;
                c.push_back(s);
                next.push_back(std::move(c));
            }
        }
        out = std::move(next);
    }
    return out;
}

StubConfig realize_stubs(const StubSearchSpace& space, std::span<const int> sites, std::span<const double> x,
                         int n_sections, double f0_hz) {
    if (sites.size() != space.groups.size()) throw SpecError("one site per stub group required");
    StubConfig cfg;
    std::size_t k = 0;
    auto next = [&] {
        if (k >= x.size()) throw SpecError("too few search variables");
        return std::clamp(x[k++], 0.0, 1.0);
    };

    for (std::size_t i = 0; i < space.groups.size(); ++i) {
        const auto& g = space.groups[i];
        const double zt = zt_free(g) ? lerp(g.zt_min, g.zt_max, next()) : g.zt_min;

        // fz is searched through u = f0 / fz, so an unbounded fz_max maps to u = 0.
        double fz = g.fz_min_hz;
        if (fz_free(g)) {
            const double t = next();
            if (t == 1.0) {
                fz = g.fz_min_hz;
            } else if (t == 0.0) {
                fz = g.fz_max_hz;
            } else {
                const double u = lerp(f0_hz / g.fz_max_hz, f0_hz / g.fz_min_hz, t);
                fz = u > 0.0 ? f0_hz / u : std::numeric_limits<double>::infinity();
            }
        }

        cfg.stubs.push_back({zt, fz, sites[i]});
        if (space.symmetric) cfg.stubs.push_back({zt, fz, n_sections - sites[i]});
    }
    if (k != x.size()) throw SpecError("too many search variables");
    return cfg;
}

OptimizationResult optimize_stubs(std::span<const SectionDesign> base, const StubSearchSpace& space,
                                  const FilterSpec& spec, const ObjectiveSpec& obj, const SweepConfig& sweep_cfg,
                                  const OptimizerOptions& opts) {
    spec.validate();
    obj.validate();
    sweep_cfg.validate();
    const int n_sections = static_cast<int>(base.size());
    space.validate(n_sections, spec.f0_hz);
    if (opts.budget < 50) throw SpecError("optimizer budget must be >= 50 evaluations");
    if (opts.restarts < 1 || opts.refine < 1) throw SpecError("restarts and refine must be >= 1");

    const int dims = search_dimensions(space, spec.f0_hz);
    const auto combos = site_combinations(space, n_sections);
    const int n_combos = static_cast<int>(combos.size());
    if (n_combos > opts.budget / 2)
        throw SpecError("budget " + std::to_string(opts.budget) + " is too small for " +
                        std::to_string(n_combos) + " site combinations");

    auto score_of = [&](const StubConfig& cfg) {
        auto builder = [&](double f) { return build_proposed(base, cfg, f, spec); };
        // Parallelism lives at the restart level; the inner sweep stays serial.
        return objective(sweep_serial(builder, sweep_cfg, spec.z0_ohm), obj, spec.f0_hz, spec.delta);
    };
    auto score_at = [&](int combo, std::span<const double> x) {
        return score_of(realize_stubs(space, combos[combo], x, n_sections, spec.f0_hz));
    };

    // Screening: every site combination at the first few start points.
    const int starts = dims == 0 ? 1 : std::max(1, std::min(opts.restarts, (opts.budget / 2) / n_combos));
    std::vector<std::vector<double>> start_points;
    for (int j = 0; j < starts; ++j) start_points.push_back(halton_point(j, dims, opts.seed));

    const int n_screen = n_combos * starts;
    std::vector<double> screen(n_screen);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n_screen; ++k) screen[k] = score_at(k / starts, start_points[k % starts]);

    std::vector<int> ranked(n_combos);
    std::iota(ranked.begin(), ranked.end(), 0);
    auto combo_best = [&](int c) {
        return *std::min_element(screen.begin() + c * starts, screen.begin() + (c + 1) * starts);
    };
    std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) { return combo_best(a) < combo_best(b); });

    // Refinement: fixed per-run caps keep the evaluation count schedule independent.
    const int remaining = opts.budget - n_screen;
    const int n_refine = std::min(opts.refine, n_combos);
    int restarts = std::min(opts.restarts, starts);
    int cap = 0;
    if (dims > 0) {
        while (restarts > 1 && remaining / (n_refine * restarts) < dims + 2) --restarts;
        cap = remaining / (n_refine * restarts);
    }
    const int n_runs = cap > 0 ? n_refine * restarts : 0;

    std::vector<SimplexResult> runs(n_runs);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < n_runs; ++r) {
        const int combo = ranked[r / restarts];
        SimplexOptions so;
        so.max_evals = cap;
        runs[r] = minimize_in_unit_box([&](std::span<const double> x) { return score_at(combo, x); },
                                       start_points[r % restarts], so);
    }

    // Serial merge in a fixed order; strict comparison keeps the first best.
    OptimizationResult result;
    double best = std::numeric_limits<double>::infinity();
    int best_combo = 0;
    std::vector<double> best_x;
    auto record = [&](double v) {
        best = std::min(best, v);
        result.best_history.push_back(best);
    };
    for (int k = 0; k < n_screen; ++k) {
        if (screen[k] < best) {
            best_combo = k / starts;
            best_x = start_points[k % starts];
        }
        record(screen[k]);
    }
    for (int r = 0; r < n_runs; ++r) {
        const auto& run = runs[r];
        if (run.value < best) {
            best_combo = ranked[r / restarts];
            best_x = run.x;
        }
        for (double v : run.best_history) record(v);
        if (!run.converged) result.budget_exhausted = true;
    }
    result.evaluations = static_cast<int>(result.best_history.size());

    result.best = realize_stubs(space, combos[best_combo], best_x, n_sections, spec.f0_hz);

    const auto& best_cfg = result.best;
    const auto after = sweep([&](double f) { return build_proposed(base, best_cfg, f, spec); }, sweep_cfg,
                             spec.z0_ohm);
    const auto before = sweep([&](double f) { return build_traditional(base, f, spec); }, sweep_cfg, spec.z0_ohm);
    result.metrics_after = band_metrics(after, spec.f0_hz, spec.delta, obj.harmonic_window);
    result.metrics_before = band_metrics(before, spec.f0_hz, spec.delta, obj.harmonic_window);
    result.score = objective(result.metrics_after, obj);
    return result;
}

}  // namespace cfilt
