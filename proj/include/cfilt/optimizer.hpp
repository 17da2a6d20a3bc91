#pragma once

#include "cfilt/response.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace cfilt {

/// Scalar figure of merit for a filter response, lower is better:
///
///   score = w_pass * max(0, IL - il_budget_db)
///         + w_h2 * max(S2, suppression_target_db)
///         + w_h3 * max(S3, suppression_target_db)
///
/// where IL is the worst passband insertion loss and S2/S3 the worst |S21|
/// (dB) in the harmonic windows. Suppression beyond the target earns nothing,
/// so an already deep stopband cannot buy passband degradation.
struct ObjectiveSpec {
    double w_pass = 10.0;
    double w_h2 = 1.0;
    double w_h3 = 1.0;
    double il_budget_db = 0.5;
    double harmonic_window = kDefaultHarmonicWindow;
    double suppression_target_db = -60.0;

    void validate() const;
};

double objective(const BandMetrics& metrics, const ObjectiveSpec& spec);
double objective(const ResponseTrace& trace, const ObjectiveSpec& spec, double f0_hz, double delta);

/// Search bounds for one stub (or one mirrored stub pair).
struct StubGroupBounds {
    double zt_min = kStubZtMin;
    double zt_max = kStubZtMax;
    double fz_min_hz = 0.0;
    double fz_max_hz = std::numeric_limits<double>::infinity();  // inf allows a vanishing stub
    std::vector<int> sites;  // candidate junctions; empty means all admissible ones

    bool operator==(const StubGroupBounds&) const = default;
};

struct StubSearchSpace {
    std::vector<StubGroupBounds> groups;
    // Mirror every stub about the filter midline (site s pairs with N+1-s).
    // Sites are then drawn from the first half, 0..(N+1)/2.
    bool symmetric = true;

    void validate(int n_sections, double f0_hz) const;

    bool operator==(const StubSearchSpace&) const = default;
};

struct OptimizerOptions {
    int budget = 2000;  // objective evaluations, >= 50
    std::uint64_t seed = 42;
    int restarts = 8;
    int refine = 3;  // site combinations that get full simplex restarts
};

struct OptimizationResult {
    StubConfig best;
    double score = 0.0;
    BandMetrics metrics_before;  // traditional filter
    BandMetrics metrics_after;   // best config, freshly swept
    int evaluations = 0;
    bool budget_exhausted = false;
    std::vector<double> best_history;

    bool operator==(const OptimizationResult&) const;
};

/// Concrete stubs for one site assignment and a point of the unit box.
/// `sites` holds one junction per group; `x` the active variables in group
/// order (zt then fz, skipping pinned ones).
StubConfig realize_stubs(const StubSearchSpace& space, std::span<const int> sites, std::span<const double> x,
                         int n_sections, double f0_hz);

/// Number of free variables (bounds with nonzero width).
int search_dimensions(const StubSearchSpace& space, double f0_hz);

/// Every admissible site assignment, one junction per group, in
/// lexicographic order.
std::vector<std::vector<int>> site_combinations(const StubSearchSpace& space, int n_sections);

/// Multi-start downhill simplex over (zt, fz) per group with sites enumerated.
/// Deterministic for a given seed regardless of thread count.
OptimizationResult optimize_stubs(std::span<const SectionDesign> base, const StubSearchSpace& space,
                                  const FilterSpec& spec, const ObjectiveSpec& obj, const SweepConfig& sweep_cfg,
                                  const OptimizerOptions& opts);

}  // namespace cfilt
