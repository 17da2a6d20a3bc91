#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cfilt {

using Objective = std::function<double(std::span<const double>)>;

struct SimplexOptions {
    int max_evals = 200;
    double initial_step = 0.15;  // edge length of the starting simplex, box units
    double x_tol = 1e-7;
    double f_tol = 1e-10;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
    std::vector<double> best_history;  // running minimum after each evaluation
};

/// Downhill simplex on the unit box [0,1]^n. Trial points are projected onto
/// the box before evaluation. Deterministic for a given start.
SimplexResult minimize_in_unit_box(const Objective& f, std::vector<double> start, const SimplexOptions& opts);

/// Point `index` of the Halton sequence in `dims` dimensions, shifted by a
/// Cranley-Patterson rotation drawn from `seed`.
std::vector<double> halton_point(std::uint64_t index, int dims, std::uint64_t seed);

}  // namespace cfilt
