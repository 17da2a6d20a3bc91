#pragma once

#include "cfilt/config.hpp"
#include "cfilt/optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cfilt {

enum class Topology { traditional, proposed };

std::string_view to_string(Topology t);

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> points;
    Topology which = Topology::traditional;
};

/// Applies --seed / --points to a loaded config.
DesignConfig with_overrides(DesignConfig cfg, const RunOptions& opts);

struct SweepFiles {
    std::filesystem::path touchstone;
    std::filesystem::path csv;
};

/// Writes <out>/design.json and prints the section table.
std::vector<SectionDesign> cmd_synth(const DesignConfig& cfg, const RunOptions& opts, std::ostream& out,
                                     std::ostream& err);

/// Writes <out>/<which>.s2p and <out>/<which>.csv.
SweepFiles cmd_sweep(const DesignConfig& cfg, const RunOptions& opts, std::ostream& out);

/// Writes <out>/optimized.json: the input config with stubs.config set to
/// the winning stubs, usable by sweep --which proposed.
OptimizationResult cmd_optimize(const DesignConfig& cfg, const RunOptions& opts, std::ostream& out);

struct ComparisonReport {
    BandMetrics traditional;
    BandMetrics proposed;
    BandMetrics delta;  // proposed - traditional, per field
    StubConfig stubs;
    SweepFiles traditional_files;
    SweepFiles proposed_files;
};

/// Sweeps both topologies and reports per-band deltas. Uses stubs.config when
/// present, otherwise optimizes first.
ComparisonReport cmd_compare(const DesignConfig& cfg, const RunOptions& opts, std::ostream& out);

/// Full command-line front end. Exit status: 0 success, 2 configuration or
/// usage error, 3 runtime or evaluation error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cfilt
