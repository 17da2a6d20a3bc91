#pragma once

#include "cfilt/optimizer.hpp"
#include "cfilt/response.hpp"
#include "cfilt/synthesis.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace cfilt {

struct OptimizerSettings {
    int budget = 2000;
    int restarts = 8;
    int refine = 3;
};

/// Everything a CLI run needs; a config file plus seed fully determines output.
///
/// JSON schema (unknown keys are rejected at every level):
///
///   filter     { f0_hz, delta, order, family, [ripple_db=0.5], [z0_ohm=50] }
///   sweep      { [f_start_hz=1e8], [f_stop_hz=7e9], [points=691] }
///   stubs      { [search: { [symmetric=true], groups: [ { [zt_min_ohm=20], [zt_max_ohm=150],
///                                                        fz_min_hz, [fz_max_hz=null],
///                                                        [sites=[...]] } ] }],
///                [config: [ { zt_ohm, fz_hz, site } ]] }
///   objective  { [w_pass=10], [w_h2=1], [w_h3=1], [il_budget_db=0.5],
///                [harmonic_window=0.1], [suppression_target_db=-60] }
///   optimizer  { [budget=2000], [restarts=8], [refine=3] }
///   seed       integer, default 42
///
/// A null fz (fz_max_hz or a stub's fz_hz) means "no resonance": the stub
/// has zero electrical length.
struct DesignConfig {
    FilterSpec filter;
    SweepConfig sweep;
    std::optional<StubSearchSpace> stub_search;
    std::optional<StubConfig> stubs;
    ObjectiveSpec objective;
    OptimizerSettings optimizer;
    std::uint64_t seed = 42;
};

/// Throws ConfigError naming the offending field (JSON path); syntax errors
/// carry the parser's line and column.
DesignConfig parse_config(std::string_view text);
DesignConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form; parse_config(dump_config(c)) reproduces c.
std::string dump_config(const DesignConfig& cfg);

}  // namespace cfilt
