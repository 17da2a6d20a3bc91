#pragma once

#include "cfilt/network.hpp"
#include "cfilt/synthesis.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace cfilt {

/// dB value standing in for an exact zero (|S21| = 0) in every dB output.
inline constexpr double kDbFloor = -200.0;

/// Offset used to re-evaluate a network whose coupled sections are
/// degenerate at the requested frequency.
inline constexpr double kDegenerateOffsetHz = 10.0;

/// 20*log10(magnitude), clamped to [kDbFloor, -kDbFloor].
double magnitude_db(double magnitude);

ElectricalAngle electrical_length_at(double f_hz, double f0_hz);

/// One open stub hung at a junction of the coupled-section chain.
/// Junction k sits before section k+1: 0 is port 1, N+1 is port 2.
/// fz_hz is the frequency at which the stub is a quarter wave; +inf gives a
/// zero-length (absent) stub.
struct Stub {
    double zt_ohm = 50.0;
    double fz_hz = std::numeric_limits<double>::infinity();
    int site = 0;

    bool operator==(const Stub&) const = default;
};

struct StubConfig {
    std::vector<Stub> stubs;

    /// Realizable window 20 <= zt <= 150 ohm, fz > f0, sites in 0..n_sections.
    void validate(int n_sections, double f0_hz) const;

    bool operator==(const StubConfig&) const = default;
};

inline constexpr double kStubZtMin = 20.0;
inline constexpr double kStubZtMax = 150.0;

TwoPort build_traditional(std::span<const SectionDesign> sections, double f_hz, const FilterSpec& spec);
TwoPort build_proposed(std::span<const SectionDesign> sections, const StubConfig& stubs, double f_hz,
                       const FilterSpec& spec);

struct SweepConfig {
    double f_start_hz = 0.1e9;
    double f_stop_hz = 7e9;
    int n_points = 691;

    void validate() const;
    double frequency(int i) const;
};

enum class PointFlag : std::uint8_t { ok, hard_zero, degenerate };

std::string_view to_string(PointFlag flag);
PointFlag parse_point_flag(std::string_view name);

struct ResponseTrace {
    std::vector<double> freqs;
    std::vector<SMatrix> s;
    std::vector<PointFlag> flags;

    std::size_t size() const { return freqs.size(); }
};

/// Builders must be pure: sweep() calls them concurrently.
using NetworkBuilder = std::function<TwoPort(double f_hz)>;

struct PointResult {
    SMatrix s;
    PointFlag flag;
};

/// Evaluate one frequency with the hard-zero and degenerate policies applied.
PointResult evaluate_point(const NetworkBuilder& builder, double f_hz, double z_ref);

/// OpenMP-parallel sweep; output is bitwise identical to sweep_serial.
ResponseTrace sweep(const NetworkBuilder& builder, const SweepConfig& cfg, double z_ref);
ResponseTrace sweep_serial(const NetworkBuilder& builder, const SweepConfig& cfg, double z_ref);

struct BandMetrics {
    double passband_il_db = 0.0;      // max insertion loss over f0 (1 +- delta/2)
    double passband_rl_db = 0.0;      // min return loss over the same band
    double suppression_2f0_db = 0.0;  // max |S21| dB over 2 f0 (1 +- window)
    double suppression_3f0_db = 0.0;  // max |S21| dB over 3 f0 (1 +- window)
};

inline constexpr double kDefaultHarmonicWindow = 0.10;

BandMetrics band_metrics(const ResponseTrace& trace, double f0_hz, double delta,
                         double harmonic_window = kDefaultHarmonicWindow);

/// Max |S21| in dB (floored) over trace points with f_lo <= f <= f_hi.
/// Throws SpecError when no point falls in the range.
double max_s21_db(const ResponseTrace& trace, double f_lo, double f_hi);

}  // namespace cfilt
