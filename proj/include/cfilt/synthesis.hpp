#pragma once

#include "cfilt/prototype.hpp"

#include <span>
#include <string>
#include <vector>

namespace cfilt {

/// Bandpass specification for a parallel coupled-line filter.
///
/// `delta` is the fractional bandwidth (f_high - f_low) / f0 between the
/// equal-ripple (or 3 dB, for maximally-flat) band edges.
struct FilterSpec {
    double f0_hz = 2e9;
    double delta = 0.1;
    double z0_ohm = 50.0;
    PrototypeSpec prototype;

    void validate() const;
};

/// One quarter-wave coupled-line section n in 1..N+1.
struct SectionDesign {
    int index = 0;
    double jz0 = 0.0;  // normalized inverter constant Z0*J_n
    double z0e = 0.0;  // even-mode impedance, ohm
    double z0o = 0.0;  // odd-mode impedance, ohm
};

struct ModeImpedances {
    double even;
    double odd;
};

/// Normalized inverter constants Z0*J_n, n = 1..N+1.
std::vector<double> admittance_inverters(const FilterSpec& spec, const PrototypeValues& g);

ModeImpedances even_odd_impedances(double jz0, double z0);

/// Full design: prototype -> inverters -> even/odd-mode impedances.
std::vector<SectionDesign> synthesize(const FilterSpec& spec);

/// Microstrip practicality thresholds, as ratios to the system impedance.
struct RealizabilityLimits {
    double max_even_ratio = 2.5;
    double min_odd_ratio = 0.4;
};

/// Human-readable warnings for sections outside the limits; empty when all
/// sections are practical.
std::vector<std::string> realizability_warnings(std::span<const SectionDesign> sections,
                                                double z0, const RealizabilityLimits& limits = {});

}  // namespace cfilt
