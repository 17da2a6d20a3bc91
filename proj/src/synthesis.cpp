#include "cfilt/synthesis.hpp"

#include "cfilt/error.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace cfilt {

void FilterSpec::validate() const {
    if (!(f0_hz > 0.0) || !std::isfinite(f0_hz)) throw SpecError("f0 must be a positive frequency");
    if (!(z0_ohm > 0.0) || !std::isfinite(z0_ohm)) throw SpecError("z0 must be a positive impedance");
    if (!(delta > 0.0 && delta < 1.0)) throw SpecError("fractional bandwidth delta must lie in (0, 1)");
    prototype.validate();
}

std::vector<double> admittance_inverters(const FilterSpec& spec, const PrototypeValues& g) {
    spec.validate();
    const int n = spec.prototype.order;
    if (g.order() != n)
        throw SpecError("prototype has " + std::to_string(g.g.size()) + " values, expected " +
                        std::to_string(n + 2));

    const double half_band = std::numbers::pi * spec.delta / 2.0;
    std::vector<double> jz0(n + 1);
    jz0[0] = std::sqrt(half_band / g.g[1]);
    for (int k = 2; k <= n; ++k)
        jz0[k - 1] = half_band / std::sqrt(g.g[k - 1] * g.g[k]);
    jz0[n] = std::sqrt(half_band / (g.g[n] * g.g[n + 1]));
    return jz0;
}

ModeImpedances even_odd_impedances(double jz0, double z0) {
    if (!(z0 > 0.0)) throw SpecError("z0 must be > 0");
    if (!(jz0 >= 0.0)) throw SpecError("inverter constant must be >= 0");
    if (jz0 >= 1.0) throw SpecError("inverter constant Z0*J >= 1 is not realizable as a coupled section");

    const double sq = jz0 * jz0;
    const ModeImpedances z{z0 * (1.0 + jz0 + sq), z0 * (1.0 - jz0 + sq)};
    if (!(z.odd > 0.0)) throw SpecError("odd-mode impedance would be non-positive");
    return z;
}

std::vector<SectionDesign> synthesize(const FilterSpec& spec) {
    const auto g = lowpass_prototype(spec.prototype);
    const auto jz0 = admittance_inverters(spec, g);

    std::vector<SectionDesign> sections;
    sections.reserve(jz0.size());
    for (std::size_t k = 0; k < jz0.size(); ++k) {
        const auto z = even_odd_impedances(jz0[k], spec.z0_ohm);
        sections.push_back({static_cast<int>(k) + 1, jz0[k], z.even, z.odd});
    }
    return sections;
}

std::vector<std::string> realizability_warnings(std::span<const SectionDesign> sections,
                                                double z0, const RealizabilityLimits& limits) {
    std::vector<std::string> out;
    char buf[160];
    for (const auto& s : sections) {
        if (s.z0e > limits.max_even_ratio * z0) {
            std::snprintf(buf, sizeof buf, "section %d: Z0e = %.2f ohm exceeds %.2f x Z0", s.index, s.z0e,
                          limits.max_even_ratio);
            out.emplace_back(buf);
        }
        if (s.z0o < limits.min_odd_ratio * z0) {
            std::snprintf(buf, sizeof buf, "section %d: Z0o = %.2f ohm is below %.2f x Z0", s.index, s.z0o,
                          limits.min_odd_ratio);
            out.emplace_back(buf);
        }
    }
    return out;
}

}  // namespace cfilt
