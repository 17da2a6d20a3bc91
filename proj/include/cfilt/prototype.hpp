#pragma once

#include <string_view>
#include <vector>

namespace cfilt {

enum class Family { maximally_flat, equal_ripple };

std::string_view to_string(Family family);
// Accepts "maximally-flat" / "butterworth" and "equal-ripple" / "chebyshev".
Family parse_family(std::string_view name);

inline constexpr int kMaxOrder = 15;

struct PrototypeSpec {
    int order = 3;
    Family family = Family::equal_ripple;
    double ripple_db = 0.5;  // equal-ripple only

    void validate() const;
};

// Ladder element values g0..g(N+1) of the normalized low-pass prototype
// (g0 = 1, cutoff at w = 1).
struct PrototypeValues {
    std::vector<double> g;

    int order() const { return static_cast<int>(g.size()) - 2; }
};

PrototypeValues lowpass_prototype(const PrototypeSpec& spec);

// Insertion loss in dB of the prototype at normalized frequency w >= 0.
// Maximally-flat uses the 3 dB-normalized Butterworth response, so ripple_db
// is ignored for that family.
double prototype_attenuation_db(Family family, int order, double ripple_db, double normalized_freq);

// Smallest N in 1..kMaxOrder whose attenuation at normalized_stop_freq reaches
// stopband_atten_db. Throws SpecError when no supported order suffices.
int required_order(double passband_ripple_db, double stopband_atten_db,
                   double normalized_stop_freq, Family family);

}  // namespace cfilt
