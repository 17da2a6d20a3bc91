#include "cfilt/prototype.hpp"

#include "cfilt/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cfilt {

std::string_view to_string(Family family) {
    switch (family) {
        case Family::maximally_flat: return "maximally-flat";
        case Family::equal_ripple: return "equal-ripple";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    if (name == "maximally-flat" || name == "butterworth") return Family::maximally_flat;
    if (name == "equal-ripple" || name == "chebyshev") return Family::equal_ripple;
    throw SpecError("unknown prototype family '" + std::string(name) + "'");
}

void PrototypeSpec::validate() const {
    if (order < 1) throw SpecError("prototype order must be >= 1, got " + std::to_string(order));
    if (order > kMaxOrder)
        throw SpecError("prototype order " + std::to_string(order) + " exceeds the supported maximum of " +
                        std::to_string(kMaxOrder));
    if (family == Family::equal_ripple && !(ripple_db > 0.0))
        throw SpecError("equal-ripple prototype needs ripple_db > 0");
}

namespace {

double ripple_epsilon(double ripple_db) {
    return std::sqrt(std::pow(10.0, ripple_db / 10.0) - 1.0);
}

std::vector<double> maximally_flat_values(int n) {
    std::vector<double> g(n + 2, 1.0);
    for (int k = 1; k <= n; ++k)
        g[k] = 2.0 * std::sin((2 * k - 1) * std::numbers::pi / (2.0 * n));
    return g;
}

std::vector<double> equal_ripple_values(int n, double ripple_db) {
    // asinh(1/eps) equals half of ln(coth(ripple / 17.37)) in the textbook form.
    const double half_beta = std::asinh(1.0 / ripple_epsilon(ripple_db));
    const double gamma = std::sinh(half_beta / n);

    auto a = [n](int k) { return std::sin((2 * k - 1) * std::numbers::pi / (2.0 * n)); };
    auto b = [n, gamma](int k) {
        const double s = std::sin(k * std::numbers::pi / n);
        return gamma * gamma + s * s;
    };

    std::vector<double> g(n + 2);
    g[0] = 1.0;
    g[1] = 2.0 * a(1) / gamma;
    for (int k = 2; k <= n; ++k)
        g[k] = 4.0 * a(k - 1) * a(k) / (b(k - 1) * g[k - 1]);

    if (n % 2 == 1) {
        g[n + 1] = 1.0;
    } else {
        const double c = 1.0 / std::tanh(half_beta / 2.0);
        g[n + 1] = c * c;
    }
    return g;
}

}  // namespace

PrototypeValues lowpass_prototype(const PrototypeSpec& spec) {
    spec.validate();
    if (spec.family == Family::maximally_flat) return {maximally_flat_values(spec.order)};
    return {equal_ripple_values(spec.order, spec.ripple_db)};
}

double prototype_attenuation_db(Family family, int order, double ripple_db, double normalized_freq) {
    if (order < 1) throw SpecError("order must be >= 1");
    if (!(normalized_freq >= 0.0)) throw SpecError("normalized frequency must be >= 0");

    const double w = normalized_freq;
    if (family == Family::maximally_flat)
        return 10.0 * std::log10(1.0 + std::pow(w, 2.0 * order));

    if (!(ripple_db > 0.0)) throw SpecError("equal-ripple attenuation needs ripple_db > 0");
    const double eps = ripple_epsilon(ripple_db);
    const double t = w <= 1.0 ? std::cos(order * std::acos(w)) : std::cosh(order * std::acosh(w));
    return 10.0 * std::log10(1.0 + eps * eps * t * t);
}

int required_order(double passband_ripple_db, double stopband_atten_db,
                   double normalized_stop_freq, Family family) {
    if (!(normalized_stop_freq > 1.0))
        throw SpecError("normalized stopband frequency must be > 1");
    if (!(stopband_atten_db > 0.0)) throw SpecError("stopband attenuation must be > 0 dB");
    if (family == Family::equal_ripple && !(passband_ripple_db > 0.0))
        throw SpecError("equal-ripple order estimate needs passband ripple > 0 dB");

    for (int n = 1; n <= kMaxOrder; ++n) {
        if (prototype_attenuation_db(family, n, passband_ripple_db, normalized_stop_freq) >= stopband_atten_db)
            return n;
    }
    throw SpecError("no prototype order up to " + std::to_string(kMaxOrder) + " reaches " +
                    std::to_string(stopband_atten_db) + " dB");
}

}  // namespace cfilt
