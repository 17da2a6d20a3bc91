#include "cfilt/network.hpp"

#include "cfilt/error.hpp"

#include <cmath>
#include <numbers>

namespace cfilt {

namespace {

constexpr Complex kI{0.0, 1.0};

// Distance of x from the nearest multiple of period (shifted by offset).
double distance_to_lattice(double x, double offset, double period) {
    return std::abs(std::remainder(x - offset, period));
}

}  // namespace

Abcd operator*(const Abcd& x, const Abcd& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

TwoPort TwoPort::shunt_short() {
    TwoPort t;
    t.state_ = State::shorted;
    return t;
}

TwoPort TwoPort::degenerate_section() {
    TwoPort t;
    t.state_ = State::degenerate;
    return t;
}

const Abcd& TwoPort::abcd() const {
    if (state_ == State::degenerate) throw EvaluationError("chain contains a degenerate coupled section");
    if (state_ == State::shorted) throw EvaluationError("chain contains an ideal shunt short");
    return m_;
}

TwoPort operator*(const TwoPort& x, const TwoPort& y) {
    using S = TwoPort::State;
    if (x.state_ == S::regular && y.state_ == S::regular) return TwoPort(x.m_ * y.m_, x.reciprocal_ && y.reciprocal_);

    if (x.state_ != S::shorted && y.state_ != S::shorted) return TwoPort::degenerate_section();

    TwoPort r = TwoPort::shunt_short();
    if (x.state_ == S::shorted) {
        r.m_ = x.m_;
        r.head_degenerate_ = x.head_degenerate_;
    } else {
        // y is shorted; x prefixes its head chain.
        r.head_degenerate_ = x.state_ == S::degenerate || y.head_degenerate_;
        if (!r.head_degenerate_) r.m_ = x.m_ * y.m_;
    }
    if (y.state_ == S::shorted) {
        r.tail_ = y.tail_;
        r.tail_degenerate_ = y.tail_degenerate_;
    } else {
        r.tail_degenerate_ = y.state_ == S::degenerate || x.tail_degenerate_;
        if (!r.tail_degenerate_) r.tail_ = x.tail_ * y.m_;
    }
    return r;
}

TwoPort cascade(std::span<const TwoPort> elements) {
    if (elements.empty()) throw SpecError("cascade of an empty element list");
    TwoPort acc = elements.front();
    for (std::size_t i = 1; i < elements.size(); ++i) acc = acc * elements[i];
    return acc;
}

TwoPort tline(double zc, ElectricalAngle theta) {
    if (!(zc > 0.0)) throw SpecError("line impedance must be > 0");
    const double c = std::cos(theta.radians);
    const double s = std::sin(theta.radians);
    return TwoPort({c, kI * (zc * s), kI * (s / zc), c}, true);
}

TwoPort shunt_open_stub(double zt, ElectricalAngle theta_t) {
    if (!(zt > 0.0)) throw SpecError("stub impedance must be > 0");
    if (distance_to_lattice(theta_t.radians, std::numbers::pi / 2, std::numbers::pi) < kSingularAngle)
        return TwoPort::shunt_short();
    return TwoPort({1.0, 0.0, kI * (std::tan(theta_t.radians) / zt), 1.0}, true);
}

TwoPort inverter(double j) {
    if (!(j > 0.0)) throw SpecError("inverter admittance must be > 0");
    return TwoPort({0.0, -kI / j, -kI * j, 0.0}, true);
}

TwoPort coupled_section(double z0e, double z0o, ElectricalAngle theta) {
    if (!(z0o > 0.0) || !(z0e > z0o)) throw SpecError("coupled section needs z0e > z0o > 0");
    if (distance_to_lattice(theta.radians, 0.0, std::numbers::pi) < kSingularAngle)
        return TwoPort::degenerate_section();

    const double sum = z0e + z0o;
    const double diff = z0e - z0o;
    const double c = std::cos(theta.radians);
    const double s = std::sin(theta.radians);
    const double a = sum / diff * c;
    const Complex b = kI * ((diff * diff - sum * sum * c * c) / (2.0 * diff * s));
    const Complex cc = kI * (2.0 * s / diff);
    return TwoPort({a, b, cc, a}, true);
}

TwoPort t_shaped_section(double zc, double zt, ElectricalAngle theta_c, ElectricalAngle theta_t, double j) {
    const TwoPort line = tline(zc, theta_c);
    const TwoPort stub = shunt_open_stub(zt, theta_t);
    const TwoPort parts[] = {line, stub, inverter(j), stub, line};
    return cascade(parts);
}

SMatrix abcd_to_s(const Abcd& m, double z_ref) {
    if (!(z_ref > 0.0)) throw SpecError("reference impedance must be > 0");
    const Complex bz = m.b / z_ref;
    const Complex cz = m.c * z_ref;
    const Complex den = m.a + bz + cz + m.d;
    if (!(std::abs(den) > 0.0) || !std::isfinite(std::abs(den)))
        throw EvaluationError("vanishing ABCD->S denominator");

    SMatrix s;
    s.z_ref = z_ref;
    s.s11 = (m.a + bz - cz - m.d) / den;
    s.s12 = 2.0 * m.det() / den;
    s.s21 = 2.0 / den;
    s.s22 = (-m.a + bz - cz + m.d) / den;
    return s;
}

SMatrix abcd_to_s(const TwoPort& m, double z_ref) {
    if (m.state() != TwoPort::State::shorted) {
        SMatrix s = abcd_to_s(m.abcd(), z_ref);
        if (m.reciprocal()) s.s12 = s.s21;
        return s;
    }
    if (!(z_ref > 0.0)) throw SpecError("reference impedance must be > 0");
    if (m.head_degenerate() || m.tail_degenerate())
        throw EvaluationError("shorted chain with a degenerate section next to a port");

    // Port 1 sees head terminated in a short: Zin = B/D. Port 2 sees the
    // reversed tail terminated in a short: Zin = B/A.
    const Abcd& h = m.head();
    const Abcd& t = m.tail();
    SMatrix s;
    s.z_ref = z_ref;
    s.s21 = s.s12 = Complex{0.0, 0.0};
    const Complex den1 = h.b + z_ref * h.d;
    const Complex den2 = t.b + z_ref * t.a;
    if (!(std::abs(den1) > 0.0) || !(std::abs(den2) > 0.0))
        throw EvaluationError("vanishing reflection denominator behind a short");
    s.s11 = (h.b - z_ref * h.d) / den1;
    s.s22 = (t.b - z_ref * t.a) / den2;
    return s;
}

}  // namespace cfilt
