#pragma once

#include <complex>
#include <span>

namespace cfilt {

using Complex = std::complex<double>;

/// Electrical length at the evaluation frequency, radians. Never wrapped:
/// harmonics live at multiples of a quarter wave.
struct ElectricalAngle {
    double radians = 0.0;
};

/// Plain 2x2 chain (ABCD) matrix. b is in ohm, c in siemens.
struct Abcd {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

    Complex det() const { return a * d - b * c; }
};

Abcd operator*(const Abcd& x, const Abcd& y);

/// Distance, in radians, from a stub resonance (odd multiple of pi/2) or a
/// coupled-section degeneracy (multiple of pi) inside which the element is
/// treated as singular.
inline constexpr double kSingularAngle = 1e-9;

/// A lossless two-port in chain form.
///
/// Besides ordinary matrices it carries two singular states, so that sweeps
/// stay well defined where tan/csc blow up:
///  - shorted: the chain contains an ideal shunt short (an open stub at
///    quarter-wave resonance). Transmission is exactly zero; the chains from
///    each port to the nearest short are kept to compute reflections.
///  - degenerate: a coupled section sits at a multiple of pi. The matrix is
///    undefined and any attempt to read it raises EvaluationError.
///
/// Products follow the obvious rules: a short absorbs everything between the
/// first and last shorting planes; a degenerate factor poisons whatever side
/// of the chain it lands on.
class TwoPort {
public:
    enum class State { regular, shorted, degenerate };

    TwoPort() = default;  // identity
    /// Wrap an arbitrary chain matrix. Pass reciprocal = true only when
    /// ad - bc = 1 holds analytically; S conversion then uses s12 = s21
    /// instead of a determinant that cancels badly near transmission zeros.
    explicit TwoPort(const Abcd& m, bool reciprocal = false) : m_(m), reciprocal_(reciprocal) {}

    static TwoPort shunt_short();
    static TwoPort degenerate_section();

    State state() const { return state_; }
    bool hard_zero() const { return state_ == State::shorted; }
    bool reciprocal() const { return reciprocal_; }

    /// Chain matrix; throws EvaluationError unless the state is regular.
    const Abcd& abcd() const;

    // Shorted state only: port 1 -> first short, and last short -> port 2.
    const Abcd& head() const { return m_; }
    const Abcd& tail() const { return tail_; }
    bool head_degenerate() const { return head_degenerate_; }
    bool tail_degenerate() const { return tail_degenerate_; }

    friend TwoPort operator*(const TwoPort& x, const TwoPort& y);

private:
    State state_ = State::regular;
    Abcd m_;  // full matrix (regular) or head chain (shorted)
    Abcd tail_;
    bool reciprocal_ = true;
    bool head_degenerate_ = false;
    bool tail_degenerate_ = false;
};

/// Left-to-right product. Throws SpecError on an empty sequence.
TwoPort cascade(std::span<const TwoPort> elements);

TwoPort tline(double zc, ElectricalAngle theta);

/// Shunt open-circuited stub; becomes an ideal short within kSingularAngle of
/// an odd multiple of pi/2.
TwoPort shunt_open_stub(double zt, ElectricalAngle theta_t);

/// Ideal admittance inverter (quarter-wave line of impedance 1/J), in the
/// reciprocal form a = d = 0, b = -i/J, c = -iJ.
TwoPort inverter(double j);

/// Parallel coupled-line section with the two diagonally opposite ports
/// open. Degenerate within kSingularAngle of a multiple of pi.
TwoPort coupled_section(double z0e, double z0o, ElectricalAngle theta);

/// T-shaped coupled unit: line, shunt stub, inverter, shunt stub, line.
TwoPort t_shaped_section(double zc, double zt, ElectricalAngle theta_c, ElectricalAngle theta_t, double j);

struct SMatrix {
    Complex s11, s12, s21, s22;
    double z_ref = 50.0;
};

/// Conversion to scattering parameters with equal real reference impedance
/// at both ports. A shorted chain gives s21 = s12 = 0 and the reflection of
/// each port's sub-chain terminated in a short. Throws EvaluationError for
/// degenerate chains and vanishing denominators.
SMatrix abcd_to_s(const TwoPort& m, double z_ref);
SMatrix abcd_to_s(const Abcd& m, double z_ref);

}  // namespace cfilt
