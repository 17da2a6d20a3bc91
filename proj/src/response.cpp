#include "cfilt/response.hpp"

#include "cfilt/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

namespace cfilt {

double magnitude_db(double magnitude) {
    if (!(magnitude > 0.0)) return kDbFloor;
    return std::clamp(20.0 * std::log10(magnitude), kDbFloor, -kDbFloor);
}

ElectricalAngle electrical_length_at(double f_hz, double f0_hz) {
    return {std::numbers::pi / 2.0 * f_hz / f0_hz};
}

void StubConfig::validate(int n_sections, double f0_hz) const {
    for (std::size_t i = 0; i < stubs.size(); ++i) {
        const auto& st = stubs[i];
        const std::string tag = "stub " + std::to_string(i);
        if (!(st.zt_ohm >= kStubZtMin && st.zt_ohm <= kStubZtMax))
            throw SpecError(tag + ": zt must lie in [20, 150] ohm");
        if (!(st.fz_hz > f0_hz)) throw SpecError(tag + ": fz must exceed f0");
        if (st.site < 0 || st.site > n_sections)
            throw SpecError(tag + ": site " + std::to_string(st.site) + " outside 0.." +
                            std::to_string(n_sections));
    }
}

TwoPort build_traditional(std::span<const SectionDesign> sections, double f_hz, const FilterSpec& spec) {
    if (sections.empty()) throw SpecError("filter has no sections");
    const ElectricalAngle theta = electrical_length_at(f_hz, spec.f0_hz);
    TwoPort acc;
    for (const auto& sec : sections) acc = acc * coupled_section(sec.z0e, sec.z0o, theta);
    return acc;
}

TwoPort build_proposed(std::span<const SectionDesign> sections, const StubConfig& stubs, double f_hz,
                       const FilterSpec& spec) {
    if (sections.empty()) throw SpecError("filter has no sections");
    const int n_junctions = static_cast<int>(sections.size()) + 1;
    for (const auto& st : stubs.stubs) {
        if (st.site < 0 || st.site >= n_junctions)
            throw SpecError("stub site " + std::to_string(st.site) + " is not a junction index");
    }

    const ElectricalAngle theta = electrical_length_at(f_hz, spec.f0_hz);
    TwoPort acc;
    for (int junction = 0; junction < n_junctions; ++junction) {
        for (const auto& st : stubs.stubs) {
            if (st.site != junction) continue;
            acc = acc * shunt_open_stub(st.zt_ohm, electrical_length_at(f_hz, st.fz_hz));
        }
        if (junction < n_junctions - 1) {
            const auto& sec = sections[junction];
            acc = acc * coupled_section(sec.z0e, sec.z0o, theta);
        }
    }
    return acc;
}

void SweepConfig::validate() const {
    if (!(f_start_hz > 0.0) || !(f_stop_hz > f_start_hz) || !std::isfinite(f_stop_hz))
        throw SpecError("sweep needs 0 < f_start < f_stop");
    if (n_points < 2) throw SpecError("sweep needs at least 2 points");
}

double SweepConfig::frequency(int i) const {
    if (i == n_points - 1) return f_stop_hz;
    return f_start_hz + i * ((f_stop_hz - f_start_hz) / (n_points - 1));
}

std::string_view to_string(PointFlag flag) {
    switch (flag) {
        case PointFlag::ok: return "ok";
        case PointFlag::hard_zero: return "hard-zero";
        case PointFlag::degenerate: return "degenerate";
    }
    return "unknown";
}

PointFlag parse_point_flag(std::string_view name) {
    if (name == "ok") return PointFlag::ok;
    if (name == "hard-zero") return PointFlag::hard_zero;
    if (name == "degenerate") return PointFlag::degenerate;
    throw SpecError("unknown point flag '" + std::string(name) + "'");
}

PointResult evaluate_point(const NetworkBuilder& builder, double f_hz, double z_ref) {
    const TwoPort net = builder(f_hz);
    try {
        return {abcd_to_s(net, z_ref), net.hard_zero() ? PointFlag::hard_zero : PointFlag::ok};
    } catch (const EvaluationError&) {
    }

    SMatrix s;
    try {
        s = abcd_to_s(builder(f_hz + kDegenerateOffsetHz), z_ref);
    } catch (const EvaluationError&) {
        s = abcd_to_s(builder(f_hz - kDegenerateOffsetHz), z_ref);
    }
    // A short at the nominal frequency still blocks transmission exactly.
    if (net.hard_zero()) {
        s.s21 = s.s12 = Complex{0.0, 0.0};
        return {s, PointFlag::hard_zero};
    }
    return {s, PointFlag::degenerate};
}

namespace {

ResponseTrace allocate_trace(const SweepConfig& cfg) {
    ResponseTrace t;
    t.freqs.resize(cfg.n_points);
    t.s.resize(cfg.n_points);
    t.flags.resize(cfg.n_points);
    return t;
}

}  // namespace

ResponseTrace sweep_serial(const NetworkBuilder& builder, const SweepConfig& cfg, double z_ref) {
    cfg.validate();
    ResponseTrace t = allocate_trace(cfg);
    for (int i = 0; i < cfg.n_points; ++i) {
        const double f = cfg.frequency(i);
        const auto p = evaluate_point(builder, f, z_ref);
        t.freqs[i] = f;
        t.s[i] = p.s;
        t.flags[i] = p.flag;
    }
    return t;
}

ResponseTrace sweep(const NetworkBuilder& builder, const SweepConfig& cfg, double z_ref) {
    cfg.validate();
    ResponseTrace t = allocate_trace(cfg);
    std::exception_ptr failure;

#pragma omp parallel for schedule(static)
    for (int i = 0; i < cfg.n_points; ++i) {
        try {
            const double f = cfg.frequency(i);
            const auto p = evaluate_point(builder, f, z_ref);
            t.freqs[i] = f;
            t.s[i] = p.s;
            t.flags[i] = p.flag;
        } catch (...) {
#pragma omp critical(cfilt_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return t;
}

double max_s21_db(const ResponseTrace& trace, double f_lo, double f_hi) {
    double worst = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace.freqs[i] < f_lo || trace.freqs[i] > f_hi) continue;
        worst = std::max(worst, magnitude_db(std::abs(trace.s[i].s21)));
        any = true;
    }
    if (!any) throw SpecError("no trace points inside the requested band");
    return worst;
}

BandMetrics band_metrics(const ResponseTrace& trace, double f0_hz, double delta, double harmonic_window) {
    if (!(delta > 0.0 && delta < 1.0)) throw SpecError("delta must lie in (0, 1)");
    if (!(harmonic_window > 0.0 && harmonic_window < 1.0)) throw SpecError("harmonic window must lie in (0, 1)");
    if (trace.size() == 0) throw SpecError("empty trace");
    // Relative slack absorbs rounding in the sweep grid at the band edges.
    const double slack = 1e-12 * f0_hz;
    if (trace.freqs.front() > f0_hz * (1.0 - delta) + slack ||
        trace.freqs.back() < 3.0 * f0_hz * (1.0 + harmonic_window) - slack)
        throw SpecError("trace does not cover the passband through the third-harmonic window");

    BandMetrics m;
    const double p_lo = f0_hz * (1.0 - delta / 2.0) - slack;
    const double p_hi = f0_hz * (1.0 + delta / 2.0) + slack;
    double il = -std::numeric_limits<double>::infinity();
    double rl = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace.freqs[i] < p_lo || trace.freqs[i] > p_hi) continue;
        il = std::max(il, -magnitude_db(std::abs(trace.s[i].s21)));
        rl = std::min(rl, -magnitude_db(std::abs(trace.s[i].s11)));
        any = true;
    }
    if (!any) throw SpecError("no trace points inside the passband");
    m.passband_il_db = il + 0.0;  // no -0.0 in reports
    m.passband_rl_db = rl + 0.0;

    auto window = [&](double center) {
        return max_s21_db(trace, center * (1.0 - harmonic_window) - slack, center * (1.0 + harmonic_window) + slack);
    };
    m.suppression_2f0_db = window(2.0 * f0_hz);
    m.suppression_3f0_db = window(3.0 * f0_hz);
    return m;
}

}  // namespace cfilt
