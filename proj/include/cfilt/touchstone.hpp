#pragma once

#include "cfilt/response.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cfilt {

/// Version-1 two-port Touchstone, "# GHz S RI R <z_ref>", one record per line
/// in the order f S11 S21 S12 S22. `comments` become leading "!" lines.
void write_touchstone(std::ostream& out, const ResponseTrace& trace, std::span<const std::string> comments);

struct TouchstoneData {
    std::vector<double> freqs_hz;
    std::vector<SMatrix> s;
    double z_ref = 50.0;
    std::vector<std::string> comments;
};

/// Reads version-1 two-port S-parameter files in any frequency unit and
/// RI/MA/DB format. Frequencies must be strictly ascending.
TouchstoneData read_touchstone(std::istream& in);

/// CSV with header freq_hz,s11_db,s21_db,s11_deg,s21_deg,flag. dB values are
/// floored at kDbFloor.
void write_csv(std::ostream& out, const ResponseTrace& trace);

struct CsvRow {
    double freq_hz = 0.0;
    double s11_db = 0.0;
    double s21_db = 0.0;
    double s11_deg = 0.0;
    double s21_deg = 0.0;
    PointFlag flag = PointFlag::ok;
};

std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace cfilt
