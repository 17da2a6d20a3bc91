#include "cfilt/touchstone.hpp"

#include "cfilt/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cfilt {

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

double parse_double(std::string_view token, const std::string& where) {
    double v = 0.0;
    // from_chars rejects a leading '+', which some writers emit.
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(where + ": bad number '" + std::string(token) + "'");
    return v;
}

double degrees(Complex z) { return std::arg(z) * 180.0 / std::numbers::pi + 0.0; }

}  // namespace

void write_touchstone(std::ostream& out, const ResponseTrace& trace, std::span<const std::string> comments) {
    for (const auto& c : comments) out << "! " << c << '\n';
    const double z_ref = trace.s.empty() ? 50.0 : trace.s.front().z_ref;
    char buf[320];
    std::snprintf(buf, sizeof buf, "# GHz S RI R %g\n", z_ref);
    out << buf;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& s = trace.s[i];
        std::snprintf(buf, sizeof buf,
                      "%.10f % .12e % .12e % .12e % .12e % .12e % .12e % .12e % .12e\n",
                      trace.freqs[i] / 1e9, s.s11.real(), s.s11.imag(), s.s21.real(), s.s21.imag(),
                      s.s12.real(), s.s12.imag(), s.s22.real(), s.s22.imag());
        out << buf;
    }
}

TouchstoneData read_touchstone(std::istream& in) {
    TouchstoneData data;
    double unit = 1e9;
    std::string format = "MA";
    bool have_options = false;

    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = "line " + std::to_string(line_no);
        if (const auto bang = line.find('!'); bang != std::string::npos) {
            if (bang == line.find_first_not_of(" \t")) {
                auto text = line.substr(bang + 1);
                if (!text.empty() && text.front() == ' ') text.erase(0, 1);
                data.comments.push_back(text);
            }
            line.erase(bang);
        }
        std::istringstream tokens(line);
        std::string tok;
        if (!(tokens >> tok)) continue;

        if (tok == "#") {
            if (have_options) throw ParseError(where + ": second option line");
            have_options = true;
            while (tokens >> tok) {
                const auto t = upper(tok);
                if (t == "HZ") unit = 1.0;
                else if (t == "KHZ") unit = 1e3;
                else if (t == "MHZ") unit = 1e6;
                else if (t == "GHZ") unit = 1e9;
                else if (t == "S") continue;
                else if (t == "Y" || t == "Z" || t == "H" || t == "G")
                    throw ParseError(where + ": only S parameters are supported");
                else if (t == "RI" || t == "MA" || t == "DB") format = t;
                else if (t == "R") {
                    if (!(tokens >> tok)) throw ParseError(where + ": missing reference resistance");
                    data.z_ref = parse_double(tok, where);
                    if (!(data.z_ref > 0.0)) throw ParseError(where + ": reference resistance must be > 0");
                } else {
                    throw ParseError(where + ": unknown option '" + tok + "'");
                }
            }
            continue;
        }
        if (!tok.empty() && tok.front() == '[') throw ParseError(where + ": version 2 keywords are not supported");

        do {
            values.push_back(parse_double(tok, where));
        } while (tokens >> tok);

        // A two-port record is 9 numbers and may wrap across lines.
        while (values.size() >= 9) {
            auto pair = [&](int k) {
                const double x = values[1 + 2 * k];
                const double y = values[2 + 2 * k];
                if (format == "RI") return Complex{x, y};
                const double mag = format == "DB" ? std::pow(10.0, x / 20.0) : x;
                return std::polar(mag, y * std::numbers::pi / 180.0);
            };
            const double f = values[0] * unit;
            if (!data.freqs_hz.empty() && !(f > data.freqs_hz.back()))
                throw ParseError(where + ": frequencies must be strictly ascending");
            SMatrix s;
            s.z_ref = data.z_ref;
            s.s11 = pair(0);
            s.s21 = pair(1);
            s.s12 = pair(2);
            s.s22 = pair(3);
            data.freqs_hz.push_back(f);
            data.s.push_back(s);
            values.erase(values.begin(), values.begin() + 9);
        }
    }
    if (!values.empty()) throw ParseError("truncated final record");
    if (!have_options) throw ParseError("missing option line");
    return data;
}

void write_csv(std::ostream& out, const ResponseTrace& trace) {
    out << "freq_hz,s11_db,s21_db,s11_deg,s21_deg,flag\n";
    char buf[256];
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& s = trace.s[i];
        const auto flag = to_string(trace.flags[i]);
        std::snprintf(buf, sizeof buf, "%.1f,%.9f,%.9f,%.9f,%.9f,%.*s\n", trace.freqs[i],
                      magnitude_db(std::abs(s.s11)) + 0.0, magnitude_db(std::abs(s.s21)) + 0.0, degrees(s.s11),
                      degrees(s.s21), static_cast<int>(flag.size()), flag.data());
        out << buf;
    }
}

std::vector<CsvRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "freq_hz,s11_db,s21_db,s11_deg,s21_deg,flag")
        throw ParseError("line 1: unexpected CSV header");

    std::vector<CsvRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        std::vector<std::string_view> cols;
        std::string_view rest(line);
        for (;;) {
            const auto comma = rest.find(',');
            cols.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (cols.size() != 6) throw ParseError(where + ": expected 6 columns");
        CsvRow r;
        r.freq_hz = parse_double(cols[0], where);
        r.s11_db = parse_double(cols[1], where);
        r.s21_db = parse_double(cols[2], where);
        r.s11_deg = parse_double(cols[3], where);
        r.s21_deg = parse_double(cols[4], where);
        try {
            r.flag = parse_point_flag(cols[5]);
        } catch (const SpecError& e) {
            throw ParseError(where + ": " + e.what());
        }
        rows.push_back(r);
    }
    return rows;
}

}  // namespace cfilt
