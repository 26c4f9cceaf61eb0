#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bellman2d/types.hpp"

namespace bellman2d {

/// Minimal CSV writer: header row, comma separation, quoting when needed,
/// doubles printed with %.17g so equal values round-trip bit-identically.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    using Cell = std::variant<std::string, double, long long>;
    void row(const std::vector<Cell>& cells);

private:
    std::ofstream out_;
    size_t width_;
};

std::string csv_quote(const std::string& s);
std::string format_double(double v);

/// key=value text files (whitespace/newline separated pairs, # comments).
std::map<std::string, std::string> parse_kv_text(const std::string& text);
std::map<std::string, std::string> parse_kv_file(const std::filesystem::path& path);

/// Tiny SVG 1.1 canvas with a y-up world coordinate system.
class SvgCanvas {
public:
    SvgCanvas(double x_lo, double x_hi, double y_lo, double y_hi, int pixel_width = 900);

    void rect(const Vec2& center, double w, double h, const std::string& fill);
    void line(const Vec2& a, const Vec2& b, const std::string& stroke, double width = 1.0);
    void polyline(const std::vector<Vec2>& pts, const std::string& stroke, double width = 1.5);
    void circle(const Vec2& c, double radius_px, const std::string& fill);
    void text(const Vec2& at, const std::string& s, int size_px = 12);

    void save(const std::filesystem::path& path) const;

    /// Five-stop color ramp for u in [0, 1].
    static std::string ramp(double u);

private:
    double px(double x) const;
    double py(double y) const;

    double x_lo_, x_hi_, y_lo_, y_hi_;
    int wpx_, hpx_;
    std::string body_;
};

} // namespace bellman2d
