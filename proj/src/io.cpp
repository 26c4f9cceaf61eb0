#include "bellman2d/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bellman2d {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), width_(header.size()) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path.string());
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_quote(header[i]);
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
    if (cells.size() != width_)
        throw std::invalid_argument("CsvWriter: row width does not match header");
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        if (const auto* s = std::get_if<std::string>(&cells[i]))
            out_ << csv_quote(*s);
        else if (const auto* d = std::get_if<double>(&cells[i]))
            out_ << format_double(*d);
        else
            out_ << std::get<long long>(cells[i]);
    }
    out_ << '\n';
}

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::string token;
        while (tokens >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("expected key=value, got '" + token + "'");
            kv[token.substr(0, eq)] = token.substr(eq + 1);
        }
    }
    return kv;
}

std::map<std::string, std::string> parse_kv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_kv_text(buf.str());
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

SvgCanvas::SvgCanvas(double x_lo, double x_hi, double y_lo, double y_hi, int pixel_width)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), wpx_(pixel_width) {
    const double aspect = (y_hi_ - y_lo_) / std::max(1e-12, x_hi_ - x_lo_);
    hpx_ = std::max(60, static_cast<int>(std::lround(wpx_ * aspect)));
}

double SvgCanvas::px(double x) const { return (x - x_lo_) / (x_hi_ - x_lo_) * wpx_; }
double SvgCanvas::py(double y) const { return (y_hi_ - y) / (y_hi_ - y_lo_) * hpx_; }

void SvgCanvas::rect(const Vec2& center, double w, double h, const std::string& fill) {
    std::ostringstream s;
    s << "<rect x=\"" << px(center.x() - 0.5 * w) << "\" y=\"" << py(center.y() + 0.5 * h)
      << "\" width=\"" << w / (x_hi_ - x_lo_) * wpx_ << "\" height=\""
      << h / (y_hi_ - y_lo_) * hpx_ << "\" fill=\"" << fill << "\"/>\n";
    body_ += s.str();
}

void SvgCanvas::line(const Vec2& a, const Vec2& b, const std::string& stroke, double width) {
    std::ostringstream s;
    s << "<line x1=\"" << px(a.x()) << "\" y1=\"" << py(a.y()) << "\" x2=\"" << px(b.x())
      << "\" y2=\"" << py(b.y()) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
      << "\"/>\n";
    body_ += s.str();
}

void SvgCanvas::polyline(const std::vector<Vec2>& pts, const std::string& stroke,
                         double width) {
    std::ostringstream s;
    s << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width
      << "\" points=\"";
    for (const Vec2& p : pts) s << px(p.x()) << ',' << py(p.y()) << ' ';
    s << "\"/>\n";
    body_ += s.str();
}

void SvgCanvas::circle(const Vec2& c, double radius_px, const std::string& fill) {
    std::ostringstream s;
    s << "<circle cx=\"" << px(c.x()) << "\" cy=\"" << py(c.y()) << "\" r=\"" << radius_px
      << "\" fill=\"" << fill << "\"/>\n";
    body_ += s.str();
}

void SvgCanvas::text(const Vec2& at, const std::string& str, int size_px) {
    std::ostringstream s;
    s << "<text x=\"" << px(at.x()) << "\" y=\"" << py(at.y()) << "\" font-size=\"" << size_px
      << "\" font-family=\"monospace\">" << str << "</text>\n";
    body_ += s.str();
}

void SvgCanvas::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("SvgCanvas: cannot open " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << wpx_ << "\" height=\""
        << hpx_ << "\" viewBox=\"0 0 " << wpx_ << ' ' << hpx_ << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_ << "</svg>\n";
}

std::string SvgCanvas::ramp(double u) {
    static const double stops[5][3] = {{0.267, 0.005, 0.329},
                                       {0.229, 0.322, 0.546},
                                       {0.128, 0.567, 0.551},
                                       {0.369, 0.789, 0.383},
                                       {0.993, 0.906, 0.144}};
    u = std::clamp(u, 0.0, 1.0) * 4.0;
    const int k = std::min(3, static_cast<int>(u));
    const double f = u - k;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(255 * ((1 - f) * stops[k][0] + f * stops[k + 1][0])),
                  static_cast<int>(255 * ((1 - f) * stops[k][1] + f * stops[k + 1][1])),
                  static_cast<int>(255 * ((1 - f) * stops[k][2] + f * stops[k + 1][2])));
    return buf;
}

} // namespace bellman2d
