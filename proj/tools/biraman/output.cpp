#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "biraman/errors.hpp"
#include "biraman/format.hpp"

namespace biraman::cli {

namespace {

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name,
                       std::filesystem::path& path) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::invalid_config, "output_dir: cannot write " + path.string());
    return out;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string Provenance::header() const {
    std::string h = "# biraman " + std::string(tool_version) + "\n";
    h += "# config_hash: fnv1a64:" + hex64(config_hash) + "\n";
    for (const auto& m : methods) h += "# " + m + "\n";
    return h;
}

void Table::add(std::vector<double> values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(fmt9(v));
    rows.push_back(std::move(row));
}

std::filesystem::path write_csv(const std::filesystem::path& dir, const std::string& name,
                                const Provenance& prov, const Table& table) {
    std::filesystem::path path;
    auto out = open_out(dir, name, path);
    out << prov.header();
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    return path;
}

std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& name,
                                 const Provenance& prov, const std::string& body) {
    std::filesystem::path path;
    auto out = open_out(dir, name, path);
    out << prov.header() << body;
    return path;
}

std::filesystem::path write_svg(const std::filesystem::path& dir, const std::string& name,
                                const Provenance& prov, const std::string& title,
                                const std::string& x_label, const std::string& y_label,
                                const std::vector<SvgSeries>& series) {
    constexpr double width = 720, height = 440, left = 80, right = 20, top = 40, bottom = 60;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double pw = width - left - right, ph = height - top - bottom;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!--\n" << prov.header() << "-->\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << xml_escape(title) << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left << "\" y=\"" << top + ph + 18 << "\">" << fmt9(x0) << "</text>\n";
    svg << "<text x=\"" << left + pw << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"end\">" << fmt9(x1)
        << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << top + ph << "\" text-anchor=\"end\">" << fmt9(y0)
        << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << fmt9(y1)
        << "</text>\n";
    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\">"
        << xml_escape(x_label) << "</text>\n";
    svg << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << xml_escape(y_label) << "</text>\n";
    if (y0 < 0.0 && y1 > 0.0) {
        svg << "<line x1=\"" << left << "\" x2=\"" << left + pw << "\" y1=\"" << py(0.0) << "\" y2=\""
            << py(0.0) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    }

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = colors[k % 4];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
            svg << buf;
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << left + pw - 8 << "\" y=\"" << top + 16 + 16 * k << "\" text-anchor=\"end\" fill=\""
            << color << "\">" << xml_escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";

    std::filesystem::path path;
    auto out = open_out(dir, name, path);
    out << svg.str();
    return path;
}

}  // namespace biraman::cli
