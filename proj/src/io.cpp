#include "dvr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace dvr {

std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

// --- CSV --------------------------------------------------------------------

void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud) {
    const std::size_t m = cloud.ambient_dim();
    const auto& density = cloud.oracle_density();
    for (std::size_t c = 0; c < m; ++c) out << (c ? "," : "") << 'x' << c;
    if (density) out << ",density";
    out << '\n';
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        for (std::size_t c = 0; c < m; ++c) out << (c ? "," : "") << format_double(p[c]);
        if (density) out << ',' << format_double((*density)[i]);
        out << '\n';
    }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& text, std::size_t line_no) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        throw ParseError("line " + std::to_string(line_no) + ": '" + text + "' is not a number");
    return value;
}

}  // namespace

PointCloud read_point_cloud_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty point cloud file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_fields(line);
    bool has_density = !header.empty() && header.back() == "density";
    const std::size_t m = header.size() - (has_density ? 1 : 0);
    if (m == 0) throw ParseError("header declares no coordinate columns");
    for (std::size_t c = 0; c < m; ++c)
        if (header[c] != "x" + std::to_string(c)) throw ParseError("header column " + std::to_string(c) + " should be x" + std::to_string(c));

    std::vector<double> coords, density;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) + " fields");
        for (std::size_t c = 0; c < m; ++c) coords.push_back(parse_number(fields[c], line_no));
        if (has_density) density.push_back(parse_number(fields[m], line_no));
    }
    try {
        PointCloud cloud(m, std::move(coords));
        if (has_density) cloud.set_oracle_density(std::move(density));
        return cloud;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

void save_point_cloud(const std::filesystem::path& path, const PointCloud& cloud) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_point_cloud_csv(out, cloud);
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_point_cloud_csv(in);
}

// --- diagram JSON -----------------------------------------------------------

std::string diagram_to_json(const PersistenceDiagram& dgm, const std::string& metadata_json) {
    std::string out = "{\"field\": " + std::to_string(dgm.field) + ", \"max_dim\": " + std::to_string(dgm.max_dim);
    if (!metadata_json.empty()) out += ", " + metadata_json;
    out += ", \"points\": [";
    for (std::size_t i = 0; i < dgm.points.size(); ++i) {
        const auto& p = dgm.points[i];
        out += i ? ",\n  " : "\n  ";
        out += "{\"dim\": " + std::to_string(p.dim) + ", \"birth\": " + format_double(p.birth) + ", \"death\": ";
        out += p.essential() ? "\"inf\"" : format_double(p.death);
        out += "}";
    }
    out += dgm.points.empty() ? "]}\n" : "\n]}\n";
    return out;
}

PersistenceDiagram diagram_from_json(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("diagram JSON: ") + e.what());
    }
    try {
        PersistenceDiagram dgm;
        dgm.field = doc.at("field").get<int>();
        dgm.max_dim = doc.at("max_dim").get<int>();
        for (const auto& p : doc.at("points")) {
            PersistencePoint pt;
            pt.dim = p.at("dim").get<int>();
            pt.birth = p.at("birth").get<double>();
            const auto& death = p.at("death");
            if (death.is_string()) {
                if (death.get<std::string>() != "inf") throw ParseError("diagram JSON: death must be a number or \"inf\"");
                pt.death = kInfinity;
            } else {
                pt.death = death.get<double>();
            }
            if (pt.death < pt.birth) throw ParseError("diagram JSON: death precedes birth");
            dgm.points.push_back(pt);
        }
        dgm.sort();
        return dgm;
    } catch (const json::exception& e) {
        throw ParseError(std::string("diagram JSON: ") + e.what());
    }
}

void save_diagram(const std::filesystem::path& path, const PersistenceDiagram& dgm, const std::string& metadata_json) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << diagram_to_json(dgm, metadata_json);
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

PersistenceDiagram load_diagram(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return diagram_from_json(ss.str());
}

// --- SVG --------------------------------------------------------------------

namespace {

constexpr double kWidth = 480, kHeight = 480;
constexpr double kMargin = 56;   // left and bottom
constexpr double kTop = 24;      // above the infinity band
constexpr double kBand = 28;     // infinity band height
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

std::string diagram_to_svg(const PersistenceDiagram& dgm) {
    double hi = 0.0;
    for (const auto& p : dgm.points) {
        hi = std::max(hi, p.birth);
        if (!p.essential()) hi = std::max(hi, p.death);
    }
    if (hi <= 0.0) hi = 1.0;
    hi *= 1.05;

    const double plot_left = kMargin, plot_right = kWidth - 16;
    const double plot_bottom = kHeight - kMargin, plot_top = kTop + kBand;
    auto sx = [&](double v) { return plot_left + (plot_right - plot_left) * v / hi; };
    auto sy = [&](double v) { return plot_bottom - (plot_bottom - plot_top) * v / hi; };
    const double inf_y = kTop + kBand / 2;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // Axes, infinity band and diagonal.
    svg << "<line x1=\"" << fmt(plot_left) << "\" y1=\"" << fmt(plot_bottom) << "\" x2=\"" << fmt(plot_right)
        << "\" y2=\"" << fmt(plot_bottom) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt(plot_left) << "\" y1=\"" << fmt(plot_bottom) << "\" x2=\"" << fmt(plot_left)
        << "\" y2=\"" << fmt(kTop) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt(plot_left) << "\" y1=\"" << fmt(inf_y) << "\" x2=\"" << fmt(plot_right) << "\" y2=\""
        << fmt(inf_y) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<text x=\"" << fmt(plot_left - 8) << "\" y=\"" << fmt(inf_y + 4) << "\" text-anchor=\"end\">&#8734;</text>\n";
    svg << "<line class=\"diagonal\" x1=\"" << fmt(sx(0)) << "\" y1=\"" << fmt(sy(0)) << "\" x2=\"" << fmt(sx(hi))
        << "\" y2=\"" << fmt(sy(hi)) << "\" stroke=\"#666\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = hi * t / 4;
        svg << "<text x=\"" << fmt(sx(v)) << "\" y=\"" << fmt(plot_bottom + 16) << "\" text-anchor=\"middle\">"
            << tick_label(v) << "</text>\n";
        svg << "<text x=\"" << fmt(plot_left - 6) << "\" y=\"" << fmt(sy(v) + 4) << "\" text-anchor=\"end\">"
            << tick_label(v) << "</text>\n";
    }
    svg << "<text x=\"" << fmt((plot_left + plot_right) / 2) << "\" y=\"" << fmt(kHeight - 12)
        << "\" text-anchor=\"middle\">birth</text>\n";
    svg << "<text x=\"14\" y=\"" << fmt((plot_top + plot_bottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << fmt((plot_top + plot_bottom) / 2) << ")\">death</text>\n";

    // One marker per distinct (dim, birth, death).
    std::map<std::tuple<int, double, double>, int> multiplicity;
    for (const auto& p : dgm.points) ++multiplicity[{p.dim, p.birth, p.death}];
    for (const auto& [key, count] : multiplicity) {
        const auto& [dim, birth, death] = key;
        const double x = sx(birth);
        const double y = std::isinf(death) ? inf_y : sy(death);
        const char* color = kColors[static_cast<std::size_t>(dim) % std::size(kColors)];
        svg << "<circle class=\"point\" data-dim=\"" << dim << "\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
            << "\" r=\"3.5\" fill=\"" << color << "\" fill-opacity=\"0.8\"/>\n";
        if (count > 1)
            svg << "<text class=\"multiplicity\" x=\"" << fmt(x + 5) << "\" y=\"" << fmt(y - 5) << "\">" << count
                << "</text>\n";
    }
    // Legend.
    for (int d = 0; d <= dgm.max_dim; ++d) {
        const double lx = plot_right - 50, ly = plot_bottom - 14 * (dgm.max_dim - d + 1);
        svg << "<circle cx=\"" << fmt(lx) << "\" cy=\"" << fmt(ly - 4) << "\" r=\"3.5\" fill=\""
            << kColors[static_cast<std::size_t>(d) % std::size(kColors)] << "\"/>\n";
        svg << "<text x=\"" << fmt(lx + 8) << "\" y=\"" << fmt(ly) << "\">H" << d << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace dvr
