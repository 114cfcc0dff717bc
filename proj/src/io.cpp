#include "levyhit/io.hpp"

#include <algorithm>
#include <chrono>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "levyhit/error.hpp"

namespace levyhit {

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ArgumentError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw ArgumentError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw ArgumentError("cannot rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    auto number = [&](const std::string& tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size() || !std::isfinite(v)) throw ArgumentError("grid: bad number '" + tok + "'");
        return v;
    };
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty()) continue;
        std::vector<std::string> parts;
        std::stringstream ps(item);
        std::string part;
        while (std::getline(ps, part, ':')) parts.push_back(part);
        if (parts.size() == 1) {
            out.push_back(number(parts[0]));
            continue;
        }
        if (parts.size() != 3 && !(parts.size() == 4 && (parts[3] == "log" || parts[3] == "lin")))
            throw ArgumentError("grid: expected a:b:n or a:b:n:log, got '" + item + "'");
        const double a = number(parts[0]), b = number(parts[1]), nd = number(parts[2]);
        const long n = std::lround(nd);
        if (n < 1 || n != nd || n > 1000000) throw ArgumentError("grid: point count must be a positive integer in '" + item + "'");
        const bool log = parts.size() == 4 && parts[3] == "log";
        if (log && !(a > 0.0 && b > 0.0)) throw ArgumentError("grid: log spacing needs positive ends in '" + item + "'");
        for (long i = 0; i < n; ++i) {
            const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
            if (i == 0 || i == n - 1) out.push_back(i == 0 ? a : b);  // exact ends
            else out.push_back(log ? a * std::pow(b / a, f) : a + f * (b - a));
        }
    }
    return out;
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw ArgumentError("CsvTable: row has " + std::to_string(row.size()) + " cells, expected " +
                            std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string xml_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '&': o += "&amp;"; break;
            case '"': o += "&quot;"; break;
            default: o += c;
        }
    }
    return o;
}

}  // namespace

std::string CsvTable::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_cell(columns[i]);
    os << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << "\n";
    }
    return os.str();
}

std::string render_svg(const SvgPlot& plot) {
    constexpr double W = 640, H = 420, L = 70, Rm = 160, T = 40, B = 50;
    auto tx = [&](double v) { return plot.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return plot.log_y ? std::log10(v) : v; };
    auto usable = [](double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); };
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (std::size_t i = 0; i < plot.x.size(); ++i) {
        if (!usable(plot.x[i], plot.log_x)) continue;
        for (const auto& s : plot.series) {
            if (i >= s.y.size() || !usable(s.y[i], plot.log_y)) continue;
            x0 = std::min(x0, tx(plot.x[i]));
            x1 = std::max(x1, tx(plot.x[i]));
            y0 = std::min(y0, ty(s.y[i]));
            y1 = std::max(y1, ty(s.y[i]));
        }
    }
    if (!(x1 >= x0)) x0 = 0, x1 = 1;
    if (!(y1 >= y0)) y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * (W - L - Rm); };
    auto py = [&](double v) { return H - B - (ty(v) - y0) / (y1 - y0) * (H - T - B); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(plot.title)
       << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - Rm << "\" height=\"" << H - T - B
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    auto tick = [&](double v, bool log) {
        std::ostringstream t;
        t.precision(3);
        t << (log ? std::pow(10.0, v) : v);
        return t.str();
    };
    for (int k = 0; k <= 4; ++k) {
        const double vx = x0 + (x1 - x0) * k / 4.0, vy = y0 + (y1 - y0) * k / 4.0;
        const double sx = L + (W - L - Rm) * k / 4.0, sy = H - B - (H - T - B) * k / 4.0;
        os << "<text x=\"" << sx << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
           << tick(vx, plot.log_x) << "</text>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
           << tick(vy, plot.log_y) << "</text>\n";
    }
    os << "<text x=\"" << L + (W - L - Rm) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
       << xml_escape(plot.x_label) << "</text>\n";
    for (std::size_t si = 0; si < plot.series.size(); ++si) {
        const auto& s = plot.series[si];
        const char* col = colors[si % 7];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < plot.x.size() && i < s.y.size(); ++i) {
            if (!usable(plot.x[i], plot.log_x) || !usable(s.y[i], plot.log_y)) continue;
            os << px(plot.x[i]) << "," << py(s.y[i]) << " ";
        }
        os << "\"/>\n";
        const double ly = T + 14 + 18 * si;
        os << "<line x1=\"" << W - Rm + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - Rm + 30 << "\" y2=\"" << ly
           << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - Rm + 36 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << xml_escape(s.name)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["command_line"] = command_line;
    j["config_hash"] = config_hash;
    j["spec_hash"] = spec_hash;
    j["seed"] = seed;
    j["timestamp"] = timestamp;
    j["tool_version"] = tool_version;
    j["content_version"] = content_version;
    j["outputs"] = outputs;
    j["extra"] = extra;
    return j;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace levyhit
