#pragma once

// Output artifacts: CSV tables, static SVG line plots and JSON run manifests.
// Files are written to a temporary sibling and renamed into place, so an
// interrupted run never leaves a truncated file behind.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace levyhit {

inline constexpr const char* kToolVersion = "0.1.0";

/// 64-bit FNV-1a, printed as 16 hex digits.
std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t v);

/// Writes `content` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string str() const;
};

/// %.17g formatting (round-trips doubles); non-finite values print as nan/inf.
std::string fmt(double v);

/// Grid from text: "v", "a:b:n" (linear), "a:b:n:log" or a comma list of those.
/// Throws ArgumentError on malformed input; an empty string gives an empty grid.
std::vector<double> parse_grid(const std::string& text);

struct SvgSeries {
    std::string name;
    std::vector<double> y;
};

struct SvgPlot {
    std::string title;
    std::string x_label;
    std::vector<double> x;
    std::vector<SvgSeries> series;
    bool log_x = false;
    bool log_y = false;
};

/// Static line plot; non-positive values are skipped on log axes.
std::string render_svg(const SvgPlot& plot);

struct RunManifest {
    std::string command_line;
    std::string config_hash;
    std::string spec_hash;
    std::uint64_t seed = 0;
    std::string timestamp;  // UTC, ISO 8601
    std::string tool_version = kToolVersion;
    std::string content_version;  // hash of the inputs that determine the outputs
    std::vector<std::string> outputs;
    nlohmann::json extra = nlohmann::json::object();

    nlohmann::json to_json() const;
};

std::string utc_timestamp();

}  // namespace levyhit
