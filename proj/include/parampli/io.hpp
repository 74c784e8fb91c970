// io.hpp: deterministic text output: 17-significant-digit numbers, CSV and
// JSON tables with embedded metadata, and a minimal SVG polyline plot.
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace parampli::io {

// %.17g: lossless double round-trip, '.' decimal point, no locale effects.
std::string fmt17(double v);

enum class Format { csv, json };

Format parse_format(const std::string& name);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows; // preformatted cells
};

// CSV dialect: comma-separated, header row, LF endings. Metadata rides in
// leading '#' comment lines so the data block stays plain CSV.
void write_csv(std::ostream& os, const Table& table, const nlohmann::ordered_json& meta);

void write_json(std::ostream& os, const Table& table, const nlohmann::ordered_json& meta);

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

// Fixed 800x500 viewport, autoscaled axes, one polyline per series.
// Non-finite points break the line rather than distorting the scale.
void write_svg(std::ostream& os, const std::vector<Series>& series,
               const std::string& x_label, const std::string& y_label);

} // namespace parampli::io
