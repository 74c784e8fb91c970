#include "parampli/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace parampli::io {

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Format parse_format(const std::string& name)
{
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw std::invalid_argument("format must be 'csv' or 'json', got '" + name + "'");
}

void write_csv(std::ostream& os, const Table& table, const nlohmann::ordered_json& meta)
{
    for (const auto& [key, value] : meta.items())
        os << "# " << key << " " << (value.is_string() ? value.get<std::string>() : value.dump())
           << "\n";
    for (std::size_t j = 0; j < table.columns.size(); ++j)
        os << table.columns[j] << (j + 1 < table.columns.size() ? "," : "\n");
    for (const auto& row : table.rows)
        for (std::size_t j = 0; j < row.size(); ++j)
            os << row[j] << (j + 1 < row.size() ? "," : "\n");
}

namespace {

    // Cells that parse as finite numbers are emitted bare; everything else
    // (regime tags, inf from log of zero) is emitted as a JSON string.
    nlohmann::ordered_json cell_value(const std::string& cell)
    {
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (end && *end == '\0' && !cell.empty() && std::isfinite(v)) {
            auto parsed = nlohmann::ordered_json::parse(cell, nullptr, false);
            if (!parsed.is_discarded() && parsed.is_number()) return parsed;
        }
        return cell;
    }

} // namespace

void write_json(std::ostream& os, const Table& table, const nlohmann::ordered_json& meta)
{
    nlohmann::ordered_json doc = meta;
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& cell : row) r.push_back(cell_value(cell));
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << "\n";
}

void write_svg(std::ostream& os, const std::vector<Series>& series,
               const std::string& x_label, const std::string& y_label)
{
    constexpr double width = 800, height = 500;
    constexpr double ml = 70, mr = 20, mt = 20, mb = 50;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b"};

    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool have = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!have) {
                x_min = x_max = x;
                y_min = y_max = y;
                have = true;
            } else {
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    if (x_max == x_min) x_max = x_min + 1;
    if (y_max == y_min) y_max = y_min + 1;

    const auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * (width - ml - mr); };
    const auto py = [&](double y) {
        return height - mb - (y - y_min) / (y_max - y_min) * (height - mt - mb);
    };
    char buf[128];

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\">\n";
    os << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                  "stroke=\"black\"/>\n",
                  ml, mt, width - ml - mr, height - mt - mb);
    os << buf;

    for (std::size_t k = 0; k < series.size(); ++k) {
        os << "<polyline fill=\"none\" stroke=\"" << palette[k % 6]
           << "\" stroke-width=\"1.5\" points=\"";
        bool broken = true;
        for (const auto& [x, y] : series[k].points) {
            if (!std::isfinite(x) || !std::isfinite(y)) {
                if (!broken) {
                    os << "\"/>\n<polyline fill=\"none\" stroke=\"" << palette[k % 6]
                       << "\" stroke-width=\"1.5\" points=\"";
                    broken = true;
                }
                continue;
            }
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
            os << buf;
            broken = false;
        }
        os << "\"/>\n";
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" fill=\"%s\">",
                      width - mr - 150.0, mt + 20.0 + 18.0 * double(k), palette[k % 6]);
        os << buf << series[k].name << "</text>\n";
    }

    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\">%.6g</text>\n",
                  ml, height - mb + 18, x_min);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" text-anchor=\"end\">%.6g</text>\n",
                  width - mr, height - mb + 18, x_max);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" text-anchor=\"end\">%.6g</text>\n",
                  ml - 6, height - mb, y_min);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" text-anchor=\"end\">%.6g</text>\n",
                  ml - 6, mt + 12, y_max);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" text-anchor=\"middle\">",
                  ml + (width - ml - mr) / 2, height - 12.0);
    os << buf << x_label << "</text>\n";
    std::snprintf(
        buf, sizeof buf,
        "<text x=\"14\" y=\"%.1f\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 "
        "14 %.1f)\">",
        mt + (height - mt - mb) / 2, mt + (height - mt - mb) / 2);
    os << buf << y_label << "</text>\n";
    os << "</svg>\n";
}

} // namespace parampli::io
