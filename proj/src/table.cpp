#include "sensorctl/table.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sensorctl/errors.hpp"

namespace sensorctl {

void ResultTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size())
        throw ArgumentError("ResultTable: row width does not match columns");
    rows.push_back(std::move(row));
}

namespace {
std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
}  // namespace

std::string ResultTable::to_csv() const {
    std::string out;
    for (const auto& [k, v] : metadata) out += "# " + k + "=" + v + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += columns[i];
        out += (i + 1 < columns.size()) ? "," : "\n";
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += format_cell(row[i]);
            out += (i + 1 < row.size()) ? "," : "\n";
        }
    }
    return out;
}

std::string ResultTable::write_csv(const std::string& dir) const {
    const auto seed_it = metadata.find("seed");
    const std::string seed = seed_it == metadata.end() ? "0" : seed_it->second;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::string path = dir + "/" + name + "_" + seed + ".csv";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("ResultTable: cannot open " + path);
    f << to_csv();
    return path;
}

}  // namespace sensorctl
