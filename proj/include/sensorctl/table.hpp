#ifndef SENSORCTL_TABLE_HPP
#define SENSORCTL_TABLE_HPP

#include <map>
#include <string>
#include <vector>

namespace sensorctl {

// Rectangular numeric result table with reproducibility metadata. The CSV
// form is stable: `#`-prefixed metadata lines (sorted by key), a header row,
// then one line per row with %.12g cells.
struct ResultTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> metadata;

    void add_row(std::vector<double> row);
    std::string to_csv() const;
    // Writes `<name>_<seed>.csv` under dir; returns the path.
    std::string write_csv(const std::string& dir) const;
};

}  // namespace sensorctl

#endif
