#pragma once

#include "sharpfront/solver.hpp"
#include "sharpfront/threshold.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace sharpfront {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Column-oriented CSV table; every column must have the same length.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::string str() const;
};

/// `snap_t<time with 6 decimals>.csv`
std::string snapshot_name(double time);

CsvTable field_table(const Field& field);

/// Columns t, T0, supT, r_<level>..., d_<reference>...
CsvTable probes_table(const ProbeSeries& probes);

nlohmann::json outcome_json(const Outcome& outcome);

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace sharpfront
