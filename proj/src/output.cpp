#include "sharpfront/output.hpp"

#include "sharpfront/error.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <variant>

namespace sharpfront {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (k) out += ',';
        out += header[k];
    }
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns) {
        if (col.size() != rows) throw Error(ErrorCode::NumericalFault, "CSV columns differ in length");
    }
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (k) out += ',';
            out += format_double(columns[k][i]);
        }
        out += '\n';
    }
    return out;
}

std::string snapshot_name(double time) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "snap_t%.6f.csv", time);
    return buf;
}

CsvTable field_table(const Field& field) {
    return CsvTable{{"x", "T"}, {field.grid.nodes(), field.values}};
}

CsvTable probes_table(const ProbeSeries& probes) {
    CsvTable t{{"t", "T0", "supT"}, {probes.times, probes.midpoint, probes.sup}};
    for (std::size_t k = 0; k < probes.levels.size(); ++k) {
        t.header.push_back("r_" + format_double(probes.levels[k]));
        t.columns.push_back(probes.radius[k]);
    }
    for (std::size_t k = 0; k < probes.reference_names.size(); ++k) {
        t.header.push_back("d_" + probes.reference_names[k]);
        t.columns.push_back(probes.distance[k]);
    }
    return t;
}

nlohmann::json outcome_json(const Outcome& outcome) {
    nlohmann::json j{{"kind", outcome_name(outcome)}};
    if (const auto* e = std::get_if<Extinction>(&outcome)) j["t_ext"] = e->t_ext;
    if (const auto* p = std::get_if<Propagation>(&outcome)) j["t_prop"] = p->t_prop;
    if (const auto* n = std::get_if<NearCritical>(&outcome)) {
        j["plateau_level"] = n->plateau_level;
        j["plateau_span"] = n->plateau_span;
        j["profile_distance"] = n->profile_distance;
    }
    if (const auto* u = std::get_if<Undetermined>(&outcome)) j["horizon"] = u->horizon;
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Config, "cannot write output file '" + path.string() + "'");
    out << content;
    if (!out) throw Error(ErrorCode::Config, "failed writing output file '" + path.string() + "'");
}

}  // namespace sharpfront
