#include "coulomb/emit.hpp"

#include "coulomb/errors.hpp"

#include <cstdio>
#include <fstream>

namespace coulomb {

std::string format_real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace

void emit_csv(const CsvTable& table, const std::string& path) {
    std::ofstream out = open_for_write(path);
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw ParameterError("emit_csv: row width does not match header in '" + path + "'");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_real17(row[i]);
        }
        out << '\n';
    }
    finish(out, path);
}

void emit_json(const nlohmann::ordered_json& doc, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << doc.dump(2) << '\n';
    finish(out, path);
}

} // namespace coulomb
