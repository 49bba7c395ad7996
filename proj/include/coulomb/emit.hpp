#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace coulomb {

/// 17 significant digits: enough to reproduce any double bit-exactly.
std::string format_real17(double v);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Fixed column order, %.17g reals, newline rows; header-only when empty.
void emit_csv(const CsvTable& table, const std::string& path);

/// Pretty-printed, key order preserved; numbers round-trip losslessly.
void emit_json(const nlohmann::ordered_json& doc, const std::string& path);

} // namespace coulomb
