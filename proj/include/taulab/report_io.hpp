#pragma once

#include <string>

#include "taulab/report.hpp"

namespace taulab {

// Fixed scalar rendering shared by both serializers: integers in decimal,
// doubles via "%.12g", booleans as true/false, undefined as "undefined".
std::string format_value_csv(const ReportValue& v);

// CSV: one header row of column names, comma separator, '\n' line endings,
// no quoting (no value ever contains a comma). Parameters and summary are
// not part of the CSV; plots only need the rows.
std::string to_csv(const Report& report);

// JSON object with keys experiment_id, parameters, rows (array of objects
// keyed by column name), summary, incomplete_count, in that order.
// Integers that fit in 64 bits are JSON numbers; wider ones are decimal
// strings; undefined is null. Byte-deterministic for equal reports.
std::string to_json(const Report& report);

}  // namespace taulab
