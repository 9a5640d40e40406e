#include "taulab/report_io.hpp"

#include <cstdint>
#include <cstdio>
#include <variant>

#include "json.hpp"

namespace taulab {

namespace {

std::string format_double(double d) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", d);
    return buf;
}

nlohmann::ordered_json json_value(const ReportValue& v) {
    using json = nlohmann::ordered_json;
    return std::visit(
        [](const auto& value) -> json {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, mpz_class>) {
                // Wide integers don't fit JSON numbers; emit decimal strings.
                if (mpz_fits_slong_p(value.get_mpz_t()))
                    return static_cast<std::int64_t>(value.get_si());
                return value.get_str();
            } else {
                return value;
            }
        },
        v);
}

}  // namespace

std::string format_value_csv(const ReportValue& v) {
    return std::visit(
        [](const auto& value) -> std::string {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return "undefined";
            else if constexpr (std::is_same_v<T, mpz_class>)
                return value.get_str();
            else if constexpr (std::is_same_v<T, double>)
                return format_double(value);
            else if constexpr (std::is_same_v<T, bool>)
                return value ? "true" : "false";
            else
                return value;
        },
        v);
}

std::string to_csv(const Report& report) {
    std::string out;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        if (i) out += ',';
        out += report.columns[i];
    }
    out += '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_value_csv(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Report& report) {
    nlohmann::ordered_json j;
    j["experiment_id"] = report.experiment_id;
    auto params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.parameters) params[key] = json_value(value);
    j["parameters"] = params;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        auto obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i)
            obj[report.columns[i]] = json_value(row[i]);
        rows.push_back(obj);
    }
    j["rows"] = rows;
    auto summary = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.summary) summary[key] = json_value(value);
    j["summary"] = summary;
    j["incomplete_count"] = report.incomplete_count;
    return j.dump(2) + "\n";
}

}  // namespace taulab
