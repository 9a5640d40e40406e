#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace taulab {

// One report cell. Integers are exact (mpz), doubles carry thresholds and
// fractions, monostate marks a value the experiment reports as undefined.
using ReportValue = std::variant<std::monostate, mpz_class, double, bool, std::string>;

inline ReportValue undefined_value() { return std::monostate{}; }

// Tabular result of a verification pass or an experiment scan. Rows are
// deterministic for fixed parameters and budgets; the summary is recomputable
// from the rows.
struct Report {
    std::string experiment_id;
    std::vector<std::pair<std::string, ReportValue>> parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<ReportValue>> rows;
    std::vector<std::pair<std::string, ReportValue>> summary;
    std::uint64_t incomplete_count = 0;

    void add_parameter(std::string key, ReportValue value) {
        parameters.emplace_back(std::move(key), std::move(value));
    }
    void add_summary(std::string key, ReportValue value) {
        summary.emplace_back(std::move(key), std::move(value));
    }
    const ReportValue* find_summary(const std::string& key) const {
        for (const auto& [k, v] : summary)
            if (k == key) return &v;
        return nullptr;
    }

    bool operator==(const Report& other) const = default;
};

}  // namespace taulab
