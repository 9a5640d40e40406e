#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "taulab/errors.hpp"
#include "taulab/experiments.hpp"
#include "taulab/factorint.hpp"
#include "taulab/tau_core.hpp"

using namespace taulab;

namespace {

const ReportValue& cell(const Report& r, std::size_t row, const std::string& column) {
    for (std::size_t c = 0; c < r.columns.size(); ++c)
        if (r.columns[c] == column) return r.rows.at(row).at(c);
    throw std::out_of_range("no column " + column);
}

std::size_t row_of_prime(const Report& r, unsigned long p) {
    for (std::size_t i = 0; i < r.rows.size(); ++i)
        if (std::get<mpz_class>(cell(r, i, "p")) == p) return i;
    throw std::out_of_range("no row for p");
}

}  // namespace

TEST_CASE("lpf-vs-threshold scan over small primes") {
    TauTable table = build_tau_table(100);
    Report r = scan_thm21(table, 100);
    CHECK(r.experiment_id == "thm21");
    CHECK(r.rows.size() == 25);
    CHECK(r.incomplete_count == 0);

    std::size_t i2 = row_of_prime(r, 2);
    CHECK(std::get<mpz_class>(cell(r, i2, "lpf")) == 23);  // P(tau(2) tau(4))
    CHECK(std::get<bool>(cell(r, i2, "satisfied")));
    CHECK(std::get<bool>(cell(r, i2, "complete")));
    std::size_t i3 = row_of_prime(r, 3);
    CHECK(std::get<mpz_class>(cell(r, i3, "lpf")) == 61);  // P(tau(3) tau(9))

    const ReportValue* fraction = r.find_summary("fraction");
    REQUIRE(fraction != nullptr);
    CHECK(std::get<double>(*fraction) == 1.0);
    const ReportValue* rows = r.find_summary("rows");
    REQUIRE(rows != nullptr);
    CHECK(std::get<mpz_class>(*rows) == 25);

    CHECK_THROWS_AS(scan_thm21(table, 101), OutOfRangeError);
}

TEST_CASE("lpf scan is independent of the job count") {
    TauTable table = build_tau_table(200);
    Report serial = scan_thm21(table, 200, 33.0 / 31.0, kDefaultFactorBudget, 1);
    Report threaded = scan_thm21(table, 200, 33.0 / 31.0, kDefaultFactorBudget, 3);
    CHECK(serial == threaded);
}

TEST_CASE("prime-support census: vacuous case at x = 8") {
    TauTable table = build_tau_table(10);
    Report r = scan_thm22(table, 8);
    CHECK(r.experiment_id == "thm22");
    CHECK(r.rows.empty());
    CHECK(std::get<mpz_class>(*r.find_summary("s")) == 0);
    CHECK(std::get<bool>(*r.find_summary("vacuous")));
    CHECK(std::holds_alternative<std::monostate>(*r.find_summary("satisfied")));
}

TEST_CASE("prime-support census grows with x") {
    TauTable table = build_tau_table(31);
    Report small = scan_thm22(table, 1000);   // y = 10: odd primes 3, 5, 7
    Report large = scan_thm22(table, 27000);  // y = 30: up to 29
    CHECK(small.rows.size() == 3);
    CHECK(large.rows.size() == 9);
    mpz_class s_small = std::get<mpz_class>(*small.find_summary("s"));
    mpz_class s_large = std::get<mpz_class>(*large.find_summary("s"));
    CHECK(s_small >= 1);
    CHECK(s_small <= s_large);
    CHECK(!std::get<bool>(*large.find_summary("vacuous")));
    CHECK(std::get<bool>(*large.find_summary("satisfied")));

    // Row-wise new-prime counts must add up to the union size.
    mpz_class total(0);
    for (std::size_t i = 0; i < large.rows.size(); ++i)
        total += std::get<mpz_class>(cell(large, i, "new_primes"));
    CHECK(total == s_large);
}

TEST_CASE("witness-triple scan rows at desk scale") {
    TauTable table = build_tau_table(10);
    Report r = scan_thm23(table, 10);
    CHECK(r.experiment_id == "thm23");
    CHECK(r.rows.size() == 4);  // p = 2, 3, 5, 7

    std::size_t i2 = row_of_prime(r, 2);
    CHECK(std::get<mpz_class>(cell(r, i2, "triple_lpf")) == 23);
    CHECK(std::get<mpz_class>(cell(r, i2, "def_lpf")) == 23);
    CHECK(std::get<mpz_class>(cell(r, i2, "omega_triple")) == 5);
    CHECK(std::get<mpz_class>(cell(r, i2, "def_radical")) == 7590);
    CHECK(std::holds_alternative<std::monostate>(cell(r, i2, "nested_log_ref")));

    std::size_t i3 = row_of_prime(r, 3);
    CHECK(std::get<mpz_class>(cell(r, i3, "triple_lpf")) == 359);
    CHECK(std::get<mpz_class>(cell(r, i3, "def_lpf")) == 359);
    CHECK(std::get<mpz_class>(cell(r, i3, "omega_triple")) == 7);
    CHECK(std::get<mpz_class>(cell(r, i3, "def_radical")) == 35257390);

    CHECK(std::get<bool>(*r.find_summary("def_lpf_within_triple")));
    CHECK(std::get<mpz_class>(*r.find_summary("complete_rows")) == 4);
}

TEST_CASE("factorial equation search in both modes") {
    TauTable table = build_tau_table(8);

    Report s = search_factorial(table, 3, FactorialMode::kSigned);
    CHECK(s.rows.size() == 3);
    CHECK(std::get<mpz_class>(*s.find_summary("solutions")) == 1);
    CHECK(std::get<mpz_class>(cell(s, 0, "m")) == 1);
    CHECK(std::get<mpz_class>(cell(s, 0, "tau_m_factorial")) == 1);
    CHECK(std::get<mpz_class>(cell(s, 0, "n")) == 1);
    CHECK(std::holds_alternative<std::monostate>(cell(s, 1, "n")));  // tau(2) < 0

    Report u = search_factorial(table, 8, FactorialMode::kUnsigned);
    CHECK(u.rows.size() == 8);
    CHECK(std::get<mpz_class>(*u.find_summary("solutions")) == 2);
    CHECK(std::get<mpz_class>(cell(u, 1, "m")) == 2);
    CHECK(std::get<mpz_class>(cell(u, 1, "tau_m_factorial")) == -24);
    CHECK(std::get<mpz_class>(cell(u, 1, "n")) == 4);  // |tau(2!)| = 4!
    for (std::size_t i = 2; i < 8; ++i)
        CHECK(std::holds_alternative<std::monostate>(cell(u, i, "n")));

    CHECK_THROWS_AS(search_factorial(table, 9, FactorialMode::kUnsigned),
                    OutOfRangeError);
    CHECK_THROWS_AS(search_factorial(table, 0, FactorialMode::kUnsigned),
                    OutOfRangeError);
}

TEST_CASE("vanishing-tau census") {
    TauTable table = build_tau_table(10000);
    CHECK(count_tau_zero(table, 10000) == 0);
    CHECK(count_tau_zero(table, 1) == 0);
    table.values[5000] = 0;
    CHECK(count_tau_zero(table, 10000) == 1);
    CHECK(count_tau_zero(table, 4999) == 0);
    CHECK_THROWS_AS(count_tau_zero(table, 10001), OutOfRangeError);
}

TEST_CASE("divisibility chain through the modular routes") {
    Report r = check_divisibility_chain(2);  // k = lcm(2,3) - 1 = 5
    CHECK(std::get<bool>(*r.find_summary("all_divide")));
    CHECK(r.rows.size() == 2);
    CHECK(std::get<mpz_class>(cell(r, 0, "r")) == 1);
    CHECK(std::get<bool>(cell(r, 0, "divides")));
    CHECK(std::get<std::string>(cell(r, 0, "route")) == "stepped");
    mpz_class k = std::get<mpz_class>(r.parameters.at(1).second);
    CHECK(k == 5);

    Report r3 = check_divisibility_chain(3);  // k = lcm(2,3,4) - 1 = 11
    CHECK(std::get<bool>(*r3.find_summary("all_divide")));
    CHECK(r3.rows.size() == 3);

    // s = 22 pushes k = lcm(2..23) - 1 past the stepping threshold, so the
    // companion-matrix route carries the whole chain.
    Report big = check_divisibility_chain(22);
    CHECK(big.rows.size() == 22);
    CHECK(std::get<bool>(*big.find_summary("all_divide")));
    for (std::size_t i = 0; i < big.rows.size(); ++i) {
        CHECK(std::get<bool>(cell(big, i, "divides")));
        CHECK(std::get<std::string>(cell(big, i, "route")) == "matrix");
    }

    CHECK_THROWS_AS(check_divisibility_chain(1), OutOfRangeError);
}
