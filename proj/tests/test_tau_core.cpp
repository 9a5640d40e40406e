#include "doctest.h"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "taulab/errors.hpp"
#include "taulab/tau_core.hpp"

using namespace taulab;

namespace {

// Independent route to tau: the dense product prod_{m} (1 - x^m)^24 built by
// schoolbook multiplication, one binomial factor at a time. tau(n) is the
// coefficient of x^{n-1}.
std::vector<mpz_class> dense_tau_oracle(std::uint64_t max_n) {
    std::vector<mpz_class> poly(max_n, 0);
    poly[0] = 1;
    for (std::uint64_t m = 1; m < max_n; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (std::uint64_t i = max_n; i-- > m;) poly[i] -= poly[i - m];
    return poly;
}

std::vector<mpz_class> schoolbook_square(const std::vector<mpz_class>& poly,
                                         std::uint64_t out_len) {
    std::vector<mpz_class> out(out_len, 0);
    for (std::size_t i = 0; i < poly.size() && i < out_len; ++i)
        for (std::size_t j = 0; j < poly.size() && i + j < out_len; ++j)
            out[i + j] += poly[i] * poly[j];
    return out;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("eta cube series matches the pentagonal-style closed form") {
    auto terms = eta_cube_series(20);
    std::vector<std::pair<std::uint64_t, std::int64_t>> expected = {
        {0, 1}, {1, -3}, {3, 5}, {6, -7}, {10, 9}, {15, -11}};
    CHECK(terms == expected);
    CHECK(eta_cube_series(1) ==
          std::vector<std::pair<std::uint64_t, std::int64_t>>{{0, 1}});
}

TEST_CASE("series_square on tiny hand-checked inputs") {
    CHECK(series_square({}, 0).empty());
    CHECK(series_square({mpz_class(3)}, 1) == std::vector<mpz_class>{mpz_class(9)});
    std::vector<mpz_class> p = {mpz_class(-2), mpz_class(3)};
    std::vector<mpz_class> sq = series_square(p, 3);
    REQUIRE(sq.size() == 3);
    CHECK(sq[0] == 4);
    CHECK(sq[1] == -12);
    CHECK(sq[2] == 9);
    // Truncation drops the top coefficient.
    sq = series_square(p, 2);
    REQUIRE(sq.size() == 2);
    CHECK(sq[0] == 4);
    CHECK(sq[1] == -12);
    // All-zero input stays zero.
    std::vector<mpz_class> z(5, 0);
    for (const mpz_class& c : series_square(z, 5)) CHECK(c == 0);
}

TEST_CASE("series_square agrees with schoolbook squaring on random polynomials") {
    std::mt19937_64 rng(20260819);
    for (std::uint64_t len : {1u, 2u, 7u, 33u, 64u}) {
        std::vector<mpz_class> poly(len);
        for (auto& c : poly) {
            std::int64_t v = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
            c = mpz_class(static_cast<long>(v));
        }
        for (std::uint64_t out_len : {len, 2 * len - 1, 2 * len + 4}) {
            CAPTURE(len);
            CAPTURE(out_len);
            CHECK(series_square(poly, out_len) == schoolbook_square(poly, out_len));
        }
    }
}

TEST_CASE("series_square handles wide coefficients") {
    std::mt19937_64 rng(7);
    std::vector<mpz_class> poly(30);
    for (auto& c : poly) {
        mpz_class v = 0;
        for (int limb = 0; limb < 4; ++limb) {
            v <<= 64;
            v += mpz_class(rng());
        }
        if (rng() & 1) v = -v;
        c = v;
    }
    CHECK(series_square(poly, 59) == schoolbook_square(poly, 59));
}

TEST_CASE("tau table matches the dense product oracle up to 64") {
    const std::uint64_t N = 64;
    TauTable table = build_tau_table(N);
    REQUIRE(table.max_n == N);
    REQUIRE(table.values.size() == N + 1);
    std::vector<mpz_class> oracle = dense_tau_oracle(N);
    for (std::uint64_t n = 1; n <= N; ++n) {
        CAPTURE(n);
        CHECK(table.values[n] == oracle[n - 1]);
    }
}

TEST_CASE("first tau values are the classical ones") {
    TauTable table = build_tau_table(10);
    const long expected[] = {0,     1,      -24,     252,    -1472,  4830,
                             -6048, -16744, 84480, -113643, -115920};
    for (std::uint64_t n = 1; n <= 10; ++n) {
        CAPTURE(n);
        CHECK(table.values[n] == mpz_class(expected[n]));
    }
}

TEST_CASE("tiny tables build") {
    TauTable one = build_tau_table(1);
    CHECK(one.max_n == 1);
    CHECK(one.values[1] == 1);
    TauTable two = build_tau_table(2);
    CHECK(two.values[2] == -24);
    CHECK_THROWS_AS(build_tau_table(0), OutOfRangeError);
}

TEST_CASE("at() bounds-checks") {
    TauTable table = build_tau_table(5);
    CHECK(table.at(5) == 4830);
    CHECK_THROWS_AS(table.at(0), OutOfRangeError);
    CHECK_THROWS_AS(table.at(6), OutOfRangeError);
}

TEST_CASE("prime-power recurrence reproduces table entries") {
    TauTable table = build_tau_table(100);
    CHECK(tau_prime_power(table.at(2), 2, 0) == 1);
    CHECK(tau_prime_power(table.at(2), 2, 1) == -24);
    CHECK(tau_prime_power(table.at(2), 2, 2) == -1472);
    CHECK(tau_prime_power(table.at(2), 2, 5) == table.at(32));
    CHECK(tau_prime_power(table.at(2), 2, 6) == table.at(64));
    CHECK(tau_prime_power(table.at(3), 3, 3) == table.at(27));
    CHECK(tau_prime_power(table.at(3), 3, 3) == mpz_class(-73279080));
    CHECK(tau_prime_power(table.at(3), 3, 4) == table.at(81));
    CHECK(tau_prime_power(table.at(7), 7, 2) == table.at(49));
}

TEST_CASE("multiplicative evaluation matches the table everywhere it can") {
    TauTable table = build_tau_table(300);
    for (std::uint64_t n = 1; n <= 300; ++n) {
        CAPTURE(n);
        CHECK(tau_at(mpz_class(static_cast<unsigned long>(n)), table) ==
              table.values[n]);
    }
}

TEST_CASE("multiplicative evaluation reaches beyond the table") {
    TauTable table = build_tau_table(7);
    CHECK(tau_at(mpz_class(6), table) == -6048);
    CHECK(tau_at(mpz_class(8), table) == 84480);
    CHECK(tau_at(mpz_class(1), table) == 1);
    // 10^12 = 2^12 5^12 only needs tau(2) and tau(5).
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 12);
    mpz_class expected = tau_prime_power(table.at(2), 2, 12) *
                         tau_prime_power(table.at(5), 5, 12);
    CHECK(tau_at(big, table) == expected);
    CHECK_THROWS_AS(tau_at(mpz_class(11), table), OutOfRangeError);
    CHECK_THROWS_AS(tau_at(mpz_class(0), table), OutOfRangeError);
}

TEST_CASE("verify_table passes on a freshly built table") {
    TauTable table = build_tau_table(10000);
    Report r = verify_table(table);
    CHECK(r.rows.empty());
    const ReportValue* v = r.find_summary("violations");
    REQUIRE(v != nullptr);
    CHECK(std::get<mpz_class>(*v) == 0);
}

TEST_CASE("verify_table flags injected corruption") {
    TauTable table = build_tau_table(50);

    auto has_check = [](const Report& r, const std::string& name) {
        for (const auto& row : r.rows)
            if (std::get<std::string>(row.at(0)) == name) return true;
        return false;
    };

    SUBCASE("multiplicativity") {
        table.values[6] = 0;
        Report r = verify_table(table);
        CHECK(!r.rows.empty());
        CHECK(has_check(r, "multiplicativity"));
    }
    SUBCASE("hecke") {
        table.values[4] = 1;
        Report r = verify_table(table);
        CHECK(has_check(r, "hecke"));
    }
    SUBCASE("deligne and base") {
        table.values[2] = mpz_class("100000");
        Report r = verify_table(table);
        CHECK(has_check(r, "deligne"));
        CHECK(has_check(r, "base"));
    }
}

TEST_CASE("cache round-trips bit-exactly") {
    TauTable table = build_tau_table(50);
    auto p1 = temp_file("taulab_cache_a.tsv");
    auto p2 = temp_file("taulab_cache_b.tsv");
    save_tau_table(table, p1.string());
    TauTable loaded = load_tau_table(p1.string());
    CHECK(loaded.max_n == table.max_n);
    CHECK(loaded.values == table.values);
    save_tau_table(loaded, p2.string());
    CHECK(read_file(p1) == read_file(p2));
    std::string text = read_file(p1);
    CHECK(text.rfind("TAUTABLE v1 max=50\n", 0) == 0);
    CHECK(text.find("2\t-24\n") != std::string::npos);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST_CASE("cache loader rejects malformed files") {
    auto p = temp_file("taulab_cache_bad.tsv");
    auto expect_reject = [&](const std::string& text) {
        write_file(p, text);
        CHECK_THROWS_AS(load_tau_table(p.string()), CacheFormatError);
    };
    expect_reject("TAUTABLE v2 max=2\n1\t1\n2\t-24\n");
    expect_reject("garbage\n");
    expect_reject("");
    expect_reject("TAUTABLE v1 max=3\n1\t1\n2\t-24\n");          // truncated
    expect_reject("TAUTABLE v1 max=2\n1\t1\n3\t252\n");          // index gap
    expect_reject("TAUTABLE v1 max=2\n1\t2\n2\t-24\n");          // tau(1) wrong
    expect_reject("TAUTABLE v1 max=2\n1\t1\n2\t-25\n");          // tau(2) wrong
    expect_reject("TAUTABLE v1 max=2\n1\t1\n2\t-24\n3\t252\n");  // trailing data
    expect_reject("TAUTABLE v1 max=2\n1\t1\n2\t-2x4\n");         // bad value
    expect_reject("TAUTABLE v1 max=2\n1 1\n2 -24\n");            // missing tab
    expect_reject("TAUTABLE v1 max=zz\n");                       // bad max
    std::filesystem::remove(p);
    CHECK_THROWS_AS(load_tau_table((temp_file("taulab_no_such_file.tsv")).string()),
                    CacheFormatError);
}
