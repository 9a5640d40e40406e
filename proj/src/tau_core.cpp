#include "taulab/tau_core.hpp"

#include <gmp.h>

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <new>
#include <numeric>
#include <string>

#include "taulab/errors.hpp"
#include "taulab/factorint.hpp"

namespace taulab {

const mpz_class& TauTable::at(std::uint64_t n) const {
    if (n < 1 || n > max_n)
        throw OutOfRangeError("tau table index " + std::to_string(n) +
                              " outside 1.." + std::to_string(max_n));
    return values[n];
}

std::vector<std::pair<std::uint64_t, std::int64_t>> eta_cube_series(std::uint64_t len) {
    std::vector<std::pair<std::uint64_t, std::int64_t>> out;
    for (std::uint64_t k = 0;; ++k) {
        std::uint64_t t = k * (k + 1) / 2;
        if (t >= len) break;
        auto c = static_cast<std::int64_t>(2 * k + 1);
        out.emplace_back(t, (k & 1) ? -c : c);
    }
    return out;
}

namespace {

std::size_t ceil_log2(std::uint64_t x) {
    std::size_t b = 0;
    while ((std::uint64_t(1) << b) < x) ++b;
    return b;
}

}  // namespace

std::vector<mpz_class> series_square(const std::vector<mpz_class>& poly,
                                     std::uint64_t out_len) {
    if (out_len == 0) return {};
    // Coefficients at degree >= out_len cannot reach any kept output degree.
    const std::size_t n = std::min<std::size_t>(poly.size(), out_len);
    std::size_t coeff_bits = 1;
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (poly[i] == 0) continue;
        all_zero = false;
        coeff_bits = std::max(coeff_bits, mpz_sizeinbase(poly[i].get_mpz_t(), 2));
    }
    std::vector<mpz_class> out(out_len);
    if (all_zero || n == 0) return out;

    // Field width: a square coefficient is a sum of at most n products of two
    // inputs, plus sign bit and carry slack; round up to whole 64-bit words
    // so fields align with export/import limbs.
    std::size_t need = 2 * coeff_bits + ceil_log2(n) + 3;
    std::size_t b = (need + 63) / 64 * 64;
    std::size_t wpf = b / 64;

    // Pack positive and negative parts separately; their difference is one
    // big integer whose base-2^b digits are the signed coefficients.
    std::vector<std::uint64_t> pos(wpf * n, 0), neg(wpf * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (poly[i] == 0) continue;
        std::uint64_t* dst = (sgn(poly[i]) > 0 ? pos : neg).data() + i * wpf;
        mpz_export(dst, nullptr, -1, sizeof(std::uint64_t), 0, 0, poly[i].get_mpz_t());
    }
    mpz_class packed, negative, square;
    mpz_import(packed.get_mpz_t(), pos.size(), -1, sizeof(std::uint64_t), 0, 0, pos.data());
    mpz_import(negative.get_mpz_t(), neg.size(), -1, sizeof(std::uint64_t), 0, 0,
               neg.data());
    packed -= negative;
    pos.clear();
    pos.shrink_to_fit();
    neg.clear();
    neg.shrink_to_fit();
    mpz_mul(square.get_mpz_t(), packed.get_mpz_t(), packed.get_mpz_t());

    // Decode base-2^b digits back into signed coefficients: a digit at or
    // above 2^{b-1} is a negative coefficient that borrowed from the digit
    // above it, so push a carry upward. square >= 0, so digits are plain.
    std::size_t out_fields = std::min<std::uint64_t>(out_len, 2 * n - 1);
    std::vector<std::uint64_t> words(wpf * 2 * n + 2, 0);
    mpz_export(words.data(), nullptr, -1, sizeof(std::uint64_t), 0, 0,
               square.get_mpz_t());
    mpz_class field;
    const mpz_class two_b = mpz_class(1) << b;
    const mpz_class half_b = mpz_class(1) << (b - 1);
    unsigned carry = 0;
    for (std::size_t i = 0; i < out_fields; ++i) {
        mpz_import(field.get_mpz_t(), wpf, -1, sizeof(std::uint64_t), 0, 0,
                   words.data() + i * wpf);
        field += carry;
        carry = 0;
        if (field >= two_b) {
            field -= two_b;
            carry = 1;
        }
        if (field >= half_b) {
            field -= two_b;
            ++carry;
        }
        out[i] = field;
    }
    return out;
}

TauTable build_tau_table(std::uint64_t max_n) {
    if (max_n < 1) throw OutOfRangeError("build_tau_table: max_n must be >= 1");
    if (max_n > (std::uint64_t(1) << 28))
        throw ResourceError("build_tau_table: bound too large for packed squaring");
    try {
        const std::uint64_t len = max_n;  // degrees 0..max_n-1 before the X shift

        // (1 - x)^3 (1 - x^2)^3 ... = sum (-1)^k (2k+1) x^{k(k+1)/2}: the cube
        // of the product collapses to O(sqrt(len)) signed terms, so the first
        // squaring is a sparse convolution that provably fits in 64 bits
        // (coefficients stay below ~2^31; see the bound in the unit tests).
        auto cube = eta_cube_series(len);
        std::vector<std::int64_t> sixth(len, 0);
        for (std::size_t i = 0; i < cube.size(); ++i) {
            auto [di, ci] = cube[i];
            if (2 * di < len) sixth[2 * di] += ci * ci;
            for (std::size_t j = i + 1; j < cube.size(); ++j) {
                auto [dj, cj] = cube[j];
                if (di + dj >= len) break;
                sixth[di + dj] += 2 * ci * cj;
            }
        }
        std::vector<mpz_class> p6(len);
        for (std::size_t i = 0; i < len; ++i) p6[i] = static_cast<long>(sixth[i]);
        sixth.clear();
        sixth.shrink_to_fit();

        // 6th power -> 12th -> 24th by exact squarings.
        std::vector<mpz_class> p12 = series_square(p6, len);
        p6.clear();
        p6.shrink_to_fit();
        std::vector<mpz_class> p24 = series_square(p12, len);
        p12.clear();
        p12.shrink_to_fit();

        // The X factor shifts degrees by one: tau(n) is the coefficient of
        // x^{n-1} in the 24th power.
        TauTable table;
        table.max_n = max_n;
        table.values.resize(max_n + 1);
        for (std::uint64_t n = 1; n <= max_n; ++n)
            table.values[n] = std::move(p24[n - 1]);
        return table;
    } catch (const std::bad_alloc&) {
        throw ResourceError("build_tau_table: allocation failed");
    }
}

mpz_class tau_prime_power(const mpz_class& tau_p, const mpz_class& p, std::uint64_t r) {
    if (r == 0) return 1;
    if (r == 1) return tau_p;
    mpz_class p11;
    mpz_pow_ui(p11.get_mpz_t(), p.get_mpz_t(), 11);
    mpz_class prev(1), cur(tau_p), next;
    for (std::uint64_t i = 2; i <= r; ++i) {
        next = cur * tau_p - p11 * prev;
        prev.swap(cur);
        cur.swap(next);
    }
    return cur;
}

mpz_class tau_at(const mpz_class& n, const TauTable& table) {
    if (n < 1) throw OutOfRangeError("tau_at: n must be positive");
    if (n == 1) return 1;
    Factorization f = factor_trial_complete(n);
    mpz_class result(1);
    for (const auto& [p, e] : f.factors) {
        if (!mpz_fits_ulong_p(p.get_mpz_t()) ||
            p.get_ui() > table.max_n)
            throw OutOfRangeError("tau_at: prime factor " + p.get_str() +
                                  " beyond table range");
        result *= tau_prime_power(table.at(p.get_ui()), p, e);
    }
    return result;
}

Report verify_table(const TauTable& table) {
    Report report;
    report.experiment_id = "verify-table";
    report.add_parameter("max", mpz_class(static_cast<unsigned long>(table.max_n)));
    report.columns = {"check", "index", "detail"};
    std::uint64_t checks = 0;
    auto violate = [&](const char* kind, std::uint64_t index, std::string detail) {
        report.rows.push_back({ReportValue(std::string(kind)),
                               ReportValue(mpz_class(static_cast<unsigned long>(index))),
                               ReportValue(std::move(detail))});
    };

    const std::uint64_t N = table.max_n;
    ++checks;
    if (table.values[1] != 1) violate("base", 1, "tau(1) != 1");
    if (N >= 2) {
        ++checks;
        if (table.values[2] != -24) violate("base", 2, "tau(2) != -24");
    }

    // Multiplicativity on every coprime split ab <= N with 2 <= a < b.
    for (std::uint64_t a = 2; a * a <= N; ++a) {
        for (std::uint64_t b = a + 1; a * b <= N; ++b) {
            if (std::gcd(a, b) != 1) continue;
            ++checks;
            if (table.values[a * b] != table.values[a] * table.values[b])
                violate("multiplicativity", a * b,
                        "a=" + std::to_string(a) + " b=" + std::to_string(b));
        }
    }

    // Hecke recurrence along every prime-power ladder, Deligne at primes.
    mpz_class p11;
    for (std::uint64_t p : primes_up_to(N)) {
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_pow_ui(p11.get_mpz_t(), pz.get_mpz_t(), 11);
        ++checks;
        if (table.values[p] * table.values[p] > 4 * p11)
            violate("deligne", p, "tau(p)^2 > 4p^11");
        std::uint64_t pr = 1;  // p^r
        for (std::uint64_t r = 0; pr <= N / (p * p); ++r, pr *= p) {
            std::uint64_t target = pr * p * p;
            ++checks;
            if (table.values[target] !=
                table.values[pr * p] * table.values[p] - p11 * table.values[pr])
                violate("hecke", target,
                        "p=" + std::to_string(p) + " r=" + std::to_string(r));
        }
    }

    report.add_summary("checks", mpz_class(static_cast<unsigned long>(checks)));
    report.add_summary("violations",
                       mpz_class(static_cast<unsigned long>(report.rows.size())));
    return report;
}

void save_tau_table(const TauTable& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ResourceError("cannot open cache for writing: " + path);
    f << "TAUTABLE v1 max=" << table.max_n << "\n";
    for (std::uint64_t n = 1; n <= table.max_n; ++n)
        f << n << '\t' << table.values[n].get_str() << '\n';
    f.flush();
    if (!f) throw ResourceError("cache write failed: " + path);
}

namespace {

bool parse_decimal(const std::string& s, mpz_class& out) {
    if (s.empty()) return false;
    std::size_t start = s[0] == '-' ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return mpz_set_str(out.get_mpz_t(), s.c_str(), 10) == 0;
}

}  // namespace

TauTable load_tau_table(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw CacheFormatError("cannot open cache: " + path);
    std::string line;
    if (!std::getline(f, line)) throw CacheFormatError("cache is empty: " + path);
    const std::string prefix = "TAUTABLE v1 max=";
    if (line.rfind(prefix, 0) != 0)
        throw CacheFormatError("bad cache header: " + line);
    mpz_class max_z;
    if (!parse_decimal(line.substr(prefix.size()), max_z) || max_z < 1 ||
        !mpz_fits_ulong_p(max_z.get_mpz_t()))
        throw CacheFormatError("bad cache max: " + line);
    std::uint64_t max_n = max_z.get_ui();

    TauTable table;
    table.max_n = max_n;
    table.values.resize(max_n + 1);
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        if (!std::getline(f, line))
            throw CacheFormatError("cache truncated at n=" + std::to_string(n));
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
            throw CacheFormatError("bad cache line at n=" + std::to_string(n));
        mpz_class index;
        if (!parse_decimal(line.substr(0, tab), index) ||
            mpz_cmp_ui(index.get_mpz_t(), n) != 0)
            throw CacheFormatError("cache index gap at n=" + std::to_string(n));
        if (!parse_decimal(line.substr(tab + 1), table.values[n]))
            throw CacheFormatError("bad cache value at n=" + std::to_string(n));
    }
    if (std::getline(f, line)) throw CacheFormatError("trailing data in cache");
    if (table.values[1] != 1) throw CacheFormatError("cache fails tau(1) = 1");
    if (max_n >= 2 && table.values[2] != -24)
        throw CacheFormatError("cache fails tau(2) = -24");
    return table;
}

}  // namespace taulab
