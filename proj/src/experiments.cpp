#include "taulab/experiments.hpp"

#include <gmp.h>

#include <cmath>
#include <set>
#include <string>

#include "taulab/errors.hpp"
#include "taulab/lucas_cyclo.hpp"
#include "taulab/parallel.hpp"
#include "taulab/sunit_lab.hpp"

namespace taulab {

namespace {

mpz_class mpz_of(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

void collect_primes(const Factorization& f, std::set<mpz_class>& into) {
    for (const auto& [q, e] : f.factors) into.insert(q);
}

mpz_class max_prime(const std::set<mpz_class>& primes) {
    return primes.empty() ? mpz_class(1) : *primes.rbegin();
}

}  // namespace

Report scan_thm21(const TauTable& table, std::uint64_t y, double a,
                  std::uint64_t budget, unsigned jobs) {
    if (y > table.max_n) throw OutOfRangeError("scan_thm21: bound exceeds table");
    Report report;
    report.experiment_id = "thm21";
    report.add_parameter("bound", mpz_of(y));
    report.add_parameter("a_exponent", a);
    report.add_parameter("budget", mpz_of(budget));
    report.columns = {"p", "lpf", "threshold", "satisfied", "complete"};

    std::vector<std::uint64_t> primes = primes_up_to(y);
    struct RowData {
        mpz_class lpf;
        double threshold = 0.0;
        bool satisfied = false;
        bool complete = true;
        bool skipped = false;  // tau(p) = 0; no known example exists
    };
    std::vector<RowData> data(primes.size());
    parallel_for(primes.size(), static_cast<int>(jobs), [&](std::size_t i) {
        std::uint64_t p = primes[i];
        const mpz_class& tau_p = table.at(p);
        RowData& row = data[i];
        if (tau_p == 0) {
            row.skipped = true;
            return;
        }
        mpz_class pz = mpz_of(p);
        mpz_class product = tau_p * tau_prime_power(tau_p, pz, 2);
        Budgeted<mpz_class> lpf = largest_prime_factor(product, budget);
        row.lpf = lpf.value;
        row.complete = lpf.complete;
        row.threshold = std::pow(std::log(static_cast<double>(p)), a);
        row.satisfied = mpz_cmp_d(lpf.value.get_mpz_t(), row.threshold) > 0;
    });

    std::uint64_t complete_rows = 0, satisfied_complete = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const RowData& row = data[i];
        if (row.skipped) continue;
        report.rows.push_back({ReportValue(mpz_of(primes[i])), ReportValue(row.lpf),
                               ReportValue(row.threshold), ReportValue(row.satisfied),
                               ReportValue(row.complete)});
        if (row.complete) {
            ++complete_rows;
            if (row.satisfied) ++satisfied_complete;
        } else {
            ++report.incomplete_count;
        }
    }
    report.add_summary("rows", mpz_of(report.rows.size()));
    report.add_summary("complete_rows", mpz_of(complete_rows));
    report.add_summary("satisfied_complete_rows", mpz_of(satisfied_complete));
    if (complete_rows > 0)
        report.add_summary("fraction", static_cast<double>(satisfied_complete) /
                                           static_cast<double>(complete_rows));
    else
        report.add_summary("fraction", undefined_value());
    return report;
}

Report scan_thm22(const TauTable& table, std::uint64_t x, std::uint64_t budget,
                  unsigned jobs) {
    mpz_class y_z;
    mpz_root(y_z.get_mpz_t(), mpz_of(x).get_mpz_t(), 3);
    std::uint64_t y = y_z.get_ui();
    if (y > table.max_n)
        throw OutOfRangeError("scan_thm22: cube root of x exceeds table");

    Report report;
    report.experiment_id = "thm22";
    report.add_parameter("x", mpz_of(x));
    report.add_parameter("y", mpz_of(y));
    report.add_parameter("odd_primes_only", true);
    report.add_parameter("budget", mpz_of(budget));
    report.columns = {"p", "omega_triple", "new_primes", "complete"};

    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : primes_up_to(y))
        if (p != 2 && table.at(p) != 0) primes.push_back(p);

    struct RowData {
        std::set<mpz_class> support;
        bool complete = true;
    };
    std::vector<RowData> data(primes.size());
    parallel_for(primes.size(), static_cast<int>(jobs), [&](std::size_t i) {
        std::uint64_t p = primes[i];
        mpz_class pz = mpz_of(p);
        const mpz_class& tau_p = table.at(p);
        Factorization f1 = factor(tau_p, budget);
        Factorization f2 = factor(tau_prime_power(tau_p, pz, 2), budget);
        Factorization f3 = factor(tau_prime_power(tau_p, pz, 3), budget);
        RowData& row = data[i];
        collect_primes(f1, row.support);
        collect_primes(f2, row.support);
        collect_primes(f3, row.support);
        row.complete = f1.complete && f2.complete && f3.complete;
    });

    std::set<mpz_class> all_primes;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const RowData& row = data[i];
        std::uint64_t fresh = 0;
        for (const mpz_class& q : row.support)
            if (all_primes.insert(q).second) ++fresh;
        report.rows.push_back({ReportValue(mpz_of(primes[i])),
                               ReportValue(mpz_of(row.support.size())),
                               ReportValue(mpz_of(fresh)), ReportValue(row.complete)});
        if (!row.complete) ++report.incomplete_count;
    }

    double bound = std::log(static_cast<double>(x)) / (6.0 * std::log(7.0));
    std::uint64_t s = all_primes.size();
    bool vacuous = primes.empty();
    report.add_summary("s", mpz_of(s));
    report.add_summary("bound", bound);
    report.add_summary("vacuous", vacuous);
    if (vacuous)
        report.add_summary("satisfied", undefined_value());
    else
        report.add_summary("satisfied", static_cast<double>(s) >= bound);
    return report;
}

Report scan_thm23(const TauTable& table, std::uint64_t y, std::uint64_t budget,
                  unsigned jobs) {
    if (y > table.max_n) throw OutOfRangeError("scan_thm23: bound exceeds table");
    Report report;
    report.experiment_id = "thm23";
    report.add_parameter("bound", mpz_of(y));
    report.add_parameter("budget", mpz_of(budget));
    report.columns = {"p",          "triple_lpf", "def_lpf", "omega_triple",
                      "def_radical", "nested_log_ref", "complete"};

    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : primes_up_to(y))
        if (table.at(p) != 0) primes.push_back(p);

    struct RowData {
        mpz_class triple_lpf;
        mpz_class def_lpf;
        std::uint64_t omega_triple = 0;
        mpz_class def_radical;
        ReportValue nested;
        bool complete = true;
    };
    std::vector<RowData> data(primes.size());
    parallel_for(primes.size(), static_cast<int>(jobs), [&](std::size_t i) {
        std::uint64_t p = primes[i];
        SUnitWitness w = sunit_witness(mpz_of(p), table);
        RowData& row = data[i];

        std::set<mpz_class> tau_support;
        Factorization f1 = factor(w.tau_p, budget);
        Factorization f2 = factor(w.tau_p2, budget);
        Factorization f3 = factor(w.tau_p3, budget);
        collect_primes(f1, tau_support);
        collect_primes(f2, tau_support);
        collect_primes(f3, tau_support);
        row.triple_lpf = max_prime(tau_support);
        row.omega_triple = tau_support.size();

        std::set<mpz_class> def_support;
        Factorization fd = factor(w.denom, budget);
        Factorization fe = factor(w.e_num, budget);
        Factorization ff = factor(w.f_num, budget);
        collect_primes(fd, def_support);
        collect_primes(fe, def_support);
        collect_primes(ff, def_support);
        row.def_lpf = max_prime(def_support);
        row.def_radical = 1;
        for (const mpz_class& q : def_support) row.def_radical *= q;

        row.complete = f1.complete && f2.complete && f3.complete && fd.complete &&
                       fe.complete && ff.complete;

        // Reference value ln ln p * ln ln ln p / ln ln ln ln p: only defined
        // once every nested logarithm is positive, i.e. p > e^(e^e); at any
        // smaller p the row records it as undefined.
        double l1 = std::log(static_cast<double>(p));
        double l2 = std::log(l1);
        if (l2 > 0.0) {
            double l3 = std::log(l2);
            if (l3 > 0.0) {
                double l4 = std::log(l3);
                if (l4 > 0.0) row.nested = l2 * l3 / l4;
            }
        }
    });

    std::uint64_t complete_rows = 0;
    bool def_within_triple = true;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        RowData& row = data[i];
        report.rows.push_back({ReportValue(mpz_of(primes[i])), ReportValue(row.triple_lpf),
                               ReportValue(row.def_lpf),
                               ReportValue(mpz_of(row.omega_triple)),
                               ReportValue(row.def_radical), row.nested,
                               ReportValue(row.complete)});
        if (row.complete) {
            ++complete_rows;
            if (row.def_lpf > row.triple_lpf) def_within_triple = false;
        } else {
            ++report.incomplete_count;
        }
    }
    report.add_summary("rows", mpz_of(report.rows.size()));
    report.add_summary("complete_rows", mpz_of(complete_rows));
    report.add_summary("def_lpf_within_triple", def_within_triple);
    return report;
}

Report search_factorial(const TauTable& table, std::uint64_t max_m, FactorialMode mode) {
    if (max_m < 1) throw OutOfRangeError("search_factorial: max_m must be >= 1");
    if (max_m > table.max_n)
        throw OutOfRangeError("search_factorial: table must cover primes <= max_m");
    Report report;
    report.experiment_id = "search-factorial";
    report.add_parameter("max_m", mpz_of(max_m));
    report.add_parameter("mode",
                         std::string(mode == FactorialMode::kSigned ? "signed" : "unsigned"));
    report.columns = {"m", "tau_m_factorial", "n"};

    std::vector<std::uint64_t> primes = primes_up_to(max_m);
    std::uint64_t solutions = 0;
    for (std::uint64_t m = 1; m <= max_m; ++m) {
        // tau(m!) from the prime factorization of m!: the exponent of p is
        // Legendre's sum, and each prime power goes through the recurrence,
        // so the table never needs the huge index m! itself.
        mpz_class tau_val(1);
        for (std::uint64_t p : primes) {
            if (p > m) break;
            std::uint64_t e = 0;
            for (std::uint64_t q = m / p; q > 0; q /= p) e += q;
            tau_val *= tau_prime_power(table.at(p), mpz_of(p), e);
        }
        ReportValue matched = undefined_value();
        mpz_class target = abs(tau_val);
        mpz_class fact(1);
        for (std::uint64_t n = 1; fact <= target; ++n) {
            fact *= static_cast<unsigned long>(n);
            if (fact == target) {
                bool ok = mode == FactorialMode::kUnsigned || tau_val > 0;
                if (ok) {
                    matched = mpz_of(n);
                    ++solutions;
                }
                break;
            }
        }
        report.rows.push_back(
            {ReportValue(mpz_of(m)), ReportValue(tau_val), matched});
    }
    report.add_summary("solutions", mpz_of(solutions));
    return report;
}

std::uint64_t count_tau_zero(const TauTable& table, std::uint64_t y) {
    if (y > table.max_n) throw OutOfRangeError("count_tau_zero: bound exceeds table");
    std::uint64_t count = 0;
    // Scanning every index (not only primes) subsumes the prime census.
    for (std::uint64_t n = 1; n <= y; ++n)
        if (table.values[n] == 0) ++count;
    return count;
}

Report check_divisibility_chain(std::uint64_t s) {
    if (s < 2) throw OutOfRangeError("check_divisibility_chain: s must be >= 2");
    mpz_class k(1);
    for (std::uint64_t i = 2; i <= s + 1; ++i)
        mpz_lcm_ui(k.get_mpz_t(), k.get_mpz_t(), i);
    k -= 1;  // r+1 | k+1 for every r <= s

    Report report;
    report.experiment_id = "divisibility-chain";
    report.add_parameter("s", mpz_of(s));
    report.add_parameter("k", k);
    report.columns = {"r", "divides", "route"};

    std::vector<mpz_class> terms = lucas_terms(s);
    bool stepped = k <= 10'000'000;
    bool all_divide = true;
    for (std::uint64_t r = 1; r <= s; ++r) {
        mpz_class modulus = abs(terms[r]);
        mpz_class residue = lucas_term_mod(k, modulus);
        bool divides = residue == 0;
        all_divide = all_divide && divides;
        report.rows.push_back({ReportValue(mpz_of(r)), ReportValue(divides),
                               ReportValue(std::string(stepped ? "stepped" : "matrix"))});
    }
    report.add_summary("all_divide", all_divide);
    return report;
}

}  // namespace taulab
