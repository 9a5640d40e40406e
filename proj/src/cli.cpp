#include "taulab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "taulab/errors.hpp"
#include "taulab/experiments.hpp"
#include "taulab/factorint.hpp"
#include "taulab/lucas_cyclo.hpp"
#include "taulab/parallel.hpp"
#include "taulab/report_io.hpp"
#include "taulab/sunit_lab.hpp"
#include "taulab/tau_core.hpp"

namespace taulab {

namespace {

std::uint64_t env_budget() {
    const char* s = std::getenv("TAULAB_FACTOR_BUDGET");
    if (!s || !*s) return kDefaultFactorBudget;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0' || v == 0) return kDefaultFactorBudget;
    return static_cast<std::uint64_t>(v);
}

mpz_class parse_integer(const std::string& s, const char* what) {
    mpz_class z;
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    bool ok = s.size() > start;
    for (std::size_t i = start; ok && i < s.size(); ++i)
        ok = s[i] >= '0' && s[i] <= '9';
    if (!ok || mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
        throw OutOfRangeError(std::string(what) + ": not a decimal integer: " + s);
    return z;
}

// Loads the cache when it exists and covers the request, else builds the
// table (and refreshes the cache so the next run can reuse it).
TauTable table_for(std::uint64_t needed, const std::string& cache_path) {
    std::uint64_t max_n = std::max<std::uint64_t>(needed, 2);
    if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
        TauTable t = load_tau_table(cache_path);
        if (t.max_n >= max_n) return t;
    }
    TauTable t = build_tau_table(max_n);
    if (!cache_path.empty()) save_tau_table(t, cache_path);
    return t;
}

struct CommonOpts {
    std::uint64_t budget = kDefaultFactorBudget;
    unsigned jobs = 1;
    std::string format;  // empty = per-command default
    std::string out_path;
    std::string cache_path;
};

void add_output_opts(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out_path, "Write output to a file instead of stdout");
}

void add_budget_opt(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--budget", o.budget,
                    "Max rho iterations per composite (overrides TAULAB_FACTOR_BUDGET)")
        ->check(CLI::PositiveNumber);
}

void add_cache_opt(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--cache", o.cache_path, "Tau-table cache file to load or create");
}

void add_jobs_opt(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--jobs", o.jobs, "Worker thread cap")->check(CLI::PositiveNumber);
}

void emit(const Report& report, const CommonOpts& o, const char* default_format,
          std::ostream& out) {
    std::string format = o.format.empty() ? default_format : o.format;
    std::string text = format == "json" ? to_json(report) : to_csv(report);
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw ResourceError("cannot open output file: " + o.out_path);
    f << text;
    f.flush();
    if (!f) throw ResourceError("write failed: " + o.out_path);
}

void emit_text(const std::string& text, const CommonOpts& o, std::ostream& out) {
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw ResourceError("cannot open output file: " + o.out_path);
    f << text;
    f.flush();
    if (!f) throw ResourceError("write failed: " + o.out_path);
}

nlohmann::ordered_json mpz_json(const mpz_class& z) {
    if (mpz_fits_slong_p(z.get_mpz_t()))
        return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

// ---- verify passes -------------------------------------------------------

void verify_violation(Report& r, const char* check, const mpz_class& index,
                      std::string detail) {
    r.rows.push_back({ReportValue(std::string(check)), ReportValue(index),
                      ReportValue(std::move(detail))});
}

Report verify_sunit_pass(const TauTable& table, std::uint64_t bound) {
    Report r;
    r.experiment_id = "verify-sunit";
    r.add_parameter("bound", mpz_class(static_cast<unsigned long>(bound)));
    r.columns = {"check", "index", "detail"};
    std::vector<mpz_class> odd_primes;
    for (std::uint64_t p : primes_up_to(bound)) {
        mpz_class pz(static_cast<unsigned long>(p));
        const mpz_class& tau_p = table.at(p);
        if (tau_p == 0) {
            verify_violation(r, "lehmer", pz, "tau(p) = 0");
            continue;
        }
        SUnitWitness w = sunit_witness(pz, table);
        if (!check_witness(w))
            verify_violation(r, "witness", pz, "an S-unit witness invariant failed");
        if (!check_p6(pz, tau_p))
            verify_violation(r, "p6", pz, "p^6 divides tau(p)");
        if (p != 2) odd_primes.push_back(pz);
    }
    for (const auto& [p1, p2] : distinctness_check(odd_primes, table))
        verify_violation(r, "distinctness", p1, "u(p) collides with p=" + p2.get_str());
    r.add_summary("violations", mpz_class(static_cast<unsigned long>(r.rows.size())));
    return r;
}

Report verify_lucas_pass(std::uint64_t bound) {
    Report r;
    r.experiment_id = "verify-lucas";
    r.add_parameter("bound", mpz_class(static_cast<unsigned long>(bound)));
    r.columns = {"check", "index", "detail"};

    // Divisibility lattice u_r | u_s whenever r+1 | s+1.
    std::uint64_t lattice_max = std::min<std::uint64_t>(bound, 120);
    std::vector<mpz_class> terms = lucas_terms(lattice_max);
    for (std::uint64_t s = 1; s <= lattice_max; ++s) {
        for (std::uint64_t rr = 1; rr <= s; ++rr) {
            if ((s + 1) % (rr + 1) != 0) continue;
            if (!check_divisibility(rr, s, terms))
                verify_violation(r, "lattice",
                                 mpz_class(static_cast<unsigned long>(s)),
                                 "u_" + std::to_string(rr) + " does not divide u_" +
                                     std::to_string(s));
        }
    }

    // Multiplicative cyclotomic split U_n = prod_{d | n, d >= 2} C_d.
    std::uint64_t cyclo_max = std::min<std::uint64_t>(bound, 80);
    if (cyclo_max >= 2) {
        for (std::uint64_t n = 2; n <= cyclo_max; ++n) {
            mpz_class prod(1);
            for (std::uint64_t d = 2; d <= n; ++d)
                if (n % d == 0) prod *= cyclotomic_value(d, terms);
            if (prod != terms[n - 1])
                verify_violation(r, "cyclo-product",
                                 mpz_class(static_cast<unsigned long>(n)),
                                 "product of C_d over d | n misses U_n");
        }
    }

    // nu(m) > m/2 for m >= 4 (exponent of 2 in m!).
    for (std::uint64_t m = 4; m <= 10000; ++m)
        if (2 * nu_factorial_2adic(m) <= m)
            verify_violation(r, "nu-bound", mpz_class(static_cast<unsigned long>(m)),
                             "nu(m) <= m/2");

    // Divisibility chain at s = 10 through the modular recurrence.
    Report chain = check_divisibility_chain(10);
    const ReportValue* all = chain.find_summary("all_divide");
    if (!all || !std::holds_alternative<bool>(*all) || !std::get<bool>(*all))
        verify_violation(r, "chain", mpz_class(10ul),
                         "u_r | u_k failed for some r <= 10");

    r.add_summary("violations", mpz_class(static_cast<unsigned long>(r.rows.size())));
    return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Ramanujan tau computation, factor scans, and identity checks"};
    app.name("tau-lab");
    app.require_subcommand(1);

    CommonOpts opts;
    opts.budget = env_budget();
    opts.jobs = static_cast<unsigned>(default_jobs());
    int rc = 0;

    // tau --max N: the table itself, one row per n.
    std::uint64_t tau_max = 0;
    auto* tau_cmd = app.add_subcommand("tau", "Print tau(1..max) as a table");
    tau_cmd->add_option("--max", tau_max, "Table bound")->required()->check(CLI::Range(
        std::uint64_t(2), std::uint64_t(1) << 28));
    add_output_opts(tau_cmd, opts);
    add_cache_opt(tau_cmd, opts);
    tau_cmd->callback([&] {
        TauTable table = table_for(tau_max, opts.cache_path);
        Report r;
        r.experiment_id = "tau";
        r.add_parameter("max", mpz_class(static_cast<unsigned long>(tau_max)));
        r.columns = {"n", "tau"};
        r.rows.reserve(tau_max);
        for (std::uint64_t n = 1; n <= tau_max; ++n)
            r.rows.push_back({ReportValue(mpz_class(static_cast<unsigned long>(n))),
                              ReportValue(table.values[n])});
        emit(r, opts, "csv", out);
    });

    // tau-at <n>: single multiplicative evaluation.
    std::string tau_at_arg;
    std::uint64_t tau_at_max = 0;
    auto* tau_at_cmd = app.add_subcommand("tau-at", "Evaluate tau(n) multiplicatively");
    tau_at_cmd->add_option("n", tau_at_arg, "Positive integer")->required();
    tau_at_cmd->add_option("--max", tau_at_max,
                           "Table bound (default: largest prime factor of n)");
    add_output_opts(tau_at_cmd, opts);
    add_cache_opt(tau_at_cmd, opts);
    tau_at_cmd->callback([&] {
        mpz_class n = parse_integer(tau_at_arg, "tau-at");
        if (n < 1) throw OutOfRangeError("tau-at: n must be positive");
        std::uint64_t needed = 2;
        if (tau_at_max != 0) {
            needed = tau_at_max;
        } else if (n > 1) {
            Factorization f = factor_trial_complete(n);
            const mpz_class& top = f.factors.back().first;
            if (!mpz_fits_ulong_p(top.get_mpz_t()))
                throw ResourceError("tau-at: prime factor too large for a table");
            needed = top.get_ui();
        }
        TauTable table = table_for(needed, opts.cache_path);
        Report r;
        r.experiment_id = "tau-at";
        r.columns = {"n", "tau"};
        r.rows.push_back({ReportValue(n), ReportValue(tau_at(n, table))});
        emit(r, opts, "csv", out);
    });

    // factor <n>: budgeted factorization.
    std::string factor_arg;
    auto* factor_cmd = app.add_subcommand("factor", "Factor an integer under a budget");
    factor_cmd->add_option("n", factor_arg, "Nonzero integer")->required();
    add_output_opts(factor_cmd, opts);
    add_budget_opt(factor_cmd, opts);
    factor_cmd->callback([&] {
        mpz_class n = parse_integer(factor_arg, "factor");
        if (n == 0) throw OutOfRangeError("factor: n must be nonzero");
        Factorization f = factor(n, opts.budget);
        Report r;
        r.experiment_id = "factor";
        r.add_parameter("n", n);
        r.add_parameter("budget", mpz_class(static_cast<unsigned long>(opts.budget)));
        r.columns = {"prime", "exponent"};
        for (const auto& [p, e] : f.factors)
            r.rows.push_back({ReportValue(p),
                              ReportValue(mpz_class(static_cast<unsigned long>(e)))});
        r.add_summary("sign", mpz_class(f.sign));
        r.add_summary("complete", f.complete);
        r.add_summary("cofactor", f.cofactor ? ReportValue(*f.cofactor)
                                             : undefined_value());
        if (!f.complete) r.incomplete_count = 1;
        emit(r, opts, "json", out);
    });

    // lucas --max R: u_0..u_R.
    std::uint64_t lucas_max = 0;
    auto* lucas_cmd = app.add_subcommand("lucas", "Print the sequence u_r = tau(2^r)");
    lucas_cmd->add_option("--max", lucas_max, "Largest index")
        ->required()
        ->check(CLI::Range(std::uint64_t(1), std::uint64_t(100000)));
    add_output_opts(lucas_cmd, opts);
    lucas_cmd->callback([&] {
        std::vector<mpz_class> terms = lucas_terms(lucas_max);
        Report r;
        r.experiment_id = "lucas";
        r.add_parameter("max", mpz_class(static_cast<unsigned long>(lucas_max)));
        r.columns = {"r", "u"};
        for (std::uint64_t i = 0; i <= lucas_max; ++i)
            r.rows.push_back({ReportValue(mpz_class(static_cast<unsigned long>(i))),
                              ReportValue(terms[i])});
        emit(r, opts, "csv", out);
    });

    // cyclo --max N: cyclotomic values and their congruence split.
    std::uint64_t cyclo_max = 0;
    auto* cyclo_cmd =
        app.add_subcommand("cyclo", "Cyclotomic values C_n with their A/B split");
    cyclo_cmd->add_option("--max", cyclo_max, "Largest index")
        ->required()
        ->check(CLI::Range(std::uint64_t(2), std::uint64_t(2000)));
    add_output_opts(cyclo_cmd, opts);
    add_budget_opt(cyclo_cmd, opts);
    cyclo_cmd->callback([&] {
        std::vector<mpz_class> terms = lucas_terms(cyclo_max - 1);
        Report r;
        r.experiment_id = "cyclo";
        r.add_parameter("max", mpz_class(static_cast<unsigned long>(cyclo_max)));
        r.add_parameter("budget", mpz_class(static_cast<unsigned long>(opts.budget)));
        r.columns = {"n", "term", "cyclo", "a_part", "b_part", "a_within_six_n",
                     "complete"};
        for (std::uint64_t n = 2; n <= cyclo_max; ++n) {
            CycloPart part = split_ab(n, terms, opts.budget);
            r.rows.push_back({ReportValue(mpz_class(static_cast<unsigned long>(n))),
                              ReportValue(part.term), ReportValue(part.cyclo),
                              ReportValue(part.a_part), ReportValue(part.b_part),
                              ReportValue(part.a_within_six_n),
                              ReportValue(part.complete)});
            if (!part.complete) ++r.incomplete_count;
        }
        emit(r, opts, "csv", out);
    });

    // sunit -p P: the witness for one prime.
    std::string sunit_arg;
    std::uint64_t sunit_max = 0;
    auto* sunit_cmd = app.add_subcommand("sunit", "S-unit witness (u, v, D, E, F) at p");
    sunit_cmd->add_option("-p", sunit_arg, "Prime")->required();
    sunit_cmd->add_option("--max", sunit_max, "Table bound (default: p)");
    add_output_opts(sunit_cmd, opts);
    add_cache_opt(sunit_cmd, opts);
    sunit_cmd->callback([&] {
        mpz_class p = parse_integer(sunit_arg, "sunit");
        if (p < 2 || !mpz_fits_ulong_p(p.get_mpz_t()) || !is_prime(p))
            throw OutOfRangeError("sunit: p must be a prime within table range");
        std::uint64_t needed = sunit_max != 0 ? sunit_max : p.get_ui();
        TauTable table = table_for(needed, opts.cache_path);
        SUnitWitness w = sunit_witness(p, table);
        bool valid = check_witness(w);
        std::string format = opts.format.empty() ? "json" : opts.format;
        if (format == "json") {
            nlohmann::ordered_json j;
            j["p"] = mpz_json(w.p);
            j["tau_p"] = mpz_json(w.tau_p);
            j["tau_p2"] = mpz_json(w.tau_p2);
            j["tau_p3"] = mpz_json(w.tau_p3);
            j["u"] = w.u.get_str();
            j["v"] = w.v.get_str();
            j["D"] = mpz_json(w.denom);
            j["E"] = mpz_json(w.e_num);
            j["F"] = mpz_json(w.f_num);
            j["valid"] = valid;
            emit_text(j.dump(2) + "\n", opts, out);
        } else {
            Report r;
            r.experiment_id = "sunit";
            r.columns = {"p", "tau_p", "tau_p2", "tau_p3", "u", "v", "D", "E", "F",
                         "valid"};
            r.rows.push_back({ReportValue(w.p), ReportValue(w.tau_p),
                              ReportValue(w.tau_p2), ReportValue(w.tau_p3),
                              ReportValue(w.u.get_str()), ReportValue(w.v.get_str()),
                              ReportValue(w.denom), ReportValue(w.e_num),
                              ReportValue(w.f_num), ReportValue(valid)});
            emit(r, opts, "csv", out);
        }
        if (!valid) rc = 1;
    });

    // verify {table|sunit|lucas|all} --bound B.
    auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites");
    verify_cmd->require_subcommand(1);
    std::uint64_t verify_bound = 1000;
    auto add_verify_common = [&](CLI::App* sub) {
        sub->add_option("--bound", verify_bound, "Check bound")
            ->check(CLI::Range(std::uint64_t(2), std::uint64_t(1) << 28));
        add_output_opts(sub, opts);
        add_cache_opt(sub, opts);
        add_budget_opt(sub, opts);
    };
    auto finish_verify = [&](Report r) {
        if (!r.rows.empty()) rc = 1;
        emit(r, opts, "csv", out);
    };
    auto* v_table = verify_cmd->add_subcommand("table", "Tau-table invariants");
    add_verify_common(v_table);
    v_table->callback([&] {
        TauTable table = table_for(verify_bound, opts.cache_path);
        finish_verify(verify_table(table));
    });
    auto* v_sunit = verify_cmd->add_subcommand("sunit", "S-unit witness invariants");
    add_verify_common(v_sunit);
    v_sunit->callback([&] {
        TauTable table = table_for(verify_bound, opts.cache_path);
        finish_verify(verify_sunit_pass(table, verify_bound));
    });
    auto* v_lucas = verify_cmd->add_subcommand("lucas", "Lucas/cyclotomic invariants");
    add_verify_common(v_lucas);
    v_lucas->callback([&] { finish_verify(verify_lucas_pass(verify_bound)); });
    auto* v_all = verify_cmd->add_subcommand("all", "Every invariant suite");
    add_verify_common(v_all);
    v_all->callback([&] {
        TauTable table = table_for(verify_bound, opts.cache_path);
        Report combined;
        combined.experiment_id = "verify-all";
        combined.add_parameter("bound",
                               mpz_class(static_cast<unsigned long>(verify_bound)));
        combined.columns = {"check", "index", "detail"};
        for (Report part : {verify_table(table), verify_sunit_pass(table, verify_bound),
                            verify_lucas_pass(verify_bound)})
            for (auto& row : part.rows) combined.rows.push_back(std::move(row));
        combined.add_summary(
            "violations", mpz_class(static_cast<unsigned long>(combined.rows.size())));
        finish_verify(std::move(combined));
    });

    // report {thm21|thm22|thm23|zeros} --bound X.
    auto* report_cmd = app.add_subcommand("report", "Experiment scans");
    report_cmd->require_subcommand(1);
    std::uint64_t report_bound = 0;
    auto add_report_common = [&](CLI::App* sub) {
        sub->add_option("--bound", report_bound, "Scan bound")
            ->required()
            ->check(CLI::Range(std::uint64_t(2), std::uint64_t(1) << 40));
        add_output_opts(sub, opts);
        add_cache_opt(sub, opts);
        add_budget_opt(sub, opts);
        add_jobs_opt(sub, opts);
    };
    auto* r21 = report_cmd->add_subcommand(
        "thm21", "P(tau(p) tau(p^2)) against (ln p)^(33/31) for p <= bound");
    add_report_common(r21);
    r21->callback([&] {
        TauTable table = table_for(report_bound, opts.cache_path);
        emit(scan_thm21(table, report_bound, 33.0 / 31.0, opts.budget, opts.jobs), opts,
             "csv", out);
    });
    auto* r22 = report_cmd->add_subcommand(
        "thm22", "Prime support of the tau triples up to bound^(1/3)");
    add_report_common(r22);
    r22->callback([&] {
        mpz_class y;
        mpz_root(y.get_mpz_t(),
                 mpz_class(static_cast<unsigned long>(report_bound)).get_mpz_t(), 3);
        TauTable table = table_for(y.get_ui(), opts.cache_path);
        emit(scan_thm22(table, report_bound, opts.budget, opts.jobs), opts, "csv", out);
    });
    auto* r23 = report_cmd->add_subcommand(
        "thm23", "Witness-triple largest prime factors for p <= bound");
    add_report_common(r23);
    r23->callback([&] {
        TauTable table = table_for(report_bound, opts.cache_path);
        emit(scan_thm23(table, report_bound, opts.budget, opts.jobs), opts, "csv", out);
    });
    auto* rz = report_cmd->add_subcommand("zeros", "Census of vanishing tau(n)");
    add_report_common(rz);
    rz->callback([&] {
        TauTable table = table_for(report_bound, opts.cache_path);
        Report r;
        r.experiment_id = "zeros";
        r.add_parameter("bound", mpz_class(static_cast<unsigned long>(report_bound)));
        r.columns = {"n"};
        for (std::uint64_t n = 1; n <= report_bound; ++n)
            if (table.values[n] == 0)
                r.rows.push_back({ReportValue(mpz_class(static_cast<unsigned long>(n)))});
        r.add_summary("zero_count",
                      mpz_class(static_cast<unsigned long>(r.rows.size())));
        emit(r, opts, "csv", out);
    });

    // search-factorial --max M [--signed|--unsigned].
    std::uint64_t sf_max = 0;
    bool sf_signed = false, sf_unsigned = false;
    auto* sf_cmd = app.add_subcommand("search-factorial",
                                      "Solve |tau(m!)| = n! over m <= max");
    sf_cmd->add_option("--max", sf_max, "Largest m")
        ->required()
        ->check(CLI::Range(std::uint64_t(1), std::uint64_t(100000)));
    auto* sf_sflag = sf_cmd->add_flag("--signed", sf_signed,
                                      "Require tau(m!) = n! with matching sign");
    sf_cmd->add_flag("--unsigned", sf_unsigned, "Match |tau(m!)| = n! (default)")
        ->excludes(sf_sflag);
    add_output_opts(sf_cmd, opts);
    add_cache_opt(sf_cmd, opts);
    sf_cmd->callback([&] {
        TauTable table = table_for(sf_max, opts.cache_path);
        FactorialMode mode =
            sf_signed ? FactorialMode::kSigned : FactorialMode::kUnsigned;
        emit(search_factorial(table, sf_max, mode), opts, "csv", out);
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const OutOfRangeError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const CacheFormatError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const VanishingTauError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace taulab
