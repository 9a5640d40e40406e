#include "taulab/sunit_lab.hpp"

#include <gmp.h>

#include <algorithm>
#include <set>

#include "taulab/errors.hpp"

namespace taulab {

SUnitWitness sunit_witness(const mpz_class& p, const TauTable& table) {
    if (p < 2 || !mpz_fits_ulong_p(p.get_mpz_t()))
        throw OutOfRangeError("sunit_witness: p outside table range");
    SUnitWitness w;
    w.p = p;
    w.tau_p = table.at(p.get_ui());
    if (w.tau_p == 0)
        throw VanishingTauError("tau(" + p.get_str() + ") = 0; witness undefined");
    w.tau_p2 = tau_prime_power(w.tau_p, p, 2);
    w.tau_p3 = tau_prime_power(w.tau_p, p, 3);

    mpz_class tau_sq = w.tau_p * w.tau_p;
    mpz_class tau_cb = tau_sq * w.tau_p;
    w.u = mpq_class(2 * w.tau_p2) / mpq_class(tau_sq);
    w.v = mpq_class(w.tau_p3) / mpq_class(tau_cb);

    mpz_lcm(w.denom.get_mpz_t(), w.u.get_den().get_mpz_t(), w.v.get_den().get_mpz_t());
    mpq_class e = w.u * mpq_class(w.denom);
    mpq_class f = w.v * mpq_class(w.denom);
    if (e.get_den() != 1 || f.get_den() != 1)
        throw InternalError("sunit_witness: denominator clearing failed at p=" +
                            p.get_str());
    w.e_num = e.get_num();
    w.f_num = f.get_num();
    return w;
}

bool check_witness(const SUnitWitness& w) {
    // u - v = 1 exactly.
    if (w.u - w.v != 1) return false;
    // E - F = D.
    if (w.e_num - w.f_num != w.denom) return false;
    // Pairwise coprimality of the cleared triple.
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), w.e_num.get_mpz_t(), w.f_num.get_mpz_t());
    if (g != 1) return false;
    mpz_gcd(g.get_mpz_t(), w.denom.get_mpz_t(), w.e_num.get_mpz_t());
    if (g != 1) return false;
    mpz_gcd(g.get_mpz_t(), w.denom.get_mpz_t(), w.f_num.get_mpz_t());
    if (g != 1) return false;
    // E - 2F = 2 D p^11 / tau(p)^2: an exact integer, and at least p.
    mpz_class p11, tau_sq = w.tau_p * w.tau_p;
    mpz_pow_ui(p11.get_mpz_t(), w.p.get_mpz_t(), 11);
    mpz_class numerator = 2 * w.denom * p11;
    if (!mpz_divisible_p(numerator.get_mpz_t(), tau_sq.get_mpz_t())) return false;
    mpz_class closed = numerator / tau_sq;
    if (w.e_num - 2 * w.f_num != closed) return false;
    if (closed < w.p) return false;
    // Size bounds: 0 < D <= 4 p^11, max(|E|, |F|) <= 12 p^22.
    if (w.denom <= 0 || w.denom > 4 * p11) return false;
    mpz_class p22 = p11 * p11;
    if (std::max(abs(w.e_num), abs(w.f_num)) > 12 * p22) return false;
    return true;
}

bool check_p6(const mpz_class& p, const mpz_class& tau_p) {
    mpz_class p6;
    mpz_pow_ui(p6.get_mpz_t(), p.get_mpz_t(), 6);
    return mpz_divisible_p(tau_p.get_mpz_t(), p6.get_mpz_t()) == 0;
}

std::vector<std::pair<mpz_class, mpz_class>> distinctness_check(
    const std::vector<mpz_class>& primes, const TauTable& table) {
    std::vector<std::pair<mpq_class, mpz_class>> points;
    points.reserve(primes.size());
    for (const mpz_class& p : primes) {
        SUnitWitness w = sunit_witness(p, table);
        points.emplace_back(w.u, p);
    }
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) {
                  int c = cmp(a.first, b.first);
                  return c != 0 ? c < 0 : a.second < b.second;
              });
    std::vector<std::pair<mpz_class, mpz_class>> collisions;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i - 1].first == points[i].first)
            collisions.emplace_back(points[i - 1].second, points[i].second);
    return collisions;
}

namespace {

// Accumulates the distinct known primes of several factored integers.
void collect_primes(const Factorization& f, std::set<mpz_class>& primes) {
    for (const auto& [q, e] : f.factors) primes.insert(q);
}

}  // namespace

Budgeted<mpz_class> triple_lpf(const mpz_class& p, const TauTable& table,
                               std::uint64_t budget) {
    SUnitWitness w = sunit_witness(p, table);
    Budgeted<mpz_class> a = largest_prime_factor(w.tau_p, budget);
    Budgeted<mpz_class> b = largest_prime_factor(w.tau_p2, budget);
    Budgeted<mpz_class> c = largest_prime_factor(w.tau_p3, budget);
    Budgeted<mpz_class> tau_lpf{std::max({a.value, b.value, c.value}),
                                a.complete && b.complete && c.complete};
    Budgeted<mpz_class> l = def_lpf(p, table, budget);
    if (tau_lpf.complete && l.complete && l.value > tau_lpf.value)
        throw InternalError("triple_lpf: P(DEF) exceeds P(tau triple) at p=" +
                            p.get_str());
    return tau_lpf;
}

Budgeted<mpz_class> def_lpf(const mpz_class& p, const TauTable& table,
                            std::uint64_t budget) {
    SUnitWitness w = sunit_witness(p, table);
    Budgeted<mpz_class> a = largest_prime_factor(w.denom, budget);
    Budgeted<mpz_class> b = largest_prime_factor(w.e_num, budget);
    Budgeted<mpz_class> c = largest_prime_factor(w.f_num, budget);
    return {std::max({a.value, b.value, c.value}),
            a.complete && b.complete && c.complete};
}

Budgeted<mpz_class> def_radical(const mpz_class& p, const TauTable& table,
                                std::uint64_t budget) {
    SUnitWitness w = sunit_witness(p, table);
    Factorization fd = factor(w.denom, budget);
    Factorization fe = factor(w.e_num, budget);
    Factorization ff = factor(w.f_num, budget);
    std::set<mpz_class> primes;
    collect_primes(fd, primes);
    collect_primes(fe, primes);
    collect_primes(ff, primes);
    mpz_class q(1);
    for (const mpz_class& prime : primes) q *= prime;
    return {q, fd.complete && fe.complete && ff.complete};
}

}  // namespace taulab
