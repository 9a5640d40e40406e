#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "taulab/factorint.hpp"
#include "taulab/tau_core.hpp"

namespace taulab {

// For prime p with tau(p) != 0, the pair
//   u = 2 tau(p^2) / tau(p)^2,  v = tau(p^3) / tau(p)^3
// satisfies u - v = 1 exactly, so (u, v) is a unit solution over the prime
// set of 2 p tau(p). Clearing denominators: D = lcm of the reduced
// denominators, E = D*u, F = D*v.
struct SUnitWitness {
    mpz_class p;
    mpz_class tau_p;
    mpz_class tau_p2;
    mpz_class tau_p3;
    mpq_class u;      // canonical (reduced, positive denominator)
    mpq_class v;
    mpz_class denom;  // D
    mpz_class e_num;  // E
    mpz_class f_num;  // F

    bool operator==(const SUnitWitness&) const = default;
};

// Builds the witness for prime p <= table.max_n. Throws VanishingTauError
// when tau(p) = 0 (no such prime is known) so scans must skip explicitly.
SUnitWitness sunit_witness(const mpz_class& p, const TauTable& table);

// Verifies every identity and bound the construction promises:
//   u - v = 1;  E - F = D;  gcd(E,F) = gcd(D,E) = gcd(D,F) = 1;
//   E - 2F = 2 D p^11 / tau(p)^2, an integer >= p;
//   0 < D <= 4 p^11;  max(|E|,|F|) <= 12 p^22.
// Returns true iff all hold.
bool check_witness(const SUnitWitness& w);

// True iff p^6 does not divide tau(p). Expected true always: for p >= 5 a
// counterexample would contradict tau(p)^2 <= 4 p^11, and p = 2, 3 are
// direct checks.
bool check_p6(const mpz_class& p, const mpz_class& tau_p);

// All pairs of distinct primes whose u-values 2 tau(p^2)/tau(p)^2 coincide.
// Expected empty: distinct odd primes must give distinct solutions.
std::vector<std::pair<mpz_class, mpz_class>> distinctness_check(
    const std::vector<mpz_class>& primes, const TauTable& table);

// P(tau(p) tau(p^2) tau(p^3)). Also computes l = P(D*E*F) and, when both
// factorizations are complete, checks l <= the returned value (their prime
// supports are nested), throwing InternalError on violation.
Budgeted<mpz_class> triple_lpf(const mpz_class& p, const TauTable& table,
                               std::uint64_t budget = kDefaultFactorBudget);

// l = P(D*E*F) on its own, for report columns.
Budgeted<mpz_class> def_lpf(const mpz_class& p, const TauTable& table,
                            std::uint64_t budget = kDefaultFactorBudget);

// Q(D*E*F): the radical of the cleared-denominator triple product.
Budgeted<mpz_class> def_radical(const mpz_class& p, const TauTable& table,
                                std::uint64_t budget = kDefaultFactorBudget);

}  // namespace taulab
