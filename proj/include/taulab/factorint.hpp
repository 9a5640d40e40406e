#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace taulab {

// Effort budget: maximum rho iterations spent per composite. Overridable via
// the CLI --budget flag and the TAULAB_FACTOR_BUDGET environment variable.
inline constexpr std::uint64_t kDefaultFactorBudget = 10'000'000;

// All primes below this bound are removed by trial division before the
// primality test and rho stages run.
inline constexpr std::uint64_t kTrialDivisionBound = 1'000'000;

// A value together with a flag saying whether the budgeted factorization
// behind it completed. When false the value is a bound from the known part.
template <class T>
struct Budgeted {
    T value;
    bool complete = true;

    bool operator==(const Budgeted&) const = default;
};

// Exact factorization of a nonzero integer under an effort budget.
struct Factorization {
    mpz_class n;                                          // the input
    int sign = 1;                                         // +1 or -1
    std::vector<std::pair<mpz_class, unsigned>> factors;  // primes strictly increasing
    std::optional<mpz_class> cofactor;                    // composite remainder, > 1
    bool complete = true;                                 // <=> no cofactor

    // sign * prod p^e * (cofactor or 1); equals n by construction.
    mpz_class reassemble() const;
};

std::vector<std::uint64_t> primes_up_to(std::uint64_t y);

// Deterministic Miller-Rabin below 2^64; above that, 24 strong-pseudoprime
// rounds with witnesses derived deterministically from n.
bool is_prime(const mpz_class& n);

// Trial division by all primes <= kTrialDivisionBound, primality testing,
// perfect-power unwrapping, then Brent-rho seeded from n itself so the result
// is a pure function of (n, budget).
Factorization factor(const mpz_class& n, std::uint64_t budget = kDefaultFactorBudget);

// Unbounded trial division up to sqrt(n); always complete. For callers whose
// inputs are small enough that exactness matters more than effort limits.
Factorization factor_trial_complete(const mpz_class& n);

// P(n): largest prime factor, with P(0) = P(+-1) = 1. When incomplete the
// value is a lower bound (a cofactor with unknown primes remained).
Budgeted<mpz_class> largest_prime_factor(const mpz_class& n,
                                         std::uint64_t budget = kDefaultFactorBudget);

// omega(n): number of distinct prime factors, omega(0) = omega(+-1) = 0.
Budgeted<std::uint64_t> omega(const mpz_class& n,
                              std::uint64_t budget = kDefaultFactorBudget);

// Q(n): largest square-free factor, Q(0) = Q(+-1) = 1.
Budgeted<mpz_class> radical(const mpz_class& n,
                            std::uint64_t budget = kDefaultFactorBudget);

// True iff P(n) <= (log n)^a_exponent, natural log. Requires n >= 2; the
// factorization is exact (unbounded trial division), never budget-limited.
bool is_smooth(const mpz_class& n, double a_exponent);

// #{2 <= n <= z : is_smooth(n, a_exponent)} via a largest-prime-factor sieve.
std::uint64_t count_smooth(std::uint64_t z, double a_exponent);

// Natural log of |n| for n != 0, usable far beyond double range.
double mpz_log(const mpz_class& n);

}  // namespace taulab
