#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "taulab/factorint.hpp"

namespace taulab {

// Recurrence parameters for u_r = tau(2^r): characteristic polynomial
// lambda^2 - trace*lambda + norm with trace = alpha+beta, norm = alpha*beta.
// The roots are complex conjugates and are never materialized.
struct LucasParams {
    long trace = -24;
    long norm = 2048;
};

// u_0..u_max_r with u_0 = 1, u_1 = -24, u_{r+2} = -24 u_{r+1} - 2048 u_r.
std::vector<mpz_class> lucas_terms(std::size_t max_r);

// True iff u_r divides u_s (0 <= r <= s). Guaranteed whenever r+1 | s+1.
bool check_divisibility(std::size_t r, std::size_t s, const std::vector<mpz_class>& terms);

// Moebius function for small n (exact trial-division factorization).
int mobius(std::uint64_t n);

// C_n = Phi_n(alpha, beta) as the Moebius product prod_{d|n} U_d^{mu(n/d)}
// over U_d = u_{d-1}, evaluated as an exact ratio that must reduce to an
// integer. A non-integral product indicates a bug and throws InternalError.
mpz_class cyclotomic_value(std::uint64_t n, const std::vector<mpz_class>& terms);

// C_n with its primitive split: b_part collects the maximal prime-power
// divisors q^e of |C_n| with q = +-1 (mod n); a_part is the cofactor C_n / b_part.
struct CycloPart {
    std::uint64_t n = 0;
    mpz_class term;        // U_n = u_{n-1} = tau(2^{n-1})
    mpz_class cyclo;       // C_n = Phi_n(alpha, beta)
    mpz_class a_part;      // C_n / b_part
    mpz_class b_part;      // positive; every prime factor is +-1 (mod n)
    std::vector<mpz_class> primitive_primes;  // known primes of C_n new to the sequence
    bool a_within_six_n = false;  // |a_part| <= 6n, reported rather than asserted
    bool complete = true;

    bool operator==(const CycloPart&) const = default;
};

CycloPart split_ab(std::uint64_t n, const std::vector<mpz_class>& terms,
                   std::uint64_t budget = kDefaultFactorBudget);

// Smallest known prime dividing u_r but none of u_1..u_{r-1}. With an
// incomplete factorization the result is empirical: a found prime is genuine,
// but absence is unproven.
struct PrimitiveDivisor {
    std::optional<mpz_class> prime;
    bool complete = true;
};

PrimitiveDivisor primitive_divisor(std::size_t r, const std::vector<mpz_class>& terms,
                                   std::uint64_t budget = kDefaultFactorBudget);

// nu(m) = sum_{i>=1} floor(m / 2^i), the exponent of 2 in m!. Satisfies
// nu(m) > m/2 for m >= 4.
std::uint64_t nu_factorial_2adic(std::uint64_t m);

// u_k mod m by stepping the recurrence k times. Exact companion for the
// matrix-power route below; meant for k small enough to iterate.
mpz_class lucas_term_mod_stepped(const mpz_class& k, const mpz_class& m);

// u_k mod m by binary powering of the companion matrix, O(log k) steps.
mpz_class lucas_term_mod_pow(const mpz_class& k, const mpz_class& m);

// Dispatches between the two routes on a step-count threshold.
mpz_class lucas_term_mod(const mpz_class& k, const mpz_class& m);

}  // namespace taulab
