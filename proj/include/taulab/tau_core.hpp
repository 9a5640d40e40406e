#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "taulab/report.hpp"

namespace taulab {

// Exact values tau(1..max_n). values has size max_n + 1 with values[0]
// unused so that values[n] = tau(n). Immutable after construction; safe
// for concurrent readers.
struct TauTable {
    std::uint64_t max_n = 0;
    std::vector<mpz_class> values;

    // tau(n) with bounds checking; throws OutOfRangeError outside 1..max_n.
    const mpz_class& at(std::uint64_t n) const;
};

// Sparse expansion of prod_{m>=1} (1 - x^m)^3 truncated below `len`:
// by Jacobi's identity this equals sum_{k>=0} (-1)^k (2k+1) x^{k(k+1)/2},
// so only O(sqrt(len)) terms exist. Returned as (degree, coefficient).
std::vector<std::pair<std::uint64_t, std::int64_t>> eta_cube_series(std::uint64_t len);

// Exact (poly mod x^out_len)^2 for signed big-integer coefficients.
// Implemented by Kronecker substitution: coefficients are packed into one
// big integer which GMP squares; callers never see the packing.
std::vector<mpz_class> series_square(const std::vector<mpz_class>& poly,
                                     std::uint64_t out_len);

// tau(1..max_n) from the defining expansion X * prod (1 - X^n)^24:
// the cube series is squared three times (3 -> 6 -> 12 -> 24) and the
// final X shift is an index shift. Throws ResourceError if the
// coefficient array cannot be allocated.
TauTable build_tau_table(std::uint64_t max_n);

// tau(p^r) from tau_p = tau(p) via the Hecke recurrence
// tau(p^{r+2}) = tau(p^{r+1}) tau(p) - p^11 tau(p^r).
mpz_class tau_prime_power(const mpz_class& tau_p, const mpz_class& p, std::uint64_t r);

// tau(n) assembled multiplicatively: factor n by unlimited trial division,
// read tau(p) off the table, extend to prime powers with the recurrence.
// Throws OutOfRangeError if a prime factor of n exceeds table.max_n.
mpz_class tau_at(const mpz_class& n, const TauTable& table);

// Exhaustive invariant check over the table: base values, multiplicativity
// on coprime splits, the Hecke recurrence at prime powers, and the Deligne
// bound tau(p)^2 <= 4 p^11 at primes. Violations are report rows, not errors.
Report verify_table(const TauTable& table);

// Cache file: "TAUTABLE v1 max=<N>\n" then "<n>\t<tau(n)>\n" for n = 1..N.
// save writes exactly this; load re-verifies the header, index contiguity,
// and the base values before accepting, throwing CacheFormatError otherwise.
void save_tau_table(const TauTable& table, const std::string& path);
TauTable load_tau_table(const std::string& path);

}  // namespace taulab
