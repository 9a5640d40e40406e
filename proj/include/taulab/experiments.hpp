#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "taulab/factorint.hpp"
#include "taulab/report.hpp"
#include "taulab/tau_core.hpp"

namespace taulab {

// Largest-prime-factor scan: one row per prime p <= y with tau(p) != 0
// recording P(tau(p) tau(p^2)) against the threshold (ln p)^a. Summary
// reports the satisfied fraction over rows with complete factorizations;
// incomplete rows are excluded from the fraction and counted.
Report scan_thm21(const TauTable& table, std::uint64_t y, double a = 33.0 / 31.0,
                  std::uint64_t budget = kDefaultFactorBudget,
                  unsigned jobs = 1);

// Prime-support census: with y = floor(x^(1/3)), takes the union of the
// prime supports of tau(p) tau(p^2) tau(p^3) over odd primes p <= y with
// tau(p) != 0 (the p = 2 exclusion is recorded in the parameters). Summary
// compares s = |union| against ln(x) / (6 ln 7); the comparison is marked
// vacuous when the odd-prime set is empty.
Report scan_thm22(const TauTable& table, std::uint64_t x,
                  std::uint64_t budget = kDefaultFactorBudget,
                  unsigned jobs = 1);

// Witness-triple scan: one row per prime p <= y with tau(p) != 0 recording
// P(tau(p) tau(p^2) tau(p^3)), l = P(D*E*F), t = omega of the tau triple,
// Q(D*E*F), and the reference value ln ln p * ln ln ln p / ln ln ln ln p
// (undefined whenever any nested logarithm is <= 0, i.e. at every desk
// scale). Inequalities are reported, never asserted, except l <= P(triple)
// which is exact on complete rows.
Report scan_thm23(const TauTable& table, std::uint64_t y,
                  std::uint64_t budget = kDefaultFactorBudget,
                  unsigned jobs = 1);

// |tau(m!)| = n! search. Signed mode demands tau(m!) = n! exactly (so
// tau(m!) must be positive); unsigned mode matches absolute values, which
// admits the (m, n) = (2, 4) solution tau(2) = -24, 4! = 24.
enum class FactorialMode { kSigned, kUnsigned };

// Scans 1 <= m <= max_m. tau(m!) is assembled from the table's tau(p) for
// p <= max_m and the prime-power recurrence (m! needs no table entry), so
// the table precondition is only max_n >= max_m. Candidate n enumerated by
// walking factorials until n! exceeds |tau(m!)|.
Report search_factorial(const TauTable& table, std::uint64_t max_m, FactorialMode mode);

// #{n <= y : tau(n) = 0}. Expected 0 at every reachable scale.
std::uint64_t count_tau_zero(const TauTable& table, std::uint64_t y);

// With k = lcm(2..s+1) - 1, every r <= s has r+1 | k+1, so u_r | u_k must
// hold for all of them. Checked via u_k mod |u_r| without materializing
// u_k: the recurrence is stepped mod |u_r| when k is small, else the
// companion matrix is binary-powered mod |u_r|.
Report check_divisibility_chain(std::uint64_t s);

}  // namespace taulab
