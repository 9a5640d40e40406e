#include "taulab/factorint.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <new>
#include <string>

#include "taulab/errors.hpp"

namespace taulab {

namespace {

// splitmix64: seed mixer for rho parameters and wide Miller-Rabin bases.
// Everything random-looking in this module is derived from the integer
// being processed, so results are pure functions of (n, budget).
std::uint64_t mix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t seed_from(const mpz_class& n) {
    std::uint64_t h = 0x243f6a8885a308d3ULL ^ mpz_size(n.get_mpz_t());
    for (std::size_t i = 0; i < mpz_size(n.get_mpz_t()); ++i) {
        h ^= static_cast<std::uint64_t>(mpz_getlimbn(n.get_mpz_t(), i));
        mix64(h);
    }
    return h;
}

const std::vector<std::uint64_t>& trial_primes() {
    static const std::vector<std::uint64_t> primes = primes_up_to(kTrialDivisionBound);
    return primes;
}

// One strong-pseudoprime round. n odd, n - 1 = d * 2^s.
bool strong_probable_prime(const mpz_class& n, const mpz_class& nm1, const mpz_class& d,
                           mp_bitcnt_t s, const mpz_class& base) {
    mpz_class x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (mp_bitcnt_t i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

// One Brent-rho attempt on composite n with f(x) = x^2 + c, batching |x - y|
// products so a gcd is taken every 128 steps. Each f evaluation costs one
// unit of budget. Returns a nontrivial factor, or 0 on budget exhaustion /
// a degenerate cycle.
mpz_class rho_attempt(const mpz_class& n, unsigned long c, unsigned long x_start,
                      std::uint64_t& budget_left) {
    mpz_class y(x_start), x, ys, q(1), g(1), t, diff;
    const unsigned long batch = 128;
    unsigned long r = 1;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) {
            if (budget_left == 0) return 0;
            --budget_left;
            t = y * y + c;
            mpz_mod(y.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        }
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long lim = std::min(batch, r - k);
            unsigned long done = 0;
            for (; done < lim; ++done) {
                if (budget_left == 0) break;
                --budget_left;
                t = y * y + c;
                mpz_mod(y.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
                diff = x - y;
                t = q * diff;
                mpz_mod(q.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += done;
            if (done < lim && g == 1) return 0;
        }
        r *= 2;
    }
    if (g == n) {
        // The whole batch collapsed; replay singly from the saved point.
        g = 1;
        while (g == 1) {
            t = ys * ys + c;
            mpz_mod(ys.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            diff = x - ys;
            if (diff == 0) return 0;  // true cycle, try another c
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (g == n) return 0;
    }
    return g;
}

// Smallest prime k >= 2 with n = r^k exact, writing r; 0 if n is no power.
unsigned perfect_power_unwrap(const mpz_class& n, mpz_class& root) {
    if (!mpz_perfect_power_p(n.get_mpz_t())) return 0;
    std::size_t maxk = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned k = 2; k <= maxk; ++k) {
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return k;
    }
    return 0;  // unreachable: mpz_perfect_power_p said yes
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t y) {
    std::vector<std::uint64_t> out;
    if (y < 2) return out;
    std::vector<bool> composite(y + 1, false);
    for (std::uint64_t p = 2; p * p <= y; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t m = p * p; m <= y; m += p) composite[m] = true;
    }
    for (std::uint64_t p = 2; p <= y; ++p)
        if (!composite[p]) out.push_back(p);
    return out;
}

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    static const unsigned long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long p : small) {
        if (mpz_cmp_ui(n.get_mpz_t(), p) == 0) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    mpz_class nm1 = n - 1;
    mp_bitcnt_t s = mpz_scan1(nm1.get_mpz_t(), 0);
    mpz_class d = nm1 >> s;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // The twelve bases up to 37 are a correct deterministic test for
        // everything below 2^64 (their first pseudoprime is past 3*10^24).
        for (unsigned long p : small) {
            if (!strong_probable_prime(n, nm1, d, s, mpz_class(p))) return false;
        }
        return true;
    }
    std::uint64_t state = seed_from(n);
    for (int round = 0; round < 24; ++round) {
        mpz_class base = mpz_class(2) + mix64(state);  // < n since n > 2^64
        if (!strong_probable_prime(n, nm1, d, s, base)) return false;
    }
    return true;
}

mpz_class Factorization::reassemble() const {
    mpz_class m = sign;
    for (const auto& [p, e] : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        m *= pe;
    }
    if (cofactor) m *= *cofactor;
    return m;
}

Factorization factor(const mpz_class& n, std::uint64_t budget) {
    if (n == 0) throw OutOfRangeError("factor: n must be nonzero");
    Factorization out;
    out.n = n;
    out.sign = sgn(n) < 0 ? -1 : 1;
    mpz_class m = abs(n);
    if (m == 1) return out;

    std::map<mpz_class, unsigned> found;
    for (std::uint64_t p : trial_primes()) {
        if (mpz_cmp_ui(m.get_mpz_t(), 1) == 0) break;
        if (mpz_cmp_ui(m.get_mpz_t(), p * p) < 0) break;  // remainder is prime
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_class pz(static_cast<unsigned long>(p));
            unsigned e = static_cast<unsigned>(
                mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
            found[pz] += e;
        }
    }

    // Split whatever trial division left, tracking multiplicities so a
    // perfect-power unwrap factors its base only once.
    std::vector<std::pair<mpz_class, unsigned>> pending;
    std::vector<std::pair<mpz_class, unsigned>> stuck;
    if (m != 1) pending.emplace_back(m, 1);
    while (!pending.empty()) {
        auto [c, mult] = pending.back();
        pending.pop_back();
        if (is_prime(c)) {
            found[c] += mult;
            continue;
        }
        mpz_class root;
        if (unsigned k = perfect_power_unwrap(c, root)) {
            pending.emplace_back(root, mult * k);
            continue;
        }
        std::uint64_t left = budget;
        std::uint64_t state = seed_from(c);
        mpz_class g;
        while (left > 0) {
            unsigned long cc = 1 + static_cast<unsigned long>(mix64(state) % 4096);
            unsigned long x0 = 2 + static_cast<unsigned long>(mix64(state) % 4096);
            g = rho_attempt(c, cc, x0, left);
            if (g > 1) break;
        }
        if (g > 1 && g < c) {
            pending.emplace_back(g, mult);
            pending.emplace_back(c / g, mult);
        } else {
            stuck.emplace_back(c, mult);
        }
    }

    for (auto& [p, e] : found) out.factors.emplace_back(p, e);
    if (!stuck.empty()) {
        mpz_class co(1);
        for (const auto& [c, mult] : stuck) {
            mpz_class ce;
            mpz_pow_ui(ce.get_mpz_t(), c.get_mpz_t(), mult);
            co *= ce;
        }
        out.cofactor = co;
        out.complete = false;
    }
    return out;
}

Factorization factor_trial_complete(const mpz_class& n) {
    if (n == 0) throw OutOfRangeError("factor_trial_complete: n must be nonzero");
    Factorization out;
    out.n = n;
    out.sign = sgn(n) < 0 ? -1 : 1;
    mpz_class m = abs(n);
    auto strip = [&](unsigned long d) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            mpz_class dz(d);
            unsigned e = static_cast<unsigned>(
                mpz_remove(m.get_mpz_t(), m.get_mpz_t(), dz.get_mpz_t()));
            out.factors.emplace_back(dz, e);
        }
    };
    strip(2);
    strip(3);
    for (mpz_class d = 5; d * d <= m; d += 2) {
        if (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
            unsigned e = static_cast<unsigned>(
                mpz_remove(m.get_mpz_t(), m.get_mpz_t(), d.get_mpz_t()));
            out.factors.emplace_back(d, e);
        }
    }
    if (m != 1) out.factors.emplace_back(m, 1);
    return out;
}

namespace {

bool conventional(const mpz_class& n) {
    return n == 0 || n == 1 || n == -1;
}

}  // namespace

Budgeted<mpz_class> largest_prime_factor(const mpz_class& n, std::uint64_t budget) {
    if (conventional(n)) return {mpz_class(1), true};
    Factorization f = factor(n, budget);
    mpz_class p = f.factors.empty() ? mpz_class(1) : f.factors.back().first;
    return {p, f.complete};
}

Budgeted<std::uint64_t> omega(const mpz_class& n, std::uint64_t budget) {
    if (conventional(n)) return {0, true};
    Factorization f = factor(n, budget);
    return {f.factors.size(), f.complete};
}

Budgeted<mpz_class> radical(const mpz_class& n, std::uint64_t budget) {
    if (conventional(n)) return {mpz_class(1), true};
    Factorization f = factor(n, budget);
    mpz_class q(1);
    for (const auto& [p, e] : f.factors) q *= p;
    return {q, f.complete};
}

bool is_smooth(const mpz_class& n, double a_exponent) {
    if (n < 2) throw OutOfRangeError("is_smooth: requires n >= 2");
    Factorization f = factor_trial_complete(n);
    const mpz_class& p = f.factors.back().first;
    double threshold = std::pow(mpz_log(n), a_exponent);
    return mpz_cmp_d(p.get_mpz_t(), threshold) <= 0;
}

std::uint64_t count_smooth(std::uint64_t z, double a_exponent) {
    if (z < 2) throw OutOfRangeError("count_smooth: requires z >= 2");
    if (z > (std::uint64_t(1) << 31))
        throw ResourceError("count_smooth: census bound too large to sieve");
    std::vector<std::uint32_t> gpf;
    try {
        gpf.assign(z + 1, 0);
    } catch (const std::bad_alloc&) {
        throw ResourceError("count_smooth: sieve allocation failed");
    }
    for (std::uint64_t p = 2; p <= z; ++p) {
        if (gpf[p] != 0) continue;
        for (std::uint64_t m = p; m <= z; m += p) gpf[m] = static_cast<std::uint32_t>(p);
    }
    std::uint64_t count = 0;
    for (std::uint64_t n = 2; n <= z; ++n) {
        // Same comparison semantics as is_smooth: both sides are exact in
        // double range here, and the threshold comes from the same code path.
        double threshold = std::pow(mpz_log(mpz_class(static_cast<unsigned long>(n))),
                                    a_exponent);
        if (static_cast<double>(gpf[n]) <= threshold) ++count;
    }
    return count;
}

double mpz_log(const mpz_class& n) {
    if (n == 0) throw OutOfRangeError("mpz_log: log of zero");
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(exp2) * M_LN2;
}

}  // namespace taulab
