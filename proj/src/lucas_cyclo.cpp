#include "taulab/lucas_cyclo.hpp"

#include <gmp.h>

#include <string>

#include "taulab/errors.hpp"

namespace taulab {

std::vector<mpz_class> lucas_terms(std::size_t max_r) {
    if (max_r < 1) throw OutOfRangeError("lucas_terms: max_r must be >= 1");
    std::vector<mpz_class> u(max_r + 1);
    u[0] = 1;
    u[1] = -24;
    for (std::size_t r = 2; r <= max_r; ++r) u[r] = -24 * u[r - 1] - 2048 * u[r - 2];
    return u;
}

bool check_divisibility(std::size_t r, std::size_t s, const std::vector<mpz_class>& terms) {
    if (r > s || s >= terms.size())
        throw OutOfRangeError("check_divisibility: need r <= s within terms");
    if (terms[r] == 0) return terms[s] == 0;
    return mpz_divisible_p(terms[s].get_mpz_t(), terms[r].get_mpz_t()) != 0;
}

int mobius(std::uint64_t n) {
    if (n == 0) throw OutOfRangeError("mobius: n must be positive");
    if (n == 1) return 1;
    Factorization f = factor_trial_complete(mpz_class(static_cast<unsigned long>(n)));
    int sign = 1;
    for (const auto& [p, e] : f.factors) {
        if (e >= 2) return 0;
        sign = -sign;
    }
    return sign;
}

mpz_class cyclotomic_value(std::uint64_t n, const std::vector<mpz_class>& terms) {
    if (n < 2) throw OutOfRangeError("cyclotomic_value: n must be >= 2");
    if (terms.size() < n)
        throw OutOfRangeError("cyclotomic_value: terms must cover u_0..u_{n-1}");
    mpq_class acc(1);
    for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        int mu = mobius(n / d);
        if (mu == 0) continue;
        const mpz_class& U = terms[d - 1];  // U_d = u_{d-1}
        if (U == 0)
            throw InternalError("cyclotomic_value: vanishing term u_" +
                                std::to_string(d - 1));
        if (mu == 1)
            acc *= mpq_class(U);
        else
            acc /= mpq_class(U);
    }
    acc.canonicalize();
    if (acc.get_den() != 1)
        throw InternalError("cyclotomic_value: non-integral product at n=" +
                            std::to_string(n));
    return acc.get_num();
}

CycloPart split_ab(std::uint64_t n, const std::vector<mpz_class>& terms,
                   std::uint64_t budget) {
    CycloPart part;
    part.n = n;
    part.term = terms.at(n - 1);
    part.cyclo = cyclotomic_value(n, terms);
    Factorization f = factor(part.cyclo, budget);
    part.complete = f.complete;
    part.b_part = 1;
    mpz_class residue;
    for (const auto& [q, e] : f.factors) {
        mpz_mod_ui(residue.get_mpz_t(), q.get_mpz_t(), n);
        if (residue == 1 || mpz_cmp_ui(residue.get_mpz_t(), n - 1) == 0) {
            mpz_class qe;
            mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), e);
            part.b_part *= qe;
        }
        // A prime of C_n is primitive if it divides no earlier sequence term.
        bool fresh = true;
        for (std::uint64_t j = 1; j + 1 < n && fresh; ++j)
            if (mpz_divisible_p(terms[j].get_mpz_t(), q.get_mpz_t())) fresh = false;
        if (fresh) part.primitive_primes.push_back(q);
    }
    part.a_part = part.cyclo / part.b_part;
    mpz_class six_n = mpz_class(6) * static_cast<unsigned long>(n);
    part.a_within_six_n = abs(part.a_part) <= six_n;
    return part;
}

PrimitiveDivisor primitive_divisor(std::size_t r, const std::vector<mpz_class>& terms,
                                   std::uint64_t budget) {
    if (r < 1 || r >= terms.size())
        throw OutOfRangeError("primitive_divisor: r outside terms");
    Factorization f = factor(terms[r], budget);
    PrimitiveDivisor out;
    out.complete = f.complete;
    for (const auto& [q, e] : f.factors) {  // ascending, so first hit is smallest
        bool fresh = true;
        for (std::size_t j = 1; j < r && fresh; ++j)
            if (mpz_divisible_p(terms[j].get_mpz_t(), q.get_mpz_t())) fresh = false;
        if (fresh) {
            out.prime = q;
            break;
        }
    }
    return out;
}

std::uint64_t nu_factorial_2adic(std::uint64_t m) {
    if (m < 1) throw OutOfRangeError("nu_factorial_2adic: m must be >= 1");
    std::uint64_t sum = 0;
    for (std::uint64_t x = m / 2; x > 0; x /= 2) sum += x;
    return sum;
}

mpz_class lucas_term_mod_stepped(const mpz_class& k, const mpz_class& m) {
    if (m <= 0) throw OutOfRangeError("lucas_term_mod: modulus must be positive");
    if (k < 0 || !mpz_fits_ulong_p(k.get_mpz_t()))
        throw OutOfRangeError("lucas_term_mod_stepped: k too large to step");
    std::uint64_t steps = k.get_ui();
    mpz_class prev, cur, next;
    mpz_mod(prev.get_mpz_t(), mpz_class(1).get_mpz_t(), m.get_mpz_t());
    if (steps == 0) return prev;
    mpz_mod(cur.get_mpz_t(), mpz_class(-24).get_mpz_t(), m.get_mpz_t());
    for (std::uint64_t i = 2; i <= steps; ++i) {
        next = -24 * cur - 2048 * prev;
        mpz_mod(next.get_mpz_t(), next.get_mpz_t(), m.get_mpz_t());
        prev.swap(cur);
        cur.swap(next);
    }
    return cur;
}

mpz_class lucas_term_mod_pow(const mpz_class& k, const mpz_class& m) {
    if (m <= 0) throw OutOfRangeError("lucas_term_mod: modulus must be positive");
    if (k < 0) throw OutOfRangeError("lucas_term_mod_pow: k must be >= 0");
    // Companion matrix M = [[-24, -2048], [1, 0]] acting on (u_{r+1}, u_r):
    // M^k (u_1, u_0) = (u_{k+1}, u_k). Square-and-multiply over the bits of k.
    mpz_class a, b, c, d;  // current power [[a, b], [c, d]], starts as identity
    a = 1;
    d = 1;
    mpz_class ma, mb;  // M's top row mod m (bottom row is (1, 0))
    mpz_mod(ma.get_mpz_t(), mpz_class(-24).get_mpz_t(), m.get_mpz_t());
    mpz_mod(mb.get_mpz_t(), mpz_class(-2048).get_mpz_t(), m.get_mpz_t());
    mpz_class sa, sb, sc, sd, t1, t2;
    mpz_class base_a = ma, base_b = mb, base_c = 1 % m, base_d = 0;
    std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    if (k == 0) bits = 0;
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(k.get_mpz_t(), i)) {
            // (a b; c d) *= base
            t1 = a * base_a + b * base_c;
            t2 = a * base_b + b * base_d;
            mpz_mod(t1.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
            mpz_mod(t2.get_mpz_t(), t2.get_mpz_t(), m.get_mpz_t());
            a.swap(t1);
            b.swap(t2);
            t1 = c * base_a + d * base_c;
            t2 = c * base_b + d * base_d;
            mpz_mod(t1.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
            mpz_mod(t2.get_mpz_t(), t2.get_mpz_t(), m.get_mpz_t());
            c.swap(t1);
            d.swap(t2);
        }
        if (i + 1 < bits) {
            // base *= base
            sa = base_a * base_a + base_b * base_c;
            sb = base_a * base_b + base_b * base_d;
            sc = base_c * base_a + base_d * base_c;
            sd = base_c * base_b + base_d * base_d;
            mpz_mod(base_a.get_mpz_t(), sa.get_mpz_t(), m.get_mpz_t());
            mpz_mod(base_b.get_mpz_t(), sb.get_mpz_t(), m.get_mpz_t());
            mpz_mod(base_c.get_mpz_t(), sc.get_mpz_t(), m.get_mpz_t());
            mpz_mod(base_d.get_mpz_t(), sd.get_mpz_t(), m.get_mpz_t());
        }
    }
    // u_k = bottom row of M^k dot (u_1, u_0) = c * (-24) + d * 1
    mpz_class u1, result;
    mpz_mod(u1.get_mpz_t(), mpz_class(-24).get_mpz_t(), m.get_mpz_t());
    result = c * u1 + d;
    mpz_mod(result.get_mpz_t(), result.get_mpz_t(), m.get_mpz_t());
    return result;
}

mpz_class lucas_term_mod(const mpz_class& k, const mpz_class& m) {
    if (k >= 0 && k <= 10'000'000) return lucas_term_mod_stepped(k, m);
    return lucas_term_mod_pow(k, m);
}

}  // namespace taulab
