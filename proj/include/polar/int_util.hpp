#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

using Int = mpz_class;

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int ipow(long base, unsigned long e) { return ipow(Int(base), e); }

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

/// Largest e with ell^e | n. Requires n != 0.
inline int valuation(Int n, const Int& ell) {
    if (n == 0) throw std::invalid_argument("valuation: zero argument");
    if (ell < 2) throw std::invalid_argument("valuation: bad prime");
    int e = 0;
    n = abs(n);
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), ell.get_mpz_t());
        if (r != 0) break;
        n = q;
        ++e;
    }
    return e;
}

/// [n choose 1]_z = 1 + z + ... + z^{n-1}.
inline Int bracket1(const Int& z, long n) {
    Int acc = 0, p = 1;
    for (long i = 0; i < n; ++i) {
        acc += p;
        p *= z;
    }
    return acc;
}

/// Gaussian binomial [d choose j]_z, the number of j-dimensional subspaces
/// of a d-dimensional space over a field with z elements.
inline Int gaussian_binomial(long d, long j, const Int& z) {
    if (j < 0 || j > d || z < 2) throw std::invalid_argument("gaussian_binomial: out of range");
    Int num = 1, den = 1;
    for (long i = 1; i <= j; ++i) {
        num *= ipow(z, d - i + 1) - 1;
        den *= ipow(z, i) - 1;
    }
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw std::logic_error("gaussian_binomial: inexact division");
    return q;
}

namespace detail {

inline Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x5eed);
    for (;;) {
        Int c = rng.get_z_range(n - 1) + 1;
        Int x = rng.get_z_range(n), y = x, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = abs(x - y);
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

}  // namespace detail

/// Prime factorization of |n|, n != 0. Trial division up to 10^6, then
/// Pollard rho for any remaining composite cofactor.
inline std::map<Int, int> factorize(Int n) {
    if (n == 0) throw std::invalid_argument("factorize: zero");
    n = abs(n);
    std::map<Int, int> out;
    for (long p = 2; p <= 1000000 && Int(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    std::vector<Int> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (is_prime(m)) {
            out[m] += 1;
            continue;
        }
        Int d = detail::pollard_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return out;
}

}  // namespace polar
