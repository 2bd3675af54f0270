#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "int_util.hpp"

namespace polar {

struct IMat {
    long r = 0, c = 0;
    std::vector<Int> e;

    IMat() = default;
    IMat(long rows, long cols) : r(rows), c(cols), e(rows * cols, 0) {}

    Int& at(long i, long j) { return e[i * c + j]; }
    const Int& at(long i, long j) const { return e[i * c + j]; }
};

inline IMat identity_mat(long n) {
    IMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

/// Invariant factors d_1 | d_2 | ... | d_r (all positive), r = rank.
struct SmithResult {
    std::vector<Int> divisors;
    long rows = 0, cols = 0;

    long rank() const { return static_cast<long>(divisors.size()); }
    long free_corank() const { return std::min(rows, cols) - rank(); }
};

namespace detail {

// Turn a multiset of nonzero diagonal entries into the divisibility chain
// d_1 | d_2 | ... by repeated gcd/lcm exchanges.
inline void normalize_chain(std::vector<Int>& d) {
    for (auto& v : d) v = abs(v);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < d.size(); ++i)
            for (size_t j = i + 1; j < d.size(); ++j) {
                if (d[j] % d[i] == 0) continue;
                Int g, l;
                mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
                l = d[i] / g * d[j];
                d[i] = g;
                d[j] = l;
                changed = true;
            }
    }
    std::sort(d.begin(), d.end());
}

}  // namespace detail

/// Smith normal form by integer elimination. Pivot choice: nonzero entry of
/// minimal absolute value in the active submatrix, ties broken by smallest
/// row index, then smallest column index.
inline SmithResult smith(IMat m) {
    SmithResult out;
    out.rows = m.r;
    out.cols = m.c;
    long k = 0;
    const long kmax = std::min(m.r, m.c);
    while (k < kmax) {
        // locate pivot
        long pi = -1, pj = -1;
        for (long i = k; i < m.r; ++i)
            for (long j = k; j < m.c; ++j) {
                const Int& x = m.at(i, j);
                if (x == 0) continue;
                if (pi < 0 || mpz_cmpabs(x.get_mpz_t(), m.at(pi, pj).get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // submatrix is zero
        if (pi != k)
            for (long j = 0; j < m.c; ++j) std::swap(m.at(k, j), m.at(pi, j));
        if (pj != k)
            for (long i = 0; i < m.r; ++i) std::swap(m.at(i, k), m.at(i, pj));

        bool clear = true;
        for (long i = k + 1; i < m.r; ++i) {
            if (m.at(i, k) == 0) continue;
            Int q = m.at(i, k) / m.at(k, k);  // truncated: remainder shrinks
            if (q != 0)
                for (long j = k; j < m.c; ++j) m.at(i, j) -= q * m.at(k, j);
            if (m.at(i, k) != 0) clear = false;
        }
        for (long j = k + 1; j < m.c; ++j) {
            if (m.at(k, j) == 0) continue;
            Int q = m.at(k, j) / m.at(k, k);
            if (q != 0)
                for (long i = k; i < m.r; ++i) m.at(i, j) -= q * m.at(i, k);
            if (m.at(k, j) != 0) clear = false;
        }
        if (clear) ++k;
        // otherwise re-pick a pivot; the smallest absolute value in the
        // submatrix strictly decreased, so this terminates
    }
    for (long i = 0; i < kmax; ++i)
        if (m.at(i, i) != 0) out.divisors.push_back(m.at(i, i));
    detail::normalize_chain(out.divisors);
    return out;
}

/// Determinant by the Bareiss fraction-free algorithm.
inline Int bareiss_det(IMat m) {
    if (m.r != m.c) throw std::invalid_argument("bareiss_det: not square");
    const long n = m.r;
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            long s = -1;
            for (long i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    s = i;
                    break;
                }
            if (s < 0) return 0;
            for (long j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(s, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                Int q, r;
                mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                if (r != 0) throw std::logic_error("bareiss_det: inexact division");
                m.at(i, j) = q;
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

/// Rank over the rationals (fraction-free elimination with pivoting).
inline long rank_q(IMat m) {
    long rank = 0;
    Int prev = 1;
    for (long col = 0; col < m.c && rank < m.r; ++col) {
        long piv = -1;
        for (long i = rank; i < m.r; ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (long j = 0; j < m.c; ++j) std::swap(m.at(rank, j), m.at(piv, j));
        for (long i = rank + 1; i < m.r; ++i) {
            for (long j = col + 1; j < m.c; ++j) {
                Int num = m.at(i, j) * m.at(rank, col) - m.at(i, col) * m.at(rank, j);
                m.at(i, j) = num / prev;
            }
            m.at(i, col) = 0;
        }
        prev = m.at(rank, col);
        ++rank;
    }
    return rank;
}

/// Rank over GF(ell) by ordinary Gaussian elimination.
inline long rank_mod(const IMat& m, const Int& ell) {
    std::vector<std::vector<Int>> a(m.r, std::vector<Int>(m.c));
    for (long i = 0; i < m.r; ++i)
        for (long j = 0; j < m.c; ++j) {
            Int v = m.at(i, j) % ell;
            if (v < 0) v += ell;
            a[i][j] = v;
        }
    long rank = 0;
    for (long col = 0; col < m.c && rank < m.r; ++col) {
        long piv = -1;
        for (long i = rank; i < m.r; ++i)
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), a[rank][col].get_mpz_t(), ell.get_mpz_t()) == 0)
            throw std::invalid_argument("rank_mod: modulus not prime");
        for (long i = rank + 1; i < m.r; ++i) {
            if (a[i][col] == 0) continue;
            Int f = a[i][col] * inv % ell;
            for (long j = col; j < m.c; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % ell + ell) % ell;
        }
        ++rank;
    }
    return rank;
}

/// Exponent profile of the ell-part: map from v_ell(d_i) to how many
/// invariant factors have that valuation. Includes exponent 0.
inline std::map<int, long> ell_profile(const SmithResult& s, const Int& ell) {
    std::map<int, long> out;
    for (const Int& d : s.divisors) ++out[valuation(d, ell)];
    return out;
}

/// Independent ell-profile computation by the module-filtration method:
/// working mod ell^(maxv+1), repeatedly split off unit pivots (each one an
/// invariant factor of the current valuation level), then divide the
/// remaining block by ell and descend one level. Returns the profile for
/// valuations 0..maxv plus the number of slots left over (free rank, if
/// maxv is at least the valuation of every finite divisor).
inline std::pair<std::map<int, long>, long> ell_profile_filtration(const IMat& m, const Int& ell,
                                                                   int maxv) {
    int precision = maxv + 1;
    Int mod = ipow(ell, static_cast<unsigned long>(precision));
    std::vector<std::vector<Int>> a(m.r, std::vector<Int>(m.c));
    for (long i = 0; i < m.r; ++i)
        for (long j = 0; j < m.c; ++j) {
            Int v = m.at(i, j) % mod;
            if (v < 0) v += mod;
            a[i][j] = v;
        }
    std::map<int, long> prof;
    long cols = m.c;
    int level = 0;
    while (level <= maxv && !a.empty() && cols > 0) {
        long pi = -1, pj = -1;
        for (size_t i = 0; i < a.size() && pi < 0; ++i)
            for (long j = 0; j < cols; ++j)
                if (a[i][j] % ell != 0) {
                    pi = static_cast<long>(i);
                    pj = j;
                    break;
                }
        if (pi >= 0) {
            Int inv;
            mpz_invert(inv.get_mpz_t(), a[pi][pj].get_mpz_t(), mod.get_mpz_t());
            for (size_t i = 0; i < a.size(); ++i) {
                if (static_cast<long>(i) == pi || a[i][pj] == 0) continue;
                Int f = a[i][pj] * inv % mod;
                for (long j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[pi][j]) % mod + mod) % mod;
            }
            // column pj is now zero off the pivot; clearing row pi would
            // only touch row pi, so both can simply be dropped
            a.erase(a.begin() + pi);
            for (auto& row : a) row.erase(row.begin() + pj);
            --cols;
            ++prof[level];
            continue;
        }
        // everything left is divisible by ell: descend one level
        --precision;
        mod /= ell;
        for (auto& row : a)
            for (auto& v : row) v = (v / ell) % mod;
        ++level;
    }
    long slots = std::min(m.r, m.c);
    for (auto& [e, c] : prof) slots -= c;
    return {prof, slots};
}

/// Textbook oracle: d_k = D_k / D_{k-1} with D_k the gcd of all k x k
/// minors. Exponential; only for small matrices in tests.
inline SmithResult smith_minors(const IMat& m) {
    SmithResult out;
    out.rows = m.r;
    out.cols = m.c;
    const long n = std::min(m.r, m.c);
    Int prev = 1;
    for (long k = 1; k <= n; ++k) {
        // iterate all k-subsets of rows and of columns
        Int g = 0;
        std::vector<long> ri(k), ci(k);
        for (long i = 0; i < k; ++i) ri[i] = i;
        for (;;) {
            for (long i = 0; i < k; ++i) ci[i] = i;
            for (;;) {
                IMat sub(k, k);
                for (long i = 0; i < k; ++i)
                    for (long j = 0; j < k; ++j) sub.at(i, j) = m.at(ri[i], ci[j]);
                Int d = bareiss_det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
                long t = k - 1;
                while (t >= 0 && ci[t] == m.c - k + t) --t;
                if (t < 0) break;
                ++ci[t];
                for (long u = t + 1; u < k; ++u) ci[u] = ci[u - 1] + 1;
            }
            long t = k - 1;
            while (t >= 0 && ri[t] == m.r - k + t) --t;
            if (t < 0) break;
            ++ri[t];
            for (long u = t + 1; u < k; ++u) ri[u] = ri[u - 1] + 1;
        }
        if (g == 0) break;
        out.divisors.push_back(g / prev);
        prev = g;
    }
    return out;
}

}  // namespace polar
