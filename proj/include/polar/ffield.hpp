#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace polar {

// Finite field GF(p^t). Elements are integer codes in [0, p^t): the code's
// base-p digits are the coefficients of the residue polynomial, digit i being
// the coefficient of X^i. The modulus is the lexicographically smallest monic
// irreducible of degree t, comparing low-degree coefficients first (i.e. the
// one with the smallest code). For t = 1 this degenerates to Z/p.
class Field {
  public:
    Field(int p, int t) : p_(p), t_(t) {
        if (p < 2 || t < 1) throw std::invalid_argument("Field: bad parameters");
        q_ = 1;
        for (int i = 0; i < t; ++i) {
            q_ *= p;
            if (q_ > (1 << 20)) throw std::invalid_argument("Field: too large");
        }
        find_modulus();
        build_tables();
    }

    int p() const { return p_; }
    int degree() const { return t_; }
    long size() const { return q_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }

    int inv(int a) const {
        if (a == 0) throw std::invalid_argument("Field::inv(0)");
        return inv_[a];
    }

    int pow(int a, long e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        e %= (q_ - 1);
        if (e < 0) e += q_ - 1;
        int r = 1, b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// Frobenius x -> x^p iterated k times.
    int frobenius(int a, int k = 1) const {
        int r = a;
        for (int i = 0; i < k; ++i) r = pow(r, p_);
        return r;
    }

    /// Embed a prime-field scalar c in [0,p).
    int from_int(long c) const {
        c %= p_;
        if (c < 0) c += p_;
        return static_cast<int>(c);
    }

    /// Modulus coefficients, index i = coefficient of X^i, length t+1.
    const std::vector<int>& modulus() const { return mod_; }

  private:
    int p_, t_;
    long q_;
    std::vector<int> mod_;
    std::vector<int> add_, mul_, neg_, inv_;

    // Multiply residue polynomials (digit vectors of length t_) mod mod_.
    std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<int> c(2 * t_ - 1, 0);
        for (int i = 0; i < t_; ++i)
            for (int j = 0; j < t_; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
        for (int d = 2 * t_ - 2; d >= t_; --d) {
            int coef = c[d];
            if (!coef) continue;
            c[d] = 0;
            for (int i = 0; i < t_; ++i) {
                // X^d = -mod(X) * X^{d-t} (mod_ is monic)
                c[d - t_ + i] = ((c[d - t_ + i] - coef * mod_[i]) % p_ + p_) % p_;
            }
        }
        c.resize(t_);
        return c;
    }

    std::vector<int> decode(long code) const {
        std::vector<int> d(t_);
        for (int i = 0; i < t_; ++i) {
            d[i] = static_cast<int>(code % p_);
            code /= p_;
        }
        return d;
    }

    long encode(const std::vector<int>& d) const {
        long c = 0;
        for (int i = t_ - 1; i >= 0; --i) c = c * p_ + d[i];
        return c;
    }

    void find_modulus() {
        if (t_ == 1) {
            mod_ = {0, 1};  // X, unused
            return;
        }
        // Scan candidate lower parts in code order; candidate is monic deg t.
        for (long code = 0; code < q_; ++code) {
            std::vector<int> f = decode(code);
            f.push_back(1);
            if (poly_irreducible(f)) {
                mod_ = f;
                return;
            }
        }
        throw std::logic_error("Field: no irreducible found");
    }

    // Trial division by all monic polynomials of degree 1..t/2 over GF(p).
    bool poly_irreducible(const std::vector<int>& f) const {
        int deg = static_cast<int>(f.size()) - 1;
        for (int d = 1; 2 * d <= deg; ++d) {
            long count = 1;
            for (int i = 0; i < d; ++i) count *= p_;
            for (long code = 0; code < count; ++code) {
                std::vector<int> g(d + 1);
                long c = code;
                for (int i = 0; i < d; ++i) {
                    g[i] = static_cast<int>(c % p_);
                    c /= p_;
                }
                g[d] = 1;
                if (poly_divides(g, f)) return false;
            }
        }
        return true;
    }

    bool poly_divides(const std::vector<int>& g, std::vector<int> f) const {
        int dg = static_cast<int>(g.size()) - 1;
        for (int d = static_cast<int>(f.size()) - 1; d >= dg; --d) {
            int coef = f[d];
            if (!coef) continue;
            for (int i = 0; i <= dg; ++i)
                f[d - dg + i] = ((f[d - dg + i] - coef * g[i]) % p_ + p_) % p_;
        }
        for (int v : f)
            if (v) return false;
        return true;
    }

    void build_tables() {
        add_.assign(q_ * q_, 0);
        mul_.assign(q_ * q_, 0);
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);
        std::vector<std::vector<int>> digits(q_);
        for (long a = 0; a < q_; ++a) digits[a] = decode(a);
        for (long a = 0; a < q_; ++a) {
            std::vector<int> na(t_);
            for (int i = 0; i < t_; ++i) na[i] = (p_ - digits[a][i]) % p_;
            neg_[a] = static_cast<int>(encode(na));
            for (long b = 0; b < q_; ++b) {
                std::vector<int> s(t_);
                for (int i = 0; i < t_; ++i) s[i] = (digits[a][i] + digits[b][i]) % p_;
                add_[a * q_ + b] = static_cast<int>(encode(s));
                if (t_ == 1)
                    mul_[a * q_ + b] = static_cast<int>((a * b) % p_);
                else
                    mul_[a * q_ + b] = static_cast<int>(encode(poly_mul(digits[a], digits[b])));
            }
        }
        for (long a = 1; a < q_; ++a) {
            for (long b = 1; b < q_; ++b)
                if (mul_[a * q_ + b] == 1) {
                    inv_[a] = static_cast<int>(b);
                    break;
                }
            if (inv_[a] == 0) throw std::logic_error("Field: no inverse (modulus not irreducible?)");
        }
    }
};

}  // namespace polar
