#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ffield.hpp"
#include "snf.hpp"
#include "srg.hpp"

namespace polar {

struct ResourceBound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A polar graph: vertices are the singular projective points of a formed
// space, adjacency is orthogonality under the (polarized) form. Points are
// stored as canonical representatives (first nonzero coordinate = 1) and
// ordered by their integer encoding, coordinate 0 most significant.
class PolarGraph {
  public:
    PolarGraph(Family fam, long q, long m, long vmax = 4000)
        : info_(srg_info(fam, q, m)), field_(make_field(info_)) {
        if (info_.v > vmax) throw ResourceBound("vertex count exceeds bound");
        if (fam == Family::OMinus) setup_norm_form();
        enumerate_points();
        build_adjacency();
    }

    const SrgInfo& info() const { return info_; }
    const Field& field() const { return field_; }
    long v() const { return static_cast<long>(pts_.size()); }
    const std::vector<std::vector<int>>& points() const { return pts_; }
    bool adjacent(long i, long j) const { return (adj_[i * v() + j] != 0); }

    IMat adjacency() const {
        const long n = v();
        IMat a(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) a.at(i, j) = adj_[i * n + j];
        return a;
    }

    IMat laplacian() const {
        const long n = v();
        IMat l(n, n);
        for (long i = 0; i < n; ++i) {
            long deg = 0;
            for (long j = 0; j < n; ++j)
                if (adj_[i * n + j]) {
                    l.at(i, j) = -1;
                    ++deg;
                }
            l.at(i, i) = deg;
        }
        return l;
    }

    /// All-ones minus identity minus adjacency is the complement; here we
    /// expose J - A, which some rank arguments need.
    IMat j_minus_a() const {
        const long n = v();
        IMat x(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) x.at(i, j) = 1 - adj_[i * n + j];
        return x;
    }

    /// Exact check of A^2 = kI + lambda*A + mu*(J - I - A).
    bool srg_identity_holds() const {
        const long n = v();
        const long k = info_.k.get_si(), lam = info_.lambda.get_si(), mu = info_.mu.get_si();
        for (long i = 0; i < n; ++i) {
            for (long j = 0; j < n; ++j) {
                long common = 0;
                for (long w = 0; w < n; ++w)
                    if (adj_[i * n + w] && adj_[w * n + j]) ++common;
                long expect;
                if (i == j)
                    expect = k;
                else
                    expect = adj_[i * n + j] ? lam : mu;
                if (common != expect) return false;
            }
        }
        return true;
    }

  private:
    SrgInfo info_;
    Field field_;
    int nf_b_ = 0, nf_c_ = 0;  // O^-: anisotropic part x^2 + b xy + c y^2
    std::vector<std::vector<int>> pts_;
    std::vector<uint8_t> adj_;

    static Field make_field(const SrgInfo& i) { return Field(static_cast<int>(i.p), i.tdeg * i.e); }

    bool hermitian() const { return info_.e == 2; }
    int conj(int a) const { return field_.frobenius(a, info_.tdeg); }

    // The anisotropic binary form for O^-: the norm form of the quadratic
    // extension, taken as the homogenized characteristic polynomial
    // X^2 - tr(x) XY + N(x) Y^2 of the canonical generator x of the
    // degree-2 extension field (x = the class of the variable, code p).
    void setup_norm_form() {
        const int p = static_cast<int>(info_.p), t = info_.tdeg;
        Field K(p, 2 * t);
        int x = p;  // code of the polynomial variable in K
        int xq = K.frobenius(x, t);
        int tr = K.add(x, xq);
        int nm = K.mul(x, xq);
        if (t == 1) {
            // the base field sits in K as the constant codes
            nf_b_ = field_.neg(tr);
            nf_c_ = nm;
            return;
        }
        // embed GF(q) into K via the smallest root of its modulus, then
        // pull tr and nm back through the embedding
        const auto& mod = field_.modulus();
        int root = -1;
        for (long cand = 0; cand < K.size(); ++cand) {
            int acc = 0, pw = 1;
            for (size_t d = 0; d < mod.size(); ++d) {
                acc = K.add(acc, K.mul(K.from_int(mod[d]), pw));
                pw = K.mul(pw, static_cast<int>(cand));
            }
            if (acc == 0) {
                root = static_cast<int>(cand);
                break;
            }
        }
        if (root < 0) throw std::logic_error("norm form: modulus has no root in extension");
        std::vector<int> back(K.size(), -1);
        for (long a = 0; a < field_.size(); ++a) {
            int img = 0, pw = 1;
            long code = a;
            for (int d = 0; d < t; ++d) {
                img = K.add(img, K.mul(K.from_int(code % p), pw));
                pw = K.mul(pw, root);
                code /= p;
            }
            back[img] = static_cast<int>(a);
        }
        if (back[tr] < 0 || back[nm] < 0) throw std::logic_error("norm form: trace/norm outside base field");
        nf_b_ = field_.neg(back[tr]);
        nf_c_ = back[nm];
    }

    int quad_form(const std::vector<int>& x) const {
        const Field& F = field_;
        const long m = info_.m;
        int acc = 0;
        switch (info_.fam) {
            case Family::O:
                acc = F.mul(x[0], x[0]);
                for (long i = 1; i <= m; ++i) acc = F.add(acc, F.mul(x[i], x[m + i]));
                return acc;
            case Family::OPlus:
                for (long i = 0; i < m; ++i) acc = F.add(acc, F.mul(x[i], x[m + i]));
                return acc;
            case Family::OMinus: {
                for (long i = 0; i + 1 < m; ++i) acc = F.add(acc, F.mul(x[i], x[m - 1 + i]));
                int X = x[2 * m - 2], Y = x[2 * m - 1];
                acc = F.add(acc, F.mul(X, X));
                acc = F.add(acc, F.mul(nf_b_, F.mul(X, Y)));
                acc = F.add(acc, F.mul(nf_c_, F.mul(Y, Y)));
                return acc;
            }
            default: throw std::logic_error("quad_form: not a quadratic family");
        }
    }

    int pairing(const std::vector<int>& x, const std::vector<int>& y) const {
        const Field& F = field_;
        const long m = info_.m;
        int acc = 0;
        switch (info_.fam) {
            case Family::S:
                for (long i = 0; i < m; ++i) {
                    acc = F.add(acc, F.mul(x[i], y[m + i]));
                    acc = F.sub(acc, F.mul(x[m + i], y[i]));
                }
                return acc;
            case Family::O:
            case Family::OPlus:
            case Family::OMinus: {
                // polarization Q(x+y) - Q(x) - Q(y)
                std::vector<int> sum(x.size());
                for (size_t i = 0; i < x.size(); ++i) sum[i] = F.add(x[i], y[i]);
                return F.sub(F.sub(quad_form(sum), quad_form(x)), quad_form(y));
            }
            case Family::UE:
            case Family::UO: {
                const long n = info_.dim;
                for (long i = 0; i < n; ++i) acc = F.add(acc, F.mul(x[i], conj(y[n - 1 - i])));
                return acc;
            }
        }
        throw std::logic_error("pairing");
    }

    bool singular(const std::vector<int>& x) const {
        switch (info_.fam) {
            case Family::S: return true;
            case Family::O:
            case Family::OPlus:
            case Family::OMinus: return quad_form(x) == 0;
            case Family::UE:
            case Family::UO: return pairing(x, x) == 0;
        }
        return false;
    }

    void enumerate_points() {
        const long Q = field_.size(), d = info_.dim;
        double total = 1;
        for (long i = 0; i < d; ++i) total *= static_cast<double>(Q);
        if (total > 5e7) throw ResourceBound("ambient space too large to enumerate");
        std::vector<int> vec(d, 0);
        // odometer with coordinate 0 most significant = increasing encoding
        for (;;) {
            long j = d - 1;
            while (j >= 0 && vec[j] == Q - 1) vec[j--] = 0;
            if (j < 0) break;
            ++vec[j];
            long lead = 0;
            while (lead < d && vec[lead] == 0) ++lead;
            if (vec[lead] != 1) continue;  // not a canonical representative
            if (singular(vec)) pts_.push_back(vec);
        }
        if (Int(static_cast<long>(pts_.size())) != info_.v)
            throw std::logic_error("point count disagrees with parameter formula");
    }

    void build_adjacency() {
        const long n = v();
        adj_.assign(n * n, 0);
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j) {
                if (pairing(pts_[i], pts_[j]) == 0) {
                    adj_[i * n + j] = 1;
                    adj_[j * n + i] = 1;
                }
            }
    }
};

/// Spanning-tree count by the matrix-tree theorem: determinant of the
/// Laplacian with row and column 0 removed.
inline Int spanning_trees(const IMat& laplacian) {
    const long n = laplacian.r;
    IMat red(n - 1, n - 1);
    for (long i = 1; i < n; ++i)
        for (long j = 1; j < n; ++j) red.at(i - 1, j - 1) = laplacian.at(i, j);
    return bareiss_det(red);
}

}  // namespace polar
