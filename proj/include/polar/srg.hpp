#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "int_util.hpp"

namespace polar {

enum class Family { S, O, OMinus, OPlus, UE, UO };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::S: return "s";
        case Family::O: return "o";
        case Family::OMinus: return "ominus";
        case Family::OPlus: return "oplus";
        case Family::UE: return "ue";
        case Family::UO: return "uo";
    }
    throw std::logic_error("family_name");
}

inline Family parse_family(const std::string& s) {
    if (s == "s") return Family::S;
    if (s == "o") return Family::O;
    if (s == "ominus") return Family::OMinus;
    if (s == "oplus") return Family::OPlus;
    if (s == "ue") return Family::UE;
    if (s == "uo") return Family::UO;
    throw std::invalid_argument("unknown family: " + s);
}

enum class Target { Smith, Critical };

struct BadInstance : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Strongly-regular-graph data of a polar graph, derived from the family's
// type parameters (h, z): vertex count, degree, lambda/mu, the restricted
// eigenvalues r > s with multiplicities f, g, and the Laplacian eigenvalues
// t = k - r, u = k - s. All exact.
struct SrgInfo {
    Family fam;
    long q = 0, m = 0;
    long p = 0;
    int tdeg = 0;   // q = p^tdeg
    int e = 1;      // the form lives over a field of size q^e (e=2 Hermitian)
    int two_h = 0;  // twice the type parameter h
    long z = 0;     // Witt index
    long dim = 0;   // ambient dimension over the field of size q^e
    Int qt;         // q^e

    Int v, k, lambda, mu;
    Int r, s, f, g;
    Int t, u;

    // q^(e*alpha + e*h), i.e. qt^(alpha+h) resp. qt^alpha; always an
    // integer power of q for the six families.
    Int qt_pow(long alpha, bool plus_h = false) const {
        long ex = e * alpha + (plus_h ? (static_cast<long>(e) * two_h) / 2 : 0);
        if (ex < 0) throw std::logic_error("qt_pow: negative exponent");
        return ipow(q, static_cast<unsigned long>(ex));
    }

    Int smith_order() const { return k * ipow(r, f.get_ui()) * ipow(abs(s), g.get_ui()); }

    Int tree_count() const {
        Int num = ipow(t, f.get_ui()) * ipow(u, g.get_ui());
        Int quo, rem;
        mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
        if (rem != 0) throw std::logic_error("tree_count: t^f u^g not divisible by v");
        return quo;
    }

    Int critical_order() const { return tree_count(); }
};

inline long family_min_m(Family f) {
    switch (f) {
        case Family::OMinus:
        case Family::OPlus: return 3;
        default: return 2;
    }
}

inline SrgInfo srg_info(Family fam, long q, long m) {
    SrgInfo i;
    i.fam = fam;
    i.q = q;
    i.m = m;
    if (q < 2) throw BadInstance("q must be a prime power");
    auto fac = factorize(q);
    if (fac.size() != 1) throw BadInstance("q must be a prime power");
    i.p = fac.begin()->first.get_si();
    i.tdeg = fac.begin()->second;
    if (m < family_min_m(fam)) throw BadInstance("m too small for this family");
    switch (fam) {
        case Family::S: i.e = 1; i.two_h = 2; i.z = m; i.dim = 2 * m; break;
        case Family::O: i.e = 1; i.two_h = 2; i.z = m; i.dim = 2 * m + 1; break;
        case Family::OMinus: i.e = 1; i.two_h = 4; i.z = m - 1; i.dim = 2 * m; break;
        case Family::OPlus: i.e = 1; i.two_h = 0; i.z = m; i.dim = 2 * m; break;
        case Family::UE: i.e = 2; i.two_h = 1; i.z = m; i.dim = 2 * m; break;
        case Family::UO: i.e = 2; i.two_h = 3; i.z = m; i.dim = 2 * m + 1; break;
    }
    i.qt = ipow(q, i.e);

    const Int& qt = i.qt;
    Int sp1 = i.qt_pow(i.z - 2, true) + 1;  // qt^(z-2+h) + 1 = |s|
    Int tp1 = i.qt_pow(i.z - 1, true) + 1;  // qt^(z-1+h) + 1
    i.r = i.qt_pow(i.z - 1) - 1;
    i.s = -sp1;
    i.v = tp1 * bracket1(qt, i.z);
    i.k = qt * bracket1(qt, i.z - 1) * sp1;
    i.mu = i.k / qt;
    i.lambda = i.mu + i.r + i.s;
    i.t = bracket1(qt, i.z - 1) * tp1;
    i.u = sp1 * bracket1(qt, i.z);

    // f, g involve qt^(h-1), which has a negative q-exponent when h < 1;
    // do the computation with exact rationals and demand integrality.
    long hm1 = (static_cast<long>(i.e) * i.two_h) / 2 - i.e;  // q-exponent of qt^(h-1)
    mpq_class qhm1;
    if (hm1 >= 0)
        qhm1 = ipow(q, static_cast<unsigned long>(hm1));
    else
        qhm1 = mpq_class(1, ipow(q, static_cast<unsigned long>(-hm1)));
    mpq_class den = mpq_class(qt - 1) * (qhm1 + 1);
    mpq_class qh = ipow(q, static_cast<unsigned long>((static_cast<long>(i.e) * i.two_h) / 2));
    mpq_class ff = qh * sp1 * (i.qt_pow(i.z) - 1) / den;
    mpq_class gg = mpq_class(qt) * tp1 * (i.qt_pow(i.z - 1) - 1) / den;
    ff.canonicalize();
    gg.canonicalize();
    if (ff.get_den() != 1 || gg.get_den() != 1) throw std::logic_error("srg_info: f,g not integral");
    i.f = ff.get_num();
    i.g = gg.get_num();
    if (i.v != 1 + i.f + i.g) throw std::logic_error("srg_info: v != 1 + f + g");
    if (i.k * (i.k - i.lambda - 1) != (i.v - i.k - 1) * i.mu)
        throw std::logic_error("srg_info: srg parameter identity fails");
    if (i.t != i.k - i.r || i.u != i.k - i.s)
        throw std::logic_error("srg_info: laplacian eigenvalues inconsistent");
    return i;
}

/// Is the adjacency (Smith) resp. Laplacian (Critical) matrix nilpotent
/// mod ell? Adjacency: ell | r and ell | s; Laplacian: ell | t and ell | u.
inline bool is_nilpotent(const SrgInfo& i, const Int& ell, Target tgt) {
    if (tgt == Target::Smith) return i.r % ell == 0 && i.s % ell == 0;
    return i.t % ell == 0 && i.u % ell == 0;
}

/// Independent classifier: the nilpotence table as published, keyed on
/// family shape rather than eigenvalue divisibility. Returns
/// {adjacency nilpotent, laplacian nilpotent}.
inline std::pair<bool, bool> nilpotence_table(Family fam, long q, long m, const Int& ell) {
    const bool qodd = q % 2 != 0;
    if (ell == 2 && !qodd) return {false, false};
    const bool ell2 = (ell == 2);
    const bool divq1 = ((q + 1) % ell == 0);
    switch (fam) {
        case Family::S:
        case Family::O: return ell2 && qodd ? std::pair{true, true} : std::pair{false, false};
        case Family::OMinus:
            if (ell2 && qodd) return {true, true};
            if (!ell2 && divq1) return m % 2 == 0 ? std::pair{true, true} : std::pair{false, true};
            return {false, false};
        case Family::OPlus:
            if (ell2 && qodd) return {true, true};
            if (!ell2 && divq1) return m % 2 != 0 ? std::pair{true, true} : std::pair{false, true};
            return {false, false};
        case Family::UE:
        case Family::UO: return divq1 ? std::pair{true, true} : std::pair{false, false};
    }
    throw std::logic_error("nilpotence_table");
}

/// Primes that can divide |S| (adjacency cokernel) resp. |K| (critical
/// group): ell | qt*r*s resp. ell | t*u with ell != p.
inline std::set<Int> relevant_primes(const SrgInfo& i, Target tgt) {
    std::set<Int> out;
    Int prod;
    if (tgt == Target::Smith)
        prod = i.qt * i.r * abs(i.s);
    else
        prod = i.t * i.u;
    if (prod == 0) throw std::logic_error("relevant_primes: zero eigenvalue product");
    for (auto& [ell, e] : factorize(prod)) {
        if (tgt == Target::Critical && ell == i.p) continue;
        out.insert(ell);
    }
    return out;
}

}  // namespace polar
