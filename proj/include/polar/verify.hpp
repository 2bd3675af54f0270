#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "polar.hpp"
#include "predict.hpp"
#include "snf.hpp"
#include "srg.hpp"

namespace polar {

struct PrimeCheck {
    Int ell;
    Profile predicted, computed;
    std::string branch;
    bool match = false;
};

struct VerifyReport {
    Family fam;
    long q = 0, m = 0;
    SrgInfo info;
    bool srg_ok = false, det_ok = false, tree_ok = false;
    std::vector<PrimeCheck> smith_checks, critical_checks;
    bool verdict = false;
    double ms = 0;
    std::vector<std::string> notes;
};

/// End-to-end check of one instance: build the graph, SNF both matrices,
/// and compare the computed elementary divisor profiles against the
/// closed-form predictions at every relevant prime.
inline VerifyReport verify_instance(Family fam, long q, long m, const Injection& inj = {},
                                    long vmax = 4000) {
    auto t0 = std::chrono::steady_clock::now();
    VerifyReport rep;
    rep.fam = fam;
    rep.q = q;
    rep.m = m;
    rep.info = srg_info(fam, q, m);
    PolarGraph graph(fam, q, m, vmax);
    rep.srg_ok = graph.srg_identity_holds();

    IMat A = graph.adjacency();
    IMat L = graph.laplacian();
    rep.det_ok = (abs(bareiss_det(A)) == rep.info.smith_order());
    SmithResult sa = smith(A);
    SmithResult sl = smith(L);
    rep.tree_ok = (spanning_trees(L) == rep.info.tree_count()) && sl.rank() == graph.v() - 1;

    for (Target tgt : {Target::Smith, Target::Critical}) {
        const SmithResult& s = (tgt == Target::Smith) ? sa : sl;
        auto& checks = (tgt == Target::Smith) ? rep.smith_checks : rep.critical_checks;
        for (const Int& ell : relevant_primes(rep.info, tgt)) {
            PrimeCheck pc;
            pc.ell = ell;
            PrimePrediction pp = predict_prime(rep.info, ell, tgt, inj);
            pc.predicted = pp.profile;
            pc.branch = pp.branch;
            pc.computed = ell_profile(s, ell);
            pc.match = (pc.predicted == pc.computed);
            checks.push_back(std::move(pc));
        }
    }

    rep.verdict = rep.srg_ok && rep.det_ok && rep.tree_ok;
    for (const auto& pc : rep.smith_checks) rep.verdict = rep.verdict && pc.match;
    for (const auto& pc : rep.critical_checks) rep.verdict = rep.verdict && pc.match;

    if (fam == Family::UE)
        rep.notes.push_back(
            "f, g, x from the general eigenvalue-multiplicity formulas; the tabulated display "
            "forms for g and x fail numeric checks (re-enable via --inject-typo tableue-g / "
            "tableue-x)");
    if (fam == Family::UO)
        rep.notes.push_back(
            "Smith valuation d uses q^(2m-1)+1 per the case derivation; the tabulated header "
            "q^(2m+1)+1 disagrees when v_ell(2m+1) != v_ell(2m-1) (re-enable via --inject-typo "
            "tableuo-d)");

    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

struct BatteryInstance {
    Family fam;
    long q, m;
};

/// The desk-scale acceptance battery.
inline std::vector<BatteryInstance> battery() {
    return {
        {Family::S, 2, 2},      {Family::S, 3, 2},     {Family::S, 2, 3},
        {Family::O, 3, 2},      {Family::O, 5, 2},     {Family::OMinus, 2, 3},
        {Family::OPlus, 2, 3},  {Family::UE, 2, 2},    {Family::UO, 2, 2},
    };
}

}  // namespace polar
