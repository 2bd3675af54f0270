#include "doctest.h"
#include "polar/polar.hpp"

using namespace polar;

TEST_CASE("battery vertex counts by enumeration") {
    struct Row {
        Family fam;
        long q, m, v;
    };
    Row rows[] = {
        {Family::S, 2, 2, 15},      {Family::S, 3, 2, 40},     {Family::S, 2, 3, 63},
        {Family::O, 3, 2, 40},      {Family::O, 5, 2, 156},    {Family::OMinus, 2, 3, 27},
        {Family::OPlus, 2, 3, 35},  {Family::UE, 2, 2, 45},    {Family::UO, 2, 2, 165},
    };
    for (auto& row : rows) {
        INFO(family_name(row.fam) << " q=" << row.q << " m=" << row.m);
        PolarGraph g(row.fam, row.q, row.m);
        CHECK(g.v() == row.v);
        // regularity
        long k = g.info().k.get_si();
        for (long i = 0; i < g.v(); ++i) {
            long deg = 0;
            for (long j = 0; j < g.v(); ++j)
                if (g.adjacent(i, j)) ++deg;
            CHECK(deg == k);
        }
    }
}

TEST_CASE("points are canonical and strictly increasing") {
    PolarGraph g(Family::UE, 2, 2);
    const Field& F = g.field();
    long prev = -1;
    for (const auto& pt : g.points()) {
        size_t lead = 0;
        while (lead < pt.size() && pt[lead] == 0) ++lead;
        REQUIRE(lead < pt.size());
        CHECK(pt[lead] == 1);
        long enc = 0;
        for (int c : pt) enc = enc * F.size() + c;
        CHECK(enc > prev);
        prev = enc;
    }
}

TEST_CASE("adjacency is symmetric with zero diagonal") {
    for (auto [fam, q, m] : std::vector<std::tuple<Family, long, long>>{
             {Family::S, 2, 2}, {Family::OMinus, 2, 3}, {Family::UO, 2, 2}}) {
        PolarGraph g(fam, q, m);
        for (long i = 0; i < g.v(); ++i) {
            CHECK_FALSE(g.adjacent(i, i));
            for (long j = 0; j < g.v(); ++j) CHECK(g.adjacent(i, j) == g.adjacent(j, i));
        }
    }
}

TEST_CASE("srg identity on small instances") {
    for (auto [fam, q, m] : std::vector<std::tuple<Family, long, long>>{
             {Family::S, 2, 2}, {Family::S, 3, 2}, {Family::O, 3, 2}, {Family::OMinus, 2, 3},
             {Family::OPlus, 2, 3}, {Family::UE, 2, 2}}) {
        CAPTURE(family_name(fam));
        PolarGraph g(fam, q, m);
        CHECK(g.srg_identity_holds());
    }
}

TEST_CASE("elliptic quadric: anisotropic part over GF(2) is x^2+xy+y^2") {
    // the only binary quadratic with no nonzero root over GF(2); check by
    // looking at the graph: no singular point may have support only in the
    // last two coordinates
    PolarGraph g(Family::OMinus, 2, 3);
    for (const auto& pt : g.points()) {
        bool only_tail = true;
        for (size_t i = 0; i + 2 < pt.size(); ++i)
            if (pt[i] != 0) only_tail = false;
        CHECK_FALSE(only_tail);
    }
}

TEST_CASE("laplacian rows sum to zero and match degree") {
    PolarGraph g(Family::S, 2, 2);
    IMat l = g.laplacian();
    for (long i = 0; i < l.r; ++i) {
        Int sum = 0;
        for (long j = 0; j < l.c; ++j) sum += l.at(i, j);
        CHECK(sum == 0);
        CHECK(l.at(i, i) == 6);
    }
}

TEST_CASE("spanning trees of the pentagon") {
    // independent sanity check of the matrix-tree helper: C5 has 5 trees
    IMat l(5, 5);
    for (long i = 0; i < 5; ++i) {
        l.at(i, i) = 2;
        l.at(i, (i + 1) % 5) = -1;
        l.at(i, (i + 4) % 5) = -1;
    }
    CHECK(spanning_trees(l) == 5);
}

TEST_CASE("resource bound") {
    CHECK_THROWS_AS(PolarGraph(Family::S, 3, 3, 100), ResourceBound);
}
