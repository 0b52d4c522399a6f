#include <doctest.h>

#include <cmath>

#include "cubic/errors.hpp"
#include "cubic/units.hpp"
#include "oracle.hpp"

using namespace cubic;

namespace {
CubicPolynomial P(long a1, long a2, long a3) { return {Int(a1), Int(a2), Int(a3)}; }
Lattice z_plus(long c) { return hnf({{Int(1), Int(0), Int(0)}, {Int(0), Int(c), Int(0)}, {Int(0), Int(0), Int(c)}}); }
} // namespace

TEST_CASE("fundamental unit of x^3 - x - 1") {
    CubicField A = maximal_order(P(0, -1, -1));
    UnitData u = fundamental_unit(A);
    CHECK(u.eps == A.theta());
    CHECK(std::fabs(u.R_K.mid_ld() - 0.2812L) < 1e-4L);
    CHECK(u.R_K.width_ld() < 1e-30L);
    CHECK(abs(A.table.norm(u.eps)) == 1);
    auto box = oracle::box_unit(A, 20);
    REQUIRE(box);
    CHECK(std::fabs(box->log_abs_sigma1 - u.R_K.mid_ld()) < 1e-9L);
}

TEST_CASE("fundamental unit of the pure cubic field of 2") {
    CubicField C = maximal_order(P(0, 0, -2));
    UnitData u = fundamental_unit(C);
    // normalized to sigma1 > 1, so this is (theta - 1)^{-1} = 1 + theta + theta^2
    Element tm1 = C.theta() - Element::one();
    CHECK(C.table.mul(u.eps, tm1) == Element::one());
    CHECK(C.sigma1(u.eps) > 1);
    CHECK(std::fabs(u.R_K.mid_ld() - 1.3474L) < 1e-4L);
    CHECK(u.certificate == "artin");
}

TEST_CASE("units against a brute-force box search") {
    for (const auto& F : enumerate_fields(300)) {
        UnitData u = fundamental_unit(F);
        CHECK(abs(F.table.norm(u.eps)) == 1);
        CHECK_FALSE(u.eps.is_rational());
        CHECK(F.sigma1(u.eps) > 1);
        QVec3 pw = F.to_power(u.eps);
        CHECK(abs(oracle::resultant_norm(F.poly, {pw[0], pw[1], pw[2]})) == 1);
        CHECK(artin_inequality_holds(F, u.R_K));
        int B = 20;
        for (int i = 0; i < 3; ++i) B = std::max<int>(B, static_cast<int>(Int(abs(u.eps.num[i])).get_si()));
        auto box = oracle::box_unit(F, B);
        REQUIRE(box);
        CHECK_MESSAGE(std::fabs(box->log_abs_sigma1 - u.R_K.mid_ld()) < 1e-9L, F.key());
    }
}

TEST_CASE("unit index") {
    CubicField A = maximal_order(P(0, -1, -1));
    UnitData u = fundamental_unit(A);
    Order OK = make_order(A.table, Lattice::identity());
    CHECK(unit_index(A, OK, u) == 1);
    Order O2 = make_order(A.table, z_plus(2));
    // direct power iteration
    unsigned long m = 1;
    Element p = u.eps;
    while (!contains(O2.lattice, p)) {
        p = A.table.mul(p, u.eps);
        ++m;
    }
    CHECK(unit_index(A, O2, u) == m);
    CHECK(m == 7);
    UnitData inv = u;
    inv.eps = A.table.inverse(u.eps);
    CHECK(unit_index(A, O2, inv) == m);
    for (long c : {2, 3, 4, 6, 12}) {
        Order O = make_order(A.table, z_plus(c));
        unsigned long mc = unit_index(A, O, u);
        CHECK(contains(O.lattice, A.table.pow(u.eps, mc)));
        for (unsigned long j = 1; j < mc; ++j) CHECK_FALSE(contains(O.lattice, A.table.pow(u.eps, j)));
    }
    // nested orders: Z + 12 O_K inside Z + 4 O_K inside Z + 2 O_K
    unsigned long m2 = unit_index(A, make_order(A.table, z_plus(2)), u);
    unsigned long m4 = unit_index(A, make_order(A.table, z_plus(4)), u);
    unsigned long m12 = unit_index(A, make_order(A.table, z_plus(12)), u);
    CHECK(m4 % m2 == 0);
    CHECK(m12 % m4 == 0);
}

TEST_CASE("regulators of orders") {
    CubicField A = maximal_order(P(0, -1, -1));
    UnitData u = fundamental_unit(A);
    RegulatorValue r1 = regulator(A, make_order(A.table, Lattice::identity()), u);
    CHECK(r1.m == 1);
    CHECK(std::fabs(r1.r.mid_ld() - 2.3247L) < 1e-3L);
    RegulatorValue r2 = regulator_from(u.R_K, 2);
    Interval sq = r1.r * r1.r;
    CHECK(std::fabs(r2.r.mid_ld() - sq.mid_ld()) < 1e-25L);
    CHECK(Interval(1).certainly_lt(r1.r));
    RegulatorValue r7 = regulator(A, make_order(A.table, z_plus(2)), u);
    CHECK(r7.m == 7);
}

TEST_CASE("bounded search gives up above the cutoff") {
    CubicField B = maximal_order(P(-1, -2, -8));
    UnitData u = fundamental_unit(B);
    CHECK(u.R_K.mid_ld() > 7);
    CHECK_FALSE(fundamental_unit_bounded(B, 2.0L).has_value());
    auto again = fundamental_unit_bounded(B, 8.0L);
    REQUIRE(again);
    CHECK(again->eps == u.eps);
}

TEST_CASE("totally real fields are rejected") {
    CubicField R = maximal_order(P(0, -3, -1));
    CHECK_THROWS_AS(fundamental_unit(R), UnsupportedSignature);
}

TEST_CASE("Artin inequality on a larger corpus") {
    for (const auto& F : enumerate_fields(1500)) {
        auto u = fundamental_unit(F);
        CHECK(artin_inequality_holds(F, u.R_K));
        CHECK((u.certificate == "artin" || u.certificate == "exhaustive" || u.certificate == "power-residue"));
    }
}
