#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cubic/census.hpp"
#include "cubic/errors.hpp"
#include "oracle.hpp"

using namespace cubic;

namespace {
CubicPolynomial P(long a1, long a2, long a3) { return {Int(a1), Int(a2), Int(a3)}; }

OrderRecord fake(long double R, unsigned long w) {
    OrderRecord r;
    Rational q(static_cast<double>(R));
    r.R = Interval(q);
    r.r = (Interval(3) * r.R).exp();
    r.weight = w;
    r.h = w;
    r.lambda = 1;
    return r;
}

const Census& small_census() {
    static Census c = [] {
        CensusOptions o;
        o.x = 300;
        return run_census(o);
    }();
    return c;
}
} // namespace

TEST_CASE("field_bound") {
    CHECK(field_bound(Rational(10000)) == 40024);
    CHECK(field_bound(make_q(1, 2) + 1) == 30);
    CHECK_THROWS_AS(field_bound(Rational(1)), InvalidInput);
    // |d| < 4 r + 24 for d_K = -23
    CubicField A = maximal_order(P(0, -1, -1));
    UnitData u = fundamental_unit(A);
    CHECK(artin_inequality_holds(A, u.R_K));
    CHECK(23 < 4 * regulator_from(u.R_K, 1).r.mid_ld() + 24);
}

TEST_CASE("enumerate_orders near the bottom") {
    CubicField A = maximal_order(P(0, -1, -1));
    UnitData u = fundamental_unit(A);
    CensusOptions o;
    o.x = 2;
    CHECK(enumerate_orders(A, u, o).empty());
    o.x = make_q(233, 100);   // just above r(O_K) = 2.3247...
    auto recs = enumerate_orders(A, u, o);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].f == 1);
    CHECK(recs[0].m == 1);
    CHECK(recs[0].h == 1);
    CHECK(recs[0].lambda == 9);
    CHECK(recs[0].weight == 9);
    o.x = 5000;
    for (const auto& r : enumerate_orders(A, u, o)) {
        CHECK(r.f % 2 != 0);
        CHECK(r.f % 3 != 0);
        CHECK(r.m * u.R_K.mid_ld() <= std::log(5000.0L) / 3 + 1e-12L);
    }
}

TEST_CASE("pi_S, psi and zeta on hand-made records") {
    std::vector<OrderRecord> none;
    CHECK(pi_S(none, 100).certain == 0);
    CHECK(psi(none, 100) == 0);
    CHECK(zeta_partial(none, {1.5L, 0}, 5) == std::complex<long double>(1, 0));
    std::vector<OrderRecord> one = {fake(1.0L, 9)};
    CHECK(pi_S(one, 100).certain == 9);   // r = e^3 = 20.08
    CHECK(pi_S(one, 20).certain == 0);
    // r <= x < r^2: one term
    CHECK(std::fabs(psi(one, 100) - 27.0L) < 1e-12L);
    CHECK(std::fabs(psi(one, 500) - 54.0L) < 1e-12L);
    std::complex<long double> s(1.5L, 0.7L);
    auto z = zeta_partial(one, s, 2);
    auto expect = std::pow(1.0L - std::exp(-s), 9.0L);
    CHECK(std::abs(z - expect) < 1e-15L);
    CHECK(zeta_partial(one, s, 0.5L) == std::complex<long double>(1, 0));
}

TEST_CASE("li against its series") {
    CHECK(li(2) == 0);
    CHECK(std::fabs(li(10) - oracle::li_series(10)) < 1e-9L * li(10));
    for (long double x : {3.0L, 50.0L, 1000.0L, 1e4L, 1e6L})
        CHECK(std::fabs(li(x) - oracle::li_series(x)) < 1e-9L * li(x));
    long double prev = 0;
    for (long double x = 2.5L; x < 1e5L; x *= 1.7L) {
        long double v = li(x);
        CHECK(v > prev);
        CHECK(v < x);
        prev = v;
    }
    CHECK_THROWS_AS(li(1.5L), InvalidInput);
}

TEST_CASE("small census invariants") {
    const Census& c = small_census();
    REQUIRE(!c.records.empty());
    std::set<std::pair<std::string, Lattice>> seen;
    for (const auto& r : c.records) {
        CHECK(seen.insert({r.field_key, r.lattice}).second);
        CHECK(r.weight == r.h * r.lambda);
        CHECK((r.lambda == 1 || r.lambda == 3 || r.lambda == 9));
        CHECK(gcd(r.f, Int(6)) == 1);
        Interval r3 = (Interval(3) * r.R).exp();
        CHECK(std::fabs(r3.mid_ld() - r.r.mid_ld()) < 1e-20L * r.r.mid_ld());
        CHECK(r.r.mid_ld() <= 300.0000001L);
    }
    for (std::size_t i = 1; i < c.records.size(); ++i) CHECK_FALSE(record_less(c.records[i], c.records[i - 1]));
}

TEST_CASE("records recomputed from scratch") {
    const Census& c = small_census();
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        const OrderRecord& r = c.records[rng() % c.records.size()];
        CubicField F = maximal_order(r.poly);
        UnitData u = fundamental_unit(F);
        Order O = make_order(F.table, r.lattice);
        CHECK(O.f == r.f);
        CHECK(unit_index(F, O, u) == r.m);
        CHECK(lambda(F, PrimeSet({2, 3})) == r.lambda);
        IdealClassSet cls = class_number_maximal(F);
        CHECK(module_class_number(F, O, u, cls).h == r.h);
        CHECK(std::fabs(regulator(F, O, u).R.mid_ld() - r.R.mid_ld()) < 1e-30L);
    }
}

TEST_CASE("report on the small census") {
    const Census& c = small_census();
    auto grid = parse_grid("300,100,1e2,50");
    REQUIRE(grid.size() == 3);
    CensusReport rep = report(c, grid);
    REQUIRE(rep.rows.size() == 3);
    unsigned long long prev = 0;
    for (const auto& row : rep.rows) {
        CHECK(row.pi_S >= prev);
        prev = row.pi_S;
        CHECK(std::isfinite(row.norm_err));
        CHECK(row.pi_tilde_lo <= static_cast<long double>(row.pi_tilde));
        CHECK(row.pi_tilde <= row.pi_S);
        CHECK(row.pi_tilde_hi == row.pi_S);
        CHECK(row.pi_S_possible >= row.pi_S);
        CHECK(row.ambiguous.size() == row.ambiguous_count);
    }
    std::string csv = rep.csv();
    CHECK(csv.rfind("x,pi_S,li,x_over_log_x,norm_err,pi_tilde_lo,pi_tilde_hi,ambiguous_count\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(report(c, grid).csv() == csv);
    CHECK_THROWS_AS(report(c, parse_grid("301")), StaleCache);
    CHECK(report(c, parse_grid("2")).rows[0].pi_S == 0);
}

TEST_CASE("doubling the search bounds adds nothing") {
    CensusOptions a;
    a.x = 300;
    CensusOptions b = a;
    b.field_bound_factor = 2;
    b.m_factor = 2;
    Census cb = run_census(b);
    const Census& ca = small_census();
    REQUIRE(ca.records.size() == cb.records.size());
    for (std::size_t i = 0; i < ca.records.size(); ++i) {
        CHECK(ca.records[i].field_key == cb.records[i].field_key);
        CHECK(ca.records[i].lattice == cb.records[i].lattice);
        CHECK(ca.records[i].weight == cb.records[i].weight);
    }
}

TEST_CASE("worker threads do not change the census") {
    CensusOptions o;
    o.x = 300;
    o.workers = 3;
    Census c = run_census(o);
    CHECK(report(c, {Rational(300)}).csv() == report(small_census(), {Rational(300)}).csv());
}

TEST_CASE("log-derivative two-path check") {
    const Census& c = small_census();
    for (long double s : {1.2L, 1.5L, 2.0L}) {
        LogDerivative d = zeta_log_derivative(c.records, {s, 0}, std::log(300.0L) / 3);
        CHECK(d.residual <= 1e-12L);
        CHECK(d.closed.imag() == 0);
        CHECK(zeta_partial(c.records, {s, 0}, 1.9L).imag() == 0);
    }
    LogDerivative d = zeta_log_derivative(c.records, {1.3L, 4.0L}, 1.9L);
    CHECK(d.residual <= 1e-12L);
    CHECK_THROWS_AS(zeta_log_derivative(c.records, {-1, 0}, 1), InvalidInput);
}

TEST_CASE("real number parsing") {
    CHECK(parse_real("1e4") == 10000);
    CHECK(parse_real("2.5") == make_q(5, 2));
    CHECK(parse_real("-0.125e1") == make_q(-5, 4));
    CHECK_THROWS_AS(parse_real("abc"), InvalidInput);
    CHECK_THROWS_AS(parse_real("1e"), InvalidInput);
    CHECK_THROWS_AS(parse_grid("1,100"), InvalidInput);
    CHECK(format_real(Rational(100)) == "100");
}
