#include <doctest.h>

#include <random>

#include "cubic/errors.hpp"
#include "cubic/splitting.hpp"
#include "oracle.hpp"

#include <set>

using namespace cubic;

namespace {
CubicPolynomial P(long a1, long a2, long a3) { return {Int(a1), Int(a2), Int(a3)}; }
SplittingType T(std::vector<std::pair<int, int>> v) { return SplittingType{std::move(v)}; }
} // namespace

TEST_CASE("splitting types of the worked examples") {
    CubicField A = maximal_order(P(0, -1, -1));
    CubicField C = maximal_order(P(0, 0, -2));
    CHECK(splitting_type(A, 2) == T({{1, 3}}));
    CHECK(splitting_type(A, 23) == T({{1, 1}, {2, 1}}));
    CHECK(splitting_type(C, 3) == T({{3, 1}}));
    CHECK(splitting_type(C, 2) == T({{3, 1}}));
    CHECK(splitting_type(A, 23).str() == "[[1,1],[2,1]]");
    CHECK(non_decomposed(A, 2));
    CHECK_FALSE(non_decomposed(A, 23));
    CHECK(non_decomposed(C, 2));
}

TEST_CASE("lambda") {
    CubicField A = maximal_order(P(0, -1, -1));
    CubicField C = maximal_order(P(0, 0, -2));
    CHECK(lambda(A, PrimeSet({2, 3})) == 9);
    CHECK(lambda(C, PrimeSet({2, 3})) == 1);
    CHECK_THROWS_AS(lambda(A, PrimeSet({2, 23})), PreconditionError);
}

TEST_CASE("PrimeSet validation") {
    CHECK(PrimeSet::parse("3,2").primes() == std::vector<std::uint64_t>{2, 3});
    CHECK(PrimeSet::parse("2,3,5").str() == "2,3,5");
    CHECK_THROWS_AS(PrimeSet::parse("2"), InvalidInput);
    CHECK_THROWS_AS(PrimeSet::parse("2,2"), InvalidInput);
    CHECK_THROWS_AS(PrimeSet::parse("2,4"), InvalidInput);
    CHECK_THROWS_AS(PrimeSet::parse("2,x"), InvalidInput);
}

TEST_CASE("random (field, p) pairs") {
    auto fields = enumerate_fields(3000);
    auto primes = primes_up_to(400);
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::size_t> fi(0, fields.size() - 1), pi(0, primes.size() - 1);
    for (int t = 0; t < 1000; ++t) {
        const CubicField& F = fields[fi(rng)];
        std::uint64_t p = t % 4 == 0 ? std::uint64_t(factorize(F.d_K).front().first.get_ui()) : primes[pi(rng)];
        SplittingType st = splitting_type(F, p);
        int s = 0;
        for (auto [e, f] : st.pairs) s += e * f;
        CHECK(s == 3);
        CHECK(st.ramified() == (F.d_K % Int(static_cast<unsigned long>(p)) == 0));
        if (discriminant(F.poly) % Int(static_cast<unsigned long>(p)) != 0) CHECK(st == oracle::root_scan(F.poly, p));
        auto ideals = prime_ideals_above(F, p);
        CHECK(static_cast<int>(ideals.size()) == st.primes());
        int ef = 0;
        for (const auto& P : ideals) ef += P.e * P.f;
        CHECK(ef == 3);
    }
}

TEST_CASE("index divisors are split by the algebra decomposition") {
    // 2 divides the index of x^3 - x^2 - 2x - 8 and splits completely
    CubicField B = maximal_order(P(-1, -2, -8));
    CHECK(B.k == 2);
    CHECK(splitting_type(B, 2) == T({{1, 1}, {1, 1}, {1, 1}}));
    auto ideals = prime_ideals_above(B, 2);
    REQUIRE(ideals.size() == 3);
    Lattice prod = Lattice::identity();
    for (const auto& Q : ideals) prod = module_product(B.table, prod, Q.lattice);
    CHECK(prod == scale(Lattice::identity(), Rational(2)));
}

TEST_CASE("lambda takes values 1, 3 and 9") {
    std::set<unsigned> seen;
    PrimeSet S({2, 3});
    for (const auto& F : enumerate_fields(2000)) {
        if (!non_decomposed(F, 2) || !non_decomposed(F, 3)) continue;
        unsigned l = lambda(F, S);
        CHECK((l == 1 || l == 3 || l == 9));
        seen.insert(l);
    }
    CHECK(seen == std::set<unsigned>{1, 3, 9});
}

TEST_CASE("density diagnostic") {
    CubicField A = maximal_order(P(0, -1, -1));
    Rational d = density_diagnostic(A, 10000);
    CHECK(to_ld(d) > 1.0L / 3 - 0.05L);
    CHECK(to_ld(d) < 1.0L / 3 + 0.05L);
    for (const auto& F : enumerate_fields(400)) {
        CHECK(density_diagnostic(F, 1000) > 0);
        std::size_t ramified = 0, divisors = 0;
        for (auto p : primes_up_to(1000))
            if (splitting_type(F, p).ramified()) ++ramified;
        for (const auto& [p, e] : factorize(F.d_K))
            if (p <= 1000) ++divisors;
        CHECK(ramified == divisors);
    }
    CHECK_THROWS_AS(density_diagnostic(A, 50), InvalidInput);
}
