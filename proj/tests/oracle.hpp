#pragma once
// Slow, independent reference computations used by the unit tests and the
// acceptance binary. Only plain data types are shared with the library.

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "cubic/census.hpp"
#include "cubic/class_numbers.hpp"
#include "cubic/field.hpp"
#include "cubic/splitting.hpp"
#include "cubic/units.hpp"

namespace oracle {

using cubic::CubicPolynomial;
using cubic::Int;
using cubic::Rational;

// Discriminant as -Res(f, f') from the 5x5 Sylvester matrix (Bareiss).
Int sylvester_discriminant(const CubicPolynomial& f);

// N(g0 + g1 t + g2 t^2) = Res(f, g) from the Sylvester matrix over Q.
Rational resultant_norm(const CubicPolynomial& f, const std::array<Rational, 3>& g);

// Ring of integers by brute p-adic search: for each p with p^2 | disc, keep
// adjoining (sum c_i w_i)/p with integral characteristic polynomial.
struct SlowField {
    CubicPolynomial poly;
    Int disc;
    Int d_K;
    Int k;
    cubic::Lattice basis;   // power-basis coordinates
};
SlowField slow_closure(const CubicPolynomial& f);

// Is some root of g a polynomial in a root of f? Numeric solve for the
// coefficients, then exact verification of g(P(t)) = 0 mod f.
bool power_basis_isomorphic(const CubicPolynomial& f, const CubicPolynomial& g);

// Every complex cubic field with |d_K| <= X, from a plain coefficient box
// (|a1| <= 1, |a2| <= 20, |a3| <= 40) grouped by isomorphism. Each class
// lists its member polynomials.
struct SweepClass {
    Int d_K;
    std::vector<CubicPolynomial> members;
};
std::vector<SweepClass> sweep_fields(long X);

// Unit of smallest log|sigma1| > 0 among integral-basis coordinate vectors
// with entries in [-B, B]; norms computed in Z[theta] with 128-bit integers.
struct BoxUnit {
    cubic::Vec3 coords;
    long double log_abs_sigma1;
};
std::optional<BoxUnit> box_unit(const cubic::CubicField& F, int B);

// gamma + ln ln x + sum (ln x)^n / (n n!) - li(2)
long double li_series(long double x);

// Splitting type of an unramified prime from the number of roots mod p.
cubic::SplittingType root_scan(const CubicPolynomial& f, std::uint64_t p);

// h_K |(O_K/c)^*| / (|(O/c)^*| m) with the unit groups of the finite rings
// counted element by element.
unsigned long picard_by_enumeration(const cubic::CubicField& F, const cubic::Order& O, unsigned long m,
                                    unsigned long h_K);

// For h_K = 1: lattices f O_K subset M subset O_K (all of them, by HNF
// enumeration) that are O-stable with O_K M = O_K, modulo M ~ +-eps^j M.
unsigned long slow_module_classes(const cubic::CubicField& F, const cubic::Order& O, const cubic::UnitData& u);

} // namespace oracle
