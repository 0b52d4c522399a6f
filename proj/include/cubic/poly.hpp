#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cubic/arith.hpp"

namespace cubic {

// x^3 + a1 x^2 + a2 x + a3
struct CubicPolynomial {
    Int a1, a2, a3;

    Int eval(const Int& x) const { return ((x + a1) * x + a2) * x + a3; }
    Rational eval(const Rational& x) const { return ((x + a1) * x + a2) * x + a3; }
    long double eval(long double x) const {
        return ((x + to_ld(a1)) * x + to_ld(a2)) * x + to_ld(a3);
    }

    friend bool operator==(const CubicPolynomial&, const CubicPolynomial&) = default;
    std::string str() const;
};

// Parses "a1,a2,a3".
CubicPolynomial parse_polynomial(const std::string& text);

Int discriminant(const CubicPolynomial& f);

bool is_irreducible(const CubicPolynomial& f);

struct Signature {
    int real;
    int complex_pairs;
    friend bool operator==(const Signature&, const Signature&) = default;
};

// Throws InvalidInput on zero discriminant.
Signature signature(const CubicPolynomial& f);

// Sum of squared absolute values of the complex roots.
long double t2_of_roots(const CubicPolynomial& f);

// Isolating interval [lo, hi] of the unique real root of a cubic with
// negative discriminant, hi - lo <= 2^-bits.
std::pair<Rational, Rational> real_root_bracket(const CubicPolynomial& f, unsigned bits);

struct Roots {
    long double real;                 // the real root
    std::complex<long double> cplx;   // root with positive imaginary part
};

// Roots of a cubic with negative discriminant.
Roots complex_cubic_roots(const CubicPolynomial& f);

// Factorization shape mod p: pairs (degree, multiplicity) sorted ascending.
std::vector<std::pair<int, int>> factor_degrees_mod_p(const CubicPolynomial& f, std::uint64_t p);

// Explicit factorization mod p for p < 2^31 by root scanning.
// Each factor is a monic polynomial, coefficients low to high.
struct ModFactor {
    std::vector<std::uint64_t> coeffs;
    int multiplicity;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};
std::vector<ModFactor> factor_mod_p(const CubicPolynomial& f, std::uint64_t p);

// Dedekind criterion: is Z[theta] maximal at p?
bool dedekind_p_maximal(const CubicPolynomial& f, std::uint64_t p);

} // namespace cubic
