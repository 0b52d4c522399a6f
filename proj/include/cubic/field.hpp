#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cubic/lattice.hpp"
#include "cubic/poly.hpp"

namespace cubic {

// How p-maximality of the basis was established.
struct PrimeCertificate {
    Int p;
    std::string method;   // "dedekind" (Z[theta] already maximal) or "multiplier" (I_p : I_p = O)
};

// A complex cubic field with its maximal order. All element coordinates
// refer to the integral basis omega_0 = 1, omega_1, omega_2, whose rows in
// power coordinates (1, theta, theta^2) are basis_num / basis_den. The
// basis matrix is lower triangular (omega_i involves theta^j only for j <= i).
struct CubicField {
    CubicPolynomial poly;
    Mat3 basis_num{};
    Int basis_den{1};
    Int d_K;
    Int k;
    MultTable table;
    std::vector<PrimeCertificate> certificates;

    // numeric embeddings of the integral basis: sigma_1 real, sigma_2 with Im > 0
    std::array<long double, 3> real_emb{};
    std::array<std::complex<long double>, 3> cplx_emb{};

    Element theta() const;
    Element from_power(const QVec3& power_coords) const;
    QVec3 to_power(const Element& x) const;

    long double sigma1(const Element& x) const;
    std::complex<long double> sigma2(const Element& x) const;

    // (|d_K|, |a1|, |a2|, |a3|, a1, a2, a3): the canonical ordering of fields
    bool canonical_less(const CubicField& o) const;
    std::string key() const;   // "d_K:a1,a2,a3"
};

bool canonical_poly_less(const CubicPolynomial& a, const Int& da, const CubicPolynomial& b, const Int& db);

// Throws InvalidInput for reducible input or zero discriminant.
// Throws UnsupportedSignature for totally real input when complex_only is set.
CubicField maximal_order(const CubicPolynomial& f, bool complex_only = false);

// Is there a root of a.poly inside b? Decided exactly (candidate root found
// numerically in b's integral basis, then verified in exact arithmetic).
bool isomorphic(const CubicField& a, const CubicField& b);

// Does `f` have a root in the field? Returns the root if found.
bool find_root(const CubicPolynomial& f, const CubicField& field, Element* root = nullptr);

struct EnumerationTally {
    unsigned long long box = 0;
    unsigned long long zero_disc = 0;
    unsigned long long reducible = 0;
    unsigned long long totally_real = 0;
    unsigned long long t2_rejected = 0;
    unsigned long long disc_prefilter = 0;
    unsigned long long too_large = 0;
    unsigned long long not_reduced = 0;
    unsigned long long duplicates = 0;
    unsigned long long emitted = 0;
};

// Hunter-type bound on T2 for a generator of trace -a1 with |d_K| <= X.
long double hunter_t2_bound(const Int& a1, long double X);

// One field per isomorphism class of complex cubic fields with |d_K| <= X,
// sorted by |d_K| then canonical polynomial.
std::vector<CubicField> enumerate_fields(const Int& X, EnumerationTally* tally = nullptr);

} // namespace cubic
