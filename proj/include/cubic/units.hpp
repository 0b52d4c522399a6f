#pragma once

#include <optional>
#include <string>

#include "cubic/field.hpp"
#include "cubic/interval.hpp"

namespace cubic {

struct UnitData {
    Element eps;               // integral-basis coordinates, sigma1(eps) > 1
    Interval R_K;              // log sigma1(eps)
    std::string certificate;   // "artin", "exhaustive" or "power-residue"
    std::string detail;
    std::size_t cycle_length = 0;
};

struct RegulatorValue {
    unsigned long m = 1;
    Interval R;   // m * R_K
    Interval r;   // exp(3 R)
};

// log |sigma1(x)| enclosed with the real root refined by exact bisection.
Interval log_abs_sigma1(const CubicField& F, const Element& x);

// Throws UnsupportedSignature for totally real fields.
UnitData fundamental_unit(const CubicField& F);

// Same, but gives up (returns nullopt) once the regulator is certified to
// exceed `cutoff`.
std::optional<UnitData> fundamental_unit_bounded(const CubicField& F, long double cutoff);

// |d_K| < 4 e^{3 R_K} + 24, decided with the interval enclosure.
bool artin_inequality_holds(const CubicField& F, const Interval& R_K);

// Smallest m >= 1 with eps^m in O.
unsigned long unit_index(const CubicField& F, const Order& O, const UnitData& u);

RegulatorValue regulator(const CubicField& F, const Order& O, const UnitData& u);
RegulatorValue regulator_from(const Interval& R_K, unsigned long m);

} // namespace cubic
