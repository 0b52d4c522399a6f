#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubic/field.hpp"
#include "cubic/units.hpp"

namespace cubic {

// (8 / (9 pi)) sqrt|d_K|, nudged upward.
long double minkowski_bound(const CubicField& F);
long double minkowski_bound(const Int& d_K);

struct IdealClassSet {
    std::vector<Lattice> representatives;   // smallest-norm ideal of each class
    std::vector<std::string> keys;          // homothety keys, parallel to representatives
    std::size_t ideals_examined = 0;
    unsigned long h = 0;
};

// All integral ideals of norm <= bound, as products of prime ideals.
std::vector<Lattice> ideals_up_to(const CubicField& F, unsigned long bound);

IdealClassSet class_number_maximal(const CubicField& F);

// h_K |(O_K/c)^*| / (|(O/c)^*| m), c the conductor of O.
unsigned long picard_number(const CubicField& F, const Order& O, const UnitData& u, unsigned long h_K);

struct ModuleClassSet {
    std::vector<Lattice> representatives;
    std::map<std::string, unsigned long> by_multiplicator;   // multiplicator ring key -> count
    unsigned long h = 0;
    // local data: O-stable lattices between the conductor and O_K generating O_K
    std::size_t local_lattices = 0;
    std::size_t local_orbits = 0;
    bool all_invertible = false;         // every representative invertible over its multiplicator
    unsigned long picard_sum = 0;        // sum of Pic over all overorders
    bool picard_identity = false;        // h == picard_sum
};

// h(O) = |I(O)/F^*|. Throws CapacityError when the local enumeration needs
// more than `ceiling` candidate lattices.
ModuleClassSet module_class_number(const CubicField& F, const Order& O, const UnitData& u,
                                   const IdealClassSet& classes, unsigned long long ceiling = 10000);

// All orders O' with O subset O' subset O_K.
std::vector<Order> overorders(const CubicField& F, const Order& O, unsigned long long ceiling = 10000);

} // namespace cubic
