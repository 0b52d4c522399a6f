#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "cubic/field.hpp"

namespace cubic {

// A lattice L is reduced when 1 is a relative minimum of L, i.e. no nonzero
// x in L other than +-1 has |sigma1(x)| <= 1 and |sigma2(x)| <= 1.

// v^{-1} M for a T2-shortest v in M; v is returned through `scale`.
Lattice reduce(const CubicField& F, const Lattice& M, Element* scale = nullptr);

struct Neighbor {
    Element mu;        // next relative minimum of L, sigma1(mu) > 1
    Lattice lattice;   // mu^{-1} L
};

// Adjacent reduced lattice along increasing |sigma1|.
Neighbor neighbor(const CubicField& F, const Lattice& L);

struct Cycle {
    bool closed = false;              // returned to the start lattice
    Element product = Element::one(); // product of the minima walked
    long double log_sigma1 = 0;       // log sigma1(product)
    std::vector<Lattice> lattices;    // reduced lattices visited, start first
};

// Walks neighbors from the reduced lattice L0 until L0 recurs, or until
// log sigma1 of the running product exceeds `cutoff`.
Cycle voronoi_cycle(const CubicField& F, const Lattice& L0,
                    long double cutoff = std::numeric_limits<long double>::infinity(),
                    std::size_t max_steps = 100000);

// Homothety invariant: two lattices are homothetic iff their keys agree.
std::string class_key(const CubicField& F, const Lattice& M);

} // namespace cubic
