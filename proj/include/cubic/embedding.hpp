#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "cubic/field.hpp"

namespace cubic {

using Gram = std::array<std::array<long double, 3>, 3>;
using IVec3 = std::array<long long, 3>;

// Gram matrix of w1 * sigma1^2 + w2 * |sigma2|^2 on the rows of L.
Gram embedding_gram(const CubicField& F, const Lattice& L, long double w1, long double w2);
// T2 = sigma1^2 + 2 |sigma2|^2
inline Gram t2_gram(const CubicField& F, const Lattice& L) { return embedding_gram(F, L, 1.0L, 2.0L); }

// All nonzero x (one per +-pair) with x^T G x <= C. Basis is LLL-reduced
// first. Throws CapacityError past `cap` vectors.
std::vector<IVec3> short_vectors(const Gram& G, long double C, std::size_t cap = 2000000);

// A shortest nonzero vector for G.
IVec3 shortest_vector(const Gram& G);

Element combine(const Lattice& L, const IVec3& x);

} // namespace cubic
