#include "cubic/voronoi.hpp"

#include <cmath>

#include "cubic/embedding.hpp"
#include "cubic/errors.hpp"

namespace cubic {

Lattice reduce(const CubicField& F, const Lattice& M, Element* scale) {
    Element v = combine(M, shortest_vector(t2_gram(F, M)));
    if (scale) *scale = v;
    return cubic::scale(F.table, M, F.table.inverse(v));
}

Neighbor neighbor(const CubicField& F, const Lattice& L) {
    const Element one = Element::one();
    for (long double X = 2;; X *= 2) {
        if (X > 1e18L) throw InternalInconsistency("no Voronoi neighbor found; lattice is not reduced");
        Gram G = embedding_gram(F, L, 1.0L / (X * X), 1.0L);
        Element best;
        long double best_s1 = 0;
        bool found = false;
        for (const auto& x : short_vectors(G, 2.0L)) {
            Element v = combine(L, x);
            if (v == one || v == -one) continue;
            long double s1 = std::fabs(F.sigma1(v));
            long double s2 = std::abs(F.sigma2(v));
            if (s2 >= 1 || s1 <= 1) continue;
            if (!found || s1 < best_s1) {
                found = true;
                best = v;
                best_s1 = s1;
            }
        }
        if (found && best_s1 <= X) {
            if (F.sigma1(best) < 0) best = -best;
            return {best, scale(F.table, L, F.table.inverse(best))};
        }
    }
}

Cycle voronoi_cycle(const CubicField& F, const Lattice& L0, long double cutoff, std::size_t max_steps) {
    Cycle c;
    c.lattices.push_back(L0);
    Lattice L = L0;
    for (std::size_t step = 0; step < max_steps; ++step) {
        Neighbor n = neighbor(F, L);
        c.product = F.table.mul(c.product, n.mu);
        c.log_sigma1 += std::log(F.sigma1(n.mu));
        L = n.lattice;
        if (L == L0) {
            c.closed = true;
            return c;
        }
        c.lattices.push_back(L);
        if (c.log_sigma1 > cutoff) return c;
    }
    throw CapacityError("Voronoi cycle longer than " + std::to_string(max_steps) + " steps", max_steps);
}

std::string class_key(const CubicField& F, const Lattice& M) {
    Cycle c = voronoi_cycle(F, reduce(F, M));
    const Lattice* best = &c.lattices.front();
    for (const auto& L : c.lattices)
        if (L < *best) best = &L;
    return best->key();
}

} // namespace cubic
