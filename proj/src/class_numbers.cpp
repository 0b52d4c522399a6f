#include "cubic/class_numbers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "cubic/embedding.hpp"
#include "cubic/errors.hpp"
#include "cubic/splitting.hpp"
#include "cubic/voronoi.hpp"

namespace cubic {

long double minkowski_bound(const Int& d_K) {
    if (d_K >= 0) throw UnsupportedSignature("Minkowski bound is implemented for complex cubic fields only");
    return 8.0L / (9.0L * std::numbers::pi_v<long double>) * std::sqrt(to_ld(Int(abs(d_K)))) * (1 + 1e-15L);
}

long double minkowski_bound(const CubicField& F) { return minkowski_bound(F.d_K); }

std::vector<Lattice> ideals_up_to(const CubicField& F, unsigned long bound) {
    struct P {
        Lattice L;
        unsigned long norm;
    };
    std::vector<P> primes;
    for (auto p : primes_up_to(bound)) {
        for (const auto& pi : prime_ideals_above(F, p)) {
            unsigned long n = 1;
            for (int i = 0; i < pi.f; ++i) n *= p;
            if (n <= bound) primes.push_back({pi.lattice, n});
        }
    }
    std::vector<std::pair<unsigned long, Lattice>> out;
    std::function<void(std::size_t, unsigned long, const Lattice&)> rec = [&](std::size_t start, unsigned long n,
                                                                              const Lattice& I) {
        out.emplace_back(n, I);
        for (std::size_t i = start; i < primes.size(); ++i) {
            if (n * primes[i].norm > bound) continue;
            rec(i, n * primes[i].norm, module_product(F.table, I, primes[i].L));
        }
    };
    rec(0, 1, Lattice::identity());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<Lattice> res;
    for (auto& [n, L] : out)
        if (res.empty() || !(res.back() == L)) res.push_back(L);
    return res;
}

IdealClassSet class_number_maximal(const CubicField& F) {
    if (F.d_K > 0) throw UnsupportedSignature("class_number_maximal needs a complex cubic field");
    IdealClassSet out;
    auto ideals = ideals_up_to(F, static_cast<unsigned long>(std::floor(minkowski_bound(F))));
    out.ideals_examined = ideals.size();
    std::set<std::string> seen;
    for (const auto& I : ideals) {
        std::string k = class_key(F, I);
        if (seen.insert(k).second) {
            out.representatives.push_back(I);
            out.keys.push_back(k);
        }
    }
    out.h = out.representatives.size();
    return out;
}

namespace {

// Residue system of O_K / c for c in HNF (den 1): 0 <= x_i < c_ii.
template <class Fn>
void for_each_residue(const Lattice& c, Fn fn) {
    if (c.den != 1) throw InvalidInput("residue system needs an integral lattice");
    const Int &a = c.mat[0][0], &b = c.mat[1][1], &d = c.mat[2][2];
    for (Int x = 0; x < a; ++x)
        for (Int y = 0; y < b; ++y)
            for (Int z = 0; z < d; ++z) fn(Element({x, y, z}));
}

std::vector<Lattice> primes_containing(const CubicField& F, const Lattice& c) {
    std::vector<Lattice> out;
    Int N = c.mat[0][0] * c.mat[1][1] * c.mat[2][2];
    for (const auto& [p, e] : factorize(N)) {
        (void)e;
        for (const auto& P : prime_ideals_above(F, p.get_ui()))
            if (is_sublattice(c, P.lattice)) out.push_back(P.lattice);
    }
    return out;
}

} // namespace

unsigned long picard_number(const CubicField& F, const Order& O, const UnitData& u, unsigned long h_K) {
    if (O.f == 1) return h_K;
    Lattice c = conductor(F.table, O);
    auto primes = primes_containing(F, c);
    Int units_K = 0, units_O = 0;
    for_each_residue(c, [&](const Element& x) {
        for (const auto& P : primes)
            if (contains(P, x)) return;
        ++units_K;
        if (contains(O.lattice, x)) ++units_O;
    });
    unsigned long m = unit_index(F, O, u);
    Int num = Int(static_cast<unsigned long>(h_K)) * units_K;
    Int den = units_O * Int(m);
    if (num % den != 0)
        throw InternalInconsistency("Picard number formula does not divide exactly: " + num.get_str() + "/" +
                                    den.get_str());
    return Int(num / den).get_ui();
}

std::vector<Order> overorders(const CubicField& F, const Order& O, unsigned long long ceiling) {
    std::vector<Order> out;
    for_each_intermediate_lattice(O.lattice, Lattice::identity(), ceiling, [&](const Lattice& L) {
        if (is_order(F.table, L)) out.push_back(make_order(F.table, L));
    });
    std::sort(out.begin(), out.end(), [](const Order& a, const Order& b) {
        if (a.f != b.f) return a.f > b.f;
        return a.lattice < b.lattice;
    });
    return out;
}

namespace {

// Element a of the ideal A with a O_K + fA = A.
Element local_generator(const CubicField& F, const Lattice& A, const Lattice& fA) {
    Gram G = t2_gram(F, A);
    long double C = std::max({G[0][0], G[1][1], G[2][2]});
    for (int round = 0; round < 40; ++round, C *= 2) {
        auto vs = short_vectors(G, C);
        std::sort(vs.begin(), vs.end());
        for (const auto& x : vs) {
            Element a = combine(A, x);
            if (sum(scale(F.table, Lattice::identity(), a), fA) == A) return a;
        }
    }
    throw InternalInconsistency("no local generator found for an ideal class representative");
}

bool invertible_over(const CubicField& F, const Lattice& N, const Lattice& ring) {
    Lattice inv = colon(F.table, ring, N);
    return module_product(F.table, N, inv) == ring;
}

} // namespace

ModuleClassSet module_class_number(const CubicField& F, const Order& O, const UnitData& u,
                                   const IdealClassSet& classes, unsigned long long ceiling) {
    ModuleClassSet out;
    const Lattice OK = Lattice::identity();
    Lattice c = O.f == 1 ? OK : conductor(F.table, O);

    std::vector<Lattice> local;
    for_each_intermediate_lattice(c, OK, ceiling, [&](const Lattice& M) {
        if (!is_stable_under(F.table, M, O.lattice)) return;
        if (!(module_product(F.table, OK, M) == OK)) return;
        local.push_back(M);
    });
    std::sort(local.begin(), local.end());
    out.local_lattices = local.size();

    // orbits of M -> eps M
    std::vector<Lattice> orbit_reps;
    std::set<Lattice> done;
    for (const auto& M : local) {
        if (done.count(M)) continue;
        orbit_reps.push_back(M);
        Lattice X = M;
        do {
            done.insert(X);
            X = scale(F.table, X, u.eps);
        } while (!(X == M));
    }
    out.local_orbits = orbit_reps.size();
    out.h = classes.h * out.local_orbits;

    out.all_invertible = true;
    for (const auto& A : classes.representatives) {
        Lattice fA = module_product(F.table, c, A);
        Element a = A == OK ? Element::one() : local_generator(F, A, fA);
        for (const auto& M : orbit_reps) {
            Lattice N = A == OK ? M : sum(scale(F.table, M, a), fA);
            Lattice ring = colon(F.table, N, N);
            out.by_multiplicator[ring.key()] += 1;
            if (!invertible_over(F, N, ring)) out.all_invertible = false;
            out.representatives.push_back(N);
        }
    }

    unsigned long total = 0;
    for (const auto& Op : overorders(F, O, ceiling)) total += picard_number(F, Op, u, classes.h);
    out.picard_sum = total;
    out.picard_identity = total == out.h;
    if (out.all_invertible && !out.picard_identity)
        throw InternalInconsistency("h(O) differs from the Picard sum although every class is invertible");
    return out;
}

} // namespace cubic
