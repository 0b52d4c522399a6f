#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cubic/arith.hpp"

namespace cubic {

// An element of a cubic algebra in coordinates w.r.t. a fixed basis whose
// first vector is 1. Stored as num / den with den > 0 and gcd(num, den) = 1.
struct Element {
    Vec3 num{Int(0), Int(0), Int(0)};
    Int den{1};

    Element() = default;
    Element(Vec3 n, Int d = 1);
    static Element one() { return Element({Int(1), Int(0), Int(0)}); }
    static Element rational(const Rational& q) { return Element({q.get_num(), Int(0), Int(0)}, q.get_den()); }

    bool is_zero() const { return num[0] == 0 && num[1] == 0 && num[2] == 0; }
    bool is_integral() const { return den == 1; }
    bool is_rational() const { return num[1] == 0 && num[2] == 0; }
    Rational coord(int i) const { return make_q(num[i], den); }

    Element operator-() const;
    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend bool operator==(const Element& a, const Element& b) = default;
    std::string str() const;

    void normalize();
};

// Structure constants of a basis with e_0 = 1: e_i e_j = sum_k c[i][j][k] e_k.
struct MultTable {
    std::array<std::array<Vec3, 3>, 3> c{};

    Vec3 mul(const Vec3& a, const Vec3& b) const;
    Element mul(const Element& a, const Element& b) const;
    Element pow(Element a, unsigned long e) const;
    // rows: coordinates of x * e_i
    QMat3 regular(const Element& x) const;
    Element inverse(const Element& x) const;   // throws InvalidInput on zero
    Rational norm(const Element& x) const;
    Rational trace(const Element& x) const;
    // coefficients (c2, c1, c0) of the characteristic polynomial t^3 + c2 t^2 + c1 t + c0
    std::array<Rational, 3> charpoly(const Element& x) const;

    friend bool operator==(const MultTable&, const MultTable&) = default;
};

// Multiplication table of the power basis 1, t, t^2 of Z[t]/(t^3 + a1 t^2 + a2 t + a3).
MultTable power_basis_table(const Int& a1, const Int& a2, const Int& a3);

// A full-rank lattice (1/den) * rowspace(mat) with mat in Hermite normal form:
// upper triangular, positive diagonal, entries above the diagonal reduced
// into [0, diagonal). gcd(all entries, den) = 1.
struct Lattice {
    Mat3 mat{};
    Int den{1};

    static Lattice identity();

    Element row(int i) const { return Element(mat[i], den); }
    std::array<Element, 3> rows() const { return {row(0), row(1), row(2)}; }
    // covolume relative to the ambient basis
    Rational covolume() const;
    // canonical serialization: den then the 9 entries
    std::string key() const;
    bool operator==(const Lattice&) const = default;
    bool operator<(const Lattice& o) const;
};

// HNF of the lattice spanned by integer rows (scaled by 1/den). Throws
// RankDeficient when the rows span less than rank 3.
Lattice hnf(std::vector<Vec3> rows, const Int& den = 1);
Lattice hnf(std::span<const Element> gens);

bool contains(const Lattice& L, const Element& x);
bool is_sublattice(const Lattice& inner, const Lattice& outer);
// [outer : inner]; throws ContainmentError unless inner is inside outer.
Rational index(const Lattice& inner, const Lattice& outer);

Lattice sum(const Lattice& a, const Lattice& b);
Lattice scale(const MultTable& t, const Lattice& L, const Element& x);
Lattice scale(const Lattice& L, const Rational& q);
Lattice module_product(const MultTable& t, const Lattice& a, const Lattice& b);
// dual w.r.t. the coordinate dot product
Lattice dual(const Lattice& L);
Lattice intersection(const Lattice& a, const Lattice& b);
// {x : x b subset a}
Lattice colon(const MultTable& t, const Lattice& a, const Lattice& b);
// coordinates of x in the lattice basis (exact, may be non-integral)
QVec3 lattice_coords(const Lattice& L, const Element& x);

// O * L subset L where O is given by its basis rows.
bool is_stable_under(const MultTable& t, const Lattice& L, const Lattice& ring);

// Order inside the ambient ring whose basis table is `t` (the maximal order
// once a field is built). `table` holds structure constants for the order's
// own HNF basis.
struct Order {
    Lattice lattice;
    Int f;
    MultTable table;

    bool operator==(const Order& o) const { return lattice == o.lattice; }
};

bool is_order(const MultTable& t, const Lattice& L);
// throws InvalidInput if L is not an order
Order make_order(const MultTable& t, const Lattice& L);
Order multiplicator_ring(const MultTable& t, const Lattice& M);
// largest ideal of the ambient maximal order contained in O
Lattice conductor(const MultTable& t, const Order& O);

// All lattices M with inner subset M subset outer (den of outer respected).
// Calls visit(M); stops and throws CapacityError when more than `ceiling`
// lattices would be produced.
void for_each_intermediate_lattice(const Lattice& inner, const Lattice& outer,
                                   unsigned long long ceiling,
                                   const std::function<void(const Lattice&)>& visit);

} // namespace cubic
