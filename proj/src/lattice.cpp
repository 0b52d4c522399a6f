#include "cubic/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "cubic/errors.hpp"

namespace cubic {

// ---------------------------------------------------------------- Element

Element::Element(Vec3 n, Int d) : num(std::move(n)), den(std::move(d)) { normalize(); }

void Element::normalize() {
    if (den == 0) throw InvalidInput("element with zero denominator");
    if (den < 0) {
        den = -den;
        for (auto& v : num) v = -v;
    }
    Int g = gcd(gcd(gcd(num[0], num[1]), num[2]), den);
    if (g > 1) {
        for (auto& v : num) v /= g;
        den /= g;
    }
}

Element Element::operator-() const {
    Element r = *this;
    for (auto& v : r.num) v = -v;
    return r;
}

Element operator+(const Element& a, const Element& b) {
    Vec3 n;
    for (int i = 0; i < 3; ++i) n[i] = a.num[i] * b.den + b.num[i] * a.den;
    return Element(n, a.den * b.den);
}

Element operator-(const Element& a, const Element& b) { return a + (-b); }

std::string Element::str() const {
    std::ostringstream os;
    os << "(" << num[0].get_str() << "," << num[1].get_str() << "," << num[2].get_str() << ")";
    if (den != 1) os << "/" << den.get_str();
    return os.str();
}

// ---------------------------------------------------------------- MultTable

Vec3 MultTable::mul(const Vec3& a, const Vec3& b) const {
    Vec3 r{Int(0), Int(0), Int(0)};
    for (int i = 0; i < 3; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < 3; ++j) {
            if (b[j] == 0) continue;
            Int ab = a[i] * b[j];
            for (int k = 0; k < 3; ++k) r[k] += ab * c[i][j][k];
        }
    }
    return r;
}

Element MultTable::mul(const Element& a, const Element& b) const {
    return Element(mul(a.num, b.num), a.den * b.den);
}

Element MultTable::pow(Element a, unsigned long e) const {
    Element r = Element::one();
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

QMat3 MultTable::regular(const Element& x) const {
    QMat3 m;
    for (int i = 0; i < 3; ++i) {
        Vec3 ei{Int(0), Int(0), Int(0)};
        ei[i] = 1;
        Vec3 p = mul(x.num, ei);
        for (int k = 0; k < 3; ++k) m[i][k] = make_q(p[k], x.den);
    }
    return m;
}

Element MultTable::inverse(const Element& x) const {
    if (x.is_zero()) throw InvalidInput("inverse of zero element");
    QMat3 inv = cubic::inverse(regular(x));
    // y M_x = e_0, so y is the first row of M_x^{-1}
    Int d = lcm(lcm(inv[0][0].get_den(), inv[0][1].get_den()), inv[0][2].get_den());
    Vec3 n;
    for (int k = 0; k < 3; ++k) n[k] = inv[0][k].get_num() * (d / inv[0][k].get_den());
    return Element(n, d);
}

Rational MultTable::norm(const Element& x) const { return det(regular(x)); }

Rational MultTable::trace(const Element& x) const {
    QMat3 m = regular(x);
    return m[0][0] + m[1][1] + m[2][2];
}

std::array<Rational, 3> MultTable::charpoly(const Element& x) const {
    QMat3 m = regular(x);
    Rational tr = m[0][0] + m[1][1] + m[2][2];
    Rational minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) + (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                      (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    return {-tr, minors, -det(m)};
}

MultTable power_basis_table(const Int& a1, const Int& a2, const Int& a3) {
    MultTable t;
    // powers t^0 .. t^4 in the basis 1, t, t^2
    std::array<Vec3, 5> pw;
    pw[0] = {Int(1), Int(0), Int(0)};
    pw[1] = {Int(0), Int(1), Int(0)};
    pw[2] = {Int(0), Int(0), Int(1)};
    pw[3] = {Int(-a3), Int(-a2), Int(-a1)};
    pw[4] = {Int(a1 * a3), Int(a1 * a2 - a3), Int(a1 * a1 - a2)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.c[i][j] = pw[i + j];
    return t;
}

// ---------------------------------------------------------------- Lattice

Lattice Lattice::identity() {
    Lattice L;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) L.mat[i][j] = (i == j) ? 1 : 0;
    L.den = 1;
    return L;
}

Rational Lattice::covolume() const {
    return make_q(mat[0][0] * mat[1][1] * mat[2][2], den * den * den);
}

std::string Lattice::key() const {
    std::ostringstream os;
    os << den.get_str();
    for (const auto& row : mat)
        for (const auto& v : row) os << ',' << v.get_str();
    return os.str();
}

bool Lattice::operator<(const Lattice& o) const {
    if (den != o.den) return den < o.den;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (mat[i][j] != o.mat[i][j]) return mat[i][j] < o.mat[i][j];
    return false;
}

Lattice hnf(std::vector<Vec3> a, const Int& den_in) {
    if (den_in <= 0) throw InvalidInput("lattice denominator must be positive");
    std::size_t n = a.size();
    std::size_t r = 0;
    for (int col = 0; col < 3; ++col) {
        while (true) {
            std::size_t best = n;
            for (std::size_t i = r; i < n; ++i) {
                if (a[i][col] == 0) continue;
                if (best == n || abs(a[i][col]) < abs(a[best][col])) best = i;
            }
            if (best == n) throw RankDeficient("generators span a lattice of rank < 3");
            std::swap(a[r], a[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < n; ++i) {
                if (a[i][col] == 0) continue;
                Int q = floor_div(a[i][col], a[r][col]);
                for (int k = col; k < 3; ++k) a[i][k] -= q * a[r][k];
                if (a[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[r][col] < 0)
            for (int k = col; k < 3; ++k) a[r][k] = -a[r][k];
        ++r;
    }
    Lattice L;
    for (int i = 0; i < 3; ++i) L.mat[i] = a[i];
    for (int j = 1; j < 3; ++j) {
        for (int i = 0; i < j; ++i) {
            Int q = floor_div(L.mat[i][j], L.mat[j][j]);
            if (q != 0)
                for (int k = j; k < 3; ++k) L.mat[i][k] -= q * L.mat[j][k];
        }
    }
    L.den = den_in;
    Int g = den_in;
    for (const auto& row : L.mat)
        for (const auto& v : row) g = gcd(g, v);
    if (g > 1) {
        for (auto& row : L.mat)
            for (auto& v : row) v /= g;
        L.den /= g;
    }
    return L;
}

Lattice hnf(std::span<const Element> gens) {
    Int d = 1;
    for (const auto& g : gens) d = lcm(d, g.den);
    std::vector<Vec3> rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) {
        Int s = d / g.den;
        rows.push_back({g.num[0] * s, g.num[1] * s, g.num[2] * s});
    }
    return hnf(std::move(rows), d);
}

bool contains(const Lattice& L, const Element& x) {
    // x * L.den must be an integer combination of the rows
    Vec3 w;
    for (int i = 0; i < 3; ++i) {
        Int v = x.num[i] * L.den;
        if (!mpz_divisible_p(v.get_mpz_t(), x.den.get_mpz_t())) return false;
        w[i] = v / x.den;
    }
    for (int i = 0; i < 3; ++i) {
        if (!mpz_divisible_p(w[i].get_mpz_t(), L.mat[i][i].get_mpz_t())) return false;
        Int c = w[i] / L.mat[i][i];
        if (c != 0)
            for (int k = i; k < 3; ++k) w[k] -= c * L.mat[i][k];
    }
    return true;
}

bool is_sublattice(const Lattice& inner, const Lattice& outer) {
    for (int i = 0; i < 3; ++i)
        if (!contains(outer, inner.row(i))) return false;
    return true;
}

Rational index(const Lattice& inner, const Lattice& outer) {
    if (!is_sublattice(inner, outer)) throw ContainmentError("index: lattice is not contained in the outer lattice");
    return inner.covolume() / outer.covolume();
}

QVec3 lattice_coords(const Lattice& L, const Element& x) {
    QVec3 w;
    for (int i = 0; i < 3; ++i) w[i] = make_q(x.num[i] * L.den, x.den);
    QVec3 c;
    for (int i = 0; i < 3; ++i) {
        c[i] = w[i] / Rational(L.mat[i][i]);
        for (int k = i; k < 3; ++k) w[k] -= c[i] * Rational(L.mat[i][k]);
    }
    return c;
}

Lattice sum(const Lattice& a, const Lattice& b) {
    std::vector<Element> g;
    for (int i = 0; i < 3; ++i) g.push_back(a.row(i));
    for (int i = 0; i < 3; ++i) g.push_back(b.row(i));
    return hnf(g);
}

Lattice scale(const MultTable& t, const Lattice& L, const Element& x) {
    std::vector<Element> g;
    for (int i = 0; i < 3; ++i) g.push_back(t.mul(L.row(i), x));
    return hnf(g);
}

Lattice scale(const Lattice& L, const Rational& q) {
    if (q == 0) throw RankDeficient("scaling by zero");
    std::vector<Vec3> rows(L.mat.begin(), L.mat.end());
    for (auto& r : rows)
        for (auto& v : r) v *= q.get_num();
    return hnf(std::move(rows), L.den * q.get_den());
}

Lattice module_product(const MultTable& t, const Lattice& a, const Lattice& b) {
    std::vector<Vec3> rows;
    rows.reserve(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rows.push_back(t.mul(a.mat[i], b.mat[j]));
    return hnf(std::move(rows), a.den * b.den);
}

Lattice dual(const Lattice& L) {
    QMat3 inv = inverse(to_q(L.mat));
    std::vector<Element> g;
    for (int i = 0; i < 3; ++i) {
        // column i of den * mat^{-1}
        Int d = lcm(lcm(inv[0][i].get_den(), inv[1][i].get_den()), inv[2][i].get_den());
        Vec3 n;
        for (int k = 0; k < 3; ++k) n[k] = inv[k][i].get_num() * (d / inv[k][i].get_den()) * L.den;
        g.emplace_back(n, d);
    }
    return hnf(g);
}

Lattice intersection(const Lattice& a, const Lattice& b) { return dual(sum(dual(a), dual(b))); }

Lattice colon(const MultTable& t, const Lattice& a, const Lattice& b) {
    Lattice r = scale(t, a, t.inverse(b.row(0)));
    for (int i = 1; i < 3; ++i) r = intersection(r, scale(t, a, t.inverse(b.row(i))));
    return r;
}

bool is_stable_under(const MultTable& t, const Lattice& L, const Lattice& ring) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!contains(L, t.mul(ring.row(i), L.row(j)))) return false;
    return true;
}

bool is_order(const MultTable& t, const Lattice& L) {
    if (L.den != 1) return false;
    if (!contains(L, Element::one())) return false;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            if (!contains(L, Element(t.mul(L.mat[i], L.mat[j])))) return false;
    return true;
}

Order make_order(const MultTable& t, const Lattice& L) {
    if (!is_order(t, L)) throw InvalidInput("lattice is not an order");
    Order O;
    O.lattice = L;
    O.f = L.mat[0][0] * L.mat[1][1] * L.mat[2][2];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            QVec3 c = lattice_coords(L, Element(t.mul(L.mat[i], L.mat[j])));
            for (int k = 0; k < 3; ++k) {
                if (c[k].get_den() != 1) throw InternalInconsistency("order product has non-integral coordinates");
                O.table.c[i][j][k] = c[k].get_num();
            }
        }
    }
    return O;
}

Order multiplicator_ring(const MultTable& t, const Lattice& M) { return make_order(t, colon(t, M, M)); }

Lattice conductor(const MultTable& t, const Order& O) { return colon(t, O.lattice, Lattice::identity()); }

// ---------------------------------------------------------------- intermediate lattices

namespace {

// solutions t in [0, n) of a t = c (mod n)
std::vector<Int> solve_congruence(const Int& a, const Int& c, const Int& n) {
    std::vector<Int> sols;
    if (n == 1) {
        sols.emplace_back(0);
        return sols;
    }
    Int g = gcd(a, n);
    if (mod_floor(c, g) != 0) return sols;
    Int ng = n / g;
    Int t0 = 0;
    if (ng > 1) {
        Int ag = mod_floor(a / g, ng), inv;
        mpz_invert(inv.get_mpz_t(), ag.get_mpz_t(), ng.get_mpz_t());
        t0 = mod_floor((c / g) * inv, ng);
    }
    for (Int k = 0; k < g; ++k) sols.push_back(t0 + k * ng);
    return sols;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t m = ds.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < m; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

} // namespace

void for_each_intermediate_lattice(const Lattice& inner, const Lattice& outer, unsigned long long ceiling,
                                   const std::function<void(const Lattice&)>& visit) {
    std::vector<Vec3> rel;
    for (int i = 0; i < 3; ++i) {
        QVec3 c = lattice_coords(outer, inner.row(i));
        Vec3 v;
        for (int k = 0; k < 3; ++k) {
            if (c[k].get_den() != 1) throw ContainmentError("inner lattice is not contained in outer lattice");
            v[k] = c[k].get_num();
        }
        rel.push_back(v);
    }
    Lattice H = hnf(rel);
    const Int &h1 = H.mat[0][0], &x = H.mat[0][1], &y = H.mat[0][2];
    const Int &h2 = H.mat[1][1], &z = H.mat[1][2], &h3 = H.mat[2][2];
    auto d1s = divisors(h1), d2s = divisors(h2), d3s = divisors(h3);

    struct Shape {
        Int d1, d2, d3;
        std::vector<Int> m23s;
    };
    // first pass: count
    unsigned long long total = 0;
    for (const auto& d1 : d1s)
        for (const auto& d2 : d2s)
            for (const auto& d3 : d3s) {
                Int a1 = h1 / d1, a2 = h2 / d2;
                for (const auto& m23 : solve_congruence(a2, z, d3)) {
                    for (const auto& m12 : solve_congruence(a1, x, d2)) {
                        Int b = (x - a1 * m12) / d2;
                        total += solve_congruence(a1, y - b * m23, d3).size();
                    }
                }
            }
    if (total > ceiling)
        throw CapacityError("intermediate lattice enumeration needs " + std::to_string(total) +
                                " lattices, ceiling is " + std::to_string(ceiling),
                            total);

    auto outer_rows = outer.rows();
    for (const auto& d1 : d1s)
        for (const auto& d2 : d2s)
            for (const auto& d3 : d3s) {
                Int a1 = h1 / d1, a2 = h2 / d2;
                for (const auto& m23 : solve_congruence(a2, z, d3)) {
                    for (const auto& m12 : solve_congruence(a1, x, d2)) {
                        Int b = (x - a1 * m12) / d2;
                        for (const auto& m13 : solve_congruence(a1, y - b * m23, d3)) {
                            Mat3 m{Vec3{d1, m12, m13}, Vec3{Int(0), d2, m23}, Vec3{Int(0), Int(0), d3}};
                            std::vector<Element> gens;
                            for (int i = 0; i < 3; ++i) {
                                Element e;
                                for (int k = 0; k < 3; ++k) {
                                    if (m[i][k] == 0) continue;
                                    Element term = outer_rows[k];
                                    for (auto& v : term.num) v *= m[i][k];
                                    term.normalize();
                                    e = e + term;
                                }
                                gens.push_back(e);
                            }
                            visit(hnf(gens));
                        }
                    }
                }
            }
}

} // namespace cubic
