#include "cubic/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cubic/errors.hpp"

namespace cubic {

std::string CubicPolynomial::str() const {
    std::ostringstream os;
    os << "x^3";
    auto term = [&](const Int& c, const char* mono) {
        if (c == 0) return;
        os << (c < 0 ? " - " : " + ");
        Int a = abs(c);
        if (a != 1 || mono[0] == '\0') os << a.get_str();
        os << mono;
    };
    term(a1, "x^2");
    term(a2, "x");
    term(a3, "");
    return os.str();
}

CubicPolynomial parse_polynomial(const std::string& text) {
    std::vector<Int> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        Int v;
        if (item.empty() || v.set_str(item, 10) != 0)
            throw InvalidInput("bad polynomial coefficient '" + item + "'");
        coeffs.push_back(v);
    }
    if (coeffs.size() != 3) throw InvalidInput("polynomial needs exactly three coefficients a1,a2,a3");
    return {coeffs[0], coeffs[1], coeffs[2]};
}

Int discriminant(const CubicPolynomial& f) {
    const Int &a = f.a1, &b = f.a2, &c = f.a3;
    return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

bool is_irreducible(const CubicPolynomial& f) {
    if (f.a3 == 0) return false;
    // every integer root divides a3
    std::vector<Int> divisors{1};
    for (const auto& [p, e] : factorize(f.a3)) {
        std::size_t n = divisors.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < n; ++i) divisors.push_back(divisors[i] * pk);
        }
    }
    for (const auto& d : divisors) {
        if (f.eval(d) == 0 || f.eval(Int(-d)) == 0) return false;
    }
    return true;
}

Signature signature(const CubicPolynomial& f) {
    Int d = discriminant(f);
    if (d == 0) throw InvalidInput("zero discriminant: " + f.str());
    return d < 0 ? Signature{1, 1} : Signature{3, 0};
}

std::pair<Rational, Rational> real_root_bracket(const CubicPolynomial& f, unsigned bits) {
    Int bound = 1 + std::max({abs(f.a1), abs(f.a2), abs(f.a3)});
    Rational lo(-bound), hi(bound);
    // f(lo) < 0 < f(hi); keep that invariant
    Rational width = hi - lo;
    Rational target(Int(1), Int(1) << bits);
    while (width > target) {
        Rational mid = (lo + hi) / 2;
        Rational v = f.eval(mid);
        if (v == 0) return {mid, mid};
        if (v < 0)
            lo = mid;
        else
            hi = mid;
        width = hi - lo;
    }
    return {lo, hi};
}

Roots complex_cubic_roots(const CubicPolynomial& f) {
    auto [lo, hi] = real_root_bracket(f, 70);
    long double r = to_ld(Rational((lo + hi) / 2));
    // polish
    long double a1 = to_ld(f.a1), a2 = to_ld(f.a2), a3 = to_ld(f.a3);
    for (int it = 0; it < 3; ++it) {
        long double v = ((r + a1) * r + a2) * r + a3;
        long double d = (3 * r + 2 * a1) * r + a2;
        if (d == 0) break;
        long double nr = r - v / d;
        if (!std::isfinite(nr)) break;
        r = nr;
    }
    long double b = a1 + r;
    long double c = a2 + r * b;
    long double disc = 4 * c - b * b;
    if (disc < 0) disc = 0;
    return {r, {-b / 2, std::sqrt(disc) / 2}};
}

long double t2_of_roots(const CubicPolynomial& f) {
    if (discriminant(f) > 0) return to_ld(Int(f.a1 * f.a1 - 2 * f.a2));
    Roots rt = complex_cubic_roots(f);
    return rt.real * rt.real + 2 * std::norm(rt.cplx);
}

namespace {

using Poly = std::vector<std::uint64_t>; // low to high, trimmed

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly reduce_poly(const CubicPolynomial& f, std::uint64_t p) {
    Poly c{modp::reduce(f.a3, p), modp::reduce(f.a2, p), modp::reduce(f.a1, p), 1 % p};
    trim(c);
    return c;
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
    trim(a);
    std::uint64_t lead_inv = modp::inv(m.back(), p);
    while (a.size() >= m.size()) {
        std::uint64_t q = modp::mul(a.back(), lead_inv, p);
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = modp::sub(a[shift + i], modp::mul(q, m[i], p), p);
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = modp::add(r[i + j], modp::mul(a[i], b[j], p), p);
    trim(r);
    return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t iv = modp::inv(a.back(), p);
        for (auto& v : a) v = modp::mul(v, iv, p);
    }
    return a;
}

Poly derivative(const Poly& a, std::uint64_t p) {
    Poly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(modp::mul(a[i], i % p, p));
    trim(d);
    return d;
}

// x^e mod m
Poly x_pow_mod(std::uint64_t e, const Poly& m, std::uint64_t p) {
    Poly result{1};
    Poly base = poly_mod(Poly{0, 1}, m, p);
    while (e) {
        if (e & 1) result = poly_mod(poly_mul(result, base, p), m, p);
        base = poly_mod(poly_mul(base, base, p), m, p);
        e >>= 1;
    }
    return result;
}

std::uint64_t eval_mod(const Poly& a, std::uint64_t x, std::uint64_t p) {
    std::uint64_t r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = modp::add(modp::mul(r, x, p), a[i], p);
    return r;
}

// Divide by (x - r), assuming r is a root.
Poly deflate(const Poly& a, std::uint64_t r, std::uint64_t p) {
    std::size_t n = a.size() - 1;
    Poly q(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = n; i-- > 0;) {
        carry = modp::add(a[i + 1], modp::mul(carry, r, p), p);
        q[i] = carry;
    }
    return q;
}

// The repeated root of a cubic with a multiple factor, p >= 5.
std::uint64_t repeated_root(const Poly& f, std::uint64_t p) {
    Poly g = poly_gcd(f, derivative(f, p), p);
    if (g.size() == 2) return modp::sub(0, g[0], p);
    if (g.size() == 3) {
        // g = (x - a)^2 = x^2 - 2a x + a^2
        return modp::mul(modp::sub(0, g[1], p), modp::inv(2, p), p);
    }
    throw InternalInconsistency("cubic has no repeated root mod p");
}

} // namespace

std::vector<std::pair<int, int>> factor_degrees_mod_p(const CubicPolynomial& f, std::uint64_t p) {
    if (p < 2) throw InvalidInput("modulus must be prime");
    std::vector<std::pair<int, int>> res;
    if (p <= 3) {
        for (const auto& fac : factor_mod_p(f, p)) res.emplace_back(fac.degree(), fac.multiplicity);
        std::sort(res.begin(), res.end());
        return res;
    }
    Poly fp = reduce_poly(f, p);
    if (modp::reduce(discriminant(f), p) == 0) {
        Poly g = poly_gcd(fp, derivative(fp, p), p);
        if (g.size() == 3 || g.size() == 4)
            res = {{1, 3}};
        else
            res = {{1, 1}, {1, 2}};
        return res;
    }
    Poly h = x_pow_mod(p, fp, p);
    if (h.size() < 2) h.resize(2, 0);
    h[1] = modp::sub(h[1], 1, p);
    trim(h);
    Poly g = poly_gcd(fp, h, p);
    std::size_t roots = g.empty() ? 3 : g.size() - 1;
    if (roots == 3)
        res = {{1, 1}, {1, 1}, {1, 1}};
    else if (roots == 1)
        res = {{1, 1}, {2, 1}};
    else
        res = {{3, 1}};
    return res;
}

std::vector<ModFactor> factor_mod_p(const CubicPolynomial& f, std::uint64_t p) {
    if (p >= (1ull << 31)) throw InvalidInput("factor_mod_p: modulus too large for root scan");
    Poly cur = reduce_poly(f, p);
    std::vector<ModFactor> res;
    std::vector<std::uint64_t> roots;
    for (std::uint64_t x = 0; x < p && cur.size() > 1; ++x) {
        while (cur.size() > 1 && eval_mod(cur, x, p) == 0) {
            roots.push_back(x);
            cur = deflate(cur, x, p);
        }
    }
    for (std::size_t i = 0; i < roots.size();) {
        std::size_t j = i;
        while (j < roots.size() && roots[j] == roots[i]) ++j;
        res.push_back({Poly{modp::sub(0, roots[i], p), 1}, static_cast<int>(j - i)});
        i = j;
    }
    if (cur.size() > 1) res.push_back({cur, 1});
    return res;
}

bool dedekind_p_maximal(const CubicPolynomial& f, std::uint64_t p) {
    Int disc = discriminant(f);
    Int P(static_cast<unsigned long>(p));
    if (disc % (P * P) != 0) return true;
    std::vector<ModFactor> facs;
    if (p < (1ull << 20)) {
        facs = factor_mod_p(f, p);
    } else {
        // a multiple factor exists since p | disc; for a cubic it is linear
        Poly fp = reduce_poly(f, p);
        std::uint64_t a = repeated_root(fp, p);
        std::uint64_t b = modp::sub(modp::sub(0, modp::reduce(f.a1, p), p), modp::mul(2, a, p), p);
        if (a == b) {
            facs = {{Poly{modp::sub(0, a, p), 1}, 3}};
        } else {
            facs = {{Poly{modp::sub(0, a, p), 1}, 2}, {Poly{modp::sub(0, b, p), 1}, 1}};
        }
    }
    using ZPoly = std::vector<Int>;
    auto zmul = [](const ZPoly& a, const ZPoly& b) {
        ZPoly r(a.size() + b.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    };
    ZPoly g{Int(1)}, h{Int(1)};
    for (const auto& fac : facs) {
        ZPoly lift;
        for (auto c : fac.coeffs) lift.emplace_back(static_cast<unsigned long>(c));
        g = zmul(g, lift);
        for (int e = 1; e < fac.multiplicity; ++e) h = zmul(h, lift);
    }
    ZPoly gh = zmul(g, h);
    ZPoly fz{f.a3, f.a2, f.a1, Int(1)};
    ZPoly F(std::max(fz.size(), gh.size()), Int(0));
    for (std::size_t i = 0; i < F.size(); ++i) {
        Int v = (i < fz.size() ? fz[i] : Int(0)) - (i < gh.size() ? gh[i] : Int(0));
        if (v % P != 0) throw InternalInconsistency("Dedekind: f - gh not divisible by p");
        F[i] = v / P;
    }
    Poly Fp;
    for (const auto& c : F) Fp.push_back(modp::reduce(c, p));
    trim(Fp);
    for (const auto& fac : facs) {
        if (fac.multiplicity < 2) continue;
        // gcd(F, g, h) contains this factor iff it divides F mod p
        if (Fp.empty() || poly_mod(Fp, fac.coeffs, p).empty()) return false;
    }
    return true;
}

} // namespace cubic
