#include "cubic/units.hpp"

#include <cmath>

#include "cubic/embedding.hpp"
#include "cubic/errors.hpp"
#include "cubic/voronoi.hpp"

namespace cubic {

Interval log_abs_sigma1(const CubicField& F, const Element& x) {
    QVec3 c = F.to_power(x);
    std::size_t bits = 0;
    for (const auto& v : c) bits = std::max(bits, mpz_sizeinbase(v.get_num().get_mpz_t(), 2));
    unsigned prec = static_cast<unsigned>(std::min<std::size_t>(240, 120 + bits));
    auto [lo, hi] = real_root_bracket(F.poly, prec);
    Interval r(lo, hi);
    Interval v = Interval(c[0]) + Interval(c[1]) * r + Interval(c[2]) * r * r;
    if (v.contains_zero()) throw InternalInconsistency("cannot separate sigma1 from zero");
    return v.abs().log();
}

bool artin_inequality_holds(const CubicField& F, const Interval& R_K) {
    Interval rhs = Interval(4) * (Interval(3) * R_K).exp() + Interval(24);
    return Interval(Rational(abs(F.d_K))).certainly_lt(rhs);
}

namespace {

// Image of x in F_q under theta -> rho, or nullopt when a denominator vanishes.
std::optional<std::uint64_t> reduce_at(const CubicField& F, const Element& x, std::uint64_t q, std::uint64_t rho) {
    QVec3 c = F.to_power(x);
    std::uint64_t acc = 0, pw = 1;
    for (int j = 0; j < 3; ++j) {
        std::uint64_t den = modp::reduce(c[j].get_den(), q);
        if (den == 0) return std::nullopt;
        std::uint64_t v = modp::mul(modp::reduce(c[j].get_num(), q), modp::inv(den, q), q);
        acc = modp::add(acc, modp::mul(v, pw, q), q);
        pw = modp::mul(pw, rho, q);
    }
    return acc;
}

// Find a prime q = 1 mod k with a root rho of the polynomial such that eps
// is not a k-th power residue at (q, theta - rho).
bool non_power_witness(const CubicField& F, const Element& eps, std::uint64_t k, std::string& detail) {
    int tries = 0;
    for (std::uint64_t q = k + 1; tries < 400; q += k) {
        if (!is_prime(q)) continue;
        ++tries;
        for (const auto& fac : factor_mod_p(F.poly, q)) {
            if (fac.degree() != 1 || fac.multiplicity != 1) continue;
            std::uint64_t rho = modp::sub(0, fac.coeffs[0], q);
            auto e = reduce_at(F, eps, q, rho);
            if (!e || *e == 0) continue;
            if (modp::pow(*e, (q - 1) / k, q) != 1) {
                detail += " k=" + std::to_string(k) + ":q=" + std::to_string(q);
                return true;
            }
        }
    }
    return false;
}

void certify(const CubicField& F, UnitData& u) {
    Int ad = abs(F.d_K);
    if (ad > 24) {
        Interval bound(make_q((ad - 24) * (ad - 24), Int(16)));
        if ((Interval(3) * u.R_K).exp().certainly_lt(bound)) {
            u.certificate = "artin";
            u.detail = "e^(3R) < ((|d|-24)/4)^2";
            return;
        }
    }
    long double R = u.R_K.hi_ld();
    if (R <= 8.0L) {
        long double B = (std::exp(R) + 2 * std::exp(R / 2)) * (1 + 1e-9L);
        Lattice OK = Lattice::identity();
        std::size_t n = 0;
        for (const auto& x : short_vectors(t2_gram(F, OK), B)) {
            Element v = combine(OK, x);
            ++n;
            Rational N = F.table.norm(v);
            if (N != 1 && N != -1) continue;
            long double l = std::fabs(std::log(std::fabs(F.sigma1(v))));
            if (l > 1e-9L && l < u.R_K.lo_ld() - 1e-9L)
                throw InternalInconsistency("unit " + v.str() + " has smaller regulator than the Voronoi unit");
        }
        u.certificate = "exhaustive";
        u.detail = "no unit with 0 < R < R_K among " + std::to_string(n) + " vectors of T2 <= " +
                   std::to_string(static_cast<double>(B));
        return;
    }
    // a proper k-th root would have regulator R/k >= R_min
    long double Rmin = std::log((to_ld(ad) - 24) / 4) / 3;
    if (!(Rmin > 0)) throw InternalInconsistency("no lower bound for the regulator");
    std::string detail = "not a k-th power:";
    for (auto k : primes_up_to(static_cast<std::uint64_t>(R / Rmin))) {
        if (!non_power_witness(F, u.eps, k, detail))
            throw InternalInconsistency("no power-residue witness for k = " + std::to_string(k));
    }
    u.certificate = "power-residue";
    u.detail = detail;
}

UnitData from_cycle(const CubicField& F, const Cycle& c) {
    UnitData u;
    u.eps = c.product;
    if (!u.eps.is_integral()) throw InternalInconsistency("Voronoi unit is not integral");
    Rational N = F.table.norm(u.eps);
    if (N != 1 && N != -1) throw InternalInconsistency("Voronoi product is not a unit");
    u.R_K = log_abs_sigma1(F, u.eps);
    u.cycle_length = c.lattices.size();
    certify(F, u);
    return u;
}

} // namespace

UnitData fundamental_unit(const CubicField& F) {
    if (F.d_K > 0) throw UnsupportedSignature("fundamental_unit needs a complex cubic field");
    return from_cycle(F, voronoi_cycle(F, Lattice::identity()));
}

std::optional<UnitData> fundamental_unit_bounded(const CubicField& F, long double cutoff) {
    if (F.d_K > 0) throw UnsupportedSignature("fundamental_unit needs a complex cubic field");
    Cycle c = voronoi_cycle(F, Lattice::identity(), cutoff);
    if (!c.closed) return std::nullopt;
    return from_cycle(F, c);
}

unsigned long unit_index(const CubicField& F, const Order& O, const UnitData& u) {
    const Int& f = O.f;
    if (f == 1) return 1;
    // f O_K lies in O, so membership only depends on eps^m mod f
    auto red = [&](Element x) {
        for (auto& v : x.num) v = mod_floor(v, f);
        return x;
    };
    Element e = red(u.eps), p = e;
    Int limit = f * f * f;
    for (unsigned long m = 1; Int(m) <= limit; ++m) {
        if (contains(O.lattice, p)) return m;
        p = red(F.table.mul(p, e));
    }
    throw InternalInconsistency("unit index search exceeded |(O_K/fO_K)^*|");
}

RegulatorValue regulator_from(const Interval& R_K, unsigned long m) {
    RegulatorValue v;
    v.m = m;
    v.R = Interval(static_cast<long>(m)) * R_K;
    v.r = (Interval(3) * v.R).exp();
    return v;
}

RegulatorValue regulator(const CubicField& F, const Order& O, const UnitData& u) {
    return regulator_from(u.R_K, unit_index(F, O, u));
}

} // namespace cubic
