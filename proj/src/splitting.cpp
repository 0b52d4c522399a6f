#include "cubic/splitting.hpp"

#include <algorithm>
#include <sstream>

#include "cubic/errors.hpp"
#include "cubic/modalg.hpp"

namespace cubic {

bool SplittingType::ramified() const {
    return std::any_of(pairs.begin(), pairs.end(), [](const auto& ef) { return ef.first > 1; });
}

std::string SplittingType::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) os << ",";
        os << "[" << pairs[i].first << "," << pairs[i].second << "]";
    }
    os << "]";
    return os.str();
}

PrimeSet::PrimeSet(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    if (std::adjacent_find(primes_.begin(), primes_.end()) != primes_.end())
        throw InvalidInput("prime set has repeated entries");
    if (primes_.size() < 2) throw InvalidInput("prime set needs at least two primes");
    for (auto p : primes_)
        if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
}

PrimeSet PrimeSet::parse(const std::string& csv) {
    std::vector<std::uint64_t> ps;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size() || v < 2) throw InvalidInput("bad prime '" + tok + "'");
            ps.push_back(static_cast<std::uint64_t>(v));
        } catch (const std::logic_error&) {
            throw InvalidInput("bad prime '" + tok + "'");
        }
    }
    return PrimeSet(ps);
}

std::string PrimeSet::str() const {
    std::string s;
    for (auto p : primes_) {
        if (!s.empty()) s += ",";
        s += std::to_string(p);
    }
    return s;
}

SplittingType splitting_type(const CubicField& field, std::uint64_t p) {
    if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
    SplittingType st;
    if (field.k % Int(static_cast<unsigned long>(p)) != 0) {
        for (const auto& [deg, mult] : factor_degrees_mod_p(field.poly, p)) st.pairs.emplace_back(mult, deg);
    } else {
        ModAlgebra A(field.table, p);
        auto rad = A.radical();
        int r = static_cast<int>(rad.size());
        int g = A.local_factors(rad);
        if (r == 0 && g == 3)
            st.pairs = {{1, 1}, {1, 1}, {1, 1}};
        else if (r == 0 && g == 2)
            st.pairs = {{1, 1}, {1, 2}};
        else if (r == 0 && g == 1)
            st.pairs = {{1, 3}};
        else if (r == 1 && g == 2)
            st.pairs = {{1, 1}, {2, 1}};
        else if (r == 2 && g == 1)
            st.pairs = {{3, 1}};
        else
            throw InternalInconsistency("impossible residue algebra shape at p = " + std::to_string(p));
    }
    std::sort(st.pairs.begin(), st.pairs.end());
    return st;
}

bool non_decomposed(const CubicField& field, std::uint64_t p) { return splitting_type(field, p).primes() == 1; }

unsigned lambda(const CubicField& field, const PrimeSet& S) {
    unsigned lam = 1;
    for (auto p : S.primes()) {
        SplittingType st = splitting_type(field, p);
        if (st.primes() != 1)
            throw PreconditionError("prime " + std::to_string(p) + " is decomposed in the field of " +
                                    field.poly.str());
        if (st.pairs[0].second == 3) lam *= 3;
    }
    return lam;
}

Rational density_diagnostic(const CubicField& field, std::uint64_t N) {
    if (N < 100) throw InvalidInput("density_diagnostic needs N >= 100");
    auto ps = primes_up_to(N);
    unsigned long hits = 0;
    for (auto p : ps)
        if (non_decomposed(field, p)) ++hits;
    return make_q(Int(hits), Int(static_cast<unsigned long>(ps.size())));
}

namespace {

Lattice ideal_from(const std::vector<Element>& gens, const Int& p) {
    std::vector<Element> all = gens;
    for (int i = 0; i < 3; ++i) {
        Vec3 v{Int(0), Int(0), Int(0)};
        v[i] = p;
        all.emplace_back(v);
    }
    return hnf(all);
}

Element lift(const ModAlgebra::Vec& v) { return Element({Int(v[0]), Int(v[1]), Int(v[2])}); }

} // namespace

std::vector<PrimeIdeal> prime_ideals_above(const CubicField& field, std::uint64_t p) {
    if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
    Int pz = static_cast<unsigned long>(p);
    std::vector<PrimeIdeal> out;
    const MultTable& t = field.table;
    if (field.k % pz != 0) {
        Element th = field.theta();
        for (const auto& fac : factor_mod_p(field.poly, p)) {
            Element g, pw = Element::one();
            for (auto c : fac.coeffs) {
                Element term = pw;
                for (auto& v : term.num) v *= Int(static_cast<unsigned long>(c));
                term.normalize();
                g = g + term;
                pw = t.mul(pw, th);
            }
            std::vector<Element> gens;
            for (int i = 0; i < 3; ++i) {
                Vec3 e{Int(0), Int(0), Int(0)};
                e[i] = 1;
                gens.push_back(t.mul(g, Element(e)));
            }
            out.push_back({ideal_from(gens, pz), pz, fac.multiplicity, fac.degree()});
        }
    } else {
        if (p > 2000) throw CapacityError("prime ideal search above an index divisor this large", p * p);
        ModAlgebra A(t, p);
        std::vector<std::vector<ModAlgebra::Vec>> ideals;
        ideals.push_back({});
        // lines: first nonzero coordinate 1
        for (int lead = 0; lead < 3; ++lead) {
            std::uint64_t n1 = lead < 2 ? p : 1, n2 = lead < 1 ? p : 1;
            for (std::uint64_t a = 0; a < n1; ++a)
                for (std::uint64_t b = 0; b < n2; ++b) {
                    ModAlgebra::Vec v{0, 0, 0};
                    v[lead] = 1;
                    if (lead + 1 < 3) v[lead + 1] = a;
                    if (lead + 2 < 3) v[lead + 2] = b;
                    if (A.is_ideal({v})) ideals.push_back({v});
                    // plane orthogonal to v
                    std::vector<std::vector<std::uint64_t>> m{{v[0], v[1], v[2]}};
                    std::vector<ModAlgebra::Vec> plane;
                    for (const auto& k : modp::kernel(m, p)) plane.push_back({k[0], k[1], k[2]});
                    if (A.is_ideal(plane)) ideals.push_back(plane);
                }
        }
        auto rank_of = [&](const std::vector<ModAlgebra::Vec>& v) { return v.empty() ? 0 : modp::rank(to_rows(v), p); };
        for (const auto& V : ideals) {
            bool maximal = true;
            for (const auto& W : ideals) {
                if (W.size() <= V.size()) continue;
                auto both = V;
                both.insert(both.end(), W.begin(), W.end());
                if (rank_of(both) == W.size()) {
                    maximal = false;
                    break;
                }
            }
            if (!maximal) continue;
            std::vector<Element> gens;
            for (const auto& v : V) gens.push_back(lift(v));
            Lattice P = ideal_from(gens, pz);
            int f = 3 - static_cast<int>(V.size());
            Lattice pO = scale(Lattice::identity(), Rational(pz));
            int e = 1;
            Lattice Pe = module_product(t, P, P);
            while (e < 3 && is_sublattice(pO, Pe)) {
                ++e;
                Pe = module_product(t, Pe, P);
            }
            out.push_back({P, pz, e, f});
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.f != b.f) return a.f < b.f;
        if (a.e != b.e) return a.e < b.e;
        return a.lattice < b.lattice;
    });
    return out;
}

} // namespace cubic
