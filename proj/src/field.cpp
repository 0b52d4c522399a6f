#include "cubic/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cubic/errors.hpp"
#include "cubic/modalg.hpp"
#include "cubic/splitting.hpp"

namespace cubic {

namespace {

// Basis of a lattice containing 1 whose first vector is 1: HNF in reversed
// coordinate order, read backwards (lower triangular).
std::array<Element, 3> one_first_basis(const Lattice& N) {
    std::vector<Vec3> rev;
    for (const auto& row : N.mat) rev.push_back({row[2], row[1], row[0]});
    Lattice H = hnf(rev, N.den);
    std::array<Element, 3> b;
    for (int i = 0; i < 3; ++i) b[i] = Element({H.mat[2 - i][2], H.mat[2 - i][1], H.mat[2 - i][0]}, H.den);
    return b;
}

MultTable rebase(const MultTable& t, const std::array<Element, 3>& b) {
    QMat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = b[i].coord(j);
    QMat3 inv = inverse(m);
    MultTable r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Element prod = t.mul(b[i], b[j]);
            for (int k = 0; k < 3; ++k) {
                Rational c = 0;
                for (int l = 0; l < 3; ++l) c += prod.coord(l) * inv[l][k];
                if (c.get_den() != 1) throw InternalInconsistency("enlarged order is not a ring");
                r.c[i][j][k] = c.get_num();
            }
        }
    }
    return r;
}

QMat3 mat_mul(const QMat3& a, const QMat3& b) {
    QMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            r[i][j] = 0;
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

QVec3 vec_mat(const QVec3& v, const QMat3& m) {
    QVec3 r;
    for (int j = 0; j < 3; ++j) {
        r[j] = 0;
        for (int k = 0; k < 3; ++k) r[j] += v[k] * m[k][j];
    }
    return r;
}

Element element_of(const QVec3& q) {
    Int d = lcm(lcm(q[0].get_den(), q[1].get_den()), q[2].get_den());
    Vec3 n;
    for (int k = 0; k < 3; ++k) n[k] = q[k].get_num() * (d / q[k].get_den());
    return Element(n, d);
}

QMat3 basis_q(const CubicField& F) {
    QMat3 b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[i][j] = make_q(F.basis_num[i][j], F.basis_den);
    return b;
}

} // namespace

Element CubicField::theta() const { return from_power({Rational(0), Rational(1), Rational(0)}); }

Element CubicField::from_power(const QVec3& power_coords) const {
    return element_of(vec_mat(power_coords, inverse(basis_q(*this))));
}

QVec3 CubicField::to_power(const Element& x) const {
    QVec3 v;
    for (int k = 0; k < 3; ++k) v[k] = x.coord(k);
    return vec_mat(v, basis_q(*this));
}

long double CubicField::sigma1(const Element& x) const {
    long double s = 0;
    for (int i = 0; i < 3; ++i) s += to_ld(x.num[i]) * real_emb[i];
    return s / to_ld(x.den);
}

std::complex<long double> CubicField::sigma2(const Element& x) const {
    std::complex<long double> s = 0;
    for (int i = 0; i < 3; ++i) s += to_ld(x.num[i]) * cplx_emb[i];
    return s / to_ld(x.den);
}

bool canonical_poly_less(const CubicPolynomial& a, const Int& da, const CubicPolynomial& b, const Int& db) {
    auto tup = [](const CubicPolynomial& p, const Int& d) {
        return std::array<Int, 7>{abs(d), abs(p.a1), abs(p.a2), abs(p.a3), p.a1, p.a2, p.a3};
    };
    return tup(a, da) < tup(b, db);
}

bool CubicField::canonical_less(const CubicField& o) const {
    if (abs(d_K) != abs(o.d_K)) return abs(d_K) < abs(o.d_K);
    return canonical_poly_less(poly, discriminant(poly), o.poly, discriminant(o.poly));
}

std::string CubicField::key() const { return d_K.get_str() + ":" + poly.str(); }

CubicField maximal_order(const CubicPolynomial& f, bool complex_only) {
    Int D = discriminant(f);
    if (D == 0) throw InvalidInput("polynomial " + f.str() + " has zero discriminant");
    if (!is_irreducible(f)) throw InvalidInput("polynomial " + f.str() + " is reducible");
    if (complex_only && D > 0) throw UnsupportedSignature("polynomial " + f.str() + " defines a totally real field");

    QMat3 B = to_q(Lattice::identity().mat);
    MultTable T = power_basis_table(f.a1, f.a2, f.a3);
    CubicField F;
    F.poly = f;

    for (const auto& [pz, e] : factorize(square_part_root(abs(D)))) {
        (void)e;
        std::uint64_t p = static_cast<std::uint64_t>(to_i64(pz));
        if (dedekind_p_maximal(f, p)) {
            F.certificates.push_back({pz, "dedekind"});
            continue;
        }
        while (true) {
            ModAlgebra A(T, p);
            std::vector<Vec3> gens;
            for (const auto& v : A.radical()) gens.push_back({Int(v[0]), Int(v[1]), Int(v[2])});
            for (int i = 0; i < 3; ++i) {
                Vec3 g{Int(0), Int(0), Int(0)};
                g[i] = pz;
                gens.push_back(g);
            }
            Lattice Ip = hnf(gens);
            Lattice N = colon(T, Ip, Ip);
            if (N == Lattice::identity()) break;
            auto nb = one_first_basis(N);
            if (!(nb[0] == Element::one())) throw InternalInconsistency("multiplier ring does not contain 1");
            T = rebase(T, nb);
            QMat3 Nq;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) Nq[i][j] = nb[i].coord(j);
            B = mat_mul(Nq, B);
        }
        F.certificates.push_back({pz, "multiplier"});
    }

    // canonical lower-triangular basis: HNF with reversed coordinate order
    Int den = 1;
    for (const auto& row : B)
        for (const auto& v : row) den = lcm(den, v.get_den());
    std::vector<Vec3> rev;
    for (const auto& row : B) {
        Vec3 r;
        for (int j = 0; j < 3; ++j) {
            Rational s = row[2 - j] * den;
            r[j] = s.get_num();
        }
        rev.push_back(r);
    }
    Lattice H = hnf(rev, den);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) F.basis_num[i][j] = H.mat[2 - i][2 - j];
    F.basis_den = H.den;
    if (F.basis_num[0][0] != F.basis_den) throw InternalInconsistency("integral basis of " + f.str() + " does not start with 1");

    Int diag = F.basis_num[0][0] * F.basis_num[1][1] * F.basis_num[2][2];
    Int den3 = F.basis_den * F.basis_den * F.basis_den;
    if (den3 % diag != 0) throw InternalInconsistency("power basis index is not an integer");
    F.k = den3 / diag;
    if (D % (F.k * F.k) != 0) throw InternalInconsistency("k^2 does not divide disc");
    F.d_K = D / (F.k * F.k);

    QMat3 Bq = basis_q(F), Binv = inverse(Bq);
    MultTable P = power_basis_table(f.a1, f.a2, f.a3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Element prod = P.mul(element_of(Bq[i]), element_of(Bq[j]));
            QVec3 pc;
            for (int k = 0; k < 3; ++k) pc[k] = prod.coord(k);
            QVec3 c = vec_mat(pc, Binv);
            for (int k = 0; k < 3; ++k) {
                if (c[k].get_den() != 1) throw InternalInconsistency("integral basis is not closed under products");
                F.table.c[i][j][k] = c[k].get_num();
            }
        }
    }

    if (D < 0) {
        Roots r = complex_cubic_roots(f);
        for (int i = 0; i < 3; ++i) {
            long double re = 0;
            std::complex<long double> z = 0, zp = 1;
            long double rp = 1;
            for (int j = 0; j < 3; ++j) {
                long double b = to_ld(Bq[i][j]);
                re += b * rp;
                z += b * zp;
                rp *= r.real;
                zp *= r.cplx;
            }
            F.real_emb[i] = re;
            F.cplx_emb[i] = z;
        }
    }
    return F;
}

bool find_root(const CubicPolynomial& f, const CubicField& field, Element* root) {
    if (discriminant(f) >= 0 || discriminant(field.poly) >= 0) return false;
    Roots r = complex_cubic_roots(f);
    for (int conj = 0; conj < 2; ++conj) {
        std::complex<long double> z = conj ? std::conj(r.cplx) : r.cplx;
        // rows: real embedding, Re sigma2, Im sigma2
        long double m[3][4];
        for (int i = 0; i < 3; ++i) {
            m[0][i] = field.real_emb[i];
            m[1][i] = field.cplx_emb[i].real();
            m[2][i] = field.cplx_emb[i].imag();
        }
        m[0][3] = r.real;
        m[1][3] = z.real();
        m[2][3] = z.imag();
        for (int c = 0; c < 3; ++c) {
            int piv = c;
            for (int i = c + 1; i < 3; ++i)
                if (std::fabs(m[i][c]) > std::fabs(m[piv][c])) piv = i;
            for (int j = 0; j < 4; ++j) std::swap(m[c][j], m[piv][j]);
            for (int i = 0; i < 3; ++i) {
                if (i == c) continue;
                long double q = m[i][c] / m[c][c];
                for (int j = c; j < 4; ++j) m[i][j] -= q * m[c][j];
            }
        }
        Vec3 coords;
        for (int i = 0; i < 3; ++i) coords[i] = Int(static_cast<long>(std::llround(m[i][3] / m[i][i])));
        Element beta(coords);
        const MultTable& t = field.table;
        Element b2 = t.mul(beta, beta), b3 = t.mul(b2, beta);
        Element val = b3;
        auto scaled = [](Element e, const Int& s) {
            for (auto& v : e.num) v *= s;
            e.normalize();
            return e;
        };
        val = val + scaled(b2, f.a1) + scaled(beta, f.a2) + Element({f.a3, Int(0), Int(0)});
        if (val.is_zero()) {
            if (root) *root = beta;
            return true;
        }
    }
    return false;
}

bool isomorphic(const CubicField& a, const CubicField& b) {
    if (a.d_K != b.d_K) return false;
    return find_root(a.poly, b);
}

long double hunter_t2_bound(const Int& a1, long double X) {
    long double a = to_ld(a1);
    return a * a / 3.0L + 2.0L * std::sqrt(X) / 3.0L;
}

std::vector<CubicField> enumerate_fields(const Int& X, EnumerationTally* tally_out) {
    EnumerationTally tally;
    if (X < 1) throw InvalidInput("enumerate_fields: X must be positive");
    const long double slack = 1.0L + 1e-12L;
    long double Xl = to_ld(X);

    struct Candidate {
        CubicField field;
        Int disc;
    };
    std::vector<Candidate> cands;
    for (int a1i = -1; a1i <= 1; ++a1i) {
        Int a1 = a1i;
        long double T = hunter_t2_bound(a1, Xl);
        long a2lo = static_cast<long>(std::ceil((a1i * a1i - T) / 2));
        long a2hi = static_cast<long>(std::floor((a1i * a1i + T) / 2));
        long a3max = static_cast<long>(std::floor(std::pow(T / 3.0L, 1.5L)));
        for (long a2 = a2lo; a2 <= a2hi; ++a2) {
            for (long a3 = -a3max; a3 <= a3max; ++a3) {
                ++tally.box;
                CubicPolynomial f{a1, Int(a2), Int(a3)};
                Int D = discriminant(f);
                if (D == 0) {
                    ++tally.zero_disc;
                    continue;
                }
                if (D > 0) {
                    ++tally.totally_real;
                    continue;
                }
                if (!is_irreducible(f)) {
                    ++tally.reducible;
                    continue;
                }
                long double t2 = t2_of_roots(f);
                if (t2 > T * slack) {
                    ++tally.t2_rejected;
                    continue;
                }
                Int s = square_part_root(-D);
                if (-D / (s * s) > X) {
                    ++tally.disc_prefilter;
                    continue;
                }
                CubicField F = maximal_order(f);
                if (abs(F.d_K) > X) {
                    ++tally.too_large;
                    continue;
                }
                if (t2 > hunter_t2_bound(a1, to_ld(Int(abs(F.d_K)))) * slack) {
                    ++tally.not_reduced;
                    continue;
                }
                cands.push_back({std::move(F), D});
            }
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return canonical_poly_less(a.field.poly, a.disc, b.field.poly, b.disc);
    });

    auto primes = first_primes(25);
    std::map<std::string, std::vector<std::size_t>> buckets;
    std::vector<CubicField> out;
    for (auto& c : cands) {
        std::string key = c.field.d_K.get_str();
        for (auto p : primes) key += "|" + splitting_type(c.field, p).str();
        auto& bucket = buckets[key];
        bool dup = false;
        for (auto idx : bucket)
            if (isomorphic(c.field, out[idx])) {
                dup = true;
                break;
            }
        if (dup) {
            ++tally.duplicates;
            continue;
        }
        bucket.push_back(out.size());
        out.push_back(std::move(c.field));
    }
    std::sort(out.begin(), out.end(), [](const CubicField& a, const CubicField& b) { return a.canonical_less(b); });
    tally.emitted = out.size();
    if (tally_out) *tally_out = tally;
    return out;
}

} // namespace cubic
