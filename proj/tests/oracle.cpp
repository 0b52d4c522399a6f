#include "oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace oracle {

using cubic::Lattice;
using cubic::Vec3;

namespace {

using QPoly = std::array<Rational, 3>;   // c0 + c1 t + c2 t^2 modulo f

QPoly mulmod(const CubicPolynomial& f, const QPoly& a, const QPoly& b) {
    std::array<Rational, 5> p;
    for (auto& v : p) v = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p[i + j] += a[i] * b[j];
    // t^3 = -a1 t^2 - a2 t - a3
    for (int d = 4; d >= 3; --d) {
        Rational c = p[d];
        p[d] = 0;
        p[d - 1] -= c * Rational(f.a1);
        p[d - 2] -= c * Rational(f.a2);
        p[d - 3] -= c * Rational(f.a3);
    }
    return {p[0], p[1], p[2]};
}

// columns: beta, beta t, beta t^2 in the power basis
std::array<std::array<Int, 3>, 3> mult_matrix(const CubicPolynomial& f, const std::array<Int, 3>& beta) {
    std::array<std::array<Int, 3>, 3> m;
    QPoly cur = {Rational(beta[0]), Rational(beta[1]), Rational(beta[2])};
    QPoly t = {Rational(0), Rational(1), Rational(0)};
    for (int col = 0; col < 3; ++col) {
        for (int r = 0; r < 3; ++r) m[r][col] = cur[r].get_num();
        cur = mulmod(f, cur, t);
    }
    return m;
}

Int det3(const std::array<std::array<Int, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool divides(const Int& d, const Int& n) { return n % d == 0; }

// beta / D integral over Z?
bool integral(const CubicPolynomial& f, const std::array<Int, 3>& beta, const Int& D) {
    auto m = mult_matrix(f, beta);
    Int tr = m[0][0] + m[1][1] + m[2][2];
    Int m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2] -
             m[1][2] * m[2][1];
    Int nm = det3(m);
    return divides(D, tr) && divides(D * D, m2) && divides(D * D * D, nm);
}

std::vector<std::complex<long double>> roots(const CubicPolynomial& f) {
    using C = std::complex<long double>;
    long double a = cubic::to_ld(f.a1), b = cubic::to_ld(f.a2), c = cubic::to_ld(f.a3);
    auto ev = [&](C z) { return ((z + a) * z + b) * z + c; };
    auto dv = [&](C z) { return (3.0L * z + 2.0L * a) * z + b; };
    std::vector<C> z = {C(1, 0), C(0.4L, 0.9L), C(-0.65L, 0.72L)};
    long double scale = 1 + std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
    for (auto& v : z) v *= scale;
    for (int it = 0; it < 2000; ++it) {
        for (int i = 0; i < 3; ++i) {
            C den = 1;
            for (int j = 0; j < 3; ++j)
                if (j != i) den *= z[i] - z[j];
            z[i] -= ev(z[i]) / den;
        }
    }
    for (auto& v : z)
        for (int it = 0; it < 5; ++it) v -= ev(v) / dv(v);
    return z;
}

void real_and_upper(const CubicPolynomial& f, long double& r, std::complex<long double>& z) {
    auto rs = roots(f);
    std::sort(rs.begin(), rs.end(), [](auto x, auto y) { return std::fabs(x.imag()) < std::fabs(y.imag()); });
    r = rs[0].real();
    z = rs[1].imag() > 0 ? rs[1] : rs[2];
}

bool solve3(long double A[3][3], long double b[3], long double x[3]) {
    int piv[3] = {0, 1, 2};
    for (int c = 0; c < 3; ++c) {
        int best = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::fabs(A[piv[r]][c]) > std::fabs(A[piv[best]][c])) best = r;
        std::swap(piv[c], piv[best]);
        if (std::fabs(A[piv[c]][c]) < 1e-30L) return false;
        for (int r = c + 1; r < 3; ++r) {
            long double q = A[piv[r]][c] / A[piv[c]][c];
            for (int k = c; k < 3; ++k) A[piv[r]][k] -= q * A[piv[c]][k];
            b[piv[r]] -= q * b[piv[c]];
        }
    }
    for (int c = 2; c >= 0; --c) {
        long double s = b[piv[c]];
        for (int k = c + 1; k < 3; ++k) s -= A[piv[c]][k] * x[k];
        x[c] = s / A[piv[c]][c];
    }
    return true;
}

bool reducible(const CubicPolynomial& f) {
    if (f.a3 == 0) return true;
    Int c = abs(f.a3);
    for (Int t = 1; t * t <= c; ++t) {
        if (c % t != 0) continue;
        for (Int cand : {t, Int(-t), Int(c / t), Int(-(c / t))})
            if (f.eval(cand) == 0) return true;
    }
    return false;
}

// membership in an upper-triangular HNF lattice (integer coordinates)
bool in_hnf(const cubic::Mat3& H, const Int& den, const cubic::Element& x) {
    // x = sum c_i row_i / den, rows upper triangular
    std::array<Rational, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = cubic::make_q(x.num[i] * den, x.den);
    for (int i = 0; i < 3; ++i) {
        Rational c = v[i] / Rational(H[i][i]);
        if (c.get_den() != 1) return false;
        for (int k = i; k < 3; ++k) v[k] -= c * Rational(H[i][k]);
    }
    return true;
}

} // namespace

Int sylvester_discriminant(const CubicPolynomial& f) {
    // rows of Sylv(f, f'), f = t^3 + a1 t^2 + a2 t + a3, f' = 3t^2 + 2 a1 t + a2
    Int S[5][5] = {{1, f.a1, f.a2, f.a3, 0},
                   {0, 1, f.a1, f.a2, f.a3},
                   {3, 2 * f.a1, f.a2, 0, 0},
                   {0, 3, 2 * f.a1, f.a2, 0},
                   {0, 0, 3, 2 * f.a1, f.a2}};
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k < 4; ++k) {
        if (S[k][k] == 0) {
            int r = k + 1;
            while (r < 5 && S[r][k] == 0) ++r;
            if (r == 5) return 0;
            for (int c = 0; c < 5; ++c) std::swap(S[k][c], S[r][c]);
            sign = -sign;
        }
        for (int i = k + 1; i < 5; ++i)
            for (int j = k + 1; j < 5; ++j) S[i][j] = (S[i][j] * S[k][k] - S[i][k] * S[k][j]) / prev;
        prev = S[k][k];
    }
    Int res = sign * S[4][4];
    return -res;   // disc = (-1)^{n(n-1)/2} Res(f, f') for monic f of degree 3
}

Rational resultant_norm(const CubicPolynomial& f, const std::array<Rational, 3>& g) {
    Rational S[5][5];
    Rational fr[4] = {Rational(1), Rational(f.a1), Rational(f.a2), Rational(f.a3)};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) S[r][c] = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 4; ++c) S[r][r + c] = fr[c];
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) S[2 + r][r + c] = g[2 - c];
    Rational d = 1;
    for (int k = 0; k < 5; ++k) {
        int piv = k;
        while (piv < 5 && S[piv][k] == 0) ++piv;
        if (piv == 5) return 0;
        if (piv != k) {
            for (int c = 0; c < 5; ++c) std::swap(S[k][c], S[piv][c]);
            d = -d;
        }
        d *= S[k][k];
        for (int r = k + 1; r < 5; ++r) {
            Rational q = S[r][k] / S[k][k];
            for (int c = k; c < 5; ++c) S[r][c] -= q * S[k][c];
        }
    }
    return d;
}

SlowField slow_closure(const CubicPolynomial& f) {
    SlowField out;
    out.poly = f;
    out.disc = sylvester_discriminant(f);
    Lattice L = Lattice::identity();
    for (const auto& [p, e] : cubic::factorize(out.disc)) {
        if (e < 2) continue;
        long pl = p.get_si();
        bool grew = true;
        while (grew) {
            grew = false;
            // multiplication matrices of the current basis rows; the matrix
            // of a combination is the same combination of them
            using i128 = __int128;
            i128 M[3][3][3];
            for (int i = 0; i < 3; ++i) {
                auto mi = mult_matrix(f, {L.mat[i][0], L.mat[i][1], L.mat[i][2]});
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 3; ++c) {
                        if (abs(mi[r][c]) > Int(1) << 40) throw std::logic_error("slow_closure: entries too large");
                        M[i][r][c] = mi[r][c].get_si();
                    }
            }
            Int Dp = L.den * p;
            if (Dp > 1000000) throw std::logic_error("slow_closure: denominator too large");
            i128 D = Dp.get_si();
            for (long c0 = 0; c0 < pl && !grew; ++c0)
                for (long c1 = 0; c1 < pl && !grew; ++c1)
                    for (long c2 = 0; c2 < pl && !grew; ++c2) {
                        if (c0 == 0 && c1 == 0 && c2 == 0) continue;
                        i128 m[3][3];
                        for (int r = 0; r < 3; ++r)
                            for (int c = 0; c < 3; ++c) m[r][c] = c0 * M[0][r][c] + c1 * M[1][r][c] + c2 * M[2][r][c];
                        if ((m[0][0] + m[1][1] + m[2][2]) % D != 0) continue;
                        i128 m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                                  m[1][1] * m[2][2] - m[1][2] * m[2][1];
                        if (m2 % (D * D) != 0) continue;
                        std::array<Int, 3> beta;
                        for (int j = 0; j < 3; ++j) beta[j] = c0 * L.mat[0][j] + c1 * L.mat[1][j] + c2 * L.mat[2][j];
                        if (!integral(f, beta, Dp)) continue;
                        std::vector<Vec3> rows;
                        for (int i = 0; i < 3; ++i) rows.push_back({L.mat[i][0] * p, L.mat[i][1] * p, L.mat[i][2] * p});
                        rows.push_back({beta[0], beta[1], beta[2]});
                        L = cubic::hnf(rows, Dp);
                        grew = true;
                    }
        }
    }
    out.basis = L;
    Rational covol = L.covolume();
    Rational dk = Rational(out.disc) * covol * covol;
    if (dk.get_den() != 1) throw std::logic_error("non-integral field discriminant");
    out.d_K = dk.get_num();
    Rational k = 1 / covol;
    if (k.get_den() != 1) throw std::logic_error("non-integral index");
    out.k = k.get_num();
    return out;
}

bool power_basis_isomorphic(const CubicPolynomial& f, const CubicPolynomial& g) {
    long double r, s;
    std::complex<long double> z, w;
    real_and_upper(f, r, z);
    real_and_upper(g, s, w);
    Int D = abs(sylvester_discriminant(f));
    for (int conj = 0; conj < 2; ++conj) {
        std::complex<long double> ww = conj ? std::conj(w) : w;
        long double A[3][3] = {{1, r, r * r}, {1, z.real(), (z * z).real()}, {0, z.imag(), (z * z).imag()}};
        long double b[3] = {s, ww.real(), ww.imag()}, x[3];
        if (!solve3(A, b, x)) continue;
        QPoly P;
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            long double v = std::round(x[i] * cubic::to_ld(D));
            if (!std::isfinite(v) || std::fabs(v) > 1e17L) {
                ok = false;
                break;
            }
            P[i] = cubic::make_q(Int(static_cast<long>(v)), D);
        }
        if (!ok) continue;
        // g(P) = ((P + a1) P + a2) P + a3
        QPoly acc = P;
        acc[0] += Rational(g.a1);
        acc = mulmod(f, acc, P);
        acc[0] += Rational(g.a2);
        acc = mulmod(f, acc, P);
        acc[0] += Rational(g.a3);
        if (acc[0] == 0 && acc[1] == 0 && acc[2] == 0) return true;
    }
    return false;
}

std::vector<SweepClass> sweep_fields(long X) {
    std::map<Int, std::vector<SweepClass>> by_d;
    for (long a = -1; a <= 1; ++a)
        for (long b = -20; b <= 20; ++b)
            for (long c = -40; c <= 40; ++c) {
                CubicPolynomial f{Int(a), Int(b), Int(c)};
                Int disc = sylvester_discriminant(f);
                if (disc >= 0 || reducible(f)) continue;
                Int sq = 1, rest = abs(disc);
                for (const auto& [p, e] : cubic::factorize(disc))
                    for (unsigned i = 0; i + 1 < e; i += 2) sq *= p;
                if (rest / (sq * sq) > X) continue;
                SlowField F = slow_closure(f);
                if (abs(F.d_K) > X) continue;
                auto& classes = by_d[F.d_K];
                bool placed = false;
                for (auto& cl : classes)
                    if (power_basis_isomorphic(cl.members.front(), f)) {
                        cl.members.push_back(f);
                        placed = true;
                        break;
                    }
                if (!placed) classes.push_back({F.d_K, {f}});
            }
    std::vector<SweepClass> out;
    for (auto& [d, cls] : by_d)
        for (auto& c : cls) out.push_back(std::move(c));
    return out;
}

std::optional<BoxUnit> box_unit(const cubic::CubicField& F, int B) {
    using i128 = __int128;
    std::array<std::array<std::array<long long, 3>, 3>, 3> M;   // mult matrix of each basis element
    for (int i = 0; i < 3; ++i) {
        auto m = mult_matrix(F.poly, {F.basis_num[i][0], F.basis_num[i][1], F.basis_num[i][2]});
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) M[i][r][c] = cubic::to_i64(m[r][c]);
    }
    i128 den3 = static_cast<i128>(cubic::to_i64(F.basis_den)) * cubic::to_i64(F.basis_den) * cubic::to_i64(F.basis_den);
    long double r;
    std::complex<long double> z;
    real_and_upper(F.poly, r, z);
    long double w[3];
    long double dd = cubic::to_ld(F.basis_den);
    for (int i = 0; i < 3; ++i)
        w[i] = (cubic::to_ld(F.basis_num[i][0]) + cubic::to_ld(F.basis_num[i][1]) * r +
                cubic::to_ld(F.basis_num[i][2]) * r * r) / dd;
    std::optional<BoxUnit> best;
    for (long x = -B; x <= B; ++x)
        for (long y = -B; y <= B; ++y)
            for (long t = -B; t <= B; ++t) {
                i128 m[3][3];
                for (int rr = 0; rr < 3; ++rr)
                    for (int cc = 0; cc < 3; ++cc)
                        m[rr][cc] = static_cast<i128>(x) * M[0][rr][cc] + static_cast<i128>(y) * M[1][rr][cc] +
                                    static_cast<i128>(t) * M[2][rr][cc];
                i128 n = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                if (n != den3 && n != -den3) continue;
                long double s = x * w[0] + y * w[1] + t * w[2];
                long double l = std::log(std::fabs(s));
                if (l < 1e-9L) continue;
                if (!best || l < best->log_abs_sigma1) best = BoxUnit{{Int(x), Int(y), Int(t)}, l};
            }
    return best;
}

long double li_series(long double x) {
    auto S = [](long double v) {
        const long double gamma = 0.577215664901532860606512090082402431L;
        long double L = std::log(v), term = 1, sum = 0;
        for (int n = 1; n < 400; ++n) {
            term *= L / n;
            sum += term / n;
            if (term / n < 1e-22L * sum) break;
        }
        return gamma + std::log(L) + sum;
    };
    return S(x) - S(2.0L);
}

cubic::SplittingType root_scan(const CubicPolynomial& f, std::uint64_t p) {
    int roots = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        Int v = f.eval(Int(static_cast<unsigned long>(x)));
        if (cubic::mod_floor(v, Int(static_cast<unsigned long>(p))) == 0) ++roots;
    }
    cubic::SplittingType st;
    if (roots == 3)
        st.pairs = {{1, 1}, {1, 1}, {1, 1}};
    else if (roots == 1)
        st.pairs = {{1, 1}, {1, 2}};
    else if (roots == 0)
        st.pairs = {{1, 3}};
    else
        throw std::logic_error("root_scan needs p not dividing disc");
    return st;
}

unsigned long picard_by_enumeration(const cubic::CubicField& F, const cubic::Order& O, unsigned long m,
                                    unsigned long h_K) {
    long f = O.f.get_si();
    std::array<std::array<std::array<long long, 3>, 3>, 3> M;
    for (int i = 0; i < 3; ++i) {
        auto mm = mult_matrix(F.poly, {F.basis_num[i][0], F.basis_num[i][1], F.basis_num[i][2]});
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) M[i][r][c] = cubic::to_i64(mm[r][c]);
    }
    Int den3 = F.basis_den * F.basis_den * F.basis_den;
    unsigned long units_K = 0, units_O = 0;
    for (long x = 0; x < f; ++x)
        for (long y = 0; y < f; ++y)
            for (long t = 0; t < f; ++t) {
                std::array<std::array<Int, 3>, 3> mm;
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 3; ++c) mm[r][c] = Int(static_cast<long>(x * M[0][r][c] + y * M[1][r][c] + t * M[2][r][c]));
                Int n = det3(mm) / den3;
                if (cubic::gcd(n, Int(f)) != 1) continue;
                ++units_K;
                if (in_hnf(O.lattice.mat, O.lattice.den, cubic::Element({Int(x), Int(y), Int(t)}))) ++units_O;
            }
    unsigned long num = h_K * units_K, den = units_O * m;
    if (num % den != 0) throw std::logic_error("Picard count is not an integer");
    return num / den;
}

unsigned long slow_module_classes(const cubic::CubicField& F, const cubic::Order& O, const cubic::UnitData& u) {
    long f = O.f.get_si();
    std::vector<long> divs;
    for (long d = 1; d <= f; ++d)
        if (f % d == 0) divs.push_back(d);
    std::vector<Lattice> valid;
    for (long d0 : divs)
        for (long d1 : divs)
            for (long d2 : divs)
                for (long h01 = 0; h01 < d1; ++h01)
                    for (long h02 = 0; h02 < d2; ++h02)
                        for (long h12 = 0; h12 < d2; ++h12) {
                            long a1 = f / d1;
                            if ((a1 * h12) % d2) continue;
                            long a0 = f / d0;
                            if ((a0 * h01) % d1) continue;
                            long b = a0 * h01 / d1;
                            if ((a0 * h02 - b * h12) % d2) continue;
                            cubic::Mat3 H{Vec3{Int(d0), Int(h01), Int(h02)}, Vec3{Int(0), Int(d1), Int(h12)},
                                          Vec3{Int(0), Int(0), Int(d2)}};
                            bool stable = true;
                            for (int i = 0; i < 3 && stable; ++i)
                                for (int j = 0; j < 3 && stable; ++j) {
                                    cubic::Element x = F.table.mul(O.lattice.row(i), cubic::Element(H[j]));
                                    stable = in_hnf(H, 1, x);
                                }
                            if (!stable) continue;
                            std::vector<Vec3> prods;
                            for (int i = 0; i < 3; ++i) {
                                Vec3 e{Int(0), Int(0), Int(0)};
                                e[i] = 1;
                                for (int j = 0; j < 3; ++j) prods.push_back(F.table.mul(cubic::Element(e), cubic::Element(H[j])).num);
                            }
                            if (!(cubic::hnf(prods) == Lattice::identity())) continue;
                            valid.push_back(cubic::hnf({H[0], H[1], H[2]}));
                        }
    std::map<Lattice, std::size_t> idx;
    for (std::size_t i = 0; i < valid.size(); ++i) idx[valid[i]] = i;
    std::vector<bool> seen(valid.size(), false);
    unsigned long orbits = 0;
    for (std::size_t i = 0; i < valid.size(); ++i) {
        if (seen[i]) continue;
        ++orbits;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            std::vector<Vec3> rows;
            for (int r = 0; r < 3; ++r) rows.push_back(F.table.mul(u.eps, valid[j].row(r)).num);
            auto it = idx.find(cubic::hnf(rows));
            if (it == idx.end()) throw std::logic_error("unit image left the lattice set");
            j = it->second;
        }
    }
    return orbits;
}

} // namespace oracle
