#include "cubic/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cubic/errors.hpp"

namespace cubic {

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r < 0) r += abs(b);
    return r;
}

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

std::int64_t to_i64(const Int& v) {
    if (!v.fits_slong_p()) throw InvalidInput("integer " + v.get_str() + " exceeds 64 bits");
    return v.get_si();
}

long double to_ld(const Int& v) {
    if (v.fits_slong_p()) return static_cast<long double>(v.get_si());
    std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    std::size_t shift = bits - 64;
    Int top = abs(v) >> shift;
    long double r = std::ldexp(static_cast<long double>(top.get_ui()), static_cast<int>(shift));
    return v < 0 ? -r : r;
}

long double to_ld(const Rational& v) {
    Int num = v.get_num();
    Int den = v.get_den();
    std::size_t nb = mpz_sizeinbase(num.get_mpz_t(), 2);
    std::size_t db = mpz_sizeinbase(den.get_mpz_t(), 2);
    if (nb < 60 && db < 60) return to_ld(num) / to_ld(den);
    // Scale so that the quotient keeps 64 significant bits.
    long shift = static_cast<long>(db) - static_cast<long>(nb) + 70;
    Int scaled = shift >= 0 ? Int(num << static_cast<unsigned long>(shift))
                            : Int(num >> static_cast<unsigned long>(-shift));
    Int q = scaled / den;
    return std::ldexp(to_ld(q), static_cast<int>(-shift));
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(std::uint64_t n) { return is_prime(Int(static_cast<unsigned long>(n))); }

namespace {

Int pollard_brent(const Int& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Int y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1, m = 128;
        auto f = [&](const Int& v) { return Int((v * v + c) % n); };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = (q * abs(x - y)) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(const Int& n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::vector<std::pair<Int, unsigned>> factorize(const Int& n_in) {
    if (n_in == 0) throw InvalidInput("factorize(0)");
    Int n = abs(n_in);
    std::vector<Int> primes;
    for (unsigned long p = 2; p < 100000 && Int(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    if (n > 1) factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Int, unsigned>> res;
    for (const auto& p : primes) {
        if (!res.empty() && res.back().first == p)
            ++res.back().second;
        else
            res.emplace_back(p, 1u);
    }
    return res;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> res;
    if (n < 2) return res;
    std::vector<bool> comp(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        res.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return res;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
    std::uint64_t bound = 32;
    while (true) {
        auto ps = primes_up_to(bound);
        if (ps.size() >= count) {
            ps.resize(count);
            return ps;
        }
        bound *= 2;
    }
}

Int square_part_root(const Int& n) {
    Int s = 1;
    for (const auto& [p, e] : factorize(n)) {
        for (unsigned i = 0; i < e / 2; ++i) s *= p;
    }
    return s;
}

Rational det(const QMat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Int det(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

QMat3 inverse(const QMat3& m) {
    Rational d = det(m);
    if (d == 0) throw RankDeficient("singular 3x3 matrix");
    QMat3 adj;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            // cofactor of (j, i), cyclic indices carry the sign
            adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    }
    for (auto& row : adj)
        for (auto& v : row) v /= d;
    return adj;
}

QMat3 to_q(const Mat3& m) {
    QMat3 q;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q[i][j] = Rational(m[i][j]);
    return q;
}

namespace modp {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw InvalidInput("inverse of zero mod p");
    return pow(a, p - 2, p);
}

std::uint64_t reduce(const Int& a, std::uint64_t p) {
    Int r = mod_floor(a, Int(static_cast<unsigned long>(p)));
    return r.get_ui();
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(std::vector<std::vector<std::uint64_t>>& m, std::uint64_t p) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        std::uint64_t iv = inv(m[r][c], p);
        for (auto& v : m[r]) v = mul(v, iv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            std::uint64_t f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = sub(m[i][j], mul(f, m[r][j], p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::size_t rank(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p) {
    return echelon(m, p).size();
}

std::vector<std::vector<std::uint64_t>> kernel(std::vector<std::vector<std::uint64_t>> m,
                                               std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> basis;
    if (m.empty()) return basis;
    std::size_t cols = m[0].size();
    auto pivots = echelon(m, p);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint64_t> v(cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = sub(0, m[r][free], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace modp

std::string to_string(const Int& v) { return v.get_str(); }

} // namespace cubic
