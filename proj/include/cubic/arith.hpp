#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cubic {

using Int = mpz_class;
using Rational = mpq_class;

using Vec3 = std::array<Int, 3>;
using Mat3 = std::array<Vec3, 3>;

using QVec3 = std::array<Rational, 3>;
using QMat3 = std::array<QVec3, 3>;

// Floor division and non-negative remainder, b > 0 or b < 0 (floor semantics).
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// Checked narrowing; throws InvalidInput when the value does not fit.
std::int64_t to_i64(const Int& v);

// Best long-double approximation of an arbitrary precision integer.
long double to_ld(const Int& v);
long double to_ld(const Rational& v);

bool is_prime(const Int& n);
bool is_prime(std::uint64_t n);

// Prime factorization of |n| (n != 0), primes ascending. Trial division
// followed by Pollard-Brent on the cofactor.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

// All primes <= n.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// First `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

// Largest s with s^2 | n.
Int square_part_root(const Int& n);

// Exact rational 3x3 helpers.
Rational det(const QMat3& m);
Int det(const Mat3& m);
QMat3 inverse(const QMat3& m);   // throws RankDeficient when singular
QMat3 to_q(const Mat3& m);

// Modular arithmetic for word-size primes.
namespace modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return (s >= p || s < a) ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + (p - b);
}
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
std::uint64_t reduce(const Int& a, std::uint64_t p);

// Rank of a small dense matrix over F_p (entries already reduced).
std::size_t rank(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p);

// Basis of the right kernel {v : m v = 0} over F_p.
std::vector<std::vector<std::uint64_t>> kernel(std::vector<std::vector<std::uint64_t>> m,
                                               std::uint64_t p);

} // namespace modp

std::string to_string(const Int& v);

// num / den in lowest terms
inline Rational make_q(const Int& num, const Int& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

} // namespace cubic
