#include "cubic/embedding.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "cubic/errors.hpp"

namespace cubic {

Gram embedding_gram(const CubicField& F, const Lattice& L, long double w1, long double w2) {
    std::array<long double, 3> s1;
    std::array<std::complex<long double>, 3> s2;
    for (int i = 0; i < 3; ++i) {
        Element r = L.row(i);
        s1[i] = F.sigma1(r);
        s2[i] = F.sigma2(r);
    }
    Gram g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g[i][j] = w1 * s1[i] * s1[j] + w2 * (s2[i].real() * s2[j].real() + s2[i].imag() * s2[j].imag());
    return g;
}

namespace {

using IMat = std::array<IVec3, 3>;

Gram transform(const Gram& G, const IMat& U) {
    Gram r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            long double s = 0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) s += static_cast<long double>(U[i][a]) * G[a][b] * static_cast<long double>(U[j][b]);
            r[i][j] = s;
        }
    return r;
}

// LLL on the Gram matrix; returns U with rows = new basis in old coordinates.
IMat lll(const Gram& G0) {
    IMat U{IVec3{1, 0, 0}, IVec3{0, 1, 0}, IVec3{0, 0, 1}};
    const long double delta = 0.99L;
    for (int guard = 0; guard < 10000; ++guard) {
        Gram G = transform(G0, U);
        // Gram-Schmidt coefficients from the Gram matrix
        long double mu[3][3] = {}, B[3];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < i; ++j) {
                long double s = G[i][j];
                for (int k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * B[k];
                mu[i][j] = s / B[j];
            }
            long double s = G[i][i];
            for (int k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * B[k];
            B[i] = s;
        }
        bool changed = false;
        for (int i = 1; i < 3 && !changed; ++i) {
            for (int j = i - 1; j >= 0; --j) {
                long double q = std::nearbyint(mu[i][j]);
                if (q != 0 && std::fabs(mu[i][j]) > 0.5L + 1e-12L) {
                    long long qi = static_cast<long long>(q);
                    for (int k = 0; k < 3; ++k) U[i][k] -= qi * U[j][k];
                    changed = true;
                    break;
                }
            }
            if (changed) break;
            if (B[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * B[i - 1]) {
                std::swap(U[i], U[i - 1]);
                changed = true;
            }
        }
        if (!changed) return U;
    }
    throw InternalInconsistency("LLL did not converge");
}

} // namespace

std::vector<IVec3> short_vectors(const Gram& G0, long double C, std::size_t cap) {
    IMat U = lll(G0);
    Gram G = transform(G0, U);
    // Cholesky-type decomposition q[i][i], q[i][j] (i < j), enumeration from the last coordinate
    long double q[3][3] = {};
    long double a[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = G[i][j];
    for (int i = 0; i < 3; ++i) {
        q[i][i] = a[i][i];
        for (int j = i + 1; j < 3; ++j) q[i][j] = a[i][j] / a[i][i];
        for (int k = i + 1; k < 3; ++k)
            for (int l = k; l < 3; ++l) a[k][l] -= q[i][k] * q[i][l] * q[i][i];
    }
    for (int i = 0; i < 3; ++i)
        if (!(q[i][i] > 0)) throw RankDeficient("quadratic form is not positive definite");

    std::vector<IVec3> out;
    const long double eps = 1e-15L * (1 + std::fabs(C));
    long long y[3];
    std::function<void(int, long double)> rec = [&](int i, long double rem) {
        long double c = 0;
        for (int j = i + 1; j < 3; ++j) c += q[i][j] * static_cast<long double>(y[j]);
        long double r = std::sqrt(std::max(rem + eps, 0.0L) / q[i][i]);
        long long lo = static_cast<long long>(std::ceil(-c - r)), hi = static_cast<long long>(std::floor(-c + r));
        for (long long v = lo; v <= hi; ++v) {
            y[i] = v;
            long double t = static_cast<long double>(v) + c;
            long double left = rem - q[i][i] * t * t;
            if (left < -eps) continue;
            if (i == 0) {
                if (y[0] == 0 && y[1] == 0 && y[2] == 0) continue;
                // keep one of +-y: last nonzero coordinate positive
                int k = y[2] != 0 ? 2 : (y[1] != 0 ? 1 : 0);
                if (y[k] < 0) continue;
                IVec3 x{0, 0, 0};
                for (int r2 = 0; r2 < 3; ++r2)
                    for (int s = 0; s < 3; ++s) x[s] += y[r2] * U[r2][s];
                out.push_back(x);
                if (out.size() > cap)
                    throw CapacityError("short vector enumeration exceeded " + std::to_string(cap) + " vectors", cap + 1);
            } else {
                rec(i - 1, left);
            }
        }
    };
    rec(2, C);
    return out;
}

IVec3 shortest_vector(const Gram& G0) {
    IMat U = lll(G0);
    Gram G = transform(G0, U);
    long double best = G[0][0];
    for (int i = 1; i < 3; ++i) best = std::min(best, G[i][i]);
    IVec3 bx{};
    long double bv = std::numeric_limits<long double>::infinity();
    for (const auto& x : short_vectors(G0, best * (1 + 1e-12L))) {
        long double v = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) v += static_cast<long double>(x[i]) * G0[i][j] * static_cast<long double>(x[j]);
        if (v < bv) {
            bv = v;
            bx = x;
        }
    }
    return bx;
}

Element combine(const Lattice& L, const IVec3& x) {
    Vec3 n{Int(0), Int(0), Int(0)};
    for (int i = 0; i < 3; ++i) {
        if (x[i] == 0) continue;
        Int xi = static_cast<long>(x[i]);
        for (int k = 0; k < 3; ++k) n[k] += xi * L.mat[i][k];
    }
    return Element(n, L.den);
}

} // namespace cubic
