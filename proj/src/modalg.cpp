#include "cubic/modalg.hpp"

namespace cubic {

ModAlgebra::ModAlgebra(const MultTable& t, std::uint64_t p) : p_(p) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) c_[i][j][k] = modp::reduce(t.c[i][j][k], p);
}

ModAlgebra::Vec ModAlgebra::mul(const Vec& a, const Vec& b) const {
    Vec r{0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < 3; ++j) {
            if (b[j] == 0) continue;
            std::uint64_t ab = modp::mul(a[i], b[j], p_);
            for (int k = 0; k < 3; ++k) r[k] = modp::add(r[k], modp::mul(ab, c_[i][j][k], p_), p_);
        }
    }
    return r;
}

ModAlgebra::Vec ModAlgebra::pow(Vec a, Int e) const {
    Vec r = basis(0);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
        e >>= 1;
        if (e > 0) a = mul(a, a);
    }
    return r;
}

std::vector<std::vector<std::uint64_t>> to_rows(const std::vector<ModAlgebra::Vec>& v) {
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto& x : v) rows.emplace_back(x.begin(), x.end());
    return rows;
}

std::vector<ModAlgebra::Vec> ModAlgebra::radical() const {
    Int q = p_;
    while (q < 3) q *= p_;
    // columns are images of basis vectors, kernel = coefficient vectors
    std::vector<std::vector<std::uint64_t>> m(3, std::vector<std::uint64_t>(3));
    for (int i = 0; i < 3; ++i) {
        Vec img = pow(basis(i), q);
        for (int k = 0; k < 3; ++k) m[k][i] = img[k];
    }
    std::vector<Vec> out;
    for (const auto& v : modp::kernel(m, p_)) out.push_back({v[0], v[1], v[2]});
    return out;
}

int ModAlgebra::local_factors(const std::vector<Vec>& rad) const {
    // g = dim {x : x^p - x in rad} - dim rad
    auto rows = to_rows(rad);
    std::size_t r = rad.size();
    std::vector<std::vector<std::uint64_t>> stacked = rows;
    for (int i = 0; i < 3; ++i) {
        Vec img = pow(basis(i), Int(static_cast<unsigned long>(p_)));
        img[i] = modp::sub(img[i], 1, p_);
        stacked.emplace_back(img.begin(), img.end());
    }
    std::size_t image_mod_rad = modp::rank(stacked, p_) - r;
    return static_cast<int>(3 - image_mod_rad - r);
}

bool ModAlgebra::is_ideal(const std::vector<Vec>& v) const {
    auto rows = to_rows(v);
    std::size_t r = modp::rank(rows, p_);
    for (const auto& x : v) {
        for (int i = 0; i < 3; ++i) {
            auto ext = rows;
            Vec y = mul(x, basis(i));
            ext.emplace_back(y.begin(), y.end());
            if (modp::rank(ext, p_) != r) return false;
        }
    }
    return true;
}

} // namespace cubic
