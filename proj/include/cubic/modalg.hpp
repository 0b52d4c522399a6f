#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cubic/lattice.hpp"

namespace cubic {

// The F_p-algebra R/pR for a rank-3 ring R given by its structure constants.
class ModAlgebra {
public:
    using Vec = std::array<std::uint64_t, 3>;

    ModAlgebra(const MultTable& t, std::uint64_t p);

    std::uint64_t p() const { return p_; }
    Vec mul(const Vec& a, const Vec& b) const;
    Vec pow(Vec a, Int e) const;
    static Vec basis(int i) {
        Vec v{0, 0, 0};
        v[i] = 1;
        return v;
    }

    // Nilradical: kernel of x -> x^(p^j) with p^j >= 3.
    std::vector<Vec> radical() const;
    // Number of maximal ideals (local factors).
    int local_factors(const std::vector<Vec>& rad) const;
    // Is the subspace spanned by `v` an ideal?
    bool is_ideal(const std::vector<Vec>& v) const;

private:
    std::uint64_t p_;
    std::array<std::array<Vec, 3>, 3> c_{};
};

std::vector<std::vector<std::uint64_t>> to_rows(const std::vector<ModAlgebra::Vec>& v);

} // namespace cubic
