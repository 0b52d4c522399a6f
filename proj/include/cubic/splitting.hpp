#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cubic/field.hpp"

namespace cubic {

struct SplittingType {
    std::vector<std::pair<int, int>> pairs;   // (e, f), sorted ascending

    int primes() const { return static_cast<int>(pairs.size()); }
    bool ramified() const;
    bool operator==(const SplittingType&) const = default;
    bool operator<(const SplittingType& o) const { return pairs < o.pairs; }
    std::string str() const;
};

// Sorted set of at least two distinct primes.
class PrimeSet {
public:
    explicit PrimeSet(std::vector<std::uint64_t> primes);
    static PrimeSet parse(const std::string& csv);
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    std::string str() const;
    bool operator==(const PrimeSet&) const = default;

private:
    std::vector<std::uint64_t> primes_;
};

SplittingType splitting_type(const CubicField& field, std::uint64_t p);
bool non_decomposed(const CubicField& field, std::uint64_t p);
// 3^(number of inert primes in S); PreconditionError if some p in S is decomposed.
unsigned lambda(const CubicField& field, const PrimeSet& S);
// Fraction of primes p <= N with one place above p.
Rational density_diagnostic(const CubicField& field, std::uint64_t N);

struct PrimeIdeal {
    Lattice lattice;   // integral-basis coordinates
    Int p;
    int e;
    int f;
};

// Prime ideals above p with their (e, f).
std::vector<PrimeIdeal> prime_ideals_above(const CubicField& field, std::uint64_t p);

} // namespace cubic
