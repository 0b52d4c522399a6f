#pragma once

#include <string>
#include <utility>

#include <mpfr.h>

#include "cubic/arith.hpp"

namespace cubic {

// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
class Interval {
public:
    static constexpr mpfr_prec_t kPrec = 256;

    Interval();
    explicit Interval(long v);
    explicit Interval(const Rational& q);
    Interval(const Rational& lo, const Rational& hi);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(Interval o) noexcept;
    ~Interval();

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval operator-() const;

    Interval abs() const;
    Interval log() const;   // requires lo > 0
    Interval exp() const;

    bool contains_zero() const;
    // certainly below / above a rational threshold
    bool certainly_lt(const Interval& o) const;
    bool certainly_le(const Interval& o) const;

    long double lo_ld() const;
    long double hi_ld() const;
    long double mid_ld() const;
    long double width_ld() const;
    double width_log10() const;

    // "<midpoint>±1e<k>" with 1e<k> an upper bound on the radius
    std::string str(int digits = 30) const;
    // midpoint as a decimal string with `digits` significant digits
    std::string mid_str(int digits) const;

    // endpoints as decimal strings, lo rounded down and hi rounded up
    std::pair<std::string, std::string> bounds_str(int digits = 40) const;
    static Interval from_bounds(const std::string& lo, const std::string& hi);
    // enclosure whose endpoints are exactly representable by bounds_str
    Interval outward(int digits = 40) const;
    // round-to-nearest decimal strings that parse back to the same endpoints
    std::pair<std::string, std::string> exact_bounds() const;
    static Interval from_exact_bounds(const std::string& lo, const std::string& hi);

    const __mpfr_struct* lo() const { return lo_; }
    const __mpfr_struct* hi() const { return hi_; }

private:
    mpfr_t lo_, hi_;
};

} // namespace cubic
