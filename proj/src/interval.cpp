#include "cubic/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "cubic/errors.hpp"

namespace cubic {

Interval::Interval() {
    mpfr_init2(lo_, kPrec);
    mpfr_init2(hi_, kPrec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(long v) : Interval() {
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Rational& q) : Interval() {
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi) : Interval() {
    if (hi < lo) throw InvalidInput("interval with hi < lo");
    mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
    mpfr_init2(lo_, kPrec);
    mpfr_init2(hi_, kPrec);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval() {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-() const {
    Interval r;
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_t t;
    mpfr_init2(t, Interval::kPrec);
    const __mpfr_struct* al[2] = {a.lo_, a.hi_};
    const __mpfr_struct* bl[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : al)
        for (auto y : bl) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw InvalidInput("interval division by an interval containing zero");
    Interval inv;
    mpfr_t one;
    mpfr_init2(one, Interval::kPrec);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_div(inv.lo_, one, b.hi_, MPFR_RNDD);
    mpfr_div(inv.hi_, one, b.lo_, MPFR_RNDU);
    mpfr_clear(one);
    return a * inv;
}

Interval Interval::abs() const {
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    Interval r;
    mpfr_set_zero(r.lo_, 1);
    if (mpfr_cmpabs(lo_, hi_) > 0)
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    else
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::log() const {
    if (mpfr_sgn(lo_) <= 0) throw InvalidInput("log of an interval that is not positive");
    Interval r;
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::exp() const {
    Interval r;
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::certainly_lt(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }
bool Interval::certainly_le(const Interval& o) const { return mpfr_lessequal_p(hi_, o.lo_); }

long double Interval::lo_ld() const { return mpfr_get_ld(lo_, MPFR_RNDD); }
long double Interval::hi_ld() const { return mpfr_get_ld(hi_, MPFR_RNDU); }

long double Interval::mid_ld() const {
    mpfr_t m;
    mpfr_init2(m, kPrec + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    long double v = mpfr_get_ld(m, MPFR_RNDN);
    mpfr_clear(m);
    return v;
}

long double Interval::width_ld() const {
    mpfr_t w;
    mpfr_init2(w, kPrec);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    long double v = mpfr_get_ld(w, MPFR_RNDU);
    mpfr_clear(w);
    return v;
}

double Interval::width_log10() const {
    long double w = width_ld();
    if (w <= 0) return -1e9;
    return static_cast<double>(std::log10(w));
}

std::string Interval::mid_str(int digits) const {
    mpfr_t m;
    mpfr_init2(m, kPrec + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    int n = mpfr_snprintf(nullptr, 0, fmt.c_str(), m);
    std::string s(static_cast<std::size_t>(n) + 1, '\0');
    mpfr_snprintf(s.data(), s.size(), fmt.c_str(), m);
    s.resize(static_cast<std::size_t>(n));
    mpfr_clear(m);
    return s;
}

std::string Interval::str(int digits) const {
    double w = width_log10();
    // radius <= width <= 10^ceil(log10 width)
    int e = w < -1e8 ? -(digits + 5) : static_cast<int>(std::ceil(w));
    return mid_str(digits) + "±1e" + std::to_string(e);
}

namespace {

std::string directed(const __mpfr_struct* v, int digits, mpfr_rnd_t rnd) {
    const char* mode = rnd == MPFR_RNDD ? "RDe" : rnd == MPFR_RNDU ? "RUe" : "RNe";
    std::string fmt = "%." + std::to_string(digits - 1) + mode;
    int n = mpfr_snprintf(nullptr, 0, fmt.c_str(), v);
    std::string s(static_cast<std::size_t>(n) + 1, '\0');
    mpfr_snprintf(s.data(), s.size(), fmt.c_str(), v);
    s.resize(static_cast<std::size_t>(n));
    return s;
}

} // namespace

std::pair<std::string, std::string> Interval::bounds_str(int digits) const {
    return {directed(lo_, digits, MPFR_RNDD), directed(hi_, digits, MPFR_RNDU)};
}

Interval Interval::from_bounds(const std::string& lo, const std::string& hi) {
    Interval r;
    if (mpfr_set_str(r.lo_, lo.c_str(), 10, MPFR_RNDD) != 0)
        throw InvalidInput("bad interval bound '" + lo + "'");
    if (mpfr_set_str(r.hi_, hi.c_str(), 10, MPFR_RNDU) != 0)
        throw InvalidInput("bad interval bound '" + hi + "'");
    if (mpfr_nan_p(r.lo_) || mpfr_nan_p(r.hi_) || mpfr_greater_p(r.lo_, r.hi_))
        throw InvalidInput("bad interval [" + lo + ", " + hi + "]");
    return r;
}

namespace {

// shortest round-to-nearest decimal that reads back as exactly v
std::string shortest(const __mpfr_struct* v) {
    int most = static_cast<int>(mpfr_get_str_ndigits(10, Interval::kPrec));
    mpfr_t back;
    mpfr_init2(back, Interval::kPrec);
    std::string s;
    for (int d = 17; d <= most; ++d) {
        s = directed(v, d, MPFR_RNDN);
        mpfr_set_str(back, s.c_str(), 10, MPFR_RNDN);
        if (mpfr_equal_p(back, v)) break;
    }
    mpfr_clear(back);
    return s;
}

} // namespace

std::pair<std::string, std::string> Interval::exact_bounds() const { return {shortest(lo_), shortest(hi_)}; }

Interval Interval::from_exact_bounds(const std::string& lo, const std::string& hi) {
    Interval r;
    if (mpfr_set_str(r.lo_, lo.c_str(), 10, MPFR_RNDN) != 0)
        throw InvalidInput("bad interval bound '" + lo + "'");
    if (mpfr_set_str(r.hi_, hi.c_str(), 10, MPFR_RNDN) != 0)
        throw InvalidInput("bad interval bound '" + hi + "'");
    if (mpfr_nan_p(r.lo_) || mpfr_nan_p(r.hi_) || mpfr_greater_p(r.lo_, r.hi_))
        throw InvalidInput("bad interval [" + lo + ", " + hi + "]");
    return r;
}

Interval Interval::outward(int digits) const {
    // nearest binary to a decimal below lo_ is still <= lo_ (lo_ is a candidate)
    auto [l, h] = bounds_str(digits);
    return from_exact_bounds(l, h);
}

} // namespace cubic
