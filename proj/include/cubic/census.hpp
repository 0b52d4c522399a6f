#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cubic/class_numbers.hpp"
#include "cubic/field.hpp"
#include "cubic/interval.hpp"
#include "cubic/splitting.hpp"
#include "cubic/units.hpp"

namespace cubic {

// ceil(4x + 24); any field with an order of r(O) <= x has |d_K| below it.
Int field_bound(const Rational& x);

struct OrderRecord {
    std::string field_key;
    Int d_K;
    CubicPolynomial poly;
    Lattice lattice;   // order in the field's integral basis
    Int f;
    unsigned long m = 1;
    Interval R;
    Interval r;
    unsigned long h = 0;
    unsigned lambda = 1;
    unsigned long weight = 0;
    bool all_invertible = false;
    bool picard_identity = false;
    unsigned long picard_sum = 0;
};

bool record_less(const OrderRecord& a, const OrderRecord& b);

struct CensusOptions {
    Rational x{1000};
    std::vector<std::uint64_t> S{2, 3};
    unsigned field_bound_factor = 1;   // completeness probes multiply the search bounds
    unsigned m_factor = 1;
    unsigned long long class_ceiling = 10000;
    unsigned long long lattice_ceiling = 1000000;
    unsigned workers = 1;
    long double li_rel_tol = 1e-10L;
};

// All orders O of F in O(S) with r(O) <= x (r-intervals that merely touch
// x are included and flagged at report time).
std::vector<OrderRecord> enumerate_orders(const CubicField& F, const UnitData& u, const CensusOptions& opt);

struct FieldOutcome {
    CubicField field;
    bool in_CS = false;
    std::optional<UnitData> unit;   // empty: regulator exceeds log(x)/3
    std::vector<OrderRecord> records;
};

FieldOutcome process_field(const CubicField& F, const CensusOptions& opt);

struct Census {
    CensusOptions options;
    std::size_t fields_total = 0;
    std::size_t fields_in_CS = 0;
    std::size_t fields_with_unit = 0;
    std::vector<OrderRecord> records;   // sorted by record_less
};

// `lookup` may supply a cached outcome for a field; `store` sees every freshly
// computed outcome (serialized, in completion order when workers > 1).
Census run_census(const std::vector<CubicField>& fields, const CensusOptions& opt,
                  const std::function<std::optional<FieldOutcome>(const CubicField&)>& lookup = {},
                  const std::function<void(const FieldOutcome&)>& store = {});
Census run_census(const CensusOptions& opt);

struct PiCount {
    unsigned long long certain = 0;     // weight of records with r <= x for sure
    unsigned long long possible = 0;    // including records whose r-interval contains x
    unsigned long long tilde = 0;       // sum of h over certain records
    std::size_t ambiguous = 0;
};

PiCount pi_S(const std::vector<OrderRecord>& records, const Rational& x);

// integral of 1/log t over [2, x]; x < 2 is a domain error
long double li(long double x, long double rel_tol = 1e-10L);

long double psi(const std::vector<OrderRecord>& records, long double x);

// prod over records with R <= cutoff of (1 - e^{-sR})^weight
std::complex<long double> zeta_partial(const std::vector<OrderRecord>& records, std::complex<long double> s,
                                       long double cutoff);

struct LogDerivative {
    std::complex<long double> closed;   // sum w R e^{-sR} / (1 - e^{-sR})
    std::complex<long double> series;   // sum_n sum w R e^{-nsR}, until n Re(s) R > 50
    long double residual;               // |closed - series| / |closed|
};
LogDerivative zeta_log_derivative(const std::vector<OrderRecord>& records, std::complex<long double> s,
                                  long double cutoff);

struct ReportRow {
    Rational x;
    unsigned long long pi_S = 0;
    long double li = 0;
    long double x_over_log_x = 0;
    long double norm_err = 0;
    long double pi_tilde_lo = 0;
    unsigned long long pi_tilde_hi = 0;
    std::size_t ambiguous_count = 0;
    unsigned long long pi_S_possible = 0;
    unsigned long long pi_tilde = 0;
    long double psi = 0;
    long double psi_err = 0;               // |psi - x| / x^{3/4}
    std::vector<std::string> ambiguous;   // records whose r-interval contains x
};

struct CensusReport {
    std::vector<std::uint64_t> S;
    std::vector<ReportRow> rows;
    std::string csv() const;
    // x, pi_S_possible, pi_tilde, psi, psi_over_x, psi_err, ambiguous records
    std::string diagnostics_csv() const;
};

// Throws StaleCache when the grid reaches beyond the census bound.
CensusReport report(const Census& census, const std::vector<Rational>& grid);

// "100,1000,1e4" -> sorted grid; each value must be >= 2.
std::vector<Rational> parse_grid(const std::string& csv);
Rational parse_real(const std::string& text);
std::string format_real(const Rational& x);

} // namespace cubic
