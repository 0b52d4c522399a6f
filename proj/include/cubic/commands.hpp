#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cubic/census.hpp"
#include "cubic/splitting.hpp"
#include "cubic/store.hpp"

namespace cubic {

struct Config {
    PrimeSet S{{2, 3}};
    Rational x_max{0};   // 0: the largest grid value
    std::vector<Rational> grid;
    long double regulator_abs_error = 1e-30L;
    long double quadrature_rel_error = 1e-10L;
    unsigned long long class_ceiling = 10000;
    unsigned long long lattice_ceiling = 1000000;
    unsigned field_bound_factor = 1;
    unsigned m_factor = 1;
    unsigned workers = 1;

    void validate() const;
    Rational x() const;
    CensusOptions census_options() const;
};

// Exit status for an exception escaping a command: 2 invalid input,
// 3 stale or incomplete cache, 4 capacity ceiling, 1 anything else.
int exit_code_for(const std::exception& e);

struct FieldsResult {
    std::size_t count = 0;   // fields with |d_K| <= dmax
    std::size_t added = 0;   // new cache entries
    bool reused = false;     // an earlier run already covered dmax
};
FieldsResult cmd_fields(Cache& cache, const Int& dmax);

// Fields with |d_K| <= bound in canonical order, enumerating only if the
// cache does not already cover the bound.
std::vector<CubicField> cached_fields(Cache& cache, const Int& bound);

// Human-readable summary of one field. With a cache, the unit and class
// group are stored (and reused) under the field key.
std::string cmd_analyze(const CubicPolynomial& poly, const PrimeSet& S, Cache* cache = nullptr);

// Census key, e.g. "S=2,3;x=1000;fb=1;mf=1"
std::string census_tag(const Config& cfg);

struct CountResult {
    Census census;
    CensusReport report;
    std::string csv;
};
CountResult cmd_count(Cache& cache, const Config& cfg);
// one record_json line per census row, in census order
std::string records_jsonl(const Census& census);

// "1.5", "2-0.5i", "1.2+3i"
std::complex<long double> parse_complex(const std::string& text);

// Reads records from the smallest complete census covering the cutoff;
// StaleCache if there is none.
std::vector<OrderRecord> cached_census_records(const Cache& cache, const PrimeSet& S, long double cutoff);
std::string cmd_zeta(const Cache& cache, const PrimeSet& S, const std::vector<std::complex<long double>>& s_values,
                     long double cutoff);

} // namespace cubic
