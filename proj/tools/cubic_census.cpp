// cubic-census: field tables, per-field dossiers, order counts and partial
// zeta values, all backed by an append-only cache ($CUBIC_CACHE_DIR).
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cubic/commands.hpp"
#include "cubic/errors.hpp"

using namespace cubic;

namespace {

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush()) throw Error("cannot write " + path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counting orders of complex cubic fields by regulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with option values");
    std::string cache_dir;
    app.add_option("--cache", cache_dir, "cache directory (default $CUBIC_CACHE_DIR or ./.cubic-cache)");

    auto* fields = app.add_subcommand("fields", "enumerate complex cubic fields with |d_K| <= dmax into the cache");
    std::string dmax_s;
    fields->add_option("--dmax", dmax_s, "discriminant bound")->required();

    auto* analyze = app.add_subcommand("analyze", "print a dossier for the field of x^3 + a1 x^2 + a2 x + a3");
    std::string poly_s, analyze_primes = "2,3";
    analyze->add_option("--poly", poly_s, "a1,a2,a3 (use --poly=-1,0,1 for a leading minus)")->required();
    analyze->add_option("--primes", analyze_primes, "primes to report splitting for");
    bool no_cache = false;
    analyze->add_flag("--no-cache", no_cache, "do not read or write the cache");

    auto* count = app.add_subcommand("count", "count orders in O(S) by regulator and print the CSV report");
    std::string primes_s = "2,3", grid_s, xmax_s;
    Config cfg;
    count->add_option("--primes", primes_s, "the prime set S");
    count->add_option("--grid", grid_s, "x values, e.g. 100,1000,1e4")->required();
    count->add_option("--x-max", xmax_s, "census bound (default: largest grid value)");
    count->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    count->add_option("--field-bound-factor", cfg.field_bound_factor, "multiply the field search bound");
    count->add_option("--m-factor", cfg.m_factor, "multiply the unit power search bound");
    count->add_option("--class-ceiling", cfg.class_ceiling, "max local lattices per order");
    count->add_option("--lattice-ceiling", cfg.lattice_ceiling, "max intermediate lattices per field");
    count->add_option("--regulator-tol", cfg.regulator_abs_error, "max regulator enclosure width");
    count->add_option("--quadrature-tol", cfg.quadrature_rel_error, "relative error target for li(x)");
    std::string records_path, diag_path;
    count->add_option("--records", records_path, "also write the census rows as JSON-Lines to this file");
    count->add_option("--diagnostics", diag_path, "also write psi(x), pi~_S and boundary cases as CSV to this file");

    auto* zeta = app.add_subcommand("zeta", "partial zeta product and log-derivative check from a cached census");
    std::string s_list, zeta_primes = "2,3", cutoff_s;
    zeta->add_option("--s", s_list, "comma-separated s values, e.g. 1.2,1.5,2+1i")->required();
    zeta->add_option("--cutoff", cutoff_s, "regulator cutoff R")->required();
    zeta->add_option("--primes", zeta_primes, "the prime set S");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::filesystem::path dir = cache_dir.empty() ? Cache::default_dir() : std::filesystem::path(cache_dir);
        if (fields->parsed()) {
            Int dmax;
            if (dmax.set_str(dmax_s, 10) != 0) throw InvalidInput("dmax must be an integer");
            Cache cache(dir);
            FieldsResult r = cmd_fields(cache, dmax);
            std::cout << r.count << " fields with |d_K| <= " << dmax << (r.reused ? " (already cached)" : "") << "\n";
        } else if (analyze->parsed()) {
            CubicPolynomial f = parse_polynomial(poly_s);
            PrimeSet S = PrimeSet::parse(analyze_primes);
            if (no_cache) {
                std::cout << cmd_analyze(f, S);
            } else {
                Cache cache(dir);
                std::cout << cmd_analyze(f, S, &cache);
            }
        } else if (count->parsed()) {
            cfg.S = PrimeSet::parse(primes_s);
            cfg.grid = parse_grid(grid_s);
            if (!xmax_s.empty()) cfg.x_max = parse_real(xmax_s);
            Cache cache(dir);
            CountResult res = cmd_count(cache, cfg);
            if (!records_path.empty()) write_file(records_path, records_jsonl(res.census));
            if (!diag_path.empty()) write_file(diag_path, res.report.diagnostics_csv());
            std::cout << res.csv;
        } else if (zeta->parsed()) {
            PrimeSet S = PrimeSet::parse(zeta_primes);
            std::vector<std::complex<long double>> ss;
            for (const auto& t : split_csv(s_list)) ss.push_back(parse_complex(t));
            long double cutoff = to_ld(parse_real(cutoff_s));
            Cache cache(dir, Cache::Mode::ReadOnly);
            std::cout << cmd_zeta(cache, S, ss, cutoff);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
