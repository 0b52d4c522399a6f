#include "cubic/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

#include "cubic/errors.hpp"

namespace cubic {

void Config::validate() const {
    if (grid.empty()) throw InvalidInput("empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 2) throw InvalidInput("grid values must be >= 2");
        if (i && !(grid[i - 1] < grid[i])) throw InvalidInput("grid must be strictly ascending");
    }
    if (x_max != 0 && x_max < grid.back()) throw InvalidInput("x_max is below the largest grid value");
    if (!(regulator_abs_error > 0) || !(quadrature_rel_error > 0)) throw InvalidInput("precision targets must be positive");
    if (quadrature_rel_error < 1e-14L) throw InvalidInput("quadrature error target below 1e-14 is not reachable");
    if (field_bound_factor == 0 || m_factor == 0) throw InvalidInput("bound factors must be >= 1");
    if (workers == 0) throw InvalidInput("worker count must be >= 1");
}

Rational Config::x() const { return x_max != 0 ? x_max : grid.back(); }

CensusOptions Config::census_options() const {
    CensusOptions o;
    o.x = x();
    o.S = S.primes();
    o.field_bound_factor = field_bound_factor;
    o.m_factor = m_factor;
    o.class_ceiling = class_ceiling;
    o.lattice_ceiling = lattice_ceiling;
    o.workers = workers;
    o.li_rel_tol = quadrature_rel_error;
    return o;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const StaleCache*>(&e)) return 3;
    if (dynamic_cast<const CapacityError*>(&e)) return 4;
    if (dynamic_cast<const InvalidInput*>(&e) || dynamic_cast<const UnsupportedSignature*>(&e) ||
        dynamic_cast<const PreconditionError*>(&e) || dynamic_cast<const RankDeficient*>(&e))
        return 2;
    return 1;
}

namespace {

const std::string kFieldsMarker = "fields:dmax=";

// Largest dmax recorded as fully enumerated, or -1.
Int covered_dmax(const Cache& cache) {
    Int best = -1;
    for (const auto& [key, payload] : cache.scan("report", kFieldsMarker)) {
        Int d = int_from(payload->at("dmax"));
        if (d > best) best = d;
    }
    return best;
}

std::string power_str(const QVec3& c) {
    static const char* mono[3] = {"", "theta", "theta^2"};
    std::string out;
    for (int i = 0; i < 3; ++i) {
        if (c[i] == 0) continue;
        Rational a = abs(c[i]);
        std::string coef = a == 1 && i > 0 ? "" : a.get_str();
        if (!coef.empty() && i > 0) coef += "*";
        if (out.empty())
            out = (c[i] < 0 ? "-" : "") + coef + mono[i];
        else
            out += (c[i] < 0 ? " - " : " + ") + coef + mono[i];
    }
    return out.empty() ? "0" : out;
}

std::string lattice_str(const Lattice& L) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 3; ++i) {
        os << (i ? ", [" : "[");
        for (int k = 0; k < 3; ++k) os << (k ? "," : "") << L.mat[i][k];
        os << "]";
    }
    os << "]";
    if (L.den != 1) os << "/" << L.den;
    return os.str();
}

std::string split_name(const SplittingType& st) {
    if (st.pairs == std::vector<std::pair<int, int>>{{1, 3}}) return "inert";
    if (st.pairs == std::vector<std::pair<int, int>>{{3, 1}}) return "totally ramified";
    if (st.pairs.size() == 3) return "totally split";
    if (st.ramified()) return "partially ramified";
    return "split";
}

} // namespace

FieldsResult cmd_fields(Cache& cache, const Int& dmax) {
    if (dmax < 0) throw InvalidInput("dmax must be non-negative");
    FieldsResult res;
    if (covered_dmax(cache) >= dmax) {
        res.reused = true;
        for (const auto& [key, payload] : cache.scan("field", ""))
            if (abs(int_from(payload->at("d_K"))) <= dmax) ++res.count;
        return res;
    }
    std::vector<CubicField> fields = enumerate_fields(dmax);
    for (const auto& F : fields)
        if (cache.put("field", F.key(), field_json(F))) ++res.added;
    res.count = fields.size();
    cache.put("report", kFieldsMarker + dmax.get_str(), {{"dmax", int_json(dmax)}, {"count", fields.size()}});
    cache.seal();
    return res;
}

std::vector<CubicField> cached_fields(Cache& cache, const Int& bound) {
    if (covered_dmax(cache) < bound) cmd_fields(cache, bound);
    std::vector<CubicField> out;
    for (const auto& [key, payload] : cache.scan("field", ""))
        if (abs(int_from(payload->at("d_K"))) <= bound) out.push_back(field_from(*payload));
    std::sort(out.begin(), out.end(), [](const CubicField& a, const CubicField& b) { return a.canonical_less(b); });
    return out;
}

std::string cmd_analyze(const CubicPolynomial& poly, const PrimeSet& S, Cache* cache) {
    if (!is_irreducible(poly)) throw InvalidInput(poly.str() + " is reducible over Q");
    CubicField F = maximal_order(poly);
    std::ostringstream os;
    Signature sig = signature(poly);
    os << "polynomial: " << poly.str() << "\n";
    os << "disc(poly): " << discriminant(poly) << "\n";
    os << "signature: (" << sig.real << "," << sig.complex_pairs << ")\n";
    os << "d_K: " << F.d_K << "\n";
    os << "index [O_K : Z[theta]]: " << F.k << "\n";
    os << "integral basis:";
    for (int i = 0; i < 3; ++i) {
        QVec3 c;
        for (int j = 0; j < 3; ++j) c[j] = make_q(F.basis_num[i][j], F.basis_den);
        os << (i ? ", " : " ") << power_str(c);
    }
    os << "\n";
    os << "maximality:";
    if (F.certificates.empty()) os << " squarefree discriminant";
    for (const auto& c : F.certificates) os << " p=" << c.p << " " << c.method << ";";
    os << "\n";
    bool all_nd = true;
    for (auto p : S.primes()) {
        SplittingType st = splitting_type(F, p);
        bool nd = non_decomposed(F, p);
        all_nd = all_nd && nd;
        os << "splitting at " << p << ": " << st.str() << " " << split_name(st) << (nd ? "" : " (decomposed)") << "\n";
    }
    if (all_nd)
        os << "lambda_S: " << lambda(F, S) << "\n";
    else
        os << "lambda_S: undefined (some prime of S is decomposed)\n";

    if (sig.real != 1) {
        os << "unit group: rank 2 (totally real), not computed\n";
        return os.str();
    }
    UnitData u;
    const json* cu = cache ? cache->find("unit", F.key()) : nullptr;
    if (cu) {
        u = unit_from(*cu);
    } else {
        u = fundamental_unit(F);
        if (cache) cache->put("unit", F.key(), unit_json(u));
    }
    os << "fundamental unit: " << power_str(F.to_power(u.eps)) << "  (integral basis " << u.eps.str() << ")\n";
    os << "unit certificate: " << u.certificate << (u.detail.empty() ? "" : " (" + u.detail + ")") << "\n";
    os << "regulator: " << u.R_K.mid_str(25) << "\n";

    unsigned long h;
    json reps;
    const json* cc = cache ? cache->find("class", F.key()) : nullptr;
    if (cc) {
        h = cc->at("h").get<unsigned long>();
        reps = cc->at("representatives");
    } else {
        IdealClassSet cls = class_number_maximal(F);
        json j = ideal_classes_json(cls);
        if (cache) cache->put("class", F.key(), j);
        h = cls.h;
        reps = j["representatives"];
    }
    os << "h_K: " << h << "\n";
    os << "class representatives:";
    for (const auto& r : reps) os << " " << lattice_str(lattice_from(r));
    os << "\n";
    if (cache) cache->seal();
    return os.str();
}

std::string census_tag(const Config& cfg) {
    return "S=" + cfg.S.str() + ";x=" + cfg.x().get_str() + ";fb=" + std::to_string(cfg.field_bound_factor) +
           ";mf=" + std::to_string(cfg.m_factor);
}

CountResult cmd_count(Cache& cache, const Config& cfg) {
    cfg.validate();
    CensusOptions opt = cfg.census_options();
    std::vector<CubicField> fields = cached_fields(cache, field_bound(opt.x) * opt.field_bound_factor);
    std::string tag = census_tag(cfg);

    auto lookup = [&](const CubicField& F) -> std::optional<FieldOutcome> {
        const json* j = cache.find("order", tag + "|" + F.key());
        if (!j) return std::nullopt;
        if (!(j->at("field") == field_json(F))) throw StaleCache("cached outcome for " + F.key() + " has another field");
        FieldOutcome fo;
        fo.field = F;
        fo.in_CS = j->at("in_CS").get<bool>();
        if (!j->at("unit").is_null()) fo.unit = unit_from(j->at("unit"));
        for (const auto& r : j->at("records")) fo.records.push_back(record_from(r));
        return fo;
    };
    auto store = [&](const FieldOutcome& fo) { cache.put("order", tag + "|" + fo.field.key(), outcome_json(fo)); };

    CountResult res;
    res.census = run_census(fields, opt, lookup, store);
    for (const auto& r : res.census.records) {
        if (r.R.width_ld() > cfg.regulator_abs_error)
            throw InternalInconsistency("regulator enclosure of " + r.field_key + " is wider than the target");
    }
    cache.put("report", "census:" + tag,
              {{"x", opt.x.get_str()},
               {"S", cfg.S.str()},
               {"fields_total", res.census.fields_total},
               {"fields_in_CS", res.census.fields_in_CS},
               {"fields_with_unit", res.census.fields_with_unit},
               {"records", res.census.records.size()}});

    res.report = report(res.census, cfg.grid);
    res.csv = res.report.csv();
    std::string gkey = "count:" + tag + ";grid=";
    for (std::size_t i = 0; i < cfg.grid.size(); ++i) gkey += (i ? "," : "") + cfg.grid[i].get_str();
    const json* prev = cache.find("report", gkey);
    if (prev && prev->at("csv").get<std::string>() != res.csv)
        throw StaleCache("report " + gkey + " differs from the cached one");
    cache.put("report", gkey, {{"csv", res.csv}});
    cache.seal();
    return res;
}

std::string records_jsonl(const Census& census) {
    std::string out;
    for (const auto& r : census.records) out += record_json(r).dump() + "\n";
    return out;
}

std::complex<long double> parse_complex(const std::string& text) {
    static const std::regex re(R"(^\s*([+-]?[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)\s*(?:([+-])\s*([0-9]*\.?[0-9]*(?:[eE][+-]?[0-9]+)?)\s*[ij])?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw InvalidInput("not a complex number: '" + text + "'");
    long double re_part = to_ld(parse_real(m[1].str()));
    long double im = 0;
    if (m[2].matched) {
        std::string mag = m[3].str();
        im = mag.empty() ? 1.0L : to_ld(parse_real(mag));
        if (m[2].str() == "-") im = -im;
    }
    return {re_part, im};
}

std::vector<OrderRecord> cached_census_records(const Cache& cache, const PrimeSet& S, long double cutoff) {
    if (!(cutoff >= 0) || !std::isfinite(cutoff)) throw InvalidInput("cutoff must be a finite non-negative number");
    // cutoff rounded up a little so that long double R <= cutoff is covered
    Rational c(std::nextafter(static_cast<double>(cutoff), 1e300));
    Interval need = (Interval(3) * Interval(c)).exp();
    const json* best = nullptr;
    std::string best_tag;
    Rational best_x;
    for (const auto& [key, payload] : cache.scan("report", "census:S=" + S.str() + ";")) {
        if (key.find(";fb=1;mf=1") == std::string::npos) continue;
        Rational x(payload->at("x").get<std::string>());
        x.canonicalize();
        if (!need.certainly_le(Interval(x))) continue;
        if (!best || x < best_x) {
            best = payload;
            best_x = x;
            best_tag = key.substr(7);
        }
    }
    if (!best)
        throw StaleCache("no complete census for S=" + S.str() + " reaches cutoff " + std::to_string(static_cast<double>(cutoff)) +
                         "; run count with a grid up to exp(3*cutoff)");
    std::vector<OrderRecord> recs;
    std::size_t outcomes = 0;
    for (const auto& [key, payload] : cache.scan("order", best_tag + "|")) {
        ++outcomes;
        for (const auto& r : payload->at("records")) recs.push_back(record_from(r));
    }
    if (outcomes != best->at("fields_total").get<std::size_t>() || recs.size() != best->at("records").get<std::size_t>())
        throw StaleCache("census " + best_tag + " is incomplete in the cache");
    std::sort(recs.begin(), recs.end(), record_less);
    return recs;
}

std::string cmd_zeta(const Cache& cache, const PrimeSet& S, const std::vector<std::complex<long double>>& s_values,
                     long double cutoff) {
    if (s_values.empty()) throw InvalidInput("no s values");
    std::vector<OrderRecord> recs = cached_census_records(cache, S, cutoff);
    std::ostringstream os;
    os << "s_re,s_im,cutoff,zeta_re,zeta_im,logderiv_closed_re,logderiv_closed_im,logderiv_series_re,logderiv_series_im,"
          "residual\n";
    char buf[512];
    for (const auto& s : s_values) {
        auto z = zeta_partial(recs, s, cutoff);
        LogDerivative d = zeta_log_derivative(recs, s, cutoff);
        std::snprintf(buf, sizeof buf, "%.12Lg,%.12Lg,%.12Lg,%.18Le,%.18Le,%.18Le,%.18Le,%.18Le,%.18Le,%.3Le\n", s.real(),
                      s.imag(), cutoff, z.real(), z.imag() + 0.0L, d.closed.real(), d.closed.imag() + 0.0L,
                      d.series.real(), d.series.imag() + 0.0L, d.residual);
        os << buf;
    }
    return os.str();
}

} // namespace cubic
