#include "cubic/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cubic/errors.hpp"

namespace cubic {

Int field_bound(const Rational& x) {
    if (x <= 1) throw InvalidInput("field_bound needs x > 1");
    Rational b = 4 * x + 24;
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    return c;
}

bool record_less(const OrderRecord& a, const OrderRecord& b) {
    if (abs(a.d_K) != abs(b.d_K)) return abs(a.d_K) < abs(b.d_K);
    if (a.field_key != b.field_key) return a.field_key < b.field_key;
    if (a.f != b.f) return a.f < b.f;
    if (a.m != b.m) return a.m < b.m;
    return a.lattice < b.lattice;
}

namespace {

bool coprime_to(const Int& f, const std::vector<std::uint64_t>& S) {
    for (auto p : S)
        if (f % Int(static_cast<unsigned long>(p)) == 0) return false;
    return true;
}

// r-interval may be <= x
bool possibly_le(const Interval& r, const Rational& x) { return !Interval(x).certainly_lt(r); }

} // namespace

std::vector<OrderRecord> enumerate_orders(const CubicField& F, const UnitData& u, const CensusOptions& opt) {
    std::vector<OrderRecord> out;
    if (!possibly_le(regulator_from(u.R_K, 1).r, opt.x)) return out;
    unsigned long mmax = 1;
    while (possibly_le(regulator_from(u.R_K, mmax + 1).r, opt.x)) ++mmax;

    unsigned lam = lambda(F, PrimeSet(opt.S));
    std::optional<IdealClassSet> classes;
    std::map<Lattice, OrderRecord> found;
    const Lattice OK = Lattice::identity();
    for (unsigned long mm = 1; mm <= mmax * opt.m_factor; ++mm) {
        Element eta = F.table.pow(u.eps, mm);
        Element gens[3] = {Element::one(), eta, F.table.mul(eta, eta)};
        Lattice Lm = hnf(gens);
        // orders coprime to S contain g' O_K, g' the S-free part of [O_K : Lm]
        Int g = Lm.mat[0][0] * Lm.mat[1][1] * Lm.mat[2][2];
        for (auto p : opt.S)
            while (g % Int(static_cast<unsigned long>(p)) == 0) g /= Int(static_cast<unsigned long>(p));
        Lattice inner = sum(Lm, scale(OK, Rational(g)));
        for_each_intermediate_lattice(inner, OK, opt.lattice_ceiling, [&](const Lattice& L) {
            if (found.count(L) || !is_order(F.table, L)) return;
            Order O = make_order(F.table, L);
            if (!coprime_to(O.f, opt.S)) return;
            unsigned long m = unit_index(F, O, u);
            if (opt.m_factor == 1 && m != mm) return;
            RegulatorValue reg = regulator_from(u.R_K, m);
            if (!possibly_le(reg.r, opt.x)) return;
            if (!classes) classes = class_number_maximal(F);
            ModuleClassSet mc = module_class_number(F, O, u, *classes, opt.class_ceiling);
            OrderRecord rec;
            rec.field_key = F.key();
            rec.d_K = F.d_K;
            rec.poly = F.poly;
            rec.lattice = L;
            rec.f = O.f;
            rec.m = m;
            rec.R = reg.R.outward();
            rec.r = reg.r.outward();
            rec.h = mc.h;
            rec.lambda = lam;
            rec.weight = mc.h * lam;
            rec.all_invertible = mc.all_invertible;
            rec.picard_identity = mc.picard_identity;
            rec.picard_sum = mc.picard_sum;
            found.emplace(L, std::move(rec));
        });
    }
    for (auto& [L, rec] : found) out.push_back(std::move(rec));
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

FieldOutcome process_field(const CubicField& F, const CensusOptions& opt) {
    FieldOutcome fo;
    fo.field = F;
    fo.in_CS = std::all_of(opt.S.begin(), opt.S.end(), [&](std::uint64_t p) { return non_decomposed(F, p); });
    if (!fo.in_CS) return fo;
    long double cutoff = std::log(to_ld(opt.x)) / 3 + 1e-9L;
    fo.unit = fundamental_unit_bounded(F, cutoff);
    if (!fo.unit) return fo;   // R_K > log(x)/3, so |d_K| <= 4x + 24 < 4 e^{3 R_K} + 24
    if (!artin_inequality_holds(F, fo.unit->R_K))
        throw InternalInconsistency("field " + F.key() + " violates |d| < 4 e^{3R} + 24; census would be incomplete");
    fo.records = enumerate_orders(F, *fo.unit, opt);
    return fo;
}

Census run_census(const std::vector<CubicField>& fields, const CensusOptions& opt,
                  const std::function<std::optional<FieldOutcome>(const CubicField&)>& lookup,
                  const std::function<void(const FieldOutcome&)>& store) {
    PrimeSet(opt.S);   // validates S
    Census c;
    c.options = opt;
    Int bound = field_bound(opt.x) * opt.field_bound_factor;
    std::vector<const CubicField*> todo;
    for (const auto& F : fields)
        if (abs(F.d_K) <= bound) todo.push_back(&F);
    c.fields_total = todo.size();

    std::vector<std::optional<FieldOutcome>> out(todo.size());
    std::atomic<std::size_t> next{0};
    std::mutex store_mu;
    std::exception_ptr failure;
    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            {
                std::lock_guard<std::mutex> g(store_mu);
                if (failure) return;
            }
            try {
                std::optional<FieldOutcome> fo;
                if (lookup) {
                    std::lock_guard<std::mutex> g(store_mu);
                    fo = lookup(*todo[i]);
                }
                if (!fo) {
                    fo = process_field(*todo[i], opt);
                    if (store) {
                        std::lock_guard<std::mutex> g(store_mu);
                        store(*fo);
                    }
                }
                out[i] = std::move(fo);
            } catch (...) {
                std::lock_guard<std::mutex> g(store_mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    unsigned n = std::max(1u, opt.workers);
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& fo : out) {
        if (fo->in_CS) ++c.fields_in_CS;
        if (fo->unit) ++c.fields_with_unit;
        for (auto& r : fo->records) c.records.push_back(std::move(r));
    }
    std::sort(c.records.begin(), c.records.end(), record_less);
    return c;
}

Census run_census(const CensusOptions& opt) {
    return run_census(enumerate_fields(field_bound(opt.x) * opt.field_bound_factor), opt);
}

PiCount pi_S(const std::vector<OrderRecord>& records, const Rational& x) {
    PiCount c;
    Interval X(x);
    for (const auto& r : records) {
        if (r.r.certainly_le(X)) {
            c.certain += r.weight;
            c.possible += r.weight;
            c.tilde += r.h;
        } else if (!X.certainly_lt(r.r)) {
            ++c.ambiguous;
            c.possible += r.weight;
        }
    }
    return c;
}

long double li(long double x, long double rel_tol) {
    if (!(x >= 2)) throw InvalidInput("li(x) needs x >= 2");
    if (x == 2) return 0;
    auto f = [](long double t) { return 1.0L / std::log(t); };
    long double err = 0;
    long double v = boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(f, 2.0L, x, 20, 1e-14L, &err);
    if (err > rel_tol * std::fabs(v)) throw InternalInconsistency("li quadrature missed its error target");
    return v;
}

long double psi(const std::vector<OrderRecord>& records, long double x) {
    long double total = 0;
    for (const auto& r : records) {
        long double rv = r.r.mid_ld(), R = r.R.mid_ld();
        long double pw = rv;
        while (pw <= x) {
            total += static_cast<long double>(r.weight) * 3 * R;
            pw *= rv;
        }
    }
    return total;
}

std::complex<long double> zeta_partial(const std::vector<OrderRecord>& records, std::complex<long double> s,
                                       long double cutoff) {
    std::complex<long double> prod = 1;
    for (const auto& r : records) {
        long double R = r.R.mid_ld();
        if (R > cutoff) continue;
        std::complex<long double> base = 1.0L - std::exp(-s * R);
        prod *= std::pow(base, static_cast<long double>(r.weight));
    }
    return prod;
}

LogDerivative zeta_log_derivative(const std::vector<OrderRecord>& records, std::complex<long double> s,
                                  long double cutoff) {
    if (!(s.real() > 0)) throw InvalidInput("zeta needs Re(s) > 0");
    LogDerivative d{0, 0, 0};
    for (const auto& r : records) {
        long double R = r.R.mid_ld();
        if (R > cutoff) continue;
        long double w = static_cast<long double>(r.weight);
        std::complex<long double> q = std::exp(-s * R);
        d.closed += w * R * q / (1.0L - q);
        std::complex<long double> term = q, acc = 0;
        for (unsigned long n = 1; static_cast<long double>(n) * s.real() * R <= 50; ++n) {
            acc += term;
            term *= q;
        }
        d.series += w * R * acc;
    }
    long double a = std::abs(d.closed);
    d.residual = a == 0 ? std::abs(d.series) : std::abs(d.closed - d.series) / a;
    return d;
}

Rational parse_real(const std::string& text) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
    std::size_t i = 0;
    bool neg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
    Int mant = 0;
    long scale10 = 0;
    bool digits = false, dot = false;
    for (; i < t.size(); ++i) {
        char ch = t[i];
        if (ch >= '0' && ch <= '9') {
            mant = mant * 10 + (ch - '0');
            if (dot) --scale10;
            digits = true;
        } else if (ch == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!digits) throw InvalidInput("not a number: '" + text + "'");
    if (i < t.size()) {
        if (t[i] != 'e' && t[i] != 'E') throw InvalidInput("not a number: '" + text + "'");
        ++i;
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(t.substr(i), &used);
        } catch (const std::logic_error&) {
            throw InvalidInput("not a number: '" + text + "'");
        }
        if (i + used != t.size() || e > 60 || e < -60) throw InvalidInput("not a number: '" + text + "'");
        scale10 += e;
    }
    Int p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale10)));
    Rational q = scale10 >= 0 ? Rational(mant * p10) : make_q(mant, p10);
    return neg ? Rational(-q) : q;
}

std::string format_real(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lg", to_ld(x));
    return buf;
}

std::vector<Rational> parse_grid(const std::string& csv) {
    std::vector<Rational> g;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Rational x = parse_real(tok);
        if (x < 2) throw InvalidInput("grid values must be >= 2");
        g.push_back(x);
    }
    if (g.empty()) throw InvalidInput("empty grid");
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

CensusReport report(const Census& census, const std::vector<Rational>& grid) {
    CensusReport rep;
    rep.S = census.options.S;
    long double three_S = std::pow(3.0L, static_cast<long double>(rep.S.size()));
    for (const auto& x : grid) {
        if (x > census.options.x)
            throw StaleCache("census covers x <= " + format_real(census.options.x) + ", grid asks for " +
                             format_real(x));
        if (x < 2) throw InvalidInput("grid values must be >= 2");
        PiCount c = pi_S(census.records, x);
        ReportRow row;
        row.x = x;
        long double xl = to_ld(x), lx = std::log(xl);
        row.pi_S = c.certain;
        row.li = li(xl, census.options.li_rel_tol);
        row.x_over_log_x = xl / lx;
        row.norm_err = (static_cast<long double>(c.certain) - row.li) * lx / std::pow(xl, 0.75L);
        row.pi_tilde_lo = static_cast<long double>(c.certain) / three_S;
        row.pi_tilde_hi = c.certain;
        row.ambiguous_count = c.ambiguous;
        row.pi_S_possible = c.possible;
        row.pi_tilde = c.tilde;
        row.psi = psi(census.records, xl);
        row.psi_err = std::fabs(row.psi - xl) / std::pow(xl, 0.75L);
        Interval X(x);
        for (const auto& r : census.records)
            if (!r.r.certainly_le(X) && !X.certainly_lt(r.r))
                row.ambiguous.push_back(r.field_key + " f=" + r.f.get_str() + " m=" + std::to_string(r.m));
        rep.rows.push_back(row);
    }
    return rep;
}

std::string CensusReport::csv() const {
    std::ostringstream os;
    os << "x,pi_S,li,x_over_log_x,norm_err,pi_tilde_lo,pi_tilde_hi,ambiguous_count\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%llu,%.9Lf,%.9Lf,%.9Lf,%.9Lf,%llu,%zu\n", format_real(r.x).c_str(), r.pi_S, r.li,
                      r.x_over_log_x, r.norm_err, r.pi_tilde_lo, r.pi_tilde_hi, r.ambiguous_count);
        os << buf;
    }
    return os.str();
}

std::string CensusReport::diagnostics_csv() const {
    std::ostringstream os;
    os << "x,pi_S_possible,pi_tilde,psi,psi_over_x,psi_err,ambiguous\n";
    char buf[256];
    for (const auto& r : rows) {
        long double xl = to_ld(r.x);
        std::snprintf(buf, sizeof buf, "%s,%llu,%llu,%.9Lf,%.9Lf,%.9Lf,", format_real(r.x).c_str(), r.pi_S_possible,
                      r.pi_tilde, r.psi, r.psi / xl, r.psi_err);
        os << buf;
        for (std::size_t i = 0; i < r.ambiguous.size(); ++i) os << (i ? ";" : "") << r.ambiguous[i];
        os << "\n";
    }
    return os.str();
}

} // namespace cubic
